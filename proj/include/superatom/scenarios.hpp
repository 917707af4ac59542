#ifndef SUPERATOM_SCENARIOS_HPP
#define SUPERATOM_SCENARIOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "superatom/analysis.hpp"
#include "superatom/model.hpp"
#include "superatom/scattering.hpp"

namespace superatom {

enum class ScatterMethod { Resolvent, Modes, TransferMatrix };

ScatterMethod scatter_method_from_string(const std::string& name);
std::string to_string(ScatterMethod method);
PhaseConvention phase_convention_from_string(const std::string& name);
std::string to_string(PhaseConvention convention);

// Inclusive linear grid.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    std::vector<double> values() const;
};

struct AxisSpec {
    std::string name;
    std::string unit;
    std::vector<double> values;
};

// Everything needed to regenerate a sweep bit-identically: the device (a
// preset name or an inline array), the resolved grids, method and
// convention. Stored inside every SweepResult.
struct ScenarioSpec {
    std::string name;
    std::string variant;                 // "", "detune" or "gradient"
    std::optional<std::string> preset;   // device preset name
    std::optional<ArrayModel> array;     // inline array (used when no preset)
    bool lossless = false;
    double omega0 = 0.0;                 // common resonance (rad/s); 0 = use omega_ref
    GridSpec probe;                      // 0 points = scenario default
    GridSpec control;                    // swept-qubit frequencies or gradient deltas
    int n_max = 0;                       // successive_resonance; 0 = whole array
    int detune_qubit = -1;               // 0-based index; -1 = last qubit
    std::vector<double> offsets;         // gradient multipliers; empty = preset
    std::vector<double> omega0_list;     // effective-spacing values (rad/s)
    ScatterMethod method = ScatterMethod::Resolvent;
    PhaseConvention convention = PhaseConvention::Markov;
};

// A 2D sweep (control value x probe frequency) of scattering amplitudes,
// with the optional eigenvalue continuation that single-qubit detuning
// scenarios attach.
struct SweepResult {
    std::string scenario_id;
    AxisSpec control;
    std::vector<double> probe;                         // rad/s
    std::vector<std::vector<ScatteringPoint>> points;  // [control][probe]
    std::optional<ModeTrack> mode_track;
    ScenarioSpec spec;

    SpectralCurve curve(std::size_t control_index, CurveTag tag) const;
};

struct SweepOptions {
    GridSpec probe;  // 0 points = scenario default
    ScatterMethod method = ScatterMethod::Resolvent;
    PhaseConvention convention = PhaseConvention::Markov;
    int threads = 1;
};

// Qubits 1..N resonant at omega0, the rest parked far above resonance,
// for N = 1..n_max.
SweepResult successive_resonance(const ArrayModel& device, double omega0, int n_max,
                                 const SweepOptions& options = {});

// One qubit's frequency swept across the resonance of the others; attaches
// the eigenvalue continuation over the same control grid.
SweepResult detune_one_qubit(const ArrayModel& device, double omega0, int which,
                             const GridSpec& frequencies, const SweepOptions& options = {});

// Qubit i at omega0 + offsets[i]*delta for each delta in the grid.
SweepResult gradient_detuning(const ArrayModel& device, double omega0,
                              const std::vector<double>& offsets, const GridSpec& deltas,
                              const SweepOptions& options = {});

// All qubits retuned to each omega0 in the list; the effective spacing
// d/lambda0 follows the resonance frequency.
SweepResult effective_spacing_sweep(const ArrayModel& device,
                                    const std::vector<double>& omega0_list,
                                    const SweepOptions& options = {});

// Linear gradient multipliers. The Bragg variant is symmetric about the
// array center ({-3.5..+3.5} for N = 8); the anti-Bragg variant drops the
// lowest slot ({-2.5..+3.5} for N = 7, the 7-qubit device keeping its
// original gradient positions).
std::vector<double> bragg_gradient_offsets(int n);
std::vector<double> antibragg_gradient_offsets(int n);

// Dispatcher for named scenarios (the four operations above plus the
// figure presets fig2/fig3/fig4/fig5/smfig_s4). Fills unresolved grids
// with scenario defaults; the result's spec records the resolved values.
SweepResult run_scenario(const ScenarioSpec& spec, int threads = 1);

} // namespace superatom

#endif
