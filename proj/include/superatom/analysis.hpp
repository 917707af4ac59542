#ifndef SUPERATOM_ANALYSIS_HPP
#define SUPERATOM_ANALYSIS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "superatom/model.hpp"

namespace superatom {

enum class CurveTag { AbsT, AbsT2, AbsR };

// A sampled spectrum: strictly increasing probe grid with the tagged
// observable in [0, 1].
struct SpectralCurve {
    std::vector<double> grid;    // rad/s
    std::vector<double> values;
    CurveTag tag = CurveTag::AbsT2;
};

struct TransparencyWindow {
    double center = 0.0;      // rad/s
    double width = 0.0;       // full width at half prominence (rad/s)
    double peak = 0.0;        // observable value at the maximum
    double prominence = 0.0;
};

struct WindowReport {
    std::vector<TransparencyWindow> windows;  // sorted by center
};

// Eigenvalue continuation across a parameter sweep. tracks[m][k] is mode
// m's complex eigenvalue at parameter[k], paired step-to-step by nearest
// eigenvalue; a track is flagged when the pairing was ambiguous (two
// candidates within 10% of each other) somewhere along the sweep.
struct ModeTrack {
    std::vector<double> parameter;
    std::vector<std::vector<cdouble>> tracks;
    std::vector<bool> crossing_flagged;
    double omega_ref = 0.0;

    double detuning(int track, int step) const {
        return tracks[static_cast<std::size_t>(track)][static_cast<std::size_t>(step)].real() - omega_ref;
    }
    double decay_rate(int track, int step) const {
        return -2.0 * tracks[static_cast<std::size_t>(track)][static_cast<std::size_t>(step)].imag();
    }
};

struct ParameterSweep {
    std::vector<double> grid;
    std::function<ArrayModel(const ArrayModel&, double)> apply;
};

ParameterSweep qubit_frequency_sweep(int which, std::vector<double> frequencies);

// Full width at half maximum of a transmission dip. The baseline is the
// mean of the outer 5% of grid points on each side (so lossy spectra that
// do not reach 1 are handled); the two half-level crossings are located
// by linear interpolation.
double fwhm_of_dip(const SpectralCurve& curve);

// Width of the maximal contiguous interval with values <= floor. The
// default floor 0.01 in |t|^2 sits below the band-edge transmission
// 1/(1+N^2) for N >= 10.
double flat_bottom_width(const SpectralCurve& curve, double floor = 0.01);

// Closed-form transmittance of N identical resonant lossless qubits with
// propagation phase theta per cell:
//   |t|^2 = 1 / (1 + alpha^2 U_{N-1}(y)^2),
//   alpha = Gamma/(2 delta_p),  y = cos(theta) + alpha sin(theta),
// U_k the Chebyshev polynomials of the second kind. Returns the analytic
// limit 0 at delta_p = 0.
double chebyshev_transmittance(int n, double gamma_wg, double delta_p, double theta);

// Detunings bounding the |y| > 1 band of the formula above, with the
// dispersive phase theta = k0*d*(1 + delta_p/omega0). Bracketing marches
// from -/+ 2*Gamma toward zero, then bisects to 1e-12*Gamma. Raises
// AnalysisError when no edge exists (e.g. at the Bragg point).
std::pair<double, double> band_edges(int n, double gamma_wg, double k0d, double omega0);

// Local maxima inside the broad extinction region whose prominence is at
// least min_prominence; width is measured at half prominence.
WindowReport detect_windows(const SpectralCurve& curve, double min_prominence = 0.1);

struct SingleQubitFit {
    double gamma_wg = 0.0;
    double gamma_nr = 0.0;
    double omega_center = 0.0;
    double residual = 0.0;  // rms distance between data and fitted model
};

// Extract (Gamma, gamma', omega_0) from a complex transmission trace.
// The trace of a two-level emitter is a circle of radius beta/2 centered
// at 1 - beta/2; the circle is fitted algebraically first, then the
// angular parametrization fixes omega_center and the total linewidth, and
// a final least-squares pass refines all three parameters. Works for
// either phase-conjugation convention of the data. Raises FitError for
// data that is not circular to within 10% of the radius.
SingleQubitFit fit_single_qubit(const std::vector<double>& omega,
                                const std::vector<cdouble>& t);

// Eigenvalues continued across the sweep (see ModeTrack). omega_ref sets
// the zero of the reported detunings.
ModeTrack track_modes(const ArrayModel& base, const ParameterSweep& sweep,
                      double omega_ref);

} // namespace superatom

#endif
