#ifndef SUPERATOM_MODEL_HPP
#define SUPERATOM_MODEL_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "superatom/units.hpp"

namespace superatom {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// A two-level emitter next to the waveguide.
struct Qubit {
    double omega = 0.0;     // transition frequency (rad/s)
    double gamma_wg = 0.0;  // decay rate into the waveguide (rad/s)
    double gamma_nr = 0.0;  // dissipation to free space (rad/s)
    double position = 0.0;  // coordinate along the waveguide (m)

    // Fraction of the total decay that enters the guided mode.
    double beta() const {
        const double total = gamma_wg + gamma_nr;
        return total > 0.0 ? gamma_wg / total : 0.0;
    }
};

struct WaveguideMedium {
    double velocity = default_waveguide_velocity;  // phase velocity (m/s)
    double omega_ref = 0.0;                        // reference frequency omega_0 (rad/s)

    double lambda0() const { return two_pi * velocity / omega_ref; }
    double k0() const { return omega_ref / velocity; }
};

// An ordered qubit array coupled to one waveguide. Immutable after
// construction; the "with_*" helpers return modified copies.
class ArrayModel {
public:
    ArrayModel(std::vector<Qubit> qubits, WaveguideMedium medium);

    int size() const { return static_cast<int>(qubits_.size()); }
    const std::vector<Qubit>& qubits() const { return qubits_; }
    const Qubit& qubit(int i) const { return qubits_.at(static_cast<std::size_t>(i)); }
    const WaveguideMedium& medium() const { return medium_; }

    // |x_i - x_j| / lambda0, the phase argument of the coupling formulas.
    double spacing_ratio(int i, int j) const;

    double mean_gamma_wg() const;

    ArrayModel with_qubit_frequency(int i, double omega) const;
    ArrayModel with_all_frequencies(double omega) const;
    ArrayModel with_reference(double omega_ref) const;
    ArrayModel without_free_space_loss() const;
    ArrayModel reversed() const;  // mirror the array (same span, reversed order)

private:
    std::vector<Qubit> qubits_;
    WaveguideMedium medium_;
};

// Single-excitation effective non-Hermitian Hamiltonian of the array.
// Diagonal: omega_i - i(gamma'_i + Gamma_i)/2. Off-diagonal: g_ij - i*gamma_ij.
// The matrix is complex-symmetric by construction.
struct EffectiveHamiltonian {
    ComplexMatrix matrix;
    ArrayModel model;
};

// Waveguide-mediated coherent and dissipative coupling between two qubits,
//   g     = sqrt(Gi*Gj) * sin(2*pi*ratio) / 2
//   gamma = sqrt(Gi*Gj) * cos(2*pi*ratio) / 2
// where ratio = d_ij/lambda0. 1-periodic in ratio.
std::pair<double, double> coupling_pair(double gamma_wg_i, double gamma_wg_j,
                                        double spacing_ratio);

EffectiveHamiltonian build_h_eff(const ArrayModel& model);

// The measured devices: A is Bragg-spaced (d = 10 mm), B1/B2 anti-Bragg
// (d = 5 mm); B2 is B1 with Q1 absent. Decay rates are per-qubit; all
// transition frequencies are set to omega_common, which also fixes the
// reference wavelength.
enum class DevicePreset { A, B1, B2 };

ArrayModel device_preset(DevicePreset preset, double omega_common);
DevicePreset device_preset_from_string(const std::string& name);
std::string to_string(DevicePreset preset);

// Homogeneous array with nearest-neighbor spacing d = ratio * lambda0.
ArrayModel uniform_array(int n, double spacing_ratio, double gamma_wg, double omega0,
                         double gamma_nr = 0.0,
                         double velocity = default_waveguide_velocity);

} // namespace superatom

#endif
