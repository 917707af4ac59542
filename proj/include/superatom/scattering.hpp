#ifndef SUPERATOM_SCATTERING_HPP
#define SUPERATOM_SCATTERING_HPP

#include <utility>

#include "superatom/linalg.hpp"
#include "superatom/model.hpp"

namespace superatom {

// Complex transmission/reflection at one probe frequency. For a passive
// array |t|^2 + |r|^2 <= 1, with equality when no qubit loses photons to
// free space. probe_shift records the tiny detuning applied internally
// when the transfer matrix hits an exactly-resonant lossless qubit
// (t_m = 0); it is zero otherwise.
struct ScatteringPoint {
    double omega_p = 0.0;
    cdouble t{};
    cdouble r{};
    double probe_shift = 0.0;
};

// Propagation phases: Markov evaluates them at the reference wavenumber
// k0 = omega_ref/v (the same approximation the effective Hamiltonian is
// built on, and the only mode in which all three methods agree exactly);
// Dispersive uses the probe's k_p = omega_p/v.
enum class PhaseConvention { Markov, Dispersive };

// Single-emitter amplitudes at detuning delta_p from the qubit:
//   t = 1 - beta / (1 - 2i*delta_p/(Gamma+gamma')),   r = t - 1.
// The sign of the imaginary part is fixed by the resolvent form below;
// the conjugate choice appears in parts of the literature and differs
// only by a phase conjugation of every spectrum.
std::pair<cdouble, cdouble> single_qubit_tr(double gamma_wg, double gamma_nr,
                                            double delta_p);

// Multi-channel amplitudes through the resolvent G = (omega_p - H_eff)^{-1}:
//   t = 1 - (i/2) sum_jk sqrt(G_j G_k) e^{-i k0 x_j} G_jk e^{+i k0 x_k}
//   r =   - (i/2) sum_jk sqrt(G_j G_k) e^{+i k0 x_j} G_jk e^{+i k0 x_k}
// evaluated with a pivoted solve. Always well-posed for lossy systems.
ScatteringPoint scatter_resolvent(const EffectiveHamiltonian& h, double omega_p);
ScatteringPoint scatter_resolvent(const ArrayModel& model, double omega_p);

// The same sums evaluated through the biorthogonal mode decomposition.
// Ill-conditioned when modes are near-degenerate (e.g. the dark manifold
// at the exact Bragg point) -- raises IllConditionedError there; use
// scatter_resolvent instead.
ScatteringPoint scatter_modes(const ComplexSpectrum& spectrum, const ArrayModel& model,
                              double omega_p);

// Transfer-matrix product over qubits and propagation segments. Shares no
// code path with the effective Hamiltonian, which makes it the
// independent cross-check for the two methods above. Phases are reported
// relative to free propagation across the array, so with the Markov
// convention the result matches scatter_resolvent including phase.
ScatteringPoint scatter_transfer_matrix(const ArrayModel& model, double omega_p,
                                        PhaseConvention convention = PhaseConvention::Markov);

} // namespace superatom

#endif
