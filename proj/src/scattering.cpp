#include "superatom/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "superatom/errors.hpp"

namespace superatom {

namespace {

constexpr cdouble I{0.0, 1.0};

// sqrt(Gamma_j) e^{+i k0 x_j}, the drive/collection vector of the
// multi-channel scattering sums.
ComplexVector phase_vector(const ArrayModel& model) {
    const double k0 = model.medium().k0();
    ComplexVector v(model.size());
    for (int j = 0; j < model.size(); ++j) {
        const Qubit& q = model.qubit(j);
        v[j] = std::sqrt(q.gamma_wg) * std::exp(I * (k0 * q.position));
    }
    return v;
}

ScatteringPoint from_amplitudes(const ArrayModel& model, double omega_p,
                                const ComplexVector& gx) {
    // gx = G * v with v the phase vector. t needs the conjugated phases on
    // the collection side, r the unconjugated ones.
    const double k0 = model.medium().k0();
    cdouble sum_t = 0.0;
    cdouble sum_r = 0.0;
    for (int j = 0; j < model.size(); ++j) {
        const Qubit& q = model.qubit(j);
        const cdouble phase = std::exp(I * (k0 * q.position));
        const double root = std::sqrt(q.gamma_wg);
        sum_t += root * std::conj(phase) * gx[j];
        sum_r += root * phase * gx[j];
    }
    ScatteringPoint p;
    p.omega_p = omega_p;
    p.t = 1.0 - 0.5 * I * sum_t;
    p.r = -0.5 * I * sum_r;
    return p;
}

} // namespace

std::pair<cdouble, cdouble> single_qubit_tr(double gamma_wg, double gamma_nr,
                                            double delta_p) {
    if (gamma_wg < 0.0 || gamma_nr < 0.0)
        throw std::domain_error("single_qubit_tr: decay rates must be non-negative");
    const double total = gamma_wg + gamma_nr;
    if (total <= 0.0)
        throw std::domain_error("single_qubit_tr: total linewidth must be positive");
    const double beta = gamma_wg / total;
    const cdouble t = 1.0 - beta / (1.0 - 2.0 * I * (delta_p / total));
    return {t, t - 1.0};
}

ScatteringPoint scatter_resolvent(const EffectiveHamiltonian& h, double omega_p) {
    const ComplexVector v = phase_vector(h.model);
    const ComplexVector gx = resolvent_apply(h.matrix, omega_p, v);
    return from_amplitudes(h.model, omega_p, gx);
}

ScatteringPoint scatter_resolvent(const ArrayModel& model, double omega_p) {
    return scatter_resolvent(build_h_eff(model), omega_p);
}

ScatteringPoint scatter_modes(const ComplexSpectrum& spectrum, const ArrayModel& model,
                              double omega_p) {
    if (spectrum.size() != model.size())
        throw std::domain_error("scatter_modes: spectrum/model size mismatch");
    if (spectrum.any_near_degenerate())
        throw IllConditionedError(
            "scatter_modes: near-degenerate modes make the biorthogonal sum "
            "ill-conditioned; use scatter_resolvent");

    const ComplexVector v = phase_vector(model);
    // G v = sum_n |R_n> <L_n|v> / (omega_p - omega_n)
    ComplexVector gx = ComplexVector::Zero(model.size());
    for (int n = 0; n < spectrum.size(); ++n) {
        const cdouble weight =
            (spectrum.left_vectors.row(n) * v)(0) / (omega_p - spectrum.eigenvalues[n]);
        gx += weight * spectrum.right_vectors.col(n);
    }
    return from_amplitudes(model, omega_p, gx);
}

namespace {

struct Transfer2 {
    // 2x2 complex matrix stored with a power-of-two scale factor so long
    // products deep inside a bandgap cannot overflow.
    cdouble a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};
    int exponent = 0;

    void left_multiply(cdouble b11, cdouble b12, cdouble b21, cdouble b22) {
        const cdouble n11 = b11 * a11 + b12 * a21;
        const cdouble n12 = b11 * a12 + b12 * a22;
        const cdouble n21 = b21 * a11 + b22 * a21;
        const cdouble n22 = b21 * a12 + b22 * a22;
        a11 = n11; a12 = n12; a21 = n21; a22 = n22;
        rescale();
    }

    void rescale() {
        const double mag = std::max({std::abs(a11), std::abs(a12),
                                     std::abs(a21), std::abs(a22)});
        if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
            int e = 0;
            std::frexp(mag, &e);
            const double s = std::ldexp(1.0, -e);
            a11 *= s; a12 *= s; a21 *= s; a22 *= s;
            exponent += e;
        }
    }
};

ScatteringPoint transfer_matrix_at(const ArrayModel& model, double omega_p,
                                   PhaseConvention convention, bool& hit_zero,
                                   int& zero_index) {
    const double k = convention == PhaseConvention::Markov
                         ? model.medium().k0()
                         : omega_p / model.medium().velocity;
    hit_zero = false;
    Transfer2 m;
    for (int j = 0; j < model.size(); ++j) {
        const Qubit& q = model.qubit(j);
        const auto [tm, rm] = single_qubit_tr(q.gamma_wg, q.gamma_nr, omega_p - q.omega);
        if (std::abs(tm) < 1e-300) {
            hit_zero = true;
            zero_index = j;
            return {};
        }
        if (j > 0) {
            const double d = q.position - model.qubit(j - 1).position;
            const cdouble phase = std::exp(I * (k * d));
            m.left_multiply(phase, 0.0, 0.0, 1.0 / phase);
        }
        // M_qubit = (1/t)[[t^2 - r^2, r], [-r, 1]]
        m.left_multiply((tm * tm - rm * rm) / tm, rm / tm, -rm / tm, 1.0 / tm);
    }
    // det M = 1 (each factor is unimodular), so t = 1/M22, r = -M21/M22.
    // Report t relative to free propagation across the array and r with the
    // phase accumulated from the origin to the first qubit and back.
    const double x_first = model.qubit(0).position;
    const double x_last = model.qubit(model.size() - 1).position;
    ScatteringPoint p;
    p.omega_p = omega_p;
    p.t = std::ldexp(1.0, -m.exponent) / m.a22 * std::exp(-I * (k * (x_last - x_first)));
    p.r = -m.a21 / m.a22 * std::exp(I * (2.0 * k * x_first));
    return p;
}

} // namespace

ScatteringPoint scatter_transfer_matrix(const ArrayModel& model, double omega_p,
                                        PhaseConvention convention) {
    bool hit_zero = false;
    int zero_index = 0;
    ScatteringPoint p = transfer_matrix_at(model, omega_p, convention, hit_zero, zero_index);
    if (!hit_zero) return p;

    // A lossless qubit exactly at resonance transmits nothing and its
    // transfer matrix does not exist; evaluate a hair off resonance.
    const double shift = 1e-9 * model.qubit(zero_index).gamma_wg;
    p = transfer_matrix_at(model, omega_p + shift, convention, hit_zero, zero_index);
    if (hit_zero)
        throw NumericError("scatter_transfer_matrix: singular single-qubit "
                           "transmission persists after probe shift", 0.0);
    p.omega_p = omega_p;
    p.probe_shift = shift;
    return p;
}

} // namespace superatom
