#include "superatom/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace superatom {

namespace {

void validate_qubit(const Qubit& q, int index) {
    if (!(q.omega > 0.0))
        throw std::domain_error("qubit " + std::to_string(index + 1) +
                                ": transition frequency must be positive");
    if (q.gamma_wg < 0.0 || q.gamma_nr < 0.0)
        throw std::domain_error("qubit " + std::to_string(index + 1) +
                                ": decay rates must be non-negative");
}

} // namespace

ArrayModel::ArrayModel(std::vector<Qubit> qubits, WaveguideMedium medium)
    : qubits_(std::move(qubits)), medium_(medium) {
    if (qubits_.empty())
        throw std::domain_error("array must contain at least one qubit");
    if (!(medium_.velocity > 0.0))
        throw std::domain_error("waveguide velocity must be positive");
    if (!(medium_.omega_ref > 0.0))
        throw std::domain_error("reference frequency must be positive");
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        validate_qubit(qubits_[i], static_cast<int>(i));
        if (i > 0 && !(qubits_[i].position > qubits_[i - 1].position))
            throw std::domain_error("qubit positions must be strictly increasing");
    }
}

double ArrayModel::spacing_ratio(int i, int j) const {
    return std::abs(qubit(i).position - qubit(j).position) / medium_.lambda0();
}

double ArrayModel::mean_gamma_wg() const {
    double sum = 0.0;
    for (const Qubit& q : qubits_) sum += q.gamma_wg;
    return sum / static_cast<double>(qubits_.size());
}

ArrayModel ArrayModel::with_qubit_frequency(int i, double omega) const {
    std::vector<Qubit> qs = qubits_;
    qs.at(static_cast<std::size_t>(i)).omega = omega;
    return ArrayModel(std::move(qs), medium_);
}

ArrayModel ArrayModel::with_all_frequencies(double omega) const {
    std::vector<Qubit> qs = qubits_;
    for (Qubit& q : qs) q.omega = omega;
    return ArrayModel(std::move(qs), medium_);
}

ArrayModel ArrayModel::with_reference(double omega_ref) const {
    WaveguideMedium m = medium_;
    m.omega_ref = omega_ref;
    return ArrayModel(qubits_, m);
}

ArrayModel ArrayModel::without_free_space_loss() const {
    std::vector<Qubit> qs = qubits_;
    for (Qubit& q : qs) q.gamma_nr = 0.0;
    return ArrayModel(std::move(qs), medium_);
}

ArrayModel ArrayModel::reversed() const {
    const double lo = qubits_.front().position;
    const double hi = qubits_.back().position;
    std::vector<Qubit> qs(qubits_.rbegin(), qubits_.rend());
    for (Qubit& q : qs) q.position = lo + hi - q.position;
    return ArrayModel(std::move(qs), medium_);
}

std::pair<double, double> coupling_pair(double gamma_wg_i, double gamma_wg_j,
                                        double spacing_ratio) {
    if (gamma_wg_i < 0.0 || gamma_wg_j < 0.0)
        throw std::domain_error("coupling_pair: decay rates must be non-negative");
    if (spacing_ratio < 0.0)
        throw std::domain_error("coupling_pair: spacing ratio must be non-negative");
    const double amp = 0.5 * std::sqrt(gamma_wg_i * gamma_wg_j);
    const double phase = two_pi * spacing_ratio;
    return {amp * std::sin(phase), amp * std::cos(phase)};
}

EffectiveHamiltonian build_h_eff(const ArrayModel& model) {
    const int n = model.size();
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i) {
        const Qubit& qi = model.qubit(i);
        h(i, i) = cdouble(qi.omega, -0.5 * (qi.gamma_nr + qi.gamma_wg));
        for (int j = i + 1; j < n; ++j) {
            const Qubit& qj = model.qubit(j);
            const auto [g, gamma] =
                coupling_pair(qi.gamma_wg, qj.gamma_wg, model.spacing_ratio(i, j));
            const cdouble entry(g, -gamma);
            // symmetric by assignment, never by a second evaluation
            h(i, j) = entry;
            h(j, i) = entry;
        }
    }
    return EffectiveHamiltonian{std::move(h), model};
}

namespace {

// Table of decay rates extracted from single-qubit spectroscopy (MHz).
constexpr double device_a_gamma_wg[8] = {10.132, 9.759, 9.738, 10.172,
                                         10.049, 9.824, 10.931, 10.084};
constexpr double device_a_gamma_nr[8] = {0.304, 0.313, 0.268, 0.290,
                                         0.328, 0.283, 1.096, 0.283};
constexpr double device_b_gamma_wg[8] = {7.834, 5.664, 7.668, 6.495,
                                         7.255, 6.868, 6.807, 6.791};
constexpr double device_b_gamma_nr[8] = {0.643, 1.108, 0.174, 1.889,
                                         0.429, 1.048, 0.513, 1.179};

ArrayModel make_device(const double* gamma_wg_mhz, const double* gamma_nr_mhz,
                       int first, int count, double spacing_m, double omega_common) {
    std::vector<Qubit> qs;
    qs.reserve(static_cast<std::size_t>(count));
    for (int k = first; k < first + count; ++k) {
        Qubit q;
        q.omega = omega_common;
        q.gamma_wg = mhz_to_rad(gamma_wg_mhz[k]);
        q.gamma_nr = mhz_to_rad(gamma_nr_mhz[k]);
        q.position = static_cast<double>(k) * spacing_m;
        qs.push_back(q);
    }
    WaveguideMedium medium;
    medium.velocity = default_waveguide_velocity;
    medium.omega_ref = omega_common;
    return ArrayModel(std::move(qs), medium);
}

} // namespace

ArrayModel device_preset(DevicePreset preset, double omega_common) {
    switch (preset) {
    case DevicePreset::A:
        return make_device(device_a_gamma_wg, device_a_gamma_nr, 0, 8, 0.010, omega_common);
    case DevicePreset::B1:
        return make_device(device_b_gamma_wg, device_b_gamma_nr, 0, 8, 0.005, omega_common);
    case DevicePreset::B2:
        // B1 with nonfunctional Q1 removed; the other qubits keep their
        // original positions, so the first one sits at 5 mm.
        return make_device(device_b_gamma_wg, device_b_gamma_nr, 1, 7, 0.005, omega_common);
    }
    throw std::domain_error("unknown device preset");
}

DevicePreset device_preset_from_string(const std::string& name) {
    if (name == "A" || name == "a") return DevicePreset::A;
    if (name == "B1" || name == "b1") return DevicePreset::B1;
    if (name == "B2" || name == "b2") return DevicePreset::B2;
    throw std::domain_error("unknown device preset '" + name + "' (expected A, B1 or B2)");
}

std::string to_string(DevicePreset preset) {
    switch (preset) {
    case DevicePreset::A: return "A";
    case DevicePreset::B1: return "B1";
    case DevicePreset::B2: return "B2";
    }
    return "?";
}

ArrayModel uniform_array(int n, double spacing_ratio, double gamma_wg, double omega0,
                         double gamma_nr, double velocity) {
    if (n < 1) throw std::domain_error("uniform_array: need at least one qubit");
    WaveguideMedium medium;
    medium.velocity = velocity;
    medium.omega_ref = omega0;
    const double d = spacing_ratio * medium.lambda0();
    std::vector<Qubit> qs;
    qs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        qs.push_back(Qubit{omega0, gamma_wg, gamma_nr, static_cast<double>(i) * d});
    return ArrayModel(std::move(qs), medium);
}

} // namespace superatom
