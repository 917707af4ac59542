#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "superatom/errors.hpp"
#include "superatom/scattering.hpp"

using namespace superatom;

namespace {
const double kOmega0 = ghz_to_rad(6.0);
const double kGamma = mhz_to_rad(10.0);

std::vector<double> probe_grid(double center, double half_span, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            center - half_span + 2.0 * half_span * i / (points - 1);
    return grid;
}
} // namespace

TEST_CASE("a lossless resonant qubit is a perfect mirror") {
    const auto [t, r] = single_qubit_tr(kGamma, 0.0, 0.0);
    CHECK(std::abs(t) < 1e-15);
    CHECK(std::abs(r + 1.0) < 1e-15);
}

TEST_CASE("on-resonance extinction is set by the branching ratio") {
    const double gamma_nr = mhz_to_rad(0.304);
    const double gamma_wg = mhz_to_rad(10.132);
    const auto [t, r] = single_qubit_tr(gamma_wg, gamma_nr, 0.0);
    CHECK(std::abs(t) == doctest::Approx(gamma_nr / (gamma_wg + gamma_nr)).epsilon(1e-12));
    CHECK(std::abs(t) == doctest::Approx(0.02913).epsilon(2e-4));
    CHECK(r == t - 1.0);
}

TEST_CASE("single_qubit_tr rejects degenerate rates") {
    CHECK_THROWS_AS(single_qubit_tr(0.0, 0.0, kGamma), std::domain_error);
    CHECK_THROWS_AS(single_qubit_tr(-kGamma, 0.0, 0.0), std::domain_error);
}

TEST_CASE("resolvent scattering collapses to the single-qubit line shape") {
    const double gamma_nr = mhz_to_rad(0.3);
    const ArrayModel model = uniform_array(1, 0.5, kGamma, kOmega0, gamma_nr);
    for (double delta : probe_grid(0.0, 5.0 * kGamma, 41)) {
        const ScatteringPoint p = scatter_resolvent(model, kOmega0 + delta);
        const auto [t, r] = single_qubit_tr(kGamma, gamma_nr, delta);
        CHECK(std::abs(p.t - t) < 1e-12);
        CHECK(std::abs(p.r - r) < 1e-12);  // first qubit sits at the origin
    }
}

TEST_CASE("Bragg array reflects perfectly at resonance") {
    const ArrayModel model = uniform_array(8, 0.5, kGamma, kOmega0);
    // exactly on resonance the lossless dark manifold makes the linear
    // system singular; the transfer matrix applies its internal shift
    const ScatteringPoint tm = scatter_transfer_matrix(model, kOmega0);
    CHECK(tm.probe_shift != 0.0);
    CHECK(std::abs(tm.t) < 1e-8);
    CHECK(std::abs(tm.r) == doctest::Approx(1.0).epsilon(1e-8));

    const ScatteringPoint res = scatter_resolvent(model, kOmega0 + 1e-9 * kGamma);
    CHECK(std::abs(res.t) < 1e-8);
    CHECK(std::abs(res.r) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("anti-Bragg array transmits nothing at resonance") {
    const ArrayModel model = uniform_array(8, 0.25, kGamma, kOmega0);
    const ScatteringPoint p = scatter_resolvent(model, kOmega0);
    CHECK(std::abs(p.t) < 1e-12);
    CHECK(std::abs(p.r) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mode-sum scattering matches the resolvent for a two-qubit array") {
    const ArrayModel model = uniform_array(2, 0.25, kGamma, kOmega0);
    const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);
    for (double delta : probe_grid(0.0, 5.0 * kGamma, 101)) {
        const ScatteringPoint a = scatter_modes(spec, model, kOmega0 + delta);
        const ScatteringPoint b = scatter_resolvent(model, kOmega0 + delta);
        CHECK(std::abs(a.t - b.t) < 1e-9);
        CHECK(std::abs(a.r - b.r) < 1e-9);
    }
}

TEST_CASE("mode sum refuses the degenerate Bragg manifold") {
    const ArrayModel model = uniform_array(8, 0.5, kGamma, kOmega0);
    const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);
    CHECK_THROWS_AS(scatter_modes(spec, model, kOmega0 + kGamma), IllConditionedError);
}

TEST_CASE("transfer matrix equals the single-qubit amplitudes for N=1") {
    const double gamma_nr = mhz_to_rad(0.3);
    const ArrayModel model = uniform_array(1, 0.5, kGamma, kOmega0, gamma_nr);
    for (const PhaseConvention convention :
         {PhaseConvention::Markov, PhaseConvention::Dispersive}) {
        for (double delta : probe_grid(0.0, 5.0 * kGamma, 21)) {
            const ScatteringPoint p =
                scatter_transfer_matrix(model, kOmega0 + delta, convention);
            const auto [t, r] = single_qubit_tr(kGamma, gamma_nr, delta);
            CHECK(std::abs(p.t - t) < 1e-13);
            CHECK(std::abs(p.r - r) < 1e-13);
        }
    }
}

TEST_CASE("transfer matrix and resolvent agree on the measured device") {
    const ArrayModel model = device_preset(DevicePreset::A, kOmega0);
    const EffectiveHamiltonian h = build_h_eff(model);
    const double gamma_bar = model.mean_gamma_wg();
    for (double omega_p : probe_grid(kOmega0, 10.0 * gamma_bar, 2001)) {
        const ScatteringPoint a = scatter_resolvent(h, omega_p);
        const ScatteringPoint b = scatter_transfer_matrix(model, omega_p);
        CHECK(std::abs(a.t - b.t) < 1e-9);
        CHECK(std::abs(a.r - b.r) < 1e-9);
    }
}

TEST_CASE("20-qubit anti-Bragg band edge transmits 1/(1+N^2)") {
    const int n = 20;
    const ArrayModel model = uniform_array(n, 0.25, kGamma, kOmega0);
    for (const double sign : {-1.0, 1.0}) {
        const ScatteringPoint p = scatter_transfer_matrix(model, kOmega0 + sign * kGamma / 2);
        CHECK(std::norm(p.t) == doctest::Approx(1.0 / (1.0 + n * n)).epsilon(1e-12));
    }
}

TEST_CASE("method equivalence on randomized arrays") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const ArrayModel model = oracles::random_model(rng, false);
        const EffectiveHamiltonian h = build_h_eff(model);
        const double gamma_bar = model.mean_gamma_wg();
        for (double omega_p : probe_grid(kOmega0, 10.0 * gamma_bar, 201)) {
            const ScatteringPoint a = scatter_resolvent(h, omega_p);
            const ScatteringPoint b = scatter_transfer_matrix(model, omega_p);
            CHECK(std::abs(a.t - b.t) < 1e-9);
            CHECK(std::abs(a.r - b.r) < 1e-9);
        }
    }
}

TEST_CASE("lossless arrays scatter unitarily") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const ArrayModel model = oracles::random_model(rng, true);
        const EffectiveHamiltonian h = build_h_eff(model);
        const double gamma_bar = model.mean_gamma_wg();
        for (double omega_p : probe_grid(kOmega0, 10.0 * gamma_bar, 201)) {
            const ScatteringPoint p = scatter_resolvent(h, omega_p);
            CHECK(std::abs(std::norm(p.t) + std::norm(p.r) - 1.0) < 1e-10);
        }
    }
    // lossy arrays stay passive
    std::mt19937 rng2(100);
    const ArrayModel lossy = oracles::random_model(rng2, false);
    for (double omega_p : probe_grid(kOmega0, 5.0 * lossy.mean_gamma_wg(), 101)) {
        const ScatteringPoint p = scatter_resolvent(lossy, omega_p);
        CHECK(std::norm(p.t) + std::norm(p.r) <= 1.0 + 1e-10);
    }
}

TEST_CASE("transmission is reciprocal") {
    std::mt19937 rng(314);
    const ArrayModel model = oracles::random_model(rng, false);
    const ArrayModel mirrored = model.reversed();
    for (double omega_p : probe_grid(kOmega0, 8.0 * model.mean_gamma_wg(), 101)) {
        const ScatteringPoint a = scatter_resolvent(model, omega_p);
        const ScatteringPoint b = scatter_resolvent(mirrored, omega_p);
        CHECK(std::abs(a.t - b.t) < 1e-10);
    }
}

TEST_CASE("detuning symmetry at the Bragg and anti-Bragg points") {
    for (const double ratio : {0.5, 0.25}) {
        const ArrayModel model = uniform_array(8, ratio, kGamma, kOmega0);
        const EffectiveHamiltonian h = build_h_eff(model);
        for (int i = 1; i <= 50; ++i) {
            const double delta = 6.0 * kGamma * i / 50.0;
            const ScatteringPoint plus = scatter_resolvent(h, kOmega0 + delta);
            const ScatteringPoint minus = scatter_resolvent(h, kOmega0 - delta);
            CHECK(std::abs(std::abs(plus.t) - std::abs(minus.t)) < 1e-9);
        }
    }
}

TEST_CASE("at exact Bragg the dark states are invisible to the probe") {
    const int n = 8;
    const ArrayModel model = uniform_array(n, 0.5, kGamma, kOmega0);
    const EffectiveHamiltonian h = build_h_eff(model);
    for (double delta : probe_grid(0.0, 5.0 * kGamma, 500)) {
        if (delta == 0.0) continue;
        const ScatteringPoint p = scatter_resolvent(h, kOmega0 + delta);
        const auto [t_single, r_single] = single_qubit_tr(n * kGamma, 0.0, delta);
        CHECK(std::abs(std::norm(p.t) - std::norm(t_single)) < 1e-9);
    }
}

TEST_CASE("dispersive and Markov conventions differ at first order in delta/omega0") {
    const ArrayModel model = uniform_array(8, 0.5, kGamma, kOmega0);
    const double delta = model.mean_gamma_wg();
    const ScatteringPoint markov =
        scatter_transfer_matrix(model, kOmega0 + delta, PhaseConvention::Markov);
    const ScatteringPoint dispersive =
        scatter_transfer_matrix(model, kOmega0 + delta, PhaseConvention::Dispersive);
    const double gap = std::abs(markov.t - dispersive.t);
    CHECK(gap > 1e-12);
    CHECK(gap < 50.0 * delta / kOmega0);
}
