#include <doctest.h>

#include <cmath>
#include <random>

#include "superatom/model.hpp"

using namespace superatom;

namespace {
const double kOmega0 = ghz_to_rad(6.0);
const double kGamma = mhz_to_rad(10.0);
} // namespace

TEST_CASE("coupling_pair at the anti-Bragg and Bragg points") {
    auto [g, gamma] = coupling_pair(kGamma, kGamma, 0.25);
    CHECK(g == doctest::Approx(kGamma / 2).epsilon(1e-12));
    CHECK(gamma == doctest::Approx(0.0).epsilon(0).scale(kGamma));

    std::tie(g, gamma) = coupling_pair(kGamma, kGamma, 0.5);
    CHECK(g == doctest::Approx(0.0).epsilon(0).scale(kGamma));
    CHECK(gamma == doctest::Approx(-kGamma / 2).epsilon(1e-12));
}

TEST_CASE("coupling_pair with inhomogeneous rates at half-wavelength spacing") {
    const double g1 = mhz_to_rad(10.132);
    const double g2 = mhz_to_rad(9.759);
    auto [g, gamma] = coupling_pair(g1, g2, 0.5);
    CHECK(g == doctest::Approx(0.0).epsilon(0).scale(g1));
    CHECK(gamma == doctest::Approx(-0.5 * std::sqrt(g1 * g2)).epsilon(1e-12));
    // -sqrt(G1 G2)/2 for these rates is 4.9719 MHz
    CHECK(rad_to_mhz(-gamma) == doctest::Approx(4.971).epsilon(2e-4));
}

TEST_CASE("coupling_pair rejects bad input") {
    CHECK_THROWS_AS(coupling_pair(-1.0, kGamma, 0.5), std::domain_error);
    CHECK_THROWS_AS(coupling_pair(kGamma, kGamma, -0.1), std::domain_error);
}

TEST_CASE("coupling_pair is 1-periodic in the spacing ratio") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double ratio = u(rng);
        auto [g0, c0] = coupling_pair(kGamma, 2.0 * kGamma, ratio);
        auto [g1, c1] = coupling_pair(kGamma, 2.0 * kGamma, ratio + 1.0);
        CHECK(g1 == doctest::Approx(g0).epsilon(1e-12).scale(kGamma));
        CHECK(c1 == doctest::Approx(c0).epsilon(1e-12).scale(kGamma));
    }
}

TEST_CASE("single-qubit effective Hamiltonian carries the full linewidth") {
    const double gamma_nr = mhz_to_rad(0.3);
    const ArrayModel model = uniform_array(1, 0.5, kGamma, kOmega0, gamma_nr);
    const EffectiveHamiltonian h = build_h_eff(model);
    REQUIRE(h.matrix.rows() == 1);
    CHECK(h.matrix(0, 0).real() == doctest::Approx(kOmega0));
    CHECK(h.matrix(0, 0).imag() == doctest::Approx(-0.5 * (kGamma + gamma_nr)));
}

TEST_CASE("two-qubit Bragg Hamiltonian has +i Gamma/2 off-diagonals") {
    const ArrayModel model = uniform_array(2, 0.5, kGamma, kOmega0);
    const ComplexMatrix h = build_h_eff(model).matrix;
    CHECK(h(0, 0) == cdouble(kOmega0, -kGamma / 2));
    CHECK(h(0, 1).real() == doctest::Approx(0.0).epsilon(0).scale(kGamma));
    CHECK(h(0, 1).imag() == doctest::Approx(kGamma / 2).epsilon(1e-12));
    CHECK(h(0, 1) == h(1, 0));
}

TEST_CASE("device preset A composes with coupling_pair") {
    const ArrayModel model = device_preset(DevicePreset::A, kOmega0);
    REQUIRE(model.size() == 8);
    const ComplexMatrix h = build_h_eff(model).matrix;
    const auto [g, gamma] = coupling_pair(model.qubit(0).gamma_wg, model.qubit(1).gamma_wg,
                                          model.spacing_ratio(0, 1));
    CHECK(h(0, 1) == cdouble(g, -gamma));
    CHECK(model.spacing_ratio(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empty arrays are rejected") {
    WaveguideMedium medium;
    medium.omega_ref = kOmega0;
    CHECK_THROWS_AS(ArrayModel({}, medium), std::domain_error);
}

TEST_CASE("positions must increase strictly") {
    WaveguideMedium medium;
    medium.omega_ref = kOmega0;
    std::vector<Qubit> qs{{kOmega0, kGamma, 0.0, 0.01}, {kOmega0, kGamma, 0.0, 0.01}};
    CHECK_THROWS_AS(ArrayModel(qs, medium), std::domain_error);
}

TEST_CASE("device presets reproduce the extracted decay rates") {
    const ArrayModel a = device_preset(DevicePreset::A, kOmega0);
    CHECK(rad_to_mhz(a.qubit(0).gamma_wg) == doctest::Approx(10.132));
    CHECK(rad_to_mhz(a.qubit(0).gamma_nr) == doctest::Approx(0.304));
    CHECK(a.qubit(1).position - a.qubit(0).position == doctest::Approx(0.010));

    const ArrayModel b1 = device_preset(DevicePreset::B1, kOmega0);
    REQUIRE(b1.size() == 8);
    CHECK(rad_to_mhz(b1.qubit(3).gamma_wg) == doctest::Approx(6.495));
    CHECK(rad_to_mhz(b1.qubit(3).gamma_nr) == doctest::Approx(1.889));
    CHECK(b1.qubit(1).position - b1.qubit(0).position == doctest::Approx(0.005));

    const ArrayModel b2 = device_preset(DevicePreset::B2, kOmega0);
    REQUIRE(b2.size() == 7);
    CHECK(rad_to_mhz(b2.qubit(0).gamma_wg) == doctest::Approx(5.664));
    CHECK(b2.qubit(0).position == doctest::Approx(0.005));
    CHECK(b2.qubit(1).position - b2.qubit(0).position == doctest::Approx(0.005));

    for (const Qubit& q : a.qubits()) {
        CHECK(q.omega == kOmega0);
        CHECK(q.beta() >= 0.0);
        CHECK(q.beta() <= 1.0);
    }
    CHECK(a.medium().velocity == doctest::Approx(1.2e8));
    CHECK_THROWS_AS(device_preset_from_string("C"), std::domain_error);
}

TEST_CASE("preset A at 6 GHz sits exactly at the Bragg spacing") {
    const ArrayModel a = device_preset(DevicePreset::A, kOmega0);
    CHECK(a.medium().lambda0() == doctest::Approx(0.020));
    const ArrayModel b1 = device_preset(DevicePreset::B1, kOmega0);
    CHECK(b1.spacing_ratio(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("effective Hamiltonians are complex-symmetric with passive diagonals") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(u(rng) * 7.99);
        WaveguideMedium medium;
        medium.omega_ref = kOmega0;
        std::vector<Qubit> qs;
        double x = 0.0;
        for (int i = 0; i < n; ++i) {
            qs.push_back(Qubit{kOmega0 * (0.9 + 0.2 * u(rng)), kGamma * (0.5 + 1.5 * u(rng)),
                               kGamma * 0.1 * u(rng), x});
            x += medium.lambda0() * (0.05 + u(rng));
        }
        const ComplexMatrix h = build_h_eff(ArrayModel(qs, medium)).matrix;
        for (int i = 0; i < n; ++i) {
            CHECK(h(i, i).imag() <= 0.0);
            for (int j = 0; j < n; ++j) CHECK(h(i, j) == h(j, i));
        }
    }
}

TEST_CASE("half-wavelength arrays have purely dissipative couplings") {
    const int n = 6;
    const ComplexMatrix h = build_h_eff(uniform_array(n, 0.5, kGamma, kOmega0)).matrix;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CHECK(std::abs(h(i, j).real()) < 1e-12 * kGamma);
            CHECK(std::abs(std::abs(h(i, j).imag()) - kGamma / 2) < 1e-12 * kGamma);
        }
}

TEST_CASE("quarter-wavelength arrays alternate coherent and dissipative couplings") {
    const int n = 6;
    const ComplexMatrix h = build_h_eff(uniform_array(n, 0.25, kGamma, kOmega0)).matrix;
    for (int i = 0; i + 1 < n; ++i)
        CHECK(std::abs(h(i, i + 1).imag()) < 1e-12 * kGamma);  // nearest: purely real
    for (int i = 0; i + 2 < n; ++i)
        CHECK(std::abs(h(i, i + 2).real()) < 1e-12 * kGamma);  // next-nearest: purely imaginary
}

TEST_CASE("geometry can be given as spacing ratio or positions") {
    const ArrayModel by_ratio = uniform_array(3, 0.25, kGamma, kOmega0);
    const double d = 0.25 * by_ratio.medium().lambda0();
    WaveguideMedium medium;
    medium.omega_ref = kOmega0;
    std::vector<Qubit> qs;
    for (int i = 0; i < 3; ++i) qs.push_back(Qubit{kOmega0, kGamma, 0.0, i * d});
    const ArrayModel by_pos(qs, medium);
    for (int i = 0; i < 3; ++i)
        CHECK(by_ratio.qubit(i).position == doctest::Approx(by_pos.qubit(i).position));
    CHECK(by_ratio.spacing_ratio(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
}
