#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "superatom/errors.hpp"
#include "superatom/linalg.hpp"
#include "superatom/model.hpp"

using namespace superatom;

namespace {
const double kOmega0 = ghz_to_rad(6.0);
const double kGamma = mhz_to_rad(10.0);

ComplexMatrix random_complex_symmetric(std::mt19937& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cdouble v(g(rng), g(rng));
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}
} // namespace

TEST_CASE("1x1 eigendecomposition is the diagonal entry") {
    ComplexMatrix h(1, 1);
    h(0, 0) = cdouble(kOmega0, -0.5 * (kGamma + mhz_to_rad(0.3)));
    const ComplexSpectrum spec = eigendecompose(h);
    CHECK(spec.eigenvalues[0] == h(0, 0));
    CHECK_FALSE(spec.any_near_degenerate());
}

TEST_CASE("Bragg array: one superradiant mode, N-1 degenerate dark modes") {
    const int n = 8;
    const ComplexMatrix h = build_h_eff(uniform_array(n, 0.5, kGamma, kOmega0)).matrix;
    const ComplexSpectrum spec = eigendecompose(h);

    int superradiant = 0, dark = 0;
    for (int k = 0; k < n; ++k) {
        const double decay = -2.0 * spec.eigenvalues[k].imag();
        if (std::abs(decay - n * kGamma) < 1e-9 * n * kGamma)
            ++superradiant;
        else if (decay < 1e-9 * kGamma)
            ++dark;
        CHECK(spec.eigenvalues[k].real() == doctest::Approx(kOmega0).epsilon(1e-12));
    }
    CHECK(superradiant == 1);
    CHECK(dark == n - 1);
    CHECK(spec.any_near_degenerate());  // the dark manifold is exactly degenerate
}

TEST_CASE("anti-Bragg array: mirror-symmetric spectrum, two dominant decays") {
    const int n = 8;
    const ComplexMatrix h = build_h_eff(uniform_array(n, 0.25, kGamma, kOmega0)).matrix;
    const ComplexSpectrum spec = eigendecompose(h);

    // the set is invariant under omega -> 2*omega0 - conj(omega)
    std::vector<cdouble> values(spec.eigenvalues.data(), spec.eigenvalues.data() + n);
    std::vector<cdouble> mirrored;
    for (const cdouble& v : values) mirrored.push_back(2.0 * kOmega0 - std::conj(v));
    CHECK(oracles::multiset_distance(values, mirrored) < 1e-6 * kGamma);

    std::vector<double> decays;
    for (const cdouble& v : values) decays.push_back(-2.0 * v.imag());
    std::sort(decays.begin(), decays.end());
    CHECK(decays[n - 1] == doctest::Approx(decays[n - 2]).epsilon(1e-9));
    CHECK(decays[n - 1] > 4.0 * decays[n - 3]);  // two modes carry the dominant decay

    // brute-force characteristic-polynomial roots agree
    CHECK(oracles::multiset_distance(values, oracles::eigenvalues_by_charpoly(h)) <
          1e-5 * kGamma);
}

TEST_CASE("biorthogonality and the transpose shortcut for complex-symmetric input") {
    std::mt19937 rng(11);
    const ComplexMatrix h = random_complex_symmetric(rng, 12);
    const ComplexSpectrum spec = eigendecompose(h);
    REQUIRE_FALSE(spec.any_near_degenerate());

    // <L_m | R_n> = delta_mn
    const ComplexMatrix overlap = spec.left_vectors * spec.right_vectors;
    CHECK((overlap - ComplexMatrix::Identity(12, 12)).norm() < 1e-8);

    // left vector n is collinear with the transposed right vector n
    for (int k = 0; k < 12; ++k) {
        const ComplexVector l = spec.left_vectors.row(k).transpose();
        const ComplexVector r = spec.right_vectors.col(k);
        const double cosine = std::abs(l.dot(r)) / (l.norm() * r.norm());
        CHECK(cosine == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("eigenvalue sum equals the trace for random complex-symmetric matrices") {
    std::mt19937 rng(5);
    for (int n : {2, 5, 9, 17, 32}) {
        const ComplexMatrix h = random_complex_symmetric(rng, n);
        const ComplexSpectrum spec = eigendecompose(h);
        CHECK(std::abs(spec.eigenvalues.sum() - h.trace()) < 1e-9 * h.norm());
    }
}

TEST_CASE("spectral reconstruction reproduces the matrix") {
    std::mt19937 rng(23);
    const int n = 10;
    const ComplexMatrix h = random_complex_symmetric(rng, n);
    const ComplexSpectrum spec = eigendecompose(h);
    REQUIRE_FALSE(spec.any_near_degenerate());
    ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        rebuilt += spec.eigenvalues[k] * spec.right_vectors.col(k) * spec.left_vectors.row(k);
    CHECK((rebuilt - h).norm() < 1e-7 * h.norm());
}

TEST_CASE("residual bound holds on physical Hamiltonians") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const ArrayModel model = oracles::random_model(rng, trial % 2 == 0);
        const ComplexMatrix h = build_h_eff(model).matrix;
        const ComplexSpectrum spec = eigendecompose(h);
        for (int k = 0; k < spec.size(); ++k) {
            const double res =
                (h * spec.right_vectors.col(k) - spec.eigenvalues[k] * spec.right_vectors.col(k))
                    .norm();
            CHECK(res <= 1e-9 * h.norm());
        }
    }
}

TEST_CASE("resolvent of a single qubit on resonance is -2i/Gamma") {
    ComplexMatrix h(1, 1);
    h(0, 0) = cdouble(kOmega0, -0.5 * kGamma);
    ComplexVector v(1);
    v[0] = 1.0;
    const ComplexVector x = resolvent_apply(h, kOmega0, v);
    CHECK(std::abs(x[0] - cdouble(0.0, -2.0 / kGamma)) < 1e-12 * (2.0 / kGamma));
}

TEST_CASE("resolvent of a shifted identity rescales the vector") {
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h.diagonal().array() += kOmega0;
    ComplexVector v(3);
    v << cdouble(1.0, 0.5), cdouble(-2.0, 0.0), cdouble(0.0, 3.0);
    const ComplexVector x = resolvent_apply(h, kOmega0 + kGamma, v);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(x[i] - v[i] / kGamma) < 1e-12 * std::abs(v[i] / kGamma));
}

TEST_CASE("resolvent matches a dense-inverse oracle on a device Hamiltonian") {
    const ArrayModel model = device_preset(DevicePreset::A, kOmega0);
    const ComplexMatrix h = build_h_eff(model).matrix;
    const int n = model.size();
    const double omega_p = kOmega0 + 0.5 * model.mean_gamma_wg();
    const double k0 = model.medium().k0();
    ComplexVector v(n);
    for (int j = 0; j < n; ++j)
        v[j] = std::exp(cdouble(0.0, k0 * model.qubit(j).position));

    const ComplexVector x = resolvent_apply(h, omega_p, v);

    std::vector<std::vector<cdouble>> a(static_cast<std::size_t>(n),
                                        std::vector<cdouble>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (i == j ? cdouble(omega_p) : cdouble(0.0)) - h(i, j);
    const auto inv = oracles::gauss_jordan_inverse(a);
    for (int i = 0; i < n; ++i) {
        cdouble xi = 0.0;
        for (int j = 0; j < n; ++j)
            xi += inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[j];
        CHECK(std::abs(x[i] - xi) < 1e-10 * x.norm());
    }
}

TEST_CASE("resolvent agrees with the spectral sum away from degeneracies") {
    std::mt19937 rng(77);
    const ComplexMatrix h = random_complex_symmetric(rng, 8);
    const ComplexSpectrum spec = eigendecompose(h);
    REQUIRE_FALSE(spec.any_near_degenerate());
    ComplexVector v(8);
    for (int i = 0; i < 8; ++i) v[i] = cdouble(std::cos(i * 0.7), std::sin(i * 1.3));
    const double omega_p = 4.2;
    const ComplexVector direct = resolvent_apply(h, omega_p, v);
    ComplexVector summed = ComplexVector::Zero(8);
    for (int k = 0; k < 8; ++k)
        summed += spec.right_vectors.col(k) * (spec.left_vectors.row(k) * v)(0) /
                  (omega_p - spec.eigenvalues[k]);
    CHECK((direct - summed).norm() < 1e-7 * direct.norm());
}

TEST_CASE("resolvent at a real eigenvalue of a lossless Bragg array is singular") {
    const ComplexMatrix h = build_h_eff(uniform_array(8, 0.5, kGamma, kOmega0)).matrix;
    ComplexVector v = ComplexVector::Ones(8);
    CHECK_THROWS_AS(resolvent_apply(h, kOmega0, v), NumericError);
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(eigendecompose(ComplexMatrix::Zero(2, 3)), std::domain_error);
    CHECK_THROWS_AS(eigendecompose(ComplexMatrix::Zero(65, 65)), std::domain_error);
    ComplexMatrix h = ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(resolvent_apply(h, 1.0, ComplexVector::Ones(2)), std::domain_error);
}
