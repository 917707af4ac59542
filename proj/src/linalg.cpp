#include "superatom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "superatom/errors.hpp"

namespace superatom {

bool ComplexSpectrum::any_near_degenerate() const {
    return std::any_of(near_degenerate.begin(), near_degenerate.end(),
                       [](bool b) { return b; });
}

ComplexSpectrum eigendecompose(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        throw std::domain_error("eigendecompose: matrix must be square");
    const int n = static_cast<int>(h.rows());
    if (n > 64)
        throw std::domain_error("eigendecompose: dense kernel limited to N <= 64");

    const double norm_h = h.norm();  // Frobenius

    // Shift out the mean diagonal before decomposing: the spectrum sits at
    // optical frequencies (~1e10 rad/s) while the physics lives on the
    // MHz-scale splittings, and the shift keeps the solver's absolute error
    // on that small scale.
    const cdouble shift = h.trace() / static_cast<double>(n);
    ComplexMatrix hs = h;
    hs.diagonal().array() -= shift;

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(hs, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigendecompose: QR iteration failed to converge",
                           std::numeric_limits<double>::quiet_NaN());

    ComplexVector values = solver.eigenvalues();
    values.array() += shift;
    ComplexMatrix right = solver.eigenvectors();

    // Sort by ascending real part (imaginary part breaks ties) so sweeps
    // see a stable order.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (values[a].real() != values[b].real())
            return values[a].real() < values[b].real();
        return values[a].imag() < values[b].imag();
    });

    ComplexSpectrum spec;
    spec.eigenvalues.resize(n);
    spec.right_vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        spec.eigenvalues[k] = values[order[static_cast<std::size_t>(k)]];
        spec.right_vectors.col(k) = right.col(order[static_cast<std::size_t>(k)]);
    }

    // Rows of R^{-1} are the left eigenvectors, biorthonormal against the
    // columns of R by construction.
    spec.left_vectors = spec.right_vectors.partialPivLu().inverse();

    spec.near_degenerate.assign(static_cast<std::size_t>(n), false);
    const double gap_tol = 1e-6 * norm_h;
    for (int i = 0; i < n; ++i) {
        double gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (j != i) gap = std::min(gap, std::abs(spec.eigenvalues[i] - spec.eigenvalues[j]));
        if (gap < gap_tol) spec.near_degenerate[static_cast<std::size_t>(i)] = true;
    }

    double worst_residual = 0.0;
    for (int k = 0; k < n; ++k) {
        const double res =
            (h * spec.right_vectors.col(k) - spec.eigenvalues[k] * spec.right_vectors.col(k))
                .norm();
        worst_residual = std::max(worst_residual, res);
    }
    if (norm_h > 0.0 && worst_residual > 1e-9 * norm_h)
        throw NumericError("eigendecompose: residual bound not met",
                           worst_residual / norm_h);

    return spec;
}

ComplexVector resolvent_apply(const ComplexMatrix& h, double omega_p,
                              const ComplexVector& v) {
    if (h.rows() != h.cols())
        throw std::domain_error("resolvent_apply: matrix must be square");
    if (v.size() != h.rows())
        throw std::domain_error("resolvent_apply: vector length mismatch");

    ComplexMatrix a = -h;
    a.diagonal().array() += omega_p;

    const ComplexVector x = a.partialPivLu().solve(v);

    const double backward =
        (a * x - v).norm() / (a.norm() * x.norm() + v.norm());
    if (!x.allFinite() || backward > 1e-12)
        throw NumericError(
            "resolvent_apply: singular or ill-conditioned system (probe frequency "
            "coincides with a real eigenvalue; shift the probe infinitesimally)",
            backward);
    return x;
}

} // namespace superatom
