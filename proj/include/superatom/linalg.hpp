#ifndef SUPERATOM_LINALG_HPP
#define SUPERATOM_LINALG_HPP

#include <vector>

#include <Eigen/Core>

#include "superatom/model.hpp"

namespace superatom {

// Complex eigenvalues with paired biorthogonal left/right eigenvectors,
//   H = sum_n omega_n |R_n><L_n|,   <L_m|R_n> = delta_mn.
// Modes are sorted by ascending real part. Modes whose gap to the nearest
// neighbor is below 1e-6*||H||_F are flagged near-degenerate: their
// left/right pairing is numerically unreliable and downstream mode sums
// must not use them.
struct ComplexSpectrum {
    ComplexVector eigenvalues;
    ComplexMatrix right_vectors;           // mode n in column n
    ComplexMatrix left_vectors;            // mode n in row n
    std::vector<bool> near_degenerate;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    bool any_near_degenerate() const;
};

// Dense non-Hermitian eigendecomposition, N <= 64. The contract is the
// residual bound ||H r_n - omega_n r_n|| <= 1e-9 * ||H||_F per mode;
// failure raises NumericError carrying the worst residual. For a
// complex-symmetric H the left vectors equal the transposed right vectors
// up to normalization.
ComplexSpectrum eigendecompose(const ComplexMatrix& h);

// x solving (omega_p*I - H) x = v by pivoted LU, never by the
// eigendecomposition. Backward error above 1e-12 (e.g. omega_p hits a
// real eigenvalue of a lossless H) raises NumericError.
ComplexVector resolvent_apply(const ComplexMatrix& h, double omega_p,
                              const ComplexVector& v);

} // namespace superatom

#endif
