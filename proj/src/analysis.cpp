#include "superatom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "superatom/errors.hpp"
#include "superatom/linalg.hpp"

namespace superatom {

namespace {

void check_curve(const SpectralCurve& curve) {
    const std::size_t n = curve.grid.size();
    if (n != curve.values.size())
        throw std::domain_error("spectral curve: grid/values size mismatch");
    if (n < 4) throw std::domain_error("spectral curve: too few points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(curve.grid[i] > curve.grid[i - 1]))
            throw std::domain_error("spectral curve: grid must be strictly increasing");
}

double edge_baseline(const SpectralCurve& curve) {
    const std::size_t n = curve.grid.size();
    const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                       std::llround(0.05 * static_cast<double>(n))));
    double left = 0.0;
    double right = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        left += curve.values[i];
        right += curve.values[n - 1 - i];
    }
    return 0.5 * (left + right) / static_cast<double>(k);
}

// x where the segment (grid[i], v[i]) -- (grid[i+1], v[i+1]) crosses level.
double cross_at(const SpectralCurve& c, std::size_t i, double level) {
    const double v0 = c.values[i];
    const double v1 = c.values[i + 1];
    return c.grid[i] + (level - v0) * (c.grid[i + 1] - c.grid[i]) / (v1 - v0);
}

} // namespace

double fwhm_of_dip(const SpectralCurve& curve) {
    check_curve(curve);
    const std::size_t n = curve.grid.size();
    const double baseline = edge_baseline(curve);
    const std::size_t imin = static_cast<std::size_t>(
        std::min_element(curve.values.begin(), curve.values.end()) - curve.values.begin());
    const double vmin = curve.values[imin];
    if (!(vmin < baseline))
        throw AnalysisError("fwhm_of_dip: no dip below the baseline");

    const double half = 0.5 * (baseline + vmin);

    std::size_t i = imin;
    while (i > 0 && curve.values[i] < half) --i;
    if (curve.values[i] < half)
        throw AnalysisError("fwhm_of_dip: left half-maximum crossing outside the grid");
    const double xl = cross_at(curve, i, half);

    std::size_t j = imin;
    while (j + 1 < n && curve.values[j] < half) ++j;
    if (curve.values[j] < half)
        throw AnalysisError("fwhm_of_dip: right half-maximum crossing outside the grid");
    const double xr = cross_at(curve, j - 1, half);

    return xr - xl;
}

double flat_bottom_width(const SpectralCurve& curve, double floor) {
    check_curve(curve);
    const std::size_t n = curve.grid.size();
    if (!(*std::min_element(curve.values.begin(), curve.values.end()) < floor))
        throw AnalysisError("flat_bottom_width: curve never drops below the floor");

    double best = 0.0;
    std::size_t i = 0;
    while (i < n) {
        if (curve.values[i] > floor) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && curve.values[j + 1] <= floor) ++j;
        const double xl = i == 0 ? curve.grid[0] : cross_at(curve, i - 1, floor);
        const double xr = j + 1 == n ? curve.grid[n - 1] : cross_at(curve, j, floor);
        best = std::max(best, xr - xl);
        i = j + 1;
    }
    return best;
}

double chebyshev_transmittance(int n, double gamma_wg, double delta_p, double theta) {
    if (n < 1) throw std::domain_error("chebyshev_transmittance: need N >= 1");
    if (gamma_wg < 0.0)
        throw std::domain_error("chebyshev_transmittance: decay rate must be non-negative");
    if (delta_p == 0.0) return 0.0;

    const double alpha = gamma_wg / (2.0 * delta_p);
    const double y = std::cos(theta) + alpha * std::sin(theta);

    // U_{n-1}(y) by the recurrence U_0 = 1, U_1 = 2y, U_k = 2y U_{k-1} - U_{k-2}
    double ukm1 = 1.0;
    double uk = 2.0 * y;
    double u = n == 1 ? ukm1 : uk;
    for (int k = 2; k < n; ++k) {
        const double next = 2.0 * y * uk - ukm1;
        ukm1 = uk;
        uk = next;
        u = next;
    }
    const double s = alpha * alpha * u * u;  // may overflow to inf near resonance
    return 1.0 / (1.0 + s);
}

namespace {

double band_function(double delta, double gamma_wg, double k0d, double omega0) {
    const double theta = k0d * (1.0 + delta / omega0);
    const double alpha = gamma_wg / (2.0 * delta);
    return std::abs(std::cos(theta) + alpha * std::sin(theta)) - 1.0;
}

double find_edge(double start, double gamma_wg, double k0d, double omega0) {
    constexpr int steps = 512;
    double a = start;
    double fa = band_function(a, gamma_wg, k0d, omega0);
    for (int k = 1; k <= steps; ++k) {
        const double b = start * (1.0 - static_cast<double>(k) / (steps + 1));
        const double fb = band_function(b, gamma_wg, k0d, omega0);
        if ((fa < 0.0) != (fb < 0.0)) {
            // bisect [a, b] to 1e-12 * Gamma
            double lo = a, flo = fa, hi = b;
            while (std::abs(hi - lo) > 1e-12 * gamma_wg) {
                const double mid = 0.5 * (lo + hi);
                const double fm = band_function(mid, gamma_wg, k0d, omega0);
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return 0.5 * (lo + hi);
        }
        a = b;
        fa = fb;
    }
    throw AnalysisError("band_edges: no |y| = 1 crossing between the start point and "
                        "resonance (no flat band at this spacing)");
}

} // namespace

std::pair<double, double> band_edges(int n, double gamma_wg, double k0d, double omega0) {
    if (n < 1) throw std::domain_error("band_edges: need N >= 1");
    if (!(gamma_wg > 0.0)) throw std::domain_error("band_edges: need a positive decay rate");
    if (!(omega0 > 0.0)) throw std::domain_error("band_edges: need a positive frequency");
    const double lower = find_edge(-2.0 * gamma_wg, gamma_wg, k0d, omega0);
    const double upper = find_edge(+2.0 * gamma_wg, gamma_wg, k0d, omega0);
    return {lower, upper};
}

WindowReport detect_windows(const SpectralCurve& curve, double min_prominence) {
    check_curve(curve);
    WindowReport report;
    const std::size_t n = curve.grid.size();
    const double baseline = edge_baseline(curve);
    const double vmin = *std::min_element(curve.values.begin(), curve.values.end());
    if (!(vmin < baseline)) return report;  // no extinction region at all

    // The broad extinction region: between the outermost crossings of the
    // half level. Peaks poking above the half level inside it still count.
    const double half = 0.5 * (baseline + vmin);
    std::size_t lo = 0;
    while (lo < n && curve.values[lo] >= half) ++lo;
    std::size_t hi = n - 1;
    while (hi > 0 && curve.values[hi] >= half) --hi;
    if (lo >= hi) return report;

    for (std::size_t i = lo + 1; i < hi; ++i) {
        if (!(curve.values[i] > curve.values[i - 1] && curve.values[i] >= curve.values[i + 1]))
            continue;
        const double peak = curve.values[i];

        // prominence: descend on each side to the lowest point before a
        // higher peak (or the region boundary) is met
        double left_base = peak;
        for (std::size_t j = i; j-- > lo;) {
            if (curve.values[j] > peak) break;
            left_base = std::min(left_base, curve.values[j]);
        }
        double right_base = peak;
        for (std::size_t j = i + 1; j <= hi; ++j) {
            if (curve.values[j] > peak) break;
            right_base = std::min(right_base, curve.values[j]);
        }
        const double prominence = peak - std::max(left_base, right_base);
        if (prominence < min_prominence) continue;

        const double level = peak - 0.5 * prominence;
        std::size_t l = i;
        while (l > lo && curve.values[l] >= level) --l;
        const double xl = curve.values[l] < level ? cross_at(curve, l, level) : curve.grid[l];
        std::size_t r = i;
        while (r < hi && curve.values[r] >= level) ++r;
        const double xr =
            curve.values[r] < level ? cross_at(curve, r - 1, level) : curve.grid[r];

        report.windows.push_back(
            TransparencyWindow{curve.grid[i], xr - xl, peak, prominence});
    }
    return report;
}

namespace {

struct Circle {
    cdouble center;
    double radius;
};

// Algebraic (Kasa) circle fit: |z - c|^2 = rho^2 linearized in
// (2 Re c, 2 Im c, rho^2 - |c|^2).
Circle fit_circle(const std::vector<cdouble>& z) {
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (const cdouble& p : z) {
        const Eigen::Vector3d row(2.0 * p.real(), 2.0 * p.imag(), 1.0);
        ata += row * row.transpose();
        atb += row * std::norm(p);
    }
    const Eigen::Vector3d sol = ata.ldlt().solve(atb);
    const double r2 = sol[2] + sol[0] * sol[0] + sol[1] * sol[1];
    return Circle{cdouble(sol[0], sol[1]), std::sqrt(std::max(r2, 0.0))};
}

struct Candidate {
    double omega_center = 0.0;
    double total_width = 0.0;
    double beta = 0.0;
    double residual = 0.0;
    bool valid = false;
};

// Least-squares refinement of t = 1 - beta / (1 - s*2i*(w - wc)/Gt) in the
// scaled variables u = (wc - w_bar)/Gt0, g = Gt/Gt0, beta.
Candidate refine(const std::vector<double>& omega, const std::vector<cdouble>& z,
                 int sign, double w_bar, double wc0, double gt0, double beta0) {
    const std::size_t n = omega.size();
    Eigen::Vector3d p((wc0 - w_bar) / gt0, 1.0, beta0);
    for (int iter = 0; iter < 60; ++iter) {
        const double wc = w_bar + p[0] * gt0;
        const double gt = p[1] * gt0;
        const double beta = p[2];
        if (!(gt > 0.0)) return {};
        Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
        Eigen::Vector3d atb = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < n; ++i) {
            const double x = 2.0 * (omega[i] - wc) / gt;
            const cdouble denom = 1.0 - cdouble(0.0, sign * 1.0) * x;
            const cdouble model = 1.0 - beta / denom;
            const cdouble resid = model - z[i];
            const cdouble dm_dx = -beta * cdouble(0.0, sign * 1.0) / (denom * denom);
            const cdouble j0 = dm_dx * (-2.0 * gt0 / gt);   // d/du
            const cdouble j1 = dm_dx * (-x * gt0 / gt);     // d/dg
            const cdouble j2 = -1.0 / denom;                // d/dbeta
            const cdouble cols[3] = {j0, j1, j2};
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b)
                    ata(a, b) += cols[a].real() * cols[b].real() +
                                 cols[a].imag() * cols[b].imag();
                atb[a] -= cols[a].real() * resid.real() + cols[a].imag() * resid.imag();
            }
        }
        const Eigen::Vector3d step = ata.ldlt().solve(atb);
        p += step;
        if (step.cwiseAbs().maxCoeff() < 1e-15) break;
    }
    Candidate c;
    c.omega_center = w_bar + p[0] * gt0;
    c.total_width = p[1] * gt0;
    c.beta = p[2];
    if (!(c.total_width > 0.0) || !(c.beta > 0.0) || c.beta > 1.0 + 1e-6) return {};
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * (omega[i] - c.omega_center) / c.total_width;
        const cdouble model = 1.0 - c.beta / (1.0 - cdouble(0.0, sign * 1.0) * x);
        ss += std::norm(model - z[i]);
    }
    c.residual = std::sqrt(ss / static_cast<double>(n));
    c.valid = true;
    return c;
}

} // namespace

SingleQubitFit fit_single_qubit(const std::vector<double>& omega,
                                const std::vector<cdouble>& t) {
    const std::size_t n = omega.size();
    if (n != t.size()) throw std::domain_error("fit_single_qubit: size mismatch");
    if (n < 16) throw FitError("fit_single_qubit: too few points");

    const Circle circle = fit_circle(t);
    if (!(circle.radius > 0.0))
        throw FitError("fit_single_qubit: degenerate circle");
    const double beta0 = std::min(2.0 * circle.radius, 1.0);
    const double w_bar =
        std::accumulate(omega.begin(), omega.end(), 0.0) / static_cast<double>(n);

    Candidate best;
    for (const int sign : {+1, -1}) {
        // angle around the circle: t - c = (beta/2) e^{i(pi + s*2*atan x)}
        // so tan(s*phi/2) with phi = arg(-(t - c)) is linear in omega.
        std::vector<double> oc;
        std::vector<double> x;
        oc.reserve(n);
        x.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = std::arg(-(t[i] - circle.center));
            const double xi = std::tan(0.5 * sign * phi);
            if (std::abs(xi) < 3.0) {  // keep the well-conditioned inner arc
                oc.push_back(omega[i] - w_bar);
                x.push_back(xi);
            }
        }
        if (oc.size() < 8) continue;
        const double m = static_cast<double>(oc.size());
        double sxx = 0.0, sx = 0.0, sxy = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < oc.size(); ++i) {
            sxx += oc[i] * oc[i];
            sx += oc[i];
            sxy += oc[i] * x[i];
            sy += x[i];
        }
        const double det = sxx * m - sx * sx;
        if (det == 0.0) continue;
        const double slope = (sxy * m - sx * sy) / det;
        const double icpt = (sxx * sy - sx * sxy) / det;
        if (!(slope > 0.0)) continue;
        const double gt0 = 2.0 / slope;
        const double wc0 = w_bar - icpt / slope;

        const Candidate c = refine(omega, t, sign, w_bar, wc0, gt0, beta0);
        if (c.valid && (!best.valid || c.residual < best.residual)) best = c;
    }

    if (!best.valid)
        throw FitError("fit_single_qubit: could not establish the angular parametrization");
    if (best.residual > 0.1 * circle.radius)
        throw FitError("fit_single_qubit: data is not circular (residual above 10% of radius)");
    const double span = omega.back() - omega.front();
    if (span < 6.0 * best.total_width)
        throw FitError("fit_single_qubit: frequency grid narrower than six linewidths");

    SingleQubitFit fit;
    fit.gamma_wg = best.beta * best.total_width;
    fit.gamma_nr = (1.0 - best.beta) * best.total_width;
    fit.omega_center = best.omega_center;
    fit.residual = best.residual;
    return fit;
}

ParameterSweep qubit_frequency_sweep(int which, std::vector<double> frequencies) {
    ParameterSweep sweep;
    sweep.grid = std::move(frequencies);
    sweep.apply = [which](const ArrayModel& base, double value) {
        return base.with_qubit_frequency(which, value);
    };
    return sweep;
}

ModeTrack track_modes(const ArrayModel& base, const ParameterSweep& sweep,
                      double omega_ref) {
    if (sweep.grid.empty()) throw std::domain_error("track_modes: empty sweep grid");
    for (std::size_t k = 1; k < sweep.grid.size(); ++k)
        if (!(sweep.grid[k] > sweep.grid[k - 1]))
            throw std::domain_error("track_modes: sweep grid must be strictly increasing");

    const int n = base.size();
    const std::size_t steps = sweep.grid.size();
    ModeTrack track;
    track.parameter = sweep.grid;
    track.omega_ref = omega_ref;
    track.tracks.assign(static_cast<std::size_t>(n), std::vector<cdouble>(steps));
    track.crossing_flagged.assign(static_cast<std::size_t>(n), false);

    std::vector<cdouble> previous(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < steps; ++k) {
        const ArrayModel model = sweep.apply(base, sweep.grid[k]);
        const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);
        std::vector<cdouble> current(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) current[static_cast<std::size_t>(i)] = spec.eigenvalues[i];

        if (k == 0) {
            for (int m = 0; m < n; ++m)
                track.tracks[static_cast<std::size_t>(m)][0] = current[static_cast<std::size_t>(m)];
            previous = current;
            continue;
        }

        // Greedy pairing: repeatedly connect the globally closest
        // (previous mode, current eigenvalue) pair.
        std::vector<bool> prev_used(static_cast<std::size_t>(n), false);
        std::vector<bool> cur_used(static_cast<std::size_t>(n), false);
        for (int pass = 0; pass < n; ++pass) {
            double dmin = std::numeric_limits<double>::infinity();
            int bm = -1, bj = -1;
            for (int m = 0; m < n; ++m) {
                if (prev_used[static_cast<std::size_t>(m)]) continue;
                for (int j = 0; j < n; ++j) {
                    if (cur_used[static_cast<std::size_t>(j)]) continue;
                    const double d = std::abs(previous[static_cast<std::size_t>(m)] -
                                              current[static_cast<std::size_t>(j)]);
                    if (d < dmin) {
                        dmin = d;
                        bm = m;
                        bj = j;
                    }
                }
            }
            // flag when an alternative continuation is nearly as good
            double dalt = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                if (cur_used[static_cast<std::size_t>(j)] || j == bj) continue;
                dalt = std::min(dalt, std::abs(previous[static_cast<std::size_t>(bm)] -
                                               current[static_cast<std::size_t>(j)]));
            }
            if (std::isfinite(dalt) && dalt <= 1.1 * dmin && dmin > 0.0)
                track.crossing_flagged[static_cast<std::size_t>(bm)] = true;

            prev_used[static_cast<std::size_t>(bm)] = true;
            cur_used[static_cast<std::size_t>(bj)] = true;
            track.tracks[static_cast<std::size_t>(bm)][k] = current[static_cast<std::size_t>(bj)];
        }
        for (int m = 0; m < n; ++m)
            previous[static_cast<std::size_t>(m)] = track.tracks[static_cast<std::size_t>(m)][k];
    }
    return track;
}

} // namespace superatom
