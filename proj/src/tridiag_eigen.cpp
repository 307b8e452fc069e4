#include "iwatsuka/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "iwatsuka/errors.hpp"

namespace iwatsuka {
namespace {

// LDL^T pivot count: number of negative pivots equals the number of
// eigenvalues below x. Templated so the bisection can run a fast double
// phase first and finish in long double, where the roundoff floor
// eps*||T|| of the plain recurrence would otherwise dominate.
template <typename Real>
int count_below(const SymTridiagonal& T, Real x) {
    const int n = T.order();
    constexpr Real tiny = std::numeric_limits<Real>::min();
    int count = 0;
    Real q = static_cast<Real>(T.diag[0]) - x;
    if (q < 0) ++count;
    for (int i = 1; i < n; ++i) {
        if (q == 0) q = -tiny;
        const Real e = static_cast<Real>(T.off[i - 1]);
        q = (static_cast<Real>(T.diag[i]) - x) - e * e / q;
        if (q < 0) ++count;
    }
    return count;
}

struct GershgorinBounds {
    long double lo;
    long double hi;
};

GershgorinBounds gershgorin(const SymTridiagonal& T) {
    const int n = T.order();
    long double lo = std::numeric_limits<long double>::max();
    long double hi = std::numeric_limits<long double>::lowest();
    for (int i = 0; i < n; ++i) {
        long double r = 0.0L;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        lo = std::min(lo, static_cast<long double>(T.diag[i]) - r);
        hi = std::max(hi, static_cast<long double>(T.diag[i]) + r);
    }
    return {lo, hi};
}

// LU factorization of (T - sigma I) with partial pivoting; three upper
// bands because of fill-in. Layout follows the usual gttrf scheme.
struct ShiftedLU {
    std::vector<double> dl, d, du, du2;
    std::vector<int> pivot;

    ShiftedLU(const SymTridiagonal& T, double sigma) {
        const int n = T.order();
        dl.assign(T.off.begin(), T.off.end());
        d.resize(n);
        for (int i = 0; i < n; ++i) d[i] = T.diag[i] - sigma;
        du.assign(T.off.begin(), T.off.end());
        du2.assign(std::max(0, n - 2), 0.0);
        pivot.resize(n);
        for (int i = 0; i < n; ++i) pivot[i] = i;

        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                // no row swap
                if (d[i] == 0.0) d[i] = std::numeric_limits<double>::min();
                const double mult = dl[i] / d[i];
                dl[i] = mult;
                d[i + 1] -= mult * du[i];
                if (i + 2 < n) du2[i] = 0.0;
            } else {
                // swap rows i and i+1
                const double mult = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = mult;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - mult * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -mult * du[i + 1];
                }
                pivot[i] = i + 1;
            }
        }
        if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::min();
    }

    void solve(std::vector<double>& x) const {
        const int n = static_cast<int>(d.size());
        for (int i = 0; i + 1 < n; ++i) {
            if (pivot[i] != i) std::swap(x[i], x[i + 1]);
            x[i + 1] -= dl[i] * x[i];
        }
        x[n - 1] /= d[n - 1];
        if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        for (int i = n - 3; i >= 0; --i)
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
};

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double matvec_residual(const SymTridiagonal& T, double lambda,
                       const std::vector<double>& v) {
    const int n = T.order();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = (T.diag[i] - lambda) * v[i];
        if (i > 0) r += T.off[i - 1] * v[i - 1];
        if (i + 1 < n) r += T.off[i] * v[i + 1];
        s += r * r;
    }
    return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-3 * vmax) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace

int eigenvalue_count_below(const SymTridiagonal& T, double x) {
    return count_below<long double>(T, static_cast<long double>(x));
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& T, int m,
                                       double rel_tol) {
    const int n = T.order();
    if (m < 1) throw std::invalid_argument("lowest_eigenvalues: m must be >= 1");
    if (m > n) throw std::invalid_argument("lowest_eigenvalues: m exceeds order");

    const auto bounds = gershgorin(T);
    std::vector<double> values(m);
    long double prev = bounds.lo;
    for (int i = 1; i <= m; ++i) {
        long double lo = prev;
        long double hi = bounds.hi;
        // Fast double phase down to a coarse width. Double Sturm counts can
        // misplace a boundary by ~eps*||T||, so the bracket is padded before
        // the extended-precision phase trusts it.
        while (hi - lo > 1e-4L * std::max(1.0L, std::abs(lo))) {
            const double mid =
                0.5 * (static_cast<double>(lo) + static_cast<double>(hi));
            if (count_below<double>(T, mid) >= i)
                hi = mid;
            else
                lo = mid;
        }
        const long double pad = 1e-7L * std::max(1.0L, std::abs(hi));
        lo -= pad;
        hi += pad;
        if (count_below<long double>(T, lo) >= i ||
            count_below<long double>(T, hi) < i) {
            lo = bounds.lo;
            hi = bounds.hi;
        }
        // extended-precision refinement
        for (int it = 0; it < 300; ++it) {
            const long double width = hi - lo;
            const long double tol =
                static_cast<long double>(rel_tol) *
                std::max<long double>(1.0L, std::min(std::abs(lo), std::abs(hi)));
            if (width <= tol) break;
            const long double mid = 0.5L * (lo + hi);
            if (count_below<long double>(T, mid) >= i)
                hi = mid;
            else
                lo = mid;
        }
        values[i - 1] = static_cast<double>(0.5L * (lo + hi));
        prev = lo;
    }
    return values;
}

std::vector<TridiagEigenpair> lowest_eigenpairs(const SymTridiagonal& T, int m,
                                                double rel_tol) {
    const int n = T.order();
    const std::vector<double> values = lowest_eigenvalues(T, m, rel_tol);

    double norm_inf = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::abs(T.diag[i]);
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        norm_inf = std::max(norm_inf, r);
    }
    const double res_tol = std::max(
        1e-10, 10.0 * std::numeric_limits<double>::epsilon() * norm_inf);

    std::vector<TridiagEigenpair> out(m);
    std::mt19937 rng(0x1f2e3d4cu);  // fixed seed: deterministic vectors
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    for (int j = 0; j < m; ++j) {
        const double lambda = values[j];
        ShiftedLU lu(T, lambda);

        std::vector<double> v(n);
        for (double& x : v) x = uni(rng);
        double nv = norm2(v);
        for (double& x : v) x /= nv;

        // indices of earlier eigenvectors too close in spectrum to ignore
        std::vector<int> near;
        for (int i = 0; i < j; ++i)
            if (std::abs(values[i] - lambda) <
                1e-3 * std::max(1.0, std::abs(lambda)))
                near.push_back(i);

        double best_res = std::numeric_limits<double>::max();
        std::vector<double> best_v;
        for (int iter = 0; iter < 12; ++iter) {
            lu.solve(v);
            for (int i : near) {
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += v[r] * out[i].vector[r];
                for (int r = 0; r < n; ++r) v[r] -= dot * out[i].vector[r];
            }
            nv = norm2(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) {
                for (double& x : v) x = uni(rng);
                nv = norm2(v);
            }
            for (double& x : v) x /= nv;
            const double res = matvec_residual(T, lambda, v);
            if (res < best_res) {
                best_res = res;
                best_v = v;
            }
            if (res <= res_tol) break;
        }
        if (best_res > res_tol)
            throw accuracy_error("inverse iteration stagnated", best_res);
        fix_sign(best_v);
        out[j].value = lambda;
        out[j].vector = std::move(best_v);
        out[j].residual = best_res;
    }
    return out;
}

}  // namespace iwatsuka
