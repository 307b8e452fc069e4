#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "iwatsuka/field.hpp"
#include "iwatsuka/tridiag_eigen.hpp"

namespace iwatsuka {

// Uniform grid on [x_min, x_max]; the two boundary nodes carry the
// Dirichlet condition.
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_nodes = 65;

    double spacing() const { return (x_max - x_min) / (n_nodes - 1); }
    double node(int i) const { return x_min + spacing() * i; }
};

struct GridPolicy {
    double h_max = 0.01;            // upper bound on the node spacing
    double potential_margin = 60.0; // window ends where (a-k)^2 >= E_est + margin
};

// Eigenpair of the fiber operator h(k) = -d^2/dx^2 + (a(x)-k)^2,
// discretized on grid. psi covers all grid nodes (zero at the ends) and is
// L2-normalized with the trapezoid rule.
struct FiberEigenpair {
    int n = 1;
    double k = 0.0;
    double energy = 0.0;
    std::vector<double> psi;
    Grid grid;
    double residual = 0.0;
};

// Richardson-extrapolated band value and Feynman-Hellmann derivative.
struct BandPoint {
    double energy = 0.0;
    double energy_error = 0.0;      // |E_half - E_full| / 3
    double derivative = 0.0;
    double derivative_error = 0.0;
    bool accuracy_warning = false;  // energy_error > 1e-8 * max(1, E)
};

// Truncation window centered on x_k, wide enough that the potential exceeds
// b_plus*(2 n_max - 1) + margin at the boundaries.
Grid choose_window(const FieldProfile& profile, double k, int n_max,
                   const GridPolicy& policy = {});

// a(x) at every grid node. Closed-form kinds evaluate directly; quadrature
// kinds accumulate per-panel fluxes (compensated) from one anchor value.
std::vector<double> eval_a_grid(const FieldProfile& profile, const Grid& grid);

// Dirichlet 3-point discretization on the interior nodes: order n_nodes-2.
SymTridiagonal assemble(const FieldProfile& profile, double k, const Grid& grid);

// Single-grid eigenpair of band n at frequency k.
FiberEigenpair fiber_eigenpair(const FieldProfile& profile, double k, int n,
                               const GridPolicy& policy = {});

// Simpson-rule Feynman-Hellmann derivative -2 int (a-k) psi^2 on the
// eigenpair's own grid.
double band_derivative_fh(const FieldProfile& profile, double k,
                          const FiberEigenpair& pair);

// Bands 1..n_max at frequency k: one window, solves at h and h/2, Richardson
// extrapolation of both the energy and the Feynman-Hellmann derivative.
std::vector<BandPoint> band_points(const FieldProfile& profile, double k,
                                   int n_max, const GridPolicy& policy = {});

BandPoint band_point(const FieldProfile& profile, double k, int n,
                     const GridPolicy& policy = {});

// Extrapolated E_n(k).
double band_value(const FieldProfile& profile, double k, int n,
                  const GridPolicy& policy = {});

// Extrapolated E_n(k) without eigenvectors (cheaper; used by root finding).
double band_energy(const FieldProfile& profile, double k, int n,
                   const GridPolicy& policy = {});

// Dirichlet eigenvalue n of -d^2/dt^2 + V(t) on [t_min, t_max] with the same
// h/2 extrapolation. Returns {value, error_estimate}.
std::pair<double, double> generic_eigenvalue_1d(
    const std::function<double(double)>& V, double t_min, double t_max, int n,
    double h_max);

}  // namespace iwatsuka
