#pragma once

#include <vector>

namespace iwatsuka {

// Symmetric tridiagonal matrix: diag has order() entries, off has
// order()-1 entries.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    int order() const { return static_cast<int>(diag.size()); }
};

struct TridiagEigenpair {
    double value = 0.0;
    std::vector<double> vector;  // unit 2-norm, sign-fixed
    double residual = 0.0;       // ||T v - value v||_2
};

// Number of eigenvalues of T strictly below x (Sturm / LDL^T pivot count).
int eigenvalue_count_below(const SymTridiagonal& T, double x);

// m smallest eigenvalues by bisection, ascending. rel_tol is relative to
// max(1, |lambda|). The Sturm counts run in extended precision so the
// achievable accuracy is far below the double roundoff of ||T||.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& T, int m,
                                       double rel_tol = 1e-12);

// Eigenvalues plus inverse-iteration eigenvectors. Vectors are mutually
// orthogonal, unit norm, with the first significant component positive.
// Throws accuracy_error if inverse iteration stagnates.
std::vector<TridiagEigenpair> lowest_eigenpairs(const SymTridiagonal& T, int m,
                                                double rel_tol = 1e-12);

}  // namespace iwatsuka
