#pragma once

#include <string>
#include <vector>

namespace iwatsuka {

enum class FieldKind {
    Constant,
    PowerTail,
    FlatContact,
    InfiniteContact,
    PiecewiseConstant,
    Tabulated,
};

std::string to_string(FieldKind kind);

// Point of the rescaled fiber potential W(t,k) = t^2 + d_k(t).
struct RescaledPotentialPoint {
    double t;
    double k;
    double W;
    double d_k;
};

// One-variable magnetic field b(x): positive, non-decreasing, with finite
// limits b_minus at -inf and b_plus at +inf. Immutable after construction;
// all evaluation methods are const and thread-safe.
//
// Kinds:
//   Constant           b(x) = b0
//   PowerTail          b(x) = b_plus - c*(1+x^2)^(-M/2) for x >= x0,
//                      clamped below at b_minus (requires x0 >= 0 and the
//                      tail to start at or below b_minus so the field stays
//                      monotone)
//   FlatContact        b(x) = b_plus for x >= x_inf,
//                      max(b_minus, b_plus - c*(x_inf-x)^p) for x < x_inf
//   InfiniteContact    b(x) = b_plus for x >= x_inf,
//                      max(b_minus, b_plus - c*exp(1/(x-x_inf))) for x < x_inf
//                      (requires c >= b_plus - b_minus so the left limit is
//                      b_minus)
//   PiecewiseConstant  b_minus for x < x_jump, b_plus for x >= x_jump
//   Tabulated          linear interpolation of sorted (x,b) samples,
//                      constant extension outside the table
class FieldProfile {
public:
    static FieldProfile constant(double b0);
    static FieldProfile power_tail(double b_minus, double b_plus, double M,
                                   double c, double x0);
    static FieldProfile flat_contact(double b_minus, double b_plus, double c,
                                     int p, double x_inf);
    static FieldProfile infinite_contact(double b_minus, double b_plus,
                                         double c, double x_inf);
    static FieldProfile piecewise_constant(double b_minus, double b_plus,
                                           double x_jump);
    static FieldProfile tabulated(std::vector<double> x, std::vector<double> b);

    FieldKind kind() const { return kind_; }
    double b_minus() const { return b_minus_; }
    double b_plus() const { return b_plus_; }

    // FlatContact and InfiniteContact have a contact point x_inf.
    bool is_flat_type() const;
    double x_inf() const;          // throws unsupported_operation otherwise
    double a_inf() const;          // a(x_inf), cached at construction
    int contact_order() const;     // p (FlatContact only)
    double amplitude() const;      // c (PowerTail/FlatContact/InfiniteContact)
    double tail_exponent() const;  // M (PowerTail only)

    double b(double x) const;
    double a(double x) const;                       // int_0^x b, a(0) = 0
    double flux_between(double lo, double hi) const;  // signed int_lo^hi b
    double inverse_a(double k) const;               // x_k with a(x_k) = k
    double t_of_k(double k) const;                  // sqrt(b+)(x_inf - x_k)
    double d_k(double k, double t) const;
    RescaledPotentialPoint rescaled_potential(double k, double t) const;
    double field_deriv_at_contact() const;          // b^(p)(x_inf^-)

    // x-values where the piecewise-analytic formula for b changes.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    std::string describe() const;

private:
    FieldProfile() = default;
    void finish_construction();
    double deficit(double lo, double hi) const;  // int (b_plus - b) >= 0
    double deficit_piece(double lo, double hi) const;

    FieldKind kind_ = FieldKind::Constant;
    double b_minus_ = 1.0;
    double b_plus_ = 1.0;
    double c_ = 0.0;
    double M_ = 0.0;
    int p_ = 0;
    double x0_ = 0.0;
    double x_inf_ = 0.0;
    double x_jump_ = 0.0;
    double clamp_x_ = 0.0;   // left of this, b == b_minus
    bool has_clamp_ = false;
    double a_inf_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<double> a_at_breakpoints_;
    std::vector<double> tab_x_, tab_b_, tab_S_;  // Tabulated antiderivative
};

// Landau level multiplier 2n - 1 (n >= 1).
int landau_level(int n);

// Sorted, deduplicated {b_minus*(2n-1)} U {b_plus*(2n-1)}, n <= n_max.
std::vector<double> thresholds(const FieldProfile& profile, int n_max);

}  // namespace iwatsuka
