#include "iwatsuka/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iwatsuka/errors.hpp"
#include "iwatsuka/quadrature.hpp"

namespace iwatsuka {

namespace {

constexpr double kFluxAbsTol = 1e-13;
constexpr double kInverseRelTol = 1e-11;

double japanese_bracket_pow(double x, double M) {
    // <x>^(-M) with <x> = sqrt(1+x^2)
    return std::pow(1.0 + x * x, -0.5 * M);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::Constant: return "Constant";
        case FieldKind::PowerTail: return "PowerTail";
        case FieldKind::FlatContact: return "FlatContact";
        case FieldKind::InfiniteContact: return "InfiniteContact";
        case FieldKind::PiecewiseConstant: return "PiecewiseConstant";
        case FieldKind::Tabulated: return "Tabulated";
    }
    return "?";
}

FieldProfile FieldProfile::constant(double b0) {
    require(b0 > 0.0, "Constant: b0 must be positive");
    FieldProfile f;
    f.kind_ = FieldKind::Constant;
    f.b_minus_ = f.b_plus_ = b0;
    f.finish_construction();
    return f;
}

FieldProfile FieldProfile::power_tail(double b_minus, double b_plus, double M,
                                      double c, double x0) {
    require(b_minus > 0.0, "PowerTail: b_minus must be positive");
    require(b_minus < b_plus, "PowerTail: requires b_minus < b_plus");
    require(M > 0.0, "PowerTail: M must be positive");
    require(c > 0.0, "PowerTail: c must be positive");
    require(x0 >= 0.0, "PowerTail: x0 must be >= 0 (tail on the right)");
    require(b_plus - c * japanese_bracket_pow(x0, M) <= b_minus,
            "PowerTail: tail must start at or below b_minus "
            "(need c*<x0>^-M >= b_plus - b_minus)");
    FieldProfile f;
    f.kind_ = FieldKind::PowerTail;
    f.b_minus_ = b_minus;
    f.b_plus_ = b_plus;
    f.M_ = M;
    f.c_ = c;
    f.x0_ = x0;
    // b_plus - c*<x>^-M crosses b_minus at <x> = (c/(b_plus-b_minus))^(1/M)
    const double q = std::pow(c / (b_plus - b_minus), 1.0 / M);
    f.clamp_x_ = std::sqrt(std::max(0.0, q * q - 1.0));
    f.has_clamp_ = true;
    f.breakpoints_ = {f.clamp_x_};
    f.finish_construction();
    return f;
}

FieldProfile FieldProfile::flat_contact(double b_minus, double b_plus, double c,
                                        int p, double x_inf) {
    require(b_minus > 0.0, "FlatContact: b_minus must be positive");
    require(b_minus < b_plus, "FlatContact: requires b_minus < b_plus");
    require(c > 0.0, "FlatContact: c must be positive");
    require(p >= 1 && p <= 16, "FlatContact: p must be an integer in [1,16]");
    FieldProfile f;
    f.kind_ = FieldKind::FlatContact;
    f.b_minus_ = b_minus;
    f.b_plus_ = b_plus;
    f.c_ = c;
    f.p_ = p;
    f.x_inf_ = x_inf;
    f.clamp_x_ = x_inf - std::pow((b_plus - b_minus) / c, 1.0 / p);
    f.has_clamp_ = true;
    f.breakpoints_ = {f.clamp_x_, x_inf};
    f.finish_construction();
    return f;
}

FieldProfile FieldProfile::infinite_contact(double b_minus, double b_plus,
                                            double c, double x_inf) {
    require(b_minus > 0.0, "InfiniteContact: b_minus must be positive");
    require(b_minus < b_plus, "InfiniteContact: requires b_minus < b_plus");
    require(c >= b_plus - b_minus,
            "InfiniteContact: requires c >= b_plus - b_minus "
            "(otherwise the limit at -inf is not b_minus)");
    FieldProfile f;
    f.kind_ = FieldKind::InfiniteContact;
    f.b_minus_ = b_minus;
    f.b_plus_ = b_plus;
    f.c_ = c;
    f.x_inf_ = x_inf;
    if (c > b_plus - b_minus) {
        // exp(1/(x-x_inf)) reaches (b_plus-b_minus)/c at x_inf + 1/log(...)
        f.clamp_x_ = x_inf + 1.0 / std::log((b_plus - b_minus) / c);
        f.has_clamp_ = true;
        f.breakpoints_ = {f.clamp_x_, x_inf};
    } else {
        f.has_clamp_ = false;
        f.breakpoints_ = {x_inf};
    }
    f.finish_construction();
    return f;
}

FieldProfile FieldProfile::piecewise_constant(double b_minus, double b_plus,
                                              double x_jump) {
    require(b_minus > 0.0, "PiecewiseConstant: b_minus must be positive");
    require(b_minus < b_plus, "PiecewiseConstant: requires b_minus < b_plus");
    FieldProfile f;
    f.kind_ = FieldKind::PiecewiseConstant;
    f.b_minus_ = b_minus;
    f.b_plus_ = b_plus;
    f.x_jump_ = x_jump;
    f.breakpoints_ = {x_jump};
    f.finish_construction();
    return f;
}

FieldProfile FieldProfile::tabulated(std::vector<double> x,
                                     std::vector<double> b) {
    require(x.size() == b.size(), "Tabulated: x and b must have equal length");
    require(x.size() >= 2, "Tabulated: need at least two samples");
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        require(x[i] < x[i + 1], "Tabulated: x samples must be strictly increasing");
        require(b[i] <= b[i + 1], "Tabulated: b samples must be non-decreasing");
    }
    require(b.front() > 0.0, "Tabulated: field values must be positive");
    FieldProfile f;
    f.kind_ = FieldKind::Tabulated;
    f.b_minus_ = b.front();
    f.b_plus_ = b.back();
    f.tab_x_ = std::move(x);
    f.tab_b_ = std::move(b);
    // Exact antiderivative of the piecewise-linear field, anchored at the
    // first sample.
    f.tab_S_.resize(f.tab_x_.size());
    f.tab_S_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < f.tab_x_.size(); ++i) {
        const double dx = f.tab_x_[i + 1] - f.tab_x_[i];
        f.tab_S_[i + 1] = f.tab_S_[i] + 0.5 * dx * (f.tab_b_[i] + f.tab_b_[i + 1]);
    }
    f.breakpoints_ = f.tab_x_;
    f.finish_construction();
    return f;
}

void FieldProfile::finish_construction() {
    a_at_breakpoints_.resize(breakpoints_.size());
    for (std::size_t i = 0; i < breakpoints_.size(); ++i)
        a_at_breakpoints_[i] = a(breakpoints_[i]);
    if (is_flat_type()) a_inf_ = a(x_inf_);
}

bool FieldProfile::is_flat_type() const {
    return kind_ == FieldKind::FlatContact || kind_ == FieldKind::InfiniteContact;
}

double FieldProfile::x_inf() const {
    if (!is_flat_type())
        throw unsupported_operation("x_inf: profile has no contact point");
    return x_inf_;
}

double FieldProfile::a_inf() const {
    if (!is_flat_type())
        throw unsupported_operation("a_inf: profile has no contact point");
    return a_inf_;
}

int FieldProfile::contact_order() const {
    if (kind_ != FieldKind::FlatContact)
        throw unsupported_operation("contact_order: requires a FlatContact profile");
    return p_;
}

double FieldProfile::amplitude() const {
    if (kind_ != FieldKind::PowerTail && kind_ != FieldKind::FlatContact &&
        kind_ != FieldKind::InfiniteContact)
        throw unsupported_operation("amplitude: profile has no amplitude parameter");
    return c_;
}

double FieldProfile::tail_exponent() const {
    if (kind_ != FieldKind::PowerTail)
        throw unsupported_operation("tail_exponent: requires a PowerTail profile");
    return M_;
}

double FieldProfile::b(double x) const {
    switch (kind_) {
        case FieldKind::Constant:
            return b_plus_;
        case FieldKind::PowerTail:
            if (x <= clamp_x_) return b_minus_;
            return std::max(b_minus_, b_plus_ - c_ * japanese_bracket_pow(x, M_));
        case FieldKind::FlatContact:
            if (x >= x_inf_) return b_plus_;
            if (x <= clamp_x_) return b_minus_;
            return b_plus_ - c_ * std::pow(x_inf_ - x, static_cast<double>(p_));
        case FieldKind::InfiniteContact:
            if (x >= x_inf_) return b_plus_;
            if (has_clamp_ && x <= clamp_x_) return b_minus_;
            return std::max(b_minus_, b_plus_ - c_ * std::exp(1.0 / (x - x_inf_)));
        case FieldKind::PiecewiseConstant:
            return x < x_jump_ ? b_minus_ : b_plus_;
        case FieldKind::Tabulated: {
            if (x <= tab_x_.front()) return tab_b_.front();
            if (x >= tab_x_.back()) return tab_b_.back();
            const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - tab_x_.begin()) - 1;
            const double w = (x - tab_x_[i]) / (tab_x_[i + 1] - tab_x_[i]);
            return tab_b_[i] + w * (tab_b_[i + 1] - tab_b_[i]);
        }
    }
    return b_plus_;
}

// Deficit integral over a single analytic piece (no breakpoints inside).
double FieldProfile::deficit_piece(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    switch (kind_) {
        case FieldKind::Constant:
            return 0.0;
        case FieldKind::PowerTail:
            if (hi <= clamp_x_) return (b_plus_ - b_minus_) * (hi - lo);
            return c_ * integrate([this](double t) { return japanese_bracket_pow(t, M_); },
                                  lo, hi, kFluxAbsTol, kFluxAbsTol);
        case FieldKind::FlatContact: {
            if (lo >= x_inf_) return 0.0;
            if (hi <= clamp_x_) return (b_plus_ - b_minus_) * (hi - lo);
            // int_lo^hi c*(x_inf - t)^p dt, closed form
            const double pp = static_cast<double>(p_ + 1);
            return c_ * (std::pow(x_inf_ - lo, pp) - std::pow(x_inf_ - hi, pp)) / pp;
        }
        case FieldKind::InfiniteContact:
            if (lo >= x_inf_) return 0.0;
            if (has_clamp_ && hi <= clamp_x_) return (b_plus_ - b_minus_) * (hi - lo);
            return integrate(
                [this](double t) {
                    if (t >= x_inf_) return 0.0;
                    return std::min(b_plus_ - b_minus_,
                                    c_ * std::exp(1.0 / (t - x_inf_)));
                },
                lo, hi, kFluxAbsTol, kFluxAbsTol);
        case FieldKind::PiecewiseConstant: {
            const double overlap = std::min(hi, x_jump_) - lo;
            return overlap > 0.0 ? (b_plus_ - b_minus_) * overlap : 0.0;
        }
        case FieldKind::Tabulated: {
            // exact: b_plus*(hi-lo) minus the trapezoid flux
            double S_lo, S_hi;
            auto S = [this](double x) {
                if (x <= tab_x_.front())
                    return tab_S_.front() + (x - tab_x_.front()) * tab_b_.front();
                if (x >= tab_x_.back())
                    return tab_S_.back() + (x - tab_x_.back()) * tab_b_.back();
                const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - tab_x_.begin()) - 1;
                const double dx = x - tab_x_[i];
                const double slope = (tab_b_[i + 1] - tab_b_[i]) /
                                     (tab_x_[i + 1] - tab_x_[i]);
                return tab_S_[i] + dx * (tab_b_[i] + 0.5 * slope * dx);
            };
            S_lo = S(lo);
            S_hi = S(hi);
            return b_plus_ * (hi - lo) - (S_hi - S_lo);
        }
    }
    return 0.0;
}

double FieldProfile::deficit(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    double total = 0.0;
    double cursor = lo;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), cursor);
    for (; it != breakpoints_.end() && *it < hi; ++it) {
        total += deficit_piece(cursor, *it);
        cursor = *it;
    }
    total += deficit_piece(cursor, hi);
    return total;
}

double FieldProfile::flux_between(double lo, double hi) const {
    if (lo == hi) return 0.0;
    if (lo > hi) return -flux_between(hi, lo);
    return b_plus_ * (hi - lo) - deficit(lo, hi);
}

double FieldProfile::a(double x) const { return flux_between(0.0, x); }

double FieldProfile::inverse_a(double k) const {
    const double tol = kInverseRelTol * std::max(1.0, std::abs(k));
    if (kind_ == FieldKind::Constant) return k / b_plus_;

    // Exact linear branches outside the structured region. The field is
    // constant b_plus right of the last breakpoint for every kind, and
    // constant b_minus left of the first one except for an unclamped
    // InfiniteContact (which approaches b_minus only asymptotically).
    if (!breakpoints_.empty()) {
        if (k >= a_at_breakpoints_.back())
            return breakpoints_.back() + (k - a_at_breakpoints_.back()) / b_plus_;
        const bool left_linear =
            !(kind_ == FieldKind::InfiniteContact && !has_clamp_);
        if (left_linear && k <= a_at_breakpoints_.front())
            return breakpoints_.front() +
                   (k - a_at_breakpoints_.front()) / b_minus_;
    }

    // Safeguarded Newton. a is strictly increasing with slope in
    // [b_minus, b_plus], so a bracket is easy to expand.
    double x = k / b_plus_;
    double lo = x, hi = x;
    double step = 1.0 + std::abs(k) / b_plus_ * 0.1;
    while (a(lo) > k) {
        lo -= step;
        step *= 2.0;
        if (step > 1e12) throw accuracy_error("inverse_a: bracketing failed", step);
    }
    step = 1.0 + std::abs(k) / b_plus_ * 0.1;
    while (a(hi) < k) {
        hi += step;
        step *= 2.0;
        if (step > 1e12) throw accuracy_error("inverse_a: bracketing failed", step);
    }
    x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = a(x) - k;
        if (std::abs(fx) <= tol) return x;
        if (fx > 0.0) hi = x; else lo = x;
        double xn = x - fx / b(x);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        x = xn;
    }
    throw accuracy_error("inverse_a: did not converge", std::abs(a(x) - k));
}

double FieldProfile::t_of_k(double k) const {
    if (!is_flat_type())
        throw unsupported_operation("t_of_k: requires a flat-type profile");
    return (a_inf_ - k) / std::sqrt(b_plus_);
}

double FieldProfile::d_k(double k, double t) const {
    const double x_k = inverse_a(k);
    const double x_t = x_k + t / std::sqrt(b_plus_);
    double i_plus, i_minus;
    if (x_t <= x_k) {
        const double def = deficit(x_t, x_k);
        i_minus = -def;
        i_plus = 2.0 * b_plus_ * (x_k - x_t) - def;
    } else {
        const double def = deficit(x_k, x_t);
        i_minus = def;
        i_plus = -(2.0 * b_plus_ * (x_t - x_k) - def);
    }
    return i_plus * i_minus / b_plus_;
}

RescaledPotentialPoint FieldProfile::rescaled_potential(double k, double t) const {
    const double d = d_k(k, t);
    return {t, k, t * t + d, d};
}

double FieldProfile::field_deriv_at_contact() const {
    if (kind_ != FieldKind::FlatContact)
        throw unsupported_operation(
            "field_deriv_at_contact: requires a FlatContact profile");
    // p-th one-sided derivative of b_plus - c*(x_inf - x)^p at x_inf^-
    double factorial = 1.0;
    for (int j = 2; j <= p_; ++j) factorial *= j;
    const double sign = (p_ % 2 == 0) ? -1.0 : 1.0;
    return sign * c_ * factorial;
}

std::string FieldProfile::describe() const {
    std::ostringstream os;
    os << "kind=" << to_string(kind_);
    os << " b_minus=" << b_minus_ << " b_plus=" << b_plus_;
    switch (kind_) {
        case FieldKind::PowerTail:
            os << " M=" << M_ << " c=" << c_ << " x0=" << x0_;
            break;
        case FieldKind::FlatContact:
            os << " c=" << c_ << " p=" << p_ << " x_inf=" << x_inf_;
            break;
        case FieldKind::InfiniteContact:
            os << " c=" << c_ << " x_inf=" << x_inf_;
            break;
        case FieldKind::PiecewiseConstant:
            os << " x_jump=" << x_jump_;
            break;
        case FieldKind::Tabulated:
            os << " samples=" << tab_x_.size();
            break;
        default:
            break;
    }
    return os.str();
}

int landau_level(int n) {
    if (n < 1) throw std::invalid_argument("landau_level: n must be >= 1");
    return 2 * n - 1;
}

std::vector<double> thresholds(const FieldProfile& profile, int n_max) {
    if (n_max < 1) throw std::invalid_argument("thresholds: n_max must be >= 1");
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        out.push_back(profile.b_minus() * landau_level(n));
        out.push_back(profile.b_plus() * landau_level(n));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace iwatsuka
