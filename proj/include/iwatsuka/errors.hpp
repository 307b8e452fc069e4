#pragma once

#include <stdexcept>
#include <string>

namespace iwatsuka {

// Raised when a numerical routine cannot reach its accuracy contract
// (quadrature tolerance unreachable, inverse-iteration stagnation, ...).
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

// Raised when an operation is called on a profile kind that does not
// support it (e.g. a contact-point quantity on a non-flat field).
class unsupported_operation : public std::logic_error {
public:
    explicit unsupported_operation(const std::string& what)
        : std::logic_error(what) {}
};

}  // namespace iwatsuka
