#ifndef PAVEIRI_KERNEL_HPP
#define PAVEIRI_KERNEL_HPP

#include <span>
#include <string>

#include "paveiri/errors.hpp"

namespace paveiri {

enum class KernelKind { Rbf, Polynomial };

/// Kernel configuration. gamma applies to Rbf, degree to Polynomial; the
/// unused parameter is carried but ignored.
struct KernelSpec {
    KernelKind kind = KernelKind::Rbf;
    double gamma = 1.0;  // > 0
    int degree = 3;      // >= 1

    bool operator==(const KernelSpec&) const = default;
};

void validate_kernel(const KernelSpec& spec);

/// Rbf: exp(-gamma * ||x - y||^2). Polynomial: (x . y + 1)^degree.
/// Throws DomainError on dimension mismatch or invalid spec.
double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelSpec& spec);

std::string kernel_tag(const KernelSpec& spec);  // "rbf" or "poly"

}  // namespace paveiri

#endif  // PAVEIRI_KERNEL_HPP
