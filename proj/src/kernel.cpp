#include "paveiri/kernel.hpp"

#include <cmath>

namespace paveiri {

void validate_kernel(const KernelSpec& spec) {
    if (spec.kind == KernelKind::Rbf && !(spec.gamma > 0.0)) {
        throw DomainError("rbf kernel requires gamma > 0");
    }
    if (spec.kind == KernelKind::Polynomial && spec.degree < 1) {
        throw DomainError("polynomial kernel requires degree >= 1");
    }
}

double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
    validate_kernel(spec);
    if (x.size() != y.size()) {
        throw DomainError("kernel_eval: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
    }
    if (spec.kind == KernelKind::Rbf) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            d2 += d * d;
        }
        return std::exp(-spec.gamma * d2);
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    double base = dot + 1.0;
    double result = 1.0;
    for (int k = 0; k < spec.degree; ++k) result *= base;
    return result;
}

std::string kernel_tag(const KernelSpec& spec) {
    return spec.kind == KernelKind::Rbf ? "rbf" : "poly";
}

}  // namespace paveiri
