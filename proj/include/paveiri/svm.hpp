#ifndef PAVEIRI_SVM_HPP
#define PAVEIRI_SVM_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "paveiri/kernel.hpp"
#include "paveiri/preprocess.hpp"

namespace paveiri {

/// Exit state of one SMO run.
struct SmoDiagnostics {
    double dual_objective = 0.0;   // value of the maximized dual
    double kkt_violation = 0.0;    // max violating-pair gap at exit
    std::size_t iterations = 0;    // pair optimizations performed
    bool converged = false;        // violation <= tol (vs. max_passes reached)
};

/// A fitted soft-margin binary classifier in dual form. decision(x) > 0
/// favors label_pair.first (the +1 side during training).
struct SvmBinaryModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefficients;  // alpha_i * y_i per support vector
    double bias = 0.0;
    KernelSpec kernel;
    std::pair<std::size_t, std::size_t> label_pair{0, 1};
    SmoDiagnostics diagnostics;

    double decision(std::span<const double> x) const;
};

enum class TieRule { LowestClassIndex };

/// One-vs-one multiclass ensemble: one binary per unordered pair of classes
/// present in the training data, majority vote, ties to the lowest class
/// index.
struct SvmOvoModel {
    std::vector<std::size_t> classes;  // sorted class labels present at fit
    std::vector<SvmBinaryModel> binaries;
    KernelSpec kernel;
    std::size_t dimension = 0;
    TieRule tie_rule = TieRule::LowestClassIndex;

    std::size_t n_classes() const { return classes.size(); }
};

/// Sequential minimal optimization on the dual of the soft-margin program:
/// maximize sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K(x_i, x_j)
/// subject to 0 <= alpha_i <= C and sum_i alpha_i y_i = 0.
///
/// Pairs are selected by maximal KKT violation; the loop exits when the
/// violating-pair gap drops to `tol` or after `max_passes` pair updates
/// (0 means the default budget of 10 * n). Multipliers above 1e-8 are
/// retained as support vectors. Throws TrainingError when only one label is
/// present, DomainError on bad C or inconsistent dimensions.
SvmBinaryModel train_svm_binary(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, const KernelSpec& spec, double C,
                                double tol = 1e-3, std::size_t max_passes = 0);

/// Trains one binary per pair of classes present in `train`; the lower class
/// of each pair takes the +1 side.
SvmOvoModel train_svm_ovo(const Dataset& train, const KernelSpec& spec, double C,
                          double tol = 1e-3, std::size_t max_passes = 0);

/// Majority vote over all pairwise decisions.
std::size_t predict_svm(const SvmOvoModel& model, std::span<const double> x);

/// Default RBF bandwidth: 1 / (dimension * mean per-feature sample variance).
double default_gamma(const Dataset& train);

}  // namespace paveiri

#endif  // PAVEIRI_SVM_HPP
