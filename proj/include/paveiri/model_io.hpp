#ifndef PAVEIRI_MODEL_IO_HPP
#define PAVEIRI_MODEL_IO_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "paveiri/logit.hpp"
#include "paveiri/naive_bayes.hpp"
#include "paveiri/svm.hpp"

namespace paveiri {

/// A fitted classifier together with everything needed to apply it to new
/// data: the schema fingerprint it was trained against, the binning, the
/// train-set standardization, and the held-out indices of the split that
/// produced it (so evaluation reuses the exact 20%).
struct TrainedModel {
    std::string kind;  // "naive_bayes" | "svm_ovo" | "logit"
    std::string tag;   // short label for reports: "nb", "svm_rbf", "svm_poly", "logit"
    std::string schema_fingerprint;
    IriBinning binning;
    Standardization standardization;
    std::variant<NaiveBayesModel, SvmOvoModel, LogitModel> learner;

    // Split reproduction (populated by the training front end).
    std::uint64_t seed = 0;
    double train_fraction = 0.8;
    std::vector<std::size_t> test_indices;
    std::string corpus_digest;
    std::size_t corpus_records = 0;

    std::string config_digest;
};

/// Class label for one standardized feature vector.
std::size_t predict_class(const TrainedModel& model, std::span<const double> x);

/// JSON round trip. Values are written with round-trip-exact decimal floats
/// so a saved model reloads bit-identically.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

/// FNV-1a digest of a file's bytes.
std::string file_digest(const std::string& path);

}  // namespace paveiri

#endif  // PAVEIRI_MODEL_IO_HPP
