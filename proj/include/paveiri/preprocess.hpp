#ifndef PAVEIRI_PREPROCESS_HPP
#define PAVEIRI_PREPROCESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paveiri/domain.hpp"
#include "paveiri/ingest.hpp"

namespace paveiri {

/// Per-feature standardization statistics, fitted with the n-1 stddev
/// convention. One-hot features and constant features (stddev < 1e-12) are
/// passed through unscaled; constants are flagged.
struct Standardization {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<bool> scaled;  // false for one-hot and constant features
};

/// Model-ready samples: encoded vectors plus the schema, binning and
/// (optionally) fitted standardization that produced them.
struct Dataset {
    FeatureSchema schema;
    std::vector<FeatureVector> vectors;
    IriBinning binning;
    std::optional<Standardization> standardization;
    std::vector<std::string> provenance;

    std::size_t size() const { return vectors.size(); }
    std::size_t class_label(std::size_t i) const { return class_of(vectors[i].label_iri, binning); }
};

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
};

struct SplitResult {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;  // into the input dataset
    std::vector<std::size_t> test_indices;
};

/// Groups consecutive same-route records into windows of target_length
/// (which must be an integer multiple of the uniform record length).
/// Aggregates: iri by plain mean; rut depth, faulting, crack width/depth and
/// percent extents by length-weighted mean; footage extents by sum. Windows
/// are split where surface type or functional class changes and at milepost
/// gaps; partial windows are dropped and logged in provenance.
Corpus aggregate(const Corpus& corpus, double target_length);

/// Drops records with iri strictly greater than threshold; count recorded in
/// provenance. Idempotent.
Corpus remove_outliers(const Corpus& corpus, double threshold = 300.0);

/// Encodes every record through the schema (label_iri = record iri).
Dataset encode(const Corpus& corpus, const FeatureSchema& schema,
               const IriBinning& binning = IriBinning{});

enum class StatsSource { FitHere, Reuse };

/// Centers and scales numeric features to mean 0 / stddev 1. FitHere fits
/// statistics on this dataset; Reuse applies the statistics already present
/// (throws StateError when absent). One-hot and constant features untouched.
Dataset standardize(const Dataset& dataset, StatsSource source);

/// Applies externally fitted statistics (e.g. a training set's) to a raw
/// dataset.
Dataset apply_standardization(const Dataset& dataset, const Standardization& stats);

/// Fits statistics without applying them.
Standardization fit_standardization(const Dataset& dataset);

/// Deterministic seeded split: Fisher-Yates shuffle of indices by
/// SplitMix64(spec.seed), first ceil(n * train_fraction) to train.
/// Standardization is fitted on the train portion and applied to both halves.
/// Throws DomainError for n < 2 or fraction outside (0, 1).
SplitResult split(const Dataset& dataset, const SplitSpec& spec);

}  // namespace paveiri

#endif  // PAVEIRI_PREPROCESS_HPP
