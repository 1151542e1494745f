#ifndef PAVEIRI_DOMAIN_HPP
#define PAVEIRI_DOMAIN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paveiri/errors.hpp"

namespace paveiri {

// ---------------------------------------------------------------------------
// Categorical domain enums
// ---------------------------------------------------------------------------

enum class SurfaceType { Asphalt, JointedConcrete, ContinuousConcrete, Composite };
enum class FunctionalClass { Interstate, USRoute, StateRoute };

/// The registered crack families. Wheel-path (WP) distresses are reported
/// separately from non-wheel-path ones; spalls, shoulder and corner cracking
/// belong to rigid surfaces but every family may appear on any record.
enum class CrackFamily {
    NonWPLongitudinal,
    WPLongitudinal,
    WPAlligator,
    EdgeLongitudinal,
    EdgeAlligator,
    Transverse,
    Block,
    LongitudinalSpall,
    TransverseSpall,
    Shoulder,
    Corner,
};

enum class Severity { Low, Medium, High };

/// How a family's extent is measured: linear footage or percent of area.
enum class ExtentMeasure { Feet, Percent };

inline constexpr std::size_t kNumCrackFamilies = 11;
inline constexpr std::size_t kNumSeverities = 3;
inline constexpr std::size_t kNumSurfaceTypes = 4;
inline constexpr std::size_t kNumFunctionalClasses = 3;

constexpr std::array<CrackFamily, kNumCrackFamilies> all_crack_families() {
    return {CrackFamily::NonWPLongitudinal, CrackFamily::WPLongitudinal,
            CrackFamily::WPAlligator,       CrackFamily::EdgeLongitudinal,
            CrackFamily::EdgeAlligator,     CrackFamily::Transverse,
            CrackFamily::Block,             CrackFamily::LongitudinalSpall,
            CrackFamily::TransverseSpall,   CrackFamily::Shoulder,
            CrackFamily::Corner};
}

constexpr std::array<Severity, kNumSeverities> all_severities() {
    return {Severity::Low, Severity::Medium, Severity::High};
}

constexpr std::array<SurfaceType, kNumSurfaceTypes> all_surface_types() {
    return {SurfaceType::Asphalt, SurfaceType::JointedConcrete,
            SurfaceType::ContinuousConcrete, SurfaceType::Composite};
}

constexpr std::array<FunctionalClass, kNumFunctionalClasses> all_functional_classes() {
    return {FunctionalClass::Interstate, FunctionalClass::USRoute,
            FunctionalClass::StateRoute};
}

// Stable string names used in file formats and feature ids.
std::string_view to_string(SurfaceType s);
std::string_view to_string(FunctionalClass c);
std::string_view to_string(CrackFamily f);
std::string_view to_string(Severity s);

SurfaceType surface_type_from_string(std::string_view s);
FunctionalClass functional_class_from_string(std::string_view s);
CrackFamily crack_family_from_string(std::string_view s);
Severity severity_from_string(std::string_view s);

/// Measure kind registered for each family. Alligator and block cracking are
/// area distresses reported in percent; everything else is linear footage.
ExtentMeasure extent_measure_of(CrackFamily f);

// ---------------------------------------------------------------------------
// Survey records
// ---------------------------------------------------------------------------

/// One (family, severity) distress entry on a record. extent is feet or
/// percent per extent_measure_of(family); width and depth are inches.
struct CrackObservation {
    CrackFamily family = CrackFamily::NonWPLongitudinal;
    Severity severity = Severity::Low;
    double extent = 0.0;
    double width = 0.0;
    double depth = 0.0;
};

/// One surveyed pavement segment. Immutable value object once validated.
struct SegmentRecord {
    std::string route_id;
    double start_milepost = 0.0;  // miles
    double length = 0.0;          // miles, > 0
    SurfaceType surface_type = SurfaceType::Asphalt;
    FunctionalClass functional_class = FunctionalClass::Interstate;
    double iri = 0.0;        // inches/mile, >= 0
    double rut_depth = 0.0;  // inches, >= 0
    double faulting = 0.0;   // inches, signed
    std::vector<CrackObservation> cracks;  // unique (family, severity) keys

    /// Returns the observation for (family, severity), or nullptr.
    const CrackObservation* find_crack(CrackFamily f, Severity s) const;
};

/// Throws ValidationError if any field or crack entry violates an invariant.
/// `context` is prepended to the message (e.g. "row 12").
void validate_record(const SegmentRecord& rec, const std::string& context = "");

// ---------------------------------------------------------------------------
// Feature schema
// ---------------------------------------------------------------------------

enum class FeatureKind { Numeric, OneHot };

/// What a feature entry reads from a SegmentRecord.
enum class FeatureSource {
    RutDepth,
    Faulting,
    CrackExtent,
    CrackWidth,
    CrackDepth,
    SurfaceIndicator,
    ClassIndicator,
};

struct FeatureEntry {
    std::string id;
    FeatureKind kind = FeatureKind::Numeric;
    FeatureSource source = FeatureSource::RutDepth;
    // Valid per source:
    CrackFamily family = CrackFamily::NonWPLongitudinal;
    Severity severity = Severity::Low;
    SurfaceType surface = SurfaceType::Asphalt;
    FunctionalClass functional = FunctionalClass::Interstate;
};

/// Ordered, stable encoding of a record into a real vector. The default
/// registry covers rut depth and faulting, the extent of every
/// (family, severity) pair, width and depth at medium/high severity for the
/// four families whose opening geometry drives roughness (wheel-path
/// longitudinal, wheel-path alligator, edge alligator, longitudinal spall),
/// and one-hot indicators for surface type and functional class: 58 features.
class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<FeatureEntry> entries);

    static FeatureSchema default_registry();

    const std::vector<FeatureEntry>& entries() const { return entries_; }
    std::size_t dimension() const { return entries_.size(); }

    /// Index of a feature id; throws DomainError if unknown.
    std::size_t index_of(std::string_view feature_id) const;
    bool contains(std::string_view feature_id) const;

    /// True if at least one entry reads the given crack family.
    bool covers_family(CrackFamily f) const;

    /// FNV-1a digest over ids and kinds; used to pair models with datasets.
    std::string fingerprint() const;

    /// Encodes one record in schema order. Throws SchemaError when the record
    /// carries a crack family the schema does not cover.
    std::vector<double> encode_record(const SegmentRecord& rec) const;

private:
    std::vector<FeatureEntry> entries_;
};

/// One encoded sample: values in schema order plus the real-valued label.
struct FeatureVector {
    std::vector<double> values;
    double label_iri = 0.0;  // inches/mile
};

// ---------------------------------------------------------------------------
// IRI binning
// ---------------------------------------------------------------------------

/// Contiguous half-open IRI intervals [origin + k*width, origin + (k+1)*width).
/// Values at or above the upper edge clamp to the last class.
struct IriBinning {
    double origin = 0.0;       // inches/mile
    double width = 20.0;       // inches/mile, > 0
    std::size_t n_classes = 15;

    bool operator==(const IriBinning&) const = default;
};

void validate_binning(const IriBinning& binning);

/// Class index of an IRI value. Throws DomainError if iri < origin or the
/// binning is invalid.
std::size_t class_of(double iri, const IriBinning& binning);

/// Midpoint of bin k. Throws DomainError if k is out of range.
double representative_of(std::size_t k, const IriBinning& binning);

// ---------------------------------------------------------------------------
// Hashing helpers shared by file formats
// ---------------------------------------------------------------------------

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Lower-case hex of a 64-bit value, 16 chars.
std::string to_hex(std::uint64_t v);

}  // namespace paveiri

#endif  // PAVEIRI_DOMAIN_HPP
