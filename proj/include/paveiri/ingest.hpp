#ifndef PAVEIRI_INGEST_HPP
#define PAVEIRI_INGEST_HPP

#include <string>
#include <vector>

#include "paveiri/domain.hpp"

namespace paveiri {

/// An ordered, validated collection of survey records. Records are sorted by
/// (route_id, start_milepost) and consecutive records on a route never
/// overlap (tolerance 1e-9 miles).
struct Corpus {
    std::vector<SegmentRecord> records;
    std::string source;  // file path or "synthetic"
    std::string schema_version = "1";
    std::vector<std::string> provenance;  // pipeline step log lines
};

/// Sorts records and checks the corpus invariants; throws ValidationError on
/// overlap or record-level violations.
void finalize_corpus(Corpus& corpus);

enum class ParseMode {
    Strict,   // abort on the first invalid row
    Lenient,  // skip invalid rows, collecting messages into corpus.provenance
};

/// Reads a comma-delimited survey file. The header must carry the eight base
/// columns (route_id, start_milepost, length, surface_type, functional_class,
/// iri, rut_depth, faulting); crack columns named
/// <family>_<severity>_{extent,width,depth} are optional and default to 0
/// (distress absent). Lines starting with '#' are ignored.
///
/// Throws IoError (unreadable file, header-only file), SchemaError (missing
/// base column, unknown column), ValidationError (bad cell or invariant,
/// citing the line number; Strict mode only).
Corpus parse_corpus(const std::string& path, ParseMode mode = ParseMode::Strict);

/// Writes the corpus in the same format, one row per record, all registered
/// crack columns present. Floats are printed with shortest round-trip
/// formatting so parse(write(c)) reproduces c exactly. `comments` lines are
/// emitted first, each prefixed with "# ".
void write_corpus(const Corpus& corpus, const std::string& path,
                  const std::vector<std::string>& comments = {});

/// The exact header written by write_corpus.
std::vector<std::string> corpus_columns();

/// Shortest round-trip decimal text for a double ("0.1" -> 0.1 exactly).
std::string format_double(double v);

}  // namespace paveiri

#endif  // PAVEIRI_INGEST_HPP
