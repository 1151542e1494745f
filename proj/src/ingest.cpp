#include "paveiri/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace paveiri {

namespace {

constexpr double kOverlapTolerance = 1e-9;

const std::vector<std::string> kBaseColumns = {
    "route_id", "start_milepost", "length",    "surface_type",
    "functional_class", "iri",    "rut_depth", "faulting",
};

struct CrackColumn {
    CrackFamily family;
    Severity severity;
    int measure;  // 0 extent, 1 width, 2 depth
};

// Maps "wp_alligator_high_width" style names to their (family, severity,
// measure) triple. Built once; names are stable.
const std::unordered_map<std::string, CrackColumn>& crack_column_table() {
    static const auto* table = [] {
        auto* t = new std::unordered_map<std::string, CrackColumn>();
        const char* measures[3] = {"extent", "width", "depth"};
        for (CrackFamily f : all_crack_families()) {
            for (Severity s : all_severities()) {
                for (int m = 0; m < 3; ++m) {
                    std::string name = std::string(to_string(f)) + "_" +
                                       std::string(to_string(s)) + "_" + measures[m];
                    (*t)[name] = CrackColumn{f, s, m};
                }
            }
        }
        return t;
    }();
    return *table;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell_double(const std::string& cell, std::size_t line_no, const std::string& column) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\r' || *(end - 1) == '\t')) --end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) {
        throw ValidationError("line " + std::to_string(line_no) + ": non-numeric value '" + cell +
                              "' in column '" + column + "'");
    }
    return value;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> corpus_columns() {
    std::vector<std::string> cols = kBaseColumns;
    const char* measures[3] = {"extent", "width", "depth"};
    for (CrackFamily f : all_crack_families()) {
        for (Severity s : all_severities()) {
            for (const char* m : measures) {
                cols.push_back(std::string(to_string(f)) + "_" + std::string(to_string(s)) + "_" +
                               m);
            }
        }
    }
    return cols;
}

void finalize_corpus(Corpus& corpus) {
    std::stable_sort(corpus.records.begin(), corpus.records.end(),
                     [](const SegmentRecord& a, const SegmentRecord& b) {
                         if (a.route_id != b.route_id) return a.route_id < b.route_id;
                         return a.start_milepost < b.start_milepost;
                     });
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        validate_record(corpus.records[i], "record " + std::to_string(i));
        if (i > 0 && corpus.records[i].route_id == corpus.records[i - 1].route_id) {
            const auto& prev = corpus.records[i - 1];
            const auto& cur = corpus.records[i];
            if (cur.start_milepost < prev.start_milepost + prev.length - kOverlapTolerance) {
                throw ValidationError("records overlap on route " + cur.route_id +
                                      " near milepost " + std::to_string(cur.start_milepost));
            }
        }
    }
}

Corpus parse_corpus(const std::string& path, ParseMode mode) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open corpus file: " + path);
    }

    std::string line;
    // Header: first non-comment, non-blank line.
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = split_csv_line(t);
        have_header = true;
        break;
    }
    if (!have_header) {
        throw IoError("empty corpus file (no header): " + path);
    }

    // Column layout: index of each base column, and crack triples.
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (position.count(name)) {
            throw SchemaError("duplicate column '" + name + "' in " + path);
        }
        position[name] = i;
    }
    for (const auto& col : kBaseColumns) {
        if (!position.count(col)) {
            throw SchemaError("missing required column '" + col + "' in " + path);
        }
    }
    const auto& crack_cols = crack_column_table();
    for (const auto& [name, idx] : position) {
        if (std::find(kBaseColumns.begin(), kBaseColumns.end(), name) != kBaseColumns.end()) {
            continue;
        }
        if (!crack_cols.count(name)) {
            throw SchemaError("unknown column '" + name + "' in " + path);
        }
    }

    Corpus corpus;
    corpus.source = path;

    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        ++rows;
        try {
            const auto cells = split_csv_line(t);
            if (cells.size() != header.size()) {
                throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(header.size()) + " cells, got " +
                                      std::to_string(cells.size()));
            }
            auto cell = [&](const std::string& col) -> const std::string& {
                return cells[position.at(col)];
            };
            SegmentRecord rec;
            rec.route_id = trim(cell("route_id"));
            rec.start_milepost = parse_cell_double(cell("start_milepost"), line_no, "start_milepost");
            rec.length = parse_cell_double(cell("length"), line_no, "length");
            rec.surface_type = surface_type_from_string(trim(cell("surface_type")));
            rec.functional_class = functional_class_from_string(trim(cell("functional_class")));
            rec.iri = parse_cell_double(cell("iri"), line_no, "iri");
            rec.rut_depth = parse_cell_double(cell("rut_depth"), line_no, "rut_depth");
            rec.faulting = parse_cell_double(cell("faulting"), line_no, "faulting");

            // Collect crack measures present in this file; zero-only triples
            // mean "distress absent" and produce no observation.
            struct Triple {
                double v[3] = {0.0, 0.0, 0.0};
                bool any = false;
            };
            std::unordered_map<int, Triple> by_key;
            for (const auto& [name, col] : crack_cols) {
                auto it = position.find(name);
                if (it == position.end()) continue;
                const double v = parse_cell_double(cells[it->second], line_no, name);
                const int key = static_cast<int>(col.family) * 8 + static_cast<int>(col.severity);
                auto& tr = by_key[key];
                tr.v[col.measure] = v;
                if (v != 0.0) tr.any = true;
            }
            for (CrackFamily f : all_crack_families()) {
                for (Severity s : all_severities()) {
                    const int key = static_cast<int>(f) * 8 + static_cast<int>(s);
                    auto it = by_key.find(key);
                    if (it == by_key.end() || !it->second.any) continue;
                    CrackObservation obs;
                    obs.family = f;
                    obs.severity = s;
                    obs.extent = it->second.v[0];
                    obs.width = it->second.v[1];
                    obs.depth = it->second.v[2];
                    rec.cracks.push_back(obs);
                }
            }
            validate_record(rec, "line " + std::to_string(line_no));
            corpus.records.push_back(std::move(rec));
        } catch (const ValidationError& err) {
            if (mode == ParseMode::Strict) throw;
            corpus.provenance.push_back(std::string("parse: skipped ") + err.what());
        }
    }

    if (rows == 0) {
        throw IoError("corpus file has a header but no data rows: " + path);
    }
    finalize_corpus(corpus);
    corpus.provenance.push_back("parse: source=" + path + " rows=" + std::to_string(rows) +
                                " records=" + std::to_string(corpus.records.size()));
    return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& path,
                  const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) {
        throw IoError("cannot open corpus file for writing: " + path);
    }
    for (const auto& c : comments) {
        out << "# " << c << "\n";
    }
    const auto cols = corpus_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << "\n";

    for (const auto& rec : corpus.records) {
        out << rec.route_id << ',' << format_double(rec.start_milepost) << ','
            << format_double(rec.length) << ',' << to_string(rec.surface_type) << ','
            << to_string(rec.functional_class) << ',' << format_double(rec.iri) << ','
            << format_double(rec.rut_depth) << ',' << format_double(rec.faulting);
        for (CrackFamily f : all_crack_families()) {
            for (Severity s : all_severities()) {
                const CrackObservation* c = rec.find_crack(f, s);
                const double e = c ? c->extent : 0.0;
                const double w = c ? c->width : 0.0;
                const double d = c ? c->depth : 0.0;
                out << ',' << format_double(e) << ',' << format_double(w) << ','
                    << format_double(d);
            }
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("failed writing corpus file: " + path);
    }
}

}  // namespace paveiri
