#pragma once

// JSON, CSV and text renderings of every report, plus witness files.
//
// Machine formats (JSON, CSV) use 0-based indices; text uses the 1-based
// names x₁, t₁ and individual 1. Output is byte-deterministic.

#include "cafcheck/check.hpp"
#include "cafcheck/replay.hpp"
#include "cafcheck/search.hpp"
#include "cafcheck/table_report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cafcheck::io {

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv, Text };

/// "json", "csv" or "text"; throws FormatError otherwise.
Format parse_format(std::string_view text);

std::string describe(const DecisivenessClaim& claim);

/// Categories as rows, individuals as columns, each cell listing objects.
std::string render_profile(const Profile& profile, std::string_view name);

std::string render_counts(int m, int p, std::optional<int> n, Format format);
std::string render(const SearchOutcome& outcome, Format format);
std::string render(const CheckReport& report, Format format);
std::string render(const ContradictionTrace& trace, Format format);
std::string render(const TableReport& report, Format format);

/// {"instance":{n,m,p}, "entries":[[profile_rank,[categories...]],...],
///  "witness_claims":[{"axiom":...,"first":claim,"second":claim},...]}
std::string witness_file(const CafTable& table, const std::vector<AxiomWitness>& witnesses);

struct LoadedWitness {
    CafTable table;
    std::vector<AxiomWitness> witnesses;
};

/// Parses a witness file; throws FormatError on malformed or incomplete
/// content (every profile must have exactly one entry).
LoadedWitness parse_witness(std::string_view text, const Limits& limits = {});

} // namespace cafcheck::io
