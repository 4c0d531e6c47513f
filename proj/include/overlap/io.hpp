#pragma once

// File formats: sample tables (CSV or the OVLB binary layout), discrete
// distributions (JSON), fitted scorer models (JSON) and bound reports (JSON).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "overlap/bound.hpp"
#include "overlap/classifier.hpp"
#include "overlap/core.hpp"
#include "overlap/oracle.hpp"

namespace overlap::io {

// Parse failure located at file:line:column (1-based; column is the field index).
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Rectangular numeric table. CSV input may carry one header row, detected when
/// any field of the first non-empty line is not a number; blank lines and lines
/// starting with '#' are skipped.
struct NumericTable {
    std::vector<std::string> header;
    std::size_t columns = 0;
    std::vector<double> values;  // row-major
    std::size_t rows() const { return columns == 0 ? 0 : values.size() / columns; }
};

NumericTable parseCsv(std::string_view text, const std::string& source = "<memory>");
NumericTable readCsv(const std::filesystem::path& path);

inline constexpr char kBinaryMagic[4] = {'O', 'V', 'L', 'B'};
inline constexpr std::uint32_t kBinaryVersion = 1;

// "OVLB", u32 version, u64 n, u64 d, then n * d little-endian float64 row-major.
void writeSamplesBinary(const std::filesystem::path& path, const SampleSet& set);
void writeSamplesCsv(std::ostream& out, const SampleSet& set);

// Reads CSV or OVLB (detected from the first four bytes).
SampleSet readSamples(const std::filesystem::path& path, NormKind norm);

oracle::DiscreteDistribution distributionFromJson(const nlohmann::json& doc, const std::string& source = "<memory>");
nlohmann::json distributionToJson(const oracle::DiscreteDistribution& dist);
oracle::DiscreteDistribution readDistribution(const std::filesystem::path& path);

inline constexpr int kModelVersion = 1;

/// Model file text. Every real number is written in a fixed-width scientific
/// form so that the file size depends only on the dimension and k.
std::string serializeScorer(const FittedScorer& scorer);
FittedScorer parseScorer(std::string_view text, const std::string& source = "<memory>");
void writeScorer(const std::filesystem::path& path, const FittedScorer& scorer);
FittedScorer readScorer(const std::filesystem::path& path);

nlohmann::json toJson(const BoundReport& report);

std::string readFile(const std::filesystem::path& path);

}  // namespace overlap::io
