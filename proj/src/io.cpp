#include "overlap/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace overlap::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parseNumber(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> splitFields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

// Fixed-width scientific form: 17 significant digits round-trip every double,
// and a leading space on non-negative values matches the width of the sign.
std::string fixedWidth(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return v < 0 || std::signbit(v) ? std::string(buf) : " " + std::string(buf);
}

std::string fixedWidthArray(std::span<const double> values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fixedWidth(values[i]);
    }
    return out + "]";
}

template <typename T>
T readLittleEndian(std::istream& in, const std::string& source) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
        throw InputError(source + ": truncated binary sample file");
    }
    std::uint64_t raw = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) raw |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    if constexpr (std::is_same_v<T, double>) {
        return std::bit_cast<double>(raw);
    } else {
        return static_cast<T>(raw);
    }
}

template <typename T>
void writeLittleEndian(std::ostream& out, T value) {
    std::uint64_t raw;
    if constexpr (std::is_same_v<T, double>) {
        raw = std::bit_cast<std::uint64_t>(value);
    } else {
        raw = static_cast<std::uint64_t>(value);
    }
    unsigned char bytes[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(raw >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

const nlohmann::json& requireField(const nlohmann::json& doc, const char* name, const std::string& source) {
    if (!doc.is_object() || !doc.contains(name)) {
        throw FormatError(source + ": missing field '" + name + "' (model format version " +
                          std::to_string(kModelVersion) + ")");
    }
    return doc.at(name);
}

std::vector<double> doubleArray(const nlohmann::json& value, const char* name, const std::string& source) {
    if (!value.is_array()) throw FormatError(source + ": field '" + name + "' must be an array");
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& v : value) {
        if (!v.is_number()) throw FormatError(source + ": field '" + name + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string readFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

NumericTable parseCsv(std::string_view text, const std::string& source) {
    NumericTable table;
    bool first = true;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view rawLine = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineNo;
        const std::string_view line = trim(rawLine);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = splitFields(line);
        std::vector<double> row(fields.size());
        bool allNumeric = true;
        for (std::size_t c = 0; c < fields.size() && allNumeric; ++c) allNumeric = parseNumber(fields[c], row[c]);

        if (first) {
            first = false;
            table.columns = fields.size();
            if (!allNumeric) {
                for (auto f : fields) table.header.emplace_back(trim(f));
                continue;
            }
        }
        if (fields.size() != table.columns) {
            throw ParseError(source, lineNo, std::min(fields.size(), table.columns) + 1,
                             "expected " + std::to_string(table.columns) + " columns, found " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parseNumber(fields[c], row[c])) {
                throw ParseError(source, lineNo, c + 1, "not a number: '" + std::string(trim(fields[c])) + "'");
            }
            if (!std::isfinite(row[c])) throw ParseError(source, lineNo, c + 1, "non-finite value");
        }
        table.values.insert(table.values.end(), row.begin(), row.end());
    }
    return table;
}

NumericTable readCsv(const std::filesystem::path& path) { return parseCsv(readFile(path), path.string()); }

void writeSamplesBinary(const std::filesystem::path& path, const SampleSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out.write(kBinaryMagic, 4);
    writeLittleEndian<std::uint32_t>(out, kBinaryVersion);
    writeLittleEndian<std::uint64_t>(out, set.size());
    writeLittleEndian<std::uint64_t>(out, set.dimension());
    for (double v : set.values()) writeLittleEndian<double>(out, v);
}

void writeSamplesCsv(std::ostream& out, const SampleSet& set) {
    char buf[40];
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto r = set.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", r[j]);
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

SampleSet readSamples(const std::filesystem::path& path, NormKind norm) {
    const std::string source = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + source + "'");
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0) {
        const auto version = readLittleEndian<std::uint32_t>(in, source);
        if (version != kBinaryVersion) {
            throw FormatError(source + ": unsupported binary sample version " + std::to_string(version));
        }
        const auto n = readLittleEndian<std::uint64_t>(in, source);
        const auto d = readLittleEndian<std::uint64_t>(in, source);
        if (n == 0 || d == 0) throw InputError(source + ": binary sample file declares an empty table");
        const auto payloadStart = in.tellg();
        in.seekg(0, std::ios::end);
        const auto payloadBytes = static_cast<std::uint64_t>(in.tellg() - payloadStart);
        in.seekg(payloadStart);
        if (n > payloadBytes / 8 / d || n * d * 8 != payloadBytes) {
            throw FormatError(source + ": binary payload size does not match n = " + std::to_string(n) +
                              ", d = " + std::to_string(d));
        }
        std::vector<double> values(n * d);
        for (auto& v : values) v = readLittleEndian<double>(in, source);
        try {
            return SampleSet::fromRows(std::move(values), d, norm);
        } catch (const InputError& e) {
            throw InputError(source + ": " + e.what());
        }
    }
    NumericTable table = readCsv(path);
    if (table.rows() == 0) throw InputError(source + ": no sample rows");
    return SampleSet::fromRows(std::move(table.values), table.columns, norm);
}

oracle::DiscreteDistribution distributionFromJson(const nlohmann::json& doc, const std::string& source) {
    auto need = [&](const char* name) -> const nlohmann::json& {
        if (!doc.is_object() || !doc.contains(name)) throw InputError(source + ": missing field '" + name + "'");
        return doc.at(name);
    };
    const auto& dimField = need("dimension");
    if (!dimField.is_number_integer() || dimField.get<long long>() < 1) {
        throw InputError(source + ": 'dimension' must be a positive integer");
    }
    const auto d = dimField.get<std::size_t>();
    const auto& points = need("points");
    const auto& masses = need("masses");
    if (!points.is_array() || !masses.is_array()) throw InputError(source + ": 'points' and 'masses' must be arrays");

    std::vector<Vector> support;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!pt.is_array() || pt.size() != d) {
            throw DimensionMismatch(source + ": point " + std::to_string(i) + " does not have dimension " +
                                    std::to_string(d));
        }
        std::vector<double> coords;
        for (const auto& c : pt) {
            if (!c.is_number()) throw InputError(source + ": point " + std::to_string(i) + " has a non-numeric coordinate");
            coords.push_back(c.get<double>());
        }
        support.emplace_back(std::move(coords));
    }
    std::vector<double> m;
    for (const auto& v : masses) {
        if (!v.is_number()) throw InputError(source + ": masses must be numbers");
        m.push_back(v.get<double>());
    }
    try {
        return oracle::DiscreteDistribution(std::move(support), std::move(m));
    } catch (const DimensionMismatch& e) {
        throw DimensionMismatch(source + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

nlohmann::json distributionToJson(const oracle::DiscreteDistribution& dist) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& v : dist.support()) {
        const auto c = v.coords();
        points.push_back(std::vector<double>(c.begin(), c.end()));
    }
    return {{"dimension", dist.dimension()}, {"points", points}, {"masses", dist.masses()}};
}

oracle::DiscreteDistribution readDistribution(const std::filesystem::path& path) {
    const std::string source = path.string();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(readFile(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": invalid JSON: " + e.what());
    }
    return distributionFromJson(doc, source);
}

std::string serializeScorer(const FittedScorer& scorer) {
    std::string out = "{\n";
    out += "  \"format\": \"overlap-scorer\",\n";
    out += "  \"version\": " + std::to_string(kModelVersion) + ",\n";
    out += "  \"norm\": \"" + std::string(toString(scorer.norm())) + "\",\n";
    out += "  \"k\": " + std::to_string(scorer.k()) + ",\n";
    out += "  \"dimension\": " + std::to_string(scorer.dimension()) + ",\n";
    out += "  \"degenerate\": " + std::string(scorer.degenerate() ? "true " : "false") + ",\n";
    out += "  \"rFit\": " + fixedWidth(scorer.rFit()) + ",\n";
    out += "  \"mean\": " + fixedWidthArray(scorer.mean().coords()) + ",\n";
    out += "  \"gMeans\": " + fixedWidthArray(scorer.gMeans()) + ",\n";
    out += "  \"gMaxNorms\": " + fixedWidthArray(scorer.gMaxNorms()) + "\n";
    out += "}\n";
    return out;
}

FittedScorer parseScorer(std::string_view text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(source + ": invalid JSON: " + e.what());
    }
    const auto& version = requireField(doc, "version", source);
    if (!version.is_number_integer() || version.get<int>() != kModelVersion) {
        throw FormatError(source + ": unsupported model format version " + version.dump() + " (expected " +
                          std::to_string(kModelVersion) + ")");
    }
    const auto& normField = requireField(doc, "norm", source);
    const auto& kField = requireField(doc, "k", source);
    const auto& dimField = requireField(doc, "dimension", source);
    const auto& rFitField = requireField(doc, "rFit", source);
    const auto mean = doubleArray(requireField(doc, "mean", source), "mean", source);
    auto gMeans = doubleArray(requireField(doc, "gMeans", source), "gMeans", source);
    auto gMaxNorms = doubleArray(requireField(doc, "gMaxNorms", source), "gMaxNorms", source);
    if (!normField.is_string()) throw FormatError(source + ": 'norm' must be a string");
    if (!kField.is_number_unsigned()) throw FormatError(source + ": 'k' must be a positive integer");
    if (!dimField.is_number_unsigned()) throw FormatError(source + ": 'dimension' must be a positive integer");
    if (!rFitField.is_number()) throw FormatError(source + ": 'rFit' must be a number");
    if (mean.size() != dimField.get<std::size_t>()) {
        throw FormatError(source + ": 'mean' has " + std::to_string(mean.size()) + " entries, expected " +
                          dimField.dump());
    }
    try {
        return FittedScorer::fromStatistics(parseNormKind(normField.get<std::string>()), kField.get<std::size_t>(),
                                            Vector(mean), rFitField.get<double>(), std::move(gMeans),
                                            std::move(gMaxNorms));
    } catch (const FormatError& e) {
        throw FormatError(source + ": " + e.what());
    } catch (const InputError& e) {
        throw FormatError(source + ": " + e.what());
    }
}

void writeScorer(const std::filesystem::path& path, const FittedScorer& scorer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << serializeScorer(scorer);
}

FittedScorer readScorer(const std::filesystem::path& path) { return parseScorer(readFile(path), path.string()); }

nlohmann::json toJson(const BoundReport& report) {
    nlohmann::json perG = nlohmann::json::array();
    for (const auto& t : report.perG) {
        perG.push_back({{"parameter", t.parameter},
                        {"rA", t.rA},
                        {"posMean", t.posMean},
                        {"negMean", t.negMean},
                        {"sJ", t.sJ}});
    }
    return {{"rawBound", report.rawBound},   {"clampedBound", report.clampedBound},
            {"meanGap", report.meanGap},     {"rB", report.rB},
            {"bestG", report.bestG},         {"degenerate", report.degenerate},
            {"perG", perG}};
}

}  // namespace overlap::io
