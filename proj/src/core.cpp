#include "overlap/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace overlap {

std::string_view toString(NormKind kind) {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::LInf: return "linf";
    }
    return "l2";
}

NormKind parseNormKind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "l1") return NormKind::L1;
    if (lower == "l2") return NormKind::L2;
    if (lower == "linf" || lower == "l-inf" || lower == "inf") return NormKind::LInf;
    throw InputError("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

double norm(std::span<const double> v, NormKind kind) {
    switch (kind) {
        case NormKind::L1: {
            double s = 0.0;
            for (double x : v) s += std::abs(x);
            return s;
        }
        case NormKind::L2: {
            // Scaled accumulation avoids overflow for large coordinates.
            double scale = 0.0;
            for (double x : v) scale = std::max(scale, std::abs(x));
            if (scale == 0.0 || !std::isfinite(scale)) return scale;
            double s = 0.0;
            for (double x : v) {
                const double y = x / scale;
                s += y * y;
            }
            return scale * std::sqrt(s);
        }
        case NormKind::LInf: {
            double m = 0.0;
            for (double x : v) m = std::max(m, std::abs(x));
            return m;
        }
    }
    return 0.0;
}

namespace {

void requireFinite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InputError("non-finite coordinate at index " + std::to_string(i));
        }
    }
}

}  // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InputError("vector must have dimension >= 1");
    requireFinite(coords_);
}

Vector::Vector(std::initializer_list<double> coords) : Vector(std::vector<double>(coords)) {}

namespace {

std::vector<double> flatten(const std::vector<Vector>& samples) {
    if (samples.empty()) throw InputError("sample set must be non-empty");
    const std::size_t d = samples.front().dimension();
    std::vector<double> flat;
    flat.reserve(samples.size() * d);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].dimension() != d) {
            throw DimensionMismatch("sample " + std::to_string(i) + " has dimension " +
                                    std::to_string(samples[i].dimension()) + ", expected " +
                                    std::to_string(d));
        }
        const auto c = samples[i].coords();
        flat.insert(flat.end(), c.begin(), c.end());
    }
    return flat;
}

Vector computeMean(std::span<const double> values, std::size_t d) {
    const std::size_t n = values.size() / d;
    std::vector<double> mean(d);
    for (std::size_t j = 0; j < d; ++j) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) acc.add(values[i * d + j]);
        mean[j] = acc.value() / static_cast<double>(n);
    }
    return Vector(std::move(mean));
}

}  // namespace

SampleSet::SampleSet(const std::vector<Vector>& samples, NormKind norm)
    : SampleSet(flatten(samples), samples.empty() ? 0 : samples.front().dimension(), norm, 0) {}

SampleSet SampleSet::fromRows(std::vector<double> values, std::size_t dimension, NormKind norm) {
    if (dimension == 0) throw InputError("sample dimension must be >= 1");
    if (values.empty()) throw InputError("sample set must be non-empty");
    if (values.size() % dimension != 0) {
        throw DimensionMismatch("flat sample buffer of length " + std::to_string(values.size()) +
                                " is not a multiple of dimension " + std::to_string(dimension));
    }
    requireFinite(values);
    return SampleSet(std::move(values), dimension, norm, 0);
}

SampleSet::SampleSet(std::vector<double> values, std::size_t dimension, NormKind norm, int)
    : values_(std::move(values)),
      dimension_(dimension),
      norm_(norm),
      mean_(computeMean(values_, dimension)) {
    const std::size_t n = values_.size() / dimension_;
    norms_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        norms_[i] = overlap::norm(row(i), norm_);
        maxNorm_ = std::max(maxNorm_, norms_[i]);
    }
}

RadiusIndicator makeRadiusIndicator(double radius, NormKind norm) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw InputError("radius must be finite and >= 0");
    }
    return RadiusIndicator{radius, norm};
}

ScoreThreshold makeScoreThreshold(double threshold, std::shared_ptr<const Scorer> scorer) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InputError("score threshold must lie in [0, 1]");
    if (!scorer) throw InputError("score threshold requires a scorer");
    return ScoreThreshold{threshold, std::move(scorer)};
}

int evaluate(const ConditionFunction& g, std::span<const double> x) {
    if (const auto* ball = std::get_if<RadiusIndicator>(&g)) {
        return norm(x, ball->norm) <= ball->radius ? 1 : 0;
    }
    const auto& st = std::get<ScoreThreshold>(g);
    if (x.size() != st.scorer->dimension()) {
        throw DimensionMismatch("query dimension " + std::to_string(x.size()) +
                                " does not match scorer dimension " +
                                std::to_string(st.scorer->dimension()));
    }
    return st.scorer->clampedScore(x) <= st.threshold ? 1 : 0;
}

double conditionParameter(const ConditionFunction& g) {
    return std::visit(
        [](const auto& c) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, RadiusIndicator>) {
                return c.radius;
            } else {
                return c.threshold;
            }
        },
        g);
}

std::vector<double> radiusFamily(double rFit, std::size_t k) {
    if (k == 0) throw InputError("radius family size k must be >= 1");
    if (!(rFit >= 0.0) || !std::isfinite(rFit)) throw InputError("fit radius must be finite and >= 0");
    std::vector<double> radii(k);
    for (std::size_t j = 1; j <= k; ++j) radii[j - 1] = familyRadius(j, k, rFit);
    return radii;
}

std::vector<ConditionFunction> radiusIndicators(std::span<const double> radii, NormKind norm) {
    std::vector<ConditionFunction> gs;
    gs.reserve(radii.size());
    for (double r : radii) gs.emplace_back(makeRadiusIndicator(r, norm));
    return gs;
}

}  // namespace overlap
