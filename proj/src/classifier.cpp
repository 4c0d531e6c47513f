#include "overlap/classifier.hpp"

#include <algorithm>
#include <string>

namespace overlap {

namespace {

void requireDimension(std::size_t expected, std::size_t actual) {
    if (expected != actual) {
        throw DimensionMismatch("query dimension " + std::to_string(actual) +
                                " does not match fitted dimension " + std::to_string(expected));
    }
}

ScoreRecord makeRecord(double raw, std::optional<double> threshold) {
    ScoreRecord rec;
    rec.score = raw;
    rec.clampedScore = std::clamp(raw, 0.0, 1.0);
    if (threshold) rec.verdict = raw >= *threshold ? Verdict::InClass : Verdict::OutClass;
    return rec;
}

}  // namespace

FittedScorer::FittedScorer(NormKind norm, Vector mean, double rFit, double radiusScale,
                           std::vector<double> gMeans, std::vector<double> gMaxNorms)
    : norm_(norm),
      mean_(std::move(mean)),
      rFit_(rFit),
      radiusScale_(radiusScale),
      gMeans_(std::move(gMeans)),
      gMaxNorms_(std::move(gMaxNorms)) {}

FittedScorer FittedScorer::fitWithScale(const SampleSet& inClass, std::size_t k, double radiusScale) {
    if (k == 0) throw InputError("k must be >= 1");
    const std::vector<double> radii = radiusFamily(radiusScale, k);

    // Bucket each sample by the smallest radius that contains it, then take
    // prefix sums / prefix maxima so that bucket j summarizes the ball r_j.
    std::vector<std::size_t> counts(k, 0);
    std::vector<double> bucketMax(k, 0.0);
    for (std::size_t i = 0; i < inClass.size(); ++i) {
        const double nx = inClass.rowNorm(i);
        const auto it = std::lower_bound(radii.begin(), radii.end(), nx);
        if (it == radii.end()) continue;  // outside every ball
        const auto j = static_cast<std::size_t>(it - radii.begin());
        ++counts[j];
        bucketMax[j] = std::max(bucketMax[j], nx);
    }

    std::vector<double> gMeans(k);
    std::vector<double> gMaxNorms(k);
    std::size_t running = 0;
    double runningMax = 0.0;
    const double n = static_cast<double>(inClass.size());
    for (std::size_t j = 0; j < k; ++j) {
        running += counts[j];
        runningMax = std::max(runningMax, bucketMax[j]);
        gMeans[j] = static_cast<double>(running) / n;
        gMaxNorms[j] = runningMax;
    }
    return FittedScorer(inClass.norm(), inClass.mean(), inClass.maxNorm(), radiusScale, std::move(gMeans),
                        std::move(gMaxNorms));
}

FittedScorer FittedScorer::fit(const SampleSet& inClass, std::size_t k) {
    return fitWithScale(inClass, k, inClass.maxNorm());
}

FittedScorer FittedScorer::fit(const SampleSet& inClass, std::size_t k, NormKind norm) {
    if (norm == inClass.norm()) return fit(inClass, k);
    const auto values = inClass.values();
    return fit(SampleSet::fromRows({values.begin(), values.end()}, inClass.dimension(), norm), k);
}

FittedScorer FittedScorer::fromStatistics(NormKind norm, std::size_t k, Vector mean, double rFit,
                                          std::vector<double> gMeans, std::vector<double> gMaxNorms) {
    if (k == 0) throw FormatError("k must be >= 1");
    if (gMeans.size() != k || gMaxNorms.size() != k) {
        throw FormatError("expected " + std::to_string(k) + " entries in gMeans and gMaxNorms, got " +
                          std::to_string(gMeans.size()) + " and " + std::to_string(gMaxNorms.size()));
    }
    if (!(rFit >= 0.0) || !std::isfinite(rFit)) throw FormatError("rFit must be finite and >= 0");
    for (std::size_t j = 0; j < k; ++j) {
        if (!(gMeans[j] >= 0.0 && gMeans[j] <= 1.0)) throw FormatError("gMeans entries must lie in [0, 1]");
        if (j > 0 && gMeans[j] < gMeans[j - 1]) throw FormatError("gMeans must be nondecreasing");
        if (!(gMaxNorms[j] >= 0.0) || gMaxNorms[j] > familyRadius(j + 1, k, rFit)) {
            throw FormatError("gMaxNorms[" + std::to_string(j) + "] exceeds its radius");
        }
        if (j > 0 && gMaxNorms[j] < gMaxNorms[j - 1]) throw FormatError("gMaxNorms must be nondecreasing");
    }
    return FittedScorer(norm, std::move(mean), rFit, rFit, std::move(gMeans), std::move(gMaxNorms));
}

std::vector<double> FittedScorer::radii() const { return radiusFamily(radiusScale_, k()); }

ScoreRecord FittedScorer::score(std::span<const double> x, std::optional<double> threshold) const {
    requireDimension(dimension(), x.size());
    const double nx = overlap::norm(x, norm_);
    const double rB = std::max(rFit_, nx);
    if (rB == 0.0) return makeRecord(1.0, threshold);

    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - mean_[i];
    const double gap = overlap::norm(diff, norm_);

    const std::size_t k = gMeans_.size();
    double best = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const bool inside = nx <= radius(j);
        const double rA = inside ? std::max(gMaxNorms_[j], nx) : gMaxNorms_[j];
        const double s = (1.0 - rA / rB) * std::abs((inside ? 1.0 : 0.0) - gMeans_[j]);
        best = std::max(best, s);
    }
    return makeRecord(1.0 - gap / (2.0 * rB) - 0.5 * best, threshold);
}

ScoreRecord score(const FittedScorer& s, const Vector& x) { return s.score(x); }

Verdict classify(const FittedScorer& s, const Vector& x, double threshold) {
    return *s.score(x, threshold).verdict;
}

std::vector<ScoreRecord> scoreBatch(const FittedScorer& s, const SampleSet& queries,
                                    std::optional<double> threshold, ScoringCost* cost) {
    if (queries.norm() != s.norm()) {
        throw DimensionMismatch("query set norm " + std::string(toString(queries.norm())) +
                                " differs from scorer norm " + std::string(toString(s.norm())));
    }
    requireDimension(s.dimension(), queries.dimension());
    std::vector<ScoreRecord> out;
    out.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) out.push_back(s.score(queries.row(i), threshold));
    if (cost) {
        cost->queryNorms += queries.size();
        cost->indicatorEvaluations += queries.size() * s.k();
        cost->meanGapNorms += queries.size();
    }
    return out;
}

namespace {

SampleSet firstPassScores(const FittedScorer& first, const SampleSet& inClass) {
    requireDimension(first.dimension(), inClass.dimension());
    std::vector<double> scores(inClass.size());
    for (std::size_t i = 0; i < inClass.size(); ++i) scores[i] = first.score(inClass.row(i)).clampedScore;
    return SampleSet::fromRows(std::move(scores), 1, NormKind::L2);
}

}  // namespace

IterativeScorer::IterativeScorer(FittedScorer first, const SampleSet& inClass, std::size_t k2)
    : first_(std::move(first)), second_(FittedScorer::fitWithScale(firstPassScores(first_, inClass), k2, 1.0)) {}

ScoreRecord IterativeScorer::score(std::span<const double> x, std::optional<double> threshold) const {
    const double y = first_.score(x).clampedScore;
    const double query[1] = {y};
    return second_.score(query, threshold);
}

ScoreRecord iterativeScore(const FittedScorer& s, const SampleSet& inClass, const Vector& x, std::size_t k2) {
    return IterativeScorer(s, inClass, k2).score(x);
}

}  // namespace overlap
