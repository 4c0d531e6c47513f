#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "overlap/core.hpp"

namespace overlap {

enum class Verdict { InClass, OutClass };

struct ScoreRecord {
    double score = 0.0;         // raw bound, may be negative
    double clampedScore = 0.0;  // score clamped into [0, 1]
    std::optional<Verdict> verdict;
};

// Operation tally for a scoring batch.
struct ScoringCost {
    std::size_t queryNorms = 0;
    std::size_t indicatorEvaluations = 0;
    std::size_t meanGapNorms = 0;
};

/// One-class confidence scorer backed by in-class summary statistics.
///
/// Scoring a query x is computeBound({x}, inClass, {1{||x|| <= r_j}}) with
/// r_j = (j / k) * rFit, evaluated from the cached mean, max norm, per-radius
/// acceptance rates and per-radius in-ball max norms. Storage is the mean
/// vector plus 2k + 1 scalars whatever the training-set size.
class FittedScorer final : public Scorer {
public:
    static FittedScorer fit(const SampleSet& inClass, std::size_t k);
    // Refits under a different norm when `norm` differs from the set's.
    static FittedScorer fit(const SampleSet& inClass, std::size_t k, NormKind norm);

    // Rebuilds a scorer from persisted statistics; validates every invariant.
    static FittedScorer fromStatistics(NormKind norm, std::size_t k, Vector mean, double rFit,
                                       std::vector<double> gMeans, std::vector<double> gMaxNorms);

    ScoreRecord score(std::span<const double> x, std::optional<double> threshold = std::nullopt) const;
    ScoreRecord score(const Vector& x, std::optional<double> threshold = std::nullopt) const {
        return score(x.coords(), threshold);
    }

    std::size_t dimension() const override { return mean_.dimension(); }
    double clampedScore(std::span<const double> x) const override { return score(x).clampedScore; }

    NormKind norm() const { return norm_; }
    std::size_t k() const { return gMeans_.size(); }
    const Vector& mean() const { return mean_; }
    double rFit() const { return rFit_; }
    bool degenerate() const { return rFit_ == 0.0; }
    double radius(std::size_t j) const { return familyRadius(j + 1, k(), radiusScale_); }
    std::vector<double> radii() const;
    const std::vector<double>& gMeans() const { return gMeans_; }
    const std::vector<double>& gMaxNorms() const { return gMaxNorms_; }

private:
    friend class IterativeScorer;

    FittedScorer(NormKind norm, Vector mean, double rFit, double radiusScale, std::vector<double> gMeans,
                 std::vector<double> gMaxNorms);
    static FittedScorer fitWithScale(const SampleSet& inClass, std::size_t k, double radiusScale);

    NormKind norm_;
    Vector mean_;
    double rFit_;
    // Radii are (j / k) * radiusScale. Equal to rFit except for the score-space
    // pass of IterativeScorer, where the radii are the fixed thresholds j / k.
    double radiusScale_;
    std::vector<double> gMeans_;
    std::vector<double> gMaxNorms_;
};

inline FittedScorer fit(const SampleSet& inClass, std::size_t k, NormKind norm) {
    return FittedScorer::fit(inClass, k, norm);
}

ScoreRecord score(const FittedScorer& s, const Vector& x);

// In-class iff score >= threshold.
Verdict classify(const FittedScorer& s, const Vector& x, double threshold);

std::vector<ScoreRecord> scoreBatch(const FittedScorer& s, const SampleSet& queries,
                                    std::optional<double> threshold = std::nullopt,
                                    ScoringCost* cost = nullptr);

/// Second-pass scorer: reruns the bound in the 1-D space of clamped first-pass
/// scores with threshold predicates 1{ s <= j / k2 }, j = 1..k2.
class IterativeScorer {
public:
    IterativeScorer(FittedScorer first, const SampleSet& inClass, std::size_t k2);

    ScoreRecord score(std::span<const double> x, std::optional<double> threshold = std::nullopt) const;
    ScoreRecord score(const Vector& x, std::optional<double> threshold = std::nullopt) const {
        return score(x.coords(), threshold);
    }

    const FittedScorer& firstPass() const { return first_; }
    const FittedScorer& secondPass() const { return second_; }

private:
    FittedScorer first_;
    FittedScorer second_;
};

ScoreRecord iterativeScore(const FittedScorer& s, const SampleSet& inClass, const Vector& x, std::size_t k2);

}  // namespace overlap
