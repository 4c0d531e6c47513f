#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "overlap/bound.hpp"
#include "overlap/core.hpp"

namespace overlap::shift {

struct ShiftInputs {
    SampleSet train;  // drawn from D
    SampleSet test;   // drawn from D*
    double p;         // accuracy on D
    double q;         // accuracy on D* \ D
    std::vector<ConditionFunction> gs;
};

// Clean and poisoned components with purity ratio sigma.
struct MixtureSpec {
    SampleSet clean;
    SampleSet poisoned;
    double sigma = 1.0;
};

/// (p - q) * rawBound(train, test) + q, using the unclamped bound.
double accuracyCeiling(const ShiftInputs& in);

/// p * (1 - (1 - sigma) / (2 rB) * ||mu_D - mu_Dp||
///        - (1 - sigma) * max_g (rB - rA(g)) / (2 rB) * |E_D[g] - E_Dp[g]|)
/// with every statistic estimated from the clean and poisoned samples pooled
/// as in computeBound.
double backdoorCeiling(const MixtureSpec& mix, double p, std::span<const ConditionFunction> gs);

/// Accuracy ceiling for a sigma-mixture with arbitrary q, from component statistics:
/// (p - q) * (1 - (1 - sigma) * (1 - rawBound(clean, poisoned))) + q.
/// Equals backdoorCeiling when q = 0.
double mixtureCeiling(const MixtureSpec& mix, double p, double q, std::span<const ConditionFunction> gs);

struct SweepPoint {
    double sigma;
    double ceiling;
};

/// backdoorCeiling for each sigma, sorted by ascending sigma. The component
/// bound is computed once and shared by all entries.
std::vector<SweepPoint> sweepSigma(const SampleSet& clean, const SampleSet& poisoned, double p,
                                   std::span<const double> sigmas, std::span<const ConditionFunction> gs);

/// Deterministic proportional mixture of `total` rows: the first floor(sigma * total)
/// come from `clean`, the rest from `poisoned`, each taken in order and cycling
/// when a component is exhausted.
SampleSet composeMixture(const MixtureSpec& mix, std::size_t total);

/// Classifier stand-in: each clean row is classified correctly with probability p,
/// each poisoned row with probability q, from a seeded generator.
struct LabelRule {
    double p = 1.0;
    double q = 0.0;
    std::uint64_t seed = 0;
};

/// Empirical accuracy of `rule` on composeMixture(mix, total).
double simulateAccuracy(const MixtureSpec& mix, const LabelRule& rule, std::size_t total);

}  // namespace overlap::shift
