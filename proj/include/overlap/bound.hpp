#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "overlap/core.hpp"

namespace overlap {

/// Per-condition-function statistics from one computeBound run.
struct ConditionTerm {
    double parameter = 0.0;  // radius or score threshold of g_j
    double rA = 0.0;         // max pooled norm with g_j = 1, 0 if none
    double posMean = 0.0;    // fraction of positive samples with g_j = 1
    double negMean = 0.0;    // fraction of negative samples with g_j = 1
    double sJ = 0.0;         // (1 - rA / rB) * |posMean - negMean|
};

struct BoundReport {
    double rawBound = 1.0;
    double clampedBound = 1.0;
    double meanGap = 0.0;
    double rB = 0.0;
    std::vector<ConditionTerm> perG;
    std::size_t bestG = 0;
    // rB == 0: every pooled sample is the origin, rawBound is pinned to 1.
    bool degenerate = false;
};

/// Finite-sample upper bound on the overlap index of the distributions behind
/// `pos` and `neg`:
///
///   1 - meanGap / (2 rB) - (1/2) max_j s_j
///
/// rB and every rA are maxima over the pooled samples. Ties in max_j s_j go to
/// the smallest j.
BoundReport computeBound(const SampleSet& pos, const SampleSet& neg,
                         std::span<const ConditionFunction> gs);

/// (1/2) |E_pos[g] - E_neg[g]|, a lower bound on the variation distance over A(g).
double deltaALowerBound(const SampleSet& pos, const SampleSet& neg, const ConditionFunction& g);

// Fraction of rows with g = 1, and the largest norm among them (0 if none).
struct IndicatorSummary {
    std::size_t accepted = 0;
    double maxAcceptedNorm = 0.0;
};
IndicatorSummary summarizeIndicator(const SampleSet& set, const ConditionFunction& g);

}  // namespace overlap
