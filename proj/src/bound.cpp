#include "overlap/bound.hpp"

#include <algorithm>
#include <string>

namespace overlap {

namespace {

void requireCompatible(const SampleSet& pos, const SampleSet& neg) {
    if (pos.dimension() != neg.dimension()) {
        throw DimensionMismatch("sample sets have dimensions " + std::to_string(pos.dimension()) +
                                " and " + std::to_string(neg.dimension()));
    }
    if (pos.norm() != neg.norm()) {
        throw DimensionMismatch("sample sets use different norms (" + std::string(toString(pos.norm())) +
                                " vs " + std::string(toString(neg.norm())) + ")");
    }
}

}  // namespace

IndicatorSummary summarizeIndicator(const SampleSet& set, const ConditionFunction& g) {
    IndicatorSummary out;
    const auto* ball = std::get_if<RadiusIndicator>(&g);
    const bool cached = ball != nullptr && ball->norm == set.norm();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const bool hit = cached ? set.rowNorm(i) <= ball->radius : evaluate(g, set.row(i)) == 1;
        if (hit) {
            ++out.accepted;
            out.maxAcceptedNorm = std::max(out.maxAcceptedNorm, set.rowNorm(i));
        }
    }
    return out;
}

BoundReport computeBound(const SampleSet& pos, const SampleSet& neg,
                         std::span<const ConditionFunction> gs) {
    requireCompatible(pos, neg);
    if (gs.empty()) throw InputError("at least one condition function is required");

    BoundReport report;
    report.rB = std::max(pos.maxNorm(), neg.maxNorm());

    std::vector<double> diff(pos.dimension());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = pos.mean()[j] - neg.mean()[j];
    report.meanGap = norm(diff, pos.norm());

    const double n = static_cast<double>(pos.size());
    const double m = static_cast<double>(neg.size());
    report.perG.reserve(gs.size());
    for (const auto& g : gs) {
        const IndicatorSummary a = summarizeIndicator(pos, g);
        const IndicatorSummary b = summarizeIndicator(neg, g);
        ConditionTerm term;
        term.parameter = conditionParameter(g);
        term.rA = std::max(a.maxAcceptedNorm, b.maxAcceptedNorm);
        term.posMean = static_cast<double>(a.accepted) / n;
        term.negMean = static_cast<double>(b.accepted) / m;
        if (report.rB > 0.0) {
            term.sJ = (1.0 - term.rA / report.rB) * std::abs(term.posMean - term.negMean);
        }
        report.perG.push_back(term);
    }

    double bestS = report.perG.front().sJ;
    for (std::size_t j = 1; j < report.perG.size(); ++j) {
        if (report.perG[j].sJ > bestS) {
            bestS = report.perG[j].sJ;
            report.bestG = j;
        }
    }

    if (report.rB == 0.0) {
        report.degenerate = true;
        report.rawBound = 1.0;
    } else {
        report.rawBound = 1.0 - report.meanGap / (2.0 * report.rB) - 0.5 * bestS;
    }
    report.clampedBound = std::clamp(report.rawBound, 0.0, 1.0);
    return report;
}

double deltaALowerBound(const SampleSet& pos, const SampleSet& neg, const ConditionFunction& g) {
    requireCompatible(pos, neg);
    const double a = static_cast<double>(summarizeIndicator(pos, g).accepted) / static_cast<double>(pos.size());
    const double b = static_cast<double>(summarizeIndicator(neg, g).accepted) / static_cast<double>(neg.size());
    return 0.5 * std::abs(a - b);
}

}  // namespace overlap
