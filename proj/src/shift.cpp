#include "overlap/shift.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace overlap::shift {

namespace {

void requireProbability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError(std::string(name) + " must lie in [0, 1]");
}

// 1 - rawBound(clean, poisoned) is exactly the sum of the two shift terms of
// the pure clean-vs-poisoned bound; the sigma-mixture scales both by (1 - sigma).
double mixtureOverlapBound(double componentBound, double sigma) {
    return 1.0 - (1.0 - sigma) * (1.0 - componentBound);
}

double backdoorFromReport(const BoundReport& report, double p, double sigma) {
    if (report.degenerate) return p;
    const double shiftMean = (1.0 - sigma) / (2.0 * report.rB) * report.meanGap;
    const double shiftSubset = (1.0 - sigma) * 0.5 * report.perG[report.bestG].sJ;
    return p * (1.0 - shiftMean - shiftSubset);
}

std::size_t cleanCount(double sigma, std::size_t total) {
    return static_cast<std::size_t>(std::floor(sigma * static_cast<double>(total)));
}

}  // namespace

double accuracyCeiling(const ShiftInputs& in) {
    requireProbability(in.p, "p");
    requireProbability(in.q, "q");
    const BoundReport report = computeBound(in.train, in.test, in.gs);
    return (in.p - in.q) * report.rawBound + in.q;
}

double backdoorCeiling(const MixtureSpec& mix, double p, std::span<const ConditionFunction> gs) {
    requireProbability(mix.sigma, "sigma");
    requireProbability(p, "p");
    return backdoorFromReport(computeBound(mix.clean, mix.poisoned, gs), p, mix.sigma);
}

double mixtureCeiling(const MixtureSpec& mix, double p, double q, std::span<const ConditionFunction> gs) {
    requireProbability(mix.sigma, "sigma");
    requireProbability(p, "p");
    requireProbability(q, "q");
    const BoundReport report = computeBound(mix.clean, mix.poisoned, gs);
    return (p - q) * mixtureOverlapBound(report.rawBound, mix.sigma) + q;
}

std::vector<SweepPoint> sweepSigma(const SampleSet& clean, const SampleSet& poisoned, double p,
                                   std::span<const double> sigmas, std::span<const ConditionFunction> gs) {
    requireProbability(p, "p");
    for (double s : sigmas) requireProbability(s, "sigma");
    const BoundReport report = computeBound(clean, poisoned, gs);

    std::vector<SweepPoint> out;
    out.reserve(sigmas.size());
    for (double sigma : sigmas) out.push_back({sigma, backdoorFromReport(report, p, sigma)});
    std::stable_sort(out.begin(), out.end(),
                     [](const SweepPoint& a, const SweepPoint& b) { return a.sigma < b.sigma; });
    return out;
}

SampleSet composeMixture(const MixtureSpec& mix, std::size_t total) {
    requireProbability(mix.sigma, "sigma");
    if (mix.clean.dimension() != mix.poisoned.dimension()) {
        throw DimensionMismatch("clean and poisoned sets differ in dimension");
    }
    if (total == 0) throw InputError("mixture size must be >= 1");
    const std::size_t nClean = cleanCount(mix.sigma, total);
    const std::size_t d = mix.clean.dimension();
    std::vector<double> rows;
    rows.reserve(total * d);
    for (std::size_t i = 0; i < total; ++i) {
        const auto r = i < nClean ? mix.clean.row(i % mix.clean.size())
                                  : mix.poisoned.row((i - nClean) % mix.poisoned.size());
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return SampleSet::fromRows(std::move(rows), d, mix.clean.norm());
}

double simulateAccuracy(const MixtureSpec& mix, const LabelRule& rule, std::size_t total) {
    requireProbability(mix.sigma, "sigma");
    requireProbability(rule.p, "p");
    requireProbability(rule.q, "q");
    if (total == 0) throw InputError("mixture size must be >= 1");
    const std::size_t nClean = cleanCount(mix.sigma, total);

    std::mt19937_64 rng(rule.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const double rate = i < nClean ? rule.p : rule.q;
        if (unit(rng) < rate) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace overlap::shift
