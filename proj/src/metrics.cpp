#include "overlap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace overlap::metrics {

namespace {

void requireBothClasses(const LabeledScores& ls) {
    if (ls.positives() == 0 || ls.negatives() == 0) {
        throw MetricUndefined("metric needs at least one positive and one negative (got " +
                              std::to_string(ls.positives()) + " positive, " +
                              std::to_string(ls.negatives()) + " negative)");
    }
}

// Distinct score values in descending order with their class counts.
struct ScoreGroup {
    double score;
    std::size_t pos;
    std::size_t neg;
};

std::vector<ScoreGroup> groupDescending(const LabeledScores& ls) {
    std::vector<std::size_t> order(ls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& s = ls.scores();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });

    std::vector<ScoreGroup> groups;
    for (std::size_t idx : order) {
        if (groups.empty() || groups.back().score != s[idx]) groups.push_back({s[idx], 0, 0});
        if (ls.labels()[idx]) {
            ++groups.back().pos;
        } else {
            ++groups.back().neg;
        }
    }
    return groups;
}

}  // namespace

LabeledScores::LabeledScores(std::vector<double> scores, std::vector<bool> labels)
    : scores_(std::move(scores)), labels_(std::move(labels)) {
    if (scores_.size() != labels_.size()) {
        throw InputError("got " + std::to_string(scores_.size()) + " scores but " +
                         std::to_string(labels_.size()) + " labels");
    }
    for (std::size_t i = 0; i < scores_.size(); ++i) {
        if (!std::isfinite(scores_[i])) throw InputError("score " + std::to_string(i) + " is not finite");
    }
    positives_ = static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), true));
}

double auroc(const LabeledScores& ls) {
    requireBothClasses(ls);
    // Twice the tie-averaged rank sum of the positives, kept integral.
    const auto groups = groupDescending(ls);
    const std::size_t n = ls.size();
    std::size_t seenFromTop = 0;
    unsigned long long twiceRankSum = 0;
    for (const auto& g : groups) {
        const std::size_t count = g.pos + g.neg;
        // Ascending 1-based ranks of this group span [n - seen - count + 1, n - seen].
        const std::size_t lo = n - seenFromTop - count + 1;
        const std::size_t hi = n - seenFromTop;
        twiceRankSum += static_cast<unsigned long long>(g.pos) * (lo + hi);
        seenFromTop += count;
    }
    const auto np = static_cast<unsigned long long>(ls.positives());
    const auto nn = static_cast<unsigned long long>(ls.negatives());
    const double twiceU = static_cast<double>(twiceRankSum - np * (np + 1));
    return twiceU / (2.0 * static_cast<double>(np) * static_cast<double>(nn));
}

double aurocTrapezoid(const LabeledScores& ls) {
    requireBothClasses(ls);
    unsigned long long tp = 0;
    unsigned long long twiceArea = 0;
    for (const auto& g : groupDescending(ls)) {
        twiceArea += static_cast<unsigned long long>(g.neg) * (2 * tp + g.pos);
        tp += g.pos;
    }
    return static_cast<double>(twiceArea) /
           (2.0 * static_cast<double>(ls.positives()) * static_cast<double>(ls.negatives()));
}

double aupr(const LabeledScores& ls) {
    if (ls.positives() == 0) throw MetricUndefined("AUPR needs at least one positive");
    const double total = static_cast<double>(ls.positives());
    std::size_t tp = 0;
    std::size_t fp = 0;
    double area = 0.0;
    for (const auto& g : groupDescending(ls)) {
        tp += g.pos;
        fp += g.neg;
        if (g.pos == 0) continue;
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        area += static_cast<double>(g.pos) / total * precision;
    }
    return area;
}

double tprAtInRate(const LabeledScores& ls, double inRate) {
    requireBothClasses(ls);
    if (!(inRate > 0.0 && inRate < 1.0)) throw InputError("inRate must lie in (0, 1)");

    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t i = 0; i < ls.size(); ++i) (ls.labels()[i] ? pos : neg).push_back(ls.scores()[i]);
    std::sort(pos.begin(), pos.end(), std::greater<>());

    const double np = static_cast<double>(pos.size());
    double threshold = pos.back();
    for (std::size_t i = 0; i < pos.size(); ++i) {
        // Count every positive tied with pos[i] before testing the rate.
        std::size_t kept = i + 1;
        while (kept < pos.size() && pos[kept] == pos[i]) ++kept;
        if (static_cast<double>(kept) / np >= inRate) {
            threshold = pos[i];
            break;
        }
        i = kept - 1;
    }
    const auto rejected = std::count_if(neg.begin(), neg.end(), [&](double s) { return s < threshold; });
    return static_cast<double>(rejected) / static_cast<double>(neg.size());
}

}  // namespace overlap::metrics
