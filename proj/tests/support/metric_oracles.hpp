#pragma once

// Brute-force reference implementations of the ranking metrics. Quadratic on
// purpose: they enumerate pairs or thresholds directly and share no code with
// the sort-based implementations under test.

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

namespace testsupport {

// Fraction of (positive, negative) pairs ordered correctly, ties counting 1/2.
inline double bruteAuroc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    double wins = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) {
                wins += 1.0;
            } else if (scores[i] == scores[j]) {
                wins += 0.5;
            }
        }
    }
    return wins / pairs;
}

// For every distinct threshold t (descending) compute recall and precision of
// "score >= t" from scratch and accumulate (recall gain) * precision.
inline double bruteAupr(const std::vector<double>& scores, const std::vector<bool>& labels) {
    const std::set<double, std::greater<>> thresholds(scores.begin(), scores.end());
    const double totalPos = static_cast<double>(std::count(labels.begin(), labels.end(), true));
    double prevRecall = 0.0;
    double area = 0.0;
    for (double t : thresholds) {
        double tp = 0.0;
        double predicted = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= t) {
                predicted += 1.0;
                if (labels[i]) tp += 1.0;
            }
        }
        const double recall = tp / totalPos;
        area += (recall - prevRecall) * (tp / predicted);
        prevRecall = recall;
    }
    return area;
}

// Try every score value as threshold; keep the largest one passing at least
// inRate of the positives, then report the negatives strictly below it.
inline double bruteTprAtInRate(const std::vector<double>& scores, const std::vector<bool>& labels, double inRate) {
    const double totalPos = static_cast<double>(std::count(labels.begin(), labels.end(), true));
    double best = -1e300;
    bool found = false;
    for (double t : scores) {
        double kept = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (labels[i] && scores[i] >= t) kept += 1.0;
        }
        if (kept / totalPos >= inRate && (!found || t > best)) {
            best = t;
            found = true;
        }
    }
    double rejected = 0.0;
    double negatives = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i]) continue;
        negatives += 1.0;
        if (scores[i] < best) rejected += 1.0;
    }
    return rejected / negatives;
}

}  // namespace testsupport
