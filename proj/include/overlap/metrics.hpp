#pragma once

#include <cstddef>
#include <vector>

#include "overlap/error.hpp"

namespace overlap::metrics {

// Parallel scores and labels; label true = positive (in-class).
class LabeledScores {
public:
    LabeledScores(std::vector<double> scores, std::vector<bool> labels);

    std::size_t size() const { return scores_.size(); }
    std::size_t positives() const { return positives_; }
    std::size_t negatives() const { return scores_.size() - positives_; }
    const std::vector<double>& scores() const { return scores_; }
    const std::vector<bool>& labels() const { return labels_; }

private:
    std::vector<double> scores_;
    std::vector<bool> labels_;
    std::size_t positives_ = 0;
};

// Mann-Whitney statistic: P(score+ > score-) + P(tie) / 2.
double auroc(const LabeledScores& ls);

// Trapezoidal area under the ROC curve built from one point per distinct score.
double aurocTrapezoid(const LabeledScores& ls);

// Step-wise area under precision-recall: sum over descending thresholds of
// (recall gain) * precision, tied scores forming a single threshold.
double aupr(const LabeledScores& ls);

/// Fraction of negatives rejected at the largest threshold T that keeps at
/// least `inRate` of the positives at score >= T.
double tprAtInRate(const LabeledScores& ls, double inRate = 0.95);

}  // namespace overlap::metrics
