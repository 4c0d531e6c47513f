#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "overlap/bound.hpp"
#include "overlap/classifier.hpp"
#include "overlap/metrics.hpp"
#include "support/generators.hpp"

using namespace overlap;
using Catch::Approx;

namespace {

SampleSet oneD(std::initializer_list<double> xs) {
    std::vector<Vector> rows;
    for (double x : xs) rows.push_back(Vector{x});
    return SampleSet(rows, NormKind::L2);
}

SampleSet singleton(std::span<const double> x, NormKind norm) {
    return SampleSet::fromRows({x.begin(), x.end()}, x.size(), norm);
}

// The pooled bound run directly on {x} versus the in-class set.
double directScore(const SampleSet& inClass, std::size_t k, std::span<const double> x) {
    const auto gs = radiusIndicators(radiusFamily(inClass.maxNorm(), k), inClass.norm());
    return computeBound(singleton(x, inClass.norm()), inClass, gs).rawBound;
}

}  // namespace

TEST_CASE("fit on a single point", "[classifier][fit]") {
    const auto s = FittedScorer::fit(SampleSet({Vector{1.0, 0.0}}, NormKind::L2), 2);
    CHECK(s.rFit() == 1.0);
    CHECK(s.radii() == std::vector<double>{0.5, 1.0});
    CHECK(s.gMeans() == std::vector<double>{0.0, 1.0});
    CHECK(s.gMaxNorms() == std::vector<double>{0.0, 1.0});
    CHECK_FALSE(s.degenerate());
}

TEST_CASE("fit on the worked one-dimensional set", "[classifier][fit]") {
    const auto s = FittedScorer::fit(oneD({0.2, 1.0}), 2);
    CHECK(s.radii() == std::vector<double>{0.5, 1.0});
    CHECK(s.gMeans() == std::vector<double>{0.5, 1.0});
    CHECK(s.gMaxNorms() == std::vector<double>{0.2, 1.0});
}

TEST_CASE("fit statistics do not depend on duplication", "[classifier][fit]") {
    const Vector x{0.3, -0.4, 2.0};
    const auto one = FittedScorer::fit(SampleSet({x}, NormKind::L2), 7);
    for (std::size_t n : {2u, 13u, 500u}) {
        const auto many = FittedScorer::fit(SampleSet(std::vector<Vector>(n, x), NormKind::L2), 7);
        CHECK(many.mean() == one.mean());
        CHECK(many.rFit() == one.rFit());
        CHECK(many.gMeans() == one.gMeans());
        CHECK(many.gMaxNorms() == one.gMaxNorms());
    }
}

TEST_CASE("fit validation and norm override", "[classifier][fit]") {
    CHECK_THROWS_AS(FittedScorer::fit(oneD({1.0}), 0), InputError);
    const auto l1 = FittedScorer::fit(SampleSet({Vector{3.0, 4.0}}, NormKind::L2), 3, NormKind::L1);
    CHECK(l1.norm() == NormKind::L1);
    CHECK(l1.rFit() == 7.0);
}

TEST_CASE("scoring examples", "[classifier][score]") {
    const Vector x0{0.5, -1.5};
    const auto s = FittedScorer::fit(SampleSet({x0}, NormKind::L2), 50);
    CHECK(score(s, x0).score == 1.0);

    // Roles swapped relative to the bound worked example; the r = 1 predicate
    // contributes nothing so only r = 0.5 matters.
    const auto worked = FittedScorer::fit(oneD({0.2, 1.0}), 2);
    CHECK(worked.score(Vector{1.0}).score == Approx(0.6).margin(1e-15));

    CHECK_THROWS_AS(worked.score(Vector{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("query outside every radius", "[classifier][score]") {
    const auto in = oneD({0.2, 0.6, 1.0});
    const auto s = FittedScorer::fit(in, 4);
    const Vector far{3.0};
    CHECK(s.score(far).score == Approx(directScore(in, 4, far.coords())).margin(1e-12));
}

TEST_CASE("degenerate fit at the origin", "[classifier][score]") {
    const auto s = FittedScorer::fit(SampleSet({Vector{0.0, 0.0}, Vector{0.0, 0.0}}, NormKind::L2), 5);
    CHECK(s.degenerate());
    CHECK(s.score(Vector{0.0, 0.0}).score == 1.0);
    // r_B = ||x||, gap = ||x||: 1 - 1/2, and each s_j = (1 - 0) * |0 - 1| = 1.
    CHECK(s.score(Vector{1.0, 0.0}).score == Approx(0.0).margin(1e-15));
}

TEST_CASE("classification threshold", "[classifier][classify]") {
    const Vector x0{1.0, 1.0};
    const auto self = FittedScorer::fit(SampleSet({x0}, NormKind::L2), 10);
    CHECK(classify(self, x0, 0.9) == Verdict::InClass);

    const auto worked = FittedScorer::fit(oneD({0.2, 1.0}), 2);
    const double s = worked.score(Vector{1.0}).score;
    CHECK(classify(worked, Vector{1.0}, s) == Verdict::InClass);
    CHECK(classify(worked, Vector{1.0}, 0.7) == Verdict::OutClass);
    CHECK(worked.score(Vector{1.0}, 0.6 - 1e-12).verdict == Verdict::InClass);
    CHECK_FALSE(worked.score(Vector{1.0}).verdict.has_value());
}

TEST_CASE("batch cost is l(k+1) plus l mean-gap norms", "[classifier][complexity]") {
    std::mt19937_64 rng(3);
    const auto in = testsupport::gaussianSet(rng, 100, {0.0, 0.0, 0.0}, 1.0, NormKind::L2);
    const auto queries = testsupport::gaussianSet(rng, 37, {1.0, 0.0, 0.0}, 1.0, NormKind::L2);
    const auto s = FittedScorer::fit(in, 12);
    ScoringCost cost;
    const auto records = scoreBatch(s, queries, std::nullopt, &cost);
    CHECK(records.size() == 37);
    CHECK(cost.queryNorms + cost.indicatorEvaluations == 37 * (12 + 1));
    CHECK(cost.meanGapNorms == 37);
}

TEST_CASE("fitted invariants and score equivalence on random inputs", "[classifier][property]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const NormKind kind = testsupport::kAllNorms[trial % 3];
        const std::size_t d = testsupport::uniformIndex(rng, 1, 6);
        const std::size_t k = testsupport::uniformIndex(rng, 1, 60);
        const auto in = testsupport::gaussianSet(rng, testsupport::uniformIndex(rng, 1, 50), std::vector<double>(d, 0.5),
                                                 1.0, kind);
        const auto s = FittedScorer::fit(in, k);
        const auto radii = s.radii();
        for (std::size_t j = 0; j < k; ++j) {
            CHECK(s.gMaxNorms()[j] <= radii[j]);
            if (j > 0) {
                CHECK(s.gMeans()[j] >= s.gMeans()[j - 1]);
                CHECK(s.gMaxNorms()[j] >= s.gMaxNorms()[j - 1]);
            }
        }
        const auto queries = testsupport::gaussianSet(rng, 5, std::vector<double>(d, 1.0), 2.0, kind);
        for (std::size_t i = 0; i < queries.size(); ++i) {
            const auto x = queries.row(i);
            const double fast = s.score(x).score;
            CHECK(std::abs(fast - directScore(in, k, x)) <= 1e-12);
            // Raising the threshold never turns out-class into in-class.
            const double t1 = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const double t2 = t1 + std::uniform_real_distribution<double>(0.0, 0.5)(rng);
            if (s.score(x, t1).verdict == Verdict::OutClass) CHECK(s.score(x, t2).verdict == Verdict::OutClass);
        }
        // Scores of in-class points also match.
        CHECK(std::abs(s.score(in.row(0)).score - directScore(in, k, in.row(0))) <= 1e-12);
    }
}

TEST_CASE("iterative score edge cases", "[classifier][iterative]") {
    const Vector x0{0.4, 0.3};
    const SampleSet in({x0}, NormKind::L2);
    const auto s = FittedScorer::fit(in, 10);
    CHECK(iterativeScore(s, in, x0, 10).score == 1.0);

    // k2 = 1: the single predicate 1{y <= 1} accepts every clamped score, so
    // only the mean-gap term remains.
    std::mt19937_64 rng(8);
    const auto cloud = testsupport::gaussianSet(rng, 20, {0.0, 0.0}, 1.0, NormKind::L2);
    const auto fitted = FittedScorer::fit(cloud, 10);
    const Vector q{1.5, -0.5};
    const IterativeScorer it(fitted, cloud, 1);
    const double y = fitted.score(q).clampedScore;
    const double meanScore = it.secondPass().mean()[0];
    const double rB = std::max(it.secondPass().rFit(), y);
    CHECK(it.score(q).score == Approx(1.0 - std::abs(y - meanScore) / (2.0 * rB)).margin(1e-14));
}

TEST_CASE("iterative score against a brute-force two-pass run", "[classifier][iterative]") {
    std::mt19937_64 rng(10);
    const std::size_t k = 20;
    const std::size_t k2 = 50;
    const auto in = testsupport::gaussianSet(rng, 10, {0.0, 0.0, 0.0}, 1.0, NormKind::L2);
    const Vector x{6.0, -5.0, 4.0};

    // First pass, every score from the pooled bound directly.
    std::vector<double> firstScores;
    for (std::size_t i = 0; i < in.size(); ++i) {
        firstScores.push_back(std::clamp(directScore(in, k, in.row(i)), 0.0, 1.0));
    }
    const double firstX = std::clamp(directScore(in, k, x.coords()), 0.0, 1.0);

    // Second pass in score space with predicates 1{y <= j / k2}.
    std::vector<ConditionFunction> gs;
    for (std::size_t j = 1; j <= k2; ++j) {
        gs.emplace_back(RadiusIndicator{static_cast<double>(j) / static_cast<double>(k2), NormKind::L2});
    }
    const auto scoreSet = SampleSet::fromRows(firstScores, 1, NormKind::L2);
    const auto query = SampleSet::fromRows({firstX}, 1, NormKind::L2);
    const double brute = computeBound(query, scoreSet, gs).rawBound;

    const auto fitted = FittedScorer::fit(in, k);
    const double iterative = iterativeScore(fitted, in, x, k2).score;
    CHECK(std::abs(iterative - brute) <= 1e-12);

    for (double sv : firstScores) CHECK(firstX < sv);
    const double nearestSelf = *std::min_element(firstScores.begin(), firstScores.end());
    CHECK(iterative < nearestSelf);
}

TEST_CASE("two-Gaussian separation", "[classifier][sanity]") {
    std::mt19937_64 rng(555);
    const auto in = testsupport::gaussianSet(rng, 100, std::vector<double>(5, 0.0), 1.0, NormKind::L2);
    const auto s = FittedScorer::fit(in, 50);
    const auto testIn = testsupport::gaussianSet(rng, 1000, std::vector<double>(5, 0.0), 1.0, NormKind::L2);
    const auto testOut = testsupport::gaussianSet(rng, 1000, {4.0, 0.0, 0.0, 0.0, 0.0}, 1.0, NormKind::L2);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (std::size_t i = 0; i < 1000; ++i) {
        scores.push_back(s.score(testIn.row(i)).score);
        labels.push_back(true);
        scores.push_back(s.score(testOut.row(i)).score);
        labels.push_back(false);
    }
    CHECK(metrics::auroc(metrics::LabeledScores(scores, labels)) >= 0.90);
}
