#pragma once

// Random inputs for property tests and the acceptance suite.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "overlap/core.hpp"
#include "overlap/oracle.hpp"

namespace testsupport {

using overlap::NormKind;
using overlap::SampleSet;
using overlap::Vector;
using overlap::oracle::DiscreteDistribution;

inline constexpr NormKind kAllNorms[] = {NormKind::L1, NormKind::L2, NormKind::LInf};

inline std::size_t uniformIndex(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Distinct points: half-integer grid coordinates, occasionally perturbed
// off-grid so both exact ties in norm and generic positions occur.
inline std::vector<Vector> randomPointPool(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    std::uniform_int_distribution<int> grid(-6, 6);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::bernoulli_distribution offGrid(0.3);
    std::set<std::vector<double>> seen;
    std::vector<Vector> pool;
    while (pool.size() < count) {
        std::vector<double> c(dim);
        for (auto& x : c) x = 0.5 * grid(rng) + (offGrid(rng) ? jitter(rng) : 0.0);
        if (seen.insert(c).second) pool.emplace_back(c);
    }
    return pool;
}

inline std::vector<double> normalizedMasses(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> w(0.02, 1.0);
    std::vector<double> m(count);
    for (auto& x : m) x = w(rng);
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    for (auto& x : m) x /= total;
    return m;
}

inline std::vector<std::size_t> randomSubsetIndices(std::mt19937_64& rng, std::size_t n, std::size_t minSize) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(uniformIndex(rng, std::min(minSize, n), n));
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct DiscretePair {
    DiscreteDistribution P;
    DiscreteDistribution Q;
};

/// Two distributions over a shared pool of at most `maxSupport` points in
/// dimension 1..maxDim. Supports overlap partially, fully or not at all.
inline DiscretePair randomDiscretePair(std::mt19937_64& rng, std::size_t maxSupport = 16, std::size_t maxDim = 3) {
    const std::size_t dim = uniformIndex(rng, 1, maxDim);
    const std::size_t poolSize = uniformIndex(rng, 1, maxSupport);
    const auto pool = randomPointPool(rng, poolSize, dim);
    auto pick = [&] {
        const auto idx = randomSubsetIndices(rng, poolSize, 1);
        std::vector<Vector> support;
        for (auto i : idx) support.push_back(pool[i]);
        return DiscreteDistribution(std::move(support), normalizedMasses(rng, idx.size()));
    };
    DiscreteDistribution P = pick();
    DiscreteDistribution Q = std::bernoulli_distribution(0.1)(rng) ? P : pick();
    return {std::move(P), std::move(Q)};
}

/// Distribution whose masses are count_i / total, together with its exact
/// replication as a sample set (point i repeated count_i times).
struct ReplicatedDistribution {
    DiscreteDistribution dist;
    std::vector<Vector> rows;
};

inline ReplicatedDistribution randomReplicated(std::mt19937_64& rng, const std::vector<Vector>& pool,
                                               std::size_t maxCount = 7) {
    const auto idx = randomSubsetIndices(rng, pool.size(), 1);
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        counts.push_back(uniformIndex(rng, 1, maxCount));
        total += counts.back();
    }
    std::vector<Vector> support;
    std::vector<double> masses;
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        support.push_back(pool[idx[i]]);
        masses.push_back(static_cast<double>(counts[i]) / static_cast<double>(total));
        for (std::size_t c = 0; c < counts[i]; ++c) rows.push_back(pool[idx[i]]);
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    return {DiscreteDistribution(std::move(support), std::move(masses)), std::move(rows)};
}

inline SampleSet sampleIid(const DiscreteDistribution& dist, std::size_t n, std::mt19937_64& rng, NormKind norm) {
    std::discrete_distribution<std::size_t> pickPoint(dist.masses().begin(), dist.masses().end());
    const std::size_t d = dist.dimension();
    std::vector<double> values;
    values.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = dist.support()[pickPoint(rng)].coords();
        values.insert(values.end(), c.begin(), c.end());
    }
    return SampleSet::fromRows(std::move(values), d, norm);
}

inline SampleSet gaussianSet(std::mt19937_64& rng, std::size_t n, const std::vector<double>& center, double sd,
                             NormKind norm) {
    std::normal_distribution<double> noise(0.0, sd);
    std::vector<double> values;
    values.reserve(n * center.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (double c : center) values.push_back(c + noise(rng));
    }
    return SampleSet::fromRows(std::move(values), center.size(), norm);
}

inline SampleSet uniformBoxSet(std::mt19937_64& rng, std::size_t n, const std::vector<double>& lo,
                               const std::vector<double>& hi, NormKind norm) {
    std::vector<double> values;
    values.reserve(n * lo.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < lo.size(); ++j) {
            values.push_back(std::uniform_real_distribution<double>(lo[j], hi[j])(rng));
        }
    }
    return SampleSet::fromRows(std::move(values), lo.size(), norm);
}

inline std::vector<overlap::ConditionFunction> randomRadiusIndicators(std::mt19937_64& rng, std::size_t count,
                                                                      double maxRadius, NormKind norm) {
    std::uniform_real_distribution<double> r(0.0, maxRadius);
    std::vector<overlap::ConditionFunction> gs;
    for (std::size_t i = 0; i < count; ++i) gs.emplace_back(overlap::RadiusIndicator{r(rng), norm});
    return gs;
}

}  // namespace testsupport
