#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "overlap/error.hpp"

namespace overlap {

enum class NormKind { L1, L2, LInf };

std::string_view toString(NormKind kind);
// Accepts "l1", "l2", "linf" (case-insensitive); throws InputError otherwise.
NormKind parseNormKind(std::string_view text);

double norm(std::span<const double> v, NormKind kind);

// Neumaier-compensated running sum. Order of add() calls is the summation order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Immutable, finite, non-empty real vector.
class Vector {
public:
    explicit Vector(std::vector<double> coords);
    Vector(std::initializer_list<double> coords);

    std::size_t dimension() const { return coords_.size(); }
    std::span<const double> coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> coords_;
};

/// A non-empty collection of same-dimension samples sharing one norm.
///
/// Rows are stored contiguously. The per-row norms, their maximum and the
/// empirical mean are computed once at construction; the mean uses
/// compensated summation in row order so that repeated constructions over the
/// same rows give bit-identical results.
class SampleSet {
public:
    SampleSet(const std::vector<Vector>& samples, NormKind norm);
    // Row-major flat storage: values.size() must be a positive multiple of dimension.
    static SampleSet fromRows(std::vector<double> values, std::size_t dimension, NormKind norm);

    std::size_t size() const { return norms_.size(); }
    std::size_t dimension() const { return dimension_; }
    NormKind norm() const { return norm_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dimension_, dimension_};
    }
    std::span<const double> values() const { return values_; }
    std::span<const double> rowNorms() const { return norms_; }
    double rowNorm(std::size_t i) const { return norms_[i]; }
    double maxNorm() const { return maxNorm_; }
    const Vector& mean() const { return mean_; }

private:
    SampleSet(std::vector<double> values, std::size_t dimension, NormKind norm, int);

    std::vector<double> values_;
    std::size_t dimension_;
    NormKind norm_;
    std::vector<double> norms_;
    double maxNorm_ = 0.0;
    Vector mean_;
};

/// Anything that maps a vector to a confidence score clamped into [0, 1].
class Scorer {
public:
    virtual ~Scorer() = default;
    virtual std::size_t dimension() const = 0;
    virtual double clampedScore(std::span<const double> x) const = 0;
};

/// 1{ ||x|| <= radius } (closed ball).
struct RadiusIndicator {
    double radius;
    NormKind norm;
};

/// 1{ scorer(x) <= threshold } on the clamped score.
struct ScoreThreshold {
    double threshold;
    std::shared_ptr<const Scorer> scorer;
};

using ConditionFunction = std::variant<RadiusIndicator, ScoreThreshold>;

RadiusIndicator makeRadiusIndicator(double radius, NormKind norm);
ScoreThreshold makeScoreThreshold(double threshold, std::shared_ptr<const Scorer> scorer);

int evaluate(const ConditionFunction& g, std::span<const double> x);
inline int evaluate(const ConditionFunction& g, const Vector& x) { return evaluate(g, x.coords()); }

// The radius or threshold that parameterizes g.
double conditionParameter(const ConditionFunction& g);

/// r_j = (j / k) * scale for j = 1..k; the top radius is exactly `scale`.
inline double familyRadius(std::size_t j, std::size_t k, double scale) {
    return j == k ? scale : static_cast<double>(j) / static_cast<double>(k) * scale;
}
std::vector<double> radiusFamily(double rFit, std::size_t k);
std::vector<ConditionFunction> radiusIndicators(std::span<const double> radii, NormKind norm);

}  // namespace overlap
