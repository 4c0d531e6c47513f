#pragma once

// Exact overlap, total variation and bound right-hand sides for finitely
// supported distributions. These are the ground truth the sample-based
// estimators are checked against.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "overlap/core.hpp"

namespace overlap::oracle {

/// Finite support with probability masses summing to one (within 1e-12).
class DiscreteDistribution {
public:
    static constexpr double kMassTolerance = 1e-12;

    DiscreteDistribution(std::vector<Vector> support, std::vector<double> masses);

    std::size_t size() const { return support_.size(); }
    std::size_t dimension() const { return support_.front().dimension(); }
    const std::vector<Vector>& support() const { return support_; }
    const std::vector<double>& masses() const { return masses_; }

private:
    std::vector<Vector> support_;
    std::vector<double> masses_;
};

/// Union of two supports with exact point identity; a point missing from one
/// side carries mass zero there. P's points come first in their own order,
/// followed by Q's new points in Q's order.
struct JointSupport {
    std::vector<Vector> points;
    std::vector<double> p;
    std::vector<double> q;

    std::size_t size() const { return points.size(); }
};

JointSupport jointSupport(const DiscreteDistribution& P, const DiscreteDistribution& Q);

/// A subset of the joint support: explicit member indices, or the region where
/// a condition function is 1.
using SubsetSpec = std::variant<std::vector<std::size_t>, ConditionFunction>;

// Membership flag per joint-support point.
std::vector<bool> membership(const SubsetSpec& A, const JointSupport& joint);

double exactOverlap(const DiscreteDistribution& P, const DiscreteDistribution& Q);
double exactTV(const DiscreteDistribution& P, const DiscreteDistribution& Q);
double exactDeltaA(const DiscreteDistribution& P, const DiscreteDistribution& Q, const SubsetSpec& A);

// Mass-weighted mean of the distribution's support.
Vector exactMean(const DiscreteDistribution& P);
// E_P[g] as a mass-weighted sum.
double exactExpectation(const DiscreteDistribution& P, const ConditionFunction& g);

enum class RadiusForm {
    Complement,  // denominator r_{A^c}
    Domain,      // denominator r_B
};

/// 1 - ||mu_P - mu_Q|| / (2 r) - ((r - r_A) / r) * delta_A with r = r_{A^c} or r_B.
///
/// Suprema are taken over joint-support points carrying positive mass in P or Q.
/// Throws DegenerateDomain when the chosen denominator is zero.
double theoremRHS(const DiscreteDistribution& P, const DiscreteDistribution& Q, const SubsetSpec& A,
                  RadiusForm form, NormKind norm = NormKind::L2);

/// 1 - ||mu_P - mu_Q|| / (2 r_B) - max_g ((r_B - r_A(g)) / (2 r_B)) |E_P[g] - E_Q[g]|
/// with exact expectations.
double corollaryRHSExact(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                         std::span<const ConditionFunction> gs, NormKind norm = NormKind::L2);

}  // namespace overlap::oracle
