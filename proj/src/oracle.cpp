#include "overlap/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace overlap::oracle {

namespace {

std::vector<double> key(const Vector& v) {
    const auto c = v.coords();
    return {c.begin(), c.end()};
}

void requireSameDimension(const DiscreteDistribution& P, const DiscreteDistribution& Q) {
    if (P.dimension() != Q.dimension()) {
        throw DimensionMismatch("distributions have dimensions " + std::to_string(P.dimension()) +
                                " and " + std::to_string(Q.dimension()));
    }
}

struct RadiusSummary {
    double inside = 0.0;   // sup norm over A
    double outside = 0.0;  // sup norm over A^c
    double domain = 0.0;   // sup norm over the whole support
};

RadiusSummary radii(const JointSupport& joint, const std::vector<bool>& inA, NormKind kind) {
    RadiusSummary r;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        if (joint.p[i] <= 0.0 && joint.q[i] <= 0.0) continue;
        const double nx = norm(joint.points[i].coords(), kind);
        r.domain = std::max(r.domain, nx);
        if (inA[i]) {
            r.inside = std::max(r.inside, nx);
        } else {
            r.outside = std::max(r.outside, nx);
        }
    }
    return r;
}

double deltaOver(const JointSupport& joint, const std::vector<bool>& inA) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        if (inA[i]) acc.add(std::abs(joint.p[i] - joint.q[i]));
    }
    return 0.5 * acc.value();
}

double meanGap(const DiscreteDistribution& P, const DiscreteDistribution& Q, NormKind kind) {
    const Vector mp = exactMean(P);
    const Vector mq = exactMean(Q);
    std::vector<double> diff(mp.dimension());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = mp[j] - mq[j];
    return norm(diff, kind);
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Vector> support, std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
    if (support_.empty()) throw InputError("discrete distribution needs at least one support point");
    if (support_.size() != masses_.size()) {
        throw InputError("support has " + std::to_string(support_.size()) + " points but " +
                         std::to_string(masses_.size()) + " masses were given");
    }
    const std::size_t d = support_.front().dimension();
    std::map<std::vector<double>, std::size_t> seen;
    CompensatedSum total;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i].dimension() != d) {
            throw DimensionMismatch("support point " + std::to_string(i) + " has dimension " +
                                    std::to_string(support_[i].dimension()) + ", expected " +
                                    std::to_string(d));
        }
        if (!(masses_[i] >= 0.0) || !std::isfinite(masses_[i])) {
            throw InputError("mass " + std::to_string(i) + " is negative or non-finite");
        }
        const auto [it, inserted] = seen.emplace(key(support_[i]), i);
        if (!inserted) {
            throw InputError("support points " + std::to_string(it->second) + " and " +
                             std::to_string(i) + " coincide");
        }
        total.add(masses_[i]);
    }
    if (std::abs(total.value() - 1.0) > kMassTolerance) {
        throw InputError("masses sum to " + std::to_string(total.value()) + ", expected 1");
    }
}

JointSupport jointSupport(const DiscreteDistribution& P, const DiscreteDistribution& Q) {
    requireSameDimension(P, Q);
    JointSupport joint;
    std::map<std::vector<double>, std::size_t> index;
    for (std::size_t i = 0; i < P.size(); ++i) {
        index.emplace(key(P.support()[i]), joint.size());
        joint.points.push_back(P.support()[i]);
        joint.p.push_back(P.masses()[i]);
        joint.q.push_back(0.0);
    }
    for (std::size_t i = 0; i < Q.size(); ++i) {
        const auto [it, inserted] = index.emplace(key(Q.support()[i]), joint.size());
        if (inserted) {
            joint.points.push_back(Q.support()[i]);
            joint.p.push_back(0.0);
            joint.q.push_back(Q.masses()[i]);
        } else {
            joint.q[it->second] = Q.masses()[i];
        }
    }
    return joint;
}

std::vector<bool> membership(const SubsetSpec& A, const JointSupport& joint) {
    std::vector<bool> inA(joint.size(), false);
    if (const auto* members = std::get_if<std::vector<std::size_t>>(&A)) {
        for (std::size_t idx : *members) {
            if (idx >= joint.size()) {
                throw InputError("subset index " + std::to_string(idx) + " outside joint support of size " +
                                 std::to_string(joint.size()));
            }
            inA[idx] = true;
        }
        return inA;
    }
    const auto& g = std::get<ConditionFunction>(A);
    for (std::size_t i = 0; i < joint.size(); ++i) inA[i] = evaluate(g, joint.points[i]) == 1;
    return inA;
}

double exactOverlap(const DiscreteDistribution& P, const DiscreteDistribution& Q) {
    const JointSupport joint = jointSupport(P, Q);
    CompensatedSum acc;
    for (std::size_t i = 0; i < joint.size(); ++i) acc.add(std::min(joint.p[i], joint.q[i]));
    return acc.value();
}

double exactTV(const DiscreteDistribution& P, const DiscreteDistribution& Q) {
    const JointSupport joint = jointSupport(P, Q);
    return deltaOver(joint, std::vector<bool>(joint.size(), true));
}

double exactDeltaA(const DiscreteDistribution& P, const DiscreteDistribution& Q, const SubsetSpec& A) {
    const JointSupport joint = jointSupport(P, Q);
    return deltaOver(joint, membership(A, joint));
}

Vector exactMean(const DiscreteDistribution& P) {
    const std::size_t d = P.dimension();
    std::vector<double> mean(d);
    for (std::size_t j = 0; j < d; ++j) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < P.size(); ++i) acc.add(P.masses()[i] * P.support()[i][j]);
        mean[j] = acc.value();
    }
    return Vector(std::move(mean));
}

double exactExpectation(const DiscreteDistribution& P, const ConditionFunction& g) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (evaluate(g, P.support()[i]) == 1) acc.add(P.masses()[i]);
    }
    return acc.value();
}

double theoremRHS(const DiscreteDistribution& P, const DiscreteDistribution& Q, const SubsetSpec& A,
                  RadiusForm form, NormKind norm) {
    const JointSupport joint = jointSupport(P, Q);
    const std::vector<bool> inA = membership(A, joint);
    const RadiusSummary r = radii(joint, inA, norm);
    const double denom = form == RadiusForm::Complement ? r.outside : r.domain;
    if (denom == 0.0) {
        throw DegenerateDomain(form == RadiusForm::Complement
                                   ? "sup norm over the complement of A is zero"
                                   : "sup norm over the support is zero");
    }
    const double deltaA = deltaOver(joint, inA);
    return 1.0 - meanGap(P, Q, norm) / (2.0 * denom) - ((denom - r.inside) / denom) * deltaA;
}

double corollaryRHSExact(const DiscreteDistribution& P, const DiscreteDistribution& Q,
                         std::span<const ConditionFunction> gs, NormKind norm) {
    if (gs.empty()) throw InputError("at least one condition function is required");
    const JointSupport joint = jointSupport(P, Q);
    const RadiusSummary all = radii(joint, std::vector<bool>(joint.size(), false), norm);
    const double rB = all.domain;
    if (rB == 0.0) throw DegenerateDomain("sup norm over the support is zero");

    double best = 0.0;
    for (const auto& g : gs) {
        const std::vector<bool> inA = membership(g, joint);
        const double rA = radii(joint, inA, norm).inside;
        CompensatedSum ep;
        CompensatedSum eq;
        for (std::size_t i = 0; i < joint.size(); ++i) {
            if (!inA[i]) continue;
            ep.add(joint.p[i]);
            eq.add(joint.q[i]);
        }
        const double term = (rB - rA) / (2.0 * rB) * std::abs(ep.value() - eq.value());
        best = std::max(best, term);
    }
    return 1.0 - meanGap(P, Q, norm) / (2.0 * rB) - best;
}

}  // namespace overlap::oracle
