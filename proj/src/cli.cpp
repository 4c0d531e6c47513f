#include "overlap/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "overlap/bound.hpp"
#include "overlap/classifier.hpp"
#include "overlap/io.hpp"
#include "overlap/metrics.hpp"
#include "overlap/oracle.hpp"
#include "overlap/shift.hpp"

namespace overlap::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::vector<std::string> inputs;
    std::string norm = "l2";
    std::size_t k = 50;
    std::optional<double> threshold;
    bool iterative = false;
    std::string trainPath;
    std::size_t k2 = 0;  // 0: reuse the model's k
    std::vector<double> sigmas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    double p = 1.0;
    double q = 0.0;
    bool measured = false;
    std::size_t mixtureSize = 0;  // 0: clean + poisoned row count
    std::uint64_t seed = 0;
    double inRate = 0.95;
    std::string outPath;
};

std::string formatReal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emitText(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.outPath.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.outPath, std::ios::binary);
    if (!file) throw InputError("cannot write '" + cfg.outPath + "'");
    file << text;
}

void emitJson(const json& doc, const RunConfig& cfg, std::ostream& out) { emitText(doc.dump(2) + "\n", cfg, out); }

std::vector<ConditionFunction> pooledRadiusFamily(const SampleSet& a, const SampleSet& b, std::size_t k) {
    const double rB = std::max(a.maxNorm(), b.maxNorm());
    return radiusIndicators(radiusFamily(rB, k), a.norm());
}

std::pair<SampleSet, SampleSet> readPair(const RunConfig& cfg) {
    const NormKind norm = parseNormKind(cfg.norm);
    SampleSet a = io::readSamples(cfg.inputs.at(0), norm);
    SampleSet b = io::readSamples(cfg.inputs.at(1), norm);
    if (a.dimension() != b.dimension()) {
        throw DimensionMismatch("'" + cfg.inputs[0] + "' has dimension " + std::to_string(a.dimension()) + " but '" +
                                cfg.inputs[1] + "' has dimension " + std::to_string(b.dimension()));
    }
    return {std::move(a), std::move(b)};
}

int cmdBound(const RunConfig& cfg, std::ostream& out) {
    const auto [pos, neg] = readPair(cfg);
    const auto gs = pooledRadiusFamily(pos, neg, cfg.k);
    json doc = io::toJson(computeBound(pos, neg, gs));
    doc["norm"] = cfg.norm;
    doc["k"] = cfg.k;
    emitJson(doc, cfg, out);
    return kSuccess;
}

int cmdFit(const RunConfig& cfg, std::ostream& out) {
    const SampleSet train = io::readSamples(cfg.inputs.at(0), parseNormKind(cfg.norm));
    emitText(io::serializeScorer(FittedScorer::fit(train, cfg.k)), cfg, out);
    return kSuccess;
}

int cmdScore(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FittedScorer model = io::readScorer(cfg.inputs.at(0));
    const SampleSet queries = io::readSamples(cfg.inputs.at(1), model.norm());
    if (queries.dimension() != model.dimension()) {
        throw DimensionMismatch("model '" + cfg.inputs[0] + "' has dimension " + std::to_string(model.dimension()) +
                                " but queries '" + cfg.inputs[1] + "' have dimension " +
                                std::to_string(queries.dimension()));
    }

    std::optional<IterativeScorer> second;
    if (cfg.iterative) {
        if (cfg.trainPath.empty()) throw InputError("--iterative requires --train <in-class samples>");
        const SampleSet train = io::readSamples(cfg.trainPath, model.norm());
        second.emplace(model, train, cfg.k2 == 0 ? model.k() : cfg.k2);
    }

    const auto records = scoreBatch(model, queries, cfg.threshold);
    std::ostringstream csv;
    csv << "row_index,score,clamped";
    if (cfg.threshold) csv << ",verdict";
    if (second) csv << ",iterative";
    csv << '\n';

    std::size_t inClass = 0;
    double minScore = records.front().score;
    double maxScore = records.front().score;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        minScore = std::min(minScore, r.score);
        maxScore = std::max(maxScore, r.score);
        csv << i << ',' << formatReal(r.score) << ',' << formatReal(r.clampedScore);
        if (r.verdict) {
            const bool in = *r.verdict == Verdict::InClass;
            inClass += in ? 1 : 0;
            csv << ',' << (in ? "in" : "out");
        }
        if (second) csv << ',' << formatReal(second->score(queries.row(i)).score);
        csv << '\n';
    }

    json summary = {{"count", records.size()},     {"dimension", model.dimension()},
                    {"k", model.k()},              {"norm", std::string(toString(model.norm()))},
                    {"min_score", minScore},       {"max_score", maxScore},
                    {"degenerate", model.degenerate()}};
    if (cfg.threshold) {
        summary["threshold"] = *cfg.threshold;
        summary["in_class"] = inClass;
        summary["out_class"] = records.size() - inClass;
    }
    if (second) summary["k2"] = second->secondPass().k();

    if (cfg.outPath.empty()) {
        out << csv.str();
        err << summary.dump() << '\n';
    } else {
        emitText(csv.str(), cfg, out);
        out << summary.dump(2) << '\n';
    }
    return kSuccess;
}

int cmdShift(const RunConfig& cfg, std::ostream& out) {
    const auto [clean, poisoned] = readPair(cfg);
    const auto gs = pooledRadiusFamily(clean, poisoned, cfg.k);

    std::vector<shift::SweepPoint> sweep;
    if (cfg.q == 0.0) {
        sweep = shift::sweepSigma(clean, poisoned, cfg.p, cfg.sigmas, gs);
    } else {
        for (double sigma : cfg.sigmas) {
            const shift::MixtureSpec mix{clean, poisoned, sigma};
            sweep.push_back({sigma, shift::mixtureCeiling(mix, cfg.p, cfg.q, gs)});
        }
        std::stable_sort(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) { return a.sigma < b.sigma; });
    }

    json sigmas = json::array();
    json ceilings = json::array();
    json measured = json::array();
    const std::size_t total = cfg.mixtureSize ? cfg.mixtureSize : clean.size() + poisoned.size();
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        sigmas.push_back(sweep[i].sigma);
        ceilings.push_back(sweep[i].ceiling);
        if (cfg.measured) {
            const shift::MixtureSpec mix{clean, poisoned, sweep[i].sigma};
            measured.push_back(shift::simulateAccuracy(mix, {cfg.p, cfg.q, cfg.seed + i}, total));
        }
    }
    json doc = {{"sigma", sigmas}, {"ceiling", ceilings}, {"norm", cfg.norm}, {"k", cfg.k}, {"p", cfg.p}, {"q", cfg.q}};
    if (cfg.measured) {
        doc["measured"] = measured;
        doc["seed"] = cfg.seed;
        doc["mixture_size"] = total;
    }
    emitJson(doc, cfg, out);
    return kSuccess;
}

bool parseLabel(double v) {
    if (v == 1.0) return true;
    if (v == 0.0) return false;
    throw InputError("label " + formatReal(v) + " is not 0 or 1");
}

int cmdEval(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> scores;
    std::vector<bool> labels;
    const io::NumericTable first = io::readCsv(cfg.inputs.at(0));
    if (cfg.inputs.size() == 1) {
        if (first.columns < 2) throw InputError("'" + cfg.inputs[0] + "' needs score and label columns");
        for (std::size_t r = 0; r < first.rows(); ++r) {
            scores.push_back(first.values[r * first.columns]);
            labels.push_back(parseLabel(first.values[r * first.columns + 1]));
        }
    } else {
        const io::NumericTable second = io::readCsv(cfg.inputs.at(1));
        if (first.rows() != second.rows()) {
            throw DimensionMismatch("'" + cfg.inputs[0] + "' has " + std::to_string(first.rows()) + " rows but '" +
                                    cfg.inputs[1] + "' has " + std::to_string(second.rows()));
        }
        for (std::size_t r = 0; r < first.rows(); ++r) {
            scores.push_back(first.values[r * first.columns]);
            labels.push_back(parseLabel(second.values[r * second.columns]));
        }
    }
    const metrics::LabeledScores ls(std::move(scores), std::move(labels));
    const json doc = {{"auroc", metrics::auroc(ls)},
                      {"aupr", metrics::aupr(ls)},
                      {"tpr95", metrics::tprAtInRate(ls, cfg.inRate)},
                      {"n_pos", ls.positives()},
                      {"n_neg", ls.negatives()}};
    emitJson(doc, cfg, out);
    return kSuccess;
}

int cmdOracle(const RunConfig& cfg, std::ostream& out) {
    const NormKind norm = parseNormKind(cfg.norm);
    const auto P = io::readDistribution(cfg.inputs.at(0));
    const auto Q = io::readDistribution(cfg.inputs.at(1));
    if (P.dimension() != Q.dimension()) {
        throw DimensionMismatch("'" + cfg.inputs[0] + "' has dimension " + std::to_string(P.dimension()) + " but '" +
                                cfg.inputs[1] + "' has dimension " + std::to_string(Q.dimension()));
    }
    const auto joint = oracle::jointSupport(P, Q);
    double rB = 0.0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        if (joint.p[i] > 0.0 || joint.q[i] > 0.0) rB = std::max(rB, overlap::norm(joint.points[i].coords(), norm));
    }
    const auto radii = radiusFamily(rB, cfg.k);
    const auto gs = radiusIndicators(radii, norm);

    json deltaA = json::array();
    json rhsDomain = json::array();
    json rhsComplement = json::array();
    for (const auto& g : gs) {
        deltaA.push_back(oracle::exactDeltaA(P, Q, g));
        for (auto [form, target] : {std::pair{oracle::RadiusForm::Domain, &rhsDomain},
                                    std::pair{oracle::RadiusForm::Complement, &rhsComplement}}) {
            try {
                target->push_back(oracle::theoremRHS(P, Q, g, form, norm));
            } catch (const DegenerateDomain&) {
                target->push_back(nullptr);
            }
        }
    }
    json doc = {{"overlap", oracle::exactOverlap(P, Q)},
                {"tv", oracle::exactTV(P, Q)},
                {"norm", cfg.norm},
                {"k", cfg.k},
                {"rB", rB},
                {"radii", radii},
                {"deltaA", deltaA},
                {"theoremRHS", rhsDomain},
                {"theoremRHSComplement", rhsComplement}};
    try {
        doc["corollaryRHSExact"] = oracle::corollaryRHSExact(P, Q, gs, norm);
    } catch (const DegenerateDomain&) {
        // Both distributions are the point mass at the origin.
        doc["corollaryRHSExact"] = nullptr;
        doc["degenerate"] = true;
    }
    emitJson(doc, cfg, out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distribution-free overlap bounds, one-class scoring and domain-shift ceilings"};
    app.name("overlap");
    app.require_subcommand(1);
    RunConfig cfg;

    auto addNorm = [&](CLI::App* sub) {
        sub->add_option("--norm", cfg.norm, "Norm: l1, l2 or linf")->capture_default_str();
    };
    auto addK = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "Number of radius indicators")->capture_default_str()->check(CLI::PositiveNumber);
    };
    auto addOut = [&](CLI::App* sub) { sub->add_option("--out", cfg.outPath, "Write output to this file"); };
    auto addPositional = [&](CLI::App* sub, std::size_t min, std::size_t max, const std::string& desc) {
        sub->add_option("inputs", cfg.inputs, desc)->required()->expected(static_cast<int>(min), static_cast<int>(max));
    };

    auto* bound = app.add_subcommand("bound", "Overlap upper bound between two sample files");
    addPositional(bound, 2, 2, "Positive and negative sample files (CSV or OVLB)");
    addNorm(bound);
    addK(bound);
    addOut(bound);

    auto* fitCmd = app.add_subcommand("fit", "Fit a one-class scorer and write the model JSON");
    addPositional(fitCmd, 1, 1, "In-class sample file");
    addNorm(fitCmd);
    addK(fitCmd);
    addOut(fitCmd);

    CLI::App* scoreCmds[2];
    scoreCmds[0] = app.add_subcommand("score", "Score query rows against a fitted model");
    scoreCmds[1] = app.add_subcommand("classify", "Score and classify query rows with threshold T0");
    for (auto* sub : scoreCmds) {
        addPositional(sub, 2, 2, "Model JSON and query sample file");
        auto* t = sub->add_option("--threshold", cfg.threshold, "In-class iff score >= threshold");
        if (sub == scoreCmds[1]) t->required();
        sub->add_flag("--iterative", cfg.iterative, "Add the second-pass score column");
        sub->add_option("--train", cfg.trainPath, "In-class samples (required with --iterative)");
        sub->add_option("--k2", cfg.k2, "Second-pass predicate count (default: model k)");
        addOut(sub);
    }

    auto* shiftCmd = app.add_subcommand("shift", "Accuracy ceilings over purity ratios");
    addPositional(shiftCmd, 2, 2, "Clean and poisoned sample files");
    shiftCmd->add_option("--p", cfg.p, "Accuracy on the clean distribution")->required()->check(CLI::Range(0.0, 1.0));
    shiftCmd->add_option("--q", cfg.q, "Accuracy on the shifted part")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    shiftCmd->add_option("--sigma", cfg.sigmas, "Purity ratios")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    shiftCmd->add_flag("--measured", cfg.measured, "Add simulated accuracy of a p/q label rule");
    shiftCmd->add_option("--n", cfg.mixtureSize, "Mixture size for --measured");
    shiftCmd->add_option("--seed", cfg.seed, "Seed for --measured")->capture_default_str();
    addNorm(shiftCmd);
    addK(shiftCmd);
    addOut(shiftCmd);

    auto* evalCmd = app.add_subcommand("eval", "AUROC, AUPR and TPR95 of labeled scores");
    addPositional(evalCmd, 1, 2, "CSV with score,label columns, or a scores file and a labels file");
    evalCmd->add_option("--in-rate", cfg.inRate, "In-class pass rate for the TPR metric")->capture_default_str();
    addOut(evalCmd);

    auto* oracleCmd = app.add_subcommand("oracle", "Exact quantities for two discrete distribution files");
    addPositional(oracleCmd, 2, 2, "Two discrete distribution JSON files");
    addNorm(oracleCmd);
    addK(oracleCmd);
    addOut(oracleCmd);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*bound) return cmdBound(cfg, out);
        if (*fitCmd) return cmdFit(cfg, out);
        if (*scoreCmds[0] || *scoreCmds[1]) return cmdScore(cfg, out, err);
        if (*shiftCmd) return cmdShift(cfg, out);
        if (*evalCmd) return cmdEval(cfg, out);
        if (*oracleCmd) return cmdOracle(cfg, out);
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kContractViolation;
    } catch (const DegenerateDomain& e) {
        err << "error: " << e.what() << '\n';
        return kContractViolation;
    } catch (const MetricUndefined& e) {
        err << "error: " << e.what() << '\n';
        return kMetricUndefined;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

}  // namespace overlap::cli
