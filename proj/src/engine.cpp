#include "engine.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <ostream>

#include "errors.hpp"
#include "malicious.hpp"
#include "supportive.hpp"
#include "tsv.hpp"

namespace smartmtd {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

double complementarity_residual(const ConfidenceTable& conf) {
    double worst = 0.0;
    for (size_t o = 0; o < conf.c_true.size(); ++o)
        for (size_t lv = 0; lv < conf.c_true[o].size(); ++lv)
            worst = std::max(worst, std::abs(conf.c_true[o][lv] + conf.c_false[o][lv] - 1.0));
    return worst;
}

} // namespace

void EngineConfig::validate() const {
    require(beta >= 0.0 && beta < 1.0, "beta must be in [0, 1)");
    require(delta > 0.0, "delta must be positive");
    require(pp_max > 0.0 && pp_max <= 1.0, "pp_max must be in (0, 1]");
    require(np_max > 0.0 && np_max <= 1.0, "np_max must be in (0, 1]");
    require(pc_max > 0.0 && pc_max <= 1.0, "pc_max must be in (0, 1]");
    require(nc_max > 0.0 && nc_max <= 1.0, "nc_max must be in (0, 1]");
    require(max_outer_iters >= 1, "max_outer_iters must be at least 1");
    require(walk.tol > 0.0, "walk tolerance must be positive");
    require(walk.max_iters >= 1, "walk iteration cap must be at least 1");
    require(threads >= 1, "threads must be at least 1");
}

ConfidenceTable initialize_confidence(const DerivedView& view) {
    ConfidenceTable conf;
    conf.c_true.resize(view.objects.size());
    conf.c_false.resize(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        const double n_sources = static_cast<double>(ov.sources.size());
        conf.c_true[o].resize(ov.universe.size());
        conf.c_false[o].resize(ov.universe.size());
        for (size_t lv = 0; lv < ov.universe.size(); ++lv) {
            double c = static_cast<double>(ov.claimers[lv].size()) / n_sources;
            conf.c_true[o][lv] = c;
            conf.c_false[o][lv] = 1.0 - c;
        }
    }
    return conf;
}

ConfidenceTable update_confidence(const DerivedView& view, const SourceProfile& profile) {
    ConfidenceTable conf;
    conf.c_true.resize(view.objects.size());
    conf.c_false.resize(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        const double n_sources = static_cast<double>(ov.sources.size());
        conf.c_true[o].resize(ov.universe.size());
        conf.c_false[o].resize(ov.universe.size());
        for (size_t lv = 0; lv < ov.universe.size(); ++lv) {
            double vote_true = 0.0, vote_false = 0.0;
            for (int slot : ov.claimers[lv]) {
                double tau = profile.tau[ov.sources[slot]];
                vote_true += tau;
                vote_false += 1.0 - tau;
            }
            for (int slot : ov.disclaimers[lv]) {
                double tau_tilde = profile.tau_tilde[ov.sources[slot]];
                vote_true += 1.0 - tau_tilde;
                vote_false += tau_tilde;
            }
            conf.c_true[o][lv] = vote_true / n_sources;
            conf.c_false[o][lv] = vote_false / n_sources;
        }
    }
    return conf;
}

double cosine_difference(const SourceProfile& prev, const SourceProfile& curr) {
    assert(prev.tau.size() == curr.tau.size());
    double dot = 0.0, mag_prev = 0.0, mag_curr = 0.0;
    auto accumulate = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            mag_prev += a[i] * a[i];
            mag_curr += b[i] * b[i];
        }
    };
    accumulate(prev.tau, curr.tau);
    accumulate(prev.tau_tilde, curr.tau_tilde);
    if (mag_prev == 0.0 || mag_curr == 0.0) {
        assert(false && "zero-magnitude precision vector");
        return 1.0;
    }
    return 1.0 - dot / (std::sqrt(mag_prev) * std::sqrt(mag_curr));
}

bool has_converged(const SourceProfile& prev, const SourceProfile& curr, double delta) {
    return cosine_difference(prev, curr) < delta;
}

TruthAssignment extract_truths(const ClaimTable& claims, const DerivedView& view,
                               const ConfidenceTable& conf,
                               std::vector<std::string>* empty_objects) {
    TruthAssignment truths;
    truths.entries.reserve(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        TruthAssignment::Entry entry;
        entry.object = claims.object_names[o];
        for (size_t lv = 0; lv < ov.universe.size(); ++lv)
            if (conf.c_true[o][lv] > conf.c_false[o][lv])
                entry.values.push_back(claims.value_names[ov.universe[lv]]);
        if (entry.values.empty() && empty_objects) empty_objects->push_back(entry.object);
        truths.entries.push_back(std::move(entry));
    }
    return truths;
}

RunResult run(const ClaimTable& claims, const EngineConfig& config) {
    return run(claims, derive_view(claims), config);
}

RunResult run(const ClaimTable& claims, const DerivedView& view, const EngineConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    RunResult result;
    result.popularity = config.use_popularity ? compute_popularity(view)
                                              : uniform_popularity(view.num_objects());
    result.confidence = initialize_confidence(view);
    const CommonObjects common = count_common_objects(view);

    SourceProfile prev;
    for (int iter = 1; iter <= config.max_outer_iters; ++iter) {
        result.iterations = iter;
        result.dependence =
            config.use_dependence
                ? derive_dependence(view, result.confidence, claims.object_names, config.pc_max,
                                    config.nc_max, config.beta, config.walk, config.threads)
                : DependenceMap::zeros(view);
        auto [positive_graph, negative_graph] =
            build_supportive_graphs(view, result.confidence, result.popularity, result.dependence,
                                    common, config.beta, config.threads);
        result.profile =
            derive_precision(positive_graph, negative_graph, config.pp_max, config.np_max,
                             config.walk);
        result.supportive_positive = std::move(positive_graph);
        result.supportive_negative = std::move(negative_graph);
        result.confidence = update_confidence(view, result.profile);
        result.max_complementarity_residual = std::max(
            result.max_complementarity_residual, complementarity_residual(result.confidence));

        double diff = 1.0;
        if (iter > 1) diff = cosine_difference(prev, result.profile);
        result.final_cosine_diff = diff;
        if (config.record_trace)
            result.trace.push_back(
                {result.dependence, result.profile, result.confidence, diff});
        if (iter > 1 && diff < config.delta) {
            result.converged = true;
            break;
        }
        prev = result.profile;
    }

    result.truths = extract_truths(claims, view, result.confidence, &result.empty_truth_objects);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

void write_profile(const SourceProfile& profile, const std::vector<std::string>& source_names,
                   std::ostream& out, const std::string& tag) {
    out << tsv_comment_header(tag);
    out << "source_id\ttau\ttau_tilde\n";
    for (size_t s = 0; s < source_names.size(); ++s)
        out << source_names[s] << '\t' << format_double(profile.tau[s]) << '\t'
            << format_double(profile.tau_tilde[s]) << '\n';
}

} // namespace smartmtd
