#include "smartmtd/smartmtd.h"

#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "baselines.hpp"
#include "claims.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "malicious.hpp"
#include "metrics.hpp"
#include "popularity.hpp"
#include "synth.hpp"
#include "tsv.hpp"

struct smtd_claims {
    smartmtd::ClaimTable table;
    smartmtd::DerivedView view;
};

struct smtd_truths {
    smartmtd::TruthAssignment truths;
};

struct smtd_result {
    smartmtd::RunResult run;
    // Snapshots so the result stays usable after the claims handle is freed.
    std::vector<std::string> source_names;
    std::vector<std::string> object_names;
    smartmtd::DerivedView view;
    smtd_truths truths_view;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

smtd_status arg_error(const std::string& msg) {
    set_error(msg);
    return SMTD_ERR_ARG;
}

// Runs `body` and folds any thrown error into a status code.
template <typename Body>
smtd_status guarded(Body&& body) {
    try {
        body();
        return SMTD_OK;
    } catch (const smartmtd::ParseError& e) {
        set_error(e.what());
        return SMTD_ERR_PARSE;
    } catch (const smartmtd::IoError& e) {
        set_error(e.what());
        return SMTD_ERR_IO;
    } catch (const smartmtd::ConfigError& e) {
        set_error(e.what());
        return SMTD_ERR_ARG;
    } catch (const smartmtd::ConvergenceError& e) {
        set_error(e.what());
        return SMTD_ERR_CONVERGENCE;
    } catch (const smartmtd::InfeasibleError& e) {
        set_error(e.what());
        return SMTD_ERR_INFEASIBLE;
    } catch (const smartmtd::InternalError& e) {
        set_error(e.what());
        return SMTD_ERR_INTERNAL;
    } catch (const smartmtd::Error& e) {
        set_error(e.what());
        return SMTD_ERR_ARG;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return SMTD_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SMTD_ERR_INTERNAL;
    }
}

std::string tag_of(const char* tag) { return tag ? std::string(tag) : std::string(); }

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw smartmtd::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw smartmtd::IoError("write failed for '" + path + "'");
}

smartmtd::EngineConfig to_engine_config(const smtd_config& c) {
    smartmtd::EngineConfig config;
    config.beta = c.beta;
    config.delta = c.delta;
    config.pp_max = c.pp_max;
    config.np_max = c.np_max;
    config.pc_max = c.pc_max;
    config.nc_max = c.nc_max;
    config.max_outer_iters = c.max_outer_iters;
    config.walk.tol = c.walk_tol;
    config.walk.max_iters = c.walk_max_iters;
    config.threads = c.threads;
    config.use_dependence = c.use_dependence != 0;
    config.use_popularity = c.use_popularity != 0;
    return config;
}

smartmtd::SynthSpec to_synth_spec(const smtd_synth_spec& s) {
    smartmtd::SynthSpec spec;
    spec.n_objects = s.n_objects;
    spec.n_sources = s.n_sources;
    spec.truths_min = s.truths_min;
    spec.truths_max = s.truths_max;
    spec.false_pool_size = s.false_pool_size;
    spec.honest_positive_precision = s.honest_positive_precision;
    spec.honest_negative_precision = s.honest_negative_precision;
    spec.n_copiers = s.n_copiers;
    spec.copy_fidelity = s.copy_fidelity;
    spec.coverage_skew = s.coverage_skew;
    spec.quality_skew = s.quality_skew;
    spec.rng_seed = s.rng_seed;
    return spec;
}

} // namespace

extern "C" {

const char* smtd_version(void) { return smartmtd::kVersion; }

const char* smtd_last_error(void) { return g_last_error.c_str(); }

void smtd_config_defaults(smtd_config* out) {
    if (!out) return;
    const smartmtd::EngineConfig d;
    out->beta = d.beta;
    out->delta = d.delta;
    out->pp_max = d.pp_max;
    out->np_max = d.np_max;
    out->pc_max = d.pc_max;
    out->nc_max = d.nc_max;
    out->max_outer_iters = d.max_outer_iters;
    out->walk_tol = d.walk.tol;
    out->walk_max_iters = d.walk.max_iters;
    out->threads = d.threads;
    out->use_dependence = d.use_dependence ? 1 : 0;
    out->use_popularity = d.use_popularity ? 1 : 0;
}

void smtd_synth_spec_defaults(smtd_synth_spec* out) {
    if (!out) return;
    const smartmtd::SynthSpec d;
    out->n_objects = d.n_objects;
    out->n_sources = d.n_sources;
    out->truths_min = d.truths_min;
    out->truths_max = d.truths_max;
    out->false_pool_size = d.false_pool_size;
    out->honest_positive_precision = d.honest_positive_precision;
    out->honest_negative_precision = d.honest_negative_precision;
    out->n_copiers = d.n_copiers;
    out->copy_fidelity = d.copy_fidelity;
    out->coverage_skew = d.coverage_skew;
    out->quality_skew = d.quality_skew;
    out->rng_seed = d.rng_seed;
}

smtd_status smtd_claims_load(const char* path, smtd_claims** out) {
    if (!path || !out) return arg_error("null argument to smtd_claims_load");
    return guarded([&] {
        auto handle = std::make_unique<smtd_claims>();
        handle->table = smartmtd::load_claims(path, smartmtd::ClaimFormat{});
        handle->view = smartmtd::derive_view(handle->table);
        *out = handle.release();
    });
}

smtd_status smtd_claims_parse(const char* text, size_t len, smtd_claims** out) {
    if (!text || !out) return arg_error("null argument to smtd_claims_parse");
    return guarded([&] {
        std::istringstream in(std::string(text, len));
        auto handle = std::make_unique<smtd_claims>();
        handle->table = smartmtd::ingest_claims(in, smartmtd::ClaimFormat{});
        handle->view = smartmtd::derive_view(handle->table);
        *out = handle.release();
    });
}

smtd_status smtd_claims_save(const smtd_claims* claims, const char* path, const char* tag) {
    if (!claims || !path) return arg_error("null argument to smtd_claims_save");
    return guarded(
        [&] { smartmtd::save_claims(claims->table, path, smartmtd::ClaimFormat{}, tag_of(tag)); });
}

void smtd_claims_free(smtd_claims* claims) { delete claims; }

size_t smtd_claims_num_sources(const smtd_claims* claims) {
    return claims ? claims->table.num_sources() : 0;
}

size_t smtd_claims_num_objects(const smtd_claims* claims) {
    return claims ? claims->table.num_objects() : 0;
}

size_t smtd_claims_num_values(const smtd_claims* claims) {
    return claims ? claims->table.num_values() : 0;
}

size_t smtd_claims_num_rows(const smtd_claims* claims) {
    return claims ? claims->table.claim_rows() : 0;
}

const char* smtd_claims_source_name(const smtd_claims* claims, size_t index) {
    if (!claims || index >= claims->table.num_sources()) return nullptr;
    return claims->table.source_names[index].c_str();
}

const char* smtd_claims_object_name(const smtd_claims* claims, size_t index) {
    if (!claims || index >= claims->table.num_objects()) return nullptr;
    return claims->table.object_names[index].c_str();
}

smtd_status smtd_claims_popularity(const smtd_claims* claims, double* out) {
    if (!claims || !out) return arg_error("null argument to smtd_claims_popularity");
    return guarded([&] {
        const auto pop = smartmtd::compute_popularity(claims->view);
        for (size_t o = 0; o < pop.normalized.size(); ++o) out[o] = pop.normalized[o];
    });
}

smtd_status smtd_claims_save_popularity(const smtd_claims* claims, const char* path,
                                        const char* tag) {
    if (!claims || !path) return arg_error("null argument to smtd_claims_save_popularity");
    return guarded([&] {
        const auto pop = smartmtd::compute_popularity(claims->view);
        std::ostringstream text;
        smartmtd::write_popularity(pop, claims->table, text, tag_of(tag));
        save_text(path, text.str());
    });
}

smtd_status smtd_truths_load(const char* path, smtd_truths** out) {
    if (!path || !out) return arg_error("null argument to smtd_truths_load");
    return guarded([&] {
        auto handle = std::make_unique<smtd_truths>();
        handle->truths = smartmtd::load_truths(path, smartmtd::ClaimFormat{});
        *out = handle.release();
    });
}

smtd_status smtd_truths_save(const smtd_truths* truths, const char* path, const char* tag) {
    if (!truths || !path) return arg_error("null argument to smtd_truths_save");
    return guarded([&] { smartmtd::save_truths(truths->truths, path, tag_of(tag)); });
}

void smtd_truths_free(smtd_truths* truths) { delete truths; }

size_t smtd_truths_num_objects(const smtd_truths* truths) {
    return truths ? truths->truths.num_objects() : 0;
}

const char* smtd_truths_object(const smtd_truths* truths, size_t index) {
    if (!truths || index >= truths->truths.entries.size()) return nullptr;
    return truths->truths.entries[index].object.c_str();
}

size_t smtd_truths_num_values(const smtd_truths* truths, size_t index) {
    if (!truths || index >= truths->truths.entries.size()) return 0;
    return truths->truths.entries[index].values.size();
}

const char* smtd_truths_value(const smtd_truths* truths, size_t object_index,
                              size_t value_index) {
    if (!truths || object_index >= truths->truths.entries.size()) return nullptr;
    const auto& values = truths->truths.entries[object_index].values;
    if (value_index >= values.size()) return nullptr;
    return values[value_index].c_str();
}

smtd_status smtd_run(const smtd_claims* claims, const smtd_config* config, smtd_result** out) {
    if (!claims || !config || !out) return arg_error("null argument to smtd_run");
    return guarded([&] {
        auto handle = std::make_unique<smtd_result>();
        handle->run = smartmtd::run(claims->table, claims->view, to_engine_config(*config));
        handle->source_names = claims->table.source_names;
        handle->object_names = claims->table.object_names;
        handle->view = claims->view;
        handle->truths_view.truths = handle->run.truths;
        *out = handle.release();
    });
}

smtd_status smtd_voting(const smtd_claims* claims, smtd_truths** out) {
    if (!claims || !out) return arg_error("null argument to smtd_voting");
    return guarded([&] {
        auto handle = std::make_unique<smtd_truths>();
        handle->truths = smartmtd::voting(claims->table, claims->view);
        *out = handle.release();
    });
}

smtd_status smtd_sums(const smtd_claims* claims, int iters, double tol, smtd_truths** out) {
    if (!claims || !out) return arg_error("null argument to smtd_sums");
    if (iters < 1) return arg_error("iters must be at least 1");
    return guarded([&] {
        auto handle = std::make_unique<smtd_truths>();
        handle->truths = smartmtd::sums(claims->table, claims->view, iters, tol);
        *out = handle.release();
    });
}

smtd_status smtd_avg_log(const smtd_claims* claims, int iters, double tol, smtd_truths** out) {
    if (!claims || !out) return arg_error("null argument to smtd_avg_log");
    if (iters < 1) return arg_error("iters must be at least 1");
    return guarded([&] {
        auto handle = std::make_unique<smtd_truths>();
        handle->truths = smartmtd::avg_log(claims->table, claims->view, iters, tol);
        *out = handle.release();
    });
}

const smtd_truths* smtd_result_truths(const smtd_result* result) {
    return result ? &result->truths_view : nullptr;
}

int smtd_result_iterations(const smtd_result* result) {
    return result ? result->run.iterations : 0;
}

int smtd_result_converged(const smtd_result* result) {
    return result && result->run.converged ? 1 : 0;
}

double smtd_result_cosine_diff(const smtd_result* result) {
    return result ? result->run.final_cosine_diff : 0.0;
}

double smtd_result_wall_seconds(const smtd_result* result) {
    return result ? result->run.wall_seconds : 0.0;
}

size_t smtd_result_num_sources(const smtd_result* result) {
    return result ? result->source_names.size() : 0;
}

smtd_status smtd_result_profile(const smtd_result* result, double* tau, double* tau_tilde) {
    if (!result) return arg_error("null argument to smtd_result_profile");
    for (size_t s = 0; s < result->source_names.size(); ++s) {
        if (tau) tau[s] = result->run.profile.tau[s];
        if (tau_tilde) tau_tilde[s] = result->run.profile.tau_tilde[s];
    }
    return SMTD_OK;
}

smtd_status smtd_result_save_profile(const smtd_result* result, const char* path,
                                     const char* tag) {
    if (!result || !path) return arg_error("null argument to smtd_result_save_profile");
    return guarded([&] {
        std::ostringstream text;
        smartmtd::write_profile(result->run.profile, result->source_names, text, tag_of(tag));
        save_text(path, text.str());
    });
}

smtd_status smtd_result_save_dependence(const smtd_result* result, const char* path,
                                        const char* tag) {
    if (!result || !path) return arg_error("null argument to smtd_result_save_dependence");
    return guarded([&] {
        std::ostringstream text;
        smartmtd::write_dependence(result->view, result->run.dependence, result->object_names,
                                   result->source_names, text, tag_of(tag));
        save_text(path, text.str());
    });
}

smtd_status smtd_result_save_graphs(const smtd_result* result, const char* positive_path,
                                    const char* negative_path, const char* tag) {
    if (!result) return arg_error("null argument to smtd_result_save_graphs");
    return guarded([&] {
        auto dump = [&](const smartmtd::EndorsementGraph& graph, const char* path) {
            if (!path) return;
            std::ostringstream text;
            smartmtd::write_graph(graph, result->source_names, text, tag_of(tag));
            save_text(path, text.str());
        };
        dump(result->run.supportive_positive, positive_path);
        dump(result->run.supportive_negative, negative_path);
    });
}

size_t smtd_result_num_empty_objects(const smtd_result* result) {
    return result ? result->run.empty_truth_objects.size() : 0;
}

const char* smtd_result_empty_object(const smtd_result* result, size_t index) {
    if (!result || index >= result->run.empty_truth_objects.size()) return nullptr;
    return result->run.empty_truth_objects[index].c_str();
}

void smtd_result_free(smtd_result* result) { delete result; }

smtd_status smtd_evaluate(const smtd_truths* const* preds, size_t n_runs, const smtd_truths* gold,
                          const smtd_claims* claims, const double* durations, size_t n_durations,
                          smtd_metrics* out) {
    if (!preds || !gold || !out) return arg_error("null argument to smtd_evaluate");
    if (n_runs == 0) return arg_error("smtd_evaluate needs at least one prediction run");
    for (size_t k = 0; k < n_runs; ++k)
        if (!preds[k]) return arg_error("null prediction handle in smtd_evaluate");
    if (n_durations > 0 && !durations) return arg_error("null durations in smtd_evaluate");
    return guarded([&] {
        std::vector<smartmtd::TruthAssignment> runs;
        runs.reserve(n_runs);
        for (size_t k = 0; k < n_runs; ++k) runs.push_back(preds[k]->truths);

        std::map<std::string, double> popularity;
        if (claims) {
            const auto pop = smartmtd::compute_popularity(claims->view);
            for (size_t o = 0; o < pop.normalized.size(); ++o)
                popularity[claims->table.object_names[o]] = pop.normalized[o];
        } else {
            const double uniform =
                1.0 / static_cast<double>(gold->truths.entries.empty()
                                              ? 1
                                              : gold->truths.entries.size());
            for (const auto& entry : gold->truths.entries) popularity[entry.object] = uniform;
        }

        smartmtd::MetricsReport report;
        std::tie(report.precision, report.recall) =
            smartmtd::precision_recall(runs, gold->truths);
        report.f1 = smartmtd::f1_score(report.precision, report.recall);
        std::tie(report.weighted_precision, report.weighted_recall) =
            smartmtd::weighted_precision_recall(runs, gold->truths, popularity);
        report.weighted_f1 = smartmtd::f1_score(report.weighted_precision, report.weighted_recall);
        report.runs = static_cast<int>(n_runs);
        report.mean_execution_time =
            n_durations > 0
                ? smartmtd::mean_time(std::vector<double>(durations, durations + n_durations))
                : 0.0;

        out->precision = report.precision;
        out->recall = report.recall;
        out->f1 = report.f1;
        out->weighted_precision = report.weighted_precision;
        out->weighted_recall = report.weighted_recall;
        out->weighted_f1 = report.weighted_f1;
        out->mean_execution_time = report.mean_execution_time;
        out->runs = report.runs;
    });
}

smtd_status smtd_synth(const smtd_synth_spec* spec, smtd_claims** claims_out,
                       smtd_truths** gold_out) {
    if (!spec || !claims_out || !gold_out) return arg_error("null argument to smtd_synth");
    return guarded([&] {
        auto [table, gold] = smartmtd::generate(to_synth_spec(*spec));
        auto claims_handle = std::make_unique<smtd_claims>();
        claims_handle->table = std::move(table);
        claims_handle->view = smartmtd::derive_view(claims_handle->table);
        auto gold_handle = std::make_unique<smtd_truths>();
        gold_handle->truths = std::move(gold);
        *claims_out = claims_handle.release();
        *gold_out = gold_handle.release();
    });
}

} // extern "C"
