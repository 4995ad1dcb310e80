// Benchmark CLI over the shared library's C interface. Exit codes: 0 on
// success, 2 on usage or input errors, 3 when a run fails to converge (the
// artifacts are still written) or a random walk gives up.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "smartmtd/smartmtd.h"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct ClaimsDeleter {
    void operator()(smtd_claims* p) const { smtd_claims_free(p); }
};
struct TruthsDeleter {
    void operator()(smtd_truths* p) const { smtd_truths_free(p); }
};
struct ResultDeleter {
    void operator()(smtd_result* p) const { smtd_result_free(p); }
};
using ClaimsPtr = std::unique_ptr<smtd_claims, ClaimsDeleter>;
using TruthsPtr = std::unique_ptr<smtd_truths, TruthsDeleter>;
using ResultPtr = std::unique_ptr<smtd_result, ResultDeleter>;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

uint64_t fnv1a64(const std::string& text) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

int fail(smtd_status status) {
    std::fprintf(stderr, "error: %s\n", smtd_last_error());
    return status == SMTD_ERR_CONVERGENCE ? 3 : 2;
}

int fail_msg(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 2;
}

bool write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

void note_artifact(const fs::path& path) { std::printf("wrote %s\n", path.string().c_str()); }

const std::vector<std::string> kMethods = {"smartmtd", "smartmtd-core", "smartmtd-c",
                                           "smartmtd-p", "voting", "sums", "avglog"};

struct RunOptions {
    std::string claims_path;
    std::string method = "smartmtd";
    std::string out_dir = "out";
    std::string manifest_path;
    bool dump_graphs = false;
    smtd_config config{};
};

void add_engine_flags(CLI::App* cmd, smtd_config& config) {
    cmd->add_option("--beta", config.beta, "edge smoothing weight, in [0, 1)")
        ->capture_default_str();
    cmd->add_option("--delta", config.delta, "outer-loop convergence threshold")
        ->capture_default_str();
    cmd->add_option("--pp-max", config.pp_max, "anchor for the top positive precision")
        ->capture_default_str();
    cmd->add_option("--np-max", config.np_max, "anchor for the top negative precision")
        ->capture_default_str();
    cmd->add_option("--pc-max", config.pc_max, "anchor for the top positive dependence")
        ->capture_default_str();
    cmd->add_option("--nc-max", config.nc_max, "anchor for the top negative dependence")
        ->capture_default_str();
    cmd->add_option("--max-iters", config.max_outer_iters,
                    "outer iteration cap (score iteration cap for sums/avglog)")
        ->capture_default_str();
    cmd->add_option("--walk-tol", config.walk_tol, "random-walk residual bound")
        ->capture_default_str();
    cmd->add_option("--walk-max-iters", config.walk_max_iters, "random-walk iteration cap")
        ->capture_default_str();
    cmd->add_option("--threads", config.threads, "worker threads (does not affect results)")
        ->capture_default_str();
}

// Engine fields that determine outputs; threads deliberately excluded so
// thread sweeps share a tag.
void config_payload(std::ostringstream& s, const smtd_config& config) {
    s << "beta=" << fmt_double(config.beta) << '\n'
      << "delta=" << fmt_double(config.delta) << '\n'
      << "pp_max=" << fmt_double(config.pp_max) << '\n'
      << "np_max=" << fmt_double(config.np_max) << '\n'
      << "pc_max=" << fmt_double(config.pc_max) << '\n'
      << "nc_max=" << fmt_double(config.nc_max) << '\n'
      << "max_iters=" << config.max_outer_iters << '\n'
      << "walk_tol=" << fmt_double(config.walk_tol) << '\n'
      << "walk_max_iters=" << config.walk_max_iters << '\n';
}

// Everything that determines the outputs; threads and the output directory
// deliberately excluded so reruns and thread sweeps share a tag.
std::string run_hash_payload(const RunOptions& opt) {
    std::ostringstream s;
    s << "command=run\n"
      << "version=" << smtd_version() << '\n'
      << "claims=" << opt.claims_path << '\n'
      << "method=" << opt.method << '\n';
    config_payload(s, opt.config);
    return s.str();
}

ordered_json run_manifest(const RunOptions& opt, const std::string& tag) {
    ordered_json m;
    m["command"] = "run";
    m["version"] = smtd_version();
    m["claims"] = opt.claims_path;
    m["method"] = opt.method;
    m["beta"] = opt.config.beta;
    m["delta"] = opt.config.delta;
    m["pp_max"] = opt.config.pp_max;
    m["np_max"] = opt.config.np_max;
    m["pc_max"] = opt.config.pc_max;
    m["nc_max"] = opt.config.nc_max;
    m["max_iters"] = opt.config.max_outer_iters;
    m["walk_tol"] = opt.config.walk_tol;
    m["walk_max_iters"] = opt.config.walk_max_iters;
    m["threads"] = opt.config.threads;
    m["out_dir"] = opt.out_dir;
    m["dump_graphs"] = opt.dump_graphs;
    m["manifest_hash"] = tag;
    return m;
}

// Fills options from a previously written manifest; flags passed explicitly
// on this invocation win.
int apply_run_manifest(CLI::App* cmd, RunOptions& opt) {
    std::ifstream in(opt.manifest_path);
    if (!in) return fail_msg("cannot read manifest '" + opt.manifest_path + "'");
    ordered_json m;
    try {
        in >> m;
    } catch (const nlohmann::json::exception& e) {
        return fail_msg("malformed manifest '" + opt.manifest_path + "': " + e.what());
    }
    if (m.value("command", "") != "run")
        return fail_msg("manifest '" + opt.manifest_path + "' does not describe a run");

    try {
        auto take_str = [&](const char* flag, const char* key, std::string& dst) {
            if (!cmd->count(flag) && m.contains(key)) dst = m[key].get<std::string>();
        };
        auto take_double = [&](const char* flag, const char* key, double& dst) {
            if (!cmd->count(flag) && m.contains(key)) dst = m[key].get<double>();
        };
        auto take_int = [&](const char* flag, const char* key, int& dst) {
            if (!cmd->count(flag) && m.contains(key)) dst = m[key].get<int>();
        };
        take_str("--claims", "claims", opt.claims_path);
        take_str("--method", "method", opt.method);
        take_str("--out", "out_dir", opt.out_dir);
        take_double("--beta", "beta", opt.config.beta);
        take_double("--delta", "delta", opt.config.delta);
        take_double("--pp-max", "pp_max", opt.config.pp_max);
        take_double("--np-max", "np_max", opt.config.np_max);
        take_double("--pc-max", "pc_max", opt.config.pc_max);
        take_double("--nc-max", "nc_max", opt.config.nc_max);
        take_int("--max-iters", "max_iters", opt.config.max_outer_iters);
        take_double("--walk-tol", "walk_tol", opt.config.walk_tol);
        take_int("--walk-max-iters", "walk_max_iters", opt.config.walk_max_iters);
        take_int("--threads", "threads", opt.config.threads);
        if (!cmd->count("--dump-graphs") && m.contains("dump_graphs"))
            opt.dump_graphs = m["dump_graphs"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        return fail_msg("manifest '" + opt.manifest_path + "' has a wrong-typed field: " +
                        e.what());
    }
    if (opt.claims_path.empty()) return fail_msg("manifest carries no claims path");
    return 0;
}

std::string report_text(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::ostringstream out;
    for (const auto& [key, value] : rows) out << key << '=' << value << '\n';
    return out.str();
}

int do_run(CLI::App* cmd, RunOptions opt) {
    if (!opt.manifest_path.empty()) {
        int rc = apply_run_manifest(cmd, opt);
        if (rc != 0) return rc;
    }
    if (opt.claims_path.empty()) return fail_msg("run needs --claims (or --manifest)");

    const std::string tag = hex64(fnv1a64(run_hash_payload(opt)));

    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) return fail_msg("cannot create output directory '" + opt.out_dir + "'");
    const fs::path dir(opt.out_dir);

    smtd_claims* claims_raw = nullptr;
    smtd_status st = smtd_claims_load(opt.claims_path.c_str(), &claims_raw);
    if (st != SMTD_OK) return fail(st);
    ClaimsPtr claims(claims_raw);

    std::vector<std::pair<std::string, std::string>> report;
    report.emplace_back("method", opt.method);
    report.emplace_back("claims", opt.claims_path);
    report.emplace_back("manifest_hash", tag);
    report.emplace_back("sources", std::to_string(smtd_claims_num_sources(claims.get())));
    report.emplace_back("objects", std::to_string(smtd_claims_num_objects(claims.get())));
    report.emplace_back("values", std::to_string(smtd_claims_num_values(claims.get())));
    report.emplace_back("rows", std::to_string(smtd_claims_num_rows(claims.get())));

    const bool engine = opt.method.rfind("smartmtd", 0) == 0;
    if (opt.dump_graphs && !engine)
        return fail_msg("--dump-graphs needs an engine method, not '" + opt.method + "'");
    bool converged = true;

    if (engine) {
        smtd_config config = opt.config;
        config.use_dependence = opt.method == "smartmtd" || opt.method == "smartmtd-c";
        config.use_popularity = opt.method == "smartmtd" || opt.method == "smartmtd-p";

        smtd_result* result_raw = nullptr;
        st = smtd_run(claims.get(), &config, &result_raw);
        if (st != SMTD_OK) return fail(st);
        ResultPtr result(result_raw);

        const fs::path truths_path = dir / "truths.tsv";
        st = smtd_truths_save(smtd_result_truths(result.get()), truths_path.string().c_str(),
                              tag.c_str());
        if (st != SMTD_OK) return fail(st);
        note_artifact(truths_path);

        const fs::path profile_path = dir / "source_profile.tsv";
        st = smtd_result_save_profile(result.get(), profile_path.string().c_str(), tag.c_str());
        if (st != SMTD_OK) return fail(st);
        note_artifact(profile_path);

        if (opt.dump_graphs) {
            const fs::path pos_path = dir / "supportive_positive.tsv";
            const fs::path neg_path = dir / "supportive_negative.tsv";
            st = smtd_result_save_graphs(result.get(), pos_path.string().c_str(),
                                         neg_path.string().c_str(), tag.c_str());
            if (st != SMTD_OK) return fail(st);
            note_artifact(pos_path);
            note_artifact(neg_path);
        }

        converged = smtd_result_converged(result.get()) != 0;
        report.emplace_back("iterations", std::to_string(smtd_result_iterations(result.get())));
        report.emplace_back("converged", converged ? "true" : "false");
        report.emplace_back("final_cosine_diff",
                            fmt_double(smtd_result_cosine_diff(result.get())));
        report.emplace_back("wall_seconds", fmt_double(smtd_result_wall_seconds(result.get())));

        const size_t n_empty = smtd_result_num_empty_objects(result.get());
        report.emplace_back("empty_truth_objects", std::to_string(n_empty));
        if (n_empty > 0) {
            std::string names;
            for (size_t i = 0; i < n_empty && i < 8; ++i) {
                if (i) names += ", ";
                names += smtd_result_empty_object(result.get(), i);
            }
            if (n_empty > 8) names += ", ...";
            std::fprintf(stderr, "warning: no value won for %zu object(s): %s\n", n_empty,
                         names.c_str());
        }
        if (!converged)
            std::fprintf(stderr,
                         "warning: stopped at the iteration cap (%d) with cosine diff %s\n",
                         opt.config.max_outer_iters,
                         fmt_double(smtd_result_cosine_diff(result.get())).c_str());
    } else {
        const auto started = std::chrono::steady_clock::now();
        smtd_truths* truths_raw = nullptr;
        if (opt.method == "voting") {
            st = smtd_voting(claims.get(), &truths_raw);
        } else if (opt.method == "sums") {
            st = smtd_sums(claims.get(), opt.config.max_outer_iters, 1e-6, &truths_raw);
        } else {
            st = smtd_avg_log(claims.get(), opt.config.max_outer_iters, 1e-6, &truths_raw);
        }
        if (st != SMTD_OK) return fail(st);
        TruthsPtr truths(truths_raw);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        const fs::path truths_path = dir / "truths.tsv";
        st = smtd_truths_save(truths.get(), truths_path.string().c_str(), tag.c_str());
        if (st != SMTD_OK) return fail(st);
        note_artifact(truths_path);
        report.emplace_back("wall_seconds", fmt_double(wall));
    }

    const fs::path report_path = dir / "run_report.txt";
    if (!write_text(report_path, report_text(report)))
        return fail_msg("cannot write '" + report_path.string() + "'");
    note_artifact(report_path);

    const fs::path manifest_path = dir / "manifest.json";
    if (!write_text(manifest_path, run_manifest(opt, tag).dump(2) + "\n"))
        return fail_msg("cannot write '" + manifest_path.string() + "'");
    note_artifact(manifest_path);

    return converged ? 0 : 3;
}

struct EvalOptions {
    std::string gold_path;
    std::vector<std::string> pred_paths;
    std::string claims_path;
    std::vector<double> durations;
    std::string out_path;
    std::string method;
    int runs = 1;
    bool table = false;
    smtd_config config{};
};

std::string metrics_table(const smtd_metrics& metrics) {
    std::ostringstream out;
    auto row = [&out](const char* label, const std::string& value) {
        std::string padded(label);
        padded.resize(22, ' ');
        out << padded << value << '\n';
    };
    row("precision", fmt_double(metrics.precision));
    row("recall", fmt_double(metrics.recall));
    row("f1", fmt_double(metrics.f1));
    row("weighted precision", fmt_double(metrics.weighted_precision));
    row("weighted recall", fmt_double(metrics.weighted_recall));
    row("weighted f1", fmt_double(metrics.weighted_f1));
    row("mean execution time", fmt_double(metrics.mean_execution_time) + " s");
    row("runs", std::to_string(metrics.runs));
    return out.str();
}

int do_eval(const EvalOptions& opt) {
    const bool run_method = !opt.method.empty();
    if (run_method) {
        if (!opt.pred_paths.empty())
            return fail_msg("--method and --pred are mutually exclusive");
        if (!opt.durations.empty())
            return fail_msg("--method measures execution times itself; drop --time");
        if (opt.claims_path.empty()) return fail_msg("eval --method needs --claims");
        if (opt.runs < 1) return fail_msg("--runs must be at least 1");
    } else {
        if (opt.pred_paths.empty()) return fail_msg("eval needs --pred or --method");
        if (!opt.durations.empty() && opt.durations.size() != opt.pred_paths.size())
            return fail_msg("--time needs one duration per prediction (" +
                            std::to_string(opt.pred_paths.size()) + " given)");
    }

    smtd_truths* gold_raw = nullptr;
    smtd_status st = smtd_truths_load(opt.gold_path.c_str(), &gold_raw);
    if (st != SMTD_OK) return fail(st);
    TruthsPtr gold(gold_raw);

    ClaimsPtr claims;
    if (!opt.claims_path.empty()) {
        smtd_claims* raw = nullptr;
        st = smtd_claims_load(opt.claims_path.c_str(), &raw);
        if (st != SMTD_OK) return fail(st);
        claims.reset(raw);
    }

    // Keep every owning handle alive until after evaluation.
    std::vector<TruthsPtr> preds;
    std::vector<ResultPtr> results;
    std::vector<const smtd_truths*> pred_views;
    std::vector<double> durations = opt.durations;
    bool all_converged = true;

    if (run_method) {
        const bool engine = opt.method.rfind("smartmtd", 0) == 0;
        smtd_config config = opt.config;
        config.use_dependence = opt.method == "smartmtd" || opt.method == "smartmtd-c";
        config.use_popularity = opt.method == "smartmtd" || opt.method == "smartmtd-p";
        for (int k = 0; k < opt.runs; ++k) {
            const auto started = std::chrono::steady_clock::now();
            if (engine) {
                smtd_result* result_raw = nullptr;
                st = smtd_run(claims.get(), &config, &result_raw);
                if (st != SMTD_OK) return fail(st);
                results.emplace_back(result_raw);
                pred_views.push_back(smtd_result_truths(result_raw));
                if (!smtd_result_converged(result_raw)) all_converged = false;
            } else {
                smtd_truths* truths_raw = nullptr;
                if (opt.method == "voting") {
                    st = smtd_voting(claims.get(), &truths_raw);
                } else if (opt.method == "sums") {
                    st = smtd_sums(claims.get(), opt.config.max_outer_iters, 1e-6, &truths_raw);
                } else {
                    st = smtd_avg_log(claims.get(), opt.config.max_outer_iters, 1e-6,
                                      &truths_raw);
                }
                if (st != SMTD_OK) return fail(st);
                preds.emplace_back(truths_raw);
                pred_views.push_back(truths_raw);
            }
            durations.push_back(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count());
        }
        if (!all_converged)
            std::fprintf(stderr, "warning: %s stopped at the iteration cap (%d)\n",
                         opt.method.c_str(), opt.config.max_outer_iters);
    } else {
        for (const auto& path : opt.pred_paths) {
            smtd_truths* raw = nullptr;
            st = smtd_truths_load(path.c_str(), &raw);
            if (st != SMTD_OK) return fail(st);
            preds.emplace_back(raw);
            pred_views.push_back(raw);
        }
    }

    smtd_metrics metrics{};
    st = smtd_evaluate(pred_views.data(), pred_views.size(), gold.get(), claims.get(),
                       durations.empty() ? nullptr : durations.data(), durations.size(),
                       &metrics);
    if (st != SMTD_OK) return fail(st);

    std::string text = report_text({
        {"precision", fmt_double(metrics.precision)},
        {"recall", fmt_double(metrics.recall)},
        {"f1", fmt_double(metrics.f1)},
        {"weighted_precision", fmt_double(metrics.weighted_precision)},
        {"weighted_recall", fmt_double(metrics.weighted_recall)},
        {"weighted_f1", fmt_double(metrics.weighted_f1)},
        {"mean_execution_time", fmt_double(metrics.mean_execution_time)},
        {"runs", std::to_string(metrics.runs)},
    });
    // The table is a console nicety; files always get the key=value form.
    const std::string shown = opt.table ? metrics_table(metrics) : text;
    std::fputs(shown.c_str(), stdout);
    if (!opt.out_path.empty()) {
        if (!write_text(opt.out_path, text))
            return fail_msg("cannot write '" + opt.out_path + "'");
        note_artifact(opt.out_path);
    }
    return all_converged ? 0 : 3;
}

struct SynthOptions {
    smtd_synth_spec spec{};
    std::string out_dir = "synth_out";
    std::string spec_path;
};

std::string synth_hash_payload(const SynthOptions& opt) {
    std::ostringstream s;
    s << "command=synth\n"
      << "version=" << smtd_version() << '\n'
      << "n_objects=" << opt.spec.n_objects << '\n'
      << "n_sources=" << opt.spec.n_sources << '\n'
      << "truths_min=" << opt.spec.truths_min << '\n'
      << "truths_max=" << opt.spec.truths_max << '\n'
      << "false_pool_size=" << opt.spec.false_pool_size << '\n'
      << "honest_positive_precision=" << fmt_double(opt.spec.honest_positive_precision) << '\n'
      << "honest_negative_precision=" << fmt_double(opt.spec.honest_negative_precision) << '\n'
      << "n_copiers=" << opt.spec.n_copiers << '\n'
      << "copy_fidelity=" << fmt_double(opt.spec.copy_fidelity) << '\n'
      << "coverage_skew=" << fmt_double(opt.spec.coverage_skew) << '\n'
      << "quality_skew=" << fmt_double(opt.spec.quality_skew) << '\n'
      << "rng_seed=" << opt.spec.rng_seed << '\n';
    return s.str();
}

// Fills the generator knobs from a flat key=value file (blank lines and #
// comments ignored, keys as in the manifest); flags passed explicitly on
// this invocation win.
int apply_synth_spec(CLI::App* cmd, SynthOptions& opt) {
    std::ifstream in(opt.spec_path);
    if (!in) return fail_msg("cannot read spec '" + opt.spec_path + "'");

    auto trim = [](const std::string& s) {
        const char* ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    auto parse_int = [](const std::string& v, int& dst) {
        try {
            size_t pos = 0;
            const int n = std::stoi(v, &pos);
            if (pos != v.size()) return false;
            dst = n;
            return true;
        } catch (...) {
            return false;
        }
    };
    auto parse_u64 = [](const std::string& v, uint64_t& dst) {
        try {
            size_t pos = 0;
            const unsigned long long n = std::stoull(v, &pos);
            if (pos != v.size()) return false;
            dst = n;
            return true;
        } catch (...) {
            return false;
        }
    };
    auto parse_double = [](const std::string& v, double& dst) {
        try {
            size_t pos = 0;
            const double n = std::stod(v, &pos);
            if (pos != v.size()) return false;
            dst = n;
            return true;
        } catch (...) {
            return false;
        }
    };
    auto want = [&](const char* flag) { return cmd->count(flag) == 0; };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            return fail_msg("spec '" + opt.spec_path + "' line " + std::to_string(line_no) +
                            ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        bool ok = true;
        if (key == "n_objects") {
            if (want("--objects")) ok = parse_int(value, opt.spec.n_objects);
        } else if (key == "n_sources") {
            if (want("--sources")) ok = parse_int(value, opt.spec.n_sources);
        } else if (key == "truths_min") {
            if (want("--truths-min")) ok = parse_int(value, opt.spec.truths_min);
        } else if (key == "truths_max") {
            if (want("--truths-max")) ok = parse_int(value, opt.spec.truths_max);
        } else if (key == "false_pool_size") {
            if (want("--false-pool")) ok = parse_int(value, opt.spec.false_pool_size);
        } else if (key == "honest_positive_precision") {
            if (want("--honest-positive"))
                ok = parse_double(value, opt.spec.honest_positive_precision);
        } else if (key == "honest_negative_precision") {
            if (want("--honest-negative"))
                ok = parse_double(value, opt.spec.honest_negative_precision);
        } else if (key == "n_copiers") {
            if (want("--copiers")) ok = parse_int(value, opt.spec.n_copiers);
        } else if (key == "copy_fidelity") {
            if (want("--fidelity")) ok = parse_double(value, opt.spec.copy_fidelity);
        } else if (key == "coverage_skew") {
            if (want("--coverage-skew")) ok = parse_double(value, opt.spec.coverage_skew);
        } else if (key == "quality_skew") {
            if (want("--quality-skew")) ok = parse_double(value, opt.spec.quality_skew);
        } else if (key == "rng_seed") {
            if (want("--seed")) ok = parse_u64(value, opt.spec.rng_seed);
        } else {
            return fail_msg("spec '" + opt.spec_path + "' has an unknown key '" + key + "'");
        }
        if (!ok)
            return fail_msg("spec '" + opt.spec_path + "': bad value '" + value + "' for " +
                            key);
    }
    return 0;
}

int do_synth(CLI::App* cmd, SynthOptions opt) {
    if (!opt.spec_path.empty()) {
        int rc = apply_synth_spec(cmd, opt);
        if (rc != 0) return rc;
    }
    const std::string tag = hex64(fnv1a64(synth_hash_payload(opt)));

    smtd_claims* claims_raw = nullptr;
    smtd_truths* gold_raw = nullptr;
    smtd_status st = smtd_synth(&opt.spec, &claims_raw, &gold_raw);
    if (st != SMTD_OK) return fail(st);
    ClaimsPtr claims(claims_raw);
    TruthsPtr gold(gold_raw);

    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) return fail_msg("cannot create output directory '" + opt.out_dir + "'");
    const fs::path dir(opt.out_dir);

    const fs::path claims_path = dir / "claims.tsv";
    st = smtd_claims_save(claims.get(), claims_path.string().c_str(), tag.c_str());
    if (st != SMTD_OK) return fail(st);
    note_artifact(claims_path);

    const fs::path gold_path = dir / "gold.tsv";
    st = smtd_truths_save(gold.get(), gold_path.string().c_str(), tag.c_str());
    if (st != SMTD_OK) return fail(st);
    note_artifact(gold_path);

    ordered_json m;
    m["command"] = "synth";
    m["version"] = smtd_version();
    m["n_objects"] = opt.spec.n_objects;
    m["n_sources"] = opt.spec.n_sources;
    m["truths_min"] = opt.spec.truths_min;
    m["truths_max"] = opt.spec.truths_max;
    m["false_pool_size"] = opt.spec.false_pool_size;
    m["honest_positive_precision"] = opt.spec.honest_positive_precision;
    m["honest_negative_precision"] = opt.spec.honest_negative_precision;
    m["n_copiers"] = opt.spec.n_copiers;
    m["copy_fidelity"] = opt.spec.copy_fidelity;
    m["coverage_skew"] = opt.spec.coverage_skew;
    m["quality_skew"] = opt.spec.quality_skew;
    m["rng_seed"] = opt.spec.rng_seed;
    m["out_dir"] = opt.out_dir;
    m["manifest_hash"] = tag;
    const fs::path manifest_path = dir / "manifest.json";
    if (!write_text(manifest_path, m.dump(2) + "\n"))
        return fail_msg("cannot write '" + manifest_path.string() + "'");
    note_artifact(manifest_path);
    return 0;
}

int do_dump_popularity(const std::string& claims_path, const std::string& out_path) {
    std::ostringstream payload;
    payload << "command=dump-popularity\n"
            << "version=" << smtd_version() << '\n'
            << "claims=" << claims_path << '\n';
    const std::string tag = hex64(fnv1a64(payload.str()));

    smtd_claims* raw = nullptr;
    smtd_status st = smtd_claims_load(claims_path.c_str(), &raw);
    if (st != SMTD_OK) return fail(st);
    ClaimsPtr claims(raw);
    st = smtd_claims_save_popularity(claims.get(), out_path.c_str(), tag.c_str());
    if (st != SMTD_OK) return fail(st);
    note_artifact(out_path);
    return 0;
}

int do_dump_dependence(const std::string& claims_path, const std::string& out_path,
                       const smtd_config& base_config) {
    std::ostringstream payload;
    payload << "command=dump-dependence\n"
            << "version=" << smtd_version() << '\n'
            << "claims=" << claims_path << '\n';
    config_payload(payload, base_config);
    const std::string tag = hex64(fnv1a64(payload.str()));

    smtd_claims* claims_raw = nullptr;
    smtd_status st = smtd_claims_load(claims_path.c_str(), &claims_raw);
    if (st != SMTD_OK) return fail(st);
    ClaimsPtr claims(claims_raw);

    smtd_config config = base_config;
    config.use_dependence = 1;
    smtd_result* result_raw = nullptr;
    st = smtd_run(claims.get(), &config, &result_raw);
    if (st != SMTD_OK) return fail(st);
    ResultPtr result(result_raw);

    st = smtd_result_save_dependence(result.get(), out_path.c_str(), tag.c_str());
    if (st != SMTD_OK) return fail(st);
    note_artifact(out_path);
    if (!smtd_result_converged(result.get())) {
        std::fprintf(stderr, "warning: stopped at the iteration cap (%d)\n",
                     config.max_outer_iters);
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-truth discovery over conflicting claims"};
    app.set_version_flag("--version", std::string(smtd_version()));
    app.require_subcommand(1);

    RunOptions run_opt;
    smtd_config_defaults(&run_opt.config);
    CLI::App* run_cmd = app.add_subcommand("run", "resolve truths from a claims file");
    run_cmd->add_option("--claims", run_opt.claims_path, "claims TSV: source, object, value");
    run_cmd->add_option("--method", run_opt.method, "discovery method")
        ->check(CLI::IsMember(kMethods))
        ->capture_default_str();
    run_cmd->add_option("--out", run_opt.out_dir, "output directory")->capture_default_str();
    run_cmd->add_option("--manifest", run_opt.manifest_path,
                        "rerun from a manifest.json; explicit flags override");
    run_cmd->add_flag("--dump-graphs", run_opt.dump_graphs,
                      "also write the final endorsement graphs (engine methods)");
    add_engine_flags(run_cmd, run_opt.config);

    EvalOptions eval_opt;
    smtd_config_defaults(&eval_opt.config);
    CLI::App* eval_cmd = app.add_subcommand("eval", "score predictions against a gold file");
    eval_cmd->add_option("--gold", eval_opt.gold_path, "gold truths TSV")->required();
    eval_cmd->add_option("--pred", eval_opt.pred_paths, "prediction truths TSV, one per run");
    eval_cmd->add_option("--claims", eval_opt.claims_path,
                         "claims TSV: dataset for --method and popularity weighting "
                         "(uniform when omitted)");
    eval_cmd->add_option("--time", eval_opt.durations, "per-run execution seconds");
    eval_cmd->add_option("--out", eval_opt.out_path, "also write the report here");
    eval_cmd
        ->add_option("--method", eval_opt.method,
                     "run this method on --claims instead of reading --pred files")
        ->check(CLI::IsMember(kMethods));
    eval_cmd->add_option("--runs", eval_opt.runs, "repetitions of --method, timed per run")
        ->capture_default_str();
    eval_cmd->add_flag("--table", eval_opt.table,
                       "print an aligned table instead of key=value lines");
    add_engine_flags(eval_cmd, eval_opt.config);

    SynthOptions synth_opt;
    smtd_synth_spec_defaults(&synth_opt.spec);
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
    synth_cmd->add_option("--objects", synth_opt.spec.n_objects, "object count")
        ->capture_default_str();
    synth_cmd->add_option("--sources", synth_opt.spec.n_sources, "source count")
        ->capture_default_str();
    synth_cmd->add_option("--truths-min", synth_opt.spec.truths_min, "min planted truths")
        ->capture_default_str();
    synth_cmd->add_option("--truths-max", synth_opt.spec.truths_max, "max planted truths")
        ->capture_default_str();
    synth_cmd->add_option("--false-pool", synth_opt.spec.false_pool_size,
                          "wrong values available per object")
        ->capture_default_str();
    synth_cmd
        ->add_option("--honest-positive", synth_opt.spec.honest_positive_precision,
                     "honest positive precision")
        ->capture_default_str();
    synth_cmd
        ->add_option("--honest-negative", synth_opt.spec.honest_negative_precision,
                     "honest negative precision")
        ->capture_default_str();
    synth_cmd->add_option("--copiers", synth_opt.spec.n_copiers, "sources copying source 0")
        ->capture_default_str();
    synth_cmd->add_option("--fidelity", synth_opt.spec.copy_fidelity, "per-value copy chance")
        ->capture_default_str();
    synth_cmd->add_option("--coverage-skew", synth_opt.spec.coverage_skew,
                          "long-tail object coverage exponent")
        ->capture_default_str();
    synth_cmd->add_option("--quality-skew", synth_opt.spec.quality_skew,
                          "error inflation towards unpopular objects")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_opt.spec.rng_seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_opt.out_dir, "output directory")->capture_default_str();
    synth_cmd->add_option("--spec", synth_opt.spec_path,
                          "key=value spec file; explicit flags override");

    std::string pop_claims, pop_out = "popularity.tsv";
    CLI::App* pop_cmd = app.add_subcommand("dump-popularity", "write object popularity");
    pop_cmd->add_option("--claims", pop_claims, "claims TSV")->required();
    pop_cmd->add_option("--out", pop_out, "output TSV path")->capture_default_str();

    std::string dep_claims, dep_out = "dependence.tsv";
    smtd_config dep_config{};
    smtd_config_defaults(&dep_config);
    CLI::App* dep_cmd =
        app.add_subcommand("dump-dependence", "run the engine and write dependence scores");
    dep_cmd->add_option("--claims", dep_claims, "claims TSV")->required();
    dep_cmd->add_option("--out", dep_out, "output TSV path")->capture_default_str();
    add_engine_flags(dep_cmd, dep_config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run_cmd->parsed()) return do_run(run_cmd, std::move(run_opt));
    if (eval_cmd->parsed()) return do_eval(eval_opt);
    if (synth_cmd->parsed()) return do_synth(synth_cmd, std::move(synth_opt));
    if (pop_cmd->parsed()) return do_dump_popularity(pop_claims, pop_out);
    if (dep_cmd->parsed()) return do_dump_dependence(dep_claims, dep_out, dep_config);
    return 2;
}
