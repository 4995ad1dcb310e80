#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "smartmtd/smartmtd.h"

namespace {

const char kCastText[] =
    "s1\tharry potter\tDaniel Radcliffe\n"
    "s1\tharry potter\tEmma Watson\n"
    "s1\tharry potter\tRupert Grint\n"
    "s1\tharry potter\tdaniel radcliffe\n"
    "s2\tharry potter\tEmma Watson\n"
    "s2\tharry potter\tRupert Grint\n"
    "s3\tharry potter\tDaniel Radcliffe\n"
    "s3\tharry potter\tEmma Watson\n"
    "s3\tharry potter\tJonny Depp\n";

smtd_claims* parse_cast() {
    smtd_claims* claims = nullptr;
    REQUIRE(smtd_claims_parse(kCastText, std::strlen(kCastText), &claims) == SMTD_OK);
    REQUIRE(claims != nullptr);
    return claims;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path dir;
    explicit TempDir(const char* name) : dir(name) {
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string path(const char* file) const { return (dir / file).string(); }
};

} // namespace

TEST_CASE("version and defaults") {
    CHECK(std::string(smtd_version()) == "0.1.0");

    smtd_config config{};
    smtd_config_defaults(&config);
    CHECK(config.beta == 0.1);
    CHECK(config.delta == 1e-4);
    CHECK(config.pp_max == 1.0);
    CHECK(config.np_max == 0.9);
    CHECK(config.pc_max == 1.0);
    CHECK(config.nc_max == 0.8);
    CHECK(config.max_outer_iters == 100);
    CHECK(config.walk_tol == 1e-8);
    CHECK(config.walk_max_iters == 10000);
    CHECK(config.threads == 1);
    CHECK(config.use_dependence == 1);
    CHECK(config.use_popularity == 1);

    smtd_synth_spec spec{};
    smtd_synth_spec_defaults(&spec);
    CHECK(spec.n_objects == 20);
    CHECK(spec.n_sources == 15);
    CHECK(spec.false_pool_size == 4);
    CHECK(spec.copy_fidelity == 0.8);
    CHECK(spec.rng_seed == 1);
}

TEST_CASE("parse exposes counts and interned names") {
    smtd_claims* claims = parse_cast();
    CHECK(smtd_claims_num_sources(claims) == 3);
    CHECK(smtd_claims_num_objects(claims) == 1);
    CHECK(smtd_claims_num_values(claims) == 4);
    CHECK(smtd_claims_num_rows(claims) == 8); // case-folded duplicate collapsed
    CHECK(std::string(smtd_claims_source_name(claims, 0)) == "s1");
    CHECK(std::string(smtd_claims_source_name(claims, 2)) == "s3");
    CHECK(std::string(smtd_claims_object_name(claims, 0)) == "harry potter");
    CHECK(smtd_claims_source_name(claims, 99) == nullptr);
    smtd_claims_free(claims);
}

TEST_CASE("malformed text reports a parse error with the line") {
    const char* text = "s1\to1\ta\nbroken-row\n";
    smtd_claims* claims = nullptr;
    CHECK(smtd_claims_parse(text, std::strlen(text), &claims) == SMTD_ERR_PARSE);
    CHECK(std::string(smtd_last_error()).find("line 2") != std::string::npos);
}

TEST_CASE("null arguments are rejected with the function named") {
    smtd_claims* claims = nullptr;
    CHECK(smtd_claims_load(nullptr, &claims) == SMTD_ERR_ARG);
    CHECK(std::string(smtd_last_error()).find("smtd_claims_load") != std::string::npos);
    CHECK(smtd_claims_parse(nullptr, 0, &claims) == SMTD_ERR_ARG);
    CHECK(smtd_run(nullptr, nullptr, nullptr) == SMTD_ERR_ARG);
    smtd_truths* truths = nullptr;
    CHECK(smtd_voting(nullptr, &truths) == SMTD_ERR_ARG);
}

TEST_CASE("missing files surface as IO errors") {
    smtd_claims* claims = nullptr;
    CHECK(smtd_claims_load("definitely_not_here.tsv", &claims) == SMTD_ERR_IO);
    smtd_truths* truths = nullptr;
    CHECK(smtd_truths_load("definitely_not_here.tsv", &truths) == SMTD_ERR_IO);
}

TEST_CASE("full run resolves the cast instance") {
    smtd_claims* claims = parse_cast();
    smtd_config config{};
    smtd_config_defaults(&config);

    smtd_result* result = nullptr;
    REQUIRE(smtd_run(claims, &config, &result) == SMTD_OK);
    CHECK(smtd_result_converged(result) == 1);
    CHECK(smtd_result_iterations(result) >= 2);
    CHECK(smtd_result_cosine_diff(result) < config.delta);
    CHECK(smtd_result_wall_seconds(result) > 0.0);
    CHECK(smtd_result_num_sources(result) == 3);
    CHECK(smtd_result_num_empty_objects(result) == 0);

    const smtd_truths* truths = smtd_result_truths(result);
    REQUIRE(truths != nullptr);
    REQUIRE(smtd_truths_num_objects(truths) == 1);
    CHECK(std::string(smtd_truths_object(truths, 0)) == "harry potter");
    REQUIRE(smtd_truths_num_values(truths, 0) == 3);
    CHECK(std::string(smtd_truths_value(truths, 0, 0)) == "daniel radcliffe");
    CHECK(std::string(smtd_truths_value(truths, 0, 1)) == "emma watson");
    CHECK(std::string(smtd_truths_value(truths, 0, 2)) == "rupert grint");

    double tau[3], tau_tilde[3];
    REQUIRE(smtd_result_profile(result, tau, tau_tilde) == SMTD_OK);
    CHECK(tau[0] == 1.0); // anchored maximum
    for (int s = 0; s < 3; ++s) {
        CHECK(tau[s] > 0.0);
        CHECK(tau_tilde[s] <= 0.9 + 1e-12);
    }
    // Either side may be skipped.
    REQUIRE(smtd_result_profile(result, tau, nullptr) == SMTD_OK);
    REQUIRE(smtd_result_profile(result, nullptr, tau_tilde) == SMTD_OK);

    smtd_result_free(result);
    smtd_claims_free(claims);
}

TEST_CASE("invalid configuration is an ARG error naming the field") {
    smtd_claims* claims = parse_cast();
    smtd_config config{};
    smtd_config_defaults(&config);
    config.beta = 1.5;
    smtd_result* result = nullptr;
    CHECK(smtd_run(claims, &config, &result) == SMTD_ERR_ARG);
    CHECK(std::string(smtd_last_error()).find("beta") != std::string::npos);
    smtd_claims_free(claims);
}

TEST_CASE("iteration cap reports converged = 0 without failing") {
    smtd_claims* claims = parse_cast();
    smtd_config config{};
    smtd_config_defaults(&config);
    config.max_outer_iters = 1;
    smtd_result* result = nullptr;
    REQUIRE(smtd_run(claims, &config, &result) == SMTD_OK);
    CHECK(smtd_result_converged(result) == 0);
    CHECK(smtd_result_iterations(result) == 1);
    smtd_result_free(result);
    smtd_claims_free(claims);
}

TEST_CASE("walk failure maps to the convergence status") {
    smtd_claims* claims = parse_cast();
    smtd_config config{};
    smtd_config_defaults(&config);
    config.walk_tol = 1e-30;
    config.walk_max_iters = 1;
    smtd_result* result = nullptr;
    CHECK(smtd_run(claims, &config, &result) == SMTD_ERR_CONVERGENCE);
    CHECK(std::string(smtd_last_error()).find("harry potter") != std::string::npos);
    smtd_claims_free(claims);
}

TEST_CASE("baselines through the C surface") {
    smtd_claims* claims = parse_cast();

    smtd_truths* truths = nullptr;
    REQUIRE(smtd_voting(claims, &truths) == SMTD_OK);
    REQUIRE(smtd_truths_num_values(truths, 0) == 3);
    CHECK(std::string(smtd_truths_value(truths, 0, 2)) == "jonny depp");
    smtd_truths_free(truths);

    truths = nullptr;
    REQUIRE(smtd_sums(claims, 100, 1e-6, &truths) == SMTD_OK);
    CHECK(smtd_truths_num_objects(truths) == 1);
    smtd_truths_free(truths);

    truths = nullptr;
    REQUIRE(smtd_avg_log(claims, 100, 1e-6, &truths) == SMTD_OK);
    CHECK(smtd_truths_num_objects(truths) == 1);
    smtd_truths_free(truths);

    smtd_claims_free(claims);
}

TEST_CASE("claims and artifacts round-trip through files") {
    TempDir tmp("capi_tmp");
    smtd_claims* claims = parse_cast();

    REQUIRE(smtd_claims_save(claims, tmp.path("claims.tsv").c_str(), "roundtrip") == SMTD_OK);
    CHECK(slurp(tmp.path("claims.tsv")).find("manifest=roundtrip") != std::string::npos);

    smtd_claims* again = nullptr;
    REQUIRE(smtd_claims_load(tmp.path("claims.tsv").c_str(), &again) == SMTD_OK);
    CHECK(smtd_claims_num_sources(again) == smtd_claims_num_sources(claims));
    CHECK(smtd_claims_num_rows(again) == smtd_claims_num_rows(claims));
    smtd_claims_free(again);

    smtd_config config{};
    smtd_config_defaults(&config);
    smtd_result* result = nullptr;
    REQUIRE(smtd_run(claims, &config, &result) == SMTD_OK);

    REQUIRE(smtd_truths_save(smtd_result_truths(result), tmp.path("truths.tsv").c_str(),
                             nullptr) == SMTD_OK);
    smtd_truths* truths = nullptr;
    REQUIRE(smtd_truths_load(tmp.path("truths.tsv").c_str(), &truths) == SMTD_OK);
    CHECK(smtd_truths_num_objects(truths) == 1);
    CHECK(smtd_truths_num_values(truths, 0) == 3);

    REQUIRE(smtd_result_save_profile(result, tmp.path("profile.tsv").c_str(), "t1") == SMTD_OK);
    CHECK(slurp(tmp.path("profile.tsv")).rfind("# smartmtd/", 0) == 0);
    REQUIRE(smtd_result_save_dependence(result, tmp.path("dep.tsv").c_str(), "t1") == SMTD_OK);
    CHECK(slurp(tmp.path("dep.tsv")).find("D_tilde") != std::string::npos);

    REQUIRE(smtd_result_save_graphs(result, tmp.path("pos.tsv").c_str(),
                                    tmp.path("neg.tsv").c_str(), "t1") == SMTD_OK);
    for (const char* name : {"pos.tsv", "neg.tsv"}) {
        const std::string text = slurp(tmp.path(name));
        CHECK(text.find("manifest=t1") != std::string::npos);
        CHECK(text.find("from\tto\tweight") != std::string::npos);
        CHECK(text.find("s1\ts2\t") != std::string::npos);
    }
    // Either side may be skipped with a null path.
    REQUIRE(smtd_result_save_graphs(result, tmp.path("only_pos.tsv").c_str(), nullptr,
                                    nullptr) == SMTD_OK);
    CHECK(slurp(tmp.path("only_pos.tsv")).rfind("# smartmtd/", 0) == 0);
    CHECK(smtd_result_save_graphs(nullptr, "x.tsv", "y.tsv", nullptr) == SMTD_ERR_ARG);

    // Unwritable paths surface as IO errors.
    CHECK(smtd_truths_save(truths, "no_such_dir/x.tsv", nullptr) == SMTD_ERR_IO);
    CHECK(smtd_result_save_graphs(result, "no_such_dir/x.tsv", nullptr, nullptr) ==
          SMTD_ERR_IO);

    smtd_truths_free(truths);
    smtd_result_free(result);
    smtd_claims_free(claims);
}

TEST_CASE("popularity accessors") {
    smtd_claims* claims = parse_cast();
    double pop[1] = {0.0};
    REQUIRE(smtd_claims_popularity(claims, pop) == SMTD_OK);
    CHECK(pop[0] == doctest::Approx(1.0));
    TempDir tmp("capi_pop_tmp");
    REQUIRE(smtd_claims_save_popularity(claims, tmp.path("pop.tsv").c_str(), nullptr) == SMTD_OK);
    CHECK(slurp(tmp.path("pop.tsv")).find("harry potter\t1") != std::string::npos);
    smtd_claims_free(claims);
}

TEST_CASE("evaluation identity and timing") {
    TempDir tmp("capi_eval_tmp");
    const std::string gold_path = tmp.path("gold.tsv");
    {
        std::ofstream out(gold_path);
        out << "o1\ta\no1\tb\no2\tc\n";
    }
    smtd_truths* gold = nullptr;
    REQUIRE(smtd_truths_load(gold_path.c_str(), &gold) == SMTD_OK);

    const smtd_truths* preds[2] = {gold, gold};
    smtd_metrics metrics{};
    double durations[2] = {2.0, 4.0};
    REQUIRE(smtd_evaluate(preds, 2, gold, nullptr, durations, 2, &metrics) == SMTD_OK);
    CHECK(metrics.precision == doctest::Approx(1.0));
    CHECK(metrics.recall == doctest::Approx(1.0));
    CHECK(metrics.f1 == doctest::Approx(1.0));
    // claims == NULL weights uniformly, so weighted equals unweighted.
    CHECK(metrics.weighted_precision == doctest::Approx(metrics.precision));
    CHECK(metrics.weighted_f1 == doctest::Approx(metrics.f1));
    CHECK(metrics.mean_execution_time == doctest::Approx(3.0));
    CHECK(metrics.runs == 2);

    // No durations: timing reports zero.
    REQUIRE(smtd_evaluate(preds, 1, gold, nullptr, nullptr, 0, &metrics) == SMTD_OK);
    CHECK(metrics.mean_execution_time == 0.0);

    smtd_truths_free(gold);
}

TEST_CASE("synthesis honours the spec and rejects infeasible ones") {
    smtd_synth_spec spec{};
    smtd_synth_spec_defaults(&spec);
    spec.n_objects = 6;
    spec.n_sources = 5;
    spec.rng_seed = 9;

    smtd_claims* claims = nullptr;
    smtd_truths* gold = nullptr;
    REQUIRE(smtd_synth(&spec, &claims, &gold) == SMTD_OK);
    CHECK(smtd_claims_num_objects(claims) == 6);
    CHECK(smtd_claims_num_sources(claims) == 5);
    CHECK(smtd_truths_num_objects(gold) == 6);
    smtd_claims_free(claims);
    smtd_truths_free(gold);

    spec.truths_min = 5;
    spec.truths_max = 2;
    claims = nullptr;
    gold = nullptr;
    CHECK(smtd_synth(&spec, &claims, &gold) == SMTD_ERR_INFEASIBLE);
    CHECK(std::string(smtd_last_error()).find("truths") != std::string::npos);
}
