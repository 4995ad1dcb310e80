#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "helpers.hpp"
#include "malicious.hpp"
#include "reference_impl.hpp"

using namespace smartmtd;

namespace {

ConfidenceTable flat_confidence(const DerivedView& view, double c) {
    ConfidenceTable conf;
    for (const ObjectView& ov : view.objects) {
        conf.c_true.emplace_back(ov.universe.size(), c);
        conf.c_false.emplace_back(ov.universe.size(), 1.0 - c);
    }
    return conf;
}

} // namespace

TEST_CASE("beta = 1 floods both per-object graphs to uniform") {
    ClaimTable claims = testfix::cast_claims();
    DerivedView view = derive_view(claims);
    auto [gp, gn] = build_malicious_graphs(view, initialize_confidence(view), 0, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(gp.at(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
            CHECK(gn.at(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
        }
}

TEST_CASE("certainly-true shared values carry no copying signal") {
    // Both sources claim exactly {a}; init confidence gives C(a) = 1, so
    // 1 - prod C_v vanishes and the graph falls back to smoothing.
    ClaimTable claims = testfix::make_claims("s1\to1\ta\ns2\to1\ta\n");
    DerivedView view = derive_view(claims);
    auto [gp, gn] = build_malicious_graphs(view, initialize_confidence(view), 0, 0.1);
    (void)gn;
    CHECK(gp.at(0, 1) == doctest::Approx(1.0));
    CHECK(gp.at(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("half-confidence instance reproduces the worked edge weights") {
    // s1 and s2 share {a, b}; s3 claims {a, b, c}. With every C_v = 0.5 the
    // raw weights on row s1 are 0.775 towards s2 and 0.55 towards s3.
    ClaimTable claims = testfix::make_claims(
        "s1\to1\ta\ns1\to1\tb\n"
        "s2\to1\ta\ns2\to1\tb\n"
        "s3\to1\ta\ns3\to1\tb\ns3\to1\tc\n");
    DerivedView view = derive_view(claims);
    auto [gp, gn] = build_malicious_graphs(view, flat_confidence(view, 0.5), 0, 0.1);
    (void)gn;
    CHECK(gp.at(0, 1) == doctest::Approx(0.5849056603773585).epsilon(1e-12));
    CHECK(gp.at(0, 2) == doctest::Approx(0.41509433962264153).epsilon(1e-12));
}

TEST_CASE("disclaim-nothing sources are skipped on the negative side") {
    // s2 claims the whole universe, so its negative set is empty; building
    // the graphs must not divide by zero and rows stay stochastic.
    ClaimTable claims = testfix::make_claims("s1\to1\ta\ns2\to1\ta\ns2\to1\tb\n");
    DerivedView view = derive_view(claims);
    auto [gp, gn] = build_malicious_graphs(view, flat_confidence(view, 0.5), 0, 0.1);
    (void)gp;
    CHECK(gn.at(0, 1) == doctest::Approx(1.0));
    CHECK(gn.at(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("single-source objects carry zero dependence") {
    ClaimTable claims = testfix::make_claims(
        "s1\to1\ta\n"
        "s2\to1\tb\n"
        "s1\to2\tc\n"); // o2 covered by s1 alone
    DerivedView view = derive_view(claims);
    DependenceMap dep = derive_dependence(view, initialize_confidence(view),
                                          claims.object_names, 1.0, 0.8, 0.1,
                                          WalkParams{}, 1);
    REQUIRE(dep.positive[1].size() == 1);
    CHECK(dep.positive[1][0] == 0.0);
    CHECK(dep.negative[1][0] == 0.0);
    // The contested object still gets walked.
    for (double d : dep.positive[0]) CHECK(d > 0.0);
}

TEST_CASE("identical claim sets at half confidence hit the cap together") {
    ClaimTable claims = testfix::make_claims(
        "s1\to1\ta\ns1\to1\tb\n"
        "s2\to1\ta\ns2\to1\tb\n"
        "s3\to1\ta\ns3\to1\tb\n");
    DerivedView view = derive_view(claims);
    DependenceMap dep = derive_dependence(view, flat_confidence(view, 0.5),
                                          claims.object_names, 1.0, 0.8, 0.1,
                                          WalkParams{1e-12, 100000}, 1);
    for (double d : dep.positive[0]) CHECK(d == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cast instance dependence matches the frozen hand derivation") {
    ClaimTable claims = testfix::cast_claims();
    DerivedView view = derive_view(claims);
    DependenceMap dep = derive_dependence(view, initialize_confidence(view),
                                          claims.object_names, 1.0, 0.8, 0.1,
                                          WalkParams{1e-12, 100000}, 1);
    CHECK(dep.positive[0][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dep.positive[0][1] == doctest::Approx(76.0 / 105.0).epsilon(1e-9));
    CHECK(dep.positive[0][2] == doctest::Approx(64.0 / 105.0).epsilon(1e-9));
    CHECK(dep.negative[0][0] == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(dep.negative[0][1] == doctest::Approx(16.0 / 21.0).epsilon(1e-9));
    CHECK(dep.negative[0][2] == doctest::Approx(8.0 / 21.0).epsilon(1e-9));
}

TEST_CASE("sources sharing uncertain values collect more dependence") {
    // s1 and s2 duplicate each other; s3 and s4 stand alone.
    ClaimTable claims = testfix::make_claims(
        "s1\to1\tx\n"
        "s2\to1\tx\n"
        "s3\to1\ty\n"
        "s4\to1\tz\n");
    DerivedView view = derive_view(claims);
    ConfidenceTable conf = flat_confidence(view, 0.5);
    DependenceMap dep = derive_dependence(view, conf, claims.object_names, 1.0, 0.8,
                                          0.1, WalkParams{1e-12, 100000}, 1);
    const auto& d = dep.positive[0];
    CHECK(d[0] == doctest::Approx(d[1]).epsilon(1e-9));
    CHECK(d[0] > d[2]);
    CHECK(d[0] > d[3]);

    // Cross-check the full vector against the matrix-power oracle.
    auto [gp, gn] = build_malicious_graphs(view, conf, 0, 0.1);
    (void)gn;
    std::vector<std::vector<double>> rows(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = gp.at(i, j);
    auto pi = refimpl::matrix_power_stationary(rows);
    double peak = 0.0;
    for (double p : pi) peak = std::max(peak, p);
    for (int s = 0; s < 4; ++s)
        CHECK(d[s] == doctest::Approx(pi[s] / peak).epsilon(1e-6));
}

TEST_CASE("walk failures name the offending object") {
    ClaimTable claims = testfix::cast_claims();
    DerivedView view = derive_view(claims);
    try {
        derive_dependence(view, initialize_confidence(view), claims.object_names, 1.0,
                          0.8, 0.1, WalkParams{1e-30, 1}, 1);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::string(e.what()).find("harry potter") != std::string::npos);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("dependence rows serialize per source and object") {
    ClaimTable claims = testfix::make_claims("s1\to1\ta\ns2\to1\tb\n");
    DerivedView view = derive_view(claims);
    DependenceMap dep = derive_dependence(view, initialize_confidence(view),
                                          claims.object_names, 1.0, 0.8, 0.1,
                                          WalkParams{}, 1);
    std::ostringstream out;
    write_dependence(view, dep, claims.object_names, claims.source_names, out, "feed");
    std::string text = out.str();
    CHECK(text.rfind("# smartmtd/", 0) == 0);
    CHECK(text.find("manifest=feed") != std::string::npos);
    CHECK(text.find("o1\ts1\t") != std::string::npos);
    CHECK(text.find("o1\ts2\t") != std::string::npos);
}
