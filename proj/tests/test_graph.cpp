#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "reference_impl.hpp"

using namespace smartmtd;

namespace {

EndorsementGraph make_graph(const std::vector<std::vector<double>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<SourceId> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    EndorsementGraph g(verts);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = rows[i][j];
    return g;
}

std::vector<std::vector<double>> transition_rows(const EndorsementGraph& g) {
    std::vector<std::vector<double>> rows(g.size(), std::vector<double>(g.size()));
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) rows[i][j] = g.at(i, j);
    return rows;
}

} // namespace

TEST_CASE("row_normalize rescales each row to unit mass") {
    EndorsementGraph g = make_graph({{0.0, 0.4, 0.2}, {0.1, 0.0, 0.3}, {0.5, 0.5, 0.0}});
    row_normalize(g);
    CHECK(g.at(0, 1) == doctest::Approx(0.4 / 0.6));
    CHECK(g.at(0, 2) == doctest::Approx(0.2 / 0.6));
    CHECK(g.at(1, 0) == doctest::Approx(0.25));
    CHECK(g.at(1, 2) == doctest::Approx(0.75));
    CHECK(g.at(2, 0) == doctest::Approx(0.5));
    for (int i = 0; i < 3; ++i) {
        double mass = 0.0;
        for (int j = 0; j < 3; ++j) mass += g.at(i, j);
        CHECK(mass == doctest::Approx(1.0));
        CHECK(g.at(i, i) == 0.0);
    }
}

TEST_CASE("row_normalize maps equal weights to the uniform walk") {
    EndorsementGraph g = make_graph({{0, 7, 7, 7}, {7, 0, 7, 7}, {7, 7, 0, 7}, {7, 7, 7, 0}});
    row_normalize(g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g.at(i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 3.0));
}

TEST_CASE("row_normalize passes single-vertex graphs through") {
    EndorsementGraph g(std::vector<SourceId>{0});
    row_normalize(g); // no throw, nothing to scale
    CHECK(g.at(0, 0) == 0.0);
}

TEST_CASE("row_normalize rejects a zero-mass row") {
    EndorsementGraph g = make_graph({{0.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(row_normalize(g), InternalError);
}

TEST_CASE("stationary distribution of the symmetric two-vertex walk") {
    EndorsementGraph g = make_graph({{0.0, 1.0}, {1.0, 0.0}});
    auto pi = stationary(g, WalkParams{});
    REQUIRE(pi.size() == 2);
    CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("rank-one transition rows converge to the shared row") {
    // Every row identical: the chain mixes in one step and pi equals the row.
    EndorsementGraph g =
        make_graph({{0.1, 0.1, 0.8}, {0.1, 0.1, 0.8}, {0.1, 0.1, 0.8}});
    auto pi = stationary(g, WalkParams{});
    CHECK(pi[0] == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(pi[1] == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(pi[2] == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("hand-solved three-vertex chain") {
    // Balance equations solved by hand for these rows.
    EndorsementGraph g = make_graph({{0.0, 4.0 / 7.0, 3.0 / 7.0},
                                     {0.75, 0.0, 0.25},
                                     {0.75, 0.25, 0.0}});
    auto pi = stationary(g, WalkParams{1e-12, 100000});
    CHECK(pi[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-10));
    CHECK(pi[1] == doctest::Approx(76.0 / 245.0).epsilon(1e-10));
    CHECK(pi[2] == doctest::Approx(64.0 / 245.0).epsilon(1e-10));
}

TEST_CASE("random smoothed graphs agree with the matrix-power oracle") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (double beta : {0.05, 0.1, 0.3}) {
        for (int trial = 0; trial < 70; ++trial) {
            int n = 2 + static_cast<int>(rng() % 7); // 2..8 vertices
            std::vector<SourceId> verts(n);
            for (int i = 0; i < n; ++i) verts[i] = i;
            EndorsementGraph g(verts);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) g.at(i, j) = beta + (1.0 - beta) * unit(rng);
            row_normalize(g);

            auto pi = stationary(g, WalkParams{1e-12, 100000});
            auto oracle = refimpl::matrix_power_stationary(transition_rows(g));

            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(pi[i] - oracle[i]) < 1e-6);
                sum += pi[i];
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
            ++checked;
        }
    }
    CHECK(checked == 210);
}

TEST_CASE("stationary reports non-convergence through ConvergenceError") {
    // Stationary vector far from uniform, so one step cannot reach 1e-30.
    EndorsementGraph g = make_graph({{0.0, 4.0 / 7.0, 3.0 / 7.0},
                                     {0.75, 0.0, 0.25},
                                     {0.75, 0.25, 0.0}});
    CHECK_THROWS_AS(stationary(g, WalkParams{1e-30, 1}), ConvergenceError);
    try {
        stationary(g, WalkParams{1e-30, 1});
    } catch (const ConvergenceError& e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("normalize_to_precision anchors the maximum") {
    auto out = normalize_to_precision({0.6, 0.4}, 1.0);
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == doctest::Approx(2.0 / 3.0));

    auto damped = normalize_to_precision({0.6, 0.4}, 0.9);
    CHECK(damped[0] == doctest::Approx(0.9));
    CHECK(damped[1] == doctest::Approx(0.6));
}

TEST_CASE("write_graph dumps named off-diagonal edges") {
    // Vertex ids index the full name table, as in a per-object subgraph.
    EndorsementGraph g(std::vector<SourceId>{0, 2});
    g.at(0, 1) = 0.75;
    g.at(1, 0) = 0.25;
    g.at(0, 0) = 1.0; // diagonal must not be emitted
    const std::vector<std::string> names{"alpha", "beta", "gamma"};

    std::ostringstream out;
    write_graph(g, names, out, "deadbeef");
    CHECK(out.str() == "# smartmtd/0.1.0 manifest=deadbeef\n"
                       "from\tto\tweight\n"
                       "alpha\tgamma\t0.75\n"
                       "gamma\talpha\t0.25\n");

    std::ostringstream untagged;
    write_graph(g, names, untagged);
    CHECK(untagged.str().rfind("# smartmtd/0.1.0\n", 0) == 0);
}

TEST_CASE("normalize_to_precision keeps ties and singletons at the anchor") {
    auto tied = normalize_to_precision({0.25, 0.25, 0.25, 0.25}, 0.8);
    for (double x : tied) CHECK(x == doctest::Approx(0.8));
    auto single = normalize_to_precision({1.0}, 0.9);
    CHECK(single[0] == doctest::Approx(0.9));
}
