#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "errors.hpp"
#include "tsv.hpp"

namespace smartmtd {

void row_normalize(EndorsementGraph& graph) {
    const int n = graph.size();
    if (n <= 1) return;
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += graph.at(i, j);
        if (sum <= 0.0)
            throw InternalError("row " + std::to_string(i) +
                                " has zero out-mass; smoothing factor too small");
        for (int j = 0; j < n; ++j) graph.at(i, j) /= sum;
    }
}

std::vector<double> stationary(const EndorsementGraph& graph, const WalkParams& params) {
    const int n = graph.size();
    if (n == 0) return {};
    if (n == 1) return {1.0};

    std::vector<double> pi(n, 1.0 / n);
    std::vector<double> next(n, 0.0);
    double residual = 0.0;
    for (int iter = 0; iter < params.max_iters; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double p = pi[i];
            const double* row = &graph.weights[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) next[j] += p * row[j];
        }
        residual = 0.0;
        double mass = 0.0;
        for (int j = 0; j < n; ++j) {
            residual += std::abs(next[j] - pi[j]);
            mass += next[j];
        }
        for (int j = 0; j < n; ++j) next[j] /= mass; // guard against drift
        if (residual <= params.tol) return pi;       // pi itself meets the bound
        pi.swap(next);
    }
    throw ConvergenceError("random walk did not converge within " +
                               std::to_string(params.max_iters) +
                               " iterations (residual " + format_double(residual) + ")",
                           residual);
}

std::vector<double> normalize_to_precision(const std::vector<double>& dist, double anchor) {
    double max_p = 0.0;
    for (double p : dist) max_p = std::max(max_p, p);
    if (max_p <= 0.0) throw InternalError("degenerate stationary distribution (all zero)");
    std::vector<double> out(dist.size());
    const double rate = anchor / max_p;
    for (size_t i = 0; i < dist.size(); ++i) out[i] = dist[i] * rate;
    return out;
}

void write_graph(const EndorsementGraph& graph, const std::vector<std::string>& source_names,
                 std::ostream& out, const std::string& tag) {
    out << tsv_comment_header(tag);
    out << "from\tto\tweight\n";
    const int n = graph.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out << source_names[graph.vertices[i]] << '\t' << source_names[graph.vertices[j]]
                << '\t' << format_double(graph.at(i, j)) << '\n';
        }
}

} // namespace smartmtd
