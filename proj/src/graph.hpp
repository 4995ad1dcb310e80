#pragma once
// Dense weighted endorsement graphs and the fixed-point (FPC) random walk
// shared by the supportive and malicious agreement graphs: row-normalize
// edge weights into transition probabilities, power-iterate to the
// stationary visit distribution, then rescale so the most-visited vertex
// carries the anchor value.

#include <vector>

#include "claims.hpp"

namespace smartmtd {

// Complete directed graph over source vertices. Smoothing makes every
// off-diagonal weight at least beta; the diagonal stays 0.
struct EndorsementGraph {
    std::vector<SourceId> vertices; // meaning of each index
    std::vector<double> weights;    // n*n row-major

    EndorsementGraph() = default;
    explicit EndorsementGraph(std::vector<SourceId> verts)
        : vertices(std::move(verts)), weights(vertices.size() * vertices.size(), 0.0) {}

    int size() const { return static_cast<int>(vertices.size()); }
    double& at(int from, int to) { return weights[static_cast<size_t>(from) * vertices.size() + to]; }
    double at(int from, int to) const {
        return weights[static_cast<size_t>(from) * vertices.size() + to];
    }
};

struct WalkParams {
    double tol = 1e-8;     // L1 residual bound on the returned vector
    int max_iters = 10000;
};

// Scales each row to sum to 1, preserving within-row proportions. A row
// with zero out-mass on a multi-vertex graph means smoothing was skipped;
// that throws InternalError. Single-vertex graphs pass through unchanged.
void row_normalize(EndorsementGraph& graph);

// Stationary distribution of the row-stochastic graph, by power iteration
// from the uniform vector. The returned pi satisfies |pi P - pi|_1 <= tol.
// Throws ConvergenceError when max_iters is exhausted.
std::vector<double> stationary(const EndorsementGraph& graph, const WalkParams& params);

// Rescales visit probabilities so the maximum maps to `anchor`; preserves
// argmax and all pairwise ratios.
std::vector<double> normalize_to_precision(const std::vector<double>& dist, double anchor);

// Debug TSV dump: rows `from  to  weight` over named source vertices.
void write_graph(const EndorsementGraph& graph, const std::vector<std::string>& source_names,
                 std::ostream& out, const std::string& tag = "");

} // namespace smartmtd
