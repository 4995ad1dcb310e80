#pragma once
// Iterated truth-discovery engine: initialization, the outer loop over
// dependence, precision, and confidence, and final truth extraction.

#include <string>
#include <vector>

#include "claims.hpp"
#include "graph.hpp"
#include "popularity.hpp"
#include "state.hpp"

namespace smartmtd {

struct EngineConfig {
    double beta = 0.1;   // smoothing weight on every graph edge, in [0, 1)
    double delta = 1e-4; // outer-loop convergence threshold on cosine difference
    double pp_max = 1.0; // anchor for the top positive precision
    double np_max = 0.9; // anchor for the top negative precision
    double pc_max = 1.0; // anchor for the top positive dependence
    double nc_max = 0.8; // anchor for the top negative dependence
    int max_outer_iters = 100;
    WalkParams walk;
    int threads = 1;
    // Model variants: drop copy detection and/or popularity weighting.
    bool use_dependence = true;
    bool use_popularity = true;
    // Capture per-iteration state (for equivalence tests); costly on big runs.
    bool record_trace = false;

    void validate() const; // throws ConfigError naming the offending field
};

struct IterationTrace {
    DependenceMap dependence;
    SourceProfile profile;
    ConfidenceTable confidence;
    double cosine_diff; // vs previous iteration; 1.0 on the first
};

struct RunResult {
    TruthAssignment truths;
    SourceProfile profile;
    DependenceMap dependence;
    ConfidenceTable confidence;
    PopularityTable popularity;
    // The row-normalized endorsement graphs behind the final precision walk.
    EndorsementGraph supportive_positive;
    EndorsementGraph supportive_negative;
    int iterations = 0;
    bool converged = false;
    double final_cosine_diff = 1.0;
    double wall_seconds = 0.0;
    // Largest |C_v + C_tilde_v - 1| observed after any confidence update.
    double max_complementarity_residual = 0.0;
    std::vector<std::string> empty_truth_objects; // every value tied or losing
    std::vector<IterationTrace> trace;            // filled when record_trace
};

ConfidenceTable initialize_confidence(const DerivedView& view);
ConfidenceTable update_confidence(const DerivedView& view, const SourceProfile& profile);

// 1 - cosine similarity of (tau | tau_tilde) flattened over sources.
double cosine_difference(const SourceProfile& prev, const SourceProfile& curr);
bool has_converged(const SourceProfile& prev, const SourceProfile& curr, double delta);

// Strict C_v > C_tilde_v. Objects whose selected set is empty are appended
// to *empty_objects when given.
TruthAssignment extract_truths(const ClaimTable& claims, const DerivedView& view,
                               const ConfidenceTable& conf,
                               std::vector<std::string>* empty_objects = nullptr);

// Full run. Throws ConfigError on invalid config, ConvergenceError when a
// random walk fails; hitting max_outer_iters is NOT an error (the result
// comes back with converged == false). The second form reuses an already
// derived view.
RunResult run(const ClaimTable& claims, const EngineConfig& config);
RunResult run(const ClaimTable& claims, const DerivedView& view, const EngineConfig& config);

void write_profile(const SourceProfile& profile, const std::vector<std::string>& source_names,
                   std::ostream& out, const std::string& tag = "");

} // namespace smartmtd
