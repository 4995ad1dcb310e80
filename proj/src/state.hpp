#pragma once
// Iteration state passed between the engine phases: per-value confidence,
// two-sided per-source precision, and per-(source, object) dependence.

#include <vector>

#include "claims.hpp"

namespace smartmtd {

// c_true[o][lv] / c_false[o][lv] indexed by object id and local value index
// within that object's universe. Initialized complementary; the update
// equations keep them complementary as an algebraic identity.
struct ConfidenceTable {
    std::vector<std::vector<double>> c_true;
    std::vector<std::vector<double>> c_false;
};

// tau / tau_tilde indexed by SourceId: positive and negative precision,
// anchored to pp_max / np_max after each walk.
struct SourceProfile {
    std::vector<double> tau;
    std::vector<double> tau_tilde;

    size_t num_sources() const { return tau.size(); }
};

// positive[o][slot] / negative[o][slot] aligned with the view's per-object
// source slots: dependence of that source's positive / negative claims on o.
struct DependenceMap {
    std::vector<std::vector<double>> positive;
    std::vector<std::vector<double>> negative;

    static DependenceMap zeros(const DerivedView& view);
};

} // namespace smartmtd
