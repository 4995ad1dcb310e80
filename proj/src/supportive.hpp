#pragma once
// +/- supportive agreement graphs: endorsement between sources from shared
// positive claims and shared negative claims, damped by dependence and
// weighted by object popularity. The random walk over each graph yields the
// two-sided source precision.

#include <utility>

#include "graph.hpp"
#include "popularity.hpp"
#include "state.hpp"

namespace smartmtd {

// |O_s1 ∩ O_s2| for every ordered source pair; static per dataset.
struct CommonObjects {
    int n = 0;
    std::vector<int> counts; // n*n row-major

    int at(SourceId a, SourceId b) const { return counts[static_cast<size_t>(a) * n + b]; }
};

CommonObjects count_common_objects(const DerivedView& view);

// Agreement on one object, as local value indexes (both sources by slot).
// Positive agreement: intersection of the two positive claim sets.
// Negative agreement: universe minus the union of them.
std::vector<int> positive_agreement(const ObjectView& ov, int slot1, int slot2);
std::vector<int> negative_agreement(const ObjectView& ov, int slot1, int slot2);

// Endorsement sums over all common objects of the ordered pair. An empty
// common set yields 0. The negative side skips objects where s2 disclaims
// nothing. Reference path for tests; the graph builder accumulates the
// same sums row-by-row.
double positive_endorsement(const DerivedView& view, const ConfidenceTable& conf,
                            const PopularityTable& pop, const DependenceMap& dep, SourceId s1,
                            SourceId s2);
double negative_endorsement(const DerivedView& view, const ConfidenceTable& conf,
                            const PopularityTable& pop, const DependenceMap& dep, SourceId s1,
                            SourceId s2);

// Edge weight beta + (1-beta) * endorsement / |O_s1 ∩ O_s2| on every ordered
// pair (bare beta when the pair shares no object), rows normalized.
// Returns (+graph, -graph).
std::pair<EndorsementGraph, EndorsementGraph> build_supportive_graphs(
    const DerivedView& view, const ConfidenceTable& conf, const PopularityTable& pop,
    const DependenceMap& dep, const CommonObjects& common, double beta, int threads);

// Walks both graphs and anchors the visit probabilities to pp_max / np_max.
SourceProfile derive_precision(const EndorsementGraph& positive_graph,
                               const EndorsementGraph& negative_graph, double pp_max,
                               double np_max, const WalkParams& walk);

} // namespace smartmtd
