#pragma once
// Per-object +/- malicious agreement graphs and the dependence scores they
// induce. Each object with two or more sources gets its own pair of graphs
// over S_o; the walk's visit probabilities, anchored at pc_max / nc_max,
// become per-(source, object) dependence.

#include <iosfwd>
#include <string>
#include <utility>

#include "graph.hpp"
#include "state.hpp"

namespace smartmtd {

// Graph vertices are the slots of S_o in order (vertex i = ov.sources[i]).
std::pair<EndorsementGraph, EndorsementGraph> build_malicious_graphs(const DerivedView& view,
                                                                     const ConfidenceTable& conf,
                                                                     ObjectId o, double beta);

// Runs both walks per multi-source object and anchors to pc_max / nc_max.
// Single-source objects get D = D_tilde = 0. Walk failures are rethrown
// with the offending object's name. object_names indexed by ObjectId.
DependenceMap derive_dependence(const DerivedView& view, const ConfidenceTable& conf,
                                const std::vector<std::string>& object_names, double pc_max,
                                double nc_max, double beta, const WalkParams& walk, int threads);

void write_dependence(const DerivedView& view, const DependenceMap& dep,
                      const std::vector<std::string>& object_names,
                      const std::vector<std::string>& source_names, std::ostream& out,
                      const std::string& tag = "");

} // namespace smartmtd
