#include "supportive.hpp"

#include <algorithm>
#include <cstddef>

#include "errors.hpp"
#include "parallel.hpp"

namespace smartmtd {

namespace {

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Common objects of two sources as (object, slot1, slot2) triples. Both claim
// lists are sorted by object id.
struct CommonObject {
    ObjectId object;
    int slot1;
    int slot2;
};

std::vector<CommonObject> common_objects_of(const DerivedView& view, SourceId s1, SourceId s2) {
    const auto& o1 = view.objects_of_source[s1];
    const auto& o2 = view.objects_of_source[s2];
    std::vector<CommonObject> out;
    size_t i = 0, j = 0;
    while (i < o1.size() && j < o2.size()) {
        if (o1[i].first < o2[j].first) {
            ++i;
        } else if (o2[j].first < o1[i].first) {
            ++j;
        } else {
            out.push_back({o1[i].first, o1[i].second, o2[j].second});
            ++i;
            ++j;
        }
    }
    return out;
}

double positive_term(const ObjectView& ov, const ConfidenceTable& conf, ObjectId o,
                     const PopularityTable& pop, const DependenceMap& dep, int slot1, int slot2) {
    auto agreed = positive_agreement(ov, slot1, slot2);
    if (agreed.empty()) return 0.0;
    double prod = 1.0;
    for (int lv : agreed) prod *= conf.c_false[o][lv];
    double share = static_cast<double>(agreed.size()) / ov.positive[slot2].size();
    return share * (1.0 - prod) * pop.normalized[o] * (1.0 - dep.positive[o][slot1]);
}

double negative_term(const ObjectView& ov, const ConfidenceTable& conf, ObjectId o,
                     const PopularityTable& pop, const DependenceMap& dep, int slot1, int slot2) {
    if (ov.negative[slot2].empty()) return 0.0;
    auto agreed = negative_agreement(ov, slot1, slot2);
    if (agreed.empty()) return 0.0;
    double prod = 1.0;
    for (int lv : agreed) prod *= conf.c_true[o][lv];
    double share = static_cast<double>(agreed.size()) / ov.negative[slot2].size();
    return share * (1.0 - prod) * pop.normalized[o] * (1.0 - dep.negative[o][slot1]);
}

} // namespace

CommonObjects count_common_objects(const DerivedView& view) {
    CommonObjects common;
    common.n = static_cast<int>(view.objects_of_source.size());
    common.counts.assign(static_cast<size_t>(common.n) * common.n, 0);
    for (const auto& ov : view.objects) {
        for (size_t i = 0; i < ov.sources.size(); ++i) {
            for (size_t j = 0; j < ov.sources.size(); ++j) {
                if (i == j) continue;
                ++common.counts[static_cast<size_t>(ov.sources[i]) * common.n + ov.sources[j]];
            }
        }
    }
    return common;
}

std::vector<int> positive_agreement(const ObjectView& ov, int slot1, int slot2) {
    return sorted_intersection(ov.positive[slot1], ov.positive[slot2]);
}

std::vector<int> negative_agreement(const ObjectView& ov, int slot1, int slot2) {
    return sorted_intersection(ov.negative[slot1], ov.negative[slot2]);
}

double positive_endorsement(const DerivedView& view, const ConfidenceTable& conf,
                            const PopularityTable& pop, const DependenceMap& dep, SourceId s1,
                            SourceId s2) {
    double sum = 0.0;
    for (const auto& c : common_objects_of(view, s1, s2))
        sum += positive_term(view.objects[c.object], conf, c.object, pop, dep, c.slot1, c.slot2);
    return sum;
}

double negative_endorsement(const DerivedView& view, const ConfidenceTable& conf,
                            const PopularityTable& pop, const DependenceMap& dep, SourceId s1,
                            SourceId s2) {
    double sum = 0.0;
    for (const auto& c : common_objects_of(view, s1, s2))
        sum += negative_term(view.objects[c.object], conf, c.object, pop, dep, c.slot1, c.slot2);
    return sum;
}

std::pair<EndorsementGraph, EndorsementGraph> build_supportive_graphs(
    const DerivedView& view, const ConfidenceTable& conf, const PopularityTable& pop,
    const DependenceMap& dep, const CommonObjects& common, double beta, int threads) {
    const int n = static_cast<int>(view.objects_of_source.size());
    EndorsementGraph positive_graph, negative_graph;
    positive_graph.vertices.resize(n);
    negative_graph.vertices.resize(n);
    for (int s = 0; s < n; ++s) positive_graph.vertices[s] = negative_graph.vertices[s] = s;
    positive_graph.weights.assign(static_cast<size_t>(n) * n, 0.0);
    negative_graph.weights.assign(static_cast<size_t>(n) * n, 0.0);

    parallel_for(n, threads, [&](int s1) {
        for (int s2 = 0; s2 < n; ++s2) {
            if (s1 == s2) continue;
            double pos = beta;
            double neg = beta;
            const int shared = common.at(s1, s2);
            if (shared > 0) {
                double a = 0.0, a_neg = 0.0;
                for (const auto& c : common_objects_of(view, s1, s2)) {
                    const ObjectView& ov = view.objects[c.object];
                    a += positive_term(ov, conf, c.object, pop, dep, c.slot1, c.slot2);
                    a_neg += negative_term(ov, conf, c.object, pop, dep, c.slot1, c.slot2);
                }
                pos += (1.0 - beta) * a / shared;
                neg += (1.0 - beta) * a_neg / shared;
            }
            positive_graph.weights[static_cast<size_t>(s1) * n + s2] = pos;
            negative_graph.weights[static_cast<size_t>(s1) * n + s2] = neg;
        }
    });

    row_normalize(positive_graph);
    row_normalize(negative_graph);
    return {std::move(positive_graph), std::move(negative_graph)};
}

SourceProfile derive_precision(const EndorsementGraph& positive_graph,
                               const EndorsementGraph& negative_graph, double pp_max,
                               double np_max, const WalkParams& walk) {
    SourceProfile profile;
    profile.tau = normalize_to_precision(stationary(positive_graph, walk), pp_max);
    profile.tau_tilde = normalize_to_precision(stationary(negative_graph, walk), np_max);
    return profile;
}

} // namespace smartmtd
