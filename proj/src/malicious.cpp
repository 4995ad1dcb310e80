#include "malicious.hpp"

#include <ostream>

#include "errors.hpp"
#include "parallel.hpp"
#include "supportive.hpp"
#include "tsv.hpp"

namespace smartmtd {

DependenceMap DependenceMap::zeros(const DerivedView& view) {
    DependenceMap dep;
    dep.positive.resize(view.objects.size());
    dep.negative.resize(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        dep.positive[o].assign(view.objects[o].sources.size(), 0.0);
        dep.negative[o].assign(view.objects[o].sources.size(), 0.0);
    }
    return dep;
}

std::pair<EndorsementGraph, EndorsementGraph> build_malicious_graphs(const DerivedView& view,
                                                                     const ConfidenceTable& conf,
                                                                     ObjectId o, double beta) {
    const ObjectView& ov = view.objects[o];
    const int n = static_cast<int>(ov.sources.size());
    EndorsementGraph positive_graph, negative_graph;
    positive_graph.vertices = ov.sources;
    negative_graph.vertices = ov.sources;
    positive_graph.weights.assign(static_cast<size_t>(n) * n, 0.0);
    negative_graph.weights.assign(static_cast<size_t>(n) * n, 0.0);

    for (int slot1 = 0; slot1 < n; ++slot1) {
        for (int slot2 = 0; slot2 < n; ++slot2) {
            if (slot1 == slot2) continue;
            double pos = beta;
            auto agreed = positive_agreement(ov, slot1, slot2);
            if (!agreed.empty()) {
                double prod = 1.0;
                for (int lv : agreed) prod *= conf.c_true[o][lv];
                double share = static_cast<double>(agreed.size()) / ov.positive[slot2].size();
                pos += (1.0 - beta) * share * (1.0 - prod);
            }
            double neg = beta;
            if (!ov.negative[slot2].empty()) {
                auto disagreed = negative_agreement(ov, slot1, slot2);
                if (!disagreed.empty()) {
                    double prod = 1.0;
                    for (int lv : disagreed) prod *= conf.c_false[o][lv];
                    double share =
                        static_cast<double>(disagreed.size()) / ov.negative[slot2].size();
                    neg += (1.0 - beta) * share * (1.0 - prod);
                }
            }
            positive_graph.weights[static_cast<size_t>(slot1) * n + slot2] = pos;
            negative_graph.weights[static_cast<size_t>(slot1) * n + slot2] = neg;
        }
    }

    row_normalize(positive_graph);
    row_normalize(negative_graph);
    return {std::move(positive_graph), std::move(negative_graph)};
}

DependenceMap derive_dependence(const DerivedView& view, const ConfidenceTable& conf,
                                const std::vector<std::string>& object_names, double pc_max,
                                double nc_max, double beta, const WalkParams& walk, int threads) {
    DependenceMap dep = DependenceMap::zeros(view);
    parallel_for(static_cast<int>(view.objects.size()), threads, [&](int o) {
        if (view.objects[o].sources.size() < 2) return;
        try {
            auto [positive_graph, negative_graph] = build_malicious_graphs(view, conf, o, beta);
            dep.positive[o] = normalize_to_precision(stationary(positive_graph, walk), pc_max);
            dep.negative[o] = normalize_to_precision(stationary(negative_graph, walk), nc_max);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("dependence walk failed for object '" + object_names[o] +
                                       "': " + e.what(),
                                   e.residual());
        }
    });
    return dep;
}

void write_dependence(const DerivedView& view, const DependenceMap& dep,
                      const std::vector<std::string>& object_names,
                      const std::vector<std::string>& source_names, std::ostream& out,
                      const std::string& tag) {
    out << tsv_comment_header(tag);
    out << "object_id\tsource_id\tD\tD_tilde\n";
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        for (size_t slot = 0; slot < ov.sources.size(); ++slot) {
            out << object_names[o] << '\t' << source_names[ov.sources[slot]] << '\t'
                << format_double(dep.positive[o][slot]) << '\t'
                << format_double(dep.negative[o][slot]) << '\n';
        }
    }
}

} // namespace smartmtd
