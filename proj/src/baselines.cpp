#include "baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace smartmtd {

namespace {

// Shared scaffolding for sums / avg_log: per-object value scores plus
// per-source scores, iterated to a fixed point.
struct ValueScores {
    std::vector<std::vector<double>> t; // [o][local value] claimer mass
    std::vector<std::vector<double>> f; // [o][local value] disclaimer mass
};

ValueScores value_scores(const DerivedView& view, const std::vector<double>& sigma) {
    ValueScores vs;
    vs.t.resize(view.objects.size());
    vs.f.resize(view.objects.size());
    double peak = 0.0;
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        vs.t[o].assign(ov.universe.size(), 0.0);
        vs.f[o].assign(ov.universe.size(), 0.0);
        for (size_t lv = 0; lv < ov.universe.size(); ++lv) {
            for (int slot : ov.claimers[lv]) vs.t[o][lv] += sigma[ov.sources[slot]];
            for (int slot : ov.disclaimers[lv]) vs.f[o][lv] += sigma[ov.sources[slot]];
            peak = std::max({peak, vs.t[o][lv], vs.f[o][lv]});
        }
    }
    if (peak > 0.0) {
        for (auto& row : vs.t)
            for (double& x : row) x /= peak;
        for (auto& row : vs.f)
            for (double& x : row) x /= peak;
    }
    return vs;
}

// Sum of a source's claim scores: true-scores over positives, false-scores
// over negatives. Also counts the claims for the averaging variant.
double claim_score_sum(const DerivedView& view, const ValueScores& vs, SourceId s,
                       size_t* n_claims) {
    double sum = 0.0;
    size_t count = 0;
    for (const auto& [o, slot] : view.objects_of_source[s]) {
        const ObjectView& ov = view.objects[o];
        for (int lv : ov.positive[slot]) sum += vs.t[o][lv];
        for (int lv : ov.negative[slot]) sum += vs.f[o][lv];
        count += ov.universe.size();
    }
    if (n_claims) *n_claims = count;
    return sum;
}

TruthAssignment decide(const ClaimTable& claims, const DerivedView& view, const ValueScores& vs) {
    TruthAssignment truths;
    truths.entries.reserve(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        TruthAssignment::Entry entry;
        entry.object = claims.object_names[o];
        for (size_t lv = 0; lv < ov.universe.size(); ++lv)
            if (vs.t[o][lv] > vs.f[o][lv])
                entry.values.push_back(claims.value_names[ov.universe[lv]]);
        truths.entries.push_back(std::move(entry));
    }
    return truths;
}

template <typename SourceUpdate>
TruthAssignment fixed_point(const ClaimTable& claims, const DerivedView& view, int iters,
                            double tol, SourceUpdate&& next_sigma) {
    std::vector<double> sigma(view.num_sources(), 1.0);
    ValueScores vs;
    for (int iter = 0; iter < iters; ++iter) {
        vs = value_scores(view, sigma);
        std::vector<double> updated(sigma.size());
        double peak = 0.0;
        for (size_t s = 0; s < sigma.size(); ++s) {
            updated[s] = next_sigma(vs, static_cast<SourceId>(s));
            peak = std::max(peak, updated[s]);
        }
        if (peak > 0.0)
            for (double& x : updated) x /= peak;
        double change = 0.0;
        for (size_t s = 0; s < sigma.size(); ++s)
            change = std::max(change, std::abs(updated[s] - sigma[s]));
        sigma = std::move(updated);
        if (change < tol) break;
    }
    vs = value_scores(view, sigma);
    return decide(claims, view, vs);
}

} // namespace

TruthAssignment voting(const ClaimTable& claims, const DerivedView& view) {
    TruthAssignment truths;
    truths.entries.reserve(view.objects.size());
    for (size_t o = 0; o < view.objects.size(); ++o) {
        const ObjectView& ov = view.objects[o];
        // Multiplicity of each distinct claim set; map order doubles as the
        // lexicographic tie-break (local index order = value name order).
        std::map<std::vector<int>, int> tally;
        for (const auto& set : ov.positive) ++tally[set];
        const std::vector<int>* best = nullptr;
        int best_count = 0;
        for (const auto& [set, count] : tally) {
            if (count > best_count) {
                best = &set;
                best_count = count;
            }
        }
        TruthAssignment::Entry entry;
        entry.object = claims.object_names[o];
        for (int lv : *best) entry.values.push_back(claims.value_names[ov.universe[lv]]);
        truths.entries.push_back(std::move(entry));
    }
    return truths;
}

TruthAssignment sums(const ClaimTable& claims, const DerivedView& view, int iters, double tol) {
    return fixed_point(claims, view, iters, tol, [&](const ValueScores& vs, SourceId s) {
        return claim_score_sum(view, vs, s, nullptr);
    });
}

TruthAssignment avg_log(const ClaimTable& claims, const DerivedView& view, int iters,
                        double tol) {
    return fixed_point(claims, view, iters, tol, [&](const ValueScores& vs, SourceId s) {
        size_t n_claims = 0;
        double sum = claim_score_sum(view, vs, s, &n_claims);
        if (n_claims == 0) return 0.0;
        double n_objects = static_cast<double>(view.objects_of_source[s].size());
        return std::log(n_objects) * (sum / static_cast<double>(n_claims));
    });
}

} // namespace smartmtd
