#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace smartmtd {

namespace {

// Distribution wrappers with pinned arithmetic, so one seed yields the same
// dataset on every platform (std::uniform_*_distribution is not portable).
uint64_t rng_below(std::mt19937_64& rng, uint64_t n) {
    const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool rng_chance(std::mt19937_64& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return rng_unit(rng) < p;
}

std::string padded(const std::string& prefix, int index, int width) {
    std::string digits = std::to_string(index);
    std::string out = prefix;
    out.append(static_cast<size_t>(width) - std::min<size_t>(digits.size(), width), '0');
    out += digits;
    return out;
}

int label_width(int count) {
    int width = 1;
    for (int rest = count - 1; rest >= 10; rest /= 10) ++width;
    return std::max(width, 2);
}

void require_feasible(bool ok, const std::string& msg) {
    if (!ok) throw InfeasibleError(msg);
}

} // namespace

void SynthSpec::validate() const {
    require_feasible(n_objects >= 1, "n_objects must be at least 1");
    require_feasible(n_sources >= 1, "n_sources must be at least 1");
    require_feasible(truths_min >= 1, "truths_min must be at least 1");
    require_feasible(truths_max >= truths_min, "truths_max must be at least truths_min");
    require_feasible(false_pool_size >= 0, "false_pool_size must be non-negative");
    require_feasible(honest_positive_precision >= 0.0 && honest_positive_precision <= 1.0,
                     "honest_positive_precision must be in [0, 1]");
    require_feasible(honest_negative_precision >= 0.0 && honest_negative_precision <= 1.0,
                     "honest_negative_precision must be in [0, 1]");
    require_feasible(n_copiers >= 0, "n_copiers must be non-negative");
    require_feasible(n_copiers == 0 || n_sources >= n_copiers + 1,
                     "n_copiers must leave at least one honest source");
    require_feasible(copy_fidelity >= 0.0 && copy_fidelity <= 1.0,
                     "copy_fidelity must be in [0, 1]");
    require_feasible(coverage_skew >= 0.0, "coverage_skew must be non-negative");
    require_feasible(quality_skew >= 0.0, "quality_skew must be non-negative");
    require_feasible(honest_positive_precision >= 1.0 || false_pool_size >= 1,
                     "false_pool_size must be positive when honest_positive_precision < 1");
}

std::pair<ClaimTable, TruthAssignment> generate(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.rng_seed);

    const int n_honest = spec.n_sources - spec.n_copiers;
    const int object_width = label_width(spec.n_objects);
    const int source_width = label_width(spec.n_sources);

    std::vector<std::string> object_names(spec.n_objects);
    std::vector<std::string> source_names(spec.n_sources);
    for (int j = 0; j < spec.n_objects; ++j) object_names[j] = padded("o", j, object_width);
    for (int s = 0; s < spec.n_sources; ++s) source_names[s] = padded("s", s, source_width);

    // Planted truths and per-object false pools.
    std::vector<std::vector<std::string>> truths(spec.n_objects);
    std::vector<std::vector<std::string>> false_pool(spec.n_objects);
    const int value_width = label_width(std::max(spec.truths_max, spec.false_pool_size));
    for (int j = 0; j < spec.n_objects; ++j) {
        const int k =
            spec.truths_min +
            static_cast<int>(rng_below(rng, static_cast<uint64_t>(spec.truths_max) -
                                                spec.truths_min + 1));
        for (int i = 0; i < k; ++i)
            truths[j].push_back(object_names[j] + "_" + padded("t", i, value_width));
        for (int i = 0; i < spec.false_pool_size; ++i)
            false_pool[j].push_back(object_names[j] + "_" + padded("f", i, value_width));
    }

    // Honest coverage: object rank drives the long tail.
    std::vector<std::vector<int>> honest_coverage(spec.n_objects); // source indexes, ascending
    const double floor_p = std::min(1.0, 2.0 / n_honest);
    for (int j = 0; j < spec.n_objects; ++j) {
        const double p =
            std::max(floor_p, 0.9 * std::pow(static_cast<double>(j + 1), -spec.coverage_skew));
        for (int s = 0; s < n_honest; ++s)
            if (rng_chance(rng, p)) honest_coverage[j].push_back(s);
        if (honest_coverage[j].empty())
            honest_coverage[j].push_back(static_cast<int>(rng_below(rng, n_honest)));
    }
    std::vector<int> objects_of(n_honest, 0);
    for (int j = 0; j < spec.n_objects; ++j)
        for (int s : honest_coverage[j]) ++objects_of[s];
    for (int s = 0; s < n_honest; ++s) {
        if (objects_of[s] > 0) continue;
        const int j = static_cast<int>(rng_below(rng, spec.n_objects));
        honest_coverage[j].insert(
            std::lower_bound(honest_coverage[j].begin(), honest_coverage[j].end(), s), s);
    }

    // Honest claims. claim_sets[s][j]; sorted value names, absent when the
    // source does not cover the object.
    std::vector<std::vector<std::set<std::string>>> claim_sets(
        spec.n_sources, std::vector<std::set<std::string>>(spec.n_objects));
    const double tail_step =
        spec.n_objects > 1 ? 1.0 / static_cast<double>(spec.n_objects - 1) : 0.0;
    for (int j = 0; j < spec.n_objects; ++j) {
        const double scale = 1.0 + spec.quality_skew * tail_step * j;
        const double p_miss = std::min(1.0, (1.0 - spec.honest_negative_precision) * scale);
        const double p_false = std::min(1.0, (1.0 - spec.honest_positive_precision) * scale);
        for (int s : honest_coverage[j]) {
            auto& set = claim_sets[s][j];
            for (const auto& v : truths[j])
                if (!rng_chance(rng, p_miss)) set.insert(v);
            for (const auto& v : false_pool[j])
                if (rng_chance(rng, p_false)) set.insert(v);
            if (set.empty())
                set.insert(truths[j][rng_below(rng, truths[j].size())]);
        }
    }

    // Every planted truth must enter the universe through someone's claim.
    for (int j = 0; j < spec.n_objects; ++j) {
        for (const auto& v : truths[j]) {
            bool claimed = false;
            for (int s : honest_coverage[j]) claimed = claimed || claim_sets[s][j].count(v);
            if (!claimed) {
                const int s =
                    honest_coverage[j][rng_below(rng, honest_coverage[j].size())];
                claim_sets[s][j].insert(v);
            }
        }
    }

    // Copiers replicate the victim (source 0) value by value.
    for (int c = 0; c < spec.n_copiers; ++c) {
        const int s = n_honest + c;
        int copied_objects = 0;
        for (int j = 0; j < spec.n_objects; ++j) {
            const auto& victim_set = claim_sets[0][j];
            if (victim_set.empty()) continue;
            auto& set = claim_sets[s][j];
            for (const auto& v : victim_set)
                if (rng_chance(rng, spec.copy_fidelity)) set.insert(v);
            if (set.empty())
                continue;
            ++copied_objects;
        }
        if (copied_objects == 0) {
            for (int j = 0; j < spec.n_objects; ++j) {
                if (claim_sets[0][j].empty()) continue;
                claim_sets[s][j] = claim_sets[0][j];
                break;
            }
        }
    }

    // Serialize through the ingestion path so interning and canonical form
    // match a file round-trip exactly.
    std::ostringstream rows;
    for (int s = 0; s < spec.n_sources; ++s)
        for (int j = 0; j < spec.n_objects; ++j)
            for (const auto& v : claim_sets[s][j])
                rows << source_names[s] << '\t' << object_names[j] << '\t' << v << '\n';
    std::istringstream in(rows.str());
    ClaimTable claims = ingest_claims(in, ClaimFormat{});

    TruthAssignment gold;
    gold.entries.reserve(spec.n_objects);
    for (int j = 0; j < spec.n_objects; ++j) {
        TruthAssignment::Entry entry;
        entry.object = object_names[j];
        entry.values = truths[j];
        std::sort(entry.values.begin(), entry.values.end());
        gold.entries.push_back(std::move(entry));
    }
    return {std::move(claims), std::move(gold)};
}

} // namespace smartmtd
