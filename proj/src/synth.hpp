#pragma once
// Synthetic multi-truth datasets with planted ground truth, tunable honest
// source quality, planted copiers, and long-tail object coverage.

#include <cstdint>
#include <utility>

#include "claims.hpp"

namespace smartmtd {

struct SynthSpec {
    int n_objects = 20;
    int n_sources = 15;
    int truths_min = 2; // planted truths per object, uniform in [min, max]
    int truths_max = 3;
    int false_pool_size = 4; // distinct wrong values available per object
    // An honest source claims each true value with probability
    // honest_negative_precision and each false-pool value with probability
    // (1 - honest_positive_precision).
    double honest_positive_precision = 0.9;
    double honest_negative_precision = 0.9;
    // The last n_copiers sources replicate the claims of source 0 (the
    // victim), value by value with probability copy_fidelity, errors and all.
    int n_copiers = 0;
    double copy_fidelity = 0.8;
    // Object j is covered by an honest source with probability
    // ~ (j+1)^-coverage_skew (floored so nothing is starved): skew 0 is
    // uniform, larger values produce a longer tail.
    double coverage_skew = 0.0;
    // Scales honest error rates up on low-popularity objects: the miss and
    // false-claim probabilities are multiplied by (1 + quality_skew * u)
    // where u ramps 0 -> 1 from the most to the least covered object.
    double quality_skew = 0.0;
    uint64_t rng_seed = 1;

    void validate() const; // throws InfeasibleError with the reason
};

// Deterministic per seed, bit-exact across platforms. Guarantees: every
// object is claimed by at least one source, every planted truth is claimed
// by at least one source, every source claims on at least one object, and
// no (source, object) claim set is empty.
std::pair<ClaimTable, TruthAssignment> generate(const SynthSpec& spec);

} // namespace smartmtd
