#pragma once
// Object popularity from occurrence frequency, weighting each claiming
// source's vote by its inverse coverage so small sources count for more.

#include <iosfwd>
#include <vector>

#include "claims.hpp"

namespace smartmtd {

struct PopularityTable {
    std::vector<double> unnormalized; // P_o^u, positive
    std::vector<double> normalized;   // P_o, sums to 1
};

// unnormalized(o) = sum over claimers of 1/Cov(s); normalized by the grand total.
PopularityTable compute_popularity(const DerivedView& view);

// P_o = 1/|O| everywhere; used by the variants that ignore popularity.
PopularityTable uniform_popularity(size_t n_objects);

// TSV rows `object_id  popularity` (normalized).
void write_popularity(const PopularityTable& pop, const ClaimTable& claims, std::ostream& out,
                      const std::string& tag = "");

} // namespace smartmtd
