#pragma once
// Shared fixtures for the test binaries: the three-source cast-list instance
// used throughout, plus conversion into the reference implementation's
// triple form.

#include <sstream>
#include <string>
#include <vector>

#include "claims.hpp"
#include "reference_impl.hpp"

namespace testfix {

// Three sources naming the cast of one film. s1 and s3 claim three actors,
// s2 claims two; universe size 4. One duplicate row checks dedup. Raw casing
// is mixed to exercise value canonicalization.
inline const char* kCastTsv =
    "s1\tharry potter\tDaniel Radcliffe\n"
    "s1\tharry potter\tEmma Watson\n"
    "s1\tharry potter\tRupert Grint\n"
    "s2\tharry potter\tEmma Watson\n"
    "s2\tharry potter\tRupert Grint\n"
    "s3\tharry potter\tDaniel Radcliffe\n"
    "s3\tharry potter\tEmma Watson\n"
    "s3\tharry potter\tJonny Depp\n"
    "s1\tharry potter\tdaniel radcliffe\n";

inline smartmtd::ClaimTable make_claims(const std::string& tsv) {
    std::istringstream in(tsv);
    return smartmtd::ingest_claims(in, smartmtd::ClaimFormat{});
}

inline smartmtd::ClaimTable cast_claims() { return make_claims(kCastTsv); }

// Canonical triples of an interned table, for feeding the reference.
inline std::vector<refimpl::Triple> triples_of(const smartmtd::ClaimTable& claims) {
    std::vector<refimpl::Triple> out;
    for (size_t o = 0; o < claims.num_objects(); ++o)
        for (const auto& sc : claims.claims_by_object[o])
            for (smartmtd::ValueId v : sc.values)
                out.push_back({claims.source_names[sc.source], claims.object_names[o],
                               claims.value_names[v]});
    return out;
}

} // namespace testfix
