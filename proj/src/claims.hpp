#pragma once
// Claim data model: raw positive claims, the derived per-object view with
// mutual-exclusion negative claims, and truth assignments.
//
// Identifiers are interned to dense integer ids assigned in lexicographic
// order of the canonical identifier strings, so ascending-id loops iterate
// in a reproducible order.

#include <iosfwd>
#include <string>
#include <vector>

namespace smartmtd {

using SourceId = int;
using ObjectId = int;
using ValueId = int;

struct ClaimFormat {
    char delimiter = '\t';
    bool header = false;
};

// Raw positive claims. Every (source, object) entry holds a non-empty,
// sorted set of global value ids.
struct ClaimTable {
    std::vector<std::string> source_names; // index = SourceId, lex-sorted
    std::vector<std::string> object_names; // index = ObjectId, lex-sorted
    std::vector<std::string> value_names;  // index = ValueId, lex-sorted

    struct SourceClaims {
        SourceId source;
        std::vector<ValueId> values; // sorted, non-empty
    };
    // claims_by_object[o] lists claiming sources in ascending SourceId order.
    std::vector<std::vector<SourceClaims>> claims_by_object;

    size_t num_sources() const { return source_names.size(); }
    size_t num_objects() const { return object_names.size(); }
    size_t num_values() const { return value_names.size(); }
    size_t claim_rows() const; // total (source, object, value) triples

    // -1 when the identifier is unknown. Inputs are expected canonical.
    SourceId source_id(const std::string& name) const;
    ObjectId object_id(const std::string& name) const;
    ValueId value_id(const std::string& name) const;
};

// Indexes derived from a ClaimTable under mutual exclusion.
struct ObjectView {
    std::vector<ValueId> universe;  // U_o, sorted global ids; position = local index
    std::vector<SourceId> sources;  // S_o, ascending
    // Per source slot (aligned with `sources`): claim sets as sorted local
    // value indexes. positive[k] and negative[k] partition the universe.
    std::vector<std::vector<int>> positive;
    std::vector<std::vector<int>> negative;
    // Per local value index: source slots that claim / disclaim the value.
    // claimers[v] and disclaimers[v] partition the slot range.
    std::vector<std::vector<int>> claimers;
    std::vector<std::vector<int>> disclaimers;
};

struct DerivedView {
    std::vector<ObjectView> objects; // index = ObjectId
    // Per source: covered objects as (object, slot in that object's sources).
    std::vector<std::vector<std::pair<ObjectId, int>>> objects_of_source;
    std::vector<double> coverage; // Cov(s) = |O_s| / |O|, in (0, 1]

    size_t num_objects() const { return objects.size(); }
    size_t num_sources() const { return objects_of_source.size(); }
};

// Identified (or gold) truths. String-keyed so a gold file can be loaded
// without a claim table. Entries sorted by object name; value lists sorted
// and possibly empty (every value of an object judged false).
struct TruthAssignment {
    struct Entry {
        std::string object;
        std::vector<std::string> values;
    };
    std::vector<Entry> entries;

    const Entry* find(const std::string& object) const;
    size_t num_objects() const { return entries.size(); }
};

// Canonicalization applied at ingestion: identifiers are trimmed of ASCII
// whitespace; values are additionally case-folded (ASCII tolower).
std::string canonical_id(const std::string& raw);
std::string canonical_value(const std::string& raw);

// Reads delimiter-separated rows (source, object, value). Skips blank lines
// and '#' comment lines. Duplicate rows collapse; multiple rows for one
// (source, object) accumulate into one value set.
// Throws ParseError on a malformed row, Error on an empty stream.
ClaimTable ingest_claims(std::istream& in, const ClaimFormat& format);
ClaimTable load_claims(const std::string& path, const ClaimFormat& format);

// Serializes in the ingestion format, rows sorted (object, source, value).
// `tag` (optional, may be empty) lands in the leading comment header.
void write_claims(const ClaimTable& claims, std::ostream& out,
                  const ClaimFormat& format, const std::string& tag = "");
void save_claims(const ClaimTable& claims, const std::string& path,
                 const ClaimFormat& format, const std::string& tag = "");

// Ground-truth / prediction files: rows (object, value), same conventions.
TruthAssignment load_truths(const std::string& path, const ClaimFormat& format);
TruthAssignment ingest_truths(std::istream& in, const ClaimFormat& format);
void write_truths(const TruthAssignment& truths, std::ostream& out,
                  const std::string& tag = "");
void save_truths(const TruthAssignment& truths, const std::string& path,
                 const std::string& tag = "");

// Builds every derived index. Throws Error when `claims` is empty.
DerivedView derive_view(const ClaimTable& claims);

} // namespace smartmtd
