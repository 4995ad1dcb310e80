#include "claims.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "tsv.hpp"

namespace smartmtd {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool skippable(const std::string& line) {
    if (line.empty() || line[0] == '#') return true;
    return trim(line).empty();
}

int index_of(const std::vector<std::string>& sorted, const std::string& name) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
    if (it == sorted.end() || *it != name) return -1;
    return static_cast<int>(it - sorted.begin());
}

int local_value_index(const std::vector<ValueId>& universe, ValueId v) {
    auto it = std::lower_bound(universe.begin(), universe.end(), v);
    return static_cast<int>(it - universe.begin());
}

// source -> object -> values, all canonical strings
using RawClaims = std::map<std::string, std::map<std::string, std::set<std::string>>>;

ClaimTable intern(const RawClaims& raw) {
    ClaimTable t;
    std::set<std::string> objects;
    std::set<std::string> values;
    for (const auto& [src, per_obj] : raw) {
        t.source_names.push_back(src);
        for (const auto& [obj, vals] : per_obj) {
            objects.insert(obj);
            values.insert(vals.begin(), vals.end());
        }
    }
    t.object_names.assign(objects.begin(), objects.end());
    t.value_names.assign(values.begin(), values.end());
    t.claims_by_object.resize(t.object_names.size());

    for (SourceId s = 0; s < static_cast<int>(t.source_names.size()); ++s) {
        for (const auto& [obj, vals] : raw.at(t.source_names[s])) {
            ObjectId o = index_of(t.object_names, obj);
            ClaimTable::SourceClaims sc;
            sc.source = s;
            for (const auto& v : vals) sc.values.push_back(index_of(t.value_names, v));
            std::sort(sc.values.begin(), sc.values.end());
            t.claims_by_object[o].push_back(std::move(sc));
        }
    }
    // map iteration above visits sources lex-ascending = id-ascending, so
    // each object's claimer list is already sorted by SourceId
    return t;
}

} // namespace

std::string canonical_id(const std::string& raw) { return trim(raw); }

std::string canonical_value(const std::string& raw) {
    std::string v = trim(raw);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return v;
}

size_t ClaimTable::claim_rows() const {
    size_t n = 0;
    for (const auto& per_obj : claims_by_object)
        for (const auto& sc : per_obj) n += sc.values.size();
    return n;
}

SourceId ClaimTable::source_id(const std::string& name) const {
    return index_of(source_names, name);
}
ObjectId ClaimTable::object_id(const std::string& name) const {
    return index_of(object_names, name);
}
ValueId ClaimTable::value_id(const std::string& name) const {
    return index_of(value_names, name);
}

const TruthAssignment::Entry* TruthAssignment::find(const std::string& object) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), object,
                               [](const Entry& e, const std::string& o) { return e.object < o; });
    if (it == entries.end() || it->object != object) return nullptr;
    return &*it;
}

ClaimTable ingest_claims(std::istream& in, const ClaimFormat& format) {
    RawClaims raw;
    std::string line;
    size_t line_no = 0;
    bool header_pending = format.header;
    size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto cols = split(line, format.delimiter);
        if (cols.size() != 3)
            throw ParseError("expected 3 columns (source, object, value), found " +
                                 std::to_string(cols.size()),
                             line_no);
        std::string src = canonical_id(cols[0]);
        std::string obj = canonical_id(cols[1]);
        std::string val = canonical_value(cols[2]);
        if (src.empty() || obj.empty() || val.empty())
            throw ParseError("empty identifier after canonicalization", line_no);
        raw[src][obj].insert(val);
        ++rows;
    }
    if (rows == 0) throw Error("empty claim file: no data rows");
    return intern(raw);
}

ClaimTable load_claims(const std::string& path, const ClaimFormat& format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open claim file: " + path);
    return ingest_claims(in, format);
}

void write_claims(const ClaimTable& claims, std::ostream& out,
                  const ClaimFormat& format, const std::string& tag) {
    out << tsv_comment_header(tag);
    const char d = format.delimiter;
    if (format.header) out << "source_id" << d << "object_id" << d << "value\n";
    for (ObjectId o = 0; o < static_cast<int>(claims.num_objects()); ++o) {
        for (const auto& sc : claims.claims_by_object[o]) {
            for (ValueId v : sc.values) {
                out << claims.source_names[sc.source] << d << claims.object_names[o] << d
                    << claims.value_names[v] << '\n';
            }
        }
    }
}

void save_claims(const ClaimTable& claims, const std::string& path,
                 const ClaimFormat& format, const std::string& tag) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write claim file: " + path);
    write_claims(claims, out, format, tag);
}

TruthAssignment ingest_truths(std::istream& in, const ClaimFormat& format) {
    std::map<std::string, std::set<std::string>> raw;
    std::string line;
    size_t line_no = 0;
    bool header_pending = format.header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto cols = split(line, format.delimiter);
        if (cols.size() != 2)
            throw ParseError("expected 2 columns (object, value), found " +
                                 std::to_string(cols.size()),
                             line_no);
        std::string obj = canonical_id(cols[0]);
        std::string val = canonical_value(cols[1]);
        if (obj.empty() || val.empty())
            throw ParseError("empty identifier after canonicalization", line_no);
        raw[obj].insert(val);
    }
    TruthAssignment t;
    for (auto& [obj, vals] : raw) {
        TruthAssignment::Entry e;
        e.object = obj;
        e.values.assign(vals.begin(), vals.end());
        t.entries.push_back(std::move(e));
    }
    return t;
}

TruthAssignment load_truths(const std::string& path, const ClaimFormat& format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open truth file: " + path);
    return ingest_truths(in, format);
}

void write_truths(const TruthAssignment& truths, std::ostream& out, const std::string& tag) {
    out << tsv_comment_header(tag);
    for (const auto& e : truths.entries)
        for (const auto& v : e.values) out << e.object << '\t' << v << '\n';
}

void save_truths(const TruthAssignment& truths, const std::string& path,
                 const std::string& tag) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write truth file: " + path);
    write_truths(truths, out, tag);
}

DerivedView derive_view(const ClaimTable& claims) {
    if (claims.num_objects() == 0) throw Error("cannot derive view from an empty claim table");
    DerivedView view;
    view.objects.resize(claims.num_objects());
    view.objects_of_source.resize(claims.num_sources());
    view.coverage.assign(claims.num_sources(), 0.0);

    for (ObjectId o = 0; o < static_cast<int>(claims.num_objects()); ++o) {
        const auto& per_obj = claims.claims_by_object[o];
        ObjectView& ov = view.objects[o];

        std::set<ValueId> universe;
        for (const auto& sc : per_obj) universe.insert(sc.values.begin(), sc.values.end());
        ov.universe.assign(universe.begin(), universe.end());

        const int n_vals = static_cast<int>(ov.universe.size());
        ov.claimers.resize(n_vals);
        ov.disclaimers.resize(n_vals);

        for (const auto& sc : per_obj) {
            int slot = static_cast<int>(ov.sources.size());
            ov.sources.push_back(sc.source);
            view.objects_of_source[sc.source].emplace_back(o, slot);

            std::vector<int> pos;
            pos.reserve(sc.values.size());
            for (ValueId v : sc.values)
                pos.push_back(local_value_index(ov.universe, v));
            // sc.values sorted ascending and universe sorted, so pos ascending
            std::vector<int> neg;
            neg.reserve(n_vals - pos.size());
            size_t pi = 0;
            for (int lv = 0; lv < n_vals; ++lv) {
                if (pi < pos.size() && pos[pi] == lv) {
                    ov.claimers[lv].push_back(slot);
                    ++pi;
                } else {
                    neg.push_back(lv);
                    ov.disclaimers[lv].push_back(slot);
                }
            }
            ov.positive.push_back(std::move(pos));
            ov.negative.push_back(std::move(neg));
        }
    }

    const double total_objects = static_cast<double>(claims.num_objects());
    for (SourceId s = 0; s < static_cast<int>(claims.num_sources()); ++s) {
        if (view.objects_of_source[s].empty())
            throw InternalError("source with zero covered objects: " + claims.source_names[s]);
        view.coverage[s] = static_cast<double>(view.objects_of_source[s].size()) / total_objects;
    }
    return view;
}

} // namespace smartmtd
