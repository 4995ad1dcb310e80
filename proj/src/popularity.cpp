#include "popularity.hpp"

#include <ostream>

#include "errors.hpp"
#include "tsv.hpp"

namespace smartmtd {

PopularityTable compute_popularity(const DerivedView& view) {
    const size_t n = view.num_objects();
    if (n == 0) throw Error("cannot compute popularity of an empty view");
    PopularityTable pop;
    pop.unnormalized.assign(n, 0.0);
    double total = 0.0;
    for (size_t o = 0; o < n; ++o) {
        double u = 0.0;
        for (SourceId s : view.objects[o].sources) u += 1.0 / view.coverage[s];
        pop.unnormalized[o] = u;
        total += u;
    }
    pop.normalized.resize(n);
    for (size_t o = 0; o < n; ++o) pop.normalized[o] = pop.unnormalized[o] / total;
    return pop;
}

PopularityTable uniform_popularity(size_t n_objects) {
    PopularityTable pop;
    pop.unnormalized.assign(n_objects, 1.0);
    pop.normalized.assign(n_objects, 1.0 / static_cast<double>(n_objects));
    return pop;
}

void write_popularity(const PopularityTable& pop, const ClaimTable& claims, std::ostream& out,
                      const std::string& tag) {
    out << tsv_comment_header(tag);
    for (size_t o = 0; o < pop.normalized.size(); ++o)
        out << claims.object_names[o] << '\t' << format_double(pop.normalized[o]) << '\n';
}

} // namespace smartmtd
