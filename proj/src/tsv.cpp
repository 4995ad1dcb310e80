#include "tsv.hpp"

#include <cstdio>

namespace smartmtd {

std::string tsv_comment_header(const std::string& tag) {
    std::string line = "# smartmtd/";
    line += kVersion;
    if (!tag.empty()) {
        line += " manifest=";
        line += tag;
    }
    line += '\n';
    return line;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace smartmtd
