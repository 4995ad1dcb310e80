#pragma once
// Shared formatting for the TSV outputs: every table starts with a comment
// header carrying the library version and, when supplied, a manifest tag.

#include <string>

namespace smartmtd {

inline constexpr const char* kVersion = "0.1.0";

std::string tsv_comment_header(const std::string& tag);

// Shortest round-trippable decimal form (%.17g).
std::string format_double(double x);

} // namespace smartmtd
