#pragma once

#include <string>
#include <vector>

namespace intent::csv {

/// RFC-4180 parser. Lines beginning with '#' outside a quoted field are
/// treated as comments and skipped.
std::vector<std::vector<std::string>> parse(const std::string& content);

/// Quotes a field when it contains a comma, quote, or newline.
std::string quote(const std::string& field);

std::string join_row(const std::vector<std::string>& fields);

} // namespace intent::csv
