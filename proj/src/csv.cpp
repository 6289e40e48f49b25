#include "intent/csv.hpp"

namespace intent::csv {

std::vector<std::vector<std::string>> parse(const std::string& content) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool at_line_start = true;
    bool line_is_comment = false;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        if (!line_is_comment) {
            end_field();
            rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        at_line_start = true;
        line_is_comment = false;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (at_line_start) {
            at_line_start = false;
            if (c == '#') {
                line_is_comment = true;
            }
        }
        if (line_is_comment) {
            if (c == '\n') {
                at_line_start = true;
                line_is_comment = false;
            }
            continue;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; row ends at the following '\n'
        } else if (c == '\n') {
            end_row();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        end_row();
    }
    return rows;
}

std::string quote(const std::string& field) {
    bool needs = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    }
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quote(fields[i]);
    }
    return out;
}

} // namespace intent::csv
