#include "mf/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mf::cli {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace

void OutputTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("OutputTable: row width " + std::to_string(row.size()) +
                                    " != column count " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

void OutputTable::add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

std::string OutputTable::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c)
            out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string OutputTable::to_json() const {
    std::string out = "{\n  \"metadata\": {";
    for (std::size_t i = 0; i < metadata.size(); ++i) {
        if (i)
            out += ',';
        out += "\n    \"" + json_escape(metadata[i].first) + "\": \"" +
               json_escape(metadata[i].second) + "\"";
    }
    out += metadata.empty() ? "},\n" : "\n  },\n";
    out += "  \"columns\": [";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c)
            out += ", ";
        out += '"' + json_escape(columns[c]) + '"';
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += (r ? ",\n    [" : "\n    [");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c)
                out += ", ";
            const double v = rows[r][c];
            out += std::isfinite(v) ? format_double(v) : std::string("null");
        }
        out += ']';
    }
    out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

} // namespace mf::cli
