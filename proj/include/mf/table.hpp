#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mf::cli {

// Prints v with 12 significant digits (round-trips cleanly for diffing);
// non-finite values print as "nan"/"inf"/"-inf".
std::string format_double(double v);

// Column-oriented numeric table with reproducibility metadata. CSV carries
// header + rows only; JSON carries {metadata, columns, rows} with non-finite
// entries marked null.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_row(std::vector<double> row); // throws std::invalid_argument on width mismatch
    void add_meta(std::string key, std::string value);

    std::string to_csv() const;
    std::string to_json() const;
};

} // namespace mf::cli
