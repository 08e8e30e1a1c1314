#pragma once

#include "probeboost/dataset.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace probeboost {

// Shortest representation that parses back to the same double.
std::string format_double(double value);

struct CsvOptions {
    std::string response;              // name of the response column (required)
    std::vector<std::string> ignore;  // columns dropped before parsing, e.g. row labels
};

// Header row first, comma separated, numeric cells only. Throws DataError
// naming the line and column of the first offending cell, or when the
// response column is missing or there are fewer than 2 data rows.
Dataset read_csv(std::istream& in, const CsvOptions& options);
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

// Covariates in column order followed by the response column.
void write_csv(std::ostream& out, const Dataset& data, const std::string& response = "y");
void write_csv(const std::filesystem::path& path, const Dataset& data,
               const std::string& response = "y");

// variable,selected[,frequency] with one row per column.
void write_selection_csv(std::ostream& out, const std::vector<std::string>& names,
                         const IndexList& selected,
                         const std::optional<std::vector<double>>& frequencies = std::nullopt);

}  // namespace probeboost
