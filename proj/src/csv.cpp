#include "probeboost/csv.hpp"

#include "probeboost/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string_view>

namespace probeboost {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

bool blank(std::string_view line) {
    return trim(line).empty();
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

Dataset read_csv(std::istream& in, const CsvOptions& options) {
    if (options.response.empty()) {
        throw DataError("no response column given");
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) {
            break;
        }
    }
    if (blank(line)) {
        throw DataError("CSV input is empty");
    }

    std::vector<std::string> header;
    for (const auto field : split(line)) {
        header.emplace_back(unquote(field));
    }
    const std::set<std::string> ignored(options.ignore.begin(), options.ignore.end());
    std::optional<std::size_t> response_col;
    std::vector<std::size_t> covariate_cols;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == options.response) {
            response_col = c;
        } else if (!ignored.contains(header[c])) {
            covariate_cols.push_back(c);
            names.push_back(header[c]);
        }
    }
    if (!response_col) {
        throw DataError("response column '" + options.response + "' not found in header");
    }

    std::vector<std::vector<double>> rows;
    std::vector<double> response;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
        }
        auto parse = [&](std::size_t c) {
            const auto cell = unquote(fields[c]);
            const auto where = "line " + std::to_string(line_no) + " (data row " +
                               std::to_string(rows.size() + 1) + "), column '" + header[c] + "'";
            if (cell.empty()) {
                throw DataError(where + ": empty cell");
            }
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
                throw DataError(where + ": non-numeric value '" + std::string(cell) + "'");
            }
            return value;
        };
        std::vector<double> row;
        row.reserve(covariate_cols.size());
        for (const auto c : covariate_cols) {
            row.push_back(parse(c));
        }
        response.push_back(parse(*response_col));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) {
        throw DataError("CSV has " + std::to_string(rows.size()) + " data rows; at least 2 needed");
    }

    Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
    Vector y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
        y(static_cast<Eigen::Index>(i)) = response[i];
    }
    auto data = make_dataset(std::move(x), std::move(y), std::move(names));
    data.validate();
    return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    return read_csv(in, options);
}

void write_csv(std::ostream& out, const Dataset& data, const std::string& response) {
    for (const auto& name : data.column_names) {
        out << name << ',';
    }
    out << response << '\n';
    for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.x.cols(); ++j) {
            out << format_double(data.x(i, j)) << ',';
        }
        out << format_double(data.y(i)) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const Dataset& data, const std::string& response) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    write_csv(out, data, response);
}

void write_selection_csv(std::ostream& out, const std::vector<std::string>& names,
                         const IndexList& selected,
                         const std::optional<std::vector<double>>& frequencies) {
    std::vector<bool> chosen(names.size(), false);
    for (const auto j : selected) {
        chosen.at(j) = true;
    }
    out << "variable,selected" << (frequencies ? ",frequency" : "") << '\n';
    for (std::size_t j = 0; j < names.size(); ++j) {
        out << names[j] << ',' << (chosen[j] ? 1 : 0);
        if (frequencies) {
            out << ',' << format_double(frequencies->at(j));
        }
        out << '\n';
    }
}

}  // namespace probeboost
