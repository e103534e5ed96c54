#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "point_set.hpp"

namespace rankcp {

// T ordered observations in R^d with optional row labels (e.g. months).
struct Series {
    PointSet observations;
    std::vector<std::string> columns;  // one name per dimension
    std::optional<std::vector<std::string>> labels;

    std::size_t length() const noexcept { return observations.size(); }
    std::size_t dim() const noexcept { return observations.dim(); }

    void validate() const {
        if (labels) {
            if (labels->size() != length()) throw std::invalid_argument("Series: label count differs from length");
            std::set<std::string_view> seen;
            for (const auto& l : *labels)
                if (!seen.insert(l).second) throw std::invalid_argument("Series: duplicate label '" + l + "'");
        }
    }
};

// Problems with the content of an input file (as opposed to usage errors).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvOptions {
    bool has_header = true;
    // Header name of the label column, or its 0-based position when no
    // header name matches and the text is an integer.
    std::optional<std::string> label_column;
    char delimiter = ',';
};

namespace detail {

inline std::vector<std::string> split_record(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace detail

inline Series parse_csv(std::istream& in, const CsvOptions& options, const std::string& source = "<input>") {
    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> line_numbers;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty() || line.front() == '#') continue;
        records.push_back(detail::split_record(line, options.delimiter));
        line_numbers.push_back(line_no);
    }
    if (records.empty()) throw DataError(source + ": file is empty");

    const std::size_t width = records.front().size();
    for (std::size_t r = 0; r < records.size(); ++r)
        if (records[r].size() != width)
            throw DataError(source + ": line " + std::to_string(line_numbers[r]) + " has " +
                            std::to_string(records[r].size()) + " fields, expected " + std::to_string(width));

    std::vector<std::string> names;
    if (options.has_header) {
        for (const auto& f : records.front()) names.emplace_back(detail::trim(f));
    } else {
        for (std::size_t c = 0; c < width; ++c) names.push_back(std::to_string(c + 1));
    }
    const std::size_t first_data = options.has_header ? 1 : 0;
    if (records.size() == first_data) throw DataError(source + ": no data rows");

    std::optional<std::size_t> label_index;
    if (options.label_column) {
        const auto& wanted = *options.label_column;
        if (options.has_header)
            for (std::size_t c = 0; c < width; ++c)
                if (names[c] == wanted) label_index = c;
        if (!label_index) {
            std::size_t pos = 0;
            const auto [ptr, ec] = std::from_chars(wanted.data(), wanted.data() + wanted.size(), pos);
            if (ec == std::errc{} && ptr == wanted.data() + wanted.size() && pos < width) label_index = pos;
        }
        if (!label_index) throw DataError(source + ": label column '" + wanted + "' not found");
    }

    Series series;
    for (std::size_t c = 0; c < width; ++c)
        if (c != label_index) series.columns.push_back(names[c]);
    if (series.columns.empty()) throw DataError(source + ": no numeric columns");

    series.observations = PointSet(series.columns.size());
    if (label_index) series.labels.emplace();
    std::vector<double> row(series.columns.size());
    for (std::size_t r = first_data; r < records.size(); ++r) {
        std::size_t k = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_index) {
                series.labels->emplace_back(detail::trim(records[r][c]));
                continue;
            }
            const auto v = detail::parse_double(records[r][c]);
            if (!v)
                throw DataError(source + ": row " + std::to_string(r - first_data + 1) + " (line " +
                                std::to_string(line_numbers[r]) + "), column \"" + names[c] +
                                "\": cannot parse '" + records[r][c] + "' as a number");
            row[k++] = *v;
        }
        series.observations.push_back(row);
    }
    try {
        series.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(source + ": " + e.what());
    }
    return series;
}

inline Series load_csv(const std::string& path, const CsvOptions& options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file '" + path + "'");
    return parse_csv(in, options, path);
}

// r_t = ln(p_{t+1} / p_t).
inline std::vector<double> log_returns(std::span<const double> prices) {
    if (prices.size() < 2) throw std::invalid_argument("log_returns: at least two prices are required");
    for (std::size_t t = 0; t < prices.size(); ++t)
        if (!(prices[t] > 0.0))
            throw std::domain_error("log_returns: price at position " + std::to_string(t + 1) + " is not positive");
    std::vector<double> out(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t) out[t] = std::log(prices[t + 1] / prices[t]);
    return out;
}

// One-dimensional price series to returns; the label of each later price
// carries over to its return.
inline Series log_returns(const Series& prices) {
    if (prices.dim() != 1) throw std::invalid_argument("log_returns: price series must be one-dimensional");
    Series out;
    out.columns = prices.columns;
    out.observations = PointSet::scalars(log_returns(prices.observations.values()));
    if (prices.labels) out.labels.emplace(prices.labels->begin() + 1, prices.labels->end());
    return out;
}

// Tab-separated plot data: a comment line listing change point indices, a
// header, then one row per observation with its label (1-based position
// when the series has none) and values.
inline std::string plot_data_tsv(const Series& series, std::span<const std::size_t> change_points) {
    std::ostringstream os;
    os << "# change_points:";
    for (auto cp : change_points) os << ' ' << cp;
    os << "\nlabel";
    for (const auto& c : series.columns) os << '\t' << c;
    os << '\n';
    for (std::size_t t = 0; t < series.length(); ++t) {
        os << (series.labels ? (*series.labels)[t] : std::to_string(t + 1));
        for (double v : series.observations[t]) os << '\t' << detail::format_double(v);
        os << '\n';
    }
    return os.str();
}

}  // namespace rankcp
