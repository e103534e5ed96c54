#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detect.hpp"
#include "report.hpp"
#include "series.hpp"
#include "simulate.hpp"

// `rankcp detect` front end. Exit codes: 0 success, 1 usage error, 2 data error.

namespace rankcp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomically(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
        out << contents;
        out.close();
        if (!out) throw DataError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw DataError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

struct DetectOptions {
    std::string input;
    std::string simulate;
    std::string output;
    std::string plot_data;
    std::string label_column;
    bool returns = false;
    bool no_header = false;
    std::string mode = "fast";
    std::size_t max_changepoints = 0;
    DetectConfig config;
};

inline Series load_simulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open simulation spec '" + path + "'");
    try {
        return gen_series(regime_spec_from_json(nlohmann::json::parse(in)));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(path + ": " + e.what());
    }
}

inline int run_detect(DetectOptions opt, std::ostream& out) {
    auto& config = opt.config;
    config.stat.mode = parse_search_mode(opt.mode);
    if (opt.max_changepoints > 0) config.max_changepoints = opt.max_changepoints;
    config.threads = std::max(1u, std::thread::hardware_concurrency());
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    InputInfo info;
    Series series;
    if (!opt.input.empty()) {
        CsvOptions csv;
        csv.has_header = !opt.no_header;
        if (!opt.label_column.empty()) csv.label_column = opt.label_column;
        series = load_csv(opt.input, csv);
        info.source = opt.input;
    } else {
        series = load_simulated(opt.simulate);
        info.source = "simulate:" + opt.simulate;
    }

    if (opt.returns) {
        if (series.dim() != 1) throw UsageError("--returns requires a single numeric price column");
        try {
            series = log_returns(series);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
        info.returns = true;
    }

    DetectionReport report;
    try {
        report = e_divisive(series.observations, config);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    const auto json = report_to_string(report, info, series.labels);
    if (opt.output.empty())
        out << json;
    else
        write_file_atomically(opt.output, json);

    if (!opt.plot_data.empty()) {
        std::vector<std::size_t> indices;
        for (const auto& cp : report.change_points) indices.push_back(cp.index);
        write_file_atomically(opt.plot_data, plot_data_tsv(series, indices));
    }
    return kExitOk;
}

// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Distribution-free multiple change point detection with rank energy statistics", "rankcp"};
    app.require_subcommand(1);

    DetectOptions opt;
    auto* detect = app.add_subcommand("detect", "Detect change points in a CSV series or a simulated one");
    auto* input = detect->add_option("--input", opt.input, "CSV file, one observation per row");
    auto* simulate = detect->add_option("--simulate", opt.simulate, "JSON regime spec to simulate instead of reading --input");
    input->excludes(simulate);
    detect->add_option("--output", opt.output, "JSON report path (stdout when omitted)");
    detect->add_option("--plot-data", opt.plot_data, "TSV of labels and values with the change point list");
    detect->add_flag("--returns", opt.returns, "Convert a one-column price series to log returns");
    detect->add_option("--label-column", opt.label_column, "Header name (or 0-based index) of the label column");
    detect->add_flag("--no-header", opt.no_header, "The CSV has no header row");
    detect->add_option("--alpha", opt.config.stat.alpha, "Distance exponent in (0, 2)")->capture_default_str();
    detect->add_option("--min-size", opt.config.stat.min_size, "Minimum block size on each side of a split")
        ->capture_default_str();
    detect->add_option("--permutations", opt.config.permutations, "Permutation replicates per test (>= 19)")
        ->capture_default_str();
    detect->add_option("--sig-level", opt.config.sig_level, "Significance level for accepting a split")
        ->capture_default_str();
    detect->add_option("--mode", opt.mode, "Split search: exact or fast")
        ->check(CLI::IsMember({"exact", "fast"}))
        ->capture_default_str();
    detect->add_option("--max-changepoints", opt.max_changepoints, "Stop after this many change points")
        ->check(CLI::PositiveNumber);
    detect->add_option("--seed", opt.config.seed, "Seed for permutation replicates")->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
        if (opt.input.empty() && opt.simulate.empty()) throw UsageError("one of --input or --simulate is required");
        return run_detect(std::move(opt), out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace rankcp::cli
