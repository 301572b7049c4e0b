// Command-line front end over the shared-library C API: `test` runs the
// stationarity tests on a CSV column, `simulate` drives the Monte Carlo
// harness from a scenario file, `describe` prints summary statistics.
//
// Exit codes: 0 clean run (regardless of the test decision), 2 usage or
// input problems, 3 numerical degeneracy.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phr/phr.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitGeneric = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(phr_status status) {
    switch (status) {
        case PHR_OK: return kExitOk;
        case PHR_ERROR_INVALID_ARGUMENT:
        case PHR_ERROR_IO:
        case PHR_ERROR_PARSE: return kExitInput;
        case PHR_ERROR_NUMERIC: return kExitNumeric;
        default: return kExitGeneric;
    }
}

// Raised by failed C API calls; carries the exit code.
struct CliError {
    int exit_code;
    std::string message;
};

void check(phr_status status) {
    if (status != PHR_OK) {
        throw CliError{exit_code_for(status), phr_last_error_message()};
    }
}

struct SeriesDeleter {
    void operator()(phr_series* s) const { phr_series_destroy(s); }
};
using SeriesPtr = std::unique_ptr<phr_series, SeriesDeleter>;

std::string take_string(char* owned) {
    std::string out = owned == nullptr ? "" : owned;
    phr_string_destroy(owned);
    return out;
}

struct InputOptions {
    std::string path;
    std::string column = "0";
    bool skip_header = false;
    bool log_returns = false;
};

struct PreprocessOptions {
    double trim_fraction = -1.0;  // < 0 means off
    bool detrend = false;
    bool demean = false;
    std::vector<int> prewhiten;  // empty = off; [order] or [] via flag
    bool prewhiten_flag = false;
    int roll_window = 0;  // 0 = off
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool with_log_returns) {
    cmd->add_option("--input", in.path, "CSV file to read")->required();
    cmd->add_option("--column", in.column, "column name or zero-based index (default 0)");
    cmd->add_flag("--skip-header", in.skip_header, "skip one header row");
    if (with_log_returns) {
        cmd->add_flag("--log-returns", in.log_returns,
                      "transform prices to log returns first");
    }
}

SeriesPtr load_series(const InputOptions& in) {
    phr_series* raw = nullptr;
    check(phr_series_load_csv(in.path.c_str(), in.column.c_str(), in.skip_header ? 1 : 0,
                              &raw));
    SeriesPtr series(raw);
    if (in.log_returns) {
        phr_series* returns = nullptr;
        check(phr_series_log_returns(series.get(), &returns));
        series.reset(returns);
    }
    return series;
}

SeriesPtr apply_preprocessing(SeriesPtr series, const PreprocessOptions& pre) {
    phr_series* next = nullptr;
    if (pre.trim_fraction >= 0.0) {
        check(phr_series_trim(series.get(), pre.trim_fraction, &next));
        series.reset(next);
    }
    if (pre.detrend) {
        check(phr_series_detrend(series.get(), &next));
        series.reset(next);
    }
    if (pre.demean) {
        check(phr_series_demean(series.get(), &next));
        series.reset(next);
    }
    if (pre.prewhiten_flag) {
        int order = pre.prewhiten.empty() ? 10 : pre.prewhiten.front();
        check(phr_series_prewhiten(series.get(), order, &next, nullptr));
        series.reset(next);
    }
    if (pre.roll_window > 0) {
        check(phr_series_rolling_standardize(series.get(), pre.roll_window, &next));
        series.reset(next);
    }
    return series;
}

std::string csv_escape(const json& v) {
    std::ostringstream out;
    if (v.is_string()) {
        out << v.get<std::string>();
    } else {
        out << v.dump();
    }
    return out.str();
}

std::string results_to_csv(const std::vector<json>& results) {
    static const std::vector<std::string> columns = {
        "test", "statistic", "p_value", "p_lower", "p_upper",  "alpha",
        "reject", "L",        "P",       "n_pairs", "bandwidth"};
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i > 0 ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto& r : results) {
        double statistic = r.contains("D") ? r["D"].get<double>() : r["statistic"].get<double>();
        json bracket = r.value("p_bracket", json::array());
        std::vector<std::string> cells = {
            r["test"].get<std::string>(),
            json(statistic).dump(),
            r.contains("p_value") ? r["p_value"].dump() : "",
            bracket.size() == 2 ? bracket[0].dump() : "",
            bracket.size() == 2 ? bracket[1].dump() : "",
            r["alpha"].dump(),
            r["reject"].get<bool>() ? "1" : "0",
            r.contains("L") ? r["L"].dump() : "",
            r.contains("P") ? r["P"].dump() : "",
            r.contains("n_pairs") ? r["n_pairs"].dump() : "",
            r.contains("bandwidth") ? r["bandwidth"].dump() : "",
        };
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i > 0 ? "," : "") << cells[i];
        }
        out << "\n";
    }
    return out.str();
}

std::string results_to_text(const std::vector<json>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        const std::string test = r["test"].get<std::string>();
        if (test == "KPSS") {
            out << "KPSS: statistic=" << r["statistic"].dump()
                << "  p in (" << r["p_bracket"][0].dump() << ", " << r["p_bracket"][1].dump()
                << ")  bandwidth=" << r["bandwidth"].dump();
        } else {
            out << test << ": D=" << r["D"].dump() << "  p=" << r["p_value"].dump()
                << "  L=" << r["L"].dump() << "  P=" << r["P"].dump()
                << "  pairs=" << r["n_pairs"].dump();
        }
        out << "  alpha=" << r["alpha"].dump()
            << "  -> " << (r["reject"].get<bool>() ? "reject" : "fail to reject")
            << " stationarity\n";
    }
    return out.str();
}

int cmd_test(const InputOptions& in, const PreprocessOptions& pre, bool run_phr, bool run_kpss,
             int frame_length, double alpha, const std::string& bandwidth,
             const std::string& format) {
    if (!run_phr && !run_kpss) {
        std::cerr << "error: request at least one of --phr / --kpss\n";
        return kExitInput;
    }
    int bw = -1;
    if (bandwidth != "auto") {
        try {
            bw = std::stoi(bandwidth);
        } catch (...) {
            std::cerr << "error: --bandwidth must be an integer or 'auto'\n";
            return kExitInput;
        }
    }

    SeriesPtr series = apply_preprocessing(load_series(in), pre);
    if (run_phr && phr_series_size(series.get()) < 150) {
        std::cerr << "warning: fewer than 150 observations; the asymptotic approximation "
                     "is unreliable\n";
    }

    std::vector<json> results;
    if (run_phr) {
        char* result_json = nullptr;
        check(phr_run_phr_test(series.get(), frame_length, alpha, &result_json, nullptr));
        results.push_back(json::parse(take_string(result_json)));
    }
    if (run_kpss) {
        char* result_json = nullptr;
        check(phr_run_kpss_test(series.get(), bw, alpha, &result_json));
        results.push_back(json::parse(take_string(result_json)));
    }

    if (format == "csv") {
        std::cout << results_to_csv(results);
    } else if (format == "text") {
        std::cout << results_to_text(results);
    } else if (results.size() == 1) {
        std::cout << results.front().dump() << "\n";
    } else {
        std::cout << json(results).dump() << "\n";
    }
    return kExitOk;
}

int cmd_describe(const InputOptions& in, const std::string& format) {
    SeriesPtr series = load_series(in);
    char* stats_json = nullptr;
    check(phr_series_describe(series.get(), &stats_json));
    json stats = json::parse(take_string(stats_json));

    if (format == "csv") {
        static const std::vector<std::string> columns = {
            "n", "mean", "std_dev", "min", "max", "skewness", "excess_kurtosis"};
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::cout << (i > 0 ? "," : "") << columns[i];
        }
        std::cout << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::cout << (i > 0 ? "," : "") << csv_escape(stats[columns[i]]);
        }
        std::cout << "\n";
    } else if (format == "text") {
        std::cout << "n=" << stats["n"].dump() << "  mean=" << stats["mean"].dump()
                  << "  std=" << stats["std_dev"].dump() << "  min=" << stats["min"].dump()
                  << "  max=" << stats["max"].dump() << "  skew=" << stats["skewness"].dump()
                  << "  exkurt=" << stats["excess_kurtosis"].dump() << "\n";
    } else {
        std::cout << stats.dump() << "\n";
    }
    return kExitOk;
}

std::string sidecar_path(const std::string& out_path) {
    if (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv") {
        return out_path.substr(0, out_path.size() - 4) + ".json";
    }
    return out_path + ".json";
}

int cmd_simulate(const std::string& scenario_path, int reps_override, bool seed_given,
                 std::uint64_t seed_override, int workers, const std::string& out_path,
                 const std::string& format) {
    std::ifstream file(scenario_path);
    if (!file) {
        std::cerr << "error: cannot open scenario file: " << scenario_path << "\n";
        return kExitInput;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();

    json doc = json::parse(buffer.str(), nullptr, false);
    if (doc.is_discarded()) {
        std::cerr << "error: malformed JSON in " << scenario_path << "\n";
        return kExitInput;
    }
    if (reps_override > 0 || seed_given) {
        auto patch = [&](json& scenario) {
            if (reps_override > 0) scenario["replications"] = reps_override;
            if (seed_given) scenario["base_seed"] = seed_override;
        };
        if (doc.is_array()) {
            for (auto& s : doc) patch(s);
        } else if (doc.contains("scenarios")) {
            for (auto& s : doc["scenarios"]) patch(s);
        } else {
            patch(doc);
        }
    }

    char* report_json = nullptr;
    check(phr_run_scenarios(doc.dump().c_str(), workers, &report_json));
    std::string report = take_string(report_json);

    char* csv_text = nullptr;
    check(phr_report_to_csv(report.c_str(), &csv_text));
    std::string csv = take_string(csv_text);

    if (!out_path.empty()) {
        std::ofstream csv_file(out_path);
        if (!csv_file) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitInput;
        }
        csv_file << csv;
        std::ofstream sidecar(sidecar_path(out_path));
        if (!sidecar) {
            std::cerr << "error: cannot write " << sidecar_path(out_path) << "\n";
            return kExitInput;
        }
        sidecar << report << "\n";
    }

    if (format == "csv") {
        std::cout << csv;
    } else if (format == "text") {
        char* text = nullptr;
        check(phr_report_to_text(report.c_str(), &text));
        std::cout << take_string(text);
    } else {
        std::cout << report << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain strict-stationarity testing"};
    app.require_subcommand(1);

    // --- test ---
    auto* test = app.add_subcommand("test", "run PHR and/or KPSS on a CSV column");
    InputOptions test_in;
    PreprocessOptions pre;
    bool run_phr = false;
    bool run_kpss = false;
    int frame_length = 0;
    double alpha = 0.05;
    std::string bandwidth = "auto";
    std::string test_format = "json";
    add_input_options(test, test_in, true);
    test->add_option("--trim", pre.trim_fraction, "trim this fraction at each tail");
    test->add_flag("--detrend", pre.detrend, "remove a least-squares line");
    test->add_flag("--demean", pre.demean, "subtract the mean");
    test->add_option("--prewhiten", pre.prewhiten,
                     "AR prewhitening, optional max order (default 10)")
        ->expected(0, 1);
    test->add_option("--roll-window", pre.roll_window,
                     "rolling-variance standardization window");
    test->add_flag("--phr", run_phr, "run the cumulant-spectrum stationarity test");
    test->add_flag("--kpss", run_kpss, "run the KPSS level-stationarity test");
    test->add_option("--L", frame_length, "frame length (even; 0 = nearest even to sqrt(T))");
    test->add_option("--alpha", alpha, "significance level");
    test->add_option("--bandwidth", bandwidth, "KPSS Bartlett lags or 'auto'");
    test->add_option("--format", test_format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // --- simulate ---
    auto* simulate = app.add_subcommand("simulate", "run Monte Carlo scenarios");
    std::string scenario_path;
    int reps_override = 0;
    std::uint64_t seed_override = 0;
    int workers = 0;
    std::string out_path;
    std::string sim_format = "json";
    simulate->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    simulate->add_option("--reps", reps_override, "override the replication count");
    auto* seed_opt = simulate->add_option("--seed", seed_override, "override the base seed");
    simulate->add_option("--workers", workers, "worker threads (0 = all cores)");
    simulate->add_option("--out", out_path, "write the CSV report here (+ JSON sidecar)");
    simulate->add_option("--format", sim_format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // --- describe ---
    auto* describe = app.add_subcommand("describe", "descriptive statistics of a CSV column");
    InputOptions describe_in;
    std::string describe_format = "json";
    add_input_options(describe, describe_in, true);
    describe->add_option("--format", describe_format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    // --prewhiten with no value: CLI11 leaves the vector empty; detect via count().
    pre.prewhiten_flag = test->count("--prewhiten") > 0;

    try {
        if (test->parsed()) {
            return cmd_test(test_in, pre, run_phr, run_kpss, frame_length, alpha, bandwidth,
                            test_format);
        }
        if (simulate->parsed()) {
            return cmd_simulate(scenario_path, reps_override, seed_opt->count() > 0,
                                seed_override, workers, out_path, sim_format);
        }
        if (describe->parsed()) {
            return cmd_describe(describe_in, describe_format);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGeneric;
    }
    return kExitInput;
}
