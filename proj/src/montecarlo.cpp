#include "montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace phr {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool run_one_test(const TestSpec& test, const TimeSeries& series) {
    if (test.name == "PHR") {
        return phr_test(series, test.frame_length, test.alpha).result.reject;
    }
    if (test.name == "KPSS") {
        return kpss_test(series, KpssConfig{test.bandwidth, test.alpha}).reject;
    }
    fail(ErrorCode::invalid_argument, "unknown test '" + test.name + "'");
}

}  // namespace

void validate(const Scenario& scenario) {
    if (scenario.replications < 100) {
        fail(ErrorCode::invalid_argument, "replications must be at least 100");
    }
    if (scenario.tests.empty()) {
        fail(ErrorCode::invalid_argument, "scenario must configure at least one test");
    }
    for (const auto& t : scenario.tests) {
        if (t.name != "PHR" && t.name != "KPSS") {
            fail(ErrorCode::invalid_argument, "unknown test '" + t.name + "'");
        }
        if (!(t.alpha > 0.0 && t.alpha < 1.0)) {
            fail(ErrorCode::invalid_argument, "test alpha must lie in (0, 1)");
        }
    }
    DgpSpec probe = scenario.dgp;
    validate(probe);
    if (!(scenario.preprocessing.trim_fraction >= 0.0 &&
          scenario.preprocessing.trim_fraction < 0.5)) {
        fail(ErrorCode::invalid_argument, "trim fraction must lie in [0, 0.5)");
    }
}

TimeSeries apply_preprocessing(const TimeSeries& series, const Preprocessing& steps) {
    TimeSeries out = series;
    if (steps.trim_fraction > 0.0) out = trim(out, steps.trim_fraction);
    if (steps.detrend) out = detrend(out);
    if (steps.demean) out = demean(out);
    if (steps.prewhiten) out = prewhiten(out, steps.prewhiten_max_order).first;
    return out;
}

SimulationReport run_scenario(const Scenario& scenario, int workers) {
    validate(scenario);
    const int reps = scenario.replications;
    const auto n_tests = scenario.tests.size();

    enum : std::uint8_t { kAccept = 0, kReject = 1, kFailed = 2 };
    std::vector<std::vector<std::uint8_t>> outcome(
        static_cast<std::size_t>(reps), std::vector<std::uint8_t>(n_tests, kAccept));
    std::vector<std::string> errors(static_cast<std::size_t>(reps));

    parallel_for(reps, workers, [&](int r) {
        auto& row = outcome[static_cast<std::size_t>(r)];
        DgpSpec dgp = scenario.dgp;
        dgp.seed = derive_seed(scenario.base_seed, static_cast<std::uint64_t>(r));
        TimeSeries raw = gen_series(dgp);
        TimeSeries prepared = raw;
        try {
            prepared = apply_preprocessing(raw, scenario.preprocessing);
        } catch (const Error& e) {
            std::fill(row.begin(), row.end(), kFailed);
            errors[static_cast<std::size_t>(r)] = e.what();
            return;
        }
        for (std::size_t ti = 0; ti < n_tests; ++ti) {
            try {
                row[ti] = run_one_test(scenario.tests[ti], prepared) ? kReject : kAccept;
            } catch (const Error& e) {
                row[ti] = kFailed;
                if (errors[static_cast<std::size_t>(r)].empty()) {
                    errors[static_cast<std::size_t>(r)] = e.what();
                }
            }
        }
    });

    SimulationReport report;
    report.scenario = scenario;
    report.cells.resize(n_tests);
    for (std::size_t ti = 0; ti < n_tests; ++ti) {
        auto& cell = report.cells[ti];
        cell.spec = scenario.tests[ti];
        for (int r = 0; r < reps; ++r) {
            switch (outcome[static_cast<std::size_t>(r)][ti]) {
                case kReject:
                    ++cell.rejections;
                    ++cell.successes;
                    break;
                case kAccept:
                    ++cell.successes;
                    break;
                default:
                    ++cell.failures;
                    if (cell.first_error.empty()) {
                        cell.first_error = errors[static_cast<std::size_t>(r)];
                    }
                    break;
            }
        }
        if (cell.successes > 0) {
            cell.rate = static_cast<double>(cell.rejections) /
                        static_cast<double>(cell.successes);
            cell.se = std::sqrt(cell.rate * (1.0 - cell.rate) /
                                static_cast<double>(cell.successes));
        }
    }
    for (int r = 0; r < reps; ++r) {
        const auto& row = outcome[static_cast<std::size_t>(r)];
        if (std::any_of(row.begin(), row.end(), [](std::uint8_t o) { return o == kFailed; })) {
            ++report.failed_replications;
        }
    }

    if (100 * report.failed_replications > reps) {
        std::ostringstream msg;
        msg << report.failed_replications << " of " << reps
            << " replications failed (more than 1%):";
        for (const auto& cell : report.cells) {
            if (cell.failures > 0) {
                msg << " " << cell.spec.name << "=" << cell.failures << " ('"
                    << cell.first_error << "')";
            }
        }
        fail(ErrorCode::numeric, msg.str());
    }
    return report;
}

std::string scenario_field(const Scenario& scenario, const std::string& name) {
    const auto& dgp = scenario.dgp;
    const auto& pre = scenario.preprocessing;
    if (name == "itrim") return format_double(pre.trim_fraction);
    if (name == "idetrend") return pre.detrend ? "1" : "0";
    if (name == "idemean") return pre.demean ? "1" : "0";
    if (name == "prewhiten") return pre.prewhiten ? "1" : "0";
    if (name == "kind") return to_string(dgp.kind);
    if (name == "pattern") return to_string(dgp.variance.pattern);
    if (name == "m") return format_double(dgp.variance.m);
    if (name == "c") return format_double(dgp.variance.c);
    if (name == "gamma") return format_double(dgp.variance.gamma);
    if (name == "lambda") return format_double(dgp.lambda);
    if (name == "rho") return format_double(dgp.innovations.rho);
    if (name == "distribution") return to_string(dgp.innovations.distribution);
    if (name == "df") return std::to_string(dgp.innovations.df);
    if (name == "T") return std::to_string(dgp.length);
    if (name == "L") {
        for (const auto& t : scenario.tests) {
            if (t.name == "PHR") return std::to_string(t.frame_length);
        }
        return "";
    }
    fail(ErrorCode::invalid_argument, "unknown grouping field '" + name + "'");
}

namespace {

std::vector<std::string> autodetect_grouping(const std::vector<SimulationReport>& reports) {
    static const std::vector<std::string> candidates = {
        "kind", "pattern", "m", "c", "lambda", "distribution", "df",
        "rho",  "itrim",   "idetrend", "idemean", "prewhiten", "L"};
    std::vector<std::string> grouping;
    for (const auto& field : candidates) {
        std::set<std::string> values;
        for (const auto& rep : reports) values.insert(scenario_field(rep.scenario, field));
        if (values.size() > 1) grouping.push_back(field);
    }
    return grouping;
}

}  // namespace

TableReport build_table(const std::vector<SimulationReport>& reports,
                        std::vector<std::string> grouping) {
    if (reports.empty()) {
        fail(ErrorCode::invalid_argument, "no simulation reports to tabulate");
    }
    if (grouping.empty()) grouping = autodetect_grouping(reports);

    TableReport table;
    table.grouping = grouping;

    std::set<std::pair<std::string, int>> column_keys;  // (test, T)
    for (const auto& rep : reports) {
        for (const auto& cell : rep.cells) {
            column_keys.insert({cell.spec.name, rep.scenario.dgp.length});
        }
        table.scenarios.push_back(rep.scenario);
    }
    for (const auto& [test, T] : column_keys) {
        table.columns.push_back(test + "." + std::to_string(T));
    }

    for (const auto& rep : reports) {
        std::vector<std::string> key;
        key.reserve(grouping.size());
        for (const auto& field : grouping) key.push_back(scenario_field(rep.scenario, field));

        auto row = std::find_if(table.rows.begin(), table.rows.end(),
                                [&](const TableReport::Row& r) { return r.key == key; });
        if (row == table.rows.end()) {
            table.rows.push_back(TableReport::Row{key, {}});
            row = std::prev(table.rows.end());
        }
        for (const auto& cell : rep.cells) {
            const std::string column =
                cell.spec.name + "." + std::to_string(rep.scenario.dgp.length);
            if (row->cells.count(column) != 0) {
                fail(ErrorCode::invalid_argument,
                     "inconsistent grouping keys: duplicate cell " + column +
                         " for one table row");
            }
            row->cells[column] = CellStats{cell.rate,      cell.se,       cell.rejections,
                                           cell.successes, cell.failures, rep.scenario.base_seed};
        }
    }
    return table;
}

TableReport table_sweep(const std::vector<Scenario>& scenarios,
                        std::vector<std::string> grouping, int workers) {
    if (scenarios.empty()) {
        fail(ErrorCode::invalid_argument, "no scenarios to run");
    }
    std::vector<SimulationReport> reports;
    reports.reserve(scenarios.size());
    for (const auto& sc : scenarios) reports.push_back(run_scenario(sc, workers));
    return build_table(reports, std::move(grouping));
}

std::string table_to_csv(const TableReport& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.grouping.size(); ++i) {
        if (i > 0) out << ",";
        out << table.grouping[i];
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0 || !table.grouping.empty()) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.key.size(); ++i) {
            if (i > 0) out << ",";
            out << row.key[i];
        }
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i > 0 || !table.grouping.empty()) out << ",";
            auto it = row.cells.find(table.columns[i]);
            if (it != row.cells.end()) out << format_double(it->second.rate);
        }
        out << "\n";
    }
    return out.str();
}

std::string table_to_text(const TableReport& table) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header = table.grouping;
    header.insert(header.end(), table.columns.begin(), table.columns.end());
    grid.push_back(header);
    for (const auto& row : table.rows) {
        std::vector<std::string> line = row.key;
        for (const auto& column : table.columns) {
            auto it = row.cells.find(column);
            line.push_back(it != row.cells.end() ? format_double(it->second.rate) : "-");
        }
        grid.push_back(line);
    }

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            width[i] = std::max(width[i], line[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) out << "  ";
            out << line[i];
            if (i + 1 < line.size()) {
                for (std::size_t pad = line[i].size(); pad < width[i]; ++pad) out << ' ';
            }
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace phr
