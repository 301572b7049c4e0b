#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "datagen.hpp"
#include "kpss.hpp"
#include "phr_test.hpp"

namespace phr {

// One test to run inside a scenario.
struct TestSpec {
    std::string name;      // "PHR" or "KPSS"
    int frame_length = 0;  // PHR; 0 = auto
    double alpha = 0.05;
    int bandwidth = -1;    // KPSS; -1 = auto
};

// Preprocessing flags, applied in the fixed order
// trim -> detrend -> demean -> prewhiten.
struct Preprocessing {
    double trim_fraction = 0.0;
    bool detrend = false;
    bool demean = false;
    bool prewhiten = false;
    int prewhiten_max_order = 10;
};

struct Scenario {
    DgpSpec dgp;  // template; the seed field is ignored
    Preprocessing preprocessing;
    std::vector<TestSpec> tests;
    int replications = 1000;
    std::uint64_t base_seed = 0;
};

void validate(const Scenario& scenario);

TimeSeries apply_preprocessing(const TimeSeries& series, const Preprocessing& steps);

// Outcome of one test across all replications of a scenario.
struct TestCell {
    TestSpec spec;
    int rejections = 0;
    int successes = 0;
    int failures = 0;
    double rate = 0.0;  // rejections / successes
    double se = 0.0;    // sqrt(rate (1 - rate) / successes)
    std::string first_error;
};

struct SimulationReport {
    Scenario scenario;
    std::vector<TestCell> cells;
    int failed_replications = 0;  // replications where any test errored
};

// Runs the replications (seed of replication r is derived from
// (base_seed, r)), applies the preprocessing, and evaluates every test on
// the same generated series. Results are identical for any worker count.
// More than 1% failed replications raises a numeric error with a breakdown.
SimulationReport run_scenario(const Scenario& scenario, int workers);

// Grid of rejection rates: one row per distinct grouping-key value, one
// column per (test, T). A repeated (row, column) cell is an error.
struct CellStats {
    double rate = 0.0;
    double se = 0.0;
    int rejections = 0;
    int successes = 0;
    int failures = 0;
    std::uint64_t base_seed = 0;
};

struct TableReport {
    std::vector<std::string> grouping;  // row-key field names
    std::vector<std::string> columns;   // "PHR.1000", sorted by (test, T)
    struct Row {
        std::vector<std::string> key;
        std::map<std::string, CellStats> cells;
    };
    std::vector<Row> rows;
    std::vector<Scenario> scenarios;  // echo
};

// Value of a named row field ("itrim", "idetrend", "idemean", "prewhiten",
// "kind", "pattern", "m", "c", "lambda", "rho", "distribution", "df", "T",
// "L") for grouping purposes.
std::string scenario_field(const Scenario& scenario, const std::string& name);

// Runs every scenario and lays the cells out as a table. An empty grouping
// autodetects the fields that vary across scenarios.
TableReport table_sweep(const std::vector<Scenario>& scenarios,
                        std::vector<std::string> grouping, int workers);

TableReport build_table(const std::vector<SimulationReport>& reports,
                        std::vector<std::string> grouping);

std::string table_to_csv(const TableReport& table);
std::string table_to_text(const TableReport& table);

}  // namespace phr
