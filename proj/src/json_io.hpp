#pragma once

#include <string>
#include <vector>

#include "montecarlo.hpp"

namespace phr {

std::string to_json_string(const DescriptiveStats& stats);

// {L, P, pairs: [[k1,k2],...], k_hat_re, k_hat_im, s_hat}
std::string to_json_string(const CumulantGrid& grid);

// PHR:  {test, D, p_value, alpha, reject, L, P, n_pairs, preprocessing}
// KPSS: {test, statistic, p_bracket, alpha, reject, bandwidth}
std::string to_json_string(const TestResult& result);

// Flat fields: kind, T, lambda, rho, distribution, df, pattern, m, c,
// gamma, seed.
std::string to_json_string(const DgpSpec& spec);
DgpSpec dgp_spec_from_json_string(const std::string& text);

std::string to_json_string(const Scenario& scenario);

struct ScenarioFile {
    std::vector<Scenario> scenarios;
    std::vector<std::string> grouping;  // may be empty (autodetect)
};

// Accepts a single scenario object, a bare array of scenarios, or
// {"scenarios": [...], "grouping": [...]}.
ScenarioFile parse_scenario_file(const std::string& text);

std::string to_json_string(const TableReport& table);
TableReport table_report_from_json_string(const std::string& text);

}  // namespace phr
