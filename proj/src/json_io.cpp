#include "json_io.hpp"

#include <json.hpp>

namespace phr {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        fail(ErrorCode::parse, "malformed JSON input");
    }
    return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    return it->get<T>();
}

json dgp_to_json(const DgpSpec& spec, bool with_seed) {
    json j{{"kind", to_string(spec.kind)},
           {"T", spec.length},
           {"lambda", spec.lambda},
           {"rho", spec.innovations.rho},
           {"distribution", to_string(spec.innovations.distribution)},
           {"df", spec.innovations.df},
           {"pattern", to_string(spec.variance.pattern)},
           {"m", spec.variance.m},
           {"c", spec.variance.c},
           {"gamma", spec.variance.gamma}};
    if (with_seed) j["seed"] = spec.seed;
    return j;
}

DgpSpec dgp_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("T")) {
        fail(ErrorCode::parse, "DGP spec needs at least 'kind' and 'T'");
    }
    DgpSpec spec;
    spec.kind = kind_from_string(j.at("kind").get<std::string>());
    spec.length = j.at("T").get<int>();
    spec.lambda = get_or(j, "lambda", 0.0);
    spec.innovations.rho = get_or(j, "rho", 0.0);
    spec.innovations.distribution =
        distribution_from_string(get_or<std::string>(j, "distribution", "normal"));
    spec.innovations.df = get_or(j, "df", 0);
    spec.variance.pattern = pattern_from_string(get_or<std::string>(j, "pattern", "constant"));
    spec.variance.m = get_or(j, "m", 0.0);
    spec.variance.c = get_or(j, "c", 1.0);
    spec.variance.gamma = get_or(j, "gamma", 10.0);
    spec.seed = get_or<std::uint64_t>(j, "seed", 0);
    return spec;
}

json scenario_to_json(const Scenario& sc) {
    json tests = json::array();
    for (const auto& t : sc.tests) {
        json jt{{"test", t.name}, {"alpha", t.alpha}};
        if (t.name == "PHR") jt["L"] = t.frame_length;
        if (t.name == "KPSS") jt["bandwidth"] = t.bandwidth;
        tests.push_back(jt);
    }
    json pre{{"itrim", sc.preprocessing.trim_fraction},
             {"idetrend", sc.preprocessing.detrend},
             {"idemean", sc.preprocessing.demean}};
    if (sc.preprocessing.prewhiten && sc.preprocessing.prewhiten_max_order != 10) {
        pre["prewhiten"] = sc.preprocessing.prewhiten_max_order;
    } else {
        pre["prewhiten"] = sc.preprocessing.prewhiten;
    }
    return json{{"dgp", dgp_to_json(sc.dgp, false)},
                {"preprocessing", pre},
                {"tests", tests},
                {"replications", sc.replications},
                {"base_seed", sc.base_seed}};
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dgp") || !j.contains("tests")) {
        fail(ErrorCode::parse, "scenario needs 'dgp' and 'tests'");
    }
    Scenario sc;
    sc.dgp = dgp_from_json(j.at("dgp"));
    sc.replications = get_or(j, "replications", 1000);
    sc.base_seed = get_or<std::uint64_t>(j, "base_seed", 0);

    if (j.contains("preprocessing")) {
        const json& p = j.at("preprocessing");
        sc.preprocessing.trim_fraction = get_or(p, "itrim", 0.0);
        sc.preprocessing.detrend = get_or(p, "idetrend", false);
        sc.preprocessing.demean = get_or(p, "idemean", false);
        if (p.contains("prewhiten")) {
            const json& pw = p.at("prewhiten");
            if (pw.is_boolean()) {
                sc.preprocessing.prewhiten = pw.get<bool>();
            } else if (pw.is_number_integer()) {
                // integer enables prewhitening with that max order
                sc.preprocessing.prewhiten = true;
                sc.preprocessing.prewhiten_max_order = pw.get<int>();
            } else {
                fail(ErrorCode::parse, "'prewhiten' must be a flag or a max order");
            }
        }
    }

    for (const auto& jt : j.at("tests")) {
        TestSpec t;
        t.name = jt.at("test").get<std::string>();
        t.alpha = get_or(jt, "alpha", 0.05);
        t.frame_length = get_or(jt, "L", 0);
        auto bw = jt.find("bandwidth");
        if (bw != jt.end() && bw->is_string()) {
            if (bw->get<std::string>() != "auto") {
                fail(ErrorCode::parse, "bandwidth must be an integer or \"auto\"");
            }
            t.bandwidth = -1;
        } else {
            t.bandwidth = get_or(jt, "bandwidth", -1);
        }
        sc.tests.push_back(std::move(t));
    }
    return sc;
}

json cell_to_json(const CellStats& cell) {
    return json{{"rate", cell.rate},           {"se", cell.se},
                {"rejections", cell.rejections}, {"successes", cell.successes},
                {"failures", cell.failures},   {"base_seed", cell.base_seed}};
}

CellStats cell_from_json(const json& j) {
    CellStats c;
    c.rate = j.at("rate").get<double>();
    c.se = j.at("se").get<double>();
    c.rejections = j.at("rejections").get<int>();
    c.successes = j.at("successes").get<int>();
    c.failures = j.at("failures").get<int>();
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    return c;
}

}  // namespace

std::string to_json_string(const DescriptiveStats& stats) {
    return json{{"n", stats.n},
                {"mean", stats.mean},
                {"std_dev", stats.std_dev},
                {"min", stats.min},
                {"max", stats.max},
                {"skewness", stats.skewness},
                {"excess_kurtosis", stats.excess_kurtosis}}
        .dump();
}

std::string to_json_string(const CumulantGrid& grid) {
    json pairs = json::array();
    json re = json::array();
    json im = json::array();
    for (std::size_t i = 0; i < grid.pairs.size(); ++i) {
        pairs.push_back(json::array({grid.pairs[i].k1, grid.pairs[i].k2}));
        re.push_back(grid.k_hat[i].real());
        im.push_back(grid.k_hat[i].imag());
    }
    return json{{"L", grid.plan.frame_length},
                {"P", grid.plan.frame_count},
                {"pairs", pairs},
                {"k_hat_re", re},
                {"k_hat_im", im},
                {"s_hat", grid.s_hat}}
        .dump();
}

std::string to_json_string(const TestResult& result) {
    if (result.test_name == "KPSS") {
        return json{{"test", "KPSS"},
                    {"statistic", result.statistic},
                    {"p_bracket", json::array({result.p_lower, result.p_upper})},
                    {"alpha", result.alpha},
                    {"reject", result.reject},
                    {"bandwidth", result.bandwidth}}
            .dump();
    }
    return json{{"test", result.test_name},
                {"D", result.statistic},
                {"p_value", result.p_value},
                {"alpha", result.alpha},
                {"reject", result.reject},
                {"L", result.frame_length},
                {"P", result.frame_count},
                {"n_pairs", result.n_pairs},
                {"preprocessing", result.preprocessing}}
        .dump();
}

std::string to_json_string(const DgpSpec& spec) {
    return dgp_to_json(spec, true).dump();
}

DgpSpec dgp_spec_from_json_string(const std::string& text) {
    return dgp_from_json(parse(text));
}

std::string to_json_string(const Scenario& scenario) {
    return scenario_to_json(scenario).dump();
}

ScenarioFile parse_scenario_file(const std::string& text) {
    json j = parse(text);
    ScenarioFile file;
    if (j.is_array()) {
        for (const auto& item : j) file.scenarios.push_back(scenario_from_json(item));
    } else if (j.is_object() && j.contains("scenarios")) {
        for (const auto& item : j.at("scenarios")) {
            file.scenarios.push_back(scenario_from_json(item));
        }
        if (j.contains("grouping")) {
            for (const auto& g : j.at("grouping")) {
                file.grouping.push_back(g.get<std::string>());
            }
        }
    } else {
        file.scenarios.push_back(scenario_from_json(j));
    }
    if (file.scenarios.empty()) {
        fail(ErrorCode::parse, "scenario file contains no scenarios");
    }
    return file;
}

std::string to_json_string(const TableReport& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json cells = json::object();
        for (const auto& [column, cell] : row.cells) cells[column] = cell_to_json(cell);
        rows.push_back(json{{"key", row.key}, {"cells", cells}});
    }
    json scenarios = json::array();
    for (const auto& sc : table.scenarios) scenarios.push_back(scenario_to_json(sc));
    return json{{"grouping", table.grouping},
                {"columns", table.columns},
                {"rows", rows},
                {"scenarios", scenarios}}
        .dump();
}

TableReport table_report_from_json_string(const std::string& text) {
    json j = parse(text);
    TableReport table;
    try {
        for (const auto& g : j.at("grouping")) table.grouping.push_back(g.get<std::string>());
        for (const auto& c : j.at("columns")) table.columns.push_back(c.get<std::string>());
        for (const auto& jr : j.at("rows")) {
            TableReport::Row row;
            for (const auto& k : jr.at("key")) row.key.push_back(k.get<std::string>());
            for (const auto& [column, cell] : jr.at("cells").items()) {
                row.cells[column] = cell_from_json(cell);
            }
            table.rows.push_back(std::move(row));
        }
        if (j.contains("scenarios")) {
            for (const auto& js : j.at("scenarios")) {
                table.scenarios.push_back(scenario_from_json(js));
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::parse, std::string("malformed table report: ") + e.what());
    }
    return table;
}

}  // namespace phr
