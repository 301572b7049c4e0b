// Exercises the shared-library surface exactly as an external consumer
// would: through phr/phr.h only.
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phr/phr.h"

using nlohmann::json;

namespace {

struct Series {
    phr_series* ptr = nullptr;
    ~Series() { phr_series_destroy(ptr); }
};

std::string take(char* s) {
    std::string out = s == nullptr ? "" : s;
    phr_string_destroy(s);
    return out;
}

std::vector<double> gaussians(std::size_t n, unsigned seed) {
    // Cheap deterministic pseudo-normals for API-level checks.
    std::vector<double> v(n);
    std::uint64_t state = seed;
    auto next = [&state] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        double u1 = 1.0 - next();
        double u2 = next();
        double r = std::sqrt(-2.0 * std::log(u1));
        v[i] = r * std::cos(2.0 * M_PI * u2);
        v[i + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    if (n % 2 == 1) v[n - 1] = 0.1;
    return v;
}

}  // namespace

TEST_CASE("series lifecycle and accessors") {
    std::vector<double> values{1.0, 2.0, 3.0, 4.0};
    Series s;
    REQUIRE(phr_series_create(values.data(), values.size(), 1.0, &s.ptr) == PHR_OK);
    CHECK(phr_series_size(s.ptr) == 4);
    CHECK(phr_series_sampling_interval(s.ptr) == 1.0);

    std::vector<double> copy(4);
    CHECK(phr_series_copy_values(s.ptr, copy.data(), copy.size()) == PHR_OK);
    CHECK(copy == values);
    CHECK(phr_series_copy_values(s.ptr, copy.data(), 2) == PHR_ERROR_INVALID_ARGUMENT);

    char* log_json = nullptr;
    CHECK(phr_series_preprocessing_log(s.ptr, &log_json) == PHR_OK);
    CHECK(take(log_json) == "[]");

    phr_series* bad = nullptr;
    CHECK(phr_series_create(nullptr, 4, 1.0, &bad) == PHR_ERROR_INVALID_ARGUMENT);
    double nan_value = std::nan("");
    CHECK(phr_series_create(&nan_value, 1, 1.0, &bad) == PHR_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(phr_last_error_message()).find("finite") != std::string::npos);
}

TEST_CASE("csv loading through the API") {
    auto path = std::filesystem::temp_directory_path() / "phr_capi.csv";
    std::ofstream(path) << "ret\n0.5\n-0.5\n0.25\n";

    Series s;
    REQUIRE(phr_series_load_csv(path.string().c_str(), "ret", 0, &s.ptr) == PHR_OK);
    CHECK(phr_series_size(s.ptr) == 3);

    phr_series* missing = nullptr;
    CHECK(phr_series_load_csv("/no/such/file.csv", "0", 0, &missing) == PHR_ERROR_IO);
    CHECK(std::string(phr_last_error_message()).find("/no/such/file.csv") !=
          std::string::npos);
}

TEST_CASE("transform chain") {
    auto prices = gaussians(600, 11);
    for (auto& p : prices) p = std::exp(0.01 * p) + 1.0;
    Series raw;
    REQUIRE(phr_series_create(prices.data(), prices.size(), 1.0, &raw.ptr) == PHR_OK);

    Series returns;
    REQUIRE(phr_series_log_returns(raw.ptr, &returns.ptr) == PHR_OK);
    CHECK(phr_series_size(returns.ptr) == 599);

    Series trimmed;
    REQUIRE(phr_series_trim(returns.ptr, 0.01, &trimmed.ptr) == PHR_OK);
    CHECK(phr_series_size(trimmed.ptr) == 599 - 2 * 5);

    Series centered;
    REQUIRE(phr_series_demean(trimmed.ptr, &centered.ptr) == PHR_OK);
    Series detrended;
    REQUIRE(phr_series_detrend(centered.ptr, &detrended.ptr) == PHR_OK);

    Series whitened;
    char* model_json = nullptr;
    REQUIRE(phr_series_prewhiten(detrended.ptr, 5, &whitened.ptr, &model_json) == PHR_OK);
    auto model = json::parse(take(model_json));
    CHECK(model.contains("order"));
    CHECK(model.contains("coefficients"));
    CHECK(model["residual_variance"].get<double>() > 0.0);

    Series standardized;
    REQUIRE(phr_series_rolling_standardize(whitened.ptr, 50, &standardized.ptr) == PHR_OK);

    char* log_json = nullptr;
    REQUIRE(phr_series_preprocessing_log(standardized.ptr, &log_json) == PHR_OK);
    auto log = json::parse(take(log_json));
    REQUIRE(log.size() == 6);
    CHECK(log[0] == "log_returns");
    CHECK(log[1] == "trim(0.01)");
    CHECK(log[5] == "rolling_standardize(window=50)");
}

TEST_CASE("describe JSON schema") {
    auto values = gaussians(500, 21);
    Series s;
    REQUIRE(phr_series_create(values.data(), values.size(), 1.0, &s.ptr) == PHR_OK);
    char* out = nullptr;
    REQUIRE(phr_series_describe(s.ptr, &out) == PHR_OK);
    auto stats = json::parse(take(out));
    for (const char* key :
         {"n", "mean", "std_dev", "min", "max", "skewness", "excess_kurtosis"}) {
        CHECK(stats.contains(key));
    }
    CHECK(stats["n"].get<int>() == 500);
    CHECK(stats["min"].get<double>() <= stats["mean"].get<double>());
    CHECK(stats["mean"].get<double>() <= stats["max"].get<double>());
}

TEST_CASE("PHR test JSON schema and grid") {
    auto values = gaussians(1000, 31);
    Series s;
    REQUIRE(phr_series_create(values.data(), values.size(), 1.0, &s.ptr) == PHR_OK);

    char* result_json = nullptr;
    char* grid_json = nullptr;
    REQUIRE(phr_run_phr_test(s.ptr, 0, 0.05, &result_json, &grid_json) == PHR_OK);
    auto result = json::parse(take(result_json));
    CHECK(result["test"] == "PHR");
    for (const char* key : {"D", "p_value", "alpha", "reject", "L", "P", "n_pairs",
                            "preprocessing"}) {
        CHECK(result.contains(key));
    }
    CHECK(result["L"].get<int>() == 32);
    CHECK(result["P"].get<int>() == 31);
    CHECK(result["reject"].get<bool>() ==
          (result["p_value"].get<double>() < result["alpha"].get<double>()));

    auto grid = json::parse(take(grid_json));
    for (const char* key : {"L", "P", "pairs", "k_hat_re", "k_hat_im", "s_hat"}) {
        CHECK(grid.contains(key));
    }
    const auto n_pairs = grid["pairs"].size();
    CHECK(static_cast<int>(n_pairs) == result["n_pairs"].get<int>());
    CHECK(grid["k_hat_re"].size() == n_pairs);
    CHECK(grid["k_hat_im"].size() == n_pairs);
    CHECK(grid["s_hat"].size() == 17);  // L/2 + 1
    CHECK(grid["pairs"][0] == json::array({1, 0}));

    // degenerate input maps to the numeric status
    std::vector<double> flat(300, 2.0);
    Series constant;
    REQUIRE(phr_series_create(flat.data(), flat.size(), 1.0, &constant.ptr) == PHR_OK);
    char* unused = nullptr;
    CHECK(phr_run_phr_test(constant.ptr, 0, 0.05, &unused, nullptr) == PHR_ERROR_NUMERIC);
}

TEST_CASE("KPSS JSON schema") {
    auto values = gaussians(800, 41);
    Series s;
    REQUIRE(phr_series_create(values.data(), values.size(), 1.0, &s.ptr) == PHR_OK);
    char* out = nullptr;
    REQUIRE(phr_run_kpss_test(s.ptr, -1, 0.05, &out) == PHR_OK);
    auto result = json::parse(take(out));
    CHECK(result["test"] == "KPSS");
    for (const char* key : {"statistic", "p_bracket", "alpha", "reject", "bandwidth"}) {
        CHECK(result.contains(key));
    }
    CHECK(result["p_bracket"].size() == 2);
    CHECK(result["bandwidth"].get<int>() == 6);  // floor(4 * 8^(1/4))

    std::vector<double> flat(300, 2.0);
    Series constant;
    REQUIRE(phr_series_create(flat.data(), flat.size(), 1.0, &constant.ptr) == PHR_OK);
    char* unused = nullptr;
    CHECK(phr_run_kpss_test(constant.ptr, -1, 0.05, &unused) == PHR_ERROR_NUMERIC);
    CHECK(phr_run_kpss_test(s.ptr, -1, 0.07, &unused) == PHR_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("scenario execution and report rendering") {
    const char* scenario = R"({
        "dgp": {"kind": "stationary", "T": 250},
        "tests": [{"test": "PHR", "L": 0, "alpha": 0.05},
                  {"test": "KPSS", "alpha": 0.05, "bandwidth": -1}],
        "replications": 100,
        "base_seed": 77
    })";
    char* report_json = nullptr;
    REQUIRE(phr_run_scenarios(scenario, 2, &report_json) == PHR_OK);
    std::string report = take(report_json);
    auto parsed = json::parse(report);
    CHECK(parsed["columns"] == json::array({"KPSS.250", "PHR.250"}));

    char* csv = nullptr;
    REQUIRE(phr_report_to_csv(report.c_str(), &csv) == PHR_OK);
    auto csv_text = take(csv);
    CHECK(csv_text.rfind("KPSS.250,PHR.250\n", 0) == 0);

    char* text = nullptr;
    REQUIRE(phr_report_to_text(report.c_str(), &text) == PHR_OK);
    CHECK(take(text).find("PHR.250") != std::string::npos);

    char* bad = nullptr;
    CHECK(phr_run_scenarios("{broken", 1, &bad) == PHR_ERROR_PARSE);
    CHECK(phr_report_to_csv("{broken", &bad) == PHR_ERROR_PARSE);
}

TEST_CASE("status names and version") {
    CHECK(std::string(phr_status_name(PHR_OK)) == "ok");
    CHECK(std::string(phr_status_name(PHR_ERROR_NUMERIC)) == "numeric");
    CHECK(std::string(phr_version()).size() > 0);
}
