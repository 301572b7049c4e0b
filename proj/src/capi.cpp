#include "phr/phr.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "json_io.hpp"

struct phr_series {
    phr::TimeSeries impl;
};

namespace {

thread_local std::string g_last_error;

phr_status map_code(phr::ErrorCode code) {
    switch (code) {
        case phr::ErrorCode::invalid_argument: return PHR_ERROR_INVALID_ARGUMENT;
        case phr::ErrorCode::io: return PHR_ERROR_IO;
        case phr::ErrorCode::parse: return PHR_ERROR_PARSE;
        case phr::ErrorCode::numeric: return PHR_ERROR_NUMERIC;
    }
    return PHR_ERROR_INTERNAL;
}

template <typename Fn>
phr_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return PHR_OK;
    } catch (const phr::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PHR_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return PHR_ERROR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) phr::fail(phr::ErrorCode::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* phr_version(void) { return "0.1.0"; }

const char* phr_status_name(phr_status status) {
    switch (status) {
        case PHR_OK: return "ok";
        case PHR_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case PHR_ERROR_IO: return "io";
        case PHR_ERROR_PARSE: return "parse";
        case PHR_ERROR_NUMERIC: return "numeric";
        case PHR_ERROR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* phr_last_error_message(void) { return g_last_error.c_str(); }

void phr_string_destroy(char* str) { std::free(str); }

phr_status phr_series_create(const double* values, size_t count, double sampling_interval,
                             phr_series** out_series) {
    return guarded([&] {
        require(values != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{
            phr::TimeSeries(std::vector<double>(values, values + count), sampling_interval)};
    });
}

phr_status phr_series_load_csv(const char* path, const char* column, int skip_header,
                               phr_series** out_series) {
    return guarded([&] {
        require(path != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{
            phr::load_csv(path, column == nullptr ? "0" : column, skip_header != 0)};
    });
}

void phr_series_destroy(phr_series* series) { delete series; }

size_t phr_series_size(const phr_series* series) {
    return series == nullptr ? 0 : series->impl.size();
}

double phr_series_sampling_interval(const phr_series* series) {
    return series == nullptr ? 0.0 : series->impl.sampling_interval();
}

phr_status phr_series_copy_values(const phr_series* series, double* buffer, size_t capacity) {
    return guarded([&] {
        require(series != nullptr && buffer != nullptr, "null pointer argument");
        require(capacity >= series->impl.size(), "buffer too small");
        const auto& v = series->impl.values();
        std::memcpy(buffer, v.data(), v.size() * sizeof(double));
    });
}

phr_status phr_series_preprocessing_log(const phr_series* series, char** out_json) {
    return guarded([&] {
        require(series != nullptr && out_json != nullptr, "null pointer argument");
        *out_json = dup_string(nlohmann::json(series->impl.preprocessing_log()).dump());
    });
}

phr_status phr_series_log_returns(const phr_series* series, phr_series** out_series) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{phr::log_returns(series->impl)};
    });
}

phr_status phr_series_trim(const phr_series* series, double fraction, phr_series** out_series) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{phr::trim(series->impl, fraction)};
    });
}

phr_status phr_series_demean(const phr_series* series, phr_series** out_series) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{phr::demean(series->impl)};
    });
}

phr_status phr_series_detrend(const phr_series* series, phr_series** out_series) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{phr::detrend(series->impl)};
    });
}

phr_status phr_series_prewhiten(const phr_series* series, int max_order,
                                phr_series** out_series, char** out_model_json) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        auto [filtered, model] = phr::prewhiten(series->impl, max_order);
        if (out_model_json != nullptr) {
            *out_model_json = dup_string(nlohmann::json{
                {"order", model.order},
                {"coefficients", model.coefficients},
                {"residual_variance", model.residual_variance}}
                                             .dump());
        }
        *out_series = new phr_series{std::move(filtered)};
    });
}

phr_status phr_series_rolling_standardize(const phr_series* series, int window,
                                          phr_series** out_series) {
    return guarded([&] {
        require(series != nullptr && out_series != nullptr, "null pointer argument");
        *out_series = new phr_series{phr::rolling_variance_standardize(series->impl, window)};
    });
}

phr_status phr_series_describe(const phr_series* series, char** out_json) {
    return guarded([&] {
        require(series != nullptr && out_json != nullptr, "null pointer argument");
        *out_json = dup_string(phr::to_json_string(phr::describe(series->impl)));
    });
}

phr_status phr_run_phr_test(const phr_series* series, int frame_length, double alpha,
                            char** out_result_json, char** out_grid_json) {
    return guarded([&] {
        require(series != nullptr && out_result_json != nullptr, "null pointer argument");
        auto outcome = phr::phr_test(series->impl, frame_length, alpha);
        if (out_grid_json != nullptr) {
            *out_grid_json = dup_string(phr::to_json_string(outcome.grid));
        }
        *out_result_json = dup_string(phr::to_json_string(outcome.result));
    });
}

phr_status phr_run_kpss_test(const phr_series* series, int bandwidth, double alpha,
                             char** out_result_json) {
    return guarded([&] {
        require(series != nullptr && out_result_json != nullptr, "null pointer argument");
        auto result = phr::kpss_test(series->impl, phr::KpssConfig{bandwidth, alpha});
        *out_result_json = dup_string(phr::to_json_string(result));
    });
}

phr_status phr_run_scenarios(const char* scenarios_json, int workers, char** out_report_json) {
    return guarded([&] {
        require(scenarios_json != nullptr && out_report_json != nullptr,
                "null pointer argument");
        auto file = phr::parse_scenario_file(scenarios_json);
        auto table = phr::table_sweep(file.scenarios, file.grouping, workers);
        *out_report_json = dup_string(phr::to_json_string(table));
    });
}

phr_status phr_report_to_csv(const char* report_json, char** out_csv) {
    return guarded([&] {
        require(report_json != nullptr && out_csv != nullptr, "null pointer argument");
        *out_csv = dup_string(phr::table_to_csv(phr::table_report_from_json_string(report_json)));
    });
}

phr_status phr_report_to_text(const char* report_json, char** out_text) {
    return guarded([&] {
        require(report_json != nullptr && out_text != nullptr, "null pointer argument");
        *out_text =
            dup_string(phr::table_to_text(phr::table_report_from_json_string(report_json)));
    });
}

}  // extern "C"
