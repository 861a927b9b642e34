#include "alertsim/alertsim.h"

#include "core/experiments.hpp"
#include "core/json_io.hpp"
#include "core/run_store.hpp"
#include "core/simulation.hpp"

#include <json.hpp>

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

using nlohmann::json;

struct alertsim_run {
    alertsim::SimConfig config; // the config this run executed
    alertsim::RunResult result;
};

struct alertsim_batch {
    alertsim::BatchResult result;
};

struct alertsim_store {
    alertsim::RunStore store;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

alertsim_status fail(alertsim_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
alertsim_status guarded(Body&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const json::parse_error& e) {
        return fail(ALERTSIM_ERR_PARSE, e.what());
    } catch (const json::exception& e) {
        return fail(ALERTSIM_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ALERTSIM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ALERTSIM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ALERTSIM_ERR_INTERNAL, e.what());
    }
}

alertsim_status require(bool condition, const char* message) {
    return condition ? ALERTSIM_OK : fail(ALERTSIM_ERR_INVALID_ARGUMENT, message);
}

alertsim::BatchSpec parse_batch_spec(const std::string& text, unsigned* jobs) {
    const json j = json::parse(text);
    alertsim::BatchSpec spec;
    if (j.contains("kind")) {
        spec.kind = alertsim::batch_kind_from_name(j["kind"].get<std::string>());
    }
    if (j.contains("cacheSizes")) {
        spec.cache_sizes = j["cacheSizes"].get<std::vector<std::size_t>>();
    }
    if (j.contains("reliabilities")) {
        spec.reliabilities = j["reliabilities"].get<std::vector<double>>();
    }
    if (j.contains("policies")) {
        spec.policies = j["policies"].get<std::vector<std::string>>();
    }
    if (j.contains("tieEpsilon")) spec.tie_epsilon = j["tieEpsilon"].get<double>();
    if (j.contains("base")) spec.base = alertsim::sim_config_from_json(j["base"].dump());
    *jobs = j.contains("jobs") ? j["jobs"].get<unsigned>() : 0;
    return spec;
}

} // namespace

extern "C" {

const char* alertsim_version(void) { return "0.1.0"; }

const char* alertsim_status_name(alertsim_status status) {
    switch (status) {
        case ALERTSIM_OK: return "ok";
        case ALERTSIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case ALERTSIM_ERR_PARSE: return "parse_error";
        case ALERTSIM_ERR_NOT_FOUND: return "not_found";
        case ALERTSIM_ERR_DUPLICATE_ID: return "duplicate_id";
        case ALERTSIM_ERR_IO: return "io_error";
        case ALERTSIM_ERR_VERIFY_FAILED: return "verify_failed";
        case ALERTSIM_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* alertsim_last_error(void) { return g_last_error.c_str(); }

void alertsim_string_free(char* text) { delete[] text; }

alertsim_status alertsim_seed_derive(const char* seed_text, uint32_t* out_seed) {
    if (auto status = require(seed_text && out_seed, "seed_text and out_seed are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        *out_seed = alertsim::derive_seed(seed_text);
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_run_simulation(const char* config_json, uint32_t replicate,
                                        alertsim_run** out_run) {
    if (auto status = require(config_json && out_run, "config_json and out_run are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        const alertsim::SimConfig config = alertsim::sim_config_from_json(config_json);
        auto* run = new alertsim_run{config, alertsim::run_simulation(config, replicate)};
        *out_run = run;
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_run_metrics_json(const alertsim_run* run, char** out_json) {
    if (auto status = require(run && out_json, "run and out_json are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        *out_json = copy_string(alertsim::metrics_report_to_json(run->result.metrics));
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_run_result_json(const alertsim_run* run, char** out_json) {
    if (auto status = require(run && out_json, "run and out_json are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        *out_json = copy_string(alertsim::run_result_to_json(run->result));
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_run_timeline_csv(const alertsim_run* run, char** out_csv) {
    if (auto status = require(run && out_csv, "run and out_csv are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        *out_csv = copy_string(alertsim::timeline_to_csv(run->result));
        return ALERTSIM_OK;
    });
}

void alertsim_run_free(alertsim_run* run) { delete run; }

alertsim_status alertsim_run_batch(const char* batch_json, alertsim_store* store_or_null,
                                   const char* experiment_name_or_null,
                                   alertsim_batch** out_batch) {
    if (auto status = require(batch_json && out_batch, "batch_json and out_batch are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        unsigned jobs = 0;
        const alertsim::BatchSpec spec = parse_batch_spec(batch_json, &jobs);
        std::optional<std::string> experiment;
        if (experiment_name_or_null) {
            experiment = std::string(experiment_name_or_null);
        }
        auto* batch = new alertsim_batch{alertsim::run_batch(
            spec, jobs, store_or_null ? &store_or_null->store : nullptr, experiment)};
        *out_batch = batch;
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_batch_rows_csv(const alertsim_batch* batch, char** out_csv) {
    if (auto status = require(batch && out_csv, "batch and out_csv are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        *out_csv = copy_string(alertsim::batch_rows_csv(batch->result));
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_batch_winner_csv(const alertsim_batch* batch, const char* metric,
                                          double tie_epsilon, char** out_csv) {
    if (auto status = require(batch && metric && out_csv,
                              "batch, metric, and out_csv are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        const auto cells = alertsim::winner_matrix(batch->result, metric, tie_epsilon);
        *out_csv = copy_string(alertsim::winner_matrix_csv(cells));
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_batch_write_csv(const alertsim_batch* batch, const char* out_dir,
                                         const char* stamp, char** out_paths_json) {
    if (auto status = require(batch && out_dir && stamp && out_paths_json,
                              "batch, out_dir, stamp, and out_paths_json are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        try {
            const auto paths = alertsim::emit_csv(batch->result, out_dir, stamp);
            *out_paths_json = copy_string(json(paths).dump());
            return ALERTSIM_OK;
        } catch (const std::runtime_error& e) {
            return fail(ALERTSIM_ERR_IO, e.what());
        }
    });
}

alertsim_status alertsim_batch_summary_json(const alertsim_batch* batch, char** out_json) {
    if (auto status = require(batch && out_json, "batch and out_json are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        const alertsim::BatchResult& result = batch->result;
        json grid = json::array();
        for (const alertsim::GridPoint& point : result.grid) {
            grid.push_back(json{{"cacheSize", point.cache_size},
                                {"reliability", point.reliability}});
        }
        json rows = json::array();
        for (const alertsim::BatchRow& row : result.rows) {
            rows.push_back(
                json{{"policy", row.policy},
                     {"cacheSize", row.point.cache_size},
                     {"reliability", row.point.reliability},
                     {"seed", row.derived_seed},
                     {"replicate", row.replicate},
                     {"streamHash", row.stream_hash},
                     {"metrics", json::parse(alertsim::metrics_report_to_json(row.metrics))}});
        }
        json winners;
        if (result.spec.kind != alertsim::BatchKind::Baseline) {
            for (std::string_view metric : alertsim::kMetricColumns) {
                json cells = json::array();
                for (const alertsim::WinnerCell& cell :
                     alertsim::winner_matrix(result, metric, result.spec.tie_epsilon)) {
                    cells.push_back(json{{"cacheSize", cell.point.cache_size},
                                         {"reliability", cell.point.reliability},
                                         {"winner", cell.winner},
                                         {"margin", cell.margin}});
                }
                winners[std::string(metric)] = cells;
            }
        }
        json summary;
        summary["kind"] = alertsim::batch_kind_name(result.spec.kind);
        summary["tieEpsilon"] = result.spec.tie_epsilon;
        summary["grid"] = grid;
        summary["rows"] = rows;
        summary["winners"] = winners;
        summary["storedRunIds"] = result.stored_run_ids;
        *out_json = copy_string(summary.dump());
        return ALERTSIM_OK;
    });
}

void alertsim_batch_free(alertsim_batch* batch) { delete batch; }

alertsim_status alertsim_store_open(const char* directory, alertsim_store** out_store) {
    if (auto status = require(directory && out_store, "directory and out_store are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        try {
            auto* store = new alertsim_store{alertsim::RunStore(directory)};
            *out_store = store;
            return ALERTSIM_OK;
        } catch (const std::runtime_error& e) {
            return fail(ALERTSIM_ERR_IO, e.what());
        }
    });
}

alertsim_status alertsim_store_log_run(alertsim_store* store, const alertsim_run* run,
                                       const char* experiment_name_or_null,
                                       const char* notes_or_null, int include_full,
                                       char** out_id) {
    if (auto status = require(store && run && out_id, "store, run, and out_id are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        std::optional<std::string> experiment;
        std::optional<std::string> notes;
        if (experiment_name_or_null) experiment = std::string(experiment_name_or_null);
        if (notes_or_null) notes = std::string(notes_or_null);
        alertsim::RunRecord record = alertsim::make_run_record(
            run->result, run->config, experiment, notes, include_full != 0);
        try {
            *out_id = copy_string(store->store.log_run(std::move(record)));
            return ALERTSIM_OK;
        } catch (const std::invalid_argument& e) {
            return fail(ALERTSIM_ERR_DUPLICATE_ID, e.what());
        }
    });
}

alertsim_status alertsim_store_list_json(alertsim_store* store, const char* filter_json,
                                         char** out_json) {
    if (auto status = require(store && out_json, "store and out_json are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        alertsim::RunFilter filter;
        if (filter_json) {
            const json f = json::parse(filter_json);
            if (f.contains("scenario")) filter.scenario = f["scenario"].get<std::string>();
            if (f.contains("policy")) filter.policy = f["policy"].get<std::string>();
            if (f.contains("experimentName")) {
                filter.experiment_name = f["experimentName"].get<std::string>();
            }
        }
        json out = json::array();
        for (const alertsim::RunRecord& record : store->store.list_runs(filter)) {
            out.push_back(json::parse(alertsim::run_record_to_json(record)));
        }
        *out_json = copy_string(out.dump());
        return ALERTSIM_OK;
    });
}

alertsim_status alertsim_store_replay(alertsim_store* store, const char* run_id,
                                      alertsim_run** out_run) {
    if (auto status = require(store && run_id && out_run,
                              "store, run_id, and out_run are required");
        status != ALERTSIM_OK) {
        return status;
    }
    return guarded([&] {
        const auto record = store->store.get(run_id);
        if (!record) {
            return fail(ALERTSIM_ERR_NOT_FOUND, std::string("unknown run id: ") + run_id);
        }
        try {
            auto* run = new alertsim_run{record->config, store->store.replay(run_id)};
            *out_run = run;
            return ALERTSIM_OK;
        } catch (const std::runtime_error& e) {
            return fail(ALERTSIM_ERR_VERIFY_FAILED, e.what());
        }
    });
}

void alertsim_store_close(alertsim_store* store) { delete store; }

} // extern "C"
