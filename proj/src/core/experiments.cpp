#include "core/experiments.hpp"

#include "core/json_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace alertsim {

std::string_view batch_kind_name(BatchKind kind) {
    switch (kind) {
        case BatchKind::Baseline: return "baseline";
        case BatchKind::CacheSweep: return "cacheSweep";
        case BatchKind::NetworkSweep: return "networkSweep";
        case BatchKind::JointSweep: return "jointSweep";
        case BatchKind::ExtremeCorners: return "extremeCorners";
    }
    return "baseline";
}

BatchKind batch_kind_from_name(std::string_view name) {
    if (name == "baseline") return BatchKind::Baseline;
    if (name == "cacheSweep" || name == "cache") return BatchKind::CacheSweep;
    if (name == "networkSweep" || name == "network") return BatchKind::NetworkSweep;
    if (name == "jointSweep" || name == "joint") return BatchKind::JointSweep;
    if (name == "extremeCorners" || name == "extreme") return BatchKind::ExtremeCorners;
    throw std::invalid_argument("unknown batch kind: " + std::string(name));
}

namespace {

std::vector<GridPoint> build_grid(const BatchSpec& spec) {
    std::vector<GridPoint> grid;
    switch (spec.kind) {
        case BatchKind::Baseline:
            grid.push_back(GridPoint{spec.base.cache_capacity,
                                     spec.base.scenario.base_reliability});
            break;
        case BatchKind::CacheSweep:
            for (std::size_t size : spec.cache_sizes) {
                grid.push_back(GridPoint{size, spec.base.scenario.base_reliability});
            }
            break;
        case BatchKind::NetworkSweep:
            for (double reliability : spec.reliabilities) {
                grid.push_back(GridPoint{spec.base.cache_capacity, reliability});
            }
            break;
        case BatchKind::JointSweep:
            for (std::size_t size : spec.cache_sizes) {
                for (double reliability : spec.reliabilities) {
                    grid.push_back(GridPoint{size, reliability});
                }
            }
            break;
        case BatchKind::ExtremeCorners:
            for (const auto& [size, reliability] : kExtremeCorners) {
                grid.push_back(GridPoint{size, reliability});
            }
            break;
    }
    return grid;
}

SimConfig config_for(const BatchSpec& spec, const GridPoint& point,
                     const std::string& policy) {
    SimConfig config = spec.base;
    config.cache_capacity = point.cache_size;
    config.scenario.base_reliability = point.reliability;
    config.policy_name = policy;
    return config;
}

} // namespace

BatchResult run_batch(const BatchSpec& spec, unsigned jobs, RunStore* store,
                      const std::optional<std::string>& experiment_name) {
    if (spec.policies.empty()) {
        throw std::invalid_argument("batch requires at least one policy");
    }
    BatchResult result;
    result.spec = spec;
    result.grid = build_grid(spec);

    struct Task {
        GridPoint point;
        std::string policy;
        std::uint32_t replicate;
    };
    std::vector<Task> tasks;
    for (const GridPoint& point : result.grid) {
        for (const std::string& policy : spec.policies) {
            for (std::uint32_t k = 0; k < spec.base.seed.replicates; ++k) {
                tasks.push_back(Task{point, policy, k});
            }
        }
    }

    std::vector<RunResult> runs(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const unsigned worker_count =
        std::max(1u, jobs == 0 ? std::thread::hardware_concurrency() : jobs);
    auto worker = [&] {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= tasks.size()) {
                return;
            }
            try {
                const Task& task = tasks[index];
                runs[index] = run_simulation(config_for(spec, task.point, task.policy),
                                             task.replicate);
            } catch (...) {
                std::lock_guard<std::mutex> guard(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < worker_count; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& thread : pool) {
            thread.join();
        }
    }
    if (first_error) {
        // A failed run aborts the whole batch; the offending config is in
        // the exception message.
        std::rethrow_exception(first_error);
    }

    result.rows.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        BatchRow row;
        row.policy = tasks[i].policy;
        row.point = tasks[i].point;
        row.derived_seed = runs[i].derived_seed;
        row.replicate = tasks[i].replicate;
        row.metrics = runs[i].metrics;
        row.stream_hash = runs[i].stream_hash;
        result.rows.push_back(std::move(row));
    }

    std::vector<std::size_t> order(result.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const BatchRow& ra = result.rows[a];
        const BatchRow& rb = result.rows[b];
        if (ra.point != rb.point) return ra.point < rb.point;
        if (ra.policy != rb.policy) return ra.policy < rb.policy;
        return ra.replicate < rb.replicate;
    });
    std::vector<BatchRow> sorted_rows;
    std::vector<std::size_t> sorted_runs;
    sorted_rows.reserve(order.size());
    for (std::size_t index : order) {
        sorted_rows.push_back(std::move(result.rows[index]));
        sorted_runs.push_back(index);
    }
    result.rows = std::move(sorted_rows);

    if (store) {
        for (std::size_t i = 0; i < sorted_runs.size(); ++i) {
            const std::size_t index = sorted_runs[i];
            RunRecord record = make_run_record(
                runs[index], config_for(spec, tasks[index].point, tasks[index].policy),
                experiment_name, std::nullopt, /*include_full_results=*/false);
            result.stored_run_ids.push_back(store->log_run(std::move(record)));
        }
    }
    return result;
}

double metric_value(const MetricsReport& report, std::string_view metric) {
    if (metric == "deliveryRate") return report.delivery_rate;
    if (metric == "cacheHitRate") return report.cache_hit_rate;
    if (metric == "avgFreshness") return report.avg_freshness;
    if (metric == "staleAccessRate") return report.stale_access_rate;
    if (metric == "actionabilityFirstRatio") return report.actionability_first_ratio;
    if (metric == "timelinessConsistency") return report.timeliness_consistency;
    if (metric == "redundancyRate") return report.redundancy_rate;
    throw std::invalid_argument("unknown metric: " + std::string(metric));
}

bool metric_lower_is_better(std::string_view metric) {
    return metric == "staleAccessRate" || metric == "redundancyRate";
}

std::vector<WinnerCell> winner_matrix(const BatchResult& batch, std::string_view metric,
                                      double tie_epsilon) {
    const bool lower = metric_lower_is_better(metric);
    std::vector<WinnerCell> cells;
    for (const GridPoint& point : batch.grid) {
        // Mean across replicates per policy.
        std::map<std::string, std::pair<double, std::size_t>> sums;
        for (const BatchRow& row : batch.rows) {
            if (row.point == point) {
                auto& [sum, n] = sums[row.policy];
                sum += metric_value(row.metrics, metric);
                n += 1;
            }
        }
        for (const std::string& policy : batch.spec.policies) {
            if (!sums.contains(policy) || sums[policy].second == 0) {
                throw std::invalid_argument(
                    fmt::format("winner matrix missing cell: policy {} at ({}, {})", policy,
                                point.cache_size, point.reliability));
            }
        }
        WinnerCell cell;
        cell.metric = std::string(metric);
        cell.point = point;
        double best_value = 0.0;
        double worst_value = 0.0;
        bool first = true;
        for (const std::string& policy : batch.spec.policies) {
            const auto& [sum, n] = sums[policy];
            const double value = sum / static_cast<double>(n);
            const bool better = first || (lower ? value < best_value : value > best_value);
            if (better) {
                best_value = value;
                cell.winner = policy;
            }
            if (first || (lower ? value > worst_value : value < worst_value)) {
                worst_value = value;
            }
            first = false;
        }
        cell.margin = lower ? worst_value - best_value : best_value - worst_value;
        if (cell.margin <= tie_epsilon) {
            cell.winner = std::string(kAnyWinner);
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::string batch_rows_csv(const BatchResult& batch) {
    std::string out =
        "policy,cacheSize,reliability,seed,replicate,deliveryRate,cacheHitRate,avgFreshness,"
        "staleAccessRate,actionabilityFirstRatio,timelinessConsistency,redundancyRate,"
        "arrivals,delivered,hits,misses,staleAccesses,threadsSurfaced,actionableFirst,"
        "timelyFirst,duplicateHits\n";
    for (const BatchRow& row : batch.rows) {
        const MetricsReport& m = row.metrics;
        out += fmt::format(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", row.policy,
            row.point.cache_size, format_double(row.point.reliability), row.derived_seed,
            row.replicate, format_double(m.delivery_rate), format_double(m.cache_hit_rate),
            format_double(m.avg_freshness), format_double(m.stale_access_rate),
            format_double(m.actionability_first_ratio),
            format_double(m.timeliness_consistency), format_double(m.redundancy_rate),
            m.counts.arrivals, m.counts.delivered, m.counts.hits, m.counts.misses,
            m.counts.stale_accesses, m.counts.threads_surfaced, m.counts.actionable_first,
            m.counts.timely_first, m.counts.duplicate_hits);
    }
    return out;
}

std::string winner_matrix_csv(const std::vector<WinnerCell>& cells) {
    std::string out = "metric,cacheSize,reliability,winner,margin\n";
    for (const WinnerCell& cell : cells) {
        out += fmt::format("{},{},{},{},{}\n", cell.metric, cell.point.cache_size,
                           format_double(cell.point.reliability), cell.winner,
                           format_double(cell.margin));
    }
    return out;
}

namespace {

std::string_view csv_prefix(BatchKind kind) {
    switch (kind) {
        case BatchKind::Baseline: return "baseline";
        case BatchKind::CacheSweep: return "device";
        case BatchKind::NetworkSweep: return "network";
        case BatchKind::JointSweep: return "combined";
        case BatchKind::ExtremeCorners: return "extreme";
    }
    return "baseline";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write: " + path);
    }
    out << content;
}

} // namespace

std::vector<std::string> emit_csv(const BatchResult& batch, const std::string& out_dir,
                                  const std::string& stamp) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> paths;

    const std::string rows_path =
        (fs::path(out_dir) /
         fmt::format("{}-comparison-{}.csv", csv_prefix(batch.spec.kind), stamp))
            .string();
    write_file(rows_path, batch_rows_csv(batch));
    paths.push_back(rows_path);

    if (batch.spec.kind != BatchKind::Baseline) {
        for (std::string_view metric : kMetricColumns) {
            const auto cells = winner_matrix(batch, metric, batch.spec.tie_epsilon);
            const std::string winner_path =
                (fs::path(out_dir) / fmt::format("winner-{}-{}.csv", metric, stamp)).string();
            write_file(winner_path, winner_matrix_csv(cells));
            paths.push_back(winner_path);
        }
    }
    return paths;
}

} // namespace alertsim
