#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "catsim/circuits.hpp"
#include "catsim/error.hpp"
#include "catsim/harness/config.hpp"
#include "catsim/harness/initial_state.hpp"
#include "catsim/io.hpp"
#include "catsim/metrics.hpp"
#include "catsim/noise.hpp"
#include "catsim/state.hpp"

namespace catsim::harness {

/// Norm drift tolerated over a whole run before it is reported.
inline constexpr double kNormDriftLimit = 1e-7;
/// Workspace probability above which a monomial run is considered broken.
inline constexpr double kWorkspaceLimit = 1e-20;

struct RealizationResult {
    std::vector<MetricsRecord> records;
    std::map<std::size_t, CellGrid> snapshots;
};

struct ExperimentResult {
    ExperimentConfig config;
    Backend backend = Backend::monomial;
    std::size_t n_d = 0;
    std::pair<std::size_t, std::size_t> designated_cell{0, 0};
    std::vector<MetricsRecord> mean;
    std::vector<RealizationResult> realizations;
    std::map<std::size_t, CellGrid> snapshots;  ///< mean over realizations
};

/// Called after every recorded step with (realization, t, noisy, reference).
/// Invoked from worker threads; must be thread-safe.
using StepObserver =
    std::function<void(std::size_t, std::size_t, const QuantumState&, const QuantumState&)>;

inline Backend select_backend(const ExperimentConfig& cfg) {
    return (cfg.force_dense || !cfg.noise.preserves_monomial()) ? Backend::dense : Backend::monomial;
}

/// Argmax of the grid in row-major order; ties go to the first cell.
inline std::pair<std::size_t, std::size_t> max_cell(const CellGrid& grid) {
    const auto& v = grid.values();
    const auto k = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    return {k / grid.side(), k % grid.side()};
}

/// Default designated cell: the cell whose noiseless probability has the
/// largest minimum over t in [0, t_max], so that the normalized cell
/// probability stays defined. Falls back to the t = 0 maximum when every
/// cell empties at some step.
inline std::pair<std::size_t, std::size_t> default_designated_cell(const ExperimentConfig& cfg,
                                                                   const std::vector<LatticePoint>& initial) {
    const RegisterLayout layout(cfg.n_q);
    const Circuit forward = build_cat_iteration(layout);
    const Circuit backward = invert_circuit(forward);
    QuantumState reference = init_state(layout, initial, Backend::monomial);
    const CellGrid first = coarse_grain(reference, cfg.n_g);
    CellGrid lowest = first;
    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        apply_circuit(reference, (cfg.invert_at && t > *cfg.invert_at) ? backward : forward);
        const CellGrid g = coarse_grain(reference, cfg.n_g);
        for (std::size_t c = 0; c < g.size(); ++c) lowest.values()[c] = std::min(lowest.values()[c], g.values()[c]);
    }
    const auto best = max_cell(lowest);
    return lowest.at(best.first, best.second) > 0.0 ? best : max_cell(first);
}

namespace detail {

inline MetricsRecord measure(std::size_t t, const QuantumState& noisy, const QuantumState& reference, int n_g,
                             std::pair<std::size_t, std::size_t> cell, Workspace q0_policy) {
    MetricsRecord r;
    r.t = t;
    r.f = fidelity(noisy, reference);
    r.f_a = faithfulness(noisy, reference);
    r.q0_norm = normalized_ratio(std::abs(zero_harmonic(noisy, q0_policy)), std::abs(zero_harmonic(reference)));
    r.w_cell_norm = normalized_ratio(coarse_grain(noisy, n_g).at(cell.first, cell.second),
                                     coarse_grain(reference, n_g).at(cell.first, cell.second));
    return r;
}

inline RealizationResult run_realization(const ExperimentConfig& cfg, std::size_t realization,
                                         const std::vector<LatticePoint>& initial, Backend backend,
                                         std::pair<std::size_t, std::size_t> cell, const StepObserver& observer) {
    const RegisterLayout layout(cfg.n_q);
    const Circuit forward = build_cat_iteration(layout);
    const Circuit backward = invert_circuit(forward);

    NoiseConfig noise = cfg.noise;
    noise.realization_index = realization;
    Rng rng = noise.stream();
    const Workspace q0_policy = noise.preserves_monomial() ? Workspace::require_cleared : Workspace::project;

    QuantumState reference = init_state(layout, initial, Backend::monomial);
    QuantumState noisy = init_state(layout, initial, backend);

    RealizationResult out;
    auto record = [&](std::size_t t) {
        out.records.push_back(measure(t, noisy, reference, cfg.n_g, cell, q0_policy));
        if (std::find(cfg.snapshot_times.begin(), cfg.snapshot_times.end(), t) != cfg.snapshot_times.end()) {
            out.snapshots.emplace(t, coarse_grain(noisy, cfg.n_g));
        }
        if (observer) observer(realization, t, noisy, reference);
    };

    record(0);
    for (std::size_t t = 1; t <= cfg.t_max; ++t) {
        const Circuit& step = (cfg.invert_at && t > *cfg.invert_at) ? backward : forward;
        for (const auto& gate : step.gates()) {
            reference.apply(gate);
            noisy.apply(noisy_gate(gate, noise, rng));
            if (noise.per_amplitude_phase) apply_per_amplitude_phase(noisy, rng);
        }
        const double drift = std::abs(noisy.norm_squared() - 1.0);
        if (drift > kNormDriftLimit) {
            throw NumericalError(fmt::format("norm drift {} exceeds {} at t={} (realization {})", drift,
                                             kNormDriftLimit, t, realization));
        }
        if (reference.workspace_probability() > kWorkspaceLimit ||
            (noise.preserves_monomial() && noisy.workspace_probability() > kWorkspaceLimit)) {
            throw NumericalError(fmt::format("workspace not cleared at t={} (realization {})", t, realization));
        }
        record(t);
    }
    return out;
}

inline std::optional<double> mean_optional(const std::vector<RealizationResult>& rs, std::size_t k,
                                           std::optional<double> MetricsRecord::*field) {
    double s = 0.0;
    for (const auto& r : rs) {
        const auto& v = r.records[k].*field;
        if (!v) return std::nullopt;
        s += *v;
    }
    return s / static_cast<double>(rs.size());
}

}  // namespace detail

/// Runs every realization (in parallel, one RNG stream each) and averages.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<LatticePoint>& initial,
                                       const StepObserver& observer = {}) {
    cfg.validate();

    ExperimentResult result;
    result.config = cfg;
    result.backend = select_backend(cfg);
    result.n_d = initial.size();
    result.designated_cell = cfg.designated_cell ? *cfg.designated_cell : default_designated_cell(cfg, initial);
    result.realizations.resize(cfg.realizations);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t r = next++; r < cfg.realizations; r = next++) {
            try {
                result.realizations[r] =
                    detail::run_realization(cfg, r, initial, result.backend, result.designated_cell, observer);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t n_workers =
        std::min<std::size_t>(cfg.realizations, std::max(1u, std::thread::hardware_concurrency()));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    const auto& rs = result.realizations;
    const double count = static_cast<double>(rs.size());
    for (std::size_t k = 0; k < rs.front().records.size(); ++k) {
        MetricsRecord m;
        m.t = rs.front().records[k].t;
        m.f = 0.0;
        m.f_a = 0.0;
        for (const auto& r : rs) {
            m.f += r.records[k].f;
            m.f_a += r.records[k].f_a;
        }
        m.f /= count;
        m.f_a /= count;
        m.q0_norm = detail::mean_optional(rs, k, &MetricsRecord::q0_norm);
        m.w_cell_norm = detail::mean_optional(rs, k, &MetricsRecord::w_cell_norm);
        result.mean.push_back(m);
    }
    for (const auto& [t, grid] : rs.front().snapshots) {
        CellGrid mean(grid.n_g());
        for (const auto& r : rs) {
            const auto& g = r.snapshots.at(t);
            for (std::size_t c = 0; c < mean.size(); ++c) mean.values()[c] += g.values()[c];
        }
        for (auto& v : mean.values()) v /= count;
        result.snapshots.emplace(t, std::move(mean));
    }
    return result;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const StepObserver& observer = {}) {
    cfg.validate();
    return run_experiment(cfg, load_initial(cfg.initial, cfg.n_q), observer);
}

inline constexpr const char* kMetricsHeader = "t,f,fa,q0_norm,w_cell_norm";

/// CSV rows; undefined normalized values are written as "nan".
inline void write_metrics_csv(std::ostream& os, const std::vector<MetricsRecord>& records) {
    auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string("nan"); };
    os << kMetricsHeader << '\n';
    for (const auto& r : records) {
        os << fmt::format("{},{},{},{},{}\n", r.t, r.f, r.f_a, opt(r.q0_norm), opt(r.w_cell_norm));
    }
}

inline void prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto probe = std::filesystem::path(dir) / ".write_probe";
    std::ofstream test(probe);
    if (ec || !test) throw ConfigError("output_dir", "output directory '" + dir + "' is not writable");
    test.close();
    std::filesystem::remove(probe, ec);
}

/// Writes metrics.csv, metrics_r<k>.csv, snapshot_t<t>.{csv,pgm} and the
/// effective config.txt into `dir`.
inline void write_outputs(const ExperimentResult& result, const std::string& dir) {
    prepare_output_dir(dir);
    const std::filesystem::path root(dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(root / name);
        if (!f) throw ConfigError("output_dir", "cannot write '" + (root / name).string() + "'");
        return f;
    };
    {
        auto f = open("metrics.csv");
        write_metrics_csv(f, result.mean);
    }
    for (std::size_t k = 0; k < result.realizations.size(); ++k) {
        auto f = open(fmt::format("metrics_r{}.csv", k));
        write_metrics_csv(f, result.realizations[k].records);
    }
    for (const auto& [t, grid] : result.snapshots) {
        auto csv = open(fmt::format("snapshot_t{}.csv", t));
        io::write_grid_csv(csv, grid);
        auto pgm = open(fmt::format("snapshot_t{}.pgm", t));
        io::write_pgm(pgm, grid);
    }
    {
        auto f = open("config.txt");
        f << to_text(result.config);
        f << fmt::format("# backend = {}\n# n_d = {}\n# designated_cell = {},{}\n", to_string(result.backend),
                         result.n_d, result.designated_cell.first, result.designated_cell.second);
    }
}

}  // namespace catsim::harness
