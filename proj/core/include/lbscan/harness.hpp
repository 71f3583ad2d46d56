#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lbscan/cluster2d.hpp"
#include "lbscan/generators.hpp"
#include "lbscan/metrics.hpp"

namespace lbscan {

// One experiment: dataset x parameters x repetitions. Repetition r runs with
// seed base_seed + r on a fresh oracle; the reference clustering is computed
// once and shared.
struct ExperimentConfig {
    std::string dataset_path;  // empty: generate below
    DatasetKind kind = DatasetKind::noisy;
    std::size_t n = 10000;
    std::size_t gen_clusters = 3;
    double noise_fraction = -1.0;  // < 0: generator default

    double eps = 20.0;
    std::size_t min_pts = 14;
    std::size_t k = 14;
    std::size_t budget = 200;
    bool to_completion = false;  // ignore `budget`, report queries needed

    CurveKind curve = CurveKind::hilbert;
    int fanout = 4;
    double min_cell_size = 0.0;   // 0: eps
    std::size_t c = 3;
    std::size_t merge_l = 0;      // 0: max(1, min_pts / 2)
    double merge_threshold = 0.0; // 0: 2 * eps

    bool baseline = true;
    double assign_threshold = 0.0;  // baseline attach radius; 0: eps

    std::uint64_t seed = 1;
    std::size_t repetitions = 10;
    bool timings = false;  // wall time makes reports non-reproducible
};

// Fills the zero-valued defaults in. Reports always carry the resolved form.
ExperimentConfig resolve(ExperimentConfig cfg);
// Throws std::invalid_argument with a usable message.
void validate(const ExperimentConfig& cfg);

Dataset load_or_generate(const ExperimentConfig& cfg);

struct Scores {
    double rand = 0.0;
    double jaccard = 0.0;
    double fowlkes_mallows = 0.0;
};

Scores score_labels(std::span<const Label> truth, std::span<const Label> pred);

struct BaselineRep {
    std::size_t queries = 0;
    Scores scores;
};

struct RepResult {
    std::uint64_t seed = 0;
    std::size_t queries = 0;
    std::size_t minis = 0;   // dense ranges found
    std::size_t finals = 0;  // clusters after merging
    Scores scores;
    std::optional<BaselineRep> baseline;
    double wall_ms = -1.0;  // < 0: not measured
};

struct RunReport {
    ExperimentConfig config;  // resolved
    std::size_t dataset_size = 0;
    std::size_t reference_clusters = 0;
    std::vector<RepResult> reps;

    double median_rand = 0.0;
    double median_jaccard = 0.0;
    double median_fowlkes_mallows = 0.0;
    double median_queries = 0.0;
    double median_baseline_rand = -1.0;  // < 0: baseline disabled
};

RunReport run_experiment(const ExperimentConfig& cfg);
std::string report_to_json(const RunReport& report);

enum class SweepAxis { budget, k, min_cell_size, fanout, noise_pct, curve };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepRow {
    std::string value;
    RunReport report;
};

// One run per value, base config otherwise unchanged. Values are parsed per
// axis (numbers, or curve names); noise_pct is a percentage and implies a
// generated dataset.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<std::string>& values);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

double median(std::vector<double> v);
double std_dev(const std::vector<double>& v);

}  // namespace lbscan
