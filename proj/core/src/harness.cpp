#include "lbscan/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lbscan/baseline.hpp"
#include "lbscan/dbscan.hpp"

namespace lbscan {

namespace {

using json = nlohmann::ordered_json;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::size_t parse_count(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return std::size_t(v);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": " + s);
    }
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": " + s);
    }
}

void check_fanout(CurveKind curve, int fanout) {
    if (curve == CurveKind::peano) {
        if (fanout != 9)
            throw std::invalid_argument("peano supports fanout 9 only");
        return;
    }
    if (fanout != 4 && fanout != 16 && fanout != 64)
        throw std::invalid_argument("fanout must be 4, 16 or 64 (9 for peano)");
}

json scores_to_json(const Scores& s) {
    json j;
    j["rand"] = round6(s.rand);
    j["jaccard"] = round6(s.jaccard);
    j["fowlkes_mallows"] = round6(s.fowlkes_mallows);
    return j;
}

std::vector<Label> model_sweep(const ClusterModel& model, const Dataset& ds) {
    std::vector<Label> pred(ds.size(), kNoise);
    for (std::size_t i = 0; i < ds.size(); ++i)
        pred[i] = model.assign(ds.point(PointId(i)));
    return pred;
}

}  // namespace

ExperimentConfig resolve(ExperimentConfig cfg) {
    if (cfg.min_cell_size <= 0.0) cfg.min_cell_size = cfg.eps;
    if (cfg.merge_l == 0)
        cfg.merge_l = std::max<std::size_t>(1, cfg.min_pts / 2);
    if (cfg.merge_threshold <= 0.0) cfg.merge_threshold = 2.0 * cfg.eps;
    if (cfg.assign_threshold <= 0.0) cfg.assign_threshold = cfg.eps;
    if (!cfg.dataset_path.empty()) {
        cfg.noise_fraction = 0.0;
    } else if (cfg.noise_fraction < 0.0) {
        cfg.noise_fraction = cfg.kind == DatasetKind::noisy ? 0.12 : 0.0;
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.eps <= 0.0) throw std::invalid_argument("eps must be positive");
    if (cfg.min_pts == 0)
        throw std::invalid_argument("min_pts must be positive");
    if (cfg.min_pts > cfg.k)
        throw std::invalid_argument("min_pts must not exceed k");
    if (!cfg.to_completion && cfg.budget == 0)
        throw std::invalid_argument("budget must be positive");
    if (cfg.c == 0) throw std::invalid_argument("c must be positive");
    if (cfg.repetitions == 0)
        throw std::invalid_argument("repetitions must be positive");
    check_fanout(cfg.curve, cfg.fanout);
    if (cfg.min_cell_size <= 0.0)
        throw std::invalid_argument("min_cell_size must be positive");
    if (cfg.merge_l == 0) throw std::invalid_argument("l must be positive");
    if (cfg.merge_threshold <= 0.0)
        throw std::invalid_argument("merge_threshold must be positive");
    if (cfg.assign_threshold <= 0.0)
        throw std::invalid_argument("assign_threshold must be positive");
    if (cfg.dataset_path.empty()) {
        if (cfg.n < 2)
            throw std::invalid_argument("generated datasets need n >= 2");
        if (cfg.kind == DatasetKind::blobs && cfg.gen_clusters == 0)
            throw std::invalid_argument("clusters must be positive");
        if (cfg.noise_fraction > 0.95)
            throw std::invalid_argument("noise_fraction too large");
    }
}

Dataset load_or_generate(const ExperimentConfig& cfg) {
    if (!cfg.dataset_path.empty())
        return load_dataset_file(cfg.dataset_path,
                                 format_for_path(cfg.dataset_path));
    GenParams gp;
    gp.n = cfg.n;
    gp.clusters = cfg.gen_clusters;
    gp.noise_fraction = cfg.noise_fraction;
    gp.seed = cfg.seed;
    return generate_dataset(cfg.kind, gp);
}

Scores score_labels(std::span<const Label> truth, std::span<const Label> pred) {
    const PairCounts pc = pair_counts(truth, pred);
    return {rand_index(pc), jaccard_index(pc), fowlkes_mallows_index(pc)};
}

RunReport run_experiment(const ExperimentConfig& raw) {
    const ExperimentConfig cfg = resolve(raw);
    validate(cfg);
    const Dataset ds = load_or_generate(cfg);
    if (ds.size() < 2)
        throw std::invalid_argument("dataset needs at least 2 points");

    const DbscanParams params{cfg.eps, cfg.min_pts};
    const std::vector<Label> reference = dbscan(ds, params);
    Label max_label = kNoise;
    for (Label l : reference) max_label = std::max(max_label, l);

    RunReport report;
    report.config = cfg;
    report.dataset_size = ds.size();
    report.reference_clusters = std::size_t(max_label + 1);

    HdbscanConfig hc;
    hc.curve = cfg.curve;
    hc.fanout = cfg.fanout;
    hc.min_cell_size = cfg.min_cell_size;
    hc.c = cfg.c;
    hc.merge_l = cfg.merge_l;
    hc.merge_threshold = cfg.merge_threshold;
    const BoundingBox region = ds.bounds();

    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        RepResult r;
        r.seed = cfg.seed + rep;
        Rng rng(r.seed);
        const std::size_t limit = cfg.to_completion
                                      ? std::numeric_limits<std::size_t>::max()
                                      : cfg.budget;
        KnnOracle oracle(ds, cfg.k, limit);

        const auto t0 = std::chrono::steady_clock::now();
        const ClusterModel model = hdbscan(oracle, region, params, hc, rng);
        const auto t1 = std::chrono::steady_clock::now();

        r.queries = oracle.queries_used();
        if (!cfg.to_completion && r.queries > cfg.budget)
            throw std::logic_error("budget overrun, this is a bug");
        r.minis = model.mini_count();
        r.finals = model.final_count();
        r.scores = score_labels(reference, model_sweep(model, ds));
        if (cfg.timings)
            r.wall_ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();

        if (cfg.baseline) {
            BaselineRep b;
            const std::size_t blimit =
                cfg.to_completion ? std::max<std::size_t>(r.queries, 1)
                                  : cfg.budget;
            KnnOracle boracle(ds, cfg.k, blimit);
            const BaselineModel bm = baseline_cluster(
                boracle, region, params, cfg.assign_threshold, rng);
            b.queries = boracle.queries_used();
            std::vector<Label> pred(ds.size(), kNoise);
            for (std::size_t i = 0; i < ds.size(); ++i)
                pred[i] = bm.assign(ds.point(PointId(i)));
            b.scores = score_labels(reference, pred);
            r.baseline = b;
        }
        report.reps.push_back(std::move(r));
    }

    std::vector<double> rands, jacs, fms, queries, brands;
    for (const RepResult& r : report.reps) {
        rands.push_back(r.scores.rand);
        jacs.push_back(r.scores.jaccard);
        fms.push_back(r.scores.fowlkes_mallows);
        queries.push_back(double(r.queries));
        if (r.baseline) brands.push_back(r.baseline->scores.rand);
    }
    report.median_rand = median(rands);
    report.median_jaccard = median(jacs);
    report.median_fowlkes_mallows = median(fms);
    report.median_queries = median(queries);
    if (!brands.empty()) report.median_baseline_rand = median(brands);
    return report;
}

std::string report_to_json(const RunReport& report) {
    const ExperimentConfig& cfg = report.config;
    json doc;
    json jc;
    if (!cfg.dataset_path.empty()) {
        jc["dataset_path"] = cfg.dataset_path;
    } else {
        jc["generator"] = to_string(cfg.kind);
        jc["n"] = cfg.n;
        if (cfg.kind == DatasetKind::blobs) jc["clusters"] = cfg.gen_clusters;
        jc["noise_fraction"] = cfg.noise_fraction;
    }
    jc["eps"] = cfg.eps;
    jc["min_pts"] = cfg.min_pts;
    jc["k"] = cfg.k;
    if (cfg.to_completion)
        jc["to_completion"] = true;
    else
        jc["budget"] = cfg.budget;
    jc["curve"] = to_string(cfg.curve);
    jc["fanout"] = cfg.fanout;
    jc["min_cell_size"] = cfg.min_cell_size;
    jc["c"] = cfg.c;
    jc["merge_l"] = cfg.merge_l;
    jc["merge_threshold"] = cfg.merge_threshold;
    jc["baseline"] = cfg.baseline;
    if (cfg.baseline) jc["assign_threshold"] = cfg.assign_threshold;
    jc["seed"] = cfg.seed;
    jc["repetitions"] = cfg.repetitions;
    doc["config"] = std::move(jc);

    doc["dataset_size"] = report.dataset_size;
    doc["reference_clusters"] = report.reference_clusters;

    json reps = json::array();
    for (const RepResult& r : report.reps) {
        json jr;
        jr["seed"] = r.seed;
        jr["queries"] = r.queries;
        jr["minis"] = r.minis;
        jr["finals"] = r.finals;
        jr["scores"] = scores_to_json(r.scores);
        if (r.baseline) {
            json jb;
            jb["queries"] = r.baseline->queries;
            jb["scores"] = scores_to_json(r.baseline->scores);
            jr["baseline"] = std::move(jb);
        }
        if (r.wall_ms >= 0.0) jr["wall_ms"] = round6(r.wall_ms);
        reps.push_back(std::move(jr));
    }
    doc["reps"] = std::move(reps);

    json med;
    med["rand"] = round6(report.median_rand);
    med["jaccard"] = round6(report.median_jaccard);
    med["fowlkes_mallows"] = round6(report.median_fowlkes_mallows);
    med["queries"] = report.median_queries;
    if (report.median_baseline_rand >= 0.0)
        med["baseline_rand"] = round6(report.median_baseline_rand);
    doc["medians"] = std::move(med);
    return doc.dump(2) + "\n";
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::budget: return "budget";
        case SweepAxis::k: return "k";
        case SweepAxis::min_cell_size: return "min_cell_size";
        case SweepAxis::fanout: return "fanout";
        case SweepAxis::noise_pct: return "noise_pct";
        case SweepAxis::curve: return "curve";
    }
    throw std::invalid_argument("bad sweep axis");
}

SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "budget") return SweepAxis::budget;
    if (s == "k") return SweepAxis::k;
    if (s == "min_cell_size") return SweepAxis::min_cell_size;
    if (s == "fanout") return SweepAxis::fanout;
    if (s == "noise_pct") return SweepAxis::noise_pct;
    if (s == "curve") return SweepAxis::curve;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<std::string>& values) {
    if (values.empty()) throw std::invalid_argument("sweep needs values");
    std::vector<SweepRow> rows;
    for (const std::string& v : values) {
        ExperimentConfig cfg = base;
        switch (axis) {
            case SweepAxis::budget:
                cfg.budget = parse_count(v, "budget");
                break;
            case SweepAxis::k:
                cfg.k = parse_count(v, "k");
                break;
            case SweepAxis::min_cell_size:
                cfg.min_cell_size = parse_real(v, "min_cell_size");
                break;
            case SweepAxis::fanout:
                cfg.fanout = int(parse_count(v, "fanout"));
                break;
            case SweepAxis::noise_pct:
                if (!cfg.dataset_path.empty())
                    throw std::invalid_argument(
                        "noise_pct sweeps need a generated dataset");
                cfg.noise_fraction = parse_real(v, "noise_pct") / 100.0;
                break;
            case SweepAxis::curve:
                cfg.curve = curve_from_string(v);
                if (cfg.curve == CurveKind::peano)
                    cfg.fanout = 9;
                else if (cfg.fanout == 9)
                    cfg.fanout = 4;
                break;
        }
        rows.push_back({v, run_experiment(cfg)});
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("no sweep rows");
    std::string out;
    out +=
        "value,median_rand,sd_rand,median_jaccard,sd_jaccard,"
        "median_fowlkes_mallows,sd_fowlkes_mallows,median_queries,sd_queries,"
        "median_baseline_rand\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out += buf;
    };
    for (const SweepRow& row : rows) {
        std::vector<double> rands, jacs, fms, queries;
        for (const RepResult& r : row.report.reps) {
            rands.push_back(r.scores.rand);
            jacs.push_back(r.scores.jaccard);
            fms.push_back(r.scores.fowlkes_mallows);
            queries.push_back(double(r.queries));
        }
        out += row.value;
        out += ',';
        num(median(rands));
        out += ',';
        num(std_dev(rands));
        out += ',';
        num(median(jacs));
        out += ',';
        num(std_dev(jacs));
        out += ',';
        num(median(fms));
        out += ',';
        num(std_dev(fms));
        out += ',';
        num(median(queries));
        out += ',';
        num(std_dev(queries));
        out += ',';
        if (row.report.median_baseline_rand >= 0.0)
            num(row.report.median_baseline_rand);
        out += '\n';
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of nothing");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double std_dev(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("std_dev of nothing");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / double(v.size()));
}

}  // namespace lbscan
