#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "lbscan/harness.hpp"
#include "lbscan/model_io.hpp"

namespace {

using namespace lbscan;

struct CommonFlags {
    ExperimentConfig cfg;
    std::string curve = "hilbert";
    std::string kind = "noisy";
    bool no_baseline = false;
};

void add_experiment_flags(CLI::App* cmd, CommonFlags& f) {
    ExperimentConfig& cfg = f.cfg;
    cmd->add_option("--data", cfg.dataset_path,
                    "Dataset file (csv/tsv); omit to generate one");
    cmd->add_option("--kind", f.kind,
                    "Generator used when --data is absent")
        ->check(CLI::IsMember({"blobs", "moons", "rings", "noisy"}));
    cmd->add_option("--n", cfg.n, "Generated dataset size");
    cmd->add_option("--clusters", cfg.gen_clusters, "Blob count (blobs only)");
    cmd->add_option("--noise-fraction", cfg.noise_fraction,
                    "Background fraction for generated data");
    cmd->add_option("--eps", cfg.eps, "Density radius");
    cmd->add_option("--min-pts", cfg.min_pts, "Density threshold");
    cmd->add_option("--k", cfg.k, "Neighbors returned per oracle query");
    cmd->add_option("--budget", cfg.budget, "Query budget per repetition");
    cmd->add_flag("--to-completion", cfg.to_completion,
                  "Run until done and report the queries needed");
    cmd->add_option("--curve", f.curve, "hilbert, z or peano");
    cmd->add_option("--fanout", cfg.fanout,
                    "Cells per refinement: 4, 16 or 64 (9 for peano)");
    cmd->add_option("--min-cell-size", cfg.min_cell_size,
                    "Leaf size floor (default: eps)");
    cmd->add_option("--c", cfg.c, "Verification samples per dense run");
    cmd->add_option("--merge-l", cfg.merge_l,
                    "Pairs averaged by the merge distance "
                    "(default: min_pts/2)");
    cmd->add_option("--merge-threshold", cfg.merge_threshold,
                    "Merge distance cutoff (default: 2*eps)");
    cmd->add_flag("--no-baseline", f.no_baseline,
                  "Skip the sample-then-cluster baseline");
    cmd->add_option("--assign-threshold", cfg.assign_threshold,
                    "Baseline attach radius (default: eps)");
    cmd->add_option("--seed", cfg.seed, "Base seed; repetition r adds r");
    cmd->add_option("--reps", cfg.repetitions, "Repetitions per run");
    cmd->add_flag("--timings", cfg.timings,
                  "Add wall times (reports stop being byte-stable)");
}

ExperimentConfig finish_flags(const CLI::App* cmd, CommonFlags& f) {
    f.cfg.curve = curve_from_string(f.curve);
    f.cfg.kind = dataset_kind_from_string(f.kind);
    f.cfg.baseline = !f.no_baseline;
    if (f.cfg.curve == CurveKind::peano && cmd->count("--fanout") == 0)
        f.cfg.fanout = 9;
    return f.cfg;
}

void write_output(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void save_model_for(const ExperimentConfig& raw, const std::string& path) {
    const ExperimentConfig cfg = resolve(raw);
    validate(cfg);
    const Dataset ds = load_or_generate(cfg);
    Rng rng(cfg.seed);
    KnnOracle oracle(ds, cfg.k, cfg.to_completion ? std::size_t(-1) : cfg.budget);
    HdbscanConfig hc{cfg.curve, cfg.fanout,         cfg.min_cell_size,
                     cfg.c,     cfg.merge_l,        cfg.merge_threshold};
    const ClusterModel model = hdbscan(oracle, ds.bounds(),
                                       {cfg.eps, cfg.min_pts}, hc, rng);
    save_model_file(model, path);
}

// Rows of an attribute file: skip @/% headers, read "x,y[,class]"; classes
// become dense integer labels in first-seen order, "noise" becomes -1.
Dataset attribute_rows_to_dataset(const std::string& text) {
    std::vector<Point2D> pts;
    std::vector<Label> truth;
    std::vector<std::string> class_names;
    std::istringstream in(text);
    std::string line;
    bool any_label = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t s = line.find_first_not_of(" \t");
        if (s == std::string::npos) continue;
        if (line[s] == '@' || line[s] == '%') continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else if (ch != ' ' && ch != '\t') {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (fields.size() < 2)
            throw ParseError("row with fewer than two fields: " + line);
        Point2D p;
        const auto parse_coord = [&](const std::string& fstr, double& out) {
            const char* b = fstr.data();
            const char* e = b + fstr.size();
            auto [ptr, ec] = std::from_chars(b, e, out);
            if (ec != std::errc() || ptr != e)
                throw ParseError("malformed coordinate: " + fstr);
        };
        parse_coord(fields[0], p.x);
        parse_coord(fields[1], p.y);
        Label label = kNoise;
        if (fields.size() >= 3 && !fields[2].empty()) {
            any_label = true;
            const std::string& cls = fields[2];
            std::string low = cls;
            for (char& ch : low)
                ch = char(std::tolower(static_cast<unsigned char>(ch)));
            if (low == "noise") {
                label = kNoise;
            } else {
                auto it = std::find(class_names.begin(), class_names.end(), cls);
                if (it == class_names.end()) {
                    class_names.push_back(cls);
                    label = Label(class_names.size() - 1);
                } else {
                    label = Label(it - class_names.begin());
                }
            }
        }
        pts.push_back(p);
        truth.push_back(label);
    }
    if (pts.empty()) throw ParseError("no data rows");
    if (!any_label) truth.clear();
    return Dataset(std::move(pts), std::move(truth));
}

int do_fetch(const std::string& name, std::string url, std::string out_path) {
    const std::string file =
        "cluto-" + [&] {
            std::string s = name;
            for (char& ch : s)
                if (ch == '.') ch = '-';
            return s;
        }() + ".arff";
    if (url.empty())
        url =
            "https://raw.githubusercontent.com/deric/clustering-benchmark/"
            "master/src/main/resources/datasets/artificial/" +
            file;
    if (out_path.empty()) out_path = "data/" + name + ".csv";

    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw std::invalid_argument("url must start with http:// or https://");
    const std::size_t host_start = scheme + 3;
    const std::size_t slash = url.find('/', host_start);
    const std::string origin = url.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : url.substr(slash);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    auto res = client.Get(path);
    if (!res) {
        std::cerr << "download failed (offline?): " << url << "\n"
                  << "place the file manually at " << out_path
                  << " as x,y[,label] rows\n";
        return 1;
    }
    if (res->status != 200) {
        std::cerr << "download failed with HTTP " << res->status << ": " << url
                  << "\n";
        return 1;
    }
    const Dataset ds = attribute_rows_to_dataset(res->body);
    std::filesystem::path out_file(out_path);
    if (out_file.has_parent_path())
        std::filesystem::create_directories(out_file.parent_path());
    save_dataset_file(ds, out_path);
    std::cout << "wrote " << ds.size() << " points to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budget-limited density clustering over a kNN interface"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonFlags run_f;
    std::string run_report = "-";
    std::string run_model_out;
    CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment");
    add_experiment_flags(run_cmd, run_f);
    run_cmd->add_option("--report", run_report, "Report path ('-': stdout)");
    run_cmd->add_option("--model-out", run_model_out,
                        "Also write the model of a single run at --seed");

    CommonFlags sweep_f;
    std::string sweep_axis = "budget";
    std::vector<std::string> sweep_values;
    std::string sweep_out = "-";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Run an experiment per axis value");
    add_experiment_flags(sweep_cmd, sweep_f);
    sweep_cmd
        ->add_option("--axis", sweep_axis,
                     "budget, k, min_cell_size, fanout, noise_pct or curve")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Axis values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "CSV path ('-': stdout)");

    std::string gen_kind = "noisy";
    GenParams gen_params;
    std::string gen_out;
    CLI::App* gen_cmd =
        app.add_subcommand("generate", "Write a synthetic dataset");
    gen_cmd->add_option("--kind", gen_kind, "blobs, moons, rings or noisy")
        ->check(CLI::IsMember({"blobs", "moons", "rings", "noisy"}));
    gen_cmd->add_option("--n", gen_params.n, "Total rows, noise included");
    gen_cmd->add_option("--clusters", gen_params.clusters,
                        "Blob count (blobs only)");
    gen_cmd->add_option("--noise-fraction", gen_params.noise_fraction,
                        "Background fraction");
    gen_cmd->add_option("--seed", gen_params.seed, "Seed");
    gen_cmd->add_option("--out", gen_out, "Output csv/tsv path")->required();

    std::string fetch_name = "t7.10k";
    std::string fetch_url;
    std::string fetch_out;
    CLI::App* fetch_cmd =
        app.add_subcommand("fetch", "Download a benchmark dataset");
    fetch_cmd
        ->add_option("--name", fetch_name, "Dataset name, e.g. t7.10k")
        ->check(CLI::IsMember({"t7.10k", "t4.8k", "t8.8k", "t5.8k"}));
    fetch_cmd->add_option("--url", fetch_url, "Override the source url");
    fetch_cmd->add_option("--out", fetch_out,
                          "Output path (default data/<name>.csv)");

    std::string assign_model, assign_points, assign_out = "-";
    CLI::App* assign_cmd = app.add_subcommand(
        "assign", "Label points with a saved model, no queries");
    assign_cmd->add_option("--model", assign_model, "Model JSON")->required();
    assign_cmd->add_option("--points", assign_points, "Points csv/tsv")
        ->required();
    assign_cmd->add_option("--out", assign_out,
                           "Labels csv path ('-': stdout)");

    try {
        app.parse(argc, argv);

        if (run_cmd->parsed()) {
            const ExperimentConfig cfg = finish_flags(run_cmd, run_f);
            const RunReport report = run_experiment(cfg);
            write_output(report_to_json(report), run_report);
            if (!run_model_out.empty()) save_model_for(cfg, run_model_out);
        } else if (sweep_cmd->parsed()) {
            const ExperimentConfig cfg = finish_flags(sweep_cmd, sweep_f);
            const auto rows =
                sweep(cfg, sweep_axis_from_string(sweep_axis), sweep_values);
            write_output(sweep_to_csv(rows), sweep_out);
        } else if (gen_cmd->parsed()) {
            const Dataset ds = generate_dataset(
                dataset_kind_from_string(gen_kind), gen_params);
            save_dataset_file(ds, gen_out);
        } else if (fetch_cmd->parsed()) {
            return do_fetch(fetch_name, fetch_url, fetch_out);
        } else if (assign_cmd->parsed()) {
            const std::string text = read_text_file(assign_model);
            const Dataset pts = load_dataset_file(
                assign_points, format_for_path(assign_points));
            std::vector<Label> labels(pts.size(), kNoise);
            if (model_kind_from_json(text) == ModelKind::hdbscan) {
                const ClusterModel model = cluster_model_from_json(text);
                for (std::size_t i = 0; i < pts.size(); ++i)
                    labels[i] = model.assign(pts.point(PointId(i)));
            } else {
                const BaselineModel model = baseline_model_from_json(text);
                for (std::size_t i = 0; i < pts.size(); ++i)
                    labels[i] = model.assign(pts.point(PointId(i)));
            }
            if (assign_out == "-") {
                std::ostringstream buf;
                buf << "id,label\n";
                for (std::size_t i = 0; i < labels.size(); ++i)
                    buf << i << ',' << labels[i] << '\n';
                std::cout << buf.str();
            } else {
                save_labels_file(labels, assign_out);
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
