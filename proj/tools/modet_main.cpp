#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modet/evaluate.hpp"
#include "modet/io.hpp"

namespace fs = std::filesystem;
using namespace modet;

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

struct CommonOpts {
    std::string input;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_flag;
    unsigned jobs = std::thread::hardware_concurrency();
    int verbosity = 0;
};

DetectionConfig resolve_config(const CommonOpts& opts) {
    DetectionConfig cfg;
    std::vector<std::string> warnings;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (const char* env = std::getenv("MODET_SEED"); env && !opts.seed_flag) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (opts.seed_flag) cfg.seed = *opts.seed_flag;
    return cfg;
}

// Deterministic fan-out: results land in slots indexed by corpus order.
template <typename F>
void parallel_over(std::size_t count, unsigned jobs, F&& work) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const unsigned n_threads = std::min<std::size_t>(jobs, count);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int cmd_detect(const CommonOpts& opts) {
    const DetectionConfig cfg = resolve_config(opts);
    const auto corpora = group_by_artist(parse_feature_records_file(opts.input));
    fs::create_directories(opts.out_dir);
    std::vector<std::string> outputs(corpora.size());
    parallel_over(corpora.size(), opts.jobs, [&](std::size_t i) {
        outputs[i] = serialize_detection_result(detect_genuine(corpora[i], cfg));
    });
    for (std::size_t i = 0; i < corpora.size(); ++i) {
        write_atomic(fs::path(opts.out_dir) / (corpora[i].artist_id + ".jsonl"), outputs[i]);
        if (opts.verbosity > 0) std::cerr << "detect: wrote " << corpora[i].artist_id << '\n';
    }
    return 0;
}

int cmd_cluster(const CommonOpts& opts) {
    const DetectionConfig cfg = resolve_config(opts);
    const auto corpora = group_by_artist(parse_feature_records_file(opts.input));
    fs::create_directories(opts.out_dir);
    std::vector<std::string> outputs(corpora.size());
    parallel_over(corpora.size(), opts.jobs, [&](std::size_t i) {
        const DetectionResult result = detect_genuine(corpora[i], cfg);
        nlohmann::json j;
        j["artist_id"] = corpora[i].artist_id;
        j["k"] = result.clustering.k;
        j["wcss"] = result.clustering.wcss;
        j["cluster_sizes"] = result.clustering.cluster_sizes;
        j["centroids"] = result.clustering.centroids;
        outputs[i] = j.dump(2) + "\n";
    });
    for (std::size_t i = 0; i < corpora.size(); ++i) {
        write_atomic(fs::path(opts.out_dir) / (corpora[i].artist_id + ".cluster.json"),
                     outputs[i]);
    }
    return 0;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& report_name) {
    const DetectionConfig cfg = resolve_config(opts);
    const auto corpora = group_by_artist(parse_feature_records_file(opts.input));
    const EvaluationReport report = per_artist_report(corpora, cfg);
    fs::create_directories(opts.out_dir);
    write_atomic(fs::path(opts.out_dir) / report_name, format_report_csv(report));
    return 0;
}

int cmd_report(const CommonOpts& opts) {
    const DetectionConfig cfg = resolve_config(opts);
    const auto records = parse_feature_records_file(opts.input);
    const auto corpora = group_by_artist(records);
    fs::create_directories(opts.out_dir);
    write_atomic(fs::path(opts.out_dir) / "histogram.csv",
                 format_histogram_csv(category_histogram(records)));
    std::vector<std::string> outputs(corpora.size());
    parallel_over(corpora.size(), opts.jobs, [&](std::size_t i) {
        outputs[i] = emit_cluster_plot_data(corpora[i], detect_genuine(corpora[i], cfg));
    });
    for (std::size_t i = 0; i < corpora.size(); ++i) {
        write_atomic(fs::path(opts.out_dir) / (corpora[i].artist_id + ".plot.csv"), outputs[i]);
    }
    return 0;
}

SynthSpec parse_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    SynthSpec spec;
    if (j.contains("n_main")) spec.n_main = j["n_main"].get<std::uint32_t>();
    if (j.contains("main_center")) spec.main_center = j["main_center"].get<std::vector<double>>();
    if (j.contains("main_spread")) spec.main_spread = j["main_spread"].get<std::vector<double>>();
    if (j.contains("n_planted")) spec.n_planted = j["n_planted"].get<std::uint32_t>();
    if (j.contains("planted_offset_z")) spec.planted_offset_z = j["planted_offset_z"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("artist_id")) spec.artist_id = j["artist_id"].get<std::string>();
    auto read_sequences = [&](const char* key, std::vector<StructureSequence>& out) {
        if (!j.contains(key)) return;
        for (const auto& arr : j[key]) {
            StructureSequence seq;
            seq.labels = arr.get<std::vector<std::string>>();
            out.push_back(std::move(seq));
        }
    };
    read_sequences("structure_pool", spec.structure_pool);
    read_sequences("planted_structures", spec.planted_structures);
    return spec;
}

int cmd_synth(const std::string& spec_path, std::optional<std::uint64_t> seed,
              const std::string& out_path) {
    SynthSpec spec = parse_synth_spec(spec_path);
    if (seed) spec.seed = *seed;
    const ArtistCorpus corpus = generate_corpus(spec);
    std::ostringstream buf;
    write_feature_records(buf, corpus.recordings);
    fs::create_directories(fs::path(out_path).parent_path().empty()
                               ? "."
                               : fs::path(out_path).parent_path().string());
    write_atomic(out_path, buf.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genuine music outlier detection over per-artist feature corpora"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string synth_spec_path, synth_out = "corpus.jsonl";
    std::string report_name = "report.csv";

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) {
            sub->add_option("--input", opts.input, "input feature records (JSON lines)")
                ->required();
        }
        sub->add_option("--config", opts.config_path, "detection config file (JSON)");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--seed", opts.seed_flag, "seed override (wins over config and env)");
        sub->add_option("--jobs", opts.jobs, "parallel artist workers");
        sub->add_flag("-v,--verbose", opts.verbosity, "verbose progress on stderr");
    };

    auto* detect = app.add_subcommand("detect", "run outlier detection per artist");
    add_common(detect, true);
    auto* cluster = app.add_subcommand("cluster", "write clustering summaries per artist");
    add_common(cluster, true);
    auto* evaluate = app.add_subcommand("evaluate", "confusion-rate report against labels");
    add_common(evaluate, true);
    evaluate->add_option("--report-name", report_name, "report file name");
    auto* report = app.add_subcommand("report", "category histogram and cluster plot data");
    add_common(report, true);
    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
    synth->add_option("--spec", synth_spec_path, "synthesis spec file (JSON)")->required();
    synth->add_option("--seed", opts.seed_flag, "seed override");
    synth->add_option("--out", synth_out, "output corpus path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (detect->parsed()) return cmd_detect(opts);
        if (cluster->parsed()) return cmd_cluster(opts);
        if (evaluate->parsed()) return cmd_evaluate(opts, report_name);
        if (report->parsed()) return cmd_report(opts);
        if (synth->parsed()) return cmd_synth(synth_spec_path, opts.seed_flag, synth_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
