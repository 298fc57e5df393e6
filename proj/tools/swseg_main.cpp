// swseg: stochastic watershed hierarchies, composition, and automatic
// (hierarchy, cut-level) selection for homogeneous image sets.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "swseg/hierarchy_io.hpp"
#include "swseg/image_io.hpp"
#include "swseg/runner.hpp"
#include "swseg/saliency.hpp"

namespace {

using namespace swseg;
namespace fs = std::filesystem;

struct SegmentArgs {
    std::string image;
    std::string spec = "grad";
    std::string cut = "k:1";
    std::string out = "labels.png";
    std::string saliency_out;
    std::string labels;
    std::string hierarchy_out;
    std::string hierarchy_dump;
    int gradient_radius = 1;
    std::string edge_weight = "pass";
    std::string marker_process = "poisson";
    double marker_amount = 100.0;
};

PipelineConfig pipeline_of(const SegmentArgs& args) {
    PipelineConfig cfg;
    cfg.gradient_radius = args.gradient_radius;
    if (args.edge_weight == "pass")
        cfg.edge_weight = EdgeWeight::PassValue;
    else if (args.edge_weight == "mean")
        cfg.edge_weight = EdgeWeight::MeanBoundary;
    else
        throw ConfigError("unknown edge weight kind '" + args.edge_weight + "'");
    return cfg;
}

MarkerDefaults markers_of(const SegmentArgs& args) {
    MarkerDefaults defaults;
    if (args.marker_process == "poisson")
        defaults.process = MarkerProcess::Poisson;
    else if (args.marker_process == "uniform")
        defaults.process = MarkerProcess::Uniform;
    else
        throw ConfigError("unknown marker process '" + args.marker_process + "'");
    defaults.amount = args.marker_amount;
    return defaults;
}

Partition apply_cut(const IndexedHierarchy& h, bool normalized, const std::string& cut) {
    if (cut.rfind("k:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(cut.substr(2));
        } catch (const std::exception&) {
            throw ConfigError("bad cut '" + cut + "'");
        }
        return cut_to_k(h, std::min<std::int32_t>(k, h.n_leaves()));
    }
    double value = 0.0;
    bool is_t = cut.rfind("t:", 0) == 0;
    try {
        value = std::stod(is_t ? cut.substr(2) : cut);
    } catch (const std::exception&) {
        throw ConfigError("bad cut '" + cut + "'");
    }
    if (is_t) value *= normalized ? 1.0 : h.max_altitude();
    if (value < 0) throw ConfigError("cut threshold must be >= 0");
    return cut_at(h, value);
}

int cmd_segment(const SegmentArgs& args, bool saliency_only) {
    Image img = read_image(args.image);
    ImageContext ctx;
    if (!args.labels.empty()) {
        const LabelMap imported = import_labels(args.labels, img.width, img.height);
        ctx = make_image_context(std::move(img), pipeline_of(args), &imported);
    } else {
        ctx = make_image_context(std::move(img), pipeline_of(args));
    }
    const HierarchySpec spec = HierarchySpec::parse(args.spec, markers_of(args));
    const IndexedHierarchy h = compose_chain(ctx, spec);
    if (!args.hierarchy_out.empty()) save_hierarchy(args.hierarchy_out, h);
    if (!args.hierarchy_dump.empty()) {
        std::ofstream dump(args.hierarchy_dump);
        if (!dump) throw DataError("cannot write '" + args.hierarchy_dump + "'");
        dump << dump_hierarchy(h);
    }

    if (!saliency_only) {
        const Partition p = apply_cut(h, spec.normalized_altitudes(), args.cut);
        write_label_png16(args.out, partition_labelmap(p, ctx.fine));
        std::cout << "regions: " << p.n_regions << "\n";
    }
    if (saliency_only || !args.saliency_out.empty()) {
        const std::string path = args.saliency_out.empty() ? args.out : args.saliency_out;
        write_saliency_png(path, render_saliency(h, ctx.fine));
        std::cout << "saliency: " << path << "\n";
    }
    return 0;
}

int cmd_mc_check(std::int64_t trials, std::uint64_t seed, int leaves, int hierarchies,
                 int workers, double amount) {
    // Deterministic random hierarchies: random tree topology, altitudes in
    // (0,1], leaf areas in [1,20].
    bool all_ok = true;
    double worst = 0.0;
    for (int hi = 0; hi < hierarchies; ++hi) {
        Rng rng(seed, 1000 + static_cast<std::uint64_t>(hi));
        std::vector<std::tuple<int, int, double>> edges;
        for (int v = 1; v < leaves; ++v) {
            const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
            edges.emplace_back(u, v, 0.05 + 0.95 * rng.next_double());
        }
        std::vector<std::int64_t> areas(static_cast<std::size_t>(leaves));
        for (auto& a : areas) a = 1 + static_cast<std::int64_t>(rng.next_below(20));
        auto rag = std::make_shared<Rag>(Rag::from_edges(leaves, edges));
        for (int i = 0; i < leaves; ++i)
            rag->nodes[static_cast<std::size_t>(i)].area = areas[static_cast<std::size_t>(i)];
        const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));

        for (MarkerProcess process : {MarkerProcess::Poisson, MarkerProcess::Uniform}) {
            for (MeasureKind kind : {MeasureKind::Surface, MeasureKind::Volume}) {
                MarkerModel m;
                m.process = process;
                m.kind = kind;
                m.amount = amount;
                const auto p = analytic_cut_probability(h, m);
                const auto freq =
                    monte_carlo_cut_frequency(h, m, trials, seed + static_cast<std::uint64_t>(hi),
                                              workers);
                for (std::size_t e = 0; e < p.size(); ++e) {
                    const double band =
                        4.0 * std::sqrt(p[e] * (1.0 - p[e]) / static_cast<double>(trials)) + 1e-3;
                    const double dev = std::abs(p[e] - freq[e]);
                    worst = std::max(worst, dev - band);
                    if (dev > band) {
                        all_ok = false;
                        std::cout << "EXCEEDED hierarchy " << hi << " " << m.describe()
                                  << " edge " << e << ": |P-freq| = " << dev << " > band "
                                  << band << "\n";
                    }
                }
            }
        }
    }
    std::cout << (all_ok ? "mc-check PASS" : "mc-check FAIL")
              << " (max deviation above band: " << format_double(worst) << ")\n";
    return all_ok ? 0 : 1;
}

// Run options live on the root app so a root-level TOML config can fill them;
// train/oracle/evaluate use fallthrough to reach them.
void add_run_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--manifest", cfg.manifest, "dataset manifest (JSON)");
    app.add_option("--output", cfg.output, "output directory");
    app.add_option("--cache-dir", cfg.cache_dir, "hierarchy cache directory ('none' disables)");
    app.add_option("--train", cfg.train_ids, "training image ids");
    app.add_option("--test", cfg.test_ids, "test image ids");
    app.add_option("--split-ratio", cfg.split_ratio, "train share when no explicit split");
    app.add_option("--specs", cfg.spec_set, "spec set: all-depth-2 | all-depth-1 | base");
    app.add_option("--spec-list", cfg.spec_list, "explicit hierarchy spec strings");
    app.add_option("--se-catalog", cfg.se_catalog, "structuring elements, e.g. disk:4");
    app.add_option("--marker-process", cfg.marker_process, "poisson | uniform");
    app.add_option("--marker-amount", cfg.marker_amount, "expected markers / N");
    app.add_option("--score", cfg.score, "ms | whdr");
    app.add_option("--ms-scale", cfg.ms_scale, "Mumford-Shah scale parameter");
    app.add_option("--whdr-delta", cfg.whdr_delta, "WHDR equality tolerance");
    app.add_option("--grid", cfg.grid_mode, "threshold | counts");
    app.add_option("--grid-levels", cfg.grid_levels, "threshold grid size");
    app.add_option("--grid-counts", cfg.grid_counts, "region-count grid entries");
    app.add_option("--gradient-radius", cfg.gradient_radius, "gradient disk radius");
    app.add_option("--edge-weight", cfg.edge_weight, "pass | mean");
    app.add_option("--workers", cfg.workers, "worker threads (0 = auto)");
    app.add_option("--seed", cfg.seed, "run seed");
    app.set_config("--config", "", "TOML run configuration");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic watershed hierarchy segmentation"};
    app.require_subcommand(1);

    SegmentArgs seg;
    auto add_segment_options = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("image", seg.image, "input image (PNG/PGM/PPM)")->required();
        cmd->add_option("--spec", seg.spec, "hierarchy spec, e.g. 'ssurf|grad'");
        cmd->add_option("-o,--out", seg.out, "output PNG")->required(needs_out);
        cmd->add_option("--labels", seg.labels, "imported fine partition (16-bit PNG)");
        cmd->add_option("--hierarchy-out", seg.hierarchy_out, "persist the hierarchy");
        cmd->add_option("--hierarchy-dump", seg.hierarchy_dump, "write a textual hierarchy dump");
        cmd->add_option("--gradient-radius", seg.gradient_radius, "gradient disk radius");
        cmd->add_option("--edge-weight", seg.edge_weight, "pass | mean");
        cmd->add_option("--marker-process", seg.marker_process, "poisson | uniform");
        cmd->add_option("--marker-amount", seg.marker_amount, "expected markers / N");
    };
    CLI::App* segment = app.add_subcommand("segment", "segment one image at a fixed cut");
    add_segment_options(segment, true);
    segment->add_option("--cut", seg.cut, "cut: k:<count>, t:<normalized>, or raw threshold");
    segment->add_option("--saliency", seg.saliency_out, "also write the saliency map");

    CLI::App* saliency = app.add_subcommand("saliency", "render a hierarchy's saliency map");
    add_segment_options(saliency, true);

    RunConfig runcfg;
    add_run_options(app, runcfg);
    CLI::App* train = app.add_subcommand("train", "select (hierarchy, cut) on the training set");
    train->fallthrough(true);
    CLI::App* oracle = app.add_subcommand("oracle", "per-image best (hierarchy, cut)");
    oracle->fallthrough(true);
    CLI::App* evaluate = app.add_subcommand("evaluate", "train + test error statistics");
    evaluate->fallthrough(true);

    std::int64_t trials = 100000;
    std::uint64_t mc_seed = 1;
    int mc_leaves = 30;
    int mc_hierarchies = 1;
    int mc_workers = 0;
    double mc_amount = 100.0;
    CLI::App* mc = app.add_subcommand("mc-check", "closed-form vs Monte Carlo verification");
    mc->add_option("--trials", trials, "Monte Carlo trials");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--leaves", mc_leaves, "hierarchy size");
    mc->add_option("--hierarchies", mc_hierarchies, "number of random hierarchies");
    mc->add_option("--workers", mc_workers, "worker threads (0 = auto)");
    mc->add_option("--marker-amount", mc_amount, "expected markers / N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (segment->parsed()) return cmd_segment(seg, false);
        if (saliency->parsed()) return cmd_segment(seg, true);
        if (mc->parsed())
            return cmd_mc_check(trials, mc_seed, mc_leaves, mc_hierarchies,
                                mc_workers > 0 ? mc_workers : default_workers(), mc_amount);
        const ResolvedRun run = resolve_run(runcfg);
        if (train->parsed()) {
            const TrainOutput out = run_train(run);
            std::filesystem::create_directories(run.output_dir);
            std::ofstream model_file(std::filesystem::path(run.output_dir) / "model.json");
            model_file << model_json(out.model);
            std::cout << "model: " << out.model.spec_canonical << " cut " << out.model.cut_param
                      << " train score " << format_double(out.model.train_score) << "\n";
        } else if (oracle->parsed()) {
            const std::string csv = run_oracle_csv(run);
            std::filesystem::create_directories(run.output_dir);
            std::ofstream csv_file(std::filesystem::path(run.output_dir) / "oracle.csv");
            csv_file << csv;
            std::cout << csv;
        } else if (evaluate->parsed()) {
            const ModelResult result = run_evaluate(run);
            std::cout << "model: " << result.model.spec_canonical << " cut "
                      << result.model.cut_param << "\n";
            std::cout << "mu(oracle) " << format_double(result.mean_oracle) << "  mu(model) "
                      << format_double(result.mean_model) << "  mu(error) "
                      << format_double(result.mean_error) << "  sigma(error) "
                      << format_double(result.std_error) << "\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateMeasureError& e) {
        std::cerr << "degenerate measure: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
