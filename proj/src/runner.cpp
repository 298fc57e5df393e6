#include "swseg/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "swseg/hierarchy_io.hpp"
#include "swseg/image_io.hpp"

namespace swseg {

namespace {

namespace fs = std::filesystem;

std::vector<ManifestEntry> pick_entries(const std::vector<ManifestEntry>& all,
                                        const std::vector<std::string>& ids) {
    std::vector<ManifestEntry> out;
    for (const std::string& id : ids) {
        const auto it = std::find_if(all.begin(), all.end(),
                                     [&](const ManifestEntry& e) { return e.id == id; });
        if (it == all.end()) throw ConfigError("split references unknown image id '" + id + "'");
        out.push_back(*it);
    }
    return out;
}

std::string sanitize_id(const std::string& id) {
    std::string out = id;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
}

}  // namespace

ResolvedRun resolve_run(const RunConfig& cfg) {
    ResolvedRun run;
    if (cfg.manifest.empty()) throw ConfigError("no dataset manifest given");
    const std::vector<ManifestEntry> all = load_manifest(cfg.manifest);

    if (!cfg.train_ids.empty() || !cfg.test_ids.empty()) {
        if (cfg.split_ratio >= 0)
            throw ConfigError("give either explicit train/test lists or a split ratio, not both");
        run.train_entries = pick_entries(all, cfg.train_ids);
        run.test_entries = pick_entries(all, cfg.test_ids);
        for (const auto& t : cfg.train_ids)
            if (std::find(cfg.test_ids.begin(), cfg.test_ids.end(), t) != cfg.test_ids.end())
                throw ConfigError("train/test splits overlap on '" + t + "'");
    } else {
        double ratio = cfg.split_ratio < 0 ? 0.5 : cfg.split_ratio;
        if (ratio <= 0.0 || ratio >= 1.0) throw ConfigError("split ratio must be in (0,1)");
        std::vector<std::size_t> order(all.size());
        std::iota(order.begin(), order.end(), 0);
        Rng rng(cfg.seed, 0x5eed517u);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.next_below(i))]);
        const auto n_train = static_cast<std::size_t>(
            std::max<double>(1.0, std::min<double>(static_cast<double>(all.size()) - 1.0,
                                                   std::round(ratio * static_cast<double>(
                                                                          all.size())))));
        for (std::size_t i = 0; i < order.size(); ++i)
            (i < n_train ? run.train_entries : run.test_entries).push_back(all[order[i]]);
    }

    MarkerDefaults defaults;
    if (cfg.marker_process == "poisson")
        defaults.process = MarkerProcess::Poisson;
    else if (cfg.marker_process == "uniform")
        defaults.process = MarkerProcess::Uniform;
    else
        throw ConfigError("unknown marker process '" + cfg.marker_process + "'");
    if (!(cfg.marker_amount > 0)) throw ConfigError("marker amount must be positive");
    defaults.amount = cfg.marker_amount;
    run.markers = defaults;

    if (!cfg.spec_list.empty()) {
        for (const std::string& s : cfg.spec_list)
            run.specs.push_back(HierarchySpec::parse(s, defaults));
    } else {
        std::vector<StructuringElement> catalog;
        for (const std::string& s : cfg.se_catalog) catalog.push_back(StructuringElement::parse(s));
        if (cfg.spec_set == "base") {
            run.specs.emplace_back();
        } else if (cfg.spec_set == "all-depth-1" || cfg.spec_set == "all-depth-2") {
            const auto ops = default_operator_set(catalog, defaults);
            run.specs = enumerate_specs(ops);
            if (cfg.spec_set == "all-depth-1") {
                std::erase_if(run.specs,
                              [](const HierarchySpec& s) { return s.depth() > 1; });
            }
        } else {
            throw ConfigError("unknown spec set '" + cfg.spec_set + "'");
        }
    }
    if (run.specs.empty()) throw ConfigError("spec set is empty");

    if (cfg.grid_mode == "threshold") {
        run.grid.mode = CutGrid::Mode::Threshold;
        run.grid.levels = cfg.grid_levels;
    } else if (cfg.grid_mode == "counts") {
        run.grid.mode = CutGrid::Mode::RegionCount;
        run.grid.counts.assign(cfg.grid_counts.begin(), cfg.grid_counts.end());
    } else {
        throw ConfigError("unknown grid mode '" + cfg.grid_mode + "'");
    }
    run.grid.validate();

    if (cfg.score == "ms") {
        run.score.kind = ScoreConfig::Kind::MumfordShah;
        if (!(cfg.ms_scale > 0)) throw ConfigError("Mumford-Shah scale must be positive");
        run.score.ms_scale = cfg.ms_scale;
    } else if (cfg.score == "whdr") {
        run.score.kind = ScoreConfig::Kind::Whdr;
        if (cfg.whdr_delta < 0) throw ConfigError("WHDR delta must be >= 0");
        run.score.whdr_delta = cfg.whdr_delta;
    } else {
        throw ConfigError("unknown score kind '" + cfg.score + "'");
    }

    run.pipeline.gradient_radius = cfg.gradient_radius;
    if (cfg.edge_weight == "pass")
        run.pipeline.edge_weight = EdgeWeight::PassValue;
    else if (cfg.edge_weight == "mean")
        run.pipeline.edge_weight = EdgeWeight::MeanBoundary;
    else
        throw ConfigError("unknown edge weight kind '" + cfg.edge_weight + "'");

    run.output_dir = cfg.output;
    run.cache_dir = cfg.cache_dir.empty() ? (fs::path(cfg.output) / "cache").string()
                                          : (cfg.cache_dir == "none" ? "" : cfg.cache_dir);
    run.workers = cfg.workers > 0 ? cfg.workers : default_workers();
    run.seed = cfg.seed;
    return run;
}

ImageBundle load_bundle(const ManifestEntry& entry, const ResolvedRun& run) {
    try {
        ImageBundle bundle;
        bundle.entry = entry;
        Image img = read_image(entry.image_path);
        if (entry.labels_path) {
            const LabelMap labels = import_labels(*entry.labels_path, img.width, img.height);
            bundle.ctx = make_image_context(std::move(img), run.pipeline, &labels);
        } else {
            bundle.ctx = make_image_context(std::move(img), run.pipeline);
        }
        if (run.score.kind == ScoreConfig::Kind::Whdr) {
            if (!entry.judgments_path)
                throw DataError("WHDR scoring needs a judgment file");
            bundle.judgments = load_judgments(*entry.judgments_path, run.score.whdr_delta);
        }
        return bundle;
    } catch (const Error& e) {
        throw DataError("image '" + entry.id + "': " + e.what());
    }
}

IndexedHierarchy hierarchy_for(const ImageBundle& bundle, const ResolvedRun& run,
                               const HierarchySpec& spec) {
    if (run.cache_dir.empty()) return compose_chain(bundle.ctx, spec);
    const std::string canonical = spec.canonical();
    std::uint64_t key = fnv1a(canonical);
    key = fnv1a(bundle.entry.id, key);
    key = fnv1a(&run.pipeline.gradient_radius, sizeof(int), key);
    const int weight_kind = static_cast<int>(run.pipeline.edge_weight);
    key = fnv1a(&weight_kind, sizeof(int), key);
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(key));
    const std::string path =
        (fs::path(run.cache_dir) / (sanitize_id(bundle.entry.id) + "__" + hex + ".swsh"))
            .string();
    if (fs::exists(path)) {
        IndexedHierarchy h = load_hierarchy(path, bundle.ctx.rag);
        if (h.provenance == canonical) return h;
    }
    IndexedHierarchy h = compose_chain(bundle.ctx, spec);
    fs::create_directories(run.cache_dir);
    save_hierarchy(path, h);
    return h;
}

ScoreTable build_score_table(const ImageBundle& bundle, const ResolvedRun& run) {
    ScoreTable table(run.specs.size());
    const JudgmentSet* judgments = bundle.judgments ? &*bundle.judgments : nullptr;
    for (std::size_t s = 0; s < run.specs.size(); ++s) {
        const IndexedHierarchy h = hierarchy_for(bundle, run, run.specs[s]);
        table[s] = evaluate_cuts(h, run.specs[s].normalized_altitudes(), run.grid, run.score,
                                 judgments)
                       .score;
    }
    return table;
}

std::vector<std::string> grid_cut_params(const ResolvedRun& run) {
    std::vector<std::string> params;
    if (run.grid.mode == CutGrid::Mode::Threshold) {
        for (int j = 0; j < run.grid.levels; ++j)
            params.push_back(
                "t:" + format_double(static_cast<double>(j) /
                                     static_cast<double>(run.grid.levels - 1)));
    } else {
        for (std::int32_t k : run.grid.counts) params.push_back("k:" + std::to_string(k));
    }
    return params;
}

namespace {

// Tables for a set of images; the (image x spec) matrix is embarrassingly
// parallel, results land in per-index slots.
std::vector<ScoreTable> tables_for(const std::vector<ManifestEntry>& entries,
                                   const ResolvedRun& run) {
    std::vector<ImageBundle> bundles(entries.size());
    parallel_for(entries.size(), run.workers,
                 [&](std::size_t i) { bundles[i] = load_bundle(entries[i], run); });
    std::vector<ScoreTable> tables(entries.size());
    for (auto& t : tables) t.resize(run.specs.size());
    const std::size_t n_tasks = entries.size() * run.specs.size();
    parallel_for(n_tasks, run.workers, [&](std::size_t task) {
        const std::size_t img = task / run.specs.size();
        const std::size_t s = task % run.specs.size();
        const IndexedHierarchy h = hierarchy_for(bundles[img], run, run.specs[s]);
        const JudgmentSet* judgments = bundles[img].judgments ? &*bundles[img].judgments : nullptr;
        tables[img][s] = evaluate_cuts(h, run.specs[s].normalized_altitudes(), run.grid,
                                       run.score, judgments)
                             .score;
    });
    return tables;
}

}  // namespace

TrainOutput run_train(const ResolvedRun& run) {
    if (run.train_entries.empty()) throw ConfigError("training set is empty");
    const auto tables = tables_for(run.train_entries, run);
    TrainOutput out;
    out.model = train_model(tables, run.specs, grid_cut_params(run));
    for (const auto& e : run.train_entries) out.train_ids.push_back(e.id);
    return out;
}

std::string run_oracle_csv(const ResolvedRun& run) {
    const auto& entries = run.test_entries.empty() ? run.train_entries : run.test_entries;
    if (entries.empty()) throw ConfigError("no images to evaluate");
    const auto tables = tables_for(entries, run);
    const auto params = grid_cut_params(run);
    std::ostringstream out;
    out << "image,oracle_spec,oracle_cut,oracle_score\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const OracleChoice oracle = oracle_argmin(tables[i]);
        out << entries[i].id << ','
            << run.specs[static_cast<std::size_t>(oracle.choice.spec)].canonical() << ','
            << params[static_cast<std::size_t>(oracle.choice.grid)] << ','
            << format_double(oracle.score) << "\n";
    }
    return out.str();
}

ModelResult run_evaluate(const ResolvedRun& run) {
    if (run.train_entries.empty()) throw ConfigError("training set is empty");
    if (run.test_entries.empty()) throw ConfigError("test set is empty");
    const auto train_tables = tables_for(run.train_entries, run);
    const TrainedModel model = train_model(train_tables, run.specs, grid_cut_params(run));
    const auto test_tables = tables_for(run.test_entries, run);
    std::vector<std::string> ids;
    for (const auto& e : run.test_entries) ids.push_back(e.id);
    const ModelResult result =
        evaluate_tables(model, test_tables, ids, run.specs, grid_cut_params(run));

    fs::create_directories(run.output_dir);
    write_file((fs::path(run.output_dir) / "results.csv").string(), results_csv(result));
    write_file((fs::path(run.output_dir) / "model.json").string(), model_json(model));
    return result;
}

}  // namespace swseg
