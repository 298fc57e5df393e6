#pragma once

#include "swseg/manifest.hpp"
#include "swseg/model.hpp"

namespace swseg {

/// Everything a train/oracle/evaluate run needs; populated from the CLI and
/// its TOML config file.
struct RunConfig {
    std::string manifest;
    std::string output = "out";
    std::string cache_dir;  // defaults to <output>/cache; empty string "none" disables

    std::vector<std::string> train_ids;  // explicit split...
    std::vector<std::string> test_ids;
    double split_ratio = -1.0;           // ...or shuffled ratio split with `seed`

    std::string spec_set = "all-depth-2";  // all-depth-2 | all-depth-1 | base
    std::vector<std::string> spec_list;    // explicit grammar strings win over spec_set
    std::vector<std::string> se_catalog = {"disk:4", "hseg:4", "vseg:15"};

    std::string marker_process = "poisson";
    double marker_amount = 100.0;

    std::string score = "ms";  // ms | whdr
    double ms_scale = 1.168;
    double whdr_delta = 0.10;

    std::string grid_mode = "threshold";  // threshold | counts
    int grid_levels = 64;
    std::vector<int> grid_counts;

    int gradient_radius = 1;
    std::string edge_weight = "pass";  // pass | mean

    int workers = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 0;
};

struct ResolvedRun {
    std::vector<ManifestEntry> train_entries;
    std::vector<ManifestEntry> test_entries;
    std::vector<HierarchySpec> specs;
    CutGrid grid;
    ScoreConfig score;
    PipelineConfig pipeline;
    MarkerDefaults markers;
    std::string output_dir;
    std::string cache_dir;  // empty = caching disabled
    int workers = 1;
    std::uint64_t seed = 0;
};

/// Validates the configuration, loads the manifest and materializes the split
/// and spec set. Throws ConfigError / DataError.
ResolvedRun resolve_run(const RunConfig& cfg);

/// One loaded image with its derived pipeline state.
struct ImageBundle {
    ManifestEntry entry;
    ImageContext ctx;
    std::optional<JudgmentSet> judgments;
};
ImageBundle load_bundle(const ManifestEntry& entry, const ResolvedRun& run);

/// Hierarchy for one (bundle, spec), going through the on-disk cache when the
/// run has one. Cache files are bit-reproducible across runs.
IndexedHierarchy hierarchy_for(const ImageBundle& bundle, const ResolvedRun& run,
                               const HierarchySpec& spec);

/// Scores of every (spec, grid) pair for one image.
ScoreTable build_score_table(const ImageBundle& bundle, const ResolvedRun& run);

/// Grid cut parameter names shared by every table of the run.
std::vector<std::string> grid_cut_params(const ResolvedRun& run);

struct TrainOutput {
    TrainedModel model;
    std::vector<std::string> train_ids;
};
TrainOutput run_train(const ResolvedRun& run);

/// Per-image oracle rows for the test entries (or all entries when no split).
std::string run_oracle_csv(const ResolvedRun& run);

/// Full train + test evaluation; writes results.csv and model.json under the
/// output directory and returns the result.
ModelResult run_evaluate(const ResolvedRun& run);

}  // namespace swseg
