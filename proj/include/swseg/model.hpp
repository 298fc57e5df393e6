#pragma once

#include "swseg/chain.hpp"
#include "swseg/cut_scores.hpp"

namespace swseg {

/// Score of every (spec, grid) pair for one image: table[spec][grid].
using ScoreTable = std::vector<std::vector<double>>;

struct SpecChoice {
    std::int32_t spec = -1;
    std::int32_t grid = -1;
};

/// Argmin over the summed training tables; ties resolved by canonical spec
/// order, then by the earlier grid entry.
struct TrainedModel {
    SpecChoice choice;
    double train_score = 0.0;
    std::string spec_canonical;
    std::string cut_param;
};

TrainedModel train_model(const std::vector<ScoreTable>& train_tables,
                         const std::vector<HierarchySpec>& specs,
                         const std::vector<std::string>& cut_params);

/// Per-image argmin over the same search space.
struct OracleChoice {
    SpecChoice choice;
    double score = 0.0;
};
OracleChoice oracle_argmin(const ScoreTable& table);

struct PerImageResult {
    std::string image_id;
    std::string model_spec, model_cut;
    double model_score = 0.0;
    std::string oracle_spec, oracle_cut;
    double oracle_score = 0.0;
    double error = 0.0;  // model - oracle, never negative
};

struct ModelResult {
    TrainedModel model;
    std::vector<PerImageResult> tests;
    double mean_oracle = 0.0;
    double mean_model = 0.0;
    double mean_error = 0.0;
    double std_error = 0.0;  // population (1/n) standard deviation
};

ModelResult evaluate_tables(const TrainedModel& model,
                            const std::vector<ScoreTable>& test_tables,
                            const std::vector<std::string>& image_ids,
                            const std::vector<HierarchySpec>& specs,
                            const std::vector<std::string>& cut_params);

/// One row per test image plus a trailing summary row carrying the means and
/// the error standard deviation.
std::string results_csv(const ModelResult& result);

std::string model_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

}  // namespace swseg
