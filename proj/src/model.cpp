#include "swseg/model.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swseg {

namespace {

void check_table(const ScoreTable& table, std::size_t n_specs, std::size_t n_grid) {
    if (table.size() != n_specs) throw InternalError("score table spec count mismatch");
    for (const auto& row : table)
        if (row.size() != n_grid) throw InternalError("score table grid size mismatch");
}

}  // namespace

TrainedModel train_model(const std::vector<ScoreTable>& train_tables,
                         const std::vector<HierarchySpec>& specs,
                         const std::vector<std::string>& cut_params) {
    if (train_tables.empty()) throw ConfigError("training set is empty");
    if (specs.empty()) throw ConfigError("spec set is empty");
    const std::size_t n_specs = specs.size();
    const std::size_t n_grid = cut_params.size();
    for (const auto& t : train_tables) check_table(t, n_specs, n_grid);

    TrainedModel best;
    double best_sum = 0.0;
    for (std::size_t s = 0; s < n_specs; ++s) {
        for (std::size_t gi = 0; gi < n_grid; ++gi) {
            double sum = 0.0;
            for (const auto& t : train_tables) sum += t[s][gi];
            if (best.choice.spec == -1 || sum < best_sum) {
                best_sum = sum;
                best.choice = {static_cast<std::int32_t>(s), static_cast<std::int32_t>(gi)};
            }
        }
    }
    best.train_score = best_sum;
    best.spec_canonical = specs[static_cast<std::size_t>(best.choice.spec)].canonical();
    best.cut_param = cut_params[static_cast<std::size_t>(best.choice.grid)];
    return best;
}

OracleChoice oracle_argmin(const ScoreTable& table) {
    OracleChoice best;
    for (std::size_t s = 0; s < table.size(); ++s) {
        for (std::size_t gi = 0; gi < table[s].size(); ++gi) {
            if (best.choice.spec == -1 || table[s][gi] < best.score) {
                best.score = table[s][gi];
                best.choice = {static_cast<std::int32_t>(s), static_cast<std::int32_t>(gi)};
            }
        }
    }
    if (best.choice.spec == -1) throw InternalError("empty score table");
    return best;
}

ModelResult evaluate_tables(const TrainedModel& model,
                            const std::vector<ScoreTable>& test_tables,
                            const std::vector<std::string>& image_ids,
                            const std::vector<HierarchySpec>& specs,
                            const std::vector<std::string>& cut_params) {
    if (test_tables.empty()) throw ConfigError("test set is empty");
    if (test_tables.size() != image_ids.size())
        throw InternalError("test table / image id count mismatch");
    ModelResult result;
    result.model = model;
    for (std::size_t i = 0; i < test_tables.size(); ++i) {
        const ScoreTable& table = test_tables[i];
        check_table(table, specs.size(), cut_params.size());
        PerImageResult row;
        row.image_id = image_ids[i];
        row.model_spec = model.spec_canonical;
        row.model_cut = model.cut_param;
        row.model_score = table[static_cast<std::size_t>(model.choice.spec)]
                               [static_cast<std::size_t>(model.choice.grid)];
        const OracleChoice oracle = oracle_argmin(table);
        row.oracle_spec = specs[static_cast<std::size_t>(oracle.choice.spec)].canonical();
        row.oracle_cut = cut_params[static_cast<std::size_t>(oracle.choice.grid)];
        row.oracle_score = oracle.score;
        row.error = row.model_score - row.oracle_score;
        result.tests.push_back(std::move(row));
    }
    const auto n = static_cast<double>(result.tests.size());
    for (const PerImageResult& row : result.tests) {
        result.mean_oracle += row.oracle_score / n;
        result.mean_model += row.model_score / n;
        result.mean_error += row.error / n;
    }
    double ss = 0.0;
    for (const PerImageResult& row : result.tests) {
        const double d = row.error - result.mean_error;
        ss += d * d;
    }
    result.std_error = std::sqrt(ss / n);
    return result;
}

std::string results_csv(const ModelResult& result) {
    std::ostringstream out;
    out << "image,model_spec,model_cut,model_score,oracle_spec,oracle_cut,oracle_score,error,"
           "sigma_error\n";
    for (const PerImageResult& row : result.tests) {
        out << row.image_id << ',' << row.model_spec << ',' << row.model_cut << ','
            << format_double(row.model_score) << ',' << row.oracle_spec << ',' << row.oracle_cut
            << ',' << format_double(row.oracle_score) << ',' << format_double(row.error) << ",\n";
    }
    out << "summary," << result.model.spec_canonical << ',' << result.model.cut_param << ','
        << format_double(result.mean_model) << ",," << ',' << format_double(result.mean_oracle)
        << ',' << format_double(result.mean_error) << ',' << format_double(result.std_error)
        << "\n";
    return out.str();
}

std::string model_json(const TrainedModel& model) {
    nlohmann::json doc;
    doc["spec"] = model.spec_canonical;
    doc["cut"] = model.cut_param;
    doc["spec_index"] = model.choice.spec;
    doc["grid_index"] = model.choice.grid;
    doc["train_score"] = model.train_score;
    return doc.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
    TrainedModel model;
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        model.spec_canonical = doc.at("spec").get<std::string>();
        model.cut_param = doc.at("cut").get<std::string>();
        model.choice.spec = doc.at("spec_index").get<std::int32_t>();
        model.choice.grid = doc.at("grid_index").get<std::int32_t>();
        model.train_score = doc.at("train_score").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad model file: ") + e.what());
    }
    return model;
}

}  // namespace swseg
