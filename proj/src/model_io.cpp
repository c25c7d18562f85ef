#include "lpc/model_io.hpp"

#include <fstream>

#include "lpc/errors.hpp"
#include "lpc/version.hpp"

namespace lpc {

nlohmann::json model_to_json(const LpcModel& model, const nlohmann::json& config_echo) {
  nlohmann::json j;
  j["format"] = "lpc-model";
  j["num_labels"] = model.num_labels();
  j["k"] = model.gf.k();
  j["num_features"] = model.num_features;
  j["ind_order"] = "lexicographic";
  j["alpha"] = model.dual.alpha;
  j["beta"] = model.dual.beta;
  j["gamma"] = model.dual.gamma;
  j["R"] = model.dual.minimax_risk;
  j["interval"] = {{"tau_n", model.interval.tau_n}, {"a", model.interval.a},
                   {"b", model.interval.b},         {"s", model.interval.s},
                   {"delta", model.interval.delta}, {"n", model.interval.n}};
  auto& classifiers = j["classifiers"] = nlohmann::json::array();
  for (const auto& c : model.gf.classifiers()) classifiers.push_back(c.to_json());
  j["pattern_mode"] = model.mode == PatternMode::Exact ? "exact" : "approx";
  std::int64_t full = 1;
  for (int i = 0; i < model.gf.k(); ++i) full *= model.num_labels();
  if (static_cast<std::int64_t>(model.patterns.size()) != full)
    j["patterns"] = model.patterns.patterns();
  j["label_names"] = model.label_names;
  j["metadata"] = {{"config", config_echo}, {"version", LPC_VERSION_STRING}};
  return j;
}

LpcModel model_from_json(const nlohmann::json& j) {
  if (!j.contains("format") || j.at("format").get<std::string>() != "lpc-model")
    throw DataError("model file: unrecognized format");
  const int num_labels = j.at("num_labels").get<int>();
  const int k = j.at("k").get<int>();
  if (j.at("ind_order").get<std::string>() != "lexicographic")
    throw DataError("model file: unsupported tuple index order");

  std::vector<BaseClassifier> classifiers;
  for (const auto& cj : j.at("classifiers")) classifiers.push_back(BaseClassifier::from_json(cj));
  if (static_cast<int>(classifiers.size()) != k)
    throw DataError("model file: classifier count does not match k");
  GeneratingFunction gf(num_labels, std::move(classifiers));

  PatternTable table =
      j.contains("patterns")
          ? PatternTable::from_patterns(num_labels, k,
                                        j.at("patterns").get<std::vector<std::vector<int>>>())
          : PatternTable::full_enumeration(num_labels, k);

  DualSolution dual;
  dual.alpha = j.at("alpha").get<std::vector<double>>();
  dual.beta = j.at("beta").get<std::vector<double>>();
  dual.gamma = j.at("gamma").get<double>();
  dual.minimax_risk = j.at("R").get<double>();
  if (dual.alpha.size() != static_cast<std::size_t>(gf.m()) || dual.beta.size() != dual.alpha.size())
    throw DataError("model file: dual coefficient size mismatch");
  dual.lambda.resize(dual.alpha.size());
  for (std::size_t i = 0; i < dual.alpha.size(); ++i)
    dual.lambda[i] = dual.alpha[i] - dual.beta[i];
  dual.value = 1.0 - dual.minimax_risk;

  const auto& ij = j.at("interval");
  UncertaintyInterval interval;
  interval.tau_n = ij.at("tau_n").get<std::vector<double>>();
  interval.a = ij.at("a").get<std::vector<double>>();
  interval.b = ij.at("b").get<std::vector<double>>();
  interval.s = ij.at("s").get<std::vector<double>>();
  interval.delta = ij.at("delta").get<double>();
  interval.n = ij.at("n").get<std::int64_t>();

  PatternMode mode =
      j.at("pattern_mode").get<std::string>() == "approx" ? PatternMode::Approx : PatternMode::Exact;
  LpcModel model{std::move(dual), std::move(interval), std::move(gf), std::move(table), mode,
                 j.at("num_features").get<int>(),      {}};
  if (j.contains("label_names")) model.label_names = j.at("label_names").get<std::vector<std::string>>();
  return model;
}

void save_model(const LpcModel& model, const std::string& path, const nlohmann::json& config_echo) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file '" + path + "'");
  out << model_to_json(model, config_echo).dump(2) << "\n";
  if (!out) throw DataError("failed writing model file '" + path + "'");
}

LpcModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file parse error: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace lpc
