#pragma once

#include <string>

#include <json.hpp>

#include "lpc/learning.hpp"

namespace lpc {

// Model file schema: {format, num_labels, k, num_features, ind_order,
// alpha, beta, gamma, R, interval{tau_n,a,b,s,delta,n}, classifiers,
// pattern_mode, patterns (when not the full enumeration), label_names,
// metadata{config, version}}. Loading reproduces predictions bit-exactly.
nlohmann::json model_to_json(const LpcModel& model, const nlohmann::json& config_echo);
LpcModel model_from_json(const nlohmann::json& j);

void save_model(const LpcModel& model, const std::string& path, const nlohmann::json& config_echo);
LpcModel load_model(const std::string& path);

}  // namespace lpc
