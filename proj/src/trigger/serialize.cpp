#include "ects/trigger/serialize.hpp"

#include <string>

#include "ects/error.hpp"

namespace ects {
namespace {

using Json = nlohmann::json;

std::string delay_name(DelayCurve c) { return c == DelayCurve::Linear ? "linear" : "exponential"; }

DelayCurve parse_delay(const std::string& name) {
  if (name == "linear") return DelayCurve::Linear;
  if (name == "exponential") return DelayCurve::Exponential;
  throw DataError("unknown delay curve '" + name + "'");
}

Json regressor_to_json(const KernelRidgeRegressor& r) {
  return Json{{"support", r.support()},
              {"dual_weights", r.dual_weights()},
              {"bandwidth", r.bandwidth()},
              {"lambda", r.lambda()}};
}

KernelRidgeRegressor regressor_from_json(const Json& j) {
  return KernelRidgeRegressor(j.at("support").get<std::vector<std::vector<double>>>(),
                              j.at("dual_weights").get<std::vector<double>>(), j.at("bandwidth").get<double>(),
                              j.at("lambda").get<double>());
}

}  // namespace

Json cost_to_json(const CostModel& cost) {
  return Json{{"mis_matrix", cost.mis_matrix()}, {"delay", delay_name(cost.delay())}, {"alpha", cost.alpha()}};
}

CostModel cost_from_json(const Json& doc) {
  return CostModel(doc.at("mis_matrix").get<std::vector<std::vector<double>>>(),
                   parse_delay(doc.at("delay").get<std::string>()), doc.at("alpha").get<double>());
}

Json trigger_to_json(const TriggerModel& model) {
  Json params = Json::object();
  std::string variant;
  const auto& p = model.params();
  if (std::holds_alternative<AsapParams>(p)) {
    variant = "asap";
  } else if (std::holds_alternative<AlapParams>(p)) {
    variant = "alap";
  } else if (const auto* pt = std::get_if<ProbaThresholdParams>(&p)) {
    variant = "proba_threshold";
    params["theta"] = pt->theta;
  } else if (const auto* sr = std::get_if<StoppingRuleParams>(&p)) {
    variant = "stopping_rule";
    params["gamma"] = sr->gamma;
  } else if (const auto* eco = std::get_if<EconomyParams>(&p)) {
    variant = "economy";
    params["k"] = eco->k;
    params["pseudo_count"] = eco->pseudo_count;
    params["myopic"] = eco->myopic;
    params["bin_edges"] = eco->bin_edges;
    params["transitions"] = eco->transitions;
    params["confusion_counts"] = eco->confusion_counts;
    params["group_misclassification"] = eco->group_misclassification;
  } else if (const auto* ec = std::get_if<EcecParams>(&p)) {
    variant = "ecec";
    params["precision"] = ec->precision;
    params["gamma"] = ec->gamma;
  } else if (const auto* cal = std::get_if<CalimeraParams>(&p)) {
    variant = "calimera";
    params["myopic"] = cal->myopic;
    params["lambda"] = cal->lambda;
    params["bandwidth"] = cal->bandwidth;
    Json regs = Json::array();
    for (const auto& r : cal->regressors) regs.push_back(regressor_to_json(r));
    params["regressors"] = std::move(regs);
    params["realized_costs"] = cal->realized_costs;
  }
  return Json{{"variant", variant}, {"parameters", std::move(params)}, {"cost", cost_to_json(model.cost())}};
}

TriggerModel trigger_from_json(const Json& doc) {
  try {
    const auto variant = doc.at("variant").get<std::string>();
    const auto& j = doc.at("parameters");
    CostModel cost = cost_from_json(doc.at("cost"));
    if (variant == "asap") return TriggerModel(AsapParams{}, cost);
    if (variant == "alap") return TriggerModel(AlapParams{}, cost);
    if (variant == "proba_threshold") return TriggerModel(ProbaThresholdParams{j.at("theta").get<double>()}, cost);
    if (variant == "stopping_rule") {
      return TriggerModel(StoppingRuleParams{j.at("gamma").get<std::array<double, 3>>()}, cost);
    }
    if (variant == "economy") {
      EconomyParams p;
      p.k = j.at("k").get<std::size_t>();
      p.pseudo_count = j.at("pseudo_count").get<double>();
      p.myopic = j.at("myopic").get<bool>();
      p.bin_edges = j.at("bin_edges").get<decltype(p.bin_edges)>();
      p.transitions = j.at("transitions").get<decltype(p.transitions)>();
      p.confusion_counts = j.at("confusion_counts").get<decltype(p.confusion_counts)>();
      p.group_misclassification = j.at("group_misclassification").get<decltype(p.group_misclassification)>();
      return TriggerModel(std::move(p), cost);
    }
    if (variant == "ecec") {
      return TriggerModel(
          EcecParams{j.at("precision").get<std::vector<std::vector<double>>>(), j.at("gamma").get<double>()}, cost);
    }
    if (variant == "calimera") {
      CalimeraParams p;
      p.myopic = j.at("myopic").get<bool>();
      p.lambda = j.at("lambda").get<double>();
      p.bandwidth = j.at("bandwidth").get<double>();
      for (const auto& r : j.at("regressors")) p.regressors.push_back(regressor_from_json(r));
      p.realized_costs = j.at("realized_costs").get<std::vector<std::vector<double>>>();
      return TriggerModel(std::move(p), cost);
    }
    throw DataError("unknown trigger variant '" + variant + "'");
  } catch (const Json::exception& e) {
    throw DataError(std::string("trigger json: ") + e.what());
  }
}

}  // namespace ects
