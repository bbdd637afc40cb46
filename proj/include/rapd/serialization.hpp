// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_SERIALIZATION_HPP_
#define RAPD_SERIALIZATION_HPP_

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rapd/instance.hpp"
#include "rapd/network.hpp"

namespace rapd {

using json = nlohmann::json;

inline json network_to_json(const Network& net) {
  json j;
  j["nodes"] = net.nodes;
  j["arcs"] = json::array();
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& a = net.arcs[i];
    const ArcParams& p = net.params[i];
    j["arcs"].push_back({{"id", a.id},
                         {"tail", a.tail},
                         {"head", a.head},
                         {"c", p.c},
                         {"kappa", p.kappa},
                         {"eta", p.eta},
                         {"M", p.M}});
  }
  j["od_pairs"] = json::array();
  for (const auto& od : net.od_pairs) {
    j["od_pairs"].push_back({{"o", od.origin},
                             {"d", od.dest},
                             {"demand_base", od.demand_base},
                             {"demand_spread", od.demand_spread}});
  }
  return j;
}

inline Network network_from_json(const json& j) {
  Network net;
  net.nodes = j.at("nodes").get<std::vector<int>>();
  for (const auto& ja : j.at("arcs")) {
    Arc a;
    a.id = ja.at("id").get<int>();
    a.tail = ja.at("tail").get<int>();
    a.head = ja.at("head").get<int>();
    ArcParams p;
    p.c = ja.at("c").get<double>();
    p.kappa = ja.at("kappa").get<double>();
    p.eta = ja.at("eta").get<double>();
    p.cong = 0.15 * p.eta;
    p.M = ja.contains("M") ? ja.at("M").get<double>() : 200.0 * p.kappa;
    if (!(p.c > 0.0) || !(p.kappa > 0.0) || !(p.eta > 0.0) || !(p.M > 0.0)) {
      throw std::invalid_argument("network_from_json: arc parameters must be positive");
    }
    net.arcs.push_back(a);
    net.params.push_back(p);
  }
  for (const auto& jo : j.at("od_pairs")) {
    OdPair od;
    od.origin = jo.at("o").get<int>();
    od.dest = jo.at("d").get<int>();
    od.demand_base = jo.at("demand_base").get<double>();
    od.demand_spread = jo.at("demand_spread").get<double>();
    net.od_pairs.push_back(od);
  }
  build_routes(net);
  return net;
}

/// Instance JSON carries the network, generation parameters, and the realized
/// scenario data. Loading prefers explicit scenarios; otherwise the scenarios
/// are regenerated from (num_scenarios, seed).
inline json instance_to_json(const Instance& inst) {
  json j = network_to_json(inst.net);
  j["num_scenarios"] = inst.num_scenarios();
  j["beta_params"] = {{"cap", {inst.beta.cap_a, inst.beta.cap_b}},
                      {"dem", {inst.beta.dem_a, inst.beta.dem_b}}};
  j["M_rule"] = "200*kappa";
  j["Q"] = "identity";
  j["seed"] = inst.seed;
  j["scenarios"] = json::array();
  for (const auto& sc : inst.scenarios) {
    j["scenarios"].push_back({{"probability", sc.probability},
                              {"capacities", sc.capacities},
                              {"demands", sc.demands}});
  }
  return j;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  inst.net = network_from_json(j);
  if (j.contains("Q") && j.at("Q").get<std::string>() != "identity") {
    throw std::invalid_argument("instance_from_json: only Q = identity is supported");
  }
  inst.Q = DenseMatrix::identity(inst.net.num_arcs());
  if (j.contains("beta_params")) {
    const auto& jb = j.at("beta_params");
    inst.beta.cap_a = jb.at("cap")[0].get<double>();
    inst.beta.cap_b = jb.at("cap")[1].get<double>();
    inst.beta.dem_a = jb.at("dem")[0].get<double>();
    inst.beta.dem_b = jb.at("dem")[1].get<double>();
  }
  inst.seed = j.value("seed", 0ULL);
  if (j.contains("scenarios") && !j.at("scenarios").empty()) {
    for (const auto& js : j.at("scenarios")) {
      ScenarioData sc;
      sc.probability = js.at("probability").get<double>();
      sc.capacities = js.at("capacities").get<RealVector>();
      sc.demands = js.at("demands").get<RealVector>();
      inst.scenarios.push_back(std::move(sc));
    }
    inst.validate();
    return inst;
  }
  if (!j.contains("num_scenarios")) {
    throw std::invalid_argument(
        "instance_from_json: need scenarios or num_scenarios");
  }
  return generate_instance(inst.net, j.at("num_scenarios").get<std::size_t>(),
                           inst.seed, inst.beta);
}

inline void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_json: cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace rapd

#endif  // RAPD_SERIALIZATION_HPP_
