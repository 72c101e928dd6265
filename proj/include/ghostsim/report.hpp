// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_REPORT_HPP_
#define GHOSTSIM_REPORT_HPP_

#include <sstream>
#include <string>

#include <json.hpp>

#include "ghostsim/harness.hpp"

namespace ghostsim {

using json = nlohmann::ordered_json;

inline json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

/// [{weight, path, vec: [x, y, z], ghost: phase | null}, ...]
inline json to_json(const WeightedStates& p) {
  json out = json::array();
  for (const auto& e : p) {
    json entry;
    entry["weight"] = e.weight;
    entry["path"] = index(e.state.path);
    entry["vec"] = to_json(e.state.real_vec.vec());
    entry["ghost"] = e.state.companion.is_ghost() ? json(e.state.companion.phase()) : json(nullptr);
    out.push_back(entry);
  }
  return out;
}

inline WeightedStates weighted_states_from_json(const json& j) {
  std::vector<WeightedState> entries;
  for (const auto& e : j) {
    const auto& v = e.at("vec");
    OnticState s{path_from_index(e.at("path").get<int>()),
                 UnitVec3(v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()),
                 e.at("ghost").is_null() ? Companion::empty() : Companion::ghost(e.at("ghost").get<double>())};
    entries.push_back({e.at("weight").get<double>(), s});
  }
  return WeightedStates(std::move(entries));
}

inline json to_json(const ClassId& id) {
  json out;
  out["label"] = to_json(id.label.n.vec());
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GenericParams>) {
          out["kind"] = "generic";
          out["alpha"] = p.alpha;
          out["beta"] = p.beta;
        } else if constexpr (std::is_same_v<P, PoleGhostParams>) {
          out["kind"] = "pole-ghost";
          out["gamma"] = p.gamma;
        } else {
          out["kind"] = "pole-empty";
          out["vec"] = to_json(p.n.vec());
        }
      },
      id.params);
  return out;
}

inline json to_json(const BranchTree& tree) {
  json out;
  out["selection_probability"] = tree.selection_probability;
  json leaves = json::array();
  for (const auto& leaf : tree.leaves) {
    json node;
    node["history"] = to_string(leaf.history);
    node["probability"] = leaf.probability;
    node["class"] = leaf.class_id ? to_json(*leaf.class_id) : json(nullptr);
    node["epistemic"] = to_json(leaf.epistemic.vec());
    node["states"] = to_json(leaf.state);
    leaves.push_back(node);
  }
  out["leaves"] = leaves;
  return out;
}

inline std::string branch_tree_csv(const BranchTree& tree) {
  std::ostringstream os;
  os.precision(17);
  os << "history,probability,weight,path,x,y,z,ghost\n";
  for (const auto& leaf : tree.leaves) {
    for (const auto& e : leaf.state) {
      const Vec3 v = e.state.real_vec.vec();
      os << '"' << to_string(leaf.history) << "\"," << leaf.probability << ',' << e.weight << ','
         << index(e.state.path) << ',' << v.x << ',' << v.y << ',' << v.z << ',';
      if (e.state.companion.is_ghost()) os << e.state.companion.phase();
      os << '\n';
    }
  }
  return os.str();
}

inline json to_json(const SampleCounts& s) {
  json out;
  out["shots"] = s.shots;
  out["accepted"] = s.accepted;
  out["discarded"] = s.discarded();
  json rows = json::array();
  for (const auto& [h, n] : s.counts) rows.push_back({{"history", to_string(h)}, {"counts", n}});
  out["rows"] = rows;
  return out;
}

inline std::string sample_counts_csv(const SampleCounts& s) {
  std::ostringstream os;
  os << "history,counts\n";
  for (const auto& [h, n] : s.counts) os << '"' << to_string(h) << "\"," << n << '\n';
  return os.str();
}

inline json to_json(const ProbabilityTable& t) {
  json out;
  out["selection_probability"] = t.selection_probability;
  json rows = json::array();
  for (const auto& [h, p] : t.probability) rows.push_back({{"history", to_string(h)}, {"probability", p}});
  out["rows"] = rows;
  return out;
}

/// Rows carry {history, exact_p, class_p, quantum_p, counts, sigma, verdict}.
inline json to_json(const RunReport& r) {
  json out;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["history"] = to_string(row.history);
    j["exact_p"] = row.exact_p;
    j["class_p"] = row.class_p;
    j["quantum_p"] = row.quantum_p;
    j["counts"] = row.counts ? json(*row.counts) : json(nullptr);
    j["sigma"] = row.sigma ? json(*row.sigma) : json(nullptr);
    j["verdict"] = row.pass ? "PASS" : "FAIL";
    rows.push_back(j);
  }
  out["rows"] = rows;
  out["selection"] = {{"exact_p", r.exact_selection}, {"class_p", r.class_selection}, {"quantum_p", r.quantum_selection}};
  out["shots"] = r.shots ? json(*r.shots) : json(nullptr);
  out["accepted"] = r.accepted ? json(*r.accepted) : json(nullptr);
  if (r.shots && *r.shots > 0) {
    out["discarded_fraction"] = 1.0 - static_cast<double>(*r.accepted) / static_cast<double>(*r.shots);
  }
  out["verdict"] = r.pass ? "PASS" : "FAIL";
  if (!r.pass) out["failure"] = r.failure;
  return out;
}

inline std::string run_report_csv(const RunReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "history,exact_p,class_p,quantum_p,counts,sigma,verdict\n";
  for (const auto& row : r.rows) {
    os << '"' << to_string(row.history) << "\"," << row.exact_p << ',' << row.class_p << ',' << row.quantum_p << ',';
    if (row.counts) os << *row.counts;
    os << ',';
    if (row.sigma) os << *row.sigma;
    os << ',' << (row.pass ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

}  // namespace ghostsim

#endif  // GHOSTSIM_REPORT_HPP_
