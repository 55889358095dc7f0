#include "qbayes/qbn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qbayes {

QcptRole QbnNode::role() const {
  QcptRole r;
  if (quantum) {
    r.head_qubits = qubits;
  } else {
    r.head_vars = {name};
  }
  for (const ParentRef& p : parents) {
    for (const std::string& label : p.label) {
      // Qubit labels name qubits; a classical label names the parent itself.
      if (label == p.node) {
        r.parent_vars.push_back(label);
      } else {
        r.parent_qubits.push_back(label);
      }
    }
  }
  std::sort(r.head_qubits.begin(), r.head_qubits.end());
  std::sort(r.parent_vars.begin(), r.parent_vars.end());
  std::sort(r.parent_qubits.begin(), r.parent_qubits.end());
  return r;
}

const QbnNode* QbnModel::find(const std::string& name) const {
  for (const QbnNode& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

std::vector<std::string> QbnModel::variable_names() const {
  std::vector<std::string> out;
  for (const QbnNode& n : nodes) {
    if (!n.quantum) out.push_back(n.name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> QbnModel::qubit_names() const {
  std::vector<std::string> out;
  for (const QbnNode& n : nodes) {
    out.insert(out.end(), n.qubits.begin(), n.qubits.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> QbnModel::topological_order() const {
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::vector<std::string>> children;
  for (const QbnNode& n : nodes) indegree[n.name] = 0;
  for (const QbnNode& n : nodes) {
    for (const QbnNode::ParentRef& p : n.parents) {
      children[p.node].push_back(n.name);
      ++indegree[n.name];
    }
  }
  std::vector<std::string> ready;
  for (const auto& [name, deg] : indegree) {
    if (deg == 0) ready.push_back(name);
  }
  std::sort(ready.begin(), ready.end());
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string next = ready.front();
    ready.erase(ready.begin());
    order.push_back(next);
    for (const std::string& c : children[next]) {
      if (--indegree[c] == 0) {
        ready.insert(std::upper_bound(ready.begin(), ready.end(), c), c);
      }
    }
  }
  if (order.size() != nodes.size()) {
    throw std::invalid_argument("model graph has a cycle");
  }
  return order;
}

ValidationReport validate(const QbnModel& model, double tol) {
  ValidationReport report;
  auto issue = [&report](std::string code, std::string message) {
    report.issues.push_back({std::move(code), std::move(message)});
  };

  std::set<std::string> node_names;
  std::set<std::string> all_qubits;
  for (const QbnNode& n : model.nodes) {
    if (!node_names.insert(n.name).second) {
      issue("structure", "duplicate node name: " + n.name);
    }
    if (n.quantum && n.qubits.empty()) {
      issue("structure", "register node without qubits: " + n.name);
    }
    if (!n.quantum && !n.qubits.empty()) {
      issue("structure", "classical node with qubits: " + n.name);
    }
    for (const std::string& q : n.qubits) {
      if (!all_qubits.insert(q).second) {
        issue("structure", "qubit in two registers: " + q);
      }
    }
  }
  for (const QbnNode& n : model.nodes) {
    if (all_qubits.count(n.name)) {
      issue("structure", "name used as both node and qubit: " + n.name);
    }
  }

  // Edge labels and the register partition condition.
  std::map<std::string, std::set<std::string>> consumed_qubits;
  for (const QbnNode& n : model.nodes) {
    for (const QbnNode::ParentRef& p : n.parents) {
      const QbnNode* parent = model.find(p.node);
      if (parent == nullptr) {
        issue("structure", n.name + ": unknown parent node " + p.node);
        continue;
      }
      if (!parent->quantum) {
        if (p.label != std::vector<std::string>{p.node}) {
          issue("partition", n.name + ": out-edge of variable " + p.node +
                                 " must be labelled by the variable itself");
        }
      } else {
        if (p.label.empty()) {
          issue("partition", n.name + ": empty register label from " + p.node);
        }
        for (const std::string& q : p.label) {
          if (std::find(parent->qubits.begin(), parent->qubits.end(), q) ==
              parent->qubits.end()) {
            issue("partition", n.name + ": label qubit " + q +
                                   " is not in register " + p.node);
          } else if (!consumed_qubits[p.node].insert(q).second) {
            issue("partition", "qubit " + q + " of register " + p.node +
                                   " consumed by two edges");
          }
        }
      }
    }
  }

  // Acyclicity.
  try {
    (void)model.topological_order();
  } catch (const std::exception&) {
    issue("cycle", "edge relation has a directed cycle");
  }

  // Per-node conditional factor checks.
  for (const QbnNode& n : model.nodes) {
    const QcptRole role = n.role();
    try {
      if (n.cpt.classical_scope() != role.classical_scope() ||
          n.cpt.register_names() != role.register_scope()) {
        issue("qcpt", "node " + n.name + ": factor scope does not match role");
        continue;
      }
      if (!factor_positive(n.cpt, tol)) {
        issue("qcpt", "node " + n.name + ": factor has a non-positive value");
      }
      std::string why;
      if (!check_generalized_qcpt(n.cpt, role, tol, &why)) {
        issue("qcpt", "node " + n.name + ": " + why);
      }
    } catch (const std::exception& e) {
      issue("qcpt", "node " + n.name + ": " + e.what());
    }
  }

  // Every qubit may appear in at most two node scopes.
  std::map<std::string, int> scope_count;
  for (const QbnNode& n : model.nodes) {
    for (const std::string& q : n.cpt.register_names()) ++scope_count[q];
  }
  for (const auto& [q, count] : scope_count) {
    if (count > 2) {
      issue("multiplicity",
            "qubit " + q + " appears in " + std::to_string(count) + " scopes");
    }
  }

  for (const std::string& obs : model.observed) {
    const QbnNode* n = model.find(obs);
    if (n == nullptr || n->quantum) {
      issue("structure", "observed name is not a classical node: " + obs);
    }
  }
  return report;
}

EliminationResult eliminate(std::vector<QFactor> factors,
                            const std::vector<std::string>& order) {
  EliminationResult result;
  for (const QFactor& f : factors) {
    result.max_intermediate_weight =
        std::max(result.max_intermediate_weight, f.weight());
  }
  for (const std::string& name : order) {
    bool known = false;
    for (const QFactor& f : factors) {
      if (f.scope_contains(name)) known = true;
    }
    if (!known) {
      // Qubits contracted by an earlier product vanish before their turn.
      continue;
    }
    std::vector<QFactor> touching;
    std::vector<QFactor> rest;
    bool is_qubit = false;
    for (QFactor& f : factors) {
      if (f.scope_contains(name)) {
        is_qubit = is_qubit || f.has_qubit(name);
        touching.push_back(std::move(f));
      } else {
        rest.push_back(std::move(f));
      }
    }
    if (is_qubit && touching.size() > 2) {
      throw std::invalid_argument("eliminate: qubit " + name +
                                  " appears in more than two factors");
    }
    QFactor merged = std::move(touching.front());
    for (std::size_t i = 1; i < touching.size(); ++i) {
      merged = product(merged, touching[i]);
      result.max_intermediate_weight =
          std::max(result.max_intermediate_weight, merged.weight());
    }
    if (merged.scope_contains(name)) {
      merged = sum_out(merged, name);
    }
    rest.push_back(std::move(merged));
    factors = std::move(rest);
  }
  QFactor total = QFactor::trivial(1.0);
  for (const QFactor& f : factors) {
    total = product(total, f);
    result.max_intermediate_weight =
        std::max(result.max_intermediate_weight, total.weight());
  }
  result.factor = std::move(total);
  return result;
}

std::vector<std::string> min_weight_order(const std::vector<QFactor>& factors,
                                          std::vector<std::string> names) {
  // Scopes as (name, is_qubit) sets; simulated symbolically.
  using Scope = std::set<std::pair<std::string, bool>>;
  std::vector<Scope> scopes;
  for (const QFactor& f : factors) {
    Scope s;
    for (const std::string& v : f.classical_scope()) s.insert({v, false});
    for (const std::string& q : f.register_names()) s.insert({q, true});
    scopes.push_back(std::move(s));
  }
  std::sort(names.begin(), names.end());
  std::vector<std::string> order;
  while (!names.empty()) {
    double best_cost = 0.0;
    std::size_t best = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      Scope merged;
      bool present = false;
      for (const Scope& s : scopes) {
        const bool touches = s.count({names[i], false}) != 0 ||
                             s.count({names[i], true}) != 0;
        if (touches) {
          present = true;
          merged.insert(s.begin(), s.end());
        }
      }
      if (!present) {
        // Already consumed; eliminate for free, first in name order.
        best = i;
        best_cost = 0.0;
        break;
      }
      double cost = 1.0;
      for (const auto& [nm, qb] : merged) cost *= qb ? 4.0 : 2.0;
      if (best == names.size() || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    const std::string chosen = names[best];
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(best));
    order.push_back(chosen);
    Scope merged;
    std::vector<Scope> rest;
    for (Scope& s : scopes) {
      if (s.count({chosen, false}) != 0 || s.count({chosen, true}) != 0) {
        merged.insert(s.begin(), s.end());
      } else {
        rest.push_back(std::move(s));
      }
    }
    merged.erase({chosen, false});
    merged.erase({chosen, true});
    rest.push_back(std::move(merged));
    scopes = std::move(rest);
  }
  return order;
}

namespace {

std::vector<QFactor> all_cpts(const QbnModel& model) {
  std::vector<QFactor> out;
  out.reserve(model.nodes.size());
  for (const QbnNode& n : model.nodes) out.push_back(n.cpt);
  return out;
}

void require_valid(const QbnModel& model) {
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    throw std::invalid_argument("invalid model: " +
                                report.issues.front().message);
  }
}

}  // namespace

QFactor joint_semantics(const QbnModel& model,
                        const std::vector<std::string>* forced_order,
                        std::size_t* max_weight) {
  require_valid(model);
  std::vector<QFactor> factors = all_cpts(model);
  std::vector<std::string> order =
      forced_order != nullptr ? *forced_order
                              : min_weight_order(factors, model.qubit_names());
  EliminationResult r = eliminate(std::move(factors), order);
  if (!r.factor.register_names().empty()) {
    throw std::logic_error("joint_semantics: register not fully eliminated");
  }
  if (max_weight != nullptr) *max_weight = r.max_intermediate_weight;
  return std::move(r.factor);
}

QFactor marginal(const QbnModel& model, std::vector<std::string> targets,
                 const std::vector<std::string>* forced_order,
                 std::size_t* max_weight) {
  require_valid(model);
  std::sort(targets.begin(), targets.end());
  const std::vector<std::string> vars = model.variable_names();
  for (const std::string& t : targets) {
    if (!std::binary_search(vars.begin(), vars.end(), t)) {
      throw std::invalid_argument("marginal: unknown target " + t);
    }
  }
  std::vector<std::string> hidden;
  std::set_difference(vars.begin(), vars.end(), targets.begin(), targets.end(),
                      std::back_inserter(hidden));
  const std::vector<std::string> qubits = model.qubit_names();
  hidden.insert(hidden.end(), qubits.begin(), qubits.end());

  std::vector<QFactor> factors = all_cpts(model);
  std::vector<std::string> order = forced_order != nullptr
                                       ? *forced_order
                                       : min_weight_order(factors, hidden);
  EliminationResult r = eliminate(std::move(factors), order);
  if (max_weight != nullptr) *max_weight = r.max_intermediate_weight;
  return std::move(r.factor);
}

ConditionalTable conditional(const QbnModel& model,
                             std::vector<std::string> targets,
                             std::vector<std::string> evidence) {
  std::sort(targets.begin(), targets.end());
  std::sort(evidence.begin(), evidence.end());
  for (const std::string& t : targets) {
    if (std::binary_search(evidence.begin(), evidence.end(), t)) {
      throw std::invalid_argument("conditional: overlapping target/evidence " +
                                  t);
    }
  }
  std::vector<std::string> both = targets;
  both.insert(both.end(), evidence.begin(), evidence.end());
  const QFactor joint_te = marginal(model, both);

  ConditionalTable table;
  table.targets = targets;
  table.evidence = evidence;
  const std::size_t n_e = evidence.size();
  const std::size_t n_t = targets.size();
  table.rows.resize(std::size_t{1} << n_e);
  for (std::size_t e = 0; e < (std::size_t{1} << n_e); ++e) {
    Assignment assign;
    for (std::size_t i = 0; i < n_e; ++i) {
      assign[evidence[i]] = ((e >> (n_e - 1 - i)) & 1) == 0;
    }
    std::vector<double> row(std::size_t{1} << n_t, 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < (std::size_t{1} << n_t); ++t) {
      for (std::size_t i = 0; i < n_t; ++i) {
        assign[targets[i]] = ((t >> (n_t - 1 - i)) & 1) == 0;
      }
      const double p = joint_te.value(assign).at(0, 0).real();
      row[t] = p;
      total += p;
    }
    if (total > 1e-12) {
      for (double& p : row) p /= total;
      table.rows[e] = std::move(row);
    }
  }
  return table;
}

QFactor subnetwork_semantics(const QbnModel& model,
                             const std::vector<std::string>& node_names) {
  QFactor total = QFactor::trivial(1.0);
  for (const std::string& name : node_names) {
    const QbnNode* n = model.find(name);
    if (n == nullptr) {
      throw std::invalid_argument("subnetwork_semantics: unknown node " +
                                  name);
    }
    total = product(total, n->cpt);
  }
  return total;
}

QFactor product_of_all(const QbnModel& model) {
  QFactor total = QFactor::trivial(1.0);
  for (const QbnNode& n : model.nodes) total = product(total, n.cpt);
  return total;
}

}  // namespace qbayes
