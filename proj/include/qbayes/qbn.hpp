#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qbayes/qcpt.hpp"
#include "qbayes/qfactor.hpp"

namespace qbayes {

/// One node of a network: a classical variable or a quantum register.
/// Parents are referenced with the edge label: the parent variable name
/// for a classical parent, a non-empty sub-register for a quantum parent.
struct QbnNode {
  struct ParentRef {
    std::string node;
    std::vector<std::string> label;
  };

  std::string name;
  bool quantum = false;
  std::vector<std::string> qubits;  // registers only
  std::vector<ParentRef> parents;
  QFactor cpt;

  QcptRole role() const;
};

/// DAG of variable and register nodes with per-node conditional factors.
struct QbnModel {
  std::vector<QbnNode> nodes;
  std::vector<std::string> observed;  // default observation set for encoding

  const QbnNode* find(const std::string& name) const;
  std::vector<std::string> variable_names() const;  // sorted
  std::vector<std::string> qubit_names() const;     // sorted
  /// Node names in a topological order; throws if the graph is cyclic.
  std::vector<std::string> topological_order() const;
};

struct ValidationIssue {
  std::string code;  // "cycle", "partition", "qcpt", "multiplicity", ...
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Structural and numeric validation; reports every violated invariant
/// rather than stopping at the first.
ValidationReport validate(const QbnModel& model, double tol = kDefaultTol);

/// Variable elimination over a factor list. For each name in order: all
/// factors containing it are multiplied; a classical name is then summed
/// out, a qubit still present after the product is traced out (a qubit
/// shared by two factors disappears in the product itself). Names already
/// consumed by earlier products are skipped. Returns the product of the
/// surviving factors.
struct EliminationResult {
  QFactor factor;
  /// Largest entry count of any factor formed along the way.
  std::size_t max_intermediate_weight = 0;
};

EliminationResult eliminate(std::vector<QFactor> factors,
                            const std::vector<std::string>& order);

/// Greedy min-weight elimination order over `names`: the cost of a name is
/// the product of dimension weights (2 per classical variable, 4 per
/// qubit) of the merged scope of the factors containing it; ties break
/// lexicographically.
std::vector<std::string> min_weight_order(const std::vector<QFactor>& factors,
                                          std::vector<std::string> names);

/// Product of all node factors with every qubit eliminated: a factor over
/// (all variables, ∅) whose values form the joint distribution.
QFactor joint_semantics(const QbnModel& model,
                        const std::vector<std::string>* forced_order = nullptr,
                        std::size_t* max_weight = nullptr);

/// Marginal over `targets`, computed by eliminating everything else
/// without materializing the joint.
QFactor marginal(const QbnModel& model, std::vector<std::string> targets,
                 const std::vector<std::string>* forced_order = nullptr,
                 std::size_t* max_weight = nullptr);

/// Conditional distributions over targets per evidence row. Rows whose
/// evidence probability is at most 1e-12 stay unset (undefined).
struct ConditionalTable {
  std::vector<std::string> targets;   // sorted
  std::vector<std::string> evidence;  // sorted
  /// Indexed by evidence assignment; each defined row is a distribution
  /// indexed by target assignment.
  std::vector<std::optional<std::vector<double>>> rows;
};

ConditionalTable conditional(const QbnModel& model,
                             std::vector<std::string> targets,
                             std::vector<std::string> evidence);

/// Plain product of the chosen nodes' factors: the semantics of the
/// sub-network induced by them. Unknown node names throw.
QFactor subnetwork_semantics(const QbnModel& model,
                             const std::vector<std::string>& node_names);

/// Product of all node factors with no marginalization at all (dangling
/// qubits stay in scope); the reference point for partition tests.
QFactor product_of_all(const QbnModel& model);

}  // namespace qbayes
