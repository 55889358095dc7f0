#pragma once

#include <string>
#include <vector>

#include "qbayes/qbn.hpp"

namespace qbayes {

/// Joint distribution produced by the brute-force topological-order
/// simulation. Probabilities are indexed like a factor table over the
/// sorted variable names (first variable most significant, t -> 0).
struct SimTrace {
  std::vector<std::string> variables;
  std::vector<double> probabilities;
};

/// Reference semantics: walk the nodes in topological order, branching
/// over classical outcomes and applying each node's instrument (obtained
/// through the Choi inverse) to the accumulated joint state. Exponential
/// in the variable count; capped at 10 variables and 6 qubits. Shares no
/// code with the factor product, so agreement with joint_semantics is
/// evidence rather than tautology.
SimTrace simulate_joint(const QbnModel& model);

}  // namespace qbayes
