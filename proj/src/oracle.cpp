#include "qbayes/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qbayes/instruments.hpp"

namespace qbayes {

namespace {

struct Branch {
  Assignment assignment;
  // Unnormalized joint state over the live qubits (canonical sorted
  // order). The branch probability is its trace once everything has been
  // consumed.
  ComplexMatrix state = ComplexMatrix::scalar(Complex(1.0, 0.0));
  std::vector<std::string> live;  // sorted qubit names
};

// rho lives on (rest ⊗ in_block); applies K to the in_block part of every
// rest-indexed block: result lives on (rest ⊗ out_block).
ComplexMatrix apply_kraus_blockwise(const ComplexMatrix& rho,
                                    std::size_t rest_dim, const KrausMap& map) {
  const std::size_t din = map.in_dim();
  const std::size_t dout = map.out_dim();
  ComplexMatrix out(rest_dim * dout);
  for (const RectMatrix& k : map.operators) {
    for (std::size_t rb = 0; rb < rest_dim; ++rb) {
      for (std::size_t cb = 0; cb < rest_dim; ++cb) {
        for (std::size_t a = 0; a < dout; ++a) {
          for (std::size_t b = 0; b < dout; ++b) {
            Complex acc(0.0, 0.0);
            for (std::size_t i = 0; i < din; ++i) {
              for (std::size_t j = 0; j < din; ++j) {
                acc += k.at(a, i) * rho.at(rb * din + i, cb * din + j) *
                       std::conj(k.at(b, j));
              }
            }
            out.at(rb * dout + a, cb * dout + b) += acc;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

SimTrace simulate_joint(const QbnModel& model) {
  const ValidationReport report = validate(model);
  if (!report.ok()) {
    throw std::invalid_argument("simulate_joint: invalid model: " +
                                report.issues.front().message);
  }
  const std::vector<std::string> variables = model.variable_names();
  const std::vector<std::string> qubits = model.qubit_names();
  if (variables.size() > 10 || qubits.size() > 6) {
    throw std::invalid_argument("simulate_joint: model exceeds size cap");
  }

  std::vector<Branch> branches(1);
  for (const std::string& node_name : model.topological_order()) {
    const QbnNode& node = *model.find(node_name);
    const InstrumentFamily family = instrument_from_qcpt(node.cpt, node.role());
    const std::size_t n_out = family.outcome_vars.size();

    std::vector<Branch> next;
    next.reserve(branches.size() << n_out);
    for (const Branch& branch : branches) {
      std::size_t parent_index = 0;
      for (std::size_t i = 0; i < family.parent_vars.size(); ++i) {
        auto it = branch.assignment.find(family.parent_vars[i]);
        if (it == branch.assignment.end()) {
          throw std::logic_error("oracle: parent evaluated after child");
        }
        const std::size_t bit = it->second ? 0 : 1;
        parent_index |= bit << (family.parent_vars.size() - 1 - i);
      }
      const Instrument& inst = family.members[parent_index];

      // Move the consumed qubits to the least significant positions, in
      // the family's input order.
      std::vector<std::string> rest;
      for (const std::string& q : branch.live) {
        if (std::find(family.in_qubits.begin(), family.in_qubits.end(), q) ==
            family.in_qubits.end()) {
          rest.push_back(q);
        }
      }
      std::vector<std::string> permuted = rest;
      permuted.insert(permuted.end(), family.in_qubits.begin(),
                      family.in_qubits.end());
      if (permuted.size() != branch.live.size()) {
        throw std::logic_error("oracle: consumed qubit not live");
      }
      const ComplexMatrix arranged =
          branch.live.empty()
              ? branch.state
              : reorder_qubits(branch.state, branch.live, permuted);
      const std::size_t rest_dim = std::size_t{1} << rest.size();

      std::vector<std::string> new_live = rest;
      new_live.insert(new_live.end(), family.out_qubits.begin(),
                      family.out_qubits.end());
      std::vector<std::string> new_live_sorted = new_live;
      std::sort(new_live_sorted.begin(), new_live_sorted.end());

      for (std::size_t outcome = 0; outcome < inst.branches.size();
           ++outcome) {
        Branch nb;
        nb.assignment = branch.assignment;
        for (std::size_t i = 0; i < n_out; ++i) {
          const std::size_t bit = (outcome >> (n_out - 1 - i)) & 1;
          nb.assignment[family.outcome_vars[i]] = (bit == 0);
        }
        ComplexMatrix mapped =
            apply_kraus_blockwise(arranged, rest_dim, inst.branches[outcome]);
        nb.state = new_live.empty() || new_live == new_live_sorted
                       ? std::move(mapped)
                       : reorder_qubits(mapped, new_live, new_live_sorted);
        nb.live = new_live_sorted;
        next.push_back(std::move(nb));
      }
    }
    branches = std::move(next);
  }

  SimTrace trace;
  trace.variables = variables;
  trace.probabilities.assign(std::size_t{1} << variables.size(), 0.0);
  for (const Branch& branch : branches) {
    // Dangling qubits are discarded by the full trace.
    const double p = branch.state.trace().real();
    std::size_t index = 0;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const std::size_t bit = branch.assignment.at(variables[i]) ? 0 : 1;
      index |= bit << (variables.size() - 1 - i);
    }
    trace.probabilities[index] += p;
  }
  return trace;
}

}  // namespace qbayes
