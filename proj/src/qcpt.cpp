#include "qbayes/qcpt.hpp"

#include <algorithm>
#include <stdexcept>

namespace qbayes {

namespace {

std::vector<std::string> sorted_merge(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> QcptRole::classical_scope() const {
  return sorted_merge(head_vars, parent_vars);
}

std::vector<std::string> QcptRole::register_scope() const {
  return sorted_merge(head_qubits, parent_qubits);
}

bool check_generalized_qcpt(const QFactor& phi, const QcptRole& role,
                            double tol, std::string* why) {
  if (phi.classical_scope() != role.classical_scope() ||
      phi.register_names() != role.register_scope()) {
    throw std::invalid_argument("qcpt check: factor scope does not match role");
  }
  QFactor reduced = phi;
  for (const std::string& v : role.head_vars) {
    reduced = sum_out_classical(reduced, v);
  }
  for (const std::string& q : role.head_qubits) {
    reduced = sum_out_qubit(reduced, q);
  }
  const ComplexMatrix id = ComplexMatrix::identity(reduced.matrix_dim());
  for (std::size_t i = 0; i < reduced.table_size(); ++i) {
    if (!approx_equal(reduced.value(i), id, tol)) {
      if (why != nullptr) {
        std::string row;
        for (const auto& [name, val] : reduced.assignment_at(i)) {
          row += (row.empty() ? "" : ",") + name + "=" + (val ? "t" : "f");
        }
        *why = "normalization fails at parent row {" + row + "}";
      }
      return false;
    }
  }
  return true;
}

bool check_qcpt_classical_head(const QFactor& phi, const QcptRole& role,
                               double tol, std::string* why) {
  if (role.head_vars.size() != 1 || !role.head_qubits.empty()) {
    throw std::invalid_argument(
        "check_qcpt_classical_head: role head must be a single variable");
  }
  return check_generalized_qcpt(phi, role, tol, why);
}

bool check_qcpt_quantum_head(const QFactor& phi, const QcptRole& role,
                             double tol, std::string* why) {
  if (!role.head_vars.empty() || role.head_qubits.empty()) {
    throw std::invalid_argument(
        "check_qcpt_quantum_head: role head must be a register");
  }
  return check_generalized_qcpt(phi, role, tol, why);
}

}  // namespace qbayes
