#pragma once

#include <string>
#include <vector>

#include "qbayes/qfactor.hpp"

namespace qbayes {

/// Head and conditioning scopes of a conditional factor. The general form
/// allows several head variables together with a head register; the two
/// common cases are a single head variable (a measurement-like node) and a
/// head register with no head variables (a channel-like node).
struct QcptRole {
  std::vector<std::string> head_vars;
  std::vector<std::string> head_qubits;
  std::vector<std::string> parent_vars;
  std::vector<std::string> parent_qubits;

  std::vector<std::string> classical_scope() const;  // sorted head ∪ parents
  std::vector<std::string> register_scope() const;
};

/// For every parent assignment y: tracing the head register out of
/// (Σ_{head vars} φ)(y) must give the identity on the parent register.
/// Both checks below are special cases of this one.
bool check_generalized_qcpt(const QFactor& phi, const QcptRole& role,
                            double tol = kDefaultTol,
                            std::string* why = nullptr);

/// Head is a single classical variable: Σ_X φ must be the identity on the
/// register for every parent row (the plain CPT condition when the
/// register is empty).
bool check_qcpt_classical_head(const QFactor& phi, const QcptRole& role,
                               double tol = kDefaultTol,
                               std::string* why = nullptr);

/// Head is a register: its partial trace must be the identity on the
/// parent register for every classical assignment (the Choi-state
/// condition when there are no classical variables).
bool check_qcpt_quantum_head(const QFactor& phi, const QcptRole& role,
                             double tol = kDefaultTol,
                             std::string* why = nullptr);

}  // namespace qbayes
