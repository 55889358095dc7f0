#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qbayes/complex_matrix.hpp"

namespace qbayes {

/// Assignment of binary classical variables; true means value "t".
using Assignment = std::map<std::string, bool>;

/// One basis element e^{ab} of L(H_q): a is the row bit, b the column bit.
struct BasisSelector {
  int row_bit = 0;
  int col_bit = 0;
};

/// One selector per qubit of a factor's register.
using BasisMultiIndex = std::map<std::string, BasisSelector>;

/// Function from classical assignments to positive operators on the
/// register's Hilbert space. Classical scope and register are kept in
/// ascending lexicographic order, so equal factors have equal layouts.
///
/// Table index encoding: the first classical variable (lexicographically)
/// is the most significant bit, value "t" encodes as 0 and "f" as 1.
class QFactor {
 public:
  /// Factor over (∅,∅) holding a single scalar.
  static QFactor trivial(double value = 1.0);

  QFactor() : QFactor(trivial()) {}

  /// Scopes may arrive in any order; the table rows and matrix indices are
  /// permuted into canonical (sorted) order. `table` is indexed by the
  /// given variable order (first given = most significant) and matrices by
  /// the given qubit order.
  QFactor(std::vector<std::string> classical, std::vector<std::string> qubits,
          std::vector<ComplexMatrix> table);

  const std::vector<std::string>& classical_scope() const {
    return classical_;
  }
  const QubitOrder& register_order() const { return register_; }
  const std::vector<std::string>& register_names() const {
    return register_.names();
  }

  bool has_classical(const std::string& name) const;
  bool has_qubit(const std::string& name) const;
  bool scope_contains(const std::string& name) const {
    return has_classical(name) || has_qubit(name);
  }

  std::size_t table_size() const { return table_.size(); }
  std::size_t matrix_dim() const { return register_.dim(); }

  const ComplexMatrix& value(std::size_t index) const { return table_[index]; }
  ComplexMatrix& value(std::size_t index) { return table_[index]; }
  /// Looks up by named assignment; it must cover the classical scope
  /// (extra variables are ignored).
  const ComplexMatrix& value(const Assignment& assignment) const;

  std::size_t assignment_index(const Assignment& assignment) const;
  Assignment assignment_at(std::size_t index) const;

  /// 2^|classical| * 4^|register|: the number of stored complex entries,
  /// used as the size measure for elimination cost accounting.
  std::size_t weight() const;

 private:
  std::vector<std::string> classical_;
  QubitOrder register_;
  std::vector<ComplexMatrix> table_;
};

/// The scalar at position e of phi(x). The assignment must cover the
/// classical scope and the multi-index must cover the register.
Complex coefficient(const QFactor& phi, const Assignment& x,
                    const BasisMultiIndex& e);

/// Factor product: classical scopes unite (shared variables match on
/// value), registers combine by symmetric difference, shared qubits are
/// contracted over their four basis elements.
QFactor product(const QFactor& a, const QFactor& b);

/// Entrywise sum over the two values of a classical variable.
QFactor sum_out_classical(const QFactor& phi, const std::string& variable);

/// Partial trace over one register qubit.
QFactor sum_out_qubit(const QFactor& phi, const std::string& qubit);

/// Dispatches on which scope the name belongs to.
QFactor sum_out(const QFactor& phi, const std::string& name);

/// Scope equality as sets plus entrywise comparison in canonical layout
/// (absolute tolerance below magnitude 1, relative above).
bool equal_within(const QFactor& a, const QFactor& b, double tol = 1e-10);

/// True iff every table matrix passes check_positive.
bool factor_positive(const QFactor& phi, double tol = kDefaultTol);

}  // namespace qbayes
