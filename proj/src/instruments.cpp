#include "qbayes/instruments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbayes {

std::size_t KrausMap::in_dim() const {
  return operators.empty() ? 0 : operators.front().cols();
}

std::size_t KrausMap::out_dim() const {
  return operators.empty() ? 0 : operators.front().rows();
}

ComplexMatrix KrausMap::completeness_term() const {
  const std::size_t din = in_dim();
  ComplexMatrix acc(din);
  for (const RectMatrix& k : operators) {
    for (std::size_t i = 0; i < din; ++i) {
      for (std::size_t j = 0; j < din; ++j) {
        Complex v(0.0, 0.0);
        for (std::size_t a = 0; a < k.rows(); ++a) {
          v += std::conj(k.at(a, i)) * k.at(a, j);
        }
        acc.at(i, j) += v;
      }
    }
  }
  return acc;
}

ComplexMatrix KrausMap::apply(const ComplexMatrix& rho) const {
  const std::size_t din = in_dim();
  const std::size_t dout = out_dim();
  if (rho.dim() != din) {
    throw std::invalid_argument("KrausMap::apply: dimension mismatch");
  }
  ComplexMatrix out(dout);
  for (const RectMatrix& k : operators) {
    for (std::size_t a = 0; a < dout; ++a) {
      for (std::size_t b = 0; b < dout; ++b) {
        Complex v(0.0, 0.0);
        for (std::size_t i = 0; i < din; ++i) {
          for (std::size_t j = 0; j < din; ++j) {
            v += k.at(a, i) * rho.at(i, j) * std::conj(k.at(b, j));
          }
        }
        out.at(a, b) += v;
      }
    }
  }
  return out;
}

bool Instrument::is_trace_preserving(double tol) const {
  if (branches.empty()) return false;
  const std::size_t din = branches.front().in_dim();
  ComplexMatrix acc(din);
  for (const KrausMap& b : branches) {
    if (b.in_dim() != din) return false;
    acc = acc + b.completeness_term();
  }
  return approx_equal(acc, ComplexMatrix::identity(din), tol);
}

QcptRole InstrumentFamily::role() const {
  QcptRole r;
  r.head_vars = outcome_vars;
  r.head_qubits = out_qubits;
  r.parent_vars = parent_vars;
  r.parent_qubits = in_qubits;
  std::sort(r.head_vars.begin(), r.head_vars.end());
  std::sort(r.head_qubits.begin(), r.head_qubits.end());
  std::sort(r.parent_vars.begin(), r.parent_vars.end());
  std::sort(r.parent_qubits.begin(), r.parent_qubits.end());
  return r;
}

std::vector<OutcomeResult> apply_instrument(const Instrument& instrument,
                                            const ComplexMatrix& rho,
                                            double tol) {
  if (instrument.branches.empty()) {
    throw std::invalid_argument("apply_instrument: no branches");
  }
  if (rho.dim() != instrument.branches.front().in_dim()) {
    throw std::invalid_argument("apply_instrument: dimension mismatch");
  }
  if (!check_positive(rho, tol) ||
      std::abs(rho.trace() - Complex(1.0, 0.0)) > std::max(tol, 1e-9)) {
    throw std::invalid_argument("apply_instrument: input is not a state");
  }
  std::vector<OutcomeResult> results;
  results.reserve(instrument.branches.size());
  for (const KrausMap& branch : instrument.branches) {
    ComplexMatrix mapped = branch.apply(rho);
    OutcomeResult r;
    r.probability = mapped.trace().real();
    if (r.probability > 1e-12) {
      r.post_state = mapped.scaled(Complex(1.0 / r.probability, 0.0));
    }
    results.push_back(std::move(r));
  }
  return results;
}

namespace {

std::vector<std::string> sorted_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("instrument scopes overlap");
  }
  return out;
}

// Extract the sub-index over `subset` (sorted) out of an index over
// `scope` (sorted superset).
std::size_t subindex(std::size_t index, const std::vector<std::string>& scope,
                     const std::vector<std::string>& subset) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const auto it = std::lower_bound(scope.begin(), scope.end(), subset[i]);
    const std::size_t pos = static_cast<std::size_t>(it - scope.begin());
    const std::size_t bit = (index >> (scope.size() - 1 - pos)) & 1;
    out |= bit << (subset.size() - 1 - i);
  }
  return out;
}

}  // namespace

QFactor choi_from_instrument(const InstrumentFamily& family) {
  const std::vector<std::string> outcome = sorted_names(family.outcome_vars);
  const std::vector<std::string> parents = sorted_names(family.parent_vars);
  const std::vector<std::string> in_q = sorted_names(family.in_qubits);
  const std::vector<std::string> out_q = sorted_names(family.out_qubits);
  const std::vector<std::string> classical = sorted_union(outcome, parents);
  const std::vector<std::string> reg = sorted_union(in_q, out_q);

  const std::size_t din = std::size_t{1} << in_q.size();
  const std::size_t dout = std::size_t{1} << out_q.size();
  if (family.members.size() != (std::size_t{1} << parents.size())) {
    throw std::invalid_argument("instrument family: wrong member count");
  }

  // Matrix layout while building: input qubits first (most significant),
  // then output qubits; permuted to the canonical register order at the end.
  std::vector<std::string> build_order = in_q;
  build_order.insert(build_order.end(), out_q.begin(), out_q.end());

  std::vector<ComplexMatrix> table;
  table.reserve(std::size_t{1} << classical.size());
  for (std::size_t idx = 0; idx < (std::size_t{1} << classical.size());
       ++idx) {
    const std::size_t y = subindex(idx, classical, parents);
    const std::size_t x = subindex(idx, classical, outcome);
    const Instrument& inst = family.members[y];
    if (inst.branches.size() != (std::size_t{1} << outcome.size())) {
      throw std::invalid_argument("instrument: wrong branch count");
    }
    const KrausMap& branch = inst.branches[x];
    if (branch.in_dim() != din || branch.out_dim() != dout) {
      throw std::invalid_argument("instrument family: inconsistent shapes");
    }
    ComplexMatrix choi(din * dout);
    for (const RectMatrix& k : branch.operators) {
      for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t a = 0; a < dout; ++a) {
          for (std::size_t j = 0; j < din; ++j) {
            for (std::size_t b = 0; b < dout; ++b) {
              choi.at(i * dout + a, j * dout + b) +=
                  k.at(a, i) * std::conj(k.at(b, j));
            }
          }
        }
      }
    }
    table.push_back(reg.empty() ? choi
                                : reorder_qubits(choi, build_order, reg));
  }
  return QFactor(classical, reg, std::move(table));
}

InstrumentFamily instrument_from_qcpt(const QFactor& phi, const QcptRole& role,
                                      double tol) {
  std::string why;
  if (!check_generalized_qcpt(phi, role, tol, &why)) {
    throw std::invalid_argument("instrument_from_qcpt: " + why);
  }
  InstrumentFamily family;
  family.outcome_vars = sorted_names(role.head_vars);
  family.parent_vars = sorted_names(role.parent_vars);
  family.in_qubits = sorted_names(role.parent_qubits);
  family.out_qubits = sorted_names(role.head_qubits);

  const std::vector<std::string>& classical = phi.classical_scope();
  const std::vector<std::string>& reg = phi.register_names();
  std::vector<std::string> build_order = family.in_qubits;
  build_order.insert(build_order.end(), family.out_qubits.begin(),
                     family.out_qubits.end());

  const std::size_t din = std::size_t{1} << family.in_qubits.size();
  const std::size_t dout = std::size_t{1} << family.out_qubits.size();

  family.members.resize(std::size_t{1} << family.parent_vars.size());
  for (Instrument& inst : family.members) {
    inst.outcome_vars = family.outcome_vars;
    inst.branches.resize(std::size_t{1} << family.outcome_vars.size());
  }

  for (std::size_t idx = 0; idx < phi.table_size(); ++idx) {
    const std::size_t y = subindex(idx, classical, family.parent_vars);
    const std::size_t x = subindex(idx, classical, family.outcome_vars);
    const ComplexMatrix block =
        reg.empty() ? phi.value(idx)
                    : reorder_qubits(phi.value(idx), reg, build_order);
    // Hermitian eigendecomposition of the Choi block; eigenpairs above the
    // rank threshold become Kraus operators.
    const auto n = static_cast<Eigen::Index>(block.dim());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        h(r, c) = 0.5 * (block.at(static_cast<std::size_t>(r),
                                  static_cast<std::size_t>(c)) +
                         std::conj(block.at(static_cast<std::size_t>(c),
                                            static_cast<std::size_t>(r))));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    KrausMap branch;
    for (Eigen::Index e = 0; e < n; ++e) {
      const double lambda = solver.eigenvalues()(e);
      if (lambda <= 1e-10) continue;
      const double root = std::sqrt(lambda);
      RectMatrix k(dout, din);
      for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t a = 0; a < dout; ++a) {
          k.at(a, i) =
              root * solver.eigenvectors()(
                         static_cast<Eigen::Index>(i * dout + a), e);
        }
      }
      branch.operators.push_back(std::move(k));
    }
    if (branch.operators.empty()) {
      // Zero branch: keep one explicit zero operator so shapes stay total.
      branch.operators.emplace_back(dout, din);
    }
    family.members[y].branches[x] = std::move(branch);
  }
  return family;
}

}  // namespace qbayes
