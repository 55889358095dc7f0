#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qbayes/qcpt.hpp"
#include "qbayes/qfactor.hpp"

namespace qbayes {

/// Rectangular complex matrix (rows x cols, row-major). Kraus operators map
/// a 2^n-dimensional input space to a 2^m-dimensional output space.
class RectMatrix {
 public:
  RectMatrix() : rows_(0), cols_(0) {}
  RectMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> entries_;
};

/// Completely positive map in Kraus form: rho -> Σ_k K rho K†.
struct KrausMap {
  std::vector<RectMatrix> operators;

  std::size_t in_dim() const;
  std::size_t out_dim() const;
  /// Σ_k K† K, the completeness witness of this branch.
  ComplexMatrix completeness_term() const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// Outcome-indexed family of CP maps; the branch sums must form a
/// trace-preserving map. Branches are indexed like a factor table over the
/// outcome variables (first sorted variable most significant, t -> 0).
struct Instrument {
  std::vector<std::string> outcome_vars;  // sorted; empty for a pure channel
  std::vector<KrausMap> branches;         // size 2^|outcome_vars|

  /// ‖Σ K†K − Id‖ within tol over all branches together.
  bool is_trace_preserving(double tol = 1e-8) const;
};

/// One instrument per parent-classical assignment, plus the register naming
/// that fixes the matrix index conventions of the Kraus operators: input
/// index bits follow in_qubits (sorted, first most significant), output
/// bits follow out_qubits.
struct InstrumentFamily {
  std::vector<std::string> outcome_vars;
  std::vector<std::string> parent_vars;
  std::vector<std::string> in_qubits;
  std::vector<std::string> out_qubits;
  std::vector<Instrument> members;  // size 2^|parent_vars|

  QcptRole role() const;
};

struct OutcomeResult {
  double probability = 0.0;
  /// Normalized post-state; empty when the branch probability is below
  /// 1e-12 (a null branch).
  std::optional<ComplexMatrix> post_state;
};

/// Applies every branch to a state: probability(a) = tr(E_a(rho)).
/// Throws on dimension mismatch or when rho is not a state.
std::vector<OutcomeResult> apply_instrument(const Instrument& instrument,
                                            const ComplexMatrix& rho,
                                            double tol = kDefaultTol);

/// The Choi image of an instrument family: a conditional factor over
/// (outcome ∪ parent variables, in ⊎ out qubits), built by feeding the
/// unnormalized maximally entangled matrix Σ_ij e^{ij}⊗e^{ij} through each
/// branch. The result always satisfies the generalized normalization check.
QFactor choi_from_instrument(const InstrumentFamily& family);

/// Inverse direction: per classical row, eigendecompose the Choi block and
/// reshape eigenpairs with eigenvalue > 1e-10 into Kraus operators. The
/// factor must pass the generalized check for the role.
InstrumentFamily instrument_from_qcpt(const QFactor& phi, const QcptRole& role,
                                      double tol = kDefaultTol);

}  // namespace qbayes
