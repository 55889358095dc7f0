#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace qbayes {

using Complex = std::complex<double>;

/// Default relative tolerance for positivity / Hermiticity / identity checks.
inline constexpr double kDefaultTol = 1e-9;

/// Dense square complex matrix, row-major. dim is 1 or a power of two;
/// dim == 1 doubles as a scalar, so classical weights and operators share
/// one representation.
class ComplexMatrix {
 public:
  ComplexMatrix() : dim_(1), entries_(1, Complex(0.0, 0.0)) {}
  explicit ComplexMatrix(std::size_t dim)
      : dim_(dim), entries_(dim * dim, Complex(0.0, 0.0)) {}
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix scalar(Complex value);
  /// Row-major convenience constructor, mostly for tests and literals.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const { return dim_; }
  /// Number of qubits this matrix acts on; dim must be a power of two.
  std::size_t qubit_count() const;

  Complex& at(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix scaled(Complex factor) const;
  ComplexMatrix adjoint() const;

  Complex trace() const;
  double max_abs() const;

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Ordered qubit names. Names are kept in ascending lexicographic order;
/// row/column bit k (counting from the most significant bit) belongs to
/// names()[k]. Every operation that mentions a qubit resolves it here.
class QubitOrder {
 public:
  QubitOrder() = default;
  /// Sorts the names; duplicates are rejected.
  explicit QubitOrder(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  std::size_t dim() const { return std::size_t{1} << names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(const std::string& name) const;
  /// 0-based position from the most significant bit; throws on unknown name.
  std::size_t position(const std::string& name) const;

  bool operator==(const QubitOrder& other) const = default;

 private:
  std::vector<std::string> names_;
};

/// Kronecker product; a's qubits occupy the more significant bits.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out one qubit by bit position (0 = most significant).
ComplexMatrix partial_trace_position(const ComplexMatrix& m,
                                     std::size_t num_qubits, std::size_t pos);

/// Trace out the named qubit of a matrix indexed by `order`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const QubitOrder& order,
                            const std::string& traced);

/// Eigenvalues of the Hermitian part (m + m†)/2, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// True iff m is Hermitian within tol (relative on the sup entry norm) and
/// the Hermitian part has no eigenvalue below -tol * max(1, spectral norm).
/// Non-Hermitian input returns false rather than raising.
bool check_positive(const ComplexMatrix& m, double tol = kDefaultTol);

/// Entrywise comparison: absolute tolerance for entries of magnitude <= 1,
/// relative above.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Permute tensor indices of an n-qubit matrix from one qubit naming to
/// another ordering of the same names.
ComplexMatrix reorder_qubits(const ComplexMatrix& m,
                             const std::vector<std::string>& from,
                             const std::vector<std::string>& to);

}  // namespace qbayes
