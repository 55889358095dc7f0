#include "qbayes/complex_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbayes {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw std::invalid_argument("ComplexMatrix: entry count != dim^2");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::scalar(Complex value) {
  ComplexMatrix m(1);
  m.at(0, 0) = value;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t dim = rows.size();
  ComplexMatrix m(dim);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim) {
      throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
    }
    std::size_t c = 0;
    for (const auto& v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

std::size_t ComplexMatrix::qubit_count() const {
  std::size_t n = 0;
  std::size_t d = dim_;
  while (d > 1) {
    if (d % 2 != 0) throw std::logic_error("matrix dim is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix dim mismatch");
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = entries_[i] + other.entries_[i];
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix dim mismatch");
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = entries_[i] - other.entries_[i];
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix dim mismatch");
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex v = at(r, k);
      if (v == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < dim_; ++c) {
        out.at(r, c) += v * other.at(k, c);
      }
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = entries_[i] * factor;
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      out.at(c, r) = std::conj(at(r, c));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& v : entries_) m = std::max(m, std::abs(v));
  return m;
}

QubitOrder::QubitOrder(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw std::invalid_argument("QubitOrder: duplicate qubit name");
  }
}

bool QubitOrder::contains(const std::string& name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

std::size_t QubitOrder::position(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw std::invalid_argument("unknown qubit name: " + name);
  }
  return static_cast<std::size_t>(it - names_.begin());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t ra = 0; ra < da; ++ra) {
    for (std::size_t ca = 0; ca < da; ++ca) {
      const Complex va = a.at(ra, ca);
      if (va == Complex(0.0, 0.0)) continue;
      for (std::size_t rb = 0; rb < db; ++rb) {
        for (std::size_t cb = 0; cb < db; ++cb) {
          out.at(ra * db + rb, ca * db + cb) = va * b.at(rb, cb);
        }
      }
    }
  }
  return out;
}

namespace {

// Insert bit value b into index at bit position pos (from the MSB of an
// n-bit index).
std::size_t insert_bit(std::size_t index, std::size_t n_bits_after,
                       std::size_t b) {
  const std::size_t low_mask = (std::size_t{1} << n_bits_after) - 1;
  const std::size_t high = index >> n_bits_after;
  const std::size_t low = index & low_mask;
  return (high << (n_bits_after + 1)) | (b << n_bits_after) | low;
}

}  // namespace

ComplexMatrix partial_trace_position(const ComplexMatrix& m,
                                     std::size_t num_qubits, std::size_t pos) {
  if (m.dim() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("partial_trace: dim does not match qubits");
  }
  if (pos >= num_qubits) {
    throw std::invalid_argument("partial_trace: bit position out of range");
  }
  const std::size_t out_dim = m.dim() / 2;
  const std::size_t bits_after = num_qubits - 1 - pos;
  ComplexMatrix out(out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex acc(0.0, 0.0);
      for (std::size_t b = 0; b < 2; ++b) {
        acc += m.at(insert_bit(r, bits_after, b), insert_bit(c, bits_after, b));
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const QubitOrder& order,
                            const std::string& traced) {
  if (m.dim() != order.dim()) {
    throw std::invalid_argument("partial_trace: dim does not match convention");
  }
  return partial_trace_position(m, order.size(), order.position(traced));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      h(r, c) = 0.5 * (m.at(r, c) + std::conj(m.at(c, r)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  return out;
}

bool check_positive(const ComplexMatrix& m, double tol) {
  const double scale = std::max(1.0, m.max_abs());
  double herm_defect = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      herm_defect =
          std::max(herm_defect, std::abs(m.at(r, c) - std::conj(m.at(c, r))));
    }
  }
  if (herm_defect > tol * scale) return false;
  const std::vector<double> eig = hermitian_eigenvalues(m);
  double spectral = 0.0;
  for (double v : eig) spectral = std::max(spectral, std::abs(v));
  const double floor = -tol * std::max(1.0, spectral);
  for (double v : eig) {
    if (v < floor) return false;
  }
  return true;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const Complex x = a.entries()[i];
    const Complex y = b.entries()[i];
    const double allowed = tol * std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x - y) > allowed) return false;
  }
  return true;
}

ComplexMatrix reorder_qubits(const ComplexMatrix& m,
                             const std::vector<std::string>& from,
                             const std::vector<std::string>& to) {
  const std::size_t n = from.size();
  if (to.size() != n || m.dim() != (std::size_t{1} << n)) {
    throw std::invalid_argument("reorder_qubits: shape mismatch");
  }
  // source bit position of each target bit
  std::vector<std::size_t> src_pos(n);
  for (std::size_t t = 0; t < n; ++t) {
    auto it = std::find(from.begin(), from.end(), to[t]);
    if (it == from.end()) {
      throw std::invalid_argument("reorder_qubits: name not in source: " +
                                  to[t]);
    }
    src_pos[t] = static_cast<std::size_t>(it - from.begin());
  }
  const std::size_t dim = m.dim();
  auto map_index = [&](std::size_t idx) {
    std::size_t out = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t bit = (idx >> (n - 1 - t)) & 1;
      out |= bit << (n - 1 - src_pos[t]);
    }
    return out;
  };
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out.at(r, c) = m.at(map_index(r), map_index(c));
    }
  }
  return out;
}

}  // namespace qbayes
