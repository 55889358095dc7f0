#include "qbayes/qfactor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qbayes {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> names,
                                       const char* what) {
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw std::invalid_argument(std::string("duplicate name in ") + what);
  }
  return names;
}

}  // namespace

QFactor QFactor::trivial(double value) {
  QFactor f({}, {}, {ComplexMatrix::scalar(Complex(value, 0.0))});
  return f;
}

QFactor::QFactor(std::vector<std::string> classical,
                 std::vector<std::string> qubits,
                 std::vector<ComplexMatrix> table)
    : classical_(sorted_unique(classical, "classical scope")),
      register_(qubits),
      table_() {
  const std::size_t n_vars = classical_.size();
  if (table.size() != (std::size_t{1} << n_vars)) {
    throw std::invalid_argument("QFactor: table size != 2^|classical scope|");
  }
  for (const std::string& q : register_.names()) {
    if (std::binary_search(classical_.begin(), classical_.end(), q)) {
      throw std::invalid_argument("QFactor: name in both scopes: " + q);
    }
  }
  const std::size_t dim = register_.dim();
  for (const ComplexMatrix& m : table) {
    if (m.dim() != dim) {
      throw std::invalid_argument("QFactor: matrix dim != 2^|register|");
    }
  }

  // Position of each canonical variable in the caller's ordering.
  std::vector<std::size_t> given_pos(n_vars);
  for (std::size_t i = 0; i < n_vars; ++i) {
    auto it = std::find(classical.begin(), classical.end(), classical_[i]);
    given_pos[i] = static_cast<std::size_t>(it - classical.begin());
  }
  const bool reorder_matrices = qubits != register_.names();
  table_.reserve(table.size());
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < n_vars; ++i) {
      const std::size_t bit = (idx >> (n_vars - 1 - i)) & 1;
      src |= bit << (n_vars - 1 - given_pos[i]);
    }
    table_.push_back(reorder_matrices
                         ? reorder_qubits(table[src], qubits, register_.names())
                         : table[src]);
  }
}

bool QFactor::has_classical(const std::string& name) const {
  return std::binary_search(classical_.begin(), classical_.end(), name);
}

bool QFactor::has_qubit(const std::string& name) const {
  return register_.contains(name);
}

std::size_t QFactor::assignment_index(const Assignment& assignment) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < classical_.size(); ++i) {
    auto it = assignment.find(classical_[i]);
    if (it == assignment.end()) {
      throw std::invalid_argument("assignment missing variable: " +
                                  classical_[i]);
    }
    const std::size_t bit = it->second ? 0 : 1;
    idx |= bit << (classical_.size() - 1 - i);
  }
  return idx;
}

Assignment QFactor::assignment_at(std::size_t index) const {
  Assignment a;
  for (std::size_t i = 0; i < classical_.size(); ++i) {
    const std::size_t bit = (index >> (classical_.size() - 1 - i)) & 1;
    a[classical_[i]] = (bit == 0);
  }
  return a;
}

const ComplexMatrix& QFactor::value(const Assignment& assignment) const {
  return table_[assignment_index(assignment)];
}

std::size_t QFactor::weight() const {
  return table_.size() * matrix_dim() * matrix_dim();
}

Complex coefficient(const QFactor& phi, const Assignment& x,
                    const BasisMultiIndex& e) {
  const std::size_t idx = phi.assignment_index(x);
  const auto& names = phi.register_names();
  std::size_t row = 0;
  std::size_t col = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = e.find(names[i]);
    if (it == e.end()) {
      throw std::invalid_argument("basis index missing qubit: " + names[i]);
    }
    const std::size_t shift = names.size() - 1 - i;
    row |= static_cast<std::size_t>(it->second.row_bit & 1) << shift;
    col |= static_cast<std::size_t>(it->second.col_bit & 1) << shift;
  }
  return phi.value(idx).at(row, col);
}

namespace {

struct ScopeSplit {
  std::vector<std::string> merged;   // sorted union
  std::vector<std::size_t> pos_a;    // position in a's scope, npos if absent
  std::vector<std::size_t> pos_b;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

ScopeSplit split_scopes(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  ScopeSplit s;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(s.merged));
  s.pos_a.resize(s.merged.size(), ScopeSplit::npos);
  s.pos_b.resize(s.merged.size(), ScopeSplit::npos);
  for (std::size_t i = 0; i < s.merged.size(); ++i) {
    auto ia = std::lower_bound(a.begin(), a.end(), s.merged[i]);
    if (ia != a.end() && *ia == s.merged[i]) {
      s.pos_a[i] = static_cast<std::size_t>(ia - a.begin());
    }
    auto ib = std::lower_bound(b.begin(), b.end(), s.merged[i]);
    if (ib != b.end() && *ib == s.merged[i]) {
      s.pos_b[i] = static_cast<std::size_t>(ib - b.begin());
    }
  }
  return s;
}

}  // namespace

QFactor product(const QFactor& a, const QFactor& b) {
  const auto& qa = a.register_names();
  const auto& qb = b.register_names();
  std::vector<std::string> shared;
  std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(),
                        std::back_inserter(shared));
  std::vector<std::string> out_reg;
  std::set_symmetric_difference(qa.begin(), qa.end(), qb.begin(), qb.end(),
                                std::back_inserter(out_reg));

  const ScopeSplit cls = split_scopes(a.classical_scope(), b.classical_scope());
  const std::size_t n_vars = cls.merged.size();

  // Per qubit of each operand: is it contracted, and which bit of which
  // index (shared or output) supplies its row/column bit.
  struct QubitSlot {
    bool from_shared;
    std::size_t bit;  // position from MSB within that index
  };
  auto make_slots = [&](const std::vector<std::string>& reg) {
    std::vector<QubitSlot> slots(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i) {
      auto it = std::lower_bound(shared.begin(), shared.end(), reg[i]);
      if (it != shared.end() && *it == reg[i]) {
        slots[i] = {true,
                    static_cast<std::size_t>(it - shared.begin())};
      } else {
        auto ot = std::lower_bound(out_reg.begin(), out_reg.end(), reg[i]);
        slots[i] = {false, static_cast<std::size_t>(ot - out_reg.begin())};
      }
    }
    return slots;
  };
  const std::vector<QubitSlot> slots_a = make_slots(qa);
  const std::vector<QubitSlot> slots_b = make_slots(qb);

  const std::size_t n_shared = shared.size();
  const std::size_t n_out = out_reg.size();
  const std::size_t shared_dim = std::size_t{1} << n_shared;
  const std::size_t out_dim = std::size_t{1} << n_out;

  auto assemble = [](const std::vector<QubitSlot>& slots, std::size_t out_idx,
                     std::size_t shared_idx, std::size_t n_out_bits,
                     std::size_t n_shared_bits) {
    std::size_t idx = 0;
    const std::size_t n = slots.size();
    for (std::size_t i = 0; i < n; ++i) {
      const QubitSlot& s = slots[i];
      const std::size_t bit =
          s.from_shared ? (shared_idx >> (n_shared_bits - 1 - s.bit)) & 1
                        : (out_idx >> (n_out_bits - 1 - s.bit)) & 1;
      idx |= bit << (n - 1 - i);
    }
    return idx;
  };

  std::vector<ComplexMatrix> table;
  table.reserve(std::size_t{1} << n_vars);
  for (std::size_t x = 0; x < (std::size_t{1} << n_vars); ++x) {
    std::size_t xa = 0;
    std::size_t xb = 0;
    for (std::size_t i = 0; i < n_vars; ++i) {
      const std::size_t bit = (x >> (n_vars - 1 - i)) & 1;
      if (cls.pos_a[i] != ScopeSplit::npos) {
        xa |= bit << (a.classical_scope().size() - 1 - cls.pos_a[i]);
      }
      if (cls.pos_b[i] != ScopeSplit::npos) {
        xb |= bit << (b.classical_scope().size() - 1 - cls.pos_b[i]);
      }
    }
    const ComplexMatrix& ma = a.value(xa);
    const ComplexMatrix& mb = b.value(xb);
    ComplexMatrix out(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
      for (std::size_t c = 0; c < out_dim; ++c) {
        Complex acc(0.0, 0.0);
        for (std::size_t rs = 0; rs < shared_dim; ++rs) {
          for (std::size_t cs = 0; cs < shared_dim; ++cs) {
            const Complex va =
                ma.at(assemble(slots_a, r, rs, n_out, n_shared),
                      assemble(slots_a, c, cs, n_out, n_shared));
            if (va == Complex(0.0, 0.0)) continue;
            acc += va * mb.at(assemble(slots_b, r, rs, n_out, n_shared),
                              assemble(slots_b, c, cs, n_out, n_shared));
          }
        }
        out.at(r, c) = acc;
      }
    }
    table.push_back(std::move(out));
  }
  return QFactor(cls.merged, out_reg, std::move(table));
}

QFactor sum_out_classical(const QFactor& phi, const std::string& variable) {
  if (!phi.has_classical(variable)) {
    throw std::invalid_argument("sum_out_classical: unknown variable: " +
                                variable);
  }
  const auto& scope = phi.classical_scope();
  const std::size_t n = scope.size();
  const std::size_t pos = static_cast<std::size_t>(
      std::lower_bound(scope.begin(), scope.end(), variable) - scope.begin());
  std::vector<std::string> out_scope = scope;
  out_scope.erase(out_scope.begin() + static_cast<std::ptrdiff_t>(pos));

  const std::size_t bits_after = n - 1 - pos;
  const std::size_t low_mask = (std::size_t{1} << bits_after) - 1;
  std::vector<ComplexMatrix> table;
  table.reserve(std::size_t{1} << (n - 1));
  for (std::size_t idx = 0; idx < (std::size_t{1} << (n - 1)); ++idx) {
    const std::size_t high = idx >> bits_after;
    const std::size_t low = idx & low_mask;
    const std::size_t i0 = (high << (bits_after + 1)) | low;
    const std::size_t i1 = i0 | (std::size_t{1} << bits_after);
    table.push_back(phi.value(i0) + phi.value(i1));
  }
  return QFactor(out_scope, phi.register_names(), std::move(table));
}

QFactor sum_out_qubit(const QFactor& phi, const std::string& qubit) {
  if (!phi.has_qubit(qubit)) {
    throw std::invalid_argument("sum_out_qubit: unknown qubit: " + qubit);
  }
  std::vector<std::string> out_reg = phi.register_names();
  out_reg.erase(std::find(out_reg.begin(), out_reg.end(), qubit));
  std::vector<ComplexMatrix> table;
  table.reserve(phi.table_size());
  for (std::size_t i = 0; i < phi.table_size(); ++i) {
    table.push_back(partial_trace(phi.value(i), phi.register_order(), qubit));
  }
  return QFactor(phi.classical_scope(), out_reg, std::move(table));
}

QFactor sum_out(const QFactor& phi, const std::string& name) {
  if (phi.has_classical(name)) return sum_out_classical(phi, name);
  if (phi.has_qubit(name)) return sum_out_qubit(phi, name);
  throw std::invalid_argument("sum_out: name not in scope: " + name);
}

bool equal_within(const QFactor& a, const QFactor& b, double tol) {
  if (a.classical_scope() != b.classical_scope()) return false;
  if (a.register_names() != b.register_names()) return false;
  for (std::size_t i = 0; i < a.table_size(); ++i) {
    if (!approx_equal(a.value(i), b.value(i), tol)) return false;
  }
  return true;
}

bool factor_positive(const QFactor& phi, double tol) {
  for (std::size_t i = 0; i < phi.table_size(); ++i) {
    if (!check_positive(phi.value(i), tol)) return false;
  }
  return true;
}

}  // namespace qbayes
