#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbayes/complex_matrix.hpp"

using namespace qbayes;

namespace {

std::mt19937_64 rng(20240517);

ComplexMatrix random_matrix(std::size_t dim) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m.at(r, c) = Complex(d(rng), d(rng));
    }
  }
  return m;
}

ComplexMatrix random_psd(std::size_t dim) {
  ComplexMatrix g = random_matrix(dim);
  return g.adjoint() * g;
}

ComplexMatrix random_hermitian(std::size_t dim) {
  ComplexMatrix g = random_matrix(dim);
  return (g + g.adjoint()).scaled(Complex(0.5, 0.0));
}

// Independent Kronecker product, written directly from the definition.
ComplexMatrix naive_kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          out.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
  return out;
}

// 3x3 determinant by cofactor expansion (real part only; used on real
// submatrices).
double det3(const ComplexMatrix& m, std::size_t r0, std::size_t r1,
            std::size_t r2) {
  const std::size_t idx[3] = {r0, r1, r2};
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m.at(idx[i], idx[j]).real();
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

const ComplexMatrix kBell = ComplexMatrix::from_rows({
    {0.5, 0.0, 0.0, 0.5},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.5, 0.0, 0.0, 0.5},
});

// The running 4x4 example matrix with entries 2 on the diagonal and the
// +1/-1 off-diagonal pair.
const ComplexMatrix kExample4 = ComplexMatrix::from_rows({
    {2.0, 0.0, 0.0, 1.0},
    {0.0, 2.0, 0.0, 0.0},
    {0.0, 0.0, 2.0, -1.0},
    {1.0, 0.0, -1.0, 2.0},
});

}  // namespace

TEST_CASE("tensor product of identities") {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  CHECK(tensor_product(id2, id2) == ComplexMatrix::identity(4));
}

TEST_CASE("tensor product of basis projectors follows the index convention") {
  const ComplexMatrix p0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  const ComplexMatrix p1 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  const ComplexMatrix got = tensor_product(p0, p1);
  ComplexMatrix want(4);
  want.at(1, 1) = 1.0;  // |01><01|
  CHECK(got == want);
}

TEST_CASE("tensor product matches the naive Kronecker computation") {
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix a = random_matrix(2);
    const ComplexMatrix b = random_matrix(2);
    const ComplexMatrix t = tensor_product(a, b);
    CHECK(t == naive_kronecker(a, b));
    CHECK(std::abs(t.trace() - a.trace() * b.trace()) < 1e-12);
  }
}

TEST_CASE("tensor product is associative bit-exactly") {
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix a = random_matrix(2);
    const ComplexMatrix b = random_matrix(2);
    const ComplexMatrix c = random_matrix(2);
    CHECK(tensor_product(tensor_product(a, b), c) ==
          tensor_product(a, tensor_product(b, c)));
  }
}

TEST_CASE("partial trace of the identity") {
  const QubitOrder order({"q1", "q2"});
  const ComplexMatrix got =
      partial_trace(ComplexMatrix::identity(4), order, "q1");
  CHECK(approx_equal(got, ComplexMatrix::identity(2).scaled(2.0), 1e-15));
}

TEST_CASE("partial trace of the Bell state") {
  // Block sums of the explicit 4x4 matrix: both diagonal 2x2 blocks of
  // |Phi+><Phi+| add up to id/2.
  const QubitOrder order({"q1", "q2"});
  const ComplexMatrix got = partial_trace(kBell, order, "q1");
  CHECK(approx_equal(got, ComplexMatrix::identity(2).scaled(0.5), 1e-15));
  const ComplexMatrix other = partial_trace(kBell, order, "q2");
  CHECK(approx_equal(other, ComplexMatrix::identity(2).scaled(0.5), 1e-15));
}

TEST_CASE("partial trace splits product states") {
  const QubitOrder order({"a", "b"});
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix rho = random_matrix(2);
    const ComplexMatrix sigma = random_matrix(2);
    const ComplexMatrix joint = tensor_product(rho, sigma);
    CHECK(approx_equal(partial_trace(joint, order, "a"),
                       sigma.scaled(rho.trace()), 1e-12));
    CHECK(approx_equal(partial_trace(joint, order, "b"),
                       rho.scaled(sigma.trace()), 1e-12));
  }
}

TEST_CASE("partial trace over all qubits equals the trace") {
  const QubitOrder order({"q1", "q2"});
  for (int i = 0; i < 10; ++i) {
    ComplexMatrix m = random_matrix(4);
    ComplexMatrix reduced = partial_trace(m, order, "q1");
    reduced = partial_trace(reduced, QubitOrder({"q2"}), "q2");
    CHECK(std::abs(reduced.at(0, 0) - m.trace()) < 1e-12);
  }
}

TEST_CASE("partial trace rejects unknown qubits") {
  const QubitOrder order({"q1", "q2"});
  CHECK_THROWS(partial_trace(ComplexMatrix::identity(4), order, "q9"));
}

TEST_CASE("check_positive accepts the example matrix") {
  CHECK(check_positive(kExample4));
  // Sylvester cross-check on the {1,3,4} principal submatrix (1-based):
  // leading minors 2, 4, 4.
  CHECK(kExample4.at(0, 0).real() == doctest::Approx(2.0));
  const double minor2 = kExample4.at(0, 0).real() * kExample4.at(2, 2).real() -
                        kExample4.at(0, 2).real() * kExample4.at(2, 0).real();
  CHECK(minor2 == doctest::Approx(4.0));
  CHECK(det3(kExample4, 0, 2, 3) == doctest::Approx(4.0));
}

TEST_CASE("check_positive rejects negative and non-Hermitian matrices") {
  CHECK_FALSE(check_positive(ComplexMatrix::identity(2).scaled(-1.0)));
  ComplexMatrix skew(2);
  skew.at(0, 1) = Complex(1.0, 0.0);  // not Hermitian
  CHECK_FALSE(check_positive(skew));
}

TEST_CASE("positivity respects tensor structure") {
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix p = random_psd(2);
    const ComplexMatrix q = random_psd(2);
    CHECK(check_positive(tensor_product(p, q)));
    ComplexMatrix indefinite = random_hermitian(2);
    // Force one strictly negative eigenvalue.
    indefinite.at(0, 0) -= 10.0;
    CHECK_FALSE(check_positive(indefinite));
    CHECK(check_positive(tensor_product(p, q)) ==
          (check_positive(p) && check_positive(q)));
    CHECK_FALSE(check_positive(tensor_product(p + ComplexMatrix::identity(2),
                                              indefinite)));
  }
}

TEST_CASE("scalars are 1x1 matrices") {
  const ComplexMatrix s = ComplexMatrix::scalar(2.5);
  CHECK(s.dim() == 1);
  CHECK(check_positive(s));
  CHECK_FALSE(check_positive(ComplexMatrix::scalar(-2.5)));
  CHECK(tensor_product(s, ComplexMatrix::identity(2)) ==
        ComplexMatrix::identity(2).scaled(2.5));
}

TEST_CASE("reorder_qubits permutes tensor indices") {
  const ComplexMatrix a = random_matrix(2);
  const ComplexMatrix b = random_matrix(2);
  const ComplexMatrix ab = tensor_product(a, b);
  const ComplexMatrix ba = tensor_product(b, a);
  CHECK(reorder_qubits(ab, {"x", "y"}, {"y", "x"}) == ba);
  CHECK(reorder_qubits(ab, {"x", "y"}, {"x", "y"}) == ab);
}
