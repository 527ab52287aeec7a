#include "zslab/errors.hpp"
#include "zslab/linalg.hpp"
#include "zslab/numeric.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace zslab;
using linalg::MatrixX;
using linalg::VectorX;

namespace {

MatrixX<BigInt> random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_int_distribution<int> entry(-4, 4);
  MatrixX<BigInt> a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = entry(rng);
  }
  return a;
}

BigInt column_sum(const MatrixX<BigInt>& m, Eigen::Index j) {
  BigInt s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += m(i, j);
  return s;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("extended gcd satisfies the Bezout identity") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-50, 50);
  for (int iter = 0; iter < 200; ++iter) {
    BigInt a = entry(rng), b = entry(rng);
    BigInt x, y;
    BigInt g = linalg::ext_gcd(a, b, x, y);
    CHECK(a * x + b * y == g);
    CHECK(g >= 0);
    CHECK(g == boost::multiprecision::gcd(a, b));
  }
  BigInt x, y;
  CHECK(linalg::ext_gcd<BigInt>(0, 0, x, y) == 0);
  CHECK(linalg::ext_gcd<BigInt>(-6, 0, x, y) == 6);
  CHECK(x * -6 == 6);
}

TEST_CASE("kernel basis spans exactly the kernel lattice") {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 40; ++iter) {
    Eigen::Index rows = 1 + iter % 3, cols = 2 + iter % 4;
    MatrixX<BigInt> a = random_matrix(rng, rows, cols);
    auto k = linalg::kernel_basis(a);
    CHECK(k.basis.cols() == cols - k.rank);
    if (k.basis.cols() > 0) {
      MatrixX<BigInt> prod = a * k.basis;
      for (Eigen::Index i = 0; i < prod.rows(); ++i) {
        for (Eigen::Index j = 0; j < prod.cols(); ++j) CHECK(prod(i, j) == 0);
      }
    }
    CHECK(linalg::integer_rank(a) == k.rank);
  }
}

TEST_CASE("kernel basis on known matrices") {
  MatrixX<BigInt> a(1, 2);
  a << 2, 4;
  auto k = linalg::kernel_basis(a);
  REQUIRE(k.basis.cols() == 1);
  CHECK(k.rank == 1);
  // the kernel of (2 4) is the lattice generated by (2, -1)
  BigInt x = k.basis(0, 0), y = k.basis(1, 0);
  CHECK(2 * x + 4 * y == 0);
  CHECK((x == 2 || x == -2));

  MatrixX<BigInt> id = MatrixX<BigInt>::Zero(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(linalg::kernel_basis(id).basis.cols() == 0);

  MatrixX<BigInt> z = MatrixX<BigInt>::Zero(2, 3);
  auto kz = linalg::kernel_basis(z);
  CHECK(kz.rank == 0);
  CHECK(kz.basis.cols() == 3);
  CHECK(linalg::integer_rank(kz.basis) == 3);
}

TEST_CASE("kernel lattice membership: every boxed kernel vector is an integer combination") {
  // brute probe: for each x in [-3,3]^3 with a x = 0, the column sums divide
  // 1^T x, which pins kernel_sum_gcd from below; generation by the basis pins
  // it from above.
  MatrixX<BigInt> a(1, 3);
  a << 2, 3, 4;
  BigInt g = linalg::kernel_sum_gcd(a);
  auto k = linalg::kernel_basis(a);
  BigInt gen = 0;
  using boost::multiprecision::gcd;
  for (Eigen::Index j = 0; j < k.basis.cols(); ++j) {
    BigInt s = column_sum(k.basis, j);
    if (s < 0) s = -s;
    gen = (gen == 0) ? s : gcd(gen, s);
  }
  CHECK(g == gen);
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      for (int z = -3; z <= 3; ++z) {
        if (2 * x + 3 * y + 4 * z != 0) continue;
        BigInt s = x + y + z;
        if (g == 0) {
          CHECK(s == 0);
        } else {
          CHECK(s % g == 0);
        }
      }
    }
  }
}

TEST_CASE("kernel sum gcd agrees with the materialized kernel") {
  std::mt19937 rng(37);
  using boost::multiprecision::gcd;
  for (int iter = 0; iter < 60; ++iter) {
    Eigen::Index rows = 1 + iter % 3, cols = 2 + iter % 4;
    MatrixX<BigInt> a = random_matrix(rng, rows, cols);
    BigInt fast = linalg::kernel_sum_gcd(a);
    auto k = linalg::kernel_basis(a);
    BigInt slow = 0;
    for (Eigen::Index j = 0; j < k.basis.cols(); ++j) {
      BigInt s = column_sum(k.basis, j);
      if (s < 0) s = -s;
      slow = (slow == 0) ? s : gcd(slow, s);
    }
    CAPTURE(iter);
    CHECK(fast == slow);
  }
}

TEST_CASE("integer rank on known matrices") {
  MatrixX<BigInt> a(2, 3);
  a << 1, 2, 3, 2, 4, 6;  // second row is twice the first
  CHECK(linalg::integer_rank(a) == 1);
  MatrixX<BigInt> b(2, 2);
  b << 2, 0, 0, 3;
  CHECK(linalg::integer_rank(b) == 2);
}

TEST_CASE("simplex finds the classic vertex optimum") {
  // max 2x + 3y with x + y <= 4, x + 2y <= 5 via slacks
  MatrixX<Rational> e(2, 4);
  e << 1, 1, 1, 0, 1, 2, 0, 1;
  VectorX<Rational> b(2);
  b << 4, 5;
  VectorX<Rational> c(4);
  c << 2, 3, 0, 0;
  auto r = linalg::simplex_maximize(e, b, c);
  CHECK(r.value == Rational(9));
  CHECK(r.primal(0) == Rational(3));
  CHECK(r.primal(1) == Rational(1));
  // the optimum is feasible
  VectorX<Rational> eq = e * r.primal;
  CHECK(eq(0) == b(0));
  CHECK(eq(1) == b(1));
}

TEST_CASE("simplex handles fractional optima exactly") {
  // max x + y with 2x + y <= 2, x + 2y <= 2: optimum at x = y = 2/3
  MatrixX<Rational> e(2, 4);
  e << 2, 1, 1, 0, 1, 2, 0, 1;
  VectorX<Rational> b(2);
  b << 2, 2;
  VectorX<Rational> c(4);
  c << 1, 1, 0, 0;
  auto r = linalg::simplex_maximize(e, b, c);
  CHECK(r.value == Rational(4, 3));
  CHECK(r.primal(0) == Rational(2, 3));
  CHECK(r.primal(1) == Rational(2, 3));
}

TEST_CASE("simplex rejects infeasible programs") {
  MatrixX<Rational> e(1, 2);
  e << 1, 1;
  VectorX<Rational> b(1);
  b << -1;
  VectorX<Rational> c(2);
  c << 1, 0;
  CHECK_THROWS_AS(linalg::simplex_maximize(e, b, c), DomainError);
}

TEST_CASE("simplex rejects unbounded programs") {
  // max x with x - y = 1: x = 1 + y grows without bound
  MatrixX<Rational> e(1, 2);
  e << 1, -1;
  VectorX<Rational> b(1);
  b << 1;
  VectorX<Rational> c(2);
  c << 1, 0;
  CHECK_THROWS_AS(linalg::simplex_maximize(e, b, c), DomainError);
}

TEST_CASE("simplex survives a degenerate vertex") {
  // max 2x + y with x <= 1, y <= 1, x + y <= 1: the optimum (1, 0) sits on
  // three tight constraints in a two-variable space
  MatrixX<Rational> e(3, 5);
  e << 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1;
  VectorX<Rational> b(3);
  b << 1, 1, 1;
  VectorX<Rational> c(5);
  c << 2, 1, 0, 0, 0;
  auto r = linalg::simplex_maximize(e, b, c);
  CHECK(r.value == Rational(2));
  CHECK(r.primal(0) == Rational(1));
  CHECK(r.primal(1) == Rational(0));
}

TEST_CASE("simplex accepts redundant constraints") {
  // duplicated row leaves an artificial basic at zero after phase 1
  MatrixX<Rational> e(2, 2);
  e << 1, 1, 1, 1;
  VectorX<Rational> b(2);
  b << 3, 3;
  VectorX<Rational> c(2);
  c << 1, 2;
  auto r = linalg::simplex_maximize(e, b, c);
  CHECK(r.value == Rational(6));
  CHECK(r.primal(1) == Rational(3));
}

}  // TEST_SUITE
