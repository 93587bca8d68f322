#include <doctest.h>

#include <climits>
#include <random>

#include "khbound/errors.hpp"
#include "khbound/laurent.hpp"
#include "khbound/rational.hpp"
#include "khbound/sparse_matrix.hpp"

using namespace khbound;

namespace {

// Fraction-free (Bareiss) rank of a dense integer matrix.
std::size_t dense_rank(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

SparseMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density, int range) {
  SparseMatrix m(rows, cols);
  std::bernoulli_distribution fill(density);
  std::uniform_int_distribution<int> val(-range, range);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (fill(rng)) m.set(r, c, Rational(val(rng)));
    }
  }
  return m;
}

std::vector<std::vector<mpz_class>> to_dense(const SparseMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) a[r][c] = v.to_mpq().get_num();
  }
  return a;
}

}  // namespace

TEST_CASE("rational arithmetic agrees with GMP across the overflow boundary") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> big(LLONG_MIN / 2, LLONG_MAX / 2);
  std::uniform_int_distribution<long long> small(-50, 50);
  for (int k = 0; k < 2000; ++k) {
    const long long a = k % 3 == 0 ? small(rng) : big(rng);
    long long b = k % 5 == 0 ? small(rng) : big(rng);
    long long c = small(rng);
    if (c == 0) c = 7;
    const Rational x(a, c);
    const Rational y(b == 0 ? 1 : b, 3);
    const mpq_class mx = x.to_mpq();
    const mpq_class my = y.to_mpq();
    CHECK((x + y).to_mpq() == mpq_class(mx + my));
    CHECK((x - y).to_mpq() == mpq_class(mx - my));
    CHECK((x * y).to_mpq() == mpq_class(mx * my));
    CHECK((x / y).to_mpq() == mpq_class(mx / my));
    CHECK(((x * y) / y) == x);
  }
}

TEST_CASE("rational values demote after large intermediates") {
  Rational x(LLONG_MAX);
  x *= Rational(LLONG_MAX);
  CHECK_FALSE(x.is_small());
  x /= Rational(LLONG_MAX);
  CHECK(x.is_small());
  CHECK(x == Rational(LLONG_MAX));
  CHECK(Rational(LLONG_MIN) / Rational(-1) == Rational(mpq_class(mpz_class("9223372036854775808"))));
}

TEST_CASE("rational normalization, units and errors") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-3, 2).to_string() == "-3/2");
  CHECK(Rational(-1).is_unit());
  CHECK_FALSE(Rational(2).is_unit());
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("laurent polynomial operations") {
  const Laurent q = Laurent::monomial(1);
  const Laurent qi = Laurent::monomial(-1);
  const Laurent loop = q + qi;
  CHECK(loop.pow(2) == Laurent::monomial(2) + Laurent::monomial(0, 2) + Laurent::monomial(-2));
  CHECK((loop - loop).is_zero());
  CHECK(loop.invert_variable() == loop);
  CHECK(Laurent::monomial(3, -2).substitute_power(-2) == Laurent::monomial(-6, -2));
  CHECK((Laurent::monomial(9, -1) + Laurent::monomial(1)).to_string() == "-q^9 + q");
  CHECK(loop.min_degree() == -1);
  CHECK(loop.max_degree() == 1);
}

TEST_CASE("sparse rank matches a dense fraction-free oracle") {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    std::uniform_int_distribution<std::size_t> dim(0, 14);
    const std::size_t rows = dim(rng);
    const std::size_t cols = dim(rng);
    const double density = (k % 4 + 1) * 0.12;
    const SparseMatrix m = random_sparse(rng, rows, cols, density, k % 2 == 0 ? 1 : 9);
    CHECK(rank(m) == dense_rank(to_dense(m)));
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("sparse rank of structured matrices") {
  CHECK(rank(SparseMatrix(0, 0)) == 0);
  CHECK(rank(SparseMatrix(5, 3)) == 0);
  CHECK(rank(SparseMatrix::identity(17)) == 17);
  // Rank-one outer product.
  SparseMatrix outer(6, 6);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 6; ++c) outer.set(r, c, Rational(static_cast<long long>((r + 1) * (c + 2))));
  }
  CHECK(rank(outer) == 1);
  // Product of identity with anything is unchanged.
  std::mt19937 rng(3);
  const SparseMatrix m = random_sparse(rng, 7, 5, 0.4, 5);
  CHECK(SparseMatrix::identity(7) * m == m);
  CHECK(m * SparseMatrix::identity(5) == m);
}

TEST_CASE("eliminate_pivot lowers the rank by exactly one") {
  std::mt19937 rng(5);
  for (int k = 0; k < 100; ++k) {
    const SparseMatrix m = random_sparse(rng, 8, 9, 0.35, 4);
    if (m.is_zero()) continue;
    std::size_t pr = 0;
    std::size_t pc = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!m.row(r).empty()) {
        pr = r;
        pc = m.row(r).begin()->first;
        break;
      }
    }
    const SparseMatrix s = eliminate_pivot(m, pr, pc);
    CHECK(s.rows() == m.rows() - 1);
    CHECK(s.cols() == m.cols() - 1);
    CHECK(rank(s) + 1 == rank(m));
  }
  SparseMatrix z(2, 2);
  z.set(0, 1, Rational(1));
  CHECK_THROWS_AS(eliminate_pivot(z, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(eliminate_pivot(z, 2, 0), std::invalid_argument);
}

TEST_CASE("eliminate_pivot on a hand-checked 2x2") {
  SparseMatrix m(2, 2);
  m.set(0, 0, Rational(2));
  m.set(0, 1, Rational(3));
  m.set(1, 0, Rational(4));
  m.set(1, 1, Rational(5));
  const SparseMatrix s = eliminate_pivot(m, 0, 0);
  // 5 - 4 * 3 / 2
  CHECK(s.get(0, 0) == Rational(-1));
}
