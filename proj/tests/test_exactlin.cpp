#include "doctest.h"

#include "bredon/exactlin.hpp"

#include <numeric>
#include <random>

using namespace bredon;

namespace {

// Independent oracle: invariant factors from determinantal divisors
// (gcd of all k x k minors), by brute-force minor enumeration.
long minor_det(const std::vector<std::vector<long>>& a,
               const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto k = rows.size();
  if (k == 0) return 1;
  if (k == 1) return a[rows[0]][cols[0]];
  long s = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<int> r2(rows.begin() + 1, rows.end());
    std::vector<int> c2;
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) c2.push_back(cols[t]);
    long term = a[rows[0]][cols[j]] * minor_det(a, r2, c2);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}

void subsets(int n, int k, int start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<long> invariant_factors_oracle(const std::vector<std::vector<long>>& a,
                                           int rows, int cols) {
  std::vector<long> divisors{1};
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) g = std::gcd(g, std::abs(minor_det(a, r, c)));
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<long> out;
  for (std::size_t i = 1; i < divisors.size(); ++i)
    out.push_back(divisors[i] / divisors[i - 1]);
  return out;
}

IntMatrix to_int(const std::vector<std::vector<long>>& a, int rows, int cols) {
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = a[i][j];
  return m;
}

IntMatrix random_unimodular(std::mt19937& rng, int n) {
  IntMatrix u = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
  for (int s = 0; s < 3 * n; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    u.row(i) += BigInt(coef(rng)) * u.row(j);
  }
  return u;
}

bool is_diagonal_chain(const IntMatrix& d, Index rank) {
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (Index i = 0; i + 1 < rank; ++i)
    if (d(i + 1, i + 1) % d(i, i) != 0) return false;
  for (Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) < 0 || (i >= rank && d(i, i) != 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form of the worked 2x2 example") {
  auto m = int_matrix({{2, 4}, {6, 8}});
  auto f = smith_normal_form(m);
  // oracle: determinantal divisors
  auto oracle = invariant_factors_oracle({{2, 4}, {6, 8}}, 2, 2);
  REQUIRE(oracle == std::vector<long>{2, 4});
  CHECK(f.d == int_matrix({{2, 0}, {0, 4}}));
  CHECK(f.u * m * f.v == f.d);
  CHECK(abs(determinant(f.u)) == 1);
  CHECK(abs(determinant(f.v)) == 1);
}

TEST_CASE("smith normal form of identity and zero") {
  IntMatrix id = IntMatrix::Identity(3, 3);
  auto f = smith_normal_form(id);
  CHECK(f.d == id);
  CHECK(f.rank == 3);

  IntMatrix z = IntMatrix::Zero(2, 3);
  auto g = smith_normal_form(z);
  CHECK(g.d == z);
  CHECK(g.u == IntMatrix::Identity(2, 2));
  CHECK(g.v == IntMatrix::Identity(3, 3));
  CHECK(g.rank == 0);
}

TEST_CASE("kernel basis examples") {
  auto k = kernel_basis(int_matrix({{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == -k(1, 0));

  auto inv = int_matrix({{2, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  CHECK(kernel_basis(inv).cols() == 0);

  auto k2 = kernel_basis(int_matrix({{2, -2}, {-2, 2}}));
  REQUIRE(k2.cols() == 1);
  CHECK(abs(k2(0, 0)) == 1);
  CHECK(k2(0, 0) == k2(1, 0));
}

TEST_CASE("cokernel invariants examples") {
  auto a = cokernel_invariants(int_matrix({{1, 0}, {0, 2}}));
  CHECK(a.free_rank == 0);
  CHECK(a.torsion == std::vector<BigInt>{2});

  auto b = cokernel_invariants(IntMatrix(3, 0));
  CHECK(b.free_rank == 3);
  CHECK(b.torsion.empty());

  auto c = cokernel_invariants(int_matrix({{2, 0}, {0, 2}}));
  CHECK(c.free_rank == 0);
  CHECK(c.torsion == std::vector<BigInt>{2, 2});
  CHECK(c.to_string() == "(Z/2)^2");
}

TEST_CASE("solve_integer examples") {
  auto x = solve_integer(int_matrix({{2}}), IntVector(IntVector::Constant(1, BigInt(4))));
  REQUIRE(x);
  CHECK((*x)(0) == 2);
  CHECK_FALSE(solve_integer(int_matrix({{2}}), IntVector(IntVector::Constant(1, BigInt(3)))));
  IntVector b(2);
  b << 7, -5;
  auto y = solve_integer(IntMatrix(IntMatrix::Identity(2, 2)), b);
  REQUIRE(y);
  CHECK(*y == b);
}

TEST_CASE("direct sum of invariants restores the divisibility chain") {
  AbelianInvariants a{1, {BigInt(2)}}, b{0, {BigInt(3)}};
  auto s = direct_sum(a, b);
  CHECK(s.free_rank == 1);
  CHECK(s.torsion == std::vector<BigInt>{6});
}

TEST_CASE("property: smith form certificate and oracle agreement on random matrices") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 4), val(-6, 6), sparse(0, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const int r = dim(rng), c = dim(rng);
    std::vector<std::vector<long>> a(r, std::vector<long>(c));
    for (auto& row : a)
      for (auto& v : row) v = sparse(rng) == 0 ? 0 : val(rng);
    IntMatrix m = to_int(a, r, c);
    auto f = smith_normal_form(m);
    CHECK(f.u * m * f.v == f.d);
    CHECK(f.u * f.u_inv == IntMatrix::Identity(r, r));
    CHECK(f.v * f.v_inv == IntMatrix::Identity(c, c));
    CHECK(abs(determinant(f.u)) == 1);
    CHECK(abs(determinant(f.v)) == 1);
    CHECK(is_diagonal_chain(f.d, f.rank));

    auto oracle = invariant_factors_oracle(a, r, c);
    REQUIRE(static_cast<Index>(oracle.size()) == f.rank);
    for (Index i = 0; i < f.rank; ++i) CHECK(f.d(i, i) == oracle[static_cast<std::size_t>(i)]);

    // rank-nullity
    CHECK(rank(m) + kernel_basis(m).cols() == c);
    CHECK((m * kernel_basis(m)).isZero());

    // invariance under unimodular changes of basis
    IntMatrix p = random_unimodular(rng, r), q = random_unimodular(rng, c);
    CHECK(cokernel_invariants(IntMatrix(p * m * q)) == cokernel_invariants(m));

    // solvability of consistent systems
    IntVector x(c);
    for (int i = 0; i < c; ++i) x(i) = val(rng);
    IntVector b = m * x;
    auto sol = solve_integer(m, b);
    REQUIRE(sol);
    CHECK(m * *sol == b);
  }
}

TEST_CASE("entries beyond 64 bits stay exact") {
  IntMatrix m(2, 2);
  BigInt big = BigInt(1) << 80;
  m << big, big + 1, big - 1, big;
  auto f = smith_normal_form(m);
  CHECK(f.u * m * f.v == f.d);
  CHECK(f.d(0, 0) == 1);
  CHECK(f.d(1, 1) == 1);  // det = big^2 - (big^2 - 1) = 1
}
