#pragma once

// Exact integer linear algebra over Eigen dense matrices.
//
// Everything here is templated on the scalar so the same routines run on
// BigInt (the production scalar) and on small builtin integers in tests.
// Matrices are plain Eigen values; every function returns fresh data.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bredon {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;
using Index = Eigen::Index;

/// Invariants of a finitely generated abelian group: Z^free_rank plus
/// Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, every d_i >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
  std::string to_string() const;
};

AbelianInvariants direct_sum(const AbelianInvariants& a,
                             const AbelianInvariants& b);

/// u * m * v == d with u, v unimodular and d diagonal, d_00 | d_11 | ...,
/// all diagonal entries non-negative.  The inverses of u and v are carried
/// along because the module layer needs both directions of every base change.
template <class Scalar>
struct SmithForm {
  Matrix<Scalar> u, u_inv, d, v, v_inv;
  Index rank = 0;

  Scalar diag(Index i) const { return d(i, i); }
};

/// Matrix product; for BigInt entries that provably fit, computed in 64 bits.
template <class Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  return a * b;
}
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

namespace detail {

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

// Truncated quotient; remainders keep |r| < |pivot|.
template <class Scalar>
Scalar quotient(const Scalar& a, const Scalar& b) {
  return a / b;
}

template <class Scalar>
void add_row_multiple(Matrix<Scalar>& m, Index dst, Index src,
                      const Scalar& factor) {
  for (Index c = 0; c < m.cols(); ++c) {
    if (m(src, c) != 0) m(dst, c) += factor * m(src, c);
  }
}

template <class Scalar>
void add_col_multiple(Matrix<Scalar>& m, Index dst, Index src,
                      const Scalar& factor) {
  for (Index r = 0; r < m.rows(); ++r) {
    if (m(r, src) != 0) m(r, dst) += factor * m(r, src);
  }
}

// Row operations act on d and u from the left and on u_inv from the right;
// column operations act on d and v from the right and on v_inv from the left.
template <class Scalar>
struct SmithWork {
  SmithForm<Scalar>& f;

  // row dst += k * row src
  void row_add(Index dst, Index src, const Scalar& k) {
    add_row_multiple(f.d, dst, src, k);
    add_row_multiple(f.u, dst, src, k);
    add_col_multiple(f.u_inv, src, dst, Scalar(-k));
  }
  void row_swap(Index a, Index b) {
    if (a == b) return;
    f.d.row(a).swap(f.d.row(b));
    f.u.row(a).swap(f.u.row(b));
    f.u_inv.col(a).swap(f.u_inv.col(b));
  }
  void row_negate(Index a) {
    f.d.row(a) = -f.d.row(a);
    f.u.row(a) = -f.u.row(a);
    f.u_inv.col(a) = -f.u_inv.col(a);
  }
  // col dst += k * col src
  void col_add(Index dst, Index src, const Scalar& k) {
    add_col_multiple(f.d, dst, src, k);
    add_col_multiple(f.v, dst, src, k);
    add_row_multiple(f.v_inv, src, dst, Scalar(-k));
  }
  void col_swap(Index a, Index b) {
    if (a == b) return;
    f.d.col(a).swap(f.d.col(b));
    f.v.col(a).swap(f.v.col(b));
    f.v_inv.row(a).swap(f.v_inv.row(b));
  }
};

}  // namespace detail

template <class Scalar>
SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  SmithForm<Scalar> f;
  f.d = m;
  f.u = Matrix<Scalar>::Identity(rows, rows);
  f.u_inv = Matrix<Scalar>::Identity(rows, rows);
  f.v = Matrix<Scalar>::Identity(cols, cols);
  f.v_inv = Matrix<Scalar>::Identity(cols, cols);
  detail::SmithWork<Scalar> w{f};
  using detail::abs_value;

  Index t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Minimal-absolute-value pivot over the trailing block.
    Index pr = -1, pc = -1;
    Scalar best = 0;
    for (Index c = t; c < cols; ++c) {
      for (Index r = t; r < rows; ++r) {
        if (f.d(r, c) == 0) continue;
        Scalar a = abs_value(f.d(r, c));
        if (pr < 0 || a < best) {
          best = a;
          pr = r;
          pc = c;
          if (best == 1) break;
        }
      }
      if (best == 1) break;
    }
    if (pr < 0) break;
    w.row_swap(t, pr);
    w.col_swap(t, pc);

    for (;;) {
      bool dirty = false;
      for (Index r = t + 1; r < rows; ++r) {
        if (f.d(r, t) == 0) continue;
        Scalar q = detail::quotient(f.d(r, t), f.d(t, t));
        w.row_add(r, t, Scalar(-q));
        if (f.d(r, t) != 0) dirty = true;
      }
      for (Index c = t + 1; c < cols; ++c) {
        if (f.d(t, c) == 0) continue;
        Scalar q = detail::quotient(f.d(t, c), f.d(t, t));
        w.col_add(c, t, Scalar(-q));
        if (f.d(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; promote it.
        Index br = t, bc = t;
        Scalar b = abs_value(f.d(t, t));
        for (Index r = t + 1; r < rows; ++r) {
          if (f.d(r, t) != 0 && abs_value(f.d(r, t)) < b) {
            b = abs_value(f.d(r, t));
            br = r;
            bc = t;
          }
        }
        for (Index c = t + 1; c < cols; ++c) {
          if (f.d(t, c) != 0 && abs_value(f.d(t, c)) < b) {
            b = abs_value(f.d(t, c));
            br = t;
            bc = c;
          }
        }
        w.row_swap(t, br);
        w.col_swap(t, bc);
        continue;
      }
      // Row and column cleared; enforce divisibility of the trailing block.
      Index bad = -1;
      for (Index r = t + 1; r < rows && bad < 0; ++r) {
        for (Index c = t + 1; c < cols; ++c) {
          if (f.d(r, c) != 0 && f.d(r, c) % f.d(t, t) != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad < 0) break;
      w.row_add(t, bad, Scalar(1));
    }
    if (f.d(t, t) < 0) w.row_negate(t);
  }
  f.rank = t;
  return f;
}

/// Z-basis (as columns) of {x : m x = 0}.
template <class Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& m) {
  auto f = smith_normal_form(m);
  return f.v.rightCols(m.cols() - f.rank);
}

/// Z-basis (as columns) of the column span of m.
template <class Scalar>
Matrix<Scalar> image_basis(const Matrix<Scalar>& m) {
  auto f = smith_normal_form(m);
  Matrix<Scalar> out(m.rows(), f.rank);
  for (Index i = 0; i < f.rank; ++i) out.col(i) = f.u_inv.col(i) * f.d(i, i);
  return out;
}

template <class Scalar>
Index rank(const Matrix<Scalar>& m) {
  return smith_normal_form(m).rank;
}

/// Invariants of Z^rows / im(m).
template <class Scalar>
AbelianInvariants cokernel_invariants(const Matrix<Scalar>& m) {
  auto f = smith_normal_form(m);
  AbelianInvariants inv;
  inv.free_rank = static_cast<std::size_t>(m.rows() - f.rank);
  for (Index i = 0; i < f.rank; ++i) {
    if (f.d(i, i) != 1) inv.torsion.emplace_back(f.d(i, i));
  }
  return inv;
}

/// Some integer X with m X = b (column by column), if one exists.
template <class Scalar>
std::optional<Matrix<Scalar>> solve_integer(const SmithForm<Scalar>& f,
                                            const Matrix<Scalar>& b) {
  Matrix<Scalar> y = multiply(f.u, b);
  Matrix<Scalar> x = Matrix<Scalar>::Zero(f.v.rows(), b.cols());
  for (Index c = 0; c < b.cols(); ++c) {
    for (Index i = 0; i < y.rows(); ++i) {
      if (i < f.rank) {
        if (y(i, c) % f.d(i, i) != 0) return std::nullopt;
        x(i, c) = y(i, c) / f.d(i, i);
      } else if (y(i, c) != 0) {
        return std::nullopt;
      }
    }
  }
  return multiply(f.v, x);
}

template <class Scalar>
std::optional<Matrix<Scalar>> solve_integer(const Matrix<Scalar>& m,
                                            const Matrix<Scalar>& b) {
  return solve_integer(smith_normal_form(m), b);
}

template <class Scalar>
std::optional<Vector<Scalar>> solve_integer(const Matrix<Scalar>& m,
                                            const Vector<Scalar>& b) {
  auto x = solve_integer(m, Matrix<Scalar>(b));
  if (!x) return std::nullopt;
  return Vector<Scalar>(x->col(0));
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <class Scalar>
Scalar determinant(const Matrix<Scalar>& m) {
  const Index n = m.rows();
  if (n != m.cols()) return Scalar(0);
  if (n == 0) return Scalar(1);
  Matrix<Scalar> a = m;
  Scalar sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return Scalar(0);
      a.row(k).swap(a.row(s));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// True when every column of b lies in the column span of m.
template <class Scalar>
bool columns_in_span(const Matrix<Scalar>& m, const Matrix<Scalar>& b) {
  if (b.cols() == 0) return true;
  if (m.cols() == 0) return b.isZero();
  return solve_integer(m, b).has_value();
}

/// Horizontal concatenation [a | b]; rows must agree.
template <class Scalar>
Matrix<Scalar> hcat(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

/// Block diagonal sum.
template <class Scalar>
Matrix<Scalar> block_diag(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows() + b.rows(),
                                            a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <class Scalar>
Matrix<Scalar> kronecker(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows() * b.rows(),
                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Build an IntMatrix from nested initializer rows.
IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);
IntMatrix int_matrix(Index rows, Index cols, const std::vector<long>& entries);

}  // namespace bredon
