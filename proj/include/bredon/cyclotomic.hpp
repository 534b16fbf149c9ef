#pragma once

#include "bredon/exactlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bredon {

/// Element of Q[x]/(x^N - 1) with x read as exp(2 pi i / N).
///
/// Ring operations stay in Q[x]/(x^N - 1).  Comparison and rational
/// extraction go through the reduction modulo the N-th cyclotomic
/// polynomial, which is where two representatives of the same complex
/// number agree.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int level);

  static Cyclotomic root(int level, long k);
  static Cyclotomic constant(int level, const BigRational& c);

  int level() const { return level_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  /// Same number at a level that is a multiple of the current one.
  Cyclotomic lifted(int new_level) const;
  /// Complex conjugate: x^k -> x^(N-k).
  Cyclotomic conj() const;

  /// Residue modulo Phi_N, phi(N) coefficients.
  std::vector<BigRational> reduced() const;
  /// The value when it is rational.
  std::optional<BigRational> rational_value() const;
  bool is_zero() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const BigRational& s);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) {
    return a += b;
  }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) {
    return a -= b;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const BigRational& s) {
    return a *= s;
  }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;

 private:
  int level_;
  std::vector<BigRational> coeffs_;
};

/// Integer coefficients of Phi_n, constant term first.
const std::vector<BigInt>& cyclotomic_polynomial(int n);

}  // namespace bredon
