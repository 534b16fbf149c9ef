#pragma once

// Prime-field helpers shared by the character-theory code.

#include "bredon/groups.hpp"

#include <cstdint>
#include <vector>

namespace bredon::modular {

using i64 = std::int64_t;

inline i64 mul_mod(i64 a, i64 b, i64 p) {
  return static_cast<i64>(static_cast<__int128>(a) * b % p);
}

i64 pow_mod(i64 b, i64 e, i64 p);
inline i64 inv_mod(i64 a, i64 p) { return pow_mod(a, p - 2, p); }
bool is_prime(i64 n);
i64 primitive_root(i64 p);

/// Ring map Z[zeta_L] -> F_p, zeta_L -> w, for a prime p = 1 mod L.
class FieldImage {
 public:
  /// Smallest such prime above `lower`.
  FieldImage(i64 level, i64 lower);

  i64 prime() const { return p_; }
  i64 level() const { return level_; }
  /// Requires z.level() to divide level() and p-integral coefficients.
  i64 operator()(const Cyclotomic& z) const;
  /// Symmetric lift of a residue to (-p/2, p/2].
  i64 lift(i64 r) const { return r > p_ / 2 ? r - p_ : r; }

 private:
  i64 level_;
  i64 p_;
  std::vector<i64> powers_;
};

struct CharacterCoordinates {
  std::vector<BigInt> coords;
  bool in_span = false;
};

/// Coordinates of genuine characters of t.group() against a fixed orthonormal
/// family of irreducible characters.  Multiplicities lie in [0, deg f] and
/// <f, f> <= (deg f)^2, so with a prime above 2 (max_degree)^2 they are read
/// off exactly from residues, and f lies in the span iff <f, f> = sum m_i^2.
/// Values of f may live at any level dividing lcm(t.level(), extra_level).
class CharacterFrame {
 public:
  CharacterFrame(const CharacterTable& t, const std::vector<ClassFunction>& basis,
                 i64 max_degree, i64 extra_level = 1);

  CharacterCoordinates operator()(const ClassFunction& f) const;

 private:
  i64 max_degree_;
  FieldImage img_;
  std::vector<i64> weight_;                 // |class| / |G|
  std::vector<std::vector<i64>> basis_conj_;  // conj(b) per class
};

/// Largest degree in a family of characters.
i64 max_degree(const std::vector<ClassFunction>& chars);

CharacterCoordinates character_coordinates(const CharacterTable& t,
                                           const std::vector<ClassFunction>& basis,
                                           const ClassFunction& f);

}  // namespace bredon::modular
