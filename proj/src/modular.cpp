#include "modular.hpp"

#include "bredon/error.hpp"

#include <numeric>

namespace bredon::modular {

i64 pow_mod(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b %= p;
  if (b < 0) b += p;
  for (; e > 0; e >>= 1, b = mul_mod(b, b, p))
    if (e & 1) r = mul_mod(r, b, p);
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 primitive_root(i64 p) {
  std::vector<i64> factors;
  i64 m = p - 1;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) ok = false;
    if (ok) return g;
  }
  return 1;
}

FieldImage::FieldImage(i64 level, i64 lower) : level_(level) {
  p_ = (lower / level + 1) * level + 1;
  while (!is_prime(p_)) p_ += level;
  const i64 w = pow_mod(primitive_root(p_), (p_ - 1) / level, p_);
  powers_.assign(static_cast<std::size_t>(level), 1);
  for (std::size_t e = 1; e < powers_.size(); ++e) powers_[e] = mul_mod(powers_[e - 1], w, p_);
}

i64 FieldImage::operator()(const Cyclotomic& z) const {
  if (level_ % z.level() != 0) throw VerificationError("cyclotomic level outside the field image");
  const i64 step = level_ / z.level();
  i64 acc = 0;
  const auto& c = z.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    BigInt num = numerator(c[k]) % p_, den = denominator(c[k]) % p_;
    if (den == 0) throw VerificationError("denominator vanishes modulo the chosen prime");
    i64 v = num.convert_to<i64>();
    if (v < 0) v += p_;
    v = mul_mod(v, inv_mod(den.convert_to<i64>(), p_), p_);
    acc = (acc + mul_mod(v, powers_[static_cast<std::size_t>(static_cast<i64>(k) * step)], p_)) % p_;
  }
  return acc;
}

namespace {

i64 frame_level(const CharacterTable& t, const std::vector<ClassFunction>& basis, i64 extra) {
  i64 level = std::lcm(static_cast<i64>(t.level()), extra);
  for (const auto& b : basis)
    for (const auto& z : b) level = std::lcm(level, static_cast<i64>(z.level()));
  return level;
}

}  // namespace

CharacterFrame::CharacterFrame(const CharacterTable& t, const std::vector<ClassFunction>& basis,
                               i64 max_degree, i64 extra_level)
    : max_degree_(max_degree),
      img_(frame_level(t, basis, extra_level),
           std::max<i64>(2 * max_degree * max_degree + 2, static_cast<i64>(t.group().order()))) {
  const auto& cc = t.classes();
  const i64 p = img_.prime();
  const i64 inv_order = inv_mod(static_cast<i64>(t.group().order()) % p, p);
  for (std::size_t c = 0; c < cc.count(); ++c)
    weight_.push_back(mul_mod(static_cast<i64>(cc.size(c)) % p, inv_order, p));
  for (const auto& b : basis) {
    std::vector<i64> row;
    for (const auto& z : b) row.push_back(img_(z.conj()));
    basis_conj_.push_back(std::move(row));
  }
}

CharacterCoordinates CharacterFrame::operator()(const ClassFunction& f) const {
  auto deg = f[0].rational_value();
  if (!deg || denominator(*deg) != 1 || *deg < 0)
    throw VerificationError("class function is not a character");
  const i64 d = numerator(*deg).convert_to<i64>();
  if (d > max_degree_) throw VerificationError("character degree exceeds the frame bound");
  const i64 p = img_.prime();
  const std::size_t classes = weight_.size();

  std::vector<i64> fp(classes), fw(classes);
  i64 norm = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    fp[c] = img_(f[c]);
    fw[c] = mul_mod(fp[c], weight_[c], p);
  }
  for (std::size_t c = 0; c < classes; ++c) norm = (norm + mul_mod(fw[c], img_(f[c].conj()), p)) % p;

  CharacterCoordinates out;
  i64 sum_sq = 0;
  for (const auto& b : basis_conj_) {
    i64 m = 0;
    for (std::size_t c = 0; c < classes; ++c) m = (m + mul_mod(fw[c], b[c], p)) % p;
    if (m > d) throw VerificationError("multiplicity exceeds the degree of a character");
    out.coords.emplace_back(m);
    sum_sq += m * m;
  }
  if (norm > d * d) throw VerificationError("norm exceeds the square of the degree");
  out.in_span = norm == sum_sq;
  return out;
}

i64 max_degree(const std::vector<ClassFunction>& chars) {
  i64 best = 1;
  for (const auto& c : chars) {
    auto d = c[0].rational_value();
    if (!d || denominator(*d) != 1) throw VerificationError("class function is not a character");
    best = std::max(best, numerator(*d).convert_to<i64>());
  }
  return best;
}

CharacterCoordinates character_coordinates(const CharacterTable& t,
                                           const std::vector<ClassFunction>& basis,
                                           const ClassFunction& f) {
  i64 extra = 1;
  for (const auto& z : f) extra = std::lcm(extra, static_cast<i64>(z.level()));
  auto deg = f[0].rational_value();
  if (!deg || denominator(*deg) != 1 || *deg < 0)
    throw VerificationError("class function is not a character");
  return CharacterFrame(t, basis, numerator(*deg).convert_to<i64>(), extra)(f);
}

}  // namespace bredon::modular
