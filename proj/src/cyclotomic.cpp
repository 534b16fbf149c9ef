#include "bredon/cyclotomic.hpp"

#include "bredon/error.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace bredon {

namespace {

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a,
                             const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic divisor.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num,
                                   const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> q(num.size() - dn, BigInt(0));
  for (std::size_t k = num.size(); k-- > dn;) {
    BigInt c = num[k];
    q[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return q;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<BigInt>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d
  std::vector<BigInt> p(static_cast<std::size_t>(n) + 1, BigInt(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  std::vector<BigInt> den{BigInt(1)};
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  }
  auto phi = poly_div_exact(p, den);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(phi)).first->second;
}

Cyclotomic::Cyclotomic(int level)
    : level_(level), coeffs_(static_cast<std::size_t>(level), BigRational(0)) {
  if (level < 1) throw ValidationError("cyclotomic level must be positive");
}

Cyclotomic Cyclotomic::root(int level, long k) {
  Cyclotomic c(level);
  long r = ((k % level) + level) % level;
  c.coeffs_[static_cast<std::size_t>(r)] = 1;
  return c;
}

Cyclotomic Cyclotomic::constant(int level, const BigRational& v) {
  Cyclotomic c(level);
  c.coeffs_[0] = v;
  return c;
}

Cyclotomic Cyclotomic::lifted(int new_level) const {
  if (new_level == level_) return *this;
  if (new_level % level_ != 0)
    throw ValidationError("cyclotomic lift to a non-multiple level");
  Cyclotomic out(new_level);
  const int step = new_level / level_;
  for (int k = 0; k < level_; ++k)
    out.coeffs_[static_cast<std::size_t>(k * step)] = coeffs_[k];
  return out;
}

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic out(level_);
  for (int k = 0; k < level_; ++k)
    out.coeffs_[static_cast<std::size_t>((level_ - k) % level_)] = coeffs_[k];
  return out;
}

std::vector<BigRational> Cyclotomic::reduced() const {
  const auto& phi = cyclotomic_polynomial(level_);
  const std::size_t deg = phi.size() - 1;
  std::vector<BigRational> r = coeffs_;
  for (std::size_t k = r.size(); k-- > deg;) {
    if (r[k] == 0) continue;
    BigRational c = r[k];
    for (std::size_t j = 0; j <= deg; ++j)
      r[k - deg + j] -= c * BigRational(phi[j]);
  }
  r.resize(deg);
  return r;
}

std::optional<BigRational> Cyclotomic::rational_value() const {
  auto r = reduced();
  for (std::size_t k = 1; k < r.size(); ++k)
    if (r[k] != 0) return std::nullopt;
  return r.empty() ? BigRational(0) : r[0];
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : reduced())
    if (c != 0) return false;
  return true;
}

namespace {
int common_level(int a, int b) { return std::lcm(a, b); }
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.level_ != level_) {
    int l = common_level(level_, o.level_);
    *this = lifted(l);
    return *this += o.lifted(l);
  }
  for (int k = 0; k < level_; ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.level_ != level_) {
    int l = common_level(level_, o.level_);
    *this = lifted(l);
    return *this -= o.lifted(l);
  }
  for (int k = 0; k < level_; ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const BigRational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.level_ != b.level_) {
    int l = common_level(a.level_, b.level_);
    return a.lifted(l) * b.lifted(l);
  }
  Cyclotomic out(a.level_);
  const int n = a.level_;
  for (int i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      out.coeffs_[static_cast<std::size_t>((i + j) % n)] +=
          a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return (a - b).is_zero();
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < level_; ++k) {
    const auto& c = coeffs_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    BigRational a = c < 0 ? BigRational(-c) : c;
    if (k == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "z" << level_;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace bredon
