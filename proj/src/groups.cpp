#include "bredon/groups.hpp"

#include "bredon/error.hpp"
#include "modular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>

namespace bredon {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup() {
  auto d = std::make_shared<Data>();
  d->order = 1;
  d->mul = {0};
  d->inv = {0};
  d->labels = {"e"};
  d->exponent = 1;
  data_ = std::move(d);
}

FiniteGroup FiniteGroup::from_table(std::size_t order, std::vector<int> mul,
                                    std::vector<std::string> labels) {
  if (order == 0) throw ValidationError("group order must be positive");
  if (mul.size() != order * order)
    throw ValidationError("multiplication table has wrong size");
  const int n = static_cast<int>(order);
  for (int v : mul)
    if (v < 0 || v >= n)
      throw ValidationError("multiplication table entry out of range");
  auto at = [&](int a, int b) {
    return mul[static_cast<std::size_t>(a) * order + static_cast<std::size_t>(b)];
  };
  for (int a = 0; a < n; ++a) {
    if (at(0, a) != a || at(a, 0) != a)
      throw ValidationError("element 0 is not the identity (element " +
                            std::to_string(a) + ")");
  }
  std::vector<int> inv(order, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (at(a, b) == 0) {
        if (at(b, a) != 0)
          throw ValidationError("left and right inverses differ for element " +
                                std::to_string(a));
        inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inv[static_cast<std::size_t>(a)] < 0)
      throw ValidationError("element " + std::to_string(a) + " has no inverse");
  }
  auto check_triple = [&](int a, int b, int c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      throw ValidationError("multiplication is not associative at (" +
                            std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
  };
  if (order <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < 200000; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }

  auto d = std::make_shared<Data>();
  d->order = order;
  d->mul = std::move(mul);
  d->inv = std::move(inv);
  if (labels.empty()) {
    labels.reserve(order);
    for (int a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  }
  if (labels.size() != order) throw ValidationError("label count mismatch");
  d->labels = std::move(labels);
  FiniteGroup g;
  g.data_ = d;
  int e = 1;
  for (int a = 0; a < n; ++a) e = std::lcm(e, g.element_order(a));
  d->exponent = e;
  return g;
}

int FiniteGroup::power(int g, long k) const {
  if (k < 0) return power(inv(g), -k);
  int r = identity;
  int b = g;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  int x = g;
  while (x != identity) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  const int n = static_cast<int>(order());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup trivial_group() { return FiniteGroup(); }

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be positive");
  const auto order = static_cast<std::size_t>(n);
  std::vector<int> mul(order * order);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
  }
  return FiniteGroup::from_table(order, std::move(mul), std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int ng = static_cast<int>(g.order());
  const int nh = static_cast<int>(h.order());
  const auto order = g.order() * h.order();
  std::vector<int> mul(order * order);
  std::vector<std::string> labels;
  for (int a = 0; a < ng * nh; ++a) {
    labels.push_back("(" + g.label(a / nh) + "," + h.label(a % nh) + ")");
    for (int b = 0; b < ng * nh; ++b) {
      int x = g.mul(a / nh, b / nh);
      int y = h.mul(a % nh, b % nh);
      mul[static_cast<std::size_t>(a) * order + static_cast<std::size_t>(b)] = x * nh + y;
    }
  }
  return FiniteGroup::from_table(order, std::move(mul), std::move(labels));
}

FiniteGroup semidirect_product(const FiniteGroup& normal,
                               const FiniteGroup& acting,
                               const std::vector<std::vector<int>>& action) {
  const int na = static_cast<int>(normal.order());
  const int nb = static_cast<int>(acting.order());
  if (static_cast<int>(action.size()) != nb)
    throw ValidationError("semidirect action needs one map per acting element");
  for (int b = 0; b < nb; ++b) {
    const auto& phi = action[static_cast<std::size_t>(b)];
    if (static_cast<int>(phi.size()) != na)
      throw ValidationError("semidirect action map has wrong length");
    std::vector<bool> hit(static_cast<std::size_t>(na), false);
    for (int a = 0; a < na; ++a) {
      int v = phi[static_cast<std::size_t>(a)];
      if (v < 0 || v >= na || hit[static_cast<std::size_t>(v)])
        throw ValidationError("semidirect action is not a bijection");
      hit[static_cast<std::size_t>(v)] = true;
      for (int a2 = 0; a2 < na; ++a2) {
        if (phi[static_cast<std::size_t>(normal.mul(a, a2))] !=
            normal.mul(v, phi[static_cast<std::size_t>(a2)]))
          throw ValidationError("semidirect action is not by automorphisms");
      }
    }
    for (int b2 = 0; b2 < nb; ++b2) {
      const auto& psi = action[static_cast<std::size_t>(b2)];
      const auto& comp = action[static_cast<std::size_t>(acting.mul(b, b2))];
      for (int a = 0; a < na; ++a) {
        if (comp[static_cast<std::size_t>(a)] !=
            phi[static_cast<std::size_t>(psi[static_cast<std::size_t>(a)])])
          throw ValidationError("semidirect action is not a homomorphism");
      }
    }
  }
  const auto order = normal.order() * acting.order();
  std::vector<int> mul(order * order);
  std::vector<std::string> labels;
  for (int x = 0; x < na * nb; ++x) {
    const int a = x % na, b = x / na;
    labels.push_back("(" + normal.label(a) + "," + acting.label(b) + ")");
    for (int y = 0; y < na * nb; ++y) {
      const int a2 = y % na, b2 = y / na;
      const int ra = normal.mul(a, action[static_cast<std::size_t>(b)][static_cast<std::size_t>(a2)]);
      const int rb = acting.mul(b, b2);
      mul[static_cast<std::size_t>(x) * order + static_cast<std::size_t>(y)] = rb * na + ra;
    }
  }
  return FiniteGroup::from_table(order, std::move(mul), std::move(labels));
}

FiniteGroup dihedral_group(int n) {
  auto rot = cyclic_group(n);
  auto flip = cyclic_group(2);
  std::vector<std::vector<int>> action(2);
  for (int a = 0; a < n; ++a) {
    action[0].push_back(a);
    action[1].push_back((n - a) % n);
  }
  return semidirect_product(rot, flip, action);
}

FiniteGroup elementary_abelian_2(int rank) {
  FiniteGroup g = trivial_group();
  for (int i = 0; i < rank; ++i) g = direct_product(g, cyclic_group(2));
  return g;
}

FiniteGroup build_group(const GroupSpec& spec) {
  using K = GroupSpec::Kind;
  switch (spec.kind) {
    case K::Cyclic:
      return cyclic_group(spec.n);
    case K::Dihedral:
      return dihedral_group(spec.n);
    case K::ElementaryAbelian2:
      return elementary_abelian_2(spec.n);
    case K::Product: {
      if (spec.factors.size() != 2)
        throw ValidationError("direct product needs exactly two factors");
      return direct_product(build_group(spec.factors[0]),
                            build_group(spec.factors[1]));
    }
    case K::Semidirect: {
      if (spec.factors.size() != 2)
        throw ValidationError("semidirect product needs normal and acting groups");
      return semidirect_product(build_group(spec.factors[0]),
                                build_group(spec.factors[1]), spec.action);
    }
    case K::Table: {
      const auto n = spec.table.size();
      std::vector<int> mul;
      mul.reserve(n * n);
      for (const auto& row : spec.table) {
        if (row.size() != n) throw ValidationError("table is not square");
        mul.insert(mul.end(), row.begin(), row.end());
      }
      return FiniteGroup::from_table(n, std::move(mul));
    }
  }
  throw ValidationError("unknown group constructor");
}

// ---------------------------------------------------------------------------
// Homomorphisms

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const int ns = static_cast<int>(source_.order());
  const int nt = static_cast<int>(target_.order());
  if (static_cast<int>(images_.size()) != ns)
    throw ValidationError("homomorphism needs one image per source element");
  for (int v : images_)
    if (v < 0 || v >= nt) throw ValidationError("homomorphism image out of range");
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b)
      if ((*this)(source_.mul(a, b)) != target_.mul((*this)(a), (*this)(b)))
        throw ValidationError("map is not a homomorphism at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<int> img(g.order());
  std::iota(img.begin(), img.end(), 0);
  return GroupHom(g, g, std::move(img));
}

GroupHom GroupHom::trivial(const FiniteGroup& source, const FiniteGroup& target) {
  return GroupHom(source, target, std::vector<int>(source.order(), 0));
}

bool GroupHom::is_injective() const {
  for (std::size_t a = 1; a < images_.size(); ++a)
    if (images_[a] == 0) return false;
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<bool> hit(target_.order(), false);
  for (int v : images_) hit[static_cast<std::size_t>(v)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (!(inner.target() == outer.source()))
    throw ValidationError("composition of non-composable homomorphisms");
  std::vector<int> img;
  img.reserve(inner.source().order());
  for (int v : inner.images()) img.push_back(outer(v));
  return GroupHom(inner.source(), outer.target(), std::move(img));
}

namespace {

// Smallest-index generators, each outside the subgroup generated so far.
std::vector<int> greedy_generators(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  std::vector<int> gens;
  for (int x = 1; x < n; ++x) {
    if (in[static_cast<std::size_t>(x)]) continue;
    gens.push_back(x);
    std::vector<int> members;
    for (int y = 0; y < n; ++y)
      if (in[static_cast<std::size_t>(y)]) members.push_back(y);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int s : gens) {
        int z = g.mul(members[i], s);
        if (!in[static_cast<std::size_t>(z)]) {
          in[static_cast<std::size_t>(z)] = true;
          members.push_back(z);
        }
      }
  }
  return gens;
}

}  // namespace

std::vector<GroupHom> all_homomorphisms(const FiniteGroup& source, const FiniteGroup& target) {
  const auto gens = greedy_generators(source);
  const int ns = static_cast<int>(source.order());
  const int nt = static_cast<int>(target.order());
  std::vector<GroupHom> out;
  std::vector<int> choice(gens.size(), 0);
  while (true) {
    // extend along words in the generators; reject on the first conflict
    std::vector<int> img(source.order(), -1);
    img[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i)
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        int y = source.mul(queue[i], gens[k]);
        int v = target.mul(img[static_cast<std::size_t>(queue[i])], choice[k]);
        int& slot = img[static_cast<std::size_t>(y)];
        if (slot < 0) {
          slot = v;
          queue.push_back(y);
        } else if (slot != v) {
          ok = false;
        }
      }
    if (ok) {
      for (int a = 0; a < ns && ok; ++a)
        for (int b = 0; b < ns && ok; ++b)
          if (img[static_cast<std::size_t>(source.mul(a, b))] !=
              target.mul(img[static_cast<std::size_t>(a)], img[static_cast<std::size_t>(b)]))
            ok = false;
      if (ok) out.emplace_back(source, target, std::move(img));
    }
    std::size_t k = gens.size();
    while (k > 0 && ++choice[k - 1] == nt) choice[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

Pullback pullback_subgroup(const GroupHom& f1, const GroupHom& f2) {
  if (!(f1.target() == f2.target()))
    throw ValidationError("pullback of homomorphisms with different targets");
  const auto& p = f1.source();
  const auto& q = f2.source();
  Pullback out;
  std::vector<int> index(p.order() * q.order(), -1);
  std::vector<std::string> labels;
  for (int a = 0; a < static_cast<int>(p.order()); ++a) {
    for (int b = 0; b < static_cast<int>(q.order()); ++b) {
      if (f1(a) != f2(b)) continue;
      index[static_cast<std::size_t>(a) * q.order() + static_cast<std::size_t>(b)] =
          static_cast<int>(out.pairs.size());
      out.pairs.emplace_back(a, b);
      labels.push_back("(" + p.label(a) + "," + q.label(b) + ")");
    }
  }
  const auto n = out.pairs.size();
  std::vector<int> mul(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      int a = p.mul(out.pairs[x].first, out.pairs[y].first);
      int b = q.mul(out.pairs[x].second, out.pairs[y].second);
      mul[x * n + y] = index[static_cast<std::size_t>(a) * q.order() + static_cast<std::size_t>(b)];
    }
  }
  out.group = FiniteGroup::from_table(n, std::move(mul), std::move(labels));
  std::vector<int> i1, i2;
  for (const auto& [a, b] : out.pairs) {
    i1.push_back(a);
    i2.push_back(b);
  }
  out.p1 = GroupHom(out.group, p, std::move(i1));
  out.p2 = GroupHom(out.group, q, std::move(i2));
  return out;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  ConjugacyClasses cc;
  cc.class_of.assign(g.order(), -1);
  for (int x = 0; x < n; ++x) {
    if (cc.class_of[static_cast<std::size_t>(x)] >= 0) continue;
    const int c = static_cast<int>(cc.members.size());
    std::vector<int> members;
    for (int y = 0; y < n; ++y) {
      int z = g.conjugate(x, y);
      if (cc.class_of[static_cast<std::size_t>(z)] < 0) {
        cc.class_of[static_cast<std::size_t>(z)] = c;
        members.push_back(z);
      }
    }
    std::sort(members.begin(), members.end());
    cc.members.push_back(std::move(members));
    cc.representatives.push_back(x);
  }
  return cc;
}

// ---------------------------------------------------------------------------
// Character tables

CharacterTable::CharacterTable(FiniteGroup group, ConjugacyClasses classes,
                               int level, std::vector<ClassFunction> chars)
    : group_(std::move(group)), classes_(std::move(classes)), level_(level),
      chars_(std::move(chars)) {
  for (const auto& chi : chars_) {
    auto d = chi[0].rational_value();
    if (!d || denominator(*d) != 1)
      throw VerificationError("character degree is not an integer");
    degrees_.push_back(static_cast<int>(numerator(*d)));
  }
}

Cyclotomic CharacterTable::inner_product(const ClassFunction& a,
                                         const ClassFunction& b) const {
  Cyclotomic sum(level_);
  for (std::size_t c = 0; c < classes_.count(); ++c) {
    Cyclotomic term = a[c] * b[c].conj();
    term *= BigRational(static_cast<long>(classes_.size(c)));
    sum += term;
  }
  sum *= BigRational(1, static_cast<long>(group_.order()));
  return sum;
}

std::vector<BigInt> CharacterTable::decompose(const ClassFunction& f) const {
  std::vector<BigInt> out;
  out.reserve(chars_.size());
  for (const auto& chi : chars_) {
    auto v = inner_product(f, chi).rational_value();
    if (!v || denominator(*v) != 1)
      throw VerificationError("non-integral multiplicity in character decomposition");
    out.push_back(numerator(*v));
  }
  return out;
}

ClassFunction CharacterTable::pull_back(const CharacterTable& other,
                                        std::size_t chi,
                                        const GroupHom& f) const {
  ClassFunction out;
  out.reserve(classes_.count());
  for (int rep : classes_.representatives) out.push_back(other.value(chi, f(rep)));
  return out;
}

ClassFunction CharacterTable::product(const ClassFunction& a,
                                      const ClassFunction& b) const {
  ClassFunction out;
  out.reserve(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out.push_back(a[c] * b[c]);
  return out;
}

namespace {

using i64 = std::int64_t;

using modular::is_prime;
using modular::primitive_root;
i64 mod_pow(i64 b, i64 e, i64 p) { return modular::pow_mod(b, e, p); }
i64 mod_inv(i64 a, i64 p) { return modular::inv_mod(a, p); }

using ModMatrix = std::vector<std::vector<i64>>;  // row-major, rows x cols

// Basis of the null space of a (rows x cols) matrix over F_p, as columns
// stored in a vector of vectors (each of length cols).
std::vector<std::vector<i64>> null_space(ModMatrix a, std::size_t cols, i64 p) {
  const std::size_t rows = a.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t s = r;
    while (s < rows && a[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(a[s], a[r]);
    i64 iv = mod_inv(a[r][c], p);
    for (auto& v : a[r]) v = v * iv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      i64 f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<i64>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<i64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[static_cast<std::size_t>(pivot_col[i])] = (p - a[i][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

struct DixonAttempt {
  bool ok = false;
  std::vector<ClassFunction> chars;
  std::vector<std::vector<i64>> mod_values;
};

DixonAttempt dixon(const FiniteGroup& g, const ConjugacyClasses& cc, i64 p) {
  DixonAttempt out;
  const std::size_t k = cc.count();
  const i64 order = static_cast<i64>(g.order());
  const int e = g.exponent();

  // a[r][s][t] = #{x in C_r : x^-1 g_t in C_s}
  std::vector<ModMatrix> m(k, ModMatrix(k, std::vector<i64>(k, 0)));
  for (std::size_t t = 0; t < k; ++t) {
    int z = cc.representatives[t];
    for (std::size_t r = 0; r < k; ++r) {
      for (int x : cc.members[r]) {
        int s = cc.class_of[static_cast<std::size_t>(g.mul(g.inv(x), z))];
        m[r][static_cast<std::size_t>(s)][t] += 1;
      }
    }
  }

  // Split F_p^k into common eigenspaces.  A subspace is a list of basis
  // vectors of length k.
  std::vector<std::vector<std::vector<i64>>> todo;
  {
    std::vector<std::vector<i64>> full;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<i64> v(k, 0);
      v[i] = 1;
      full.push_back(std::move(v));
    }
    todo.push_back(std::move(full));
  }
  std::vector<std::vector<i64>> lines;
  while (!todo.empty()) {
    auto space = std::move(todo.back());
    todo.pop_back();
    if (space.size() == 1) {
      lines.push_back(space[0]);
      continue;
    }
    bool split = false;
    for (std::size_t r = 1; r < k && !split; ++r) {
      // image of each basis vector under M_r
      std::vector<std::vector<i64>> images;
      for (const auto& b : space) {
        std::vector<i64> w(k, 0);
        for (std::size_t s = 0; s < k; ++s) {
          i64 acc = 0;
          for (std::size_t t = 0; t < k; ++t) acc = (acc + m[r][s][t] % p * b[t]) % p;
          w[s] = acc;
        }
        images.push_back(std::move(w));
      }
      std::vector<std::vector<std::vector<i64>>> parts;
      std::size_t total = 0;
      for (i64 lambda = 0; lambda < p && total < space.size(); ++lambda) {
        // (M_r - lambda) B c = 0
        ModMatrix a(k, std::vector<i64>(space.size(), 0));
        for (std::size_t j = 0; j < space.size(); ++j)
          for (std::size_t s = 0; s < k; ++s)
            a[s][j] = ((images[j][s] - lambda * space[j][s]) % p + p) % p;
        auto ns = null_space(std::move(a), space.size(), p);
        if (ns.empty()) continue;
        if (ns.size() == space.size()) break;  // scalar on this subspace
        std::vector<std::vector<i64>> sub;
        for (const auto& c : ns) {
          std::vector<i64> v(k, 0);
          for (std::size_t j = 0; j < space.size(); ++j)
            for (std::size_t s = 0; s < k; ++s) v[s] = (v[s] + c[j] * space[j][s]) % p;
          sub.push_back(std::move(v));
        }
        total += sub.size();
        parts.push_back(std::move(sub));
      }
      if (parts.empty()) continue;
      if (total != space.size()) return out;  // not diagonalizable mod p
      for (auto& part : parts) todo.push_back(std::move(part));
      split = true;
    }
    if (!split) return out;  // could not separate characters with this prime
  }
  if (lines.size() != k) return out;

  std::vector<i64> class_inv(k);
  for (std::size_t t = 0; t < k; ++t)
    class_inv[t] = cc.class_of[static_cast<std::size_t>(g.inv(cc.representatives[t]))];

  // power map: class of g_t^j
  std::vector<std::vector<int>> power_class(k, std::vector<int>(static_cast<std::size_t>(e)));
  for (std::size_t t = 0; t < k; ++t)
    for (int j = 0; j < e; ++j)
      power_class[t][static_cast<std::size_t>(j)] =
          cc.class_of[static_cast<std::size_t>(g.power(cc.representatives[t], j))];

  const i64 z = mod_pow(primitive_root(p), (p - 1) / e, p);
  const i64 e_inv = mod_inv(e, p);
  const i64 max_degree = static_cast<i64>(std::floor(std::sqrt(static_cast<double>(order)))) + 1;

  for (auto line : lines) {
    // normalise omega(identity class) = 1
    i64 s0 = line[0];
    if (s0 == 0) return out;
    i64 s0i = mod_inv(s0, p);
    for (auto& v : line) v = v * s0i % p;
    // d^2 = |G| / sum_t omega_t omega_t' / h_t
    i64 sum = 0;
    for (std::size_t t = 0; t < k; ++t) {
      i64 h = static_cast<i64>(cc.size(t));
      sum = (sum + line[t] * line[static_cast<std::size_t>(class_inv[t])] % p * mod_inv(h % p, p)) % p;
    }
    if (sum == 0) return out;
    i64 d2 = order % p * mod_inv(sum, p) % p;
    i64 degree = -1;
    for (i64 d = 1; d <= max_degree; ++d)
      if (d * d % p == d2 && d * d <= order) degree = d;
    if (degree < 0) return out;
    std::vector<i64> vals(k);
    for (std::size_t t = 0; t < k; ++t) {
      i64 h = static_cast<i64>(cc.size(t));
      vals[t] = line[t] * (degree % p) % p * mod_inv(h % p, p) % p;
    }
    ClassFunction chi;
    for (std::size_t t = 0; t < k; ++t) {
      Cyclotomic value(e);
      for (int kk = 0; kk < e; ++kk) {
        i64 acc = 0;
        for (int j = 0; j < e; ++j) {
          i64 zz = mod_pow(z, static_cast<i64>((static_cast<long>(p - 1) * e - static_cast<long>(j) * kk) % (p - 1)), p);
          acc = (acc + vals[static_cast<std::size_t>(power_class[t][static_cast<std::size_t>(j)])] * zz) % p;
        }
        i64 mult = acc * e_inv % p;
        if (mult > degree) return out;
        if (mult != 0) value += Cyclotomic::root(e, kk) * BigRational(mult);
      }
      chi.push_back(std::move(value));
    }
    out.chars.push_back(std::move(chi));
    out.mod_values.push_back(std::move(vals));
  }
  out.ok = true;
  return out;
}

// Abelian groups: the irreducibles are the homomorphisms to C_e, with the
// same residues Dixon's method would produce for p.
DixonAttempt linear_characters(const FiniteGroup& g, const ConjugacyClasses& cc, i64 p) {
  DixonAttempt out;
  const int e = g.exponent();
  const i64 z = mod_pow(primitive_root(p), (p - 1) / e, p);
  for (const auto& f : all_homomorphisms(g, cyclic_group(e))) {
    ClassFunction chi;
    std::vector<i64> vals;
    for (int rep : cc.representatives) {
      chi.push_back(Cyclotomic::root(e, f(rep)));
      vals.push_back(mod_pow(z, f(rep), p));
    }
    out.chars.push_back(std::move(chi));
    out.mod_values.push_back(std::move(vals));
  }
  out.ok = out.chars.size() == cc.count();
  return out;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g, std::size_t order_bound) {
  return character_table(g, order_bound, g.is_abelian());
}

CharacterTable character_table(const FiniteGroup& g, std::size_t order_bound, bool linear_shortcut) {
  if (linear_shortcut && !g.is_abelian()) throw ValidationError("linear characters need an abelian group");
  if (g.order() > order_bound)
    throw ValidationError("group order " + std::to_string(g.order()) +
                          " exceeds the character-table bound " +
                          std::to_string(order_bound));
  auto cc = conjugacy_classes(g);
  const int e = g.exponent();
  const i64 order = static_cast<i64>(g.order());
  const double lower = 2.0 * std::sqrt(static_cast<double>(order));

  for (i64 p = e + 1;; p += e) {
    if (p <= lower || !is_prime(p) || order % p == 0) continue;
    auto attempt = linear_shortcut ? linear_characters(g, cc, p) : dixon(g, cc, p);
    if (!attempt.ok) {
      if (p > 100000) break;
      continue;
    }
    // Order rows: degree, trivial first, then by residues for determinism.
    std::vector<std::size_t> idx(attempt.chars.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto degree_of = [&](std::size_t i) {
      return numerator(*attempt.chars[i][0].rational_value());
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      auto da = degree_of(a), db = degree_of(b);
      if (da != db) return da < db;
      return attempt.mod_values[a] < attempt.mod_values[b];
    });
    // the trivial character has residue 1 everywhere; move it to the front
    std::vector<i64> ones(cc.count(), 1);
    auto triv = std::find_if(idx.begin(), idx.end(), [&](std::size_t i) {
      return attempt.mod_values[i] == ones;
    });
    std::rotate(idx.begin(), triv, triv + 1);
    std::vector<ClassFunction> chars;
    for (auto i : idx) chars.push_back(std::move(attempt.chars[i]));
    return CharacterTable(g, std::move(cc), e, std::move(chars));
  }
  throw VerificationError("Dixon's method failed to find a splitting prime");
}

IntMatrix ring_hom_matrix(const GroupHom& f, const CharacterTable& t_target,
                          const CharacterTable& t_source) {
  if (!(f.target() == t_target.group()) || !(f.source() == t_source.group()))
    throw ValidationError("character tables do not match the homomorphism");
  IntMatrix m(static_cast<Index>(t_source.size()), static_cast<Index>(t_target.size()));
  const modular::CharacterFrame frame(t_source, t_source.characters(),
                                     modular::max_degree(t_target.characters()),
                                     t_target.level());
  for (std::size_t j = 0; j < t_target.size(); ++j) {
    auto coeffs = frame(t_source.pull_back(t_target, j, f)).coords;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      m(static_cast<Index>(i), static_cast<Index>(j)) = coeffs[i];
  }
  return m;
}

IntMatrix restriction_matrix(const GroupHom& incl, const CharacterTable& t_g,
                             const CharacterTable& t_h) {
  if (!incl.is_injective())
    throw ValidationError("restriction along a non-injective homomorphism");
  return ring_hom_matrix(incl, t_g, t_h);
}

}  // namespace bredon
