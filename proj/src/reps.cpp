#include "bredon/reps.hpp"
#include "bredon/rmod.hpp"

#include "bredon/error.hpp"
#include "modular.hpp"

#include <map>
#include <numeric>
#include <mutex>

namespace bredon {

namespace {

using modular::i64;
using modular::mul_mod;

}  // namespace

// The structure constant c_ij^k is an integer in [0, d_i d_j]; it is computed
// as an inner product in F_p through zeta -> w, with p > |G|^2 so the residue
// determines it.
std::shared_ptr<const RepRingData> rep_ring(const FiniteGroup& g) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::shared_ptr<const RepRingData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.table());
    if (it != cache.end()) return it->second;
  }
  auto table = character_table(g);
  const std::size_t k = table.size();
  const auto& cc = table.classes();
  const i64 level = table.level();
  const i64 order = static_cast<i64>(g.order());
  const modular::FieldImage img(level, order * order);
  const i64 p = img.prime();

  std::vector<std::vector<i64>> val(k), conj_weighted(k);
  const i64 inv_order = modular::inv_mod(order % p, p);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < cc.count(); ++c) {
      const auto& z = table.character(i)[c];
      val[i].push_back(img(z));
      conj_weighted[i].push_back(mul_mod(mul_mod(img(z.conj()),
                                                 static_cast<i64>(cc.size(c)), p),
                                         inv_order, p));
    }

  std::vector<IntMatrix> mult(k, IntMatrix::Zero(static_cast<Index>(k), static_cast<Index>(k)));
  std::vector<i64> prod(cc.count());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      for (std::size_t c = 0; c < cc.count(); ++c) prod[c] = mul_mod(val[i][c], val[j][c], p);
      i64 dim_check = 0;
      for (std::size_t l = 0; l < k; ++l) {
        i64 s = 0;
        for (std::size_t c = 0; c < cc.count(); ++c) s = (s + mul_mod(prod[c], conj_weighted[l][c], p)) % p;
        if (s > static_cast<i64>(table.degree(i)) * table.degree(j))
          throw VerificationError("structure constant out of range");
        mult[i](static_cast<Index>(l), static_cast<Index>(j)) = s;
        mult[j](static_cast<Index>(l), static_cast<Index>(i)) = s;
        dim_check += s * table.degree(l);
      }
      if (dim_check != static_cast<i64>(table.degree(i)) * table.degree(j))
        throw VerificationError("structure constants do not preserve degrees");
    }
  }
  auto data = std::make_shared<const RepRingData>(RepRingData{std::move(table), std::move(mult)});
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(g.table(), std::move(data)).first->second;
}

IntMatrix ring_hom_from_group_hom(const GroupHom& f) {
  auto tg = rep_ring(f.target());
  auto th = rep_ring(f.source());
  return ring_hom_matrix(f, tg->table, th->table);
}

// ---------------------------------------------------------------------------
// Cocycles

Cocycle::Cocycle(FiniteGroup group, int modulus, std::vector<int> values)
    : group_(std::move(group)), modulus_(modulus), values_(std::move(values)) {
  if (modulus_ < 1) throw ValidationError("cocycle modulus must be positive");
  if (values_.size() != group_.order() * group_.order())
    throw ValidationError("cocycle table has wrong size");
  for (auto& v : values_) v = ((v % modulus_) + modulus_) % modulus_;
}

Cocycle Cocycle::zero(const FiniteGroup& g, int modulus) {
  return Cocycle(g, modulus, std::vector<int>(g.order() * g.order(), 0));
}

bool Cocycle::is_zero() const {
  for (int v : values_)
    if (v != 0) return false;
  return true;
}

Cocycle d8_pairing_cocycle() {
  auto v4 = elementary_abelian_2(2);
  std::vector<int> values(16);
  // element index = 2 * g_1 + g_2
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) values[static_cast<std::size_t>(g * 4 + h)] = (g % 2) * (h / 2);
  return Cocycle(v4, 2, std::move(values));
}

CocycleReport validate_cocycle(const Cocycle& c) {
  CocycleReport r;
  const auto& g = c.group();
  const int n = static_cast<int>(g.order());
  const int m = c.modulus();
  for (int a = 0; a < n; ++a) {
    if (c(a, 0) != 0 || c(0, a) != 0) {
      r.valid = false;
      r.message = "not normalised at element " + std::to_string(a);
      r.witness = std::array<int, 3>{a, 0, 0};
      return r;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        int lhs = (c(a, b) + c(g.mul(a, b), d)) % m;
        int rhs = (c(b, d) + c(a, g.mul(b, d))) % m;
        if (lhs != rhs) {
          r.valid = false;
          r.message = "cocycle identity fails at (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(d) + ")";
          r.witness = std::array<int, 3>{a, b, d};
          return r;
        }
      }
  return r;
}

Cocycle transport_cocycle(const Cocycle& c, const GroupHom& f) {
  if (!(f.target() == c.group()))
    throw ValidationError("cocycle transported along a hom into another group");
  const auto& h = f.source();
  const int n = static_cast<int>(h.order());
  std::vector<int> values(h.order() * h.order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) values[static_cast<std::size_t>(a * n + b)] = c(f(a), f(b));
  return Cocycle(h, c.modulus(), std::move(values));
}

Cocycle shift_by_coboundary(const Cocycle& c, const std::vector<int>& b) {
  const auto& g = c.group();
  if (b.size() != g.order()) throw ValidationError("1-cochain has wrong length");
  if (b[0] % c.modulus() != 0) throw ValidationError("1-cochain must vanish on the identity");
  const int n = static_cast<int>(g.order());
  std::vector<int> values(c.values());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      values[static_cast<std::size_t>(x * n + y)] +=
          b[static_cast<std::size_t>(x)] + b[static_cast<std::size_t>(y)] -
          b[static_cast<std::size_t>(g.mul(x, y))];
  return Cocycle(g, c.modulus(), std::move(values));
}

CentralExtensionData central_extension(const FiniteGroup& g, const Cocycle& c) {
  if (!(c.group() == g)) throw ValidationError("cocycle lives on another group");
  auto report = validate_cocycle(c);
  if (!report.valid) throw ValidationError("invalid cocycle: " + report.message);
  const int n = c.modulus();
  const int ng = static_cast<int>(g.order());
  const auto order = g.order() * static_cast<std::size_t>(n);
  std::vector<int> mul(order * order);
  std::vector<std::string> labels;
  for (int x = 0; x < ng * n; ++x) {
    const int a = x / n, j = x % n;
    labels.push_back("(" + g.label(a) + ",s^" + std::to_string(j) + ")");
    for (int y = 0; y < ng * n; ++y) {
      const int b = y / n, k = y % n;
      mul[static_cast<std::size_t>(x) * order + static_cast<std::size_t>(y)] =
          g.mul(a, b) * n + (c(a, b) + j + k) % n;
    }
  }
  auto total = FiniteGroup::from_table(order, std::move(mul), std::move(labels));
  std::vector<int> proj;
  for (int x = 0; x < ng * n; ++x) proj.push_back(x / n);
  GroupHom projection(total, g, std::move(proj));
  return {g, c, total, std::move(projection), n > 1 ? 1 : 0};
}

// ---------------------------------------------------------------------------
// Twisted representation groups

namespace {

std::vector<BigInt> checked(const modular::CharacterCoordinates& r) {
  if (!r.in_span) throw VerificationError("character leaves the twisted representation group");
  return r.coords;
}

}  // namespace

TwistedRepModule twisted_rep_group(const FiniteGroup& g, const Cocycle& c) {
  TwistedRepModule m;
  m.base = rep_ring(g);
  m.extension = central_extension(g, c);
  m.total = rep_ring(m.extension.total);
  const auto& tt = m.total->table;
  const int n = c.modulus();
  const int level = tt.level();
  const auto prim = Cyclotomic::root(level, level / n);
  const int sigma = m.extension.central_generator;

  if (c.is_zero()) {
    // chi -> (chi o projection) * lambda, lambda(g, j) = prim^j
    m.untwisted = true;
    ClassFunction lambda;
    for (int rep : tt.classes().representatives) lambda.push_back(Cyclotomic::root(level, (level / n) * (rep % n)));
    for (std::size_t i = 0; i < m.base->rank(); ++i)
      m.basis.push_back(tt.product(tt.pull_back(m.base->table, i, m.extension.projection), lambda));
    m.action = m.base->mult;
    return m;
  }

  for (std::size_t i = 0; i < tt.size(); ++i) {
    const auto& chi = tt.character(i);
    if (tt.value(i, sigma) == chi[0] * prim) m.basis.push_back(chi);
  }
  const modular::CharacterFrame frame(
      tt, m.basis, modular::max_degree(m.basis) * modular::max_degree(m.base->table.characters()),
      m.base->table.level());
  for (std::size_t i = 0; i < m.base->rank(); ++i) {
    auto inflated = tt.pull_back(m.base->table, i, m.extension.projection);
    IntMatrix a(static_cast<Index>(m.rank()), static_cast<Index>(m.rank()));
    for (std::size_t b = 0; b < m.rank(); ++b) {
      auto coords = checked(frame(tt.product(inflated, m.basis[b])));
      for (std::size_t r = 0; r < coords.size(); ++r)
        a(static_cast<Index>(r), static_cast<Index>(b)) = coords[r];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

std::vector<BigInt> twisted_coordinates(const TwistedRepModule& m, const ClassFunction& f) {
  return checked(modular::character_coordinates(m.total->table, m.basis, f));
}

namespace {

// (h, j) -> (f(h), j) between the extensions of f^* c and c.
GroupHom lift_to_extensions(const GroupHom& f, const CentralExtensionData& target,
                            const CentralExtensionData& source) {
  const int n = target.cocycle.modulus();
  if (source.cocycle.modulus() != n)
    throw ValidationError("cocycle moduli differ along a restriction");
  std::vector<int> img;
  for (int x = 0; x < static_cast<int>(source.total.order()); ++x)
    img.push_back(f(x / n) * n + x % n);
  return GroupHom(source.total, target.total, std::move(img));
}

}  // namespace

IntMatrix twisted_restriction(const GroupHom& f, const TwistedRepModule& target,
                              const TwistedRepModule& source) {
  if (!(transport_cocycle(target.extension.cocycle, f) == source.extension.cocycle))
    throw ValidationError("source cocycle is not the transported target cocycle");
  if (target.untwisted && source.untwisted)
    return ring_hom_matrix(f, target.base->table, source.base->table);
  auto lift = lift_to_extensions(f, target.extension, source.extension);
  const auto& ts = source.total->table;
  const auto& tt = target.total->table;
  IntMatrix m(static_cast<Index>(source.rank()), static_cast<Index>(target.rank()));
  const modular::CharacterFrame frame(ts, source.basis, modular::max_degree(target.basis),
                                      tt.level());
  for (std::size_t b = 0; b < target.rank(); ++b) {
    ClassFunction pulled;
    for (int rep : ts.classes().representatives) {
      int image = lift(rep);
      pulled.push_back(target.basis[b][static_cast<std::size_t>(tt.classes().class_of[static_cast<std::size_t>(image)])]);
    }
    auto coords = checked(frame(pulled));
    for (std::size_t a = 0; a < coords.size(); ++a)
      m(static_cast<Index>(a), static_cast<Index>(b)) = coords[a];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pullback isomorphism certificate

PullbackIsoReport verify_pullback_rep_iso(const GroupHom& f1, const GroupHom& f2,
                                          const std::optional<Cocycle>& c) {
  PullbackIsoReport report;
  report.twisted = c.has_value();
  const auto& p = f1.source();
  const auto& q = f2.source();
  const auto& s = f1.target();
  for (const auto* grp : {&p, &q, &s})
    if (grp->order() > kDefaultOrderBound)
      throw ValidationError("group order exceeds the character-table bound");

  auto pb = pullback_subgroup(f1, f2);
  report.pullback_order = pb.group.order();

  const Cocycle cp = c ? *c : Cocycle::zero(p, 1);
  const auto rp = twisted_rep_group(p, cp);
  const auto rq = rep_ring(q);
  const auto rs = rep_ring(s);
  const Cocycle cl = transport_cocycle(cp, pb.p1);
  const auto rl = twisted_rep_group(pb.group, cl);

  const Index a_rank = static_cast<Index>(rp.rank());
  const Index b_rank = static_cast<Index>(rq->rank());
  const Index dom = a_rank * b_rank;

  // Relations pi1^*(xi) rho (x) gamma - rho (x) pi2^*(xi) gamma, for xi
  // running over algebra generators of R(S).
  const IntMatrix f1s = ring_hom_from_group_hom(f1);  // R(S) -> R(P)
  const IntMatrix f2s = ring_hom_from_group_hom(f2);  // R(S) -> R(Q)
  const auto gens = BaseRing::from_rep_ring(*rs, "R(S)").algebra_generators();
  IntMatrix rel(dom, static_cast<Index>(gens.size()) * dom);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::size_t xi = gens[g];
    IntMatrix x = IntMatrix::Zero(a_rank, a_rank);
    for (std::size_t i = 0; i < rp.action.size(); ++i)
      x += f1s(static_cast<Index>(i), static_cast<Index>(xi)) * rp.action[i];
    IntMatrix y = IntMatrix::Zero(b_rank, b_rank);
    for (std::size_t i = 0; i < rq->rank(); ++i)
      y += f2s(static_cast<Index>(i), static_cast<Index>(xi)) * rq->mult[i];
    rel.middleCols(static_cast<Index>(g) * dom, dom) =
        kronecker(x, IntMatrix(IntMatrix::Identity(b_rank, b_rank))) -
        kronecker(IntMatrix(IntMatrix::Identity(a_rank, a_rank)), y);
  }
  report.domain = cokernel_invariants(rel);

  // m on the basis rho_a (x) gamma_b.
  const auto& tl = rl.total->table;
  const auto& tp = rp.total->table;
  auto lift = lift_to_extensions(pb.p1, rp.extension, rl.extension);
  auto to_q = compose(pb.p2, rl.extension.projection);
  report.target_rank = rl.rank();
  IntMatrix m(static_cast<Index>(rl.rank()), dom);
  const modular::CharacterFrame frame(
      tl, rl.basis, modular::max_degree(rp.basis) * modular::max_degree(rq->table.characters()),
      std::lcm(tp.level(), rq->table.level()));
  for (Index a = 0; a < a_rank; ++a) {
    ClassFunction rho;
    for (int rep : tl.classes().representatives)
      rho.push_back(rp.basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(
          tp.classes().class_of[static_cast<std::size_t>(lift(rep))])]);
    for (Index b = 0; b < b_rank; ++b) {
      auto gamma = tl.pull_back(rq->table, static_cast<std::size_t>(b), to_q);
      auto coords = checked(frame(tl.product(rho, gamma)));
      for (std::size_t r = 0; r < coords.size(); ++r) m(static_cast<Index>(r), a * b_rank + b) = coords[r];
    }
  }

  report.relations_killed = multiply(m, rel).isZero();
  report.surjective = cokernel_invariants(m).is_zero();
  const IntMatrix ker = kernel_basis(m);
  report.injective = columns_in_span(rel, ker);
  return report;
}

}  // namespace bredon
