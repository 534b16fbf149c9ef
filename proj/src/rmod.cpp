#include "bredon/rmod.hpp"

#include "bredon/error.hpp"
#include "bredon/reps.hpp"

namespace bredon {

namespace {

IntMatrix identity(Index n) { return IntMatrix::Identity(n, n); }

// X with a X = b; the columns of b must lie in the span of a.
IntMatrix solve_exact(const IntMatrix& a, const IntMatrix& b, const char* what) {
  if (b.cols() == 0) return IntMatrix(a.cols(), 0);
  auto x = solve_integer(a, b);
  if (!x) throw VerificationError(std::string("lattice membership failed: ") + what);
  return *x;
}

bool in_span(const SmithForm<BigInt>& f, const IntMatrix& b) {
  if (b.cols() == 0) return true;
  return solve_integer(f, b).has_value();
}

void require_same_ring(const BaseRing& a, const BaseRing& b) {
  if (!(a == b)) throw ValidationError("modules over different base rings");
}

// Z-span of the subalgebra generated by the unit and the given basis elements.
IntMatrix subalgebra_span(const std::vector<IntMatrix>& mult, const std::vector<std::size_t>& gens) {
  const Index k = static_cast<Index>(mult.size());
  IntMatrix span = IntMatrix::Zero(k, 1);
  span(0, 0) = 1;
  while (true) {
    IntMatrix grown = span;
    for (auto g : gens) grown = hcat(grown, multiply(mult[g], span));
    IntMatrix next = image_basis(grown);
    if (next.cols() == span.cols() && columns_in_span(span, grown)) return span;
    span = next;
  }
}

// Ring generators of m: Z-generators j whose orbit spans are needed.
std::vector<Index> ring_generators(const RMod& m) {
  std::vector<Index> chosen;
  IntMatrix span = m.relations;
  for (Index j = 0; j < m.generators(); ++j) {
    IntMatrix e = IntMatrix::Zero(m.generators(), 1);
    e(j, 0) = 1;
    if (span.cols() > 0 && columns_in_span(span, e)) continue;
    chosen.push_back(j);
    for (const auto& a : m.action) span = hcat(span, IntMatrix(a.col(j)));
    span = image_basis(span);
  }
  return chosen;
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseRing

BaseRing::BaseRing() : BaseRing("Z", {int_matrix({{1}})}) {}

BaseRing::BaseRing(std::string name, std::vector<IntMatrix> mult) {
  const Index k = static_cast<Index>(mult.size());
  if (k == 0) throw ValidationError("base ring needs a basis");
  for (const auto& m : mult)
    if (m.rows() != k || m.cols() != k) throw ValidationError("structure matrix has wrong size");
  if (mult[0] != identity(k)) throw ValidationError("basis element 0 must be the unit");
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->mult = std::move(mult);
  for (std::size_t i = 1; i < data->mult.size(); ++i) {
    IntMatrix e = IntMatrix::Zero(k, 1);
    e(static_cast<Index>(i), 0) = 1;
    if (columns_in_span(subalgebra_span(data->mult, data->generators), e)) continue;
    data->generators.push_back(i);
  }
  data_ = std::move(data);
}

BaseRing BaseRing::integers() { return BaseRing(); }

BaseRing BaseRing::from_rep_ring(const RepRingData& r, std::string name) {
  return BaseRing(std::move(name), r.mult);
}

bool BaseRing::satisfies_axioms() const {
  const auto& m = data_->mult;
  const Index k = zrank();
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      if (m[static_cast<std::size_t>(i)].col(j) != m[static_cast<std::size_t>(j)].col(i)) return false;
      // e_i (e_j x) = (e_i e_j) x
      IntMatrix lhs = multiply(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]);
      IntMatrix rhs = IntMatrix::Zero(k, k);
      for (Index l = 0; l < k; ++l) {
        const BigInt& c = m[static_cast<std::size_t>(i)](l, j);
        if (c != 0) rhs += c * m[static_cast<std::size_t>(l)];
      }
      if (lhs != rhs) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Modules

RMod zero_module(const BaseRing& ring) {
  return {ring, IntMatrix(0, 0), std::vector<IntMatrix>(static_cast<std::size_t>(ring.zrank()), IntMatrix(0, 0))};
}

RMod free_module(const BaseRing& ring, Index n) {
  const Index k = ring.zrank();
  RMod m{ring, IntMatrix(n * k, 0), {}};
  for (const auto& a : ring.mult()) m.action.push_back(kronecker(identity(n), a));
  return m;
}

RMod restrict_scalars(const RMod& m, const BaseRing& over, const IntMatrix& hom) {
  if (hom.rows() != m.ring.zrank() || hom.cols() != over.zrank())
    throw ValidationError("ring hom matrix has wrong shape");
  RMod out{over, m.relations, {}};
  for (Index k = 0; k < over.zrank(); ++k) {
    IntMatrix a = IntMatrix::Zero(m.generators(), m.generators());
    for (Index s = 0; s < hom.rows(); ++s)
      if (hom(s, k) != 0) a += hom(s, k) * m.action[static_cast<std::size_t>(s)];
    out.action.push_back(std::move(a));
  }
  return out;
}

bool is_valid_module(const RMod& m) {
  const Index g = m.generators();
  const Index k = m.ring.zrank();
  if (static_cast<Index>(m.action.size()) != k) return false;
  for (const auto& a : m.action)
    if (a.rows() != g || a.cols() != g) return false;
  auto f = smith_normal_form(m.relations);
  auto zero_mod_rel = [&](const IntMatrix& x) {
    if (m.relations.cols() == 0) return x.isZero();
    return in_span(f, x);
  };
  for (const auto& a : m.action)
    if (!zero_mod_rel(multiply(a, m.relations))) return false;
  if (!zero_mod_rel(IntMatrix(m.action[0] - identity(g)))) return false;
  for (Index i = 0; i < k; ++i)
    for (Index j = i; j < k; ++j) {
      IntMatrix d = multiply(m.action[static_cast<std::size_t>(i)], m.action[static_cast<std::size_t>(j)]);
      for (Index l = 0; l < k; ++l) {
        const BigInt& c = m.ring.mult(static_cast<std::size_t>(i))(l, j);
        if (c != 0) d -= c * m.action[static_cast<std::size_t>(l)];
      }
      if (!zero_mod_rel(d)) return false;
    }
  return true;
}

bool is_valid_map(const RModMap& f) {
  if (!(f.source.ring == f.target.ring)) return false;
  if (f.matrix.rows() != f.target.generators() || f.matrix.cols() != f.source.generators())
    return false;
  auto sf = smith_normal_form(f.target.relations);
  auto zero_mod_rel = [&](const IntMatrix& x) {
    if (f.target.relations.cols() == 0) return x.isZero();
    return in_span(sf, x);
  };
  if (!zero_mod_rel(multiply(f.matrix, f.source.relations))) return false;
  for (std::size_t i = 0; i < f.source.action.size(); ++i) {
    IntMatrix d = multiply(f.matrix, f.source.action[i]) - multiply(f.target.action[i], f.matrix);
    if (!zero_mod_rel(d)) return false;
  }
  return true;
}

AbelianInvariants z_invariants(const RMod& m) { return cokernel_invariants(m.relations); }

Pruned prune(const RMod& m) {
  const Index g = m.generators();
  auto f = smith_normal_form(m.relations);
  std::vector<Index> kept;
  std::vector<BigInt> moduli;
  for (Index i = 0; i < g; ++i) {
    if (i < f.rank && f.d(i, i) == 1) continue;
    kept.push_back(i);
    moduli.push_back(i < f.rank ? f.d(i, i) : BigInt(0));
  }
  const Index n = static_cast<Index>(kept.size());
  IntMatrix to(n, g), from(g, n);
  for (Index r = 0; r < n; ++r) {
    to.row(r) = f.u.row(kept[static_cast<std::size_t>(r)]);
    from.col(r) = f.u_inv.col(kept[static_cast<std::size_t>(r)]);
  }
  auto reduce_rows = [&](IntMatrix& x) {
    for (Index r = 0; r < n; ++r) {
      const BigInt& d = moduli[static_cast<std::size_t>(r)];
      if (d == 0) continue;
      for (Index c = 0; c < x.cols(); ++c) {
        x(r, c) %= d;
        if (x(r, c) < 0) x(r, c) += d;
      }
    }
  };
  reduce_rows(to);

  Index torsion = 0;
  for (const auto& d : moduli)
    if (d != 0) ++torsion;
  IntMatrix rel = IntMatrix::Zero(n, torsion);
  for (Index r = 0, c = 0; r < n; ++r)
    if (moduli[static_cast<std::size_t>(r)] != 0) rel(r, c++) = moduli[static_cast<std::size_t>(r)];

  RMod out{m.ring, rel, {}};
  for (const auto& a : m.action) {
    IntMatrix x = multiply(to, multiply(a, from));
    reduce_rows(x);
    out.action.push_back(std::move(x));
  }
  return {std::move(out), std::move(to), std::move(from)};
}

namespace {

// The module on a Z-basis `lattice` of a sublattice of m's generators that
// contains im(m.relations) and is stable under the action; pruned, with
// its inclusion into m.
Submodule on_lattice(const RMod& m, const IntMatrix& lattice) {
  RMod sub{m.ring, solve_exact(lattice, m.relations, "relations in sublattice"), {}};
  for (const auto& a : m.action)
    sub.action.push_back(solve_exact(lattice, multiply(a, lattice), "action on sublattice"));
  auto p = prune(sub);
  IntMatrix incl = multiply(lattice, p.from_pruned);
  RMod pruned = p.module;
  return {pruned, RModMap{pruned, m, std::move(incl)}};
}

}  // namespace

Submodule submodule_from_generators(const RMod& m, const IntMatrix& gens) {
  if (gens.rows() != m.generators()) throw ValidationError("generator vectors have wrong length");
  IntMatrix span = m.relations;
  for (const auto& a : m.action) span = hcat(span, multiply(a, gens));
  return on_lattice(m, image_basis(span));
}

Submodule map_kernel(const RModMap& f) {
  const Index gm = f.source.generators();
  IntMatrix joint = hcat(f.matrix, f.target.relations);
  IntMatrix k = kernel_basis(joint);
  IntMatrix top = k.topRows(gm);
  return on_lattice(f.source, image_basis(top));
}

Quotient map_cokernel(const RModMap& f) {
  RMod q{f.target.ring, hcat(f.target.relations, f.matrix), f.target.action};
  auto p = prune(q);
  RMod pruned = p.module;
  return {pruned, RModMap{f.target, pruned, p.to_pruned}};
}

RMod direct_sum(const std::vector<RMod>& ms) {
  if (ms.empty()) throw ValidationError("direct sum of an empty family needs a ring");
  RMod out = ms[0];
  for (std::size_t i = 1; i < ms.size(); ++i) {
    require_same_ring(out.ring, ms[i].ring);
    out.relations = block_diag(out.relations, ms[i].relations);
    for (std::size_t a = 0; a < out.action.size(); ++a)
      out.action[a] = block_diag(out.action[a], ms[i].action[a]);
  }
  return out;
}

RMod tensor_over_ring(const RMod& m, const RMod& n) {
  require_same_ring(m.ring, n.ring);
  const IntMatrix im = identity(m.generators()), in = identity(n.generators());
  IntMatrix rel = hcat(kronecker(m.relations, in), kronecker(im, n.relations));
  for (auto g : m.ring.algebra_generators())
    rel = hcat(rel, IntMatrix(kronecker(m.action[g], in) - kronecker(im, n.action[g])));
  RMod out{m.ring, std::move(rel), {}};
  for (const auto& a : m.action) out.action.push_back(kronecker(a, in));
  return out;
}

IntMatrix tensor_maps(const IntMatrix& f, const IntMatrix& g) { return kronecker(f, g); }

namespace {

// Free module on the chosen ring generators of m and the map onto m.
RModMap cover(const RMod& m) {
  auto gens = ring_generators(m);
  const Index k = m.ring.zrank();
  RMod f0 = free_module(m.ring, static_cast<Index>(gens.size()));
  IntMatrix eps(m.generators(), f0.generators());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (Index b = 0; b < k; ++b)
      eps.col(static_cast<Index>(j) * k + b) = m.action[static_cast<std::size_t>(b)].col(gens[j]);
  return {f0, m, eps};
}

}  // namespace

FreePresentation free_presentation(const RMod& m) {
  auto eps = cover(m);
  auto ker = map_kernel(eps);
  auto eps1 = cover(ker.module);
  FreePresentation p;
  p.f0 = eps.source;
  p.f1 = eps1.source;
  p.epsilon = eps.matrix;
  p.d1 = multiply(ker.inclusion.matrix, eps1.matrix);
  p.f0_rank = p.f0.generators() / m.ring.zrank();
  p.f1_rank = p.f1.generators() / m.ring.zrank();
  return p;
}

RMod tor(const RMod& m, const RMod& n, int i) {
  require_same_ring(m.ring, n.ring);
  if (i < 0) throw ValidationError("negative Tor degree");
  if (i == 0) return prune(tensor_over_ring(m, n)).module;
  auto eps = cover(m);
  auto ker = map_kernel(eps);
  if (i > 1) return tor(ker.module, n, i - 1);
  RMod tk = tensor_over_ring(ker.module, n);
  RMod tf = tensor_over_ring(eps.source, n);
  IntMatrix map = tensor_maps(ker.inclusion.matrix, identity(n.generators()));
  return map_kernel(RModMap{tk, tf, map}).module;
}

}  // namespace bredon
