#include "bredon/bredon.hpp"

#include "bredon/error.hpp"

#include <map>

namespace bredon {

namespace {

std::string where(int n, std::size_t i, const Cell& c) {
  return "cell " + std::to_string(n) + ":" + std::to_string(i) + (c.name.empty() ? "" : " (" + c.name + ")");
}

BaseRing ring_of(const FiniteGroup& g) {
  return BaseRing::from_rep_ring(*rep_ring(g), "R(" + std::to_string(g.order()) + ")");
}

}  // namespace

void validate_complex(const GCWComplex& x) {
  if (x.cells.empty()) throw ValidationError("complex has no cells");
  for (int n = 0; n <= x.dimension(); ++n) {
    const auto& layer = x.cells[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const Cell& c = layer[i];
      if (!(c.to_control.source() == c.stabilizer) || !(c.to_control.target() == x.control))
        throw ValidationError(where(n, i, c) + ": map to the control group has wrong endpoints");
      if (n == 0 && !c.boundary.empty())
        throw ValidationError(where(n, i, c) + ": a 0-cell cannot have boundary");
      for (std::size_t k = 0; k < c.boundary.size(); ++k) {
        const Incidence& inc = c.boundary[k];
        const std::string tag = where(n, i, c) + ", incidence " + std::to_string(k);
        if (inc.target < 0 || static_cast<std::size_t>(inc.target) >= x.count(n - 1))
          throw ValidationError(tag + ": target out of range");
        const Cell& t = x.cell(n - 1, inc.target);
        if (!(inc.hom.source() == c.stabilizer) || !(inc.hom.target() == t.stabilizer))
          throw ValidationError(tag + ": attaching hom has wrong endpoints");
        if (!inc.hom.is_injective()) throw ValidationError(tag + ": attaching hom is not injective");
        if (!(compose(t.to_control, inc.hom) == c.to_control))
          throw ValidationError(tag + ": attaching hom does not commute with the maps to the control group");
      }
    }
  }
}

GCWComplex point_complex(const GroupHom& to_control) {
  GCWComplex x;
  x.control = to_control.target();
  x.cells = {{Cell{"pt", to_control.source(), to_control, {}}}};
  return x;
}

BaseRing control_ring(const GCWComplex& x) { return ring_of(x.control); }

CoeffSystem coeff_system_reps(const GCWComplex& x) {
  validate_complex(x);
  CoeffSystem m{control_ring(x), {}, {}};
  for (const auto& layer : x.cells) {
    std::vector<RMod> values;
    std::vector<std::vector<IntMatrix>> res;
    for (const auto& c : layer) {
      if (c.stabilizer.order() > kDefaultOrderBound)
        throw ValidationError("stabilizer order exceeds the character-table bound");
      values.push_back(restrict_scalars(free_module(ring_of(c.stabilizer), 1), m.base,
                                        ring_hom_from_group_hom(c.to_control)));
      std::vector<IntMatrix> r;
      for (const auto& inc : c.boundary) r.push_back(ring_hom_from_group_hom(inc.hom));
      res.push_back(std::move(r));
    }
    m.values.push_back(std::move(values));
    m.restrictions.push_back(std::move(res));
  }
  return m;
}

CoeffSystem coeff_system_twisted(const GCWComplex& x,
                                 const std::vector<std::vector<Cocycle>>& cocycles) {
  validate_complex(x);
  if (cocycles.size() != x.cells.size())
    throw ValidationError("one cocycle per cell is required");
  CoeffSystem m{control_ring(x), {}, {}};
  std::vector<std::vector<TwistedRepModule>> tw(x.cells.size());
  for (std::size_t n = 0; n < x.cells.size(); ++n) {
    const auto& layer = x.cells[n];
    if (cocycles[n].size() != layer.size()) throw ValidationError("one cocycle per cell is required");
    std::vector<RMod> values;
    std::vector<std::vector<IntMatrix>> res;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const Cell& c = layer[i];
      const Cocycle& a = cocycles[n][i];
      if (!(a.group() == c.stabilizer))
        throw ValidationError(where(static_cast<int>(n), i, c) + ": cocycle lives on a different group");
      tw[n].push_back(twisted_rep_group(c.stabilizer, a));
      const auto& t = tw[n].back();
      RMod own{ring_of(c.stabilizer), IntMatrix(static_cast<Index>(t.rank()), 0), t.action};
      values.push_back(restrict_scalars(own, m.base, ring_hom_from_group_hom(c.to_control)));
      std::vector<IntMatrix> r;
      for (std::size_t k = 0; k < c.boundary.size(); ++k) {
        const auto& inc = c.boundary[k];
        const auto& target = tw[n - 1][static_cast<std::size_t>(inc.target)];
        if (!(transport_cocycle(target.extension.cocycle, inc.hom) == a))
          throw ValidationError(where(static_cast<int>(n), i, c) + ", incidence " + std::to_string(k) +
                                ": cocycle is not the transport of the target's cocycle");
        r.push_back(twisted_restriction(inc.hom, target, t));
      }
      res.push_back(std::move(r));
    }
    m.values.push_back(std::move(values));
    m.restrictions.push_back(std::move(res));
  }
  return m;
}

CochainComplex cochain_complex(const GCWComplex& x, const CoeffSystem& m) {
  if (m.values.size() != x.cells.size()) throw ValidationError("coefficient system does not match the complex");
  CochainComplex c;
  std::vector<std::vector<Index>> offset(x.cells.size());
  for (std::size_t n = 0; n < x.cells.size(); ++n) {
    if (m.values[n].size() != x.cells[n].size())
      throw ValidationError("coefficient system does not match the complex");
    Index at = 0;
    for (const auto& v : m.values[n]) {
      offset[n].push_back(at);
      at += v.generators();
    }
    c.modules.push_back(m.values[n].empty() ? zero_module(m.base) : direct_sum(m.values[n]));
  }
  for (std::size_t n = 0; n + 1 < x.cells.size(); ++n) {
    IntMatrix d = IntMatrix::Zero(c.modules[n + 1].generators(), c.modules[n].generators());
    for (std::size_t i = 0; i < x.cells[n + 1].size(); ++i) {
      const Cell& cell = x.cells[n + 1][i];
      const Index r0 = offset[n + 1][i];
      for (std::size_t k = 0; k < cell.boundary.size(); ++k) {
        const auto& inc = cell.boundary[k];
        if (inc.coefficient == 0) continue;
        const IntMatrix& res = m.restrictions[n + 1][i][k];
        const Index c0 = offset[n][static_cast<std::size_t>(inc.target)];
        d.block(r0, c0, res.rows(), res.cols()) += BigInt(inc.coefficient) * res;
      }
    }
    c.differentials.push_back(RModMap{c.modules[n], c.modules[n + 1], std::move(d)});
  }
  for (std::size_t n = 0; n + 1 < c.differentials.size(); ++n) {
    IntMatrix dd = multiply(c.differentials[n + 1].matrix, c.differentials[n].matrix);
    const auto& rel = c.modules[n + 2].relations;
    if (!dd.isZero() && (rel.cols() == 0 || !columns_in_span(rel, dd)))
      throw ValidationError("delta o delta != 0 in degree " + std::to_string(n) +
                            ": incidence data is inconsistent");
  }
  return c;
}

GradedRMod cohomology(const CochainComplex& c) {
  GradedRMod h;
  for (std::size_t n = 0; n < c.modules.size(); ++n) {
    const RMod& cn = c.modules[n];
    Submodule z = n < c.differentials.size()
                      ? map_kernel(c.differentials[n])
                      : map_kernel(RModMap{cn, zero_module(cn.ring), IntMatrix(0, cn.generators())});
    if (n == 0) {
      h.push_back(z.module);
      continue;
    }
    const RModMap& d = c.differentials[n - 1];
    auto lift = solve_integer(hcat(z.inclusion.matrix, cn.relations), d.matrix);
    if (!lift) throw VerificationError("image of delta is not inside the cocycles");
    IntMatrix into = lift->topRows(z.module.generators());
    h.push_back(map_cokernel(RModMap{d.source, z.module, std::move(into)}).module);
  }
  return h;
}

GradedRMod cohomology(const GCWComplex& x, const CoeffSystem& m) {
  return cohomology(cochain_complex(x, m));
}

std::vector<AbelianInvariants> graded_invariants(const GradedRMod& h) {
  std::vector<AbelianInvariants> out;
  for (const auto& m : h) out.push_back(z_invariants(m));
  return out;
}

ProductComplex product_complex(const GCWComplex& x, const GCWComplex& y) {
  if (!(x.control == y.control)) throw ValidationError("factors have different control groups");
  validate_complex(x);
  validate_complex(y);
  ProductComplex out;
  out.complex.control = x.control;
  const int dim = x.dimension() + y.dimension();
  std::map<std::array<Index, 4>, Index> index;  // (p, q, i, j) -> position in its dimension

  for (int n = 0; n <= dim; ++n) {
    out.complex.cells.emplace_back();
    out.cells.emplace_back();
    out.provenance.emplace_back();
    out.pullbacks.emplace_back();
    for (int p = 0; p <= x.dimension(); ++p) {
      const int q = n - p;
      if (q < 0 || q > y.dimension()) continue;
      for (std::size_t i = 0; i < x.count(p); ++i)
        for (std::size_t j = 0; j < y.count(q); ++j) {
          const Cell& a = x.cell(p, static_cast<Index>(i));
          const Cell& b = y.cell(q, static_cast<Index>(j));
          auto pb = pullback_subgroup(a.to_control, b.to_control);
          index[{p, q, static_cast<Index>(i), static_cast<Index>(j)}] =
              static_cast<Index>(out.cells.back().size());
          Cell cell{a.name + "x" + b.name, pb.group, compose(a.to_control, pb.p1), {}};
          out.complex.cells.back().push_back(std::move(cell));
          out.cells.back().push_back({p, q, static_cast<Index>(i), static_cast<Index>(j)});
          out.pullbacks.back().push_back(std::move(pb));
        }
    }
  }

  auto attach = [](const Pullback& from, const Pullback& to, const GroupHom& fx, const GroupHom& fy) {
    std::map<std::pair<int, int>, int> where;
    for (std::size_t e = 0; e < to.pairs.size(); ++e) where[to.pairs[e]] = static_cast<int>(e);
    std::vector<int> images;
    for (const auto& [a, b] : from.pairs) images.push_back(where.at({fx(a), fy(b)}));
    return GroupHom(from.group, to.group, std::move(images));
  };

  for (int n = 1; n <= dim; ++n) {
    auto& layer = out.complex.cells[static_cast<std::size_t>(n)];
    for (std::size_t c = 0; c < layer.size(); ++c) {
      const ProductCell pc = out.cells[static_cast<std::size_t>(n)][c];
      const Pullback& pb = out.pullbacks[static_cast<std::size_t>(n)][c];
      std::vector<ProductIncidence> prov;
      const Cell& a = x.cell(pc.p, pc.x);
      const Cell& b = y.cell(pc.q, pc.y);
      for (std::size_t k = 0; k < a.boundary.size(); ++k) {
        const auto& inc = a.boundary[k];
        Index t = index.at({pc.p - 1, pc.q, inc.target, pc.y});
        const Pullback& tp = out.pullbacks[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(t)];
        layer[c].boundary.push_back({t, inc.coefficient, attach(pb, tp, inc.hom, GroupHom::identity(b.stabilizer))});
        prov.push_back({0, static_cast<Index>(k)});
      }
      const long sign = pc.p % 2 == 0 ? 1 : -1;
      for (std::size_t k = 0; k < b.boundary.size(); ++k) {
        const auto& inc = b.boundary[k];
        Index t = index.at({pc.p, pc.q - 1, pc.x, inc.target});
        const Pullback& tp = out.pullbacks[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(t)];
        layer[c].boundary.push_back({t, sign * inc.coefficient, attach(pb, tp, GroupHom::identity(a.stabilizer), inc.hom)});
        prov.push_back({1, static_cast<Index>(k)});
      }
      out.provenance[static_cast<std::size_t>(n)].push_back(std::move(prov));
    }
  }
  if (out.provenance.size() > 0) out.provenance[0].assign(out.complex.cells[0].size(), {});
  return out;
}

}  // namespace bredon
