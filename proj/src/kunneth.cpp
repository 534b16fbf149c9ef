#include "bredon/kunneth.hpp"

#include "bredon/error.hpp"

namespace bredon {

namespace {

IntMatrix identity(Index n) { return IntMatrix::Identity(n, n); }

std::string pair_tag(int p, int q) { return "(" + std::to_string(p) + ", " + std::to_string(q) + ")"; }

}  // namespace

CoeffSystem tensor_coeff_systems(const CoeffSystem& mx, const CoeffSystem& my,
                                 const ProductComplex& product) {
  if (!(mx.base == my.base)) throw ValidationError("coefficient systems over different rings");
  CoeffSystem out{mx.base, {}, {}};
  for (std::size_t n = 0; n < product.cells.size(); ++n) {
    std::vector<RMod> values;
    std::vector<std::vector<IntMatrix>> res;
    for (std::size_t c = 0; c < product.cells[n].size(); ++c) {
      const ProductCell& pc = product.cells[n][c];
      const auto p = static_cast<std::size_t>(pc.p), q = static_cast<std::size_t>(pc.q);
      const auto i = static_cast<std::size_t>(pc.x), j = static_cast<std::size_t>(pc.y);
      if (p >= mx.values.size() || i >= mx.values[p].size() || q >= my.values.size() ||
          j >= my.values[q].size())
        throw ValidationError("product complex was not built from these factors");
      const RMod& a = mx.values[p][i];
      const RMod& b = my.values[q][j];
      values.push_back(tensor_over_ring(a, b));
      std::vector<IntMatrix> r;
      for (const auto& prov : product.provenance[n][c]) {
        const auto k = static_cast<std::size_t>(prov.incidence);
        if (prov.factor == 0)
          r.push_back(tensor_maps(mx.restrictions[p][i][k], identity(b.generators())));
        else
          r.push_back(tensor_maps(identity(a.generators()), my.restrictions[q][j][k]));
      }
      res.push_back(std::move(r));
    }
    out.values.push_back(std::move(values));
    out.restrictions.push_back(std::move(res));
  }
  return out;
}

GradedRMod KunnethResult::assembled() const {
  GradedRMod h;
  for (const auto& d : degrees) h.push_back(d.assembled);
  return h;
}

KunnethResult kunneth_assemble(const GradedRMod& hx, const GradedRMod& hy) {
  if (hx.empty() || hy.empty()) throw ValidationError("graded module without degrees");
  if (!(hx[0].ring == hy[0].ring)) throw ValidationError("graded modules over different rings");
  const BaseRing& ring = hx[0].ring;
  const int dx = static_cast<int>(hx.size()) - 1, dy = static_cast<int>(hy.size()) - 1;
  KunnethResult out;
  for (int n = 0; n <= dx + dy; ++n) {
    KunnethDegree d;
    std::vector<RMod> parts;
    for (int p = 0; p <= dx; ++p) {
      const int q = n - p;
      if (q < 0 || q > dy) continue;
      RMod t = tor(hx[static_cast<std::size_t>(p)], hy[static_cast<std::size_t>(q)], 0);
      parts.push_back(t);
      d.tensor_part.push_back({p, q, std::move(t)});
    }
    for (int p = 0; p <= dx; ++p) {
      const int q = n + 1 - p;
      if (q < 0 || q > dy) continue;
      RMod t = tor(hx[static_cast<std::size_t>(p)], hy[static_cast<std::size_t>(q)], 1);
      parts.push_back(t);
      d.tor_part.push_back({p, q, std::move(t)});
    }
    d.assembled = parts.empty() ? zero_module(ring) : prune(direct_sum(parts)).module;
    out.degrees.push_back(std::move(d));
  }
  auto stray = z_invariants(tor(hx[0], hy[0], 1));
  if (!stray.is_zero())
    out.warnings.push_back("Tor_1(H^0, H^0) = " + stray.to_string() + " has no degree in the assembly");
  return out;
}

std::vector<TorCheck> fold_tor_checks(const GradedRMod& a, const GradedRMod& b, std::size_t step) {
  std::vector<TorCheck> out;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) {
      if (p + q == 0) continue;
      if (z_invariants(a[p]).is_zero() || z_invariants(b[q]).is_zero()) continue;
      out.push_back({step, static_cast<int>(p), static_cast<int>(q), z_invariants(tor(a[p], b[q], 1))});
    }
  return out;
}

FoldResult kunneth_fold(const std::vector<GradedRMod>& factors) {
  if (factors.empty()) throw ValidationError("nothing to fold");
  FoldResult out;
  out.assembled = factors[0];
  for (std::size_t s = 1; s < factors.size(); ++s) {
    for (auto& c : fold_tor_checks(out.assembled, factors[s], s)) {
      if (!c.tor.is_zero())
        throw VerificationError("fold step " + std::to_string(s) + ": Tor_1 at degrees " +
                                pair_tag(c.p, c.q) + " is " + c.tor.to_string());
      out.checks.push_back(std::move(c));
    }
    auto k = kunneth_assemble(out.assembled, factors[s]);
    for (auto& w : k.warnings) out.warnings.push_back("fold step " + std::to_string(s) + ": " + w);
    out.assembled = k.assembled();
  }
  return out;
}

KunnethComparison kunneth_vs_direct(const GCWComplex& x, const GCWComplex& y,
                                    const CoeffSystem& mx, const CoeffSystem& my) {
  KunnethComparison out;
  auto product = product_complex(x, y);
  auto direct = cohomology(product.complex, tensor_coeff_systems(mx, my, product));
  auto k = kunneth_assemble(cohomology(x, mx), cohomology(y, my));
  out.direct = graded_invariants(direct);
  out.assembled = graded_invariants(k.assembled());
  out.warnings = k.warnings;

  auto cx = cochain_complex(x, mx), cy = cochain_complex(y, my);
  for (std::size_t p = 0; p < cx.modules.size(); ++p)
    for (std::size_t q = 0; q < cy.modules.size(); ++q) {
      auto t = z_invariants(tor(cx.modules[p], cy.modules[q], 1));
      if (!t.is_zero())
        out.warnings.push_back("cochain-level Tor_1(C^" + std::to_string(p) + ", C^" +
                               std::to_string(q) + ") = " + t.to_string());
    }
  out.agree = out.direct == out.assembled;
  return out;
}

}  // namespace bredon
