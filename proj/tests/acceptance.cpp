// Acceptance criteria: one line per criterion, PASS or FAIL, with the
// measured values and runtime against the pinned budget.

#include "bredon/error.hpp"
#include "bredon/scenarios.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace bredon;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) {
    v.pass = false;
    v.detail += "; over the time budget";
  }
  if (!v.pass) ++failures;
  char time[64];
  if (budget_s > 0)
    std::snprintf(time, sizeof time, "%.1f s of %.0f s", s, budget_s);
  else
    std::snprintf(time, sizeof time, "%.1f s", s);
  std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << "  [" << time << "]  "
            << v.detail << std::endl;
}

std::string graded(const std::vector<AbelianInvariants>& h) {
  std::string out;
  for (std::size_t n = 0; n < h.size(); ++n) out += (n ? ", " : "") + h[n].to_string();
  return out;
}

std::vector<AbelianInvariants> z(std::initializer_list<std::size_t> ranks) {
  std::vector<AbelianInvariants> out;
  for (auto r : ranks) out.push_back({r, {}});
  return out;
}

// Burnside count of classes, independent of the class computation.
std::size_t class_count(const FiniteGroup& g) {
  std::size_t total = 0;
  const int n = static_cast<int>(g.order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == g.mul(b, a)) ++total;
  return total / g.order();
}

bool orthogonal(const CharacterTable& t) {
  const auto& cc = t.classes();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      auto ip = t.inner_product(t.character(i), t.character(j)).rational_value();
      if (!ip || *ip != BigRational(i == j ? 1 : 0)) return false;
    }
  for (std::size_t a = 0; a < cc.count(); ++a)
    for (std::size_t b = 0; b < cc.count(); ++b) {
      Cyclotomic s(t.level());
      for (std::size_t i = 0; i < t.size(); ++i) s += t.character(i)[a] * t.character(i)[b].conj();
      auto v = s.rational_value();
      const long expect = a == b ? static_cast<long>(t.group().order() / cc.size(a)) : 0;
      if (!v || *v != BigRational(expect)) return false;
    }
  return true;
}

GradedRMod factor_cohomology(const Scenario& s, std::size_t i) {
  auto x = build_complex(s, s.factors[i]);
  return cohomology(x, coeff_system_reps(x));
}

GradedRMod twisted_factor_cohomology(const Scenario& s, std::size_t i) {
  auto x = build_complex(s, s.factors[i]);
  std::map<std::string, Cocycle> table;
  for (const auto& c : s.cocycles) table.emplace(c.name, build_cocycle(c));
  std::vector<std::vector<Cocycle>> cs;
  for (const auto& layer : s.factors[i].twist) {
    std::vector<Cocycle> l;
    for (const auto& name : layer) l.push_back(table.at(name));
    cs.push_back(std::move(l));
  }
  return cohomology(x, coeff_system_twisted(x, cs));
}

// A polynomial in zeta as an element of R(Z/4), in the irreducible basis.
IntMatrix z4_element(const std::array<long, 4>& poly) {
  auto rr = rep_ring(cyclic_group(4));
  IntMatrix v = IntMatrix::Zero(4, 1);
  for (std::size_t i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (rr->table.value(i, 1) == Cyclotomic::root(4, k)) v(static_cast<Index>(i), 0) += poly[static_cast<std::size_t>(k)];
  return v;
}

Scenario with_shifted_beta(const std::vector<int>& b) {
  auto s = scenario_y2();
  Cocycle shifted = shift_by_coboundary(d8_pairing_cocycle(), b);
  Cocycle edge = transport_cocycle(shifted, GroupHom(cyclic_group(2), elementary_abelian_2(2), {0, 3}));
  for (auto& c : s.cocycles) {
    const Cocycle& src = c.name == "beta1" ? shifted : edge;
    const auto n = static_cast<int>(src.group().order());
    c.d8_pairing = false;
    c.group = c.name == "beta1" ? GroupSpec::klein(2) : GroupSpec::cyclic(2);
    c.modulus = src.modulus();
    c.values.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) c.values[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = src(x, y);
  }
  return s;
}

}  // namespace

int main() {
  criterion(1, "character tables of built-in groups of order <= 16", 5, [] {
    std::vector<FiniteGroup> groups;
    for (int n = 1; n <= 16; ++n) groups.push_back(cyclic_group(n));
    for (int n = 2; n <= 8; ++n) groups.push_back(dihedral_group(n));
    for (int r = 2; r <= 4; ++r) groups.push_back(elementary_abelian_2(r));
    groups.push_back(direct_product(cyclic_group(4), cyclic_group(2)));
    groups.push_back(direct_product(cyclic_group(4), cyclic_group(4)));
    groups.push_back(direct_product(cyclic_group(8), cyclic_group(2)));
    groups.push_back(direct_product(dihedral_group(4), cyclic_group(2)));
    groups.push_back(direct_product(cyclic_group(3), dihedral_group(2)));
    std::size_t bad = 0;
    for (const auto& g : groups) {
      auto t = character_table(g);
      if (t.size() != class_count(g) || !orthogonal(t)) ++bad;
    }
    return Verdict{bad == 0, std::to_string(groups.size() - bad) + "/" + std::to_string(groups.size()) +
                                 " groups orthogonal with #irr = #classes"};
  });

  criterion(2, "pullback representation-ring isomorphism sweep at bound 8", 30, [] {
    auto r = verify_pullback_iso_sweep(8);
    bool z4 = false;
    for (const auto& e : r.entries)
      if (e.p == "C4" && e.q == "C4" && e.s == "C2" && !e.twisted)
        z4 = z4 || (e.report.passed() && e.report.target_rank == 8 && e.report.domain == AbelianInvariants{8, {}});
    std::ostringstream os;
    os << r.passed() << "/" << r.entries.size() << " diagrams pass; Z/4 x_{Z/2} Z/4 rank 8 both sides: "
       << (z4 ? "yes" : "no");
    std::map<std::string, int> groups;
    for (const auto* e : r.failures())
      ++groups[e->p + " x_" + e->s + " " + e->q + (e->twisted ? " twisted" : "") + " (" +
               std::to_string(e->report.domain.free_rank) + " vs " + std::to_string(e->report.target_rank) + ")"];
    for (const auto& [k, v] : groups) os << "; " << v << " x " << k;
    return Verdict{r.failures().empty() && z4, os.str()};
  });

  criterion(3, "cohomology of the line and plane over Z/4", 5, [] {
    auto s = scenario_y1();
    auto line = graded_invariants(factor_cohomology(s, 0));
    auto plane = graded_invariants(factor_cohomology(s, 2));
    return Verdict{line == z({6, 0}) && plane == z({8, 0, 1}),
                   "line: " + graded(line) + "; plane: " + graded(plane)};
  });

  criterion(4, "projectivity witnesses over R(Z/4)", 0, [] {
    auto s = scenario_y1();
    std::vector<std::pair<std::string, RMod>> mods{{"H0(line)", factor_cohomology(s, 0)[0]},
                                                   {"H0(plane)", factor_cohomology(s, 2)[0]}};
    bool all_zero = true;
    std::ostringstream os;
    for (const auto& [na, a] : mods)
      for (const auto& [nb, b] : mods) {
        auto t = z_invariants(tor(a, b, 1));
        all_zero = all_zero && t.is_zero();
        os << "Tor_1(" << na << ", " << nb << ") = " << t.to_string() << "; ";
      }
    const auto ring = BaseRing::from_rep_ring(*rep_ring(cyclic_group(4)), "R(Z/4)");
    auto r = free_module(ring, 1);
    auto i = submodule_from_generators(r, z4_element({-1, 0, 1, 0})).module;
    auto j = submodule_from_generators(r, z4_element({1, 0, 1, 0})).module;
    const auto ij = z_invariants(direct_sum({i, j}));
    const bool same = ij == z_invariants(r);
    os << "I (+) J = " << ij.to_string() << " vs R = " << z_invariants(r).to_string();
    return Verdict{all_zero && same, os.str()};
  });

  criterion(5, "twisted and untwisted N1 line over (Z/2)^2", 0, [] {
    auto s = scenario_y2();
    auto t = graded_invariants(twisted_factor_cohomology(s, 0));
    auto u = graded_invariants(factor_cohomology(s, 0));
    return Verdict{t == z({1, 1}) && u == z({6, 0}), "twisted: " + graded(t) + "; untwisted: " + graded(u)};
  });

  criterion(6, "Kunneth against the direct product for two lines", 60, [] {
    std::ostringstream os;
    bool ok = true;
    for (const auto& s : {scenario_y1(), scenario_y2()}) {
      auto x = build_complex(s, s.factors[0]);
      auto y = build_complex(s, s.factors[1]);
      auto k = kunneth_vs_direct(x, y, coeff_system_reps(x), coeff_system_reps(y));
      ok = ok && k.agree;
      os << (s.name == "y1" ? "" : "; ") << s.name << ": direct " << graded(k.direct) << " / assembled "
         << graded(k.assembled);
      if (s.name == "y1") ok = ok && !k.direct.empty() && k.direct[0] == AbelianInvariants{10, {}};
    }
    return Verdict{ok, os.str()};
  });

  criterion(7, "y1 full assembly and K-theory", 120, [] {
    auto a = run_scenario(scenario_y1());
    auto b = run_scenario(scenario_y1());
    if (!a.assembly_complete) return Verdict{false, "fold aborted: " + a.fold_error};
    bool odd_zero = true;
    for (std::size_t n = 1; n < a.assembly.size(); n += 2) odd_zero = odd_zero && a.assembly[n].is_zero();
    const bool ok = odd_zero && a.k_theory && a.k_theory->k1.is_zero() && a.k_theory->k0.is_free() &&
                    report_to_json(a).dump() == report_to_json(b).dump();
    return Verdict{ok, "assembly " + graded(a.assembly) +
                           (a.k_theory ? "; K0 = " + a.k_theory->k0.to_string() : std::string())};
  });

  criterion(8, "y2 twisted assembly with assumed collapse", 120, [] {
    RunOptions o;
    o.twisted = true;
    o.assume_collapse = true;
    auto r = run_scenario(scenario_y2(), o);
    std::string d = "factor 1: " + graded(r.factors[0].cohomology);
    if (!r.assembly_complete) return Verdict{false, d + "; fold aborted: " + r.fold_error};
    const bool ok = r.k_theory && r.k_theory->k0.is_free() && r.k_theory->k1.is_free() &&
                    !r.k_theory->k0.is_zero() && !r.k_theory->k1.is_zero() && r.z_free_pipeline;
    return Verdict{ok, d + "; assembly " + graded(r.assembly) + "; Z-free pipeline " +
                           (r.z_free_pipeline ? "yes" : "no")};
  });

  criterion(9, "coboundary shifts of beta1 leave the invariants unchanged", 30, [] {
    RunOptions o;
    o.twisted = true;
    o.assume_collapse = true;
    auto base = report_to_json(run_scenario(scenario_y2(), o));
    base.erase("scenario");
    int same = 0;
    for (int bits = 0; bits < 8; ++bits) {
      std::vector<int> b{0, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1};
      auto r = report_to_json(run_scenario(with_shifted_beta(b), o));
      r.erase("scenario");
      if (r.dump() == base.dump()) ++same;
    }
    return Verdict{same == 8, std::to_string(same) + "/8 shifted cocycles give identical factor cohomology, "
                                                     "Tor checks and direct check"};
  });

  criterion(10, "reports are byte-identical across runs", 0, [] {
    std::size_t same = 0, total = 0;
    for (const auto& name : builtin_scenarios())
      for (bool twisted : {false, true}) {
        RunOptions o;
        o.twisted = twisted;
        auto s = builtin_scenario(name);
        auto a = report_to_json(run_scenario(s, o)).dump(2);
        auto b = report_to_json(run_scenario(load_scenario(std::string(SCENARIO_DIR) + "/" + name + ".json"), o))
                     .dump(2);
        ++total;
        if (a == b) ++same;
      }
    return Verdict{same == total, std::to_string(same) + "/" + std::to_string(total) +
                                      " scenario runs identical (built-in against file)"};
  });

  std::cout << (10 - failures) << "/10 criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
