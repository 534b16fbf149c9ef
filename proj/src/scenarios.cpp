#include "bredon/scenarios.hpp"

#include "bredon/error.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace bredon {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Built-in data

CellSpec cell(std::string name, GroupSpec g, std::vector<int> to_control) {
  return {std::move(name), std::move(g), std::move(to_control)};
}

FactorSpec real_line_z4(std::string name) {
  FactorSpec f{std::move(name), {}, {}, {}};
  f.cells = {{cell("v1", GroupSpec::cyclic(4), {0, 1, 2, 3}), cell("v2", GroupSpec::cyclic(4), {0, 1, 2, 3})},
             {cell("e1", GroupSpec::cyclic(2), {0, 2})}};
  f.incidences = {{1, 0, 0, -1, {0, 2}}, {1, 0, 1, 1, {0, 2}}};
  return f;
}

FactorSpec plane_z4(std::string name) {
  FactorSpec f{std::move(name), {}, {}, {}};
  f.cells = {{cell("a1", GroupSpec::cyclic(4), {0, 1, 2, 3}), cell("a2", GroupSpec::cyclic(2), {0, 2}),
              cell("a3", GroupSpec::cyclic(4), {0, 1, 2, 3})},
             {cell("b1", GroupSpec::cyclic(1), {0}), cell("b2", GroupSpec::cyclic(1), {0})},
             {cell("T", GroupSpec::cyclic(1), {0})}};
  f.incidences = {{1, 0, 0, -1, {0}}, {1, 0, 1, 1, {0}}, {1, 1, 1, -1, {0}}, {1, 1, 2, 1, {0}}};
  return f;
}

// The line for N_j x| (Z/2)^2; `edge` is the image in (Z/2)^2 of the element
// acting trivially on the line (index 2 g_1 + g_2, sigma_1 = 2, sigma_2 = 1).
FactorSpec real_line_v4(std::string name, int edge) {
  FactorSpec f{std::move(name), {}, {}, {}};
  f.cells = {{cell("a1", GroupSpec::klein(2), {0, 1, 2, 3}), cell("a2", GroupSpec::klein(2), {0, 1, 2, 3})},
             {cell("b1", GroupSpec::cyclic(2), {0, edge})}};
  f.incidences = {{1, 0, 0, -1, {0, edge}}, {1, 0, 1, 1, {0, edge}}};
  return f;
}

std::vector<AbelianInvariants> graded(std::initializer_list<std::size_t> free) {
  std::vector<AbelianInvariants> out;
  for (auto r : free) out.push_back({r, {}});
  return out;
}

std::vector<CocycleSpec> beta1_cocycles(int edge) {
  CocycleSpec vertex;
  vertex.name = "beta1";
  vertex.d8_pairing = true;
  vertex.group = GroupSpec::klein(2);
  CocycleSpec e;
  e.name = "beta1_edge";
  e.group = GroupSpec::cyclic(2);
  e.modulus = 2;
  Cocycle t = transport_cocycle(d8_pairing_cocycle(),
                                GroupHom(cyclic_group(2), elementary_abelian_2(2), {0, edge}));
  e.values = {{t(0, 0), t(0, 1)}, {t(1, 0), t(1, 1)}};
  return {vertex, e};
}

Scenario y2_with_edges(std::string name, const std::vector<int>& edges, std::string description) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.control = GroupSpec::klein(2);
  s.cocycles = beta1_cocycles(edges[0]);
  const char* labels[] = {"a", "b"};
  for (std::size_t i = 0; i < edges.size(); ++i)
    s.factors.push_back(real_line_v4("N" + std::to_string(i / 2 + 1) + labels[i % 2], edges[i]));
  s.factors[0].twist = {{"beta1", "beta1"}, {"beta1_edge"}};
  ExpectedResults u, t;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    u.factors.push_back(graded({6, 0}));
    t.factors.push_back(i == 0 ? graded({1, 1}) : graded({6, 0}));
  }
  s.expected["untwisted"] = u;
  s.expected["twisted"] = t;
  return s;
}

}  // namespace

Scenario scenario_y1() {
  Scenario s;
  s.name = "y1";
  s.description =
      "T^6/(Z/4) with k(z1,z2,z3) = (-z1, i z2, i z3): M x| Z/4 as the multiple pullback over Z/4 "
      "of two lines for G = M1 x| Z/4 and two planes for H = M2 x| Z/4.";
  s.remarks = {
      "No twisted variant: H^3(M1 x| Z/4; Z) = 0 and H^3(M2 x| Z/4; Z) = 0, so it is not possible "
      "to obtain a non-trivial 2-cocycle of M x| Z/4 coming from non-trivial 2-cocycles of G or H. "
      "This is quoted from the literature, not recomputed.",
      "The plane's 2-cell T is attached along QRSR'; R' is read as lying in the orbit of R, so the "
      "orbit boundary of T is zero."};
  s.control = GroupSpec::cyclic(4);
  s.factors = {real_line_z4("G_line_a"), real_line_z4("G_line_b"), plane_z4("H_plane_a"),
               plane_z4("H_plane_b")};
  ExpectedResults u;
  u.factors = {graded({6, 0}), graded({6, 0}), graded({8, 0, 1}), graded({8, 0, 1})};
  s.expected["untwisted"] = u;
  return s;
}

Scenario scenario_y2() {
  return y2_with_edges(
      "y2", {3, 3, 3, 3, 3, 3},
      "T^6/(Z/2)^2 with sigma1 = (-,-,+), sigma2 = (-,+,-): N x| (Z/2)^2 as a pullback of six lines "
      "over (Z/2)^2.  Every factor is the N1 x| (Z/2)^2 line (edge stabilizer "
      "generated by sigma1 sigma2); the twisted run puts beta1 on the first factor.");
}

namespace {

Scenario scenario_y2_geometric() {
  return y2_with_edges(
      "y2-geometric", {3, 3, 1, 1, 2, 2},
      "Variant of y2 with the N2 and N3 lines attached over (Z/2)^2 as they act: the element acting "
      "trivially on the line is sigma2 for N2 and sigma1 for N3.");
}

}  // namespace

std::vector<std::string> builtin_scenarios() { return {"y1", "y2", "y2-geometric"}; }

Scenario builtin_scenario(const std::string& name) {
  if (name == "y1") return scenario_y1();
  if (name == "y2") return scenario_y2();
  if (name == "y2-geometric") return scenario_y2_geometric();
  throw ValidationError("unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError("scenario file: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + what + "' has the wrong type");
  }
}

Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

Json graded_json(const std::vector<AbelianInvariants>& h) {
  Json out = Json::array();
  for (std::size_t n = 0; n < h.size(); ++n) {
    Json d = invariants_to_json(h[n]);
    Json e;
    e["degree"] = n;
    e["free_rank"] = d["free_rank"];
    e["torsion"] = d["torsion"];
    out.push_back(e);
  }
  return out;
}

std::vector<AbelianInvariants> graded_from_json(const Json& j) {
  std::vector<AbelianInvariants> out;
  for (const auto& e : j) out.push_back(invariants_from_json(e));
  return out;
}

Json expected_json(const ExpectedResults& e) {
  Json out;
  if (!e.factors.empty()) {
    out["factors"] = Json::array();
    for (const auto& f : e.factors) out["factors"].push_back(graded_json(f));
  }
  if (!e.assembly.empty()) out["assembly"] = graded_json(e.assembly);
  if (e.k0) out["k0"] = invariants_to_json(*e.k0);
  if (e.k1) out["k1"] = invariants_to_json(*e.k1);
  return out;
}

ExpectedResults expected_from_json(const Json& j) {
  ExpectedResults e;
  if (j.contains("factors"))
    for (const auto& f : j.at("factors")) e.factors.push_back(graded_from_json(f));
  if (j.contains("assembly")) e.assembly = graded_from_json(j.at("assembly"));
  if (j.contains("k0")) e.k0 = invariants_from_json(j.at("k0"));
  if (j.contains("k1")) e.k1 = invariants_from_json(j.at("k1"));
  return e;
}

}  // namespace

Json invariants_to_json(const AbelianInvariants& a) {
  Json out;
  out["free_rank"] = a.free_rank;
  out["torsion"] = Json::array();
  for (const auto& t : a.torsion) out["torsion"].push_back(bigint_json(t));
  return out;
}

AbelianInvariants invariants_from_json(const Json& j) {
  AbelianInvariants a;
  a.free_rank = get<std::size_t>(field(j, "free_rank"), "free_rank");
  if (j.contains("torsion"))
    for (const auto& t : j.at("torsion"))
      a.torsion.push_back(t.is_string() ? BigInt(t.get<std::string>()) : BigInt(get<long long>(t, "torsion")));
  return a;
}

Json group_spec_to_json(const GroupSpec& g) {
  using K = GroupSpec::Kind;
  Json out;
  switch (g.kind) {
    case K::Cyclic: out["cyclic"] = g.n; break;
    case K::Dihedral: out["dihedral"] = g.n; break;
    case K::ElementaryAbelian2: out["klein"] = g.n; break;
    case K::Product:
      out["product"] = Json::array({group_spec_to_json(g.factors.at(0)), group_spec_to_json(g.factors.at(1))});
      break;
    case K::Semidirect: {
      Json s;
      s["normal"] = group_spec_to_json(g.factors.at(0));
      s["acting"] = group_spec_to_json(g.factors.at(1));
      s["action"] = g.action;
      out["semidirect"] = s;
      break;
    }
    case K::Table: out["table"] = g.table; break;
  }
  return out;
}

GroupSpec group_spec_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("group constructor must be an object with one key");
  const auto& [key, v] = *j.items().begin();
  GroupSpec g;
  using K = GroupSpec::Kind;
  if (key == "cyclic" || key == "dihedral" || key == "klein") {
    g.kind = key == "cyclic" ? K::Cyclic : key == "dihedral" ? K::Dihedral : K::ElementaryAbelian2;
    g.n = get<int>(v, key.c_str());
    if (g.n < 1) bad("group parameter must be positive");
  } else if (key == "product") {
    if (!v.is_array() || v.size() != 2) bad("product needs two factors");
    g.kind = K::Product;
    g.factors = {group_spec_from_json(v[0]), group_spec_from_json(v[1])};
  } else if (key == "semidirect") {
    g.kind = K::Semidirect;
    g.factors = {group_spec_from_json(field(v, "normal")), group_spec_from_json(field(v, "acting"))};
    g.action = get<std::vector<std::vector<int>>>(field(v, "action"), "action");
  } else if (key == "table") {
    g.kind = K::Table;
    g.table = get<std::vector<std::vector<int>>>(v, "table");
  } else {
    bad("unknown group constructor '" + key + "'");
  }
  return g;
}

Json scenario_to_json(const Scenario& s) {
  Json out;
  out["name"] = s.name;
  out["description"] = s.description;
  if (!s.remarks.empty()) out["remarks"] = s.remarks;
  out["control_group"] = group_spec_to_json(s.control);
  out["cocycles"] = Json::object();
  for (const auto& c : s.cocycles) {
    if (c.d8_pairing) {
      out["cocycles"][c.name] = "d8_pairing";
      continue;
    }
    Json t;
    t["group"] = group_spec_to_json(c.group);
    t["modulus"] = c.modulus;
    t["values"] = c.values;
    out["cocycles"][c.name] = t;
  }
  out["factors"] = Json::array();
  for (const auto& f : s.factors) {
    Json jf;
    jf["name"] = f.name;
    jf["cells"] = Json::array();
    for (const auto& layer : f.cells) {
      Json jl = Json::array();
      for (const auto& c : layer) {
        Json jc;
        jc["name"] = c.name;
        jc["stabilizer"] = group_spec_to_json(c.stabilizer);
        jc["to_control"] = c.to_control;
        jl.push_back(jc);
      }
      jf["cells"].push_back(jl);
    }
    jf["incidences"] = Json::array();
    for (const auto& i : f.incidences) {
      Json ji;
      ji["dimension"] = i.dimension;
      ji["cell"] = i.cell;
      ji["target"] = i.target;
      ji["coefficient"] = i.coefficient;
      ji["hom"] = i.hom;
      jf["incidences"].push_back(ji);
    }
    if (!f.twist.empty()) jf["twist"] = f.twist;
    out["factors"].push_back(jf);
  }
  if (!s.expected.empty()) {
    out["expected"] = Json::object();
    for (const char* mode : {"untwisted", "twisted"})
      if (s.expected.count(mode)) out["expected"][mode] = expected_json(s.expected.at(mode));
  }
  return out;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.name = get<std::string>(field(j, "name"), "name");
  if (j.contains("description")) s.description = get<std::string>(j.at("description"), "description");
  if (j.contains("remarks")) s.remarks = get<std::vector<std::string>>(j.at("remarks"), "remarks");
  s.control = group_spec_from_json(field(j, "control_group"));
  if (j.contains("cocycles")) {
    const Json& cs = j.at("cocycles");
    if (!cs.is_object()) bad("cocycles must be an object");
    for (const auto& [name, v] : cs.items()) {
      CocycleSpec c;
      c.name = name;
      if (v.is_string()) {
        if (v.get<std::string>() != "d8_pairing") bad("unknown named cocycle '" + v.get<std::string>() + "'");
        c.d8_pairing = true;
        c.group = GroupSpec::klein(2);
      } else {
        c.group = group_spec_from_json(field(v, "group"));
        c.modulus = get<int>(field(v, "modulus"), "modulus");
        c.values = get<std::vector<std::vector<int>>>(field(v, "values"), "values");
      }
      s.cocycles.push_back(std::move(c));
    }
  }
  for (const auto& jf : field(j, "factors")) {
    FactorSpec f;
    f.name = get<std::string>(field(jf, "name"), "name");
    for (const auto& jl : field(jf, "cells")) {
      std::vector<CellSpec> layer;
      for (const auto& jc : jl)
        layer.push_back({jc.contains("name") ? get<std::string>(jc.at("name"), "name") : std::string(),
                         group_spec_from_json(field(jc, "stabilizer")),
                         get<std::vector<int>>(field(jc, "to_control"), "to_control")});
      f.cells.push_back(std::move(layer));
    }
    if (jf.contains("incidences"))
      for (const auto& ji : jf.at("incidences"))
        f.incidences.push_back({get<int>(field(ji, "dimension"), "dimension"),
                                get<Index>(field(ji, "cell"), "cell"),
                                get<Index>(field(ji, "target"), "target"),
                                get<long>(field(ji, "coefficient"), "coefficient"),
                                get<std::vector<int>>(field(ji, "hom"), "hom")});
    if (jf.contains("twist")) f.twist = get<std::vector<std::vector<std::string>>>(jf.at("twist"), "twist");
    s.factors.push_back(std::move(f));
  }
  if (j.contains("expected"))
    for (const auto& [mode, e] : j.at("expected").items()) {
      if (mode != "untwisted" && mode != "twisted") bad("expected block must be 'untwisted' or 'twisted'");
      s.expected[mode] = expected_from_json(e);
    }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  try {
    return scenario_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("scenario file is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Building

Cocycle build_cocycle(const CocycleSpec& c) {
  if (c.d8_pairing) return d8_pairing_cocycle();
  FiniteGroup g = build_group(c.group);
  const std::size_t n = g.order();
  if (c.values.size() != n) bad("cocycle '" + c.name + "' needs one row per group element");
  std::vector<int> flat;
  for (const auto& row : c.values) {
    if (row.size() != n) bad("cocycle '" + c.name + "' is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  Cocycle out(g, c.modulus, std::move(flat));
  auto r = validate_cocycle(out);
  if (!r.valid) bad("cocycle '" + c.name + "': " + r.message);
  return out;
}

GCWComplex build_complex(const Scenario& s, const FactorSpec& f) {
  GCWComplex x;
  x.control = build_group(s.control);
  for (const auto& layer : f.cells) {
    std::vector<Cell> cells;
    for (const auto& c : layer) {
      FiniteGroup g = build_group(c.stabilizer);
      cells.push_back({c.name, g, GroupHom(g, x.control, c.to_control), {}});
    }
    x.cells.push_back(std::move(cells));
  }
  for (const auto& i : f.incidences) {
    if (i.dimension < 1 || i.dimension > x.dimension()) bad("incidence dimension out of range in " + f.name);
    auto& layer = x.cells[static_cast<std::size_t>(i.dimension)];
    if (i.cell < 0 || static_cast<std::size_t>(i.cell) >= layer.size()) bad("incidence cell out of range in " + f.name);
    if (i.target < 0 || static_cast<std::size_t>(i.target) >= x.count(i.dimension - 1))
      bad("incidence target out of range in " + f.name);
    Cell& c = layer[static_cast<std::size_t>(i.cell)];
    const Cell& t = x.cell(i.dimension - 1, i.target);
    c.boundary.push_back({i.target, i.coefficient, GroupHom(c.stabilizer, t.stabilizer, i.hom)});
  }
  validate_complex(x);
  return x;
}

namespace {

std::vector<std::vector<Cocycle>> factor_cocycles(const Scenario& s, const FactorSpec& f,
                                                  const GCWComplex& x) {
  std::map<std::string, Cocycle> table;
  for (const auto& c : s.cocycles) table.emplace(c.name, build_cocycle(c));
  if (f.twist.size() != x.cells.size()) bad("twist of " + f.name + " must name a cocycle per cell");
  std::vector<std::vector<Cocycle>> out;
  for (std::size_t n = 0; n < x.cells.size(); ++n) {
    if (f.twist[n].size() != x.cells[n].size()) bad("twist of " + f.name + " must name a cocycle per cell");
    std::vector<Cocycle> layer;
    for (std::size_t i = 0; i < x.cells[n].size(); ++i) {
      const auto& name = f.twist[n][i];
      if (name == "trivial") {
        layer.push_back(Cocycle::zero(x.cells[n][i].stabilizer, 2));
        continue;
      }
      auto it = table.find(name);
      if (it == table.end()) bad("unknown cocycle '" + name + "' in " + f.name);
      layer.push_back(it->second);
    }
    out.push_back(std::move(layer));
  }
  return out;
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.factors.empty()) bad("scenario has no factors");
  std::set<std::string> names;
  for (const auto& c : s.cocycles) {
    if (!names.insert(c.name).second) bad("duplicate cocycle name '" + c.name + "'");
    build_cocycle(c);
  }
  for (const auto& f : s.factors) {
    auto x = build_complex(s, f);
    if (!f.twist.empty()) coeff_system_twisted(x, factor_cocycles(s, f, x));
  }
}

// ---------------------------------------------------------------------------
// K-theory

KTheoryReadout k_theory_from_bredon(const GradedRMod& h, bool assume_collapse) {
  KTheoryReadout out;
  bool odd_zero = true;
  for (std::size_t n = 0; n < h.size(); ++n) {
    auto a = z_invariants(h[n]);
    if (n % 2 == 0)
      out.k0 = direct_sum(out.k0, a);
    else {
      out.k1 = direct_sum(out.k1, a);
      if (!a.is_zero()) odd_zero = false;
    }
  }
  if (odd_zero) {
    out.basis = CollapseBasis::EvenConcentration;
    out.justification = "Bredon cohomology is concentrated in even degrees";
  } else if (assume_collapse) {
    out.basis = CollapseBasis::AssertedByFlag;
    out.justification =
        "asserted by flag: collapse follows from Z-freeness of all modules "
        "(Lueck, Chern characters, Prop. 5.8)";
  } else {
    throw CollapseError("odd-degree Bredon cohomology is nonzero; collapse is not established "
                        "(pass --assume-collapse to assert it)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs

int RunReport::exit_code() const {
  if (!assembly_complete) return 3;
  if (!expected_mismatches.empty()) return 3;
  for (const auto& d : direct_checks)
    if (!d.agree) return 3;
  if (!k_theory) return 4;
  return 0;
}

namespace {

bool all_free(const GradedRMod& h) {
  for (const auto& m : h)
    if (!z_invariants(m).is_free()) return false;
  return true;
}

struct BuiltFactor {
  GCWComplex complex;
  CoeffSystem coefficients;
  GradedRMod cohomology;
};

void compare(std::vector<std::string>& out, const std::string& what,
             const std::vector<AbelianInvariants>& want, const std::vector<AbelianInvariants>& got) {
  for (std::size_t n = 0; n < std::max(want.size(), got.size()); ++n) {
    AbelianInvariants w = n < want.size() ? want[n] : AbelianInvariants{};
    AbelianInvariants g = n < got.size() ? got[n] : AbelianInvariants{};
    if (!(w == g))
      out.push_back(what + " degree " + std::to_string(n) + ": expected " + w.to_string() + ", got " +
                    g.to_string());
  }
}

}  // namespace

RunReport run_scenario(const Scenario& s, const RunOptions& options) {
  validate_scenario(s);
  RunReport r;
  r.scenario = s.name;
  bool any_twist = false;
  for (const auto& f : s.factors) any_twist = any_twist || !f.twist.empty();
  r.twisted = options.twisted && any_twist;
  if (options.twisted && !any_twist) r.warnings.push_back("--twisted given but the scenario declares no twist");

  std::vector<std::future<std::pair<BuiltFactor, FactorReport>>> jobs;
  for (const auto& f : s.factors) {
    const bool tw = r.twisted && !f.twist.empty();
    jobs.push_back(std::async(std::launch::async, [&s, &f, tw] {
      BuiltFactor b;
      b.complex = build_complex(s, f);
      b.coefficients = tw ? coeff_system_twisted(b.complex, factor_cocycles(s, f, b.complex))
                          : coeff_system_reps(b.complex);
      auto cochains = cochain_complex(b.complex, b.coefficients);
      b.cohomology = cohomology(cochains);
      FactorReport fr{f.name, tw, {}, graded_invariants(b.cohomology)};
      for (const auto& c : cochains.modules) fr.cochain_ranks.push_back(z_invariants(c));
      return std::make_pair(std::move(b), std::move(fr));
    }));
  }
  std::vector<BuiltFactor> built;
  for (auto& j : jobs) {
    auto [b, fr] = j.get();
    r.z_free_pipeline = r.z_free_pipeline && all_free(b.cohomology);
    r.factors.push_back(std::move(fr));
    built.push_back(std::move(b));
  }

  GradedRMod acc = built[0].cohomology;
  r.assembly_complete = true;
  for (std::size_t step = 1; step < built.size(); ++step) {
    auto checks = fold_tor_checks(acc, built[step].cohomology, step);
    for (const auto& c : checks) {
      r.tor_checks.push_back(c);
      if (!c.tor.is_zero() && r.fold_error.empty())
        r.fold_error = "fold step " + std::to_string(step) + " (" + s.factors[step].name + "): Tor_1 at degrees (" +
                       std::to_string(c.p) + ", " + std::to_string(c.q) + ") is " + c.tor.to_string();
    }
    if (!r.fold_error.empty()) {
      r.assembly_complete = false;
      break;
    }
    auto k = kunneth_assemble(acc, built[step].cohomology);
    for (auto& w : k.warnings) r.warnings.push_back("fold step " + std::to_string(step) + ": " + w);
    acc = k.assembled();
    r.z_free_pipeline = r.z_free_pipeline && all_free(acc);
  }
  if (r.assembly_complete) {
    r.assembly = graded_invariants(acc);
    try {
      r.k_theory = k_theory_from_bredon(acc, options.assume_collapse);
    } catch (const CollapseError& e) {
      r.k_theory_error = e.what();
    }
  } else {
    r.z_free_pipeline = false;
  }

  const auto depth = static_cast<std::size_t>(std::max(0, options.direct_check_depth));
  if (depth >= 2) {
    if (depth > built.size()) throw ValidationError("direct-check depth exceeds the number of factors");
    GCWComplex x = built[0].complex;
    CoeffSystem m = built[0].coefficients;
    GradedRMod k = built[0].cohomology;
    for (std::size_t i = 1; i < depth; ++i) {
      auto p = product_complex(x, built[i].complex);
      m = tensor_coeff_systems(m, built[i].coefficients, p);
      x = std::move(p.complex);
      k = kunneth_assemble(k, built[i].cohomology).assembled();
    }
    DirectCheck d{static_cast<int>(depth), graded_invariants(cohomology(x, m)), graded_invariants(k), false};
    d.agree = d.direct == d.assembled;
    r.direct_checks.push_back(std::move(d));
  }

  const std::string mode = r.twisted ? "twisted" : "untwisted";
  auto it = s.expected.find(mode);
  if (it != s.expected.end()) {
    const auto& e = it->second;
    for (std::size_t i = 0; i < e.factors.size() && i < r.factors.size(); ++i)
      compare(r.expected_mismatches, "factor " + r.factors[i].name, e.factors[i], r.factors[i].cohomology);
    if (!e.assembly.empty()) {
      if (!r.assembly_complete)
        r.expected_mismatches.push_back("assembly: expected values given but the fold did not complete");
      else
        compare(r.expected_mismatches, "assembly", e.assembly, r.assembly);
    }
    if ((e.k0 || e.k1) && !r.k_theory) r.expected_mismatches.push_back("k_theory: expected values given but not computed");
    if (e.k0 && r.k_theory && !(*e.k0 == r.k_theory->k0))
      r.expected_mismatches.push_back("k0: expected " + e.k0->to_string() + ", got " + r.k_theory->k0.to_string());
    if (e.k1 && r.k_theory && !(*e.k1 == r.k_theory->k1))
      r.expected_mismatches.push_back("k1: expected " + e.k1->to_string() + ", got " + r.k_theory->k1.to_string());
  }
  return r;
}

Json report_to_json(const RunReport& r) {
  Json out;
  out["scenario"] = r.scenario;
  out["mode"] = r.twisted ? "twisted" : "untwisted";
  const int code = r.exit_code();
  out["status"] = !r.assembly_complete ? "fold_aborted"
                  : code == 3          ? "verification_mismatch"
                  : code == 4          ? "collapse_not_established"
                                       : "ok";
  out["factors"] = Json::array();
  for (const auto& f : r.factors) {
    Json jf;
    jf["name"] = f.name;
    jf["twisted"] = f.twisted;
    jf["cochains"] = graded_json(f.cochain_ranks);
    jf["cohomology"] = graded_json(f.cohomology);
    out["factors"].push_back(jf);
  }
  Json a;
  a["complete"] = r.assembly_complete;
  if (!r.fold_error.empty()) a["error"] = r.fold_error;
  a["degrees"] = graded_json(r.assembly);
  out["assembly"] = a;
  Json k;
  if (r.k_theory) {
    k["k0"] = invariants_to_json(r.k_theory->k0);
    k["k1"] = invariants_to_json(r.k_theory->k1);
    k["collapse_basis"] =
        r.k_theory->basis == CollapseBasis::EvenConcentration ? "even_concentration" : "asserted_by_flag";
    k["justification"] = r.k_theory->justification;
  } else {
    k["error"] = r.assembly_complete ? r.k_theory_error : "assembly incomplete";
  }
  out["k_theory"] = k;
  Json c;
  c["delta_squared_zero"] = r.delta_squared_zero;
  c["z_free_pipeline"] = r.z_free_pipeline;
  c["tor"] = Json::array();
  for (const auto& t : r.tor_checks) {
    Json jt;
    jt["step"] = t.step;
    jt["p"] = t.p;
    jt["q"] = t.q;
    Json inv = invariants_to_json(t.tor);
    jt["free_rank"] = inv["free_rank"];
    jt["torsion"] = inv["torsion"];
    jt["vanishes"] = t.tor.is_zero();
    c["tor"].push_back(jt);
  }
  c["warnings"] = r.warnings;
  c["direct_vs_kunneth"] = Json::array();
  for (const auto& d : r.direct_checks) {
    Json jd;
    jd["depth"] = d.depth;
    jd["direct"] = graded_json(d.direct);
    jd["assembled"] = graded_json(d.assembled);
    jd["verdict"] = d.agree ? "PASS" : "FAIL";
    c["direct_vs_kunneth"].push_back(jd);
  }
  c["expected_mismatches"] = r.expected_mismatches;
  out["checks"] = c;
  return out;
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream os;
  auto line = [&](const std::vector<AbelianInvariants>& h) {
    for (std::size_t n = 0; n < h.size(); ++n) os << (n ? ", " : "") << "H^" << n << " = " << h[n].to_string();
    os << "\n";
  };
  os << "scenario " << r.scenario << " (" << (r.twisted ? "twisted" : "untwisted") << ")\n";
  for (const auto& f : r.factors) {
    os << "  factor " << f.name << (f.twisted ? " [twisted]" : "") << ": ";
    line(f.cohomology);
  }
  if (r.assembly_complete) {
    os << "  assembly: ";
    line(r.assembly);
  } else {
    os << "  assembly aborted: " << r.fold_error << "\n";
  }
  if (r.k_theory)
    os << "  K^0 = " << r.k_theory->k0.to_string() << ", K^1 = " << r.k_theory->k1.to_string() << " ("
       << r.k_theory->justification << ")\n";
  else if (r.assembly_complete)
    os << "  K-theory: " << r.k_theory_error << "\n";
  for (const auto& d : r.direct_checks) {
    os << "  direct vs Kunneth, depth " << d.depth << ": " << (d.agree ? "PASS" : "FAIL") << "\n    direct:    ";
    line(d.direct);
    os << "    assembled: ";
    line(d.assembled);
  }
  os << "  Z-free pipeline: " << (r.z_free_pipeline ? "yes" : "no") << "\n";
  for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  for (const auto& m : r.expected_mismatches) os << "  mismatch: " << m << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Pullback sweep

std::size_t SweepReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const SweepEntry& e) { return e.report.passed(); }));
}

std::vector<const SweepEntry*> SweepReport::failures() const {
  std::vector<const SweepEntry*> out;
  for (const auto& e : entries)
    if (!e.report.passed()) out.push_back(&e);
  return out;
}

namespace {

struct Named {
  std::string name;
  FiniteGroup group;
};

std::vector<Named> sweep_family(std::size_t bound) {
  std::vector<Named> out{{"1", trivial_group()}};
  for (int n = 2; static_cast<std::size_t>(n) <= bound; ++n) out.push_back({"C" + std::to_string(n), cyclic_group(n)});
  for (int r = 2; (std::size_t{1} << r) <= bound; ++r)
    out.push_back({"(C2)^" + std::to_string(r), elementary_abelian_2(r)});
  if (bound >= 8) out.push_back({"D8", dihedral_group(4)});
  return out;
}

std::vector<GroupHom> surjections(const FiniteGroup& p, const FiniteGroup& s, bool one_per_kernel) {
  std::vector<GroupHom> out;
  std::set<std::vector<int>> kernels;
  for (auto& f : all_homomorphisms(p, s)) {
    if (!f.is_surjective()) continue;
    if (one_per_kernel) {
      std::vector<int> ker;
      for (int x = 0; x < static_cast<int>(p.order()); ++x)
        if (f(x) == 0) ker.push_back(x);
      if (!kernels.insert(ker).second) continue;
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

SweepReport verify_pullback_iso_sweep(std::size_t order_bound) {
  if (order_bound > kDefaultOrderBound) throw ValidationError("order bound exceeds the global bound");
  SweepReport r;
  r.order_bound = order_bound;
  const auto family = sweep_family(order_bound);
  for (const auto& s : family)
    for (const auto& p : family) {
      if (p.group.order() % s.group.order() != 0) continue;
      auto left = surjections(p.group, s.group, true);
      if (left.empty()) continue;
      for (const auto& q : family) {
        if (q.group.order() % s.group.order() != 0) continue;
        for (const auto& f2 : surjections(q.group, s.group, false))
          for (const auto& f1 : left)
            r.entries.push_back({p.name, q.name, s.name, f1.images(), f2.images(), false,
                                 verify_pullback_rep_iso(f1, f2)});
      }
    }
  if (order_bound >= 4) {
    const auto v4 = elementary_abelian_2(2);
    const auto c = d8_pairing_cocycle();
    for (const auto& s : family) {
      if (4 % s.group.order() != 0) continue;
      for (const auto& f1 : surjections(v4, s.group, false))
        for (const auto& q : family) {
          if (q.group.order() % s.group.order() != 0) continue;
          for (const auto& f2 : surjections(q.group, s.group, false))
            r.entries.push_back({"(C2)^2 with the D8 cocycle", q.name, s.name, f1.images(), f2.images(), true,
                                 verify_pullback_rep_iso(f1, f2, c)});
        }
    }
  }
  return r;
}

Json sweep_to_json(const SweepReport& r) {
  Json out;
  out["order_bound"] = r.order_bound;
  out["diagrams"] = r.entries.size();
  out["passed"] = r.passed();
  out["failures"] = Json::array();
  for (const auto* e : r.failures()) {
    Json j;
    j["p"] = e->p;
    j["q"] = e->q;
    j["s"] = e->s;
    j["f1"] = e->f1;
    j["f2"] = e->f2;
    j["twisted"] = e->twisted;
    j["pullback_order"] = e->report.pullback_order;
    j["domain"] = invariants_to_json(e->report.domain);
    j["target_rank"] = e->report.target_rank;
    j["relations_killed"] = e->report.relations_killed;
    j["injective"] = e->report.injective;
    j["surjective"] = e->report.surjective;
    out["failures"].push_back(j);
  }
  return out;
}

}  // namespace bredon
