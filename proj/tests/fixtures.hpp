#pragma once

#include "bredon/bredon.hpp"

namespace fixtures {

using namespace bredon;

inline const FiniteGroup z4 = cyclic_group(4);
inline const FiniteGroup z2 = cyclic_group(2);
inline const FiniteGroup one = trivial_group();
inline const FiniteGroup v4 = elementary_abelian_2(2);

inline GroupHom id(const FiniteGroup& g) { return GroupHom::identity(g); }

// Z/4 acting on R by n -> (-1)^n x: two vertex orbits, one edge orbit.
inline GCWComplex line_z4() {
  const GroupHom twice(z2, z4, {0, 2});
  GCWComplex x{z4, {}};
  x.cells = {{{"v1", z4, id(z4), {}}, {"v2", z4, id(z4), {}}},
             {{"e1", z2, twice, {{0, -1, twice}, {1, 1, twice}}}}};
  return x;
}

inline GCWComplex plane_z4() {
  const GroupHom twice(z2, z4, {0, 2});
  const GroupHom to4(one, z4, {0}), to2(one, z2, {0});
  GCWComplex x{z4, {}};
  x.cells = {{{"a1", z4, id(z4), {}}, {"a2", z2, twice, {}}, {"a3", z4, id(z4), {}}},
             {{"b1", one, to4, {{0, -1, to4}, {1, 1, to2}}}, {"b2", one, to4, {{1, -1, to2}, {2, 1, to4}}}},
             {{"T", one, to4, {}}}};
  return x;
}

inline GCWComplex line_v4(int edge = 3) {
  const GroupHom inc(z2, v4, {0, edge});
  GCWComplex x{v4, {}};
  x.cells = {{{"a1", v4, id(v4), {}}, {"a2", v4, id(v4), {}}}, {{"b1", z2, inc, {{0, -1, inc}, {1, 1, inc}}}}};
  return x;
}

inline std::vector<std::vector<Cocycle>> beta_twist(const Cocycle& vertex) {
  const GroupHom inc(z2, v4, {0, 3});
  return {{vertex, vertex}, {transport_cocycle(vertex, inc)}};
}

}  // namespace fixtures
