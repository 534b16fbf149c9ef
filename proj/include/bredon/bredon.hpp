#pragma once

#include "bredon/groups.hpp"
#include "bredon/reps.hpp"
#include "bredon/rmod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bredon {

/// One term of the boundary of a cell orbit.  `hom` maps the cell's
/// stabilizer injectively into the stabilizer of `target` (a cell one
/// dimension lower); any conjugation is already folded in.
struct Incidence {
  Index target = 0;
  long coefficient = 0;
  GroupHom hom;
};

struct Cell {
  std::string name;
  FiniteGroup stabilizer;
  GroupHom to_control;
  std::vector<Incidence> boundary;
};

/// Proper G-CW complex as local data: cell orbits with stabilizers, maps
/// to the control group K and attaching homs.  The ambient group is never
/// materialised.
struct GCWComplex {
  FiniteGroup control;
  std::vector<std::vector<Cell>> cells;  // by dimension

  int dimension() const { return static_cast<int>(cells.size()) - 1; }
  std::size_t count(int n) const {
    return n < 0 || n > dimension() ? 0 : cells[static_cast<std::size_t>(n)].size();
  }
  const Cell& cell(int n, Index i) const {
    return cells[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
  }
};

/// Throws ValidationError on dangling targets, non-injective attaching homs,
/// stabilizer mismatches, or attaching homs that do not commute with the
/// maps to the control group.
void validate_complex(const GCWComplex& x);

/// A single fixed point whose stabilizer is the source of `to_control`.
GCWComplex point_complex(const GroupHom& to_control);

/// Values per cell and restriction matrices per incidence, all modules over
/// R(K).  restrictions[n][i][j] maps the value at the target of incidence j
/// of cell (n, i) to the value at (n, i).
struct CoeffSystem {
  BaseRing base;
  std::vector<std::vector<RMod>> values;
  std::vector<std::vector<std::vector<IntMatrix>>> restrictions;
};

BaseRing control_ring(const GCWComplex& x);

/// R(stab) at every cell, restricted to R(K) along the map to K.
CoeffSystem coeff_system_reps(const GCWComplex& x);

/// R_alpha(stab) with one cocycle per cell (indexed like x.cells).  The
/// cocycle on a cell must equal the transport of its targets' cocycles.
CoeffSystem coeff_system_twisted(const GCWComplex& x,
                                 const std::vector<std::vector<Cocycle>>& cocycles);

struct CochainComplex {
  std::vector<RMod> modules;             // C^0 .. C^dim
  std::vector<RModMap> differentials;    // delta_n: C^n -> C^{n+1}
};

/// C^n is the direct sum of the values on the n-cells.  delta o delta = 0 is
/// certified; a failure raises ValidationError.
CochainComplex cochain_complex(const GCWComplex& x, const CoeffSystem& m);

using GradedRMod = std::vector<RMod>;

/// H^n of a cochain complex as R-modules, pruned.
GradedRMod cohomology(const CochainComplex& c);
GradedRMod cohomology(const GCWComplex& x, const CoeffSystem& m);

std::vector<AbelianInvariants> graded_invariants(const GradedRMod& h);

/// Where a product incidence comes from: the factor (0 or 1) and the index
/// of the factor incidence on that factor's cell.
struct ProductIncidence {
  int factor = 0;
  Index incidence = 0;
};

struct ProductCell {
  int p = 0, q = 0;  // factor dimensions
  Index x = 0, y = 0;  // factor cell indices
};

struct ProductComplex {
  GCWComplex complex;
  std::vector<std::vector<ProductCell>> cells;  // parallel to complex.cells
  std::vector<std::vector<std::vector<ProductIncidence>>> provenance;
  std::vector<std::vector<Pullback>> pullbacks;
};

/// Cells are pairs of cells in lexicographic order within each dimension
/// (first factor dimension ascending); stabilizers are pullbacks over K;
/// boundaries follow the Leibniz rule with sign (-1)^{dim of first factor}.
ProductComplex product_complex(const GCWComplex& x, const GCWComplex& y);

}  // namespace bredon
