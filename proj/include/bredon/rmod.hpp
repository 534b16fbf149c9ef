#pragma once

#include "bredon/exactlin.hpp"

#include <memory>
#include <string>
#include <vector>

namespace bredon {

struct RepRingData;

/// Commutative ring with a finite Z-basis; basis element 0 is the unit.
class BaseRing {
 public:
  BaseRing();  // Z

  /// mult[i] is the matrix of multiplication by basis element i.
  BaseRing(std::string name, std::vector<IntMatrix> mult);

  static BaseRing integers();
  static BaseRing from_rep_ring(const RepRingData& r, std::string name);

  const std::string& name() const { return data_->name; }
  Index zrank() const { return static_cast<Index>(data_->mult.size()); }
  const std::vector<IntMatrix>& mult() const { return data_->mult; }
  const IntMatrix& mult(std::size_t i) const { return data_->mult[i]; }
  /// Basis indices generating the ring as a Z-algebra.
  const std::vector<std::size_t>& algebra_generators() const { return data_->generators; }

  /// Commutativity, associativity and unit law on the basis.
  bool satisfies_axioms() const;

  friend bool operator==(const BaseRing& a, const BaseRing& b) {
    return a.data_ == b.data_ || a.data_->mult == b.data_->mult;
  }

 private:
  struct Data {
    std::string name;
    std::vector<IntMatrix> mult;
    std::vector<std::size_t> generators;
  };
  std::shared_ptr<const Data> data_;
};

/// Z^g / im(relations) with one action matrix per ring basis element,
/// well defined modulo the relations.
struct RMod {
  BaseRing ring;
  IntMatrix relations;             // g x r
  std::vector<IntMatrix> action;   // zrank matrices, g x g

  Index generators() const { return relations.rows(); }
};

struct RModMap {
  RMod source;
  RMod target;
  IntMatrix matrix;  // target.generators() x source.generators()
};

RMod zero_module(const BaseRing& ring);
RMod free_module(const BaseRing& ring, Index n);

/// R viewed as a module over another ring through a ring hom with matrix
/// `hom` (columns are images of the basis of `over`).
RMod restrict_scalars(const RMod& m, const BaseRing& over, const IntMatrix& hom);

/// Checks the module invariants: relations stable under the action, unit
/// acts as identity and the action realises the structure constants, all
/// modulo relations.
bool is_valid_module(const RMod& m);
bool is_valid_map(const RModMap& f);

AbelianInvariants z_invariants(const RMod& m);

/// Module isomorphic to m with the fewest generators SNF allows: one per
/// invariant factor other than 1, plus the free rank.
struct Pruned {
  RMod module;
  IntMatrix to_pruned;    // pruned gens x old gens
  IntMatrix from_pruned;  // old gens x pruned gens
};
Pruned prune(const RMod& m);

/// The ring submodule generated by the given elements (columns).
struct Submodule {
  RMod module;
  RModMap inclusion;
};
Submodule submodule_from_generators(const RMod& m, const IntMatrix& gens);

Submodule map_kernel(const RModMap& f);

struct Quotient {
  RMod module;
  RModMap projection;
};
Quotient map_cokernel(const RModMap& f);

RMod direct_sum(const std::vector<RMod>& ms);

/// m (x)_ring n; generator (a, b) sits at index a * n.generators() + b.
/// The result is not pruned, so maps can be tensored with tensor_maps.
RMod tensor_over_ring(const RMod& m, const RMod& n);
/// f (x) g between unpruned tensor products.
IntMatrix tensor_maps(const IntMatrix& f, const IntMatrix& g);

/// F1 -> F0 -> m -> 0 with F0, F1 free over the ring.
struct FreePresentation {
  RMod f0, f1;
  IntMatrix epsilon;  // F0 -> m
  IntMatrix d1;       // F1 -> F0
  Index f0_rank = 0;  // ring rank of F0
  Index f1_rank = 0;
};
FreePresentation free_presentation(const RMod& m);

/// Tor_i^ring(m, n), pruned.
RMod tor(const RMod& m, const RMod& n, int i = 1);

}  // namespace bredon
