#pragma once

#include "bredon/exactlin.hpp"
#include "bredon/groups.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

/// R(G) on the basis of irreducible characters.
struct RepRingData {
  CharacterTable table;
  /// mult[i](k, j) = c_ij^k, i.e. the matrix of multiplication by chi_i.
  std::vector<IntMatrix> mult;

  const FiniteGroup& group() const { return table.group(); }
  std::size_t rank() const { return table.size(); }
  const BigInt& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return mult[i](static_cast<Index>(k), static_cast<Index>(j));
  }
};

/// Representation ring of g.  Results are memoised by multiplication table,
/// so repeated stabilizers share one character table.
std::shared_ptr<const RepRingData> rep_ring(const FiniteGroup& g);

/// Matrix of f^*: R(G) -> R(H) for f: H -> G.
IntMatrix ring_hom_from_group_hom(const GroupHom& f);

/// Normalised 2-cocycle with values in Z/n, stored additively.
class Cocycle {
 public:
  Cocycle() = default;
  Cocycle(FiniteGroup group, int modulus, std::vector<int> values);

  static Cocycle zero(const FiniteGroup& g, int modulus);

  const FiniteGroup& group() const { return group_; }
  int modulus() const { return modulus_; }
  const std::vector<int>& values() const { return values_; }
  int operator()(int g, int h) const {
    return values_[static_cast<std::size_t>(g) * group_.order() +
                   static_cast<std::size_t>(h)];
  }
  bool is_zero() const;

  friend bool operator==(const Cocycle& a, const Cocycle& b) {
    return a.modulus_ == b.modulus_ && a.group_ == b.group_ && a.values_ == b.values_;
  }

 private:
  FiniteGroup group_;
  int modulus_ = 1;
  std::vector<int> values_;
};

/// The Z/2-valued cocycle (g, h) -> g_2 h_1 on (Z/2)^2 = elementary_abelian_2(2),
/// whose central extension is the dihedral group of order 8.  The preimage
/// of the diagonal element is cyclic of order 4.
Cocycle d8_pairing_cocycle();

struct CocycleReport {
  bool valid = true;
  std::string message;
  std::optional<std::array<int, 3>> witness;  // failing (g, h, k)
};

CocycleReport validate_cocycle(const Cocycle& c);

/// (h, h') -> c(f(h), f(h')).
Cocycle transport_cocycle(const Cocycle& c, const GroupHom& f);

/// c + delta b with (delta b)(g, h) = b(g) + b(h) - b(gh); requires b(1) = 0.
Cocycle shift_by_coboundary(const Cocycle& c, const std::vector<int>& b);

struct CentralExtensionData {
  FiniteGroup base;
  Cocycle cocycle;
  FiniteGroup total;      // element (g, j) at index g * n + j
  GroupHom projection;    // total -> base
  int central_generator;  // (1, 1)
};

CentralExtensionData central_extension(const FiniteGroup& g, const Cocycle& c);

/// R_alpha(G) realised inside R(G_alpha): the span of the irreducibles of
/// the extension on which the central generator acts by exp(2 pi i / n).
/// For the zero cocycle the basis is Irr(G) (tensored with that central
/// character), in the order of rep_ring(G).
struct TwistedRepModule {
  std::shared_ptr<const RepRingData> base;   // R(G)
  CentralExtensionData extension;
  std::shared_ptr<const RepRingData> total;  // R(G_alpha)
  std::vector<ClassFunction> basis;          // orthonormal, on G_alpha
  std::vector<IntMatrix> action;             // one per irreducible of G
  bool untwisted = false;

  std::size_t rank() const { return basis.size(); }
};

TwistedRepModule twisted_rep_group(const FiniteGroup& g, const Cocycle& c);

/// Coordinates of a character of G_alpha in the basis of m; throws
/// VerificationError when it does not lie in the span.
std::vector<BigInt> twisted_coordinates(const TwistedRepModule& m,
                                        const ClassFunction& f);

/// Restriction R_{c}(G) -> R_{f^* c}(H) along f: H -> G, where `source`
/// must carry exactly the transported cocycle.
IntMatrix twisted_restriction(const GroupHom& f, const TwistedRepModule& target,
                              const TwistedRepModule& source);

struct PullbackIsoReport {
  std::size_t pullback_order = 0;
  AbelianInvariants domain;   // R_c(P) (x)_{R(S)} R(Q) over Z
  std::size_t target_rank = 0;  // rank of R(Lambda) or R_{p1^* c}(Lambda)
  bool relations_killed = false;
  bool surjective = false;
  bool injective = false;
  bool twisted = false;

  bool passed() const { return relations_killed && surjective && injective; }
};

/// Certifies m: R_c(P) (x)_{R(S)} R(Q) -> R_{p1^* c}(Lambda),
/// rho (x) gamma -> p1^*(rho) p2^*(gamma), is an isomorphism over Z.
PullbackIsoReport verify_pullback_rep_iso(const GroupHom& f1, const GroupHom& f2,
                                          const std::optional<Cocycle>& c = std::nullopt);

}  // namespace bredon
