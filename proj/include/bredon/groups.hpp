#pragma once

#include "bredon/cyclotomic.hpp"
#include "bredon/exactlin.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

/// Finite group stored as a multiplication table.  Element 0 is the identity.
/// Copies share the immutable table.
class FiniteGroup {
 public:
  static constexpr int identity = 0;

  FiniteGroup();  // trivial group

  /// Validates closure, identity at index 0, inverses, and associativity
  /// (exhaustive up to order 64, sampled above).
  static FiniteGroup from_table(std::size_t order, std::vector<int> mul,
                                std::vector<std::string> labels = {});

  std::size_t order() const { return data_->order; }
  int mul(int a, int b) const {
    return data_->mul[static_cast<std::size_t>(a) * data_->order +
                      static_cast<std::size_t>(b)];
  }
  int inv(int a) const { return data_->inv[static_cast<std::size_t>(a)]; }
  int power(int g, long k) const;
  int conjugate(int g, int by) const { return mul(mul(by, g), inv(by)); }
  int element_order(int g) const;
  int exponent() const { return data_->exponent; }
  bool is_abelian() const;
  const std::vector<int>& table() const { return data_->mul; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  const std::string& label(int g) const {
    return data_->labels[static_cast<std::size_t>(g)];
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.data_ == b.data_ ||
           (a.order() == b.order() && a.table() == b.table());
  }

 private:
  struct Data {
    std::size_t order = 1;
    std::vector<int> mul;
    std::vector<int> inv;
    std::vector<std::string> labels;
    int exponent = 1;
  };
  std::shared_ptr<const Data> data_;
};

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
/// Elements (g, h) at index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
/// A x| B with (a, b)(a', b') = (a * action[b](a'), b b'); element (a, b) at
/// index b * |A| + a.  action[b] is the permutation of A by which b acts.
FiniteGroup semidirect_product(const FiniteGroup& normal,
                               const FiniteGroup& acting,
                               const std::vector<std::vector<int>>& action);
/// Dihedral group of order 2n as Z/n x| Z/2 with inversion.
FiniteGroup dihedral_group(int n);
FiniteGroup elementary_abelian_2(int rank);

/// Recursive constructor description, as accepted by build_group and the
/// scenario file format.
struct GroupSpec {
  enum class Kind { Cyclic, Product, Semidirect, Dihedral, ElementaryAbelian2, Table };
  Kind kind = Kind::Cyclic;
  int n = 1;                              // Cyclic, Dihedral, ElementaryAbelian2
  std::vector<GroupSpec> factors;         // Product (2), Semidirect (normal, acting)
  std::vector<std::vector<int>> action;   // Semidirect
  std::vector<std::vector<int>> table;    // Table

  static GroupSpec cyclic(int n) { return {Kind::Cyclic, n, {}, {}, {}}; }
  static GroupSpec dihedral(int n) { return {Kind::Dihedral, n, {}, {}, {}}; }
  static GroupSpec klein(int rank = 2) {
    return {Kind::ElementaryAbelian2, rank, {}, {}, {}};
  }
  static GroupSpec product(GroupSpec a, GroupSpec b) {
    return {Kind::Product, 0, {std::move(a), std::move(b)}, {}, {}};
  }
};

FiniteGroup build_group(const GroupSpec& spec);

/// Homomorphism given by the image of every source element.
class GroupHom {
 public:
  GroupHom() = default;
  /// Validates the homomorphism property.
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<int> images);

  static GroupHom identity(const FiniteGroup& g);
  static GroupHom trivial(const FiniteGroup& source, const FiniteGroup& target);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<int>& images() const { return images_; }
  int operator()(int g) const { return images_[static_cast<std::size_t>(g)]; }

  bool is_injective() const;
  bool is_surjective() const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           a.images_ == b.images_;
  }

 private:
  FiniteGroup source_, target_;
  std::vector<int> images_;
};

/// outer o inner
GroupHom compose(const GroupHom& outer, const GroupHom& inner);

/// Every homomorphism source -> target, ordered lexicographically by the
/// images of a greedily chosen generating set.
std::vector<GroupHom> all_homomorphisms(const FiniteGroup& source, const FiniteGroup& target);

struct Pullback {
  FiniteGroup group;
  GroupHom p1, p2;
  std::vector<std::pair<int, int>> pairs;  // element index -> (p, q)
};

/// {(p, q) : f1(p) == f2(q)} with its coordinate projections; pairs are
/// enumerated with p major, so (identity, identity) is element 0.
Pullback pullback_subgroup(const GroupHom& f1, const GroupHom& f2);

struct ConjugacyClasses {
  std::vector<int> class_of;             // element -> class index
  std::vector<std::vector<int>> members; // ordered by smallest member
  std::vector<int> representatives;      // smallest member of each class

  std::size_t count() const { return members.size(); }
  std::size_t size(std::size_t c) const { return members[c].size(); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/// Values of a class function, one per conjugacy class.
using ClassFunction = std::vector<Cyclotomic>;

class CharacterTable {
 public:
  CharacterTable(FiniteGroup group, ConjugacyClasses classes, int level,
                 std::vector<ClassFunction> chars);

  const FiniteGroup& group() const { return group_; }
  const ConjugacyClasses& classes() const { return classes_; }
  int level() const { return level_; }
  std::size_t size() const { return chars_.size(); }
  const ClassFunction& character(std::size_t i) const { return chars_[i]; }
  const std::vector<ClassFunction>& characters() const { return chars_; }
  int degree(std::size_t i) const { return degrees_[i]; }

  Cyclotomic value(std::size_t chi, int element) const {
    return chars_[chi][static_cast<std::size_t>(
        classes_.class_of[static_cast<std::size_t>(element)])];
  }

  /// (1/|G|) sum_g a(g) conj(b(g)), exact.
  Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) const;
  /// Multiplicities of the irreducibles in a virtual character; throws
  /// VerificationError if some inner product is not an integer.
  std::vector<BigInt> decompose(const ClassFunction& f) const;

  /// Class function on this group obtained as chi o f for f: group -> other.
  ClassFunction pull_back(const CharacterTable& other, std::size_t chi,
                          const GroupHom& f) const;

  ClassFunction product(const ClassFunction& a, const ClassFunction& b) const;

 private:
  FiniteGroup group_;
  ConjugacyClasses classes_;
  int level_;
  std::vector<ClassFunction> chars_;
  std::vector<int> degrees_;
};

inline constexpr std::size_t kDefaultOrderBound = 128;

/// Irreducible characters by Dixon's method over a prime field.  Row 0 is
/// the trivial character; rows are sorted by degree.
CharacterTable character_table(const FiniteGroup& g,
                               std::size_t order_bound = kDefaultOrderBound);
/// As above; with linear_shortcut (abelian groups only) the characters are
/// read off the homomorphisms to the cyclic group of the exponent instead.
CharacterTable character_table(const FiniteGroup& g, std::size_t order_bound, bool linear_shortcut);

/// Matrix of f^*: R(G) -> R(H) for f: H -> G in irreducible bases; column j
/// holds the decomposition of chi_j o f.
IntMatrix ring_hom_matrix(const GroupHom& f, const CharacterTable& t_target,
                          const CharacterTable& t_source);

/// Same as ring_hom_matrix for an injective inclusion H -> G.
IntMatrix restriction_matrix(const GroupHom& incl, const CharacterTable& t_g,
                             const CharacterTable& t_h);

}  // namespace bredon
