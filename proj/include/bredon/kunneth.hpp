#pragma once

#include "bredon/bredon.hpp"

#include <string>
#include <vector>

namespace bredon {

/// Values M_x(sigma) (x)_R M_y(tau) on the product cells, restrictions the
/// tensor products of the factor restrictions.
CoeffSystem tensor_coeff_systems(const CoeffSystem& mx, const CoeffSystem& my,
                                 const ProductComplex& product);

struct KunnethTerm {
  int p = 0, q = 0;
  RMod module;
};

struct KunnethDegree {
  std::vector<KunnethTerm> tensor_part;  // p + q = n
  std::vector<KunnethTerm> tor_part;     // p + q = n + 1
  RMod assembled;
};

struct KunnethResult {
  std::vector<KunnethDegree> degrees;
  /// Tor_1(H^0, H^0) would sit in degree -1; recorded when nonzero.
  std::vector<std::string> warnings;

  GradedRMod assembled() const;
};

/// Direct-sum realisation of the split Kunneth sequence.
KunnethResult kunneth_assemble(const GradedRMod& hx, const GradedRMod& hy);

struct TorCheck {
  std::size_t step = 0;  // fold step, 1-based
  int p = 0, q = 0;
  AbelianInvariants tor;
};

/// Tor_1(a^p, b^q) for every pair of nonzero degrees with p + q >= 1.
std::vector<TorCheck> fold_tor_checks(const GradedRMod& a, const GradedRMod& b, std::size_t step);

struct FoldResult {
  GradedRMod assembled;
  std::vector<TorCheck> checks;
  std::vector<std::string> warnings;
};

/// Left fold of kunneth_assemble.  Before each step Tor_1 is computed for
/// every pair of degrees whose Tor term enters the assembly (p + q >= 1);
/// a nonzero value raises VerificationError naming the pair.
FoldResult kunneth_fold(const std::vector<GradedRMod>& factors);

struct KunnethComparison {
  std::vector<AbelianInvariants> direct;
  std::vector<AbelianInvariants> assembled;
  std::vector<std::string> warnings;  // cochain-level Tor_1 that is nonzero
  bool agree = false;
};

/// Cohomology of the product complex with tensor coefficients against the
/// Kunneth assembly of the factor cohomologies.
KunnethComparison kunneth_vs_direct(const GCWComplex& x, const GCWComplex& y,
                                    const CoeffSystem& mx, const CoeffSystem& my);

}  // namespace bredon
