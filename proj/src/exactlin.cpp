#include "bredon/exactlin.hpp"

#include <sstream>

namespace bredon {

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    if (!first) os << " + ";
    if (j - i > 1)
      os << "(Z/" << torsion[i] << ")^" << j - i;
    else
      os << "Z/" << torsion[i];
    first = false;
    i = j;
  }
  if (first) os << "0";
  return os.str();
}

AbelianInvariants direct_sum(const AbelianInvariants& a,
                             const AbelianInvariants& b) {
  // Recombine through the diagonal relation matrix so the divisibility
  // chain is restored.
  const Index n = static_cast<Index>(a.torsion.size() + b.torsion.size());
  IntMatrix rel = IntMatrix::Zero(n, n);
  Index i = 0;
  for (const auto& d : a.torsion) rel(i, i) = d, ++i;
  for (const auto& d : b.torsion) rel(i, i) = d, ++i;
  AbelianInvariants out = cokernel_invariants(rel);
  out.free_rank = a.free_rank + b.free_rank;
  return out;
}

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix int_matrix(Index rows, Index cols, const std::vector<long>& entries) {
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  auto max_abs = [](const IntMatrix& m) {
    BigInt best = 0;
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (abs(m(i, j)) > best) best = abs(m(i, j));
    return best;
  };
  const BigInt bound = max_abs(a) * max_abs(b) * std::max<Index>(a.cols(), 1);
  if (bound >= (BigInt(1) << 62)) return a * b;
  using Small = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
  Small sa(a.rows(), a.cols()), sb(b.rows(), b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) sa(i, j) = a(i, j).convert_to<long long>();
  for (Index j = 0; j < b.cols(); ++j)
    for (Index i = 0; i < b.rows(); ++i) sb(i, j) = b(i, j).convert_to<long long>();
  Small sc = sa * sb;
  IntMatrix c(sc.rows(), sc.cols());
  for (Index j = 0; j < sc.cols(); ++j)
    for (Index i = 0; i < sc.rows(); ++i) c(i, j) = sc(i, j);
  return c;
}

}  // namespace bredon
