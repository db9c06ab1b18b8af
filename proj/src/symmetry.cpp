#include "eulerperm/symmetry.hpp"

#include <cmath>
#include <string>

#include "eulerperm/error.hpp"

namespace eulerperm {

namespace {

struct Entry {
  PermutationName name;
  std::string_view label;
  IntMatrix3 m;
  int parity;
};

constexpr std::array<Entry, 6> kTable{{
    {PermutationName::I, "I", {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, 1},
    {PermutationName::P12, "P12", {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}, -1},
    {PermutationName::P13, "P13", {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}, -1},
    {PermutationName::P23, "P23", {{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}}, -1},
    {PermutationName::Pf, "Pf", {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}, 1},
    {PermutationName::Pb, "Pb", {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}, 1},
}};

const Entry& entry(PermutationName name) { return kTable[static_cast<std::size_t>(name)]; }

std::optional<SignedPermutation> detect_signed(const Eigen::Matrix3d& m) {
  SignedPermutation sp{};
  for (int r = 0; r < 3; ++r) {
    int found = -1;
    for (int c = 0; c < 3; ++c) {
      const double v = m(r, c);
      if (v == 0.0) continue;
      if ((v != 1.0 && v != -1.0) || found >= 0) return std::nullopt;
      found = c;
      sp.sign[r] = v > 0 ? 1 : -1;
    }
    if (found < 0) return std::nullopt;
    sp.col[r] = found;
  }
  return sp;
}

}  // namespace

std::string_view to_string(PermutationName name) { return entry(name).label; }

Eigen::Matrix3d PermutationElement::as_matrix() const {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = matrix_[r][c];
  return m;
}

PermutationElement permutation(PermutationName name) {
  const Entry& e = entry(name);
  return PermutationElement(e.name, e.m, e.parity);
}

PermutationElement permutation(std::string_view name) {
  for (const Entry& e : kTable)
    if (e.label == name) return permutation(e.name);
  throw InvalidInput("unknown permutation name: " + std::string(name));
}

const std::array<PermutationElement, 6>& all_permutations() {
  static const std::array<PermutationElement, 6> all{
      permutation(PermutationName::I),   permutation(PermutationName::P12),
      permutation(PermutationName::P13), permutation(PermutationName::P23),
      permutation(PermutationName::Pf),  permutation(PermutationName::Pb)};
  return all;
}

PermutationElement compose(const PermutationElement& a, const PermutationElement& b) {
  IntMatrix3 prod{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) prod[r][c] += a.matrix()[r][k] * b.matrix()[k][c];
  for (const Entry& e : kTable)
    if (e.m == prod) return permutation(e.name);
  throw std::logic_error("permutation product left the group");
}

OrthogonalMap::OrthogonalMap(const Eigen::Matrix3d& m) : m_(m) {
  if (!m.allFinite()) throw InvalidInput("orthogonal map has non-finite entries");
  const double defect = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (defect > kTolerance)
    throw InvalidInput("matrix is not orthogonal (|Q^T Q - I| = " + std::to_string(defect) + ")");
  const double d = m.determinant();
  if (std::abs(std::abs(d) - 1.0) > kTolerance) throw InvalidInput("determinant is not +-1");
  det_ = d > 0 ? 1 : -1;
  signed_ = detect_signed(m);
}

OrthogonalMap::OrthogonalMap(const PermutationElement& p)
    : m_(p.as_matrix()), det_(p.parity()), signed_(detect_signed(p.as_matrix())) {}

OrthogonalMap OrthogonalMap::transpose() const {
  const Eigen::Matrix3d t = m_.transpose();
  return OrthogonalMap(t, det_, detect_signed(t));
}

OrthogonalMap compose(const OrthogonalMap& a, const OrthogonalMap& b) {
  const Eigen::Matrix3d m = a.matrix() * b.matrix();
  return OrthogonalMap(m, a.det() * b.det(), detect_signed(m));
}

OrthogonalMap central_inversion() { return OrthogonalMap(Eigen::Matrix3d(-Eigen::Matrix3d::Identity())); }

MirrorMatrix mirror(const Eigen::Vector3d& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12)
    throw InvalidInput("mirror axis must be a unit vector");
  const Eigen::Matrix3d m = Eigen::Matrix3d::Identity() - 2.0 * v * v.transpose();
  return MirrorMatrix(v, m);
}

Eigen::Vector3d sigma_unit() { return sigma() / std::sqrt(3.0); }

}  // namespace eulerperm
