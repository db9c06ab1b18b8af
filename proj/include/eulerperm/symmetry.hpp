#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace eulerperm {

enum class PermutationName { I, P12, P13, P23, Pf, Pb };

using IntMatrix3 = std::array<std::array<int, 3>, 3>;

std::string_view to_string(PermutationName name);

/// One of the six 3x3 permutation matrices, stored exactly.
class PermutationElement {
 public:
  PermutationName name() const { return name_; }
  const IntMatrix3& matrix() const { return matrix_; }
  int parity() const { return parity_; }
  Eigen::Matrix3d as_matrix() const;

 private:
  friend PermutationElement permutation(PermutationName);
  PermutationElement(PermutationName name, const IntMatrix3& m, int parity)
      : name_(name), matrix_(m), parity_(parity) {}

  PermutationName name_;
  IntMatrix3 matrix_;
  int parity_;
};

PermutationElement permutation(PermutationName name);
/// Accepts "I", "P12", "P13", "P23", "Pf", "Pb"; anything else throws InvalidInput.
PermutationElement permutation(std::string_view name);
const std::array<PermutationElement, 6>& all_permutations();
PermutationElement compose(const PermutationElement& a, const PermutationElement& b);

/// Signed permutation matrix: row r has entry sign[r] in column col[r].
struct SignedPermutation {
  std::array<int, 3> col;
  std::array<int, 3> sign;
};

/// A validated 3x3 orthogonal matrix.
class OrthogonalMap {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws InvalidInput unless Q^T Q = I and det = +-1 within kTolerance.
  explicit OrthogonalMap(const Eigen::Matrix3d& m);
  OrthogonalMap(const PermutationElement& p);  // NOLINT: permutations are orthogonal maps

  const Eigen::Matrix3d& matrix() const { return m_; }
  int det() const { return det_; }
  OrthogonalMap transpose() const;
  /// Present when every entry is 0 or +-1 (exact index remapping applies).
  const std::optional<SignedPermutation>& signed_permutation() const { return signed_; }

 private:
  OrthogonalMap(const Eigen::Matrix3d& m, int det, std::optional<SignedPermutation> sp)
      : m_(m), det_(det), signed_(sp) {}
  friend OrthogonalMap compose(const OrthogonalMap&, const OrthogonalMap&);

  Eigen::Matrix3d m_;
  int det_;
  std::optional<SignedPermutation> signed_;
};

OrthogonalMap compose(const OrthogonalMap& a, const OrthogonalMap& b);
OrthogonalMap central_inversion();

/// Reflection I - 2 v v^T about the plane normal to v.
class MirrorMatrix {
 public:
  const Eigen::Vector3d& axis() const { return axis_; }
  const Eigen::Matrix3d& matrix() const { return m_; }
  OrthogonalMap as_map() const { return OrthogonalMap(m_); }

 private:
  friend MirrorMatrix mirror(const Eigen::Vector3d&);
  MirrorMatrix(const Eigen::Vector3d& v, const Eigen::Matrix3d& m) : axis_(v), m_(m) {}
  Eigen::Vector3d axis_;
  Eigen::Matrix3d m_;
};

/// Throws InvalidInput if |v| differs from 1 by more than 1e-12.
MirrorMatrix mirror(const Eigen::Vector3d& v);

inline Eigen::Vector3d sigma() { return Eigen::Vector3d(1.0, 1.0, 1.0); }
Eigen::Vector3d sigma_unit();

}  // namespace eulerperm
