#include <doctest.h>

#include <cmath>

#include "eulerperm/axisym.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/symmetry.hpp"

using namespace eulerperm;

namespace {

// Integer matrix product, independent of the composition table.
IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

int det(const IntMatrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("names round-trip and unknown names are rejected") {
  for (const char* name : {"I", "P12", "P13", "P23", "Pf", "Pb"}) CHECK(to_string(permutation(name).name()) == name);
  CHECK_THROWS_AS(permutation("P21"), InvalidInput);
  CHECK_THROWS_AS(permutation(""), InvalidInput);
}

TEST_CASE("P12 swaps the first two coordinates") {
  const Eigen::Vector3d x(1.0, 2.0, 3.0);
  CHECK((permutation(PermutationName::P12).as_matrix() * x - Eigen::Vector3d(2.0, 1.0, 3.0)).norm() == 0.0);
  CHECK((permutation(PermutationName::P23).as_matrix() * x - Eigen::Vector3d(1.0, 3.0, 2.0)).norm() == 0.0);
}

TEST_CASE("composition matches integer matrix products exactly") {
  for (const auto& a : all_permutations())
    for (const auto& b : all_permutations()) CHECK(compose(a, b).matrix() == multiply(a.matrix(), b.matrix()));
}

TEST_CASE("group axioms") {
  const auto& all = all_permutations();
  const auto id = permutation(PermutationName::I);
  for (const auto& a : all) {
    CHECK(compose(a, id).name() == a.name());
    int inverses = 0;
    for (const auto& b : all) inverses += compose(a, b).name() == PermutationName::I ? 1 : 0;
    CHECK(inverses == 1);
    for (const auto& b : all)
      for (const auto& c : all) CHECK(compose(compose(a, b), c).name() == compose(a, compose(b, c)).name());
  }
}

TEST_CASE("parity is the determinant; transpositions are odd, 3-cycles even") {
  for (const auto& p : all_permutations()) CHECK(p.parity() == det(p.matrix()));
  CHECK(permutation("P12").parity() == -1);
  CHECK(permutation("P23").parity() == -1);
  CHECK(permutation("Pf").parity() == 1);
  CHECK(permutation("Pb").parity() == 1);
  CHECK(compose(permutation("Pf"), permutation("Pb")).name() == PermutationName::I);
}

TEST_CASE("sigma is fixed by every permutation") {
  for (const auto& p : all_permutations()) CHECK((p.as_matrix() * sigma() - sigma()).norm() == 0.0);
}

TEST_CASE("orthogonal maps are validated") {
  CHECK_THROWS_AS(OrthogonalMap(2.0 * Eigen::Matrix3d::Identity()), InvalidInput);
  Eigen::Matrix3d shear = Eigen::Matrix3d::Identity();
  shear(0, 1) = 1e-6;
  CHECK_THROWS_AS(OrthogonalMap{shear}, InvalidInput);
  CHECK(central_inversion().det() == -1);
  CHECK(central_inversion().signed_permutation().has_value());
  CHECK_FALSE(rotation_Q().signed_permutation().has_value());
  const OrthogonalMap q = compose(OrthogonalMap(permutation("Pf")), central_inversion());
  CHECK((q.matrix() + permutation("Pf").as_matrix()).norm() == 0.0);
  CHECK((q.transpose().matrix() - q.matrix().transpose()).norm() == 0.0);
}

TEST_CASE("signed permutation layout") {
  const auto sp = OrthogonalMap(permutation("Pf")).signed_permutation();
  REQUIRE(sp.has_value());
  const Eigen::Matrix3d m = permutation("Pf").as_matrix();
  for (int r = 0; r < 3; ++r) CHECK(m(r, sp->col[r]) == sp->sign[r]);
}

TEST_CASE("sigma mirror") {
  const MirrorMatrix m = mirror(sigma_unit());
  CHECK((m.matrix() * m.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((m.matrix() * sigma_unit() + sigma_unit()).norm() <= 1e-15);
  CHECK(m.as_map().det() == -1);
  // Vectors in the plane x1 + x2 + x3 = 0 are fixed.
  const Eigen::Vector3d t(1.0, -1.0, 0.0);
  CHECK((m.matrix() * t - t).norm() <= 1e-15);
  CHECK_THROWS_AS(mirror(sigma()), InvalidInput);
  for (const auto& p : all_permutations())
    CHECK((p.as_matrix() * m.matrix() - m.matrix() * p.as_matrix()).cwiseAbs().maxCoeff() <= 1e-15);
}
