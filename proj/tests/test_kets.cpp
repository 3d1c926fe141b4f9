#include "bundle_forge/errors.hpp"
#include "bundle_forge/kets.hpp"
#include "bundle_forge/quadbench.hpp"

#include <doctest.h>

using namespace bundle_forge;

namespace {

const XPoly x1 = x_var(XVar::x1), x2 = x_var(XVar::x2), x3 = x_var(XVar::x3);
const ZPoly z0 = z_var(ZVar::z0), z1 = z_var(ZVar::z1), zb0 = z_var(ZVar::z0bar), zb1 = z_var(ZVar::z1bar);
const ZForm dz0 = dz(ZVar::z0), dz1 = dz(ZVar::z1), dzb0 = dz(ZVar::z0bar), dzb1 = dz(ZVar::z1bar);

ZForm flat_kahler() { return wedge(dz0, dzb0) + wedge(dz1, dzb1); }

std::vector<EquivariantKet> builtin_kets() {
  std::vector<EquivariantKet> out;
  for (unsigned n = 0; n <= 6; ++n) {
    out.push_back(monopole_ket(MonopoleFamily::minus, n));
    out.push_back(monopole_ket(MonopoleFamily::plus, n));
  }
  out.push_back(tilde_ket2());
  return out;
}

}  // namespace

TEST_CASE("monopole kets") {
  auto m1 = monopole_ket(MonopoleFamily::minus, 1);
  REQUIRE(m1.size() == 2);
  CHECK(m1[0].weight == 1);
  CHECK(m1[1].weight == 1);
  CHECK(m1[0].poly == z0);
  CHECK(m1[1].poly == z1);

  auto m2 = monopole_ket(MonopoleFamily::minus, 2);
  REQUIRE(m2.size() == 3);
  CHECK(m2[1].weight == 2);
  CHECK(m2[0].poly == z0 * z0);
  CHECK(m2[1].poly == z0 * z1);
  CHECK(m2[2].poly == z1 * z1);

  auto m0 = monopole_ket(MonopoleFamily::minus, 0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0].weight == 1);
  CHECK(m0[0].poly == ZPoly(1L));

  auto p1 = monopole_ket(MonopoleFamily::plus, 1);
  CHECK(p1[0].poly == zb0);
  CHECK(p1[1].poly == zb1);
}

TEST_CASE("ket validation") {
  CHECK_THROWS_AS(EquivariantKet(std::vector<KetComponent>{}), InvalidInput);
  CHECK_THROWS_AS(EquivariantKet({{Rational(0), z0}}), InvalidInput);
  CHECK_THROWS_AS(EquivariantKet({{Rational(-1), z0}}), InvalidInput);
}

TEST_CASE("tilde ket") {
  auto t = tilde_ket2();
  CHECK(pairing(t, t) == ZPoly(1L));
  CHECK(equivariance_type(t) == 2);
  CHECK(std::abs(evaluate(t[2].poly, 1.0, 0.0)) == 0.0);
}

TEST_CASE("every built-in ket is normalized") {
  for (const auto& k : builtin_kets()) CHECK(pairing(k, k) == ZPoly(1L));
}

TEST_CASE("pairing errors") {
  CHECK_THROWS_AS(pairing(monopole_ket(MonopoleFamily::minus, 1), monopole_ket(MonopoleFamily::minus, 2)), InvalidInput);
  EquivariantKet a({{Rational(2), z0}, {Rational(1), z1}});
  EquivariantKet b({{Rational(1), z0}, {Rational(1), z1}});
  CHECK_THROWS_AS(pairing(a, b), OutsideExactField);
}

TEST_CASE("equivariance types") {
  for (unsigned n = 0; n <= 8; ++n) {
    CHECK(equivariance_type(monopole_ket(MonopoleFamily::minus, n)) == static_cast<int>(n));
    CHECK(equivariance_type(monopole_ket(MonopoleFamily::plus, n)) == -static_cast<int>(n));
  }
  CHECK_THROWS_AS(equivariance_type(EquivariantKet({{Rational(1), z0 + zb0}})), NotInvariant);
  CHECK_THROWS_AS(equivariance_type(EquivariantKet({{Rational(1), z0}, {Rational(1), zb0}})), NotInvariant);
}

TEST_CASE("connection forms") {
  CHECK(connection_form(monopole_ket(MonopoleFamily::minus, 1)) == z0 * dzb0 + z1 * dzb1);
  CHECK(connection_form(monopole_ket(MonopoleFamily::minus, 0)).is_zero());
  // A_{-1} equals -(zb0 dz0 + zb1 dz1) on tangent frames.
  auto rep = quad::tangent_frame_check(connection_form(monopole_ket(MonopoleFamily::minus, 1)),
                                       -(zb0 * dz0 + zb1 * dz1), 200, 31);
  CHECK(rep.pass);
}

TEST_CASE("connection forms are anti-hermitian on tangent vectors") {
  std::uint64_t seed = 40;
  for (const auto& k : builtin_kets()) {
    const ZForm a = connection_form(k);
    auto rep = quad::tangent_frame_check(a + conj(a), ZForm(), 200, seed++);
    CHECK(rep.pass);
  }
}

TEST_CASE("monopole connections scale with the charge") {
  const ZForm a1 = connection_form(monopole_ket(MonopoleFamily::minus, 1));
  for (unsigned n = 1; n <= 6; ++n) {
    const GaussianRational s(static_cast<long>(n));
    CHECK(quad::tangent_frame_check(connection_form(monopole_ket(MonopoleFamily::minus, n)), s * a1, 200, 60 + n).pass);
    CHECK(quad::tangent_frame_check(connection_form(monopole_ket(MonopoleFamily::plus, n)), -(s * a1), 200, 70 + n).pass);
  }
}

TEST_CASE("curvature scalar identity") {
  CHECK(curvature_scalar(monopole_ket(MonopoleFamily::minus, 1)) == flat_kahler());
  for (unsigned n = 1; n <= 6; ++n) {
    const GaussianRational s(static_cast<long>(n));
    auto minus = quad::tangent_frame_check(curvature_scalar(monopole_ket(MonopoleFamily::minus, n)), s * flat_kahler(),
                                           200, 80 + n);
    CHECK(minus.pass);
    auto plus = quad::tangent_frame_check(curvature_scalar(monopole_ket(MonopoleFamily::plus, n)), -(s * flat_kahler()),
                                          200, 90 + n);
    CHECK(plus.pass);
  }
  CHECK(quad::tangent_frame_check(curvature_scalar(tilde_ket2()), GaussianRational(2) * flat_kahler(), 200, 99).pass);
  // Negative control: the wrong multiple is detected.
  CHECK_FALSE(
      quad::tangent_frame_check(curvature_scalar(monopole_ket(MonopoleFamily::minus, 3)), flat_kahler(), 200, 98).pass);
}

TEST_CASE("named real objects") {
  auto o = named_real_objects();
  const XPoly zero;
  CHECK(o.V[0] == ScaledXVector{1, {zero, -x3, x2}});
  CHECK(o.W[2].scale == Rational(1, 2));
  CHECK(o.W[2].components[0] == -(x1 * x3));
  CHECK(o.W[2].components[4] == XPoly(1L) - x3 * x3);
  CHECK(o.u.rows() == 6);
  CHECK(o.u.cols() == 3);

  const std::array<XPoly, 3> xs{x1, x2, x3};
  CHECK(combine(xs, o.V).components == std::vector<XPoly>(3));
  CHECK(combine(xs, o.W).components == std::vector<XPoly>(6));
  for (int l = 0; l < 3; ++l) {
    CHECK(pairing(o.psi_nor, o.V[l]).is_zero());
    CHECK(o.u * o.V[l] == o.W[l]);
  }
}

TEST_CASE("scaled vector equality handles radicals") {
  const XPoly one(1L);
  CHECK(ScaledXVector{4, {one}} == ScaledXVector{1, {GaussianRational(2) * one}});
  CHECK_FALSE(ScaledXVector{2, {one}} == ScaledXVector{1, {one}});
  CHECK(ScaledXVector{2, {XPoly()}} == ScaledXVector{1, {XPoly()}});
  CHECK_THROWS_AS(pairing(ScaledXVector{2, {one}}, ScaledXVector{1, {one}}), OutsideExactField);
}
