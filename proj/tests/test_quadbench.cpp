#include "bundle_forge/errors.hpp"
#include "bundle_forge/quadbench.hpp"
#include "support/random.hpp"

#include <doctest.h>

#include <cstdlib>
#include <numbers>

using namespace bundle_forge;
using namespace bundle_forge::quad;

namespace {

constexpr double kPi = std::numbers::pi;

WeightedProjector p_minus(unsigned n) { return projector_from_ket(monopole_ket(MonopoleFamily::minus, n)); }
WeightedProjector p_plus(unsigned n) { return projector_from_ket(monopole_ket(MonopoleFamily::plus, n)); }

// Random g = U diag(s) V with singular values in [1, 3], so the condition number stays below 3.
Eigen::MatrixXcd random_well_conditioned(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  auto random_unitary = [&] {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = {nd(rng), nd(rng)};
    return Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ());
  };
  std::uniform_real_distribution<double> sv(1.0, 3.0);
  Eigen::VectorXcd s(n);
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = sv(rng);
  return random_unitary() * s.asDiagonal() * random_unitary();
}

}  // namespace

TEST_CASE("sphere grid") {
  for (std::size_t p : {8, 16, 64}) {
    auto g = SphereGrid::make(p, 2 * p);
    CHECK(std::abs(g.total_weight() - 4 * kPi) < 1e-12);
    CHECK(g.polar() == p);
  }
  CHECK_THROWS_AS(SphereGrid::make(4, 16), InvalidInput);
  CHECK_THROWS_AS(SphereGrid::make(16, 7), InvalidInput);
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  // exact for polynomials of degree <= 9
  double s = 0;
  for (std::size_t i = 0; i < 5; ++i) s += w[i] * std::pow(x[i], 8);
  CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("quadrature Chern numbers") {
  auto g = SphereGrid::make(64, 128);
  CHECK(std::abs(chern_number_quad(p_minus(1), g, Derivative::analytic).c1 - 1) < 1e-9);
  CHECK(std::abs(chern_number_quad(p_plus(3), g, Derivative::analytic).c1 + 3) < 1e-7);
  CHECK(std::abs(chern_number_quad(tangent_projector(), g, Derivative::analytic).c1) < 1e-9);
  CHECK(std::abs(chern_number_quad(normal_projector(), g, Derivative::analytic).c1) < 1e-9);
  CHECK(std::abs(chern_number_quad(projector_from_ket(tilde_ket2()), g, Derivative::analytic).c1 - 2) < 1e-9);
}

TEST_CASE("backend agreement for n <= 4") {
  auto g = SphereGrid::make(64, 128);
  for (unsigned n = 1; n <= 4; ++n) {
    for (auto p : {p_minus(n), p_plus(n)}) {
      const double exact = chern_number_exact(p).get_d();
      const double an = chern_number_quad(p, g, Derivative::analytic).c1;
      const double fd = chern_number_quad(p, g, Derivative::finite_difference).c1;
      CHECK(std::abs(an - exact) < 1e-6);
      CHECK(std::abs(fd - exact) < 1e-4);
      CHECK(std::abs(fd - an) < 1e-5);
    }
  }
}

TEST_CASE("grid refinement converges") {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto p = p_minus(n);
    double prev = 1e9;
    for (std::size_t P : {8, 16, 32}) {
      const double err = std::abs(chern_number_quad(p, SphereGrid::make(P, 2 * P), Derivative::analytic).c1 - n);
      if (prev < 1e-3) CHECK(err <= prev + 1e-12);
      prev = err;
    }
  }
}

TEST_CASE("pointwise axiom violations are rejected") {
  auto p = p_minus(1);
  p.core(0, 0) = XPoly(1L);
  CHECK_THROWS_AS(chern_number_quad(p, SphereGrid::make(8, 16), Derivative::analytic), ConsistencyFailure);
  NumericProjectorField nan_field{1, "polynomial", [](double, double) {
                                    Eigen::MatrixXcd m(1, 1);
                                    m(0, 0) = std::nan("");
                                    return m;
                                  }, {}};
  CHECK_THROWS_AS(chern_number_quad(nan_field, SphereGrid::make(8, 16), Derivative::finite_difference),
                  ConsistencyFailure);
  CHECK_THROWS_AS(chern_number_quad(nan_field, SphereGrid::make(8, 16), Derivative::analytic), InvalidInput);
}

TEST_CASE("gauge field: identity reproduces the projector") {
  auto k = monopole_ket(MonopoleFamily::minus, 2);
  auto gf = gauge_field(k, Eigen::MatrixXcd::Identity(3, 3));
  CHECK(gf.condition_number == doctest::Approx(1.0));
  auto pf = field_from_projector(projector_from_ket(k));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.01, kPi - 0.01), ph(0, 2 * kPi);
  for (int i = 0; i < 100; ++i) {
    const double t = th(rng), f = ph(rng);
    REQUIRE((gf.field.value(t, f) - pf.value(t, f)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("gauge field: diag(2,1) keeps the charge") {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(2, 2);
  g(0, 0) = 2.0;
  auto gf = gauge_field(monopole_ket(MonopoleFamily::minus, 1), g);
  CHECK(gf.condition_number == doctest::Approx(2.0));
  auto c = chern_number_quad(gf.field, SphereGrid::make(64, 128), Derivative::finite_difference);
  CHECK(std::abs(c.c1 - 1) < 1e-4);
}

TEST_CASE("gauge field: random well-conditioned g") {
  std::mt19937_64 rng(314);
  auto grid = SphereGrid::make(64, 128);
  for (int t = 0; t < 5; ++t) {
    auto k = monopole_ket(t % 2 ? MonopoleFamily::plus : MonopoleFamily::minus, 1 + t % 3);
    auto gf = gauge_field(k, random_well_conditioned(k.size(), rng));
    CHECK(gf.condition_number < 10);
    const double exact = chern_number_exact(projector_from_ket(k)).get_d();
    CHECK(std::abs(chern_number_quad(gf.field, grid, Derivative::finite_difference).c1 - exact) < 1e-4);
  }
}

TEST_CASE("gauge field errors") {
  auto k = monopole_ket(MonopoleFamily::minus, 1);
  CHECK_THROWS_AS(gauge_field(k, Eigen::MatrixXcd::Zero(2, 2)), InvalidInput);
  CHECK_THROWS_AS(gauge_field(k, Eigen::MatrixXcd::Identity(3, 3)), InvalidInput);
  Eigen::MatrixXcd rank1(2, 2);
  rank1 << 1, 1, 1, 1;
  CHECK_THROWS_AS(gauge_field(k, rank1), InvalidInput);
}

TEST_CASE("unitary gauges leave the connection invariant") {
  std::mt19937_64 rng(271);
  for (unsigned n : {1u, 2u, 3u}) {
    auto k = monopole_ket(MonopoleFamily::minus, n);
    // A random special unitary.
    Eigen::MatrixXcd a = random_well_conditioned(k.size(), rng);
    Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
    u /= std::pow(u.determinant(), 1.0 / static_cast<double>(k.size()));
    const ZForm conn = connection_form(k);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      auto z = bf_test::random_s3_point(rng);
      // tangent vector: random, minus its component along z (real inner product on C^2 = R^4)
      std::normal_distribution<double> nd;
      std::array<std::complex<double>, 2> v{{{nd(rng), nd(rng)}, {nd(rng), nd(rng)}}};
      const double along = (std::conj(z[0]) * v[0] + std::conj(z[1]) * v[1]).real();
      v[0] -= along * z[0];
      v[1] -= along * z[1];
      const std::array<std::array<std::complex<double>, 2>, 1> vs{v};
      const auto expected = evaluate_on_s3(conn, z, vs);
      worst = std::max(worst, std::abs(gauged_connection(k, u, z, v) - expected));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Monte-Carlo oracle") {
  auto one = monte_carlo_integral(XPoly(1L), 10000, 1);
  CHECK(std::abs(one.value - 4 * kPi) < 1e-12);
  auto odd = monte_carlo_integral(x_var(XVar::x3), 100000, 2);
  CHECK(std::abs(odd.value) < 3 * odd.std_error);
  auto sq = monte_carlo_integral(x_var(XVar::x1) * x_var(XVar::x1), 1000000, 3);
  CHECK(std::abs(sq.value / (4 * kPi / 3) - 1) < 0.01);
  CHECK_THROWS_AS(monte_carlo_integral(XPoly(1L), 9999, 1), InvalidInput);
}

TEST_CASE("Monte-Carlo is deterministic and independent of the worker count") {
  const XPoly f = x_var(XVar::x1) * x_var(XVar::x2) + x_var(XVar::x3);
  setenv("BUNDLE_FORGE_THREADS", "1", 1);
  auto a = monte_carlo_integral(f, 50000, 9);
  setenv("BUNDLE_FORGE_THREADS", "3", 1);
  auto b = monte_carlo_integral(f, 50000, 9);
  unsetenv("BUNDLE_FORGE_THREADS");
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  auto c = monte_carlo_integral(f, 50000, 10);
  CHECK(a.value != c.value);
}

TEST_CASE("quadrature does not depend on the worker count") {
  auto p = p_minus(2);
  auto g = SphereGrid::make(16, 32);
  setenv("BUNDLE_FORGE_THREADS", "1", 1);
  const double a = chern_number_quad(p, g, Derivative::analytic).c1;
  setenv("BUNDLE_FORGE_THREADS", "4", 1);
  const double b = chern_number_quad(p, g, Derivative::analytic).c1;
  unsetenv("BUNDLE_FORGE_THREADS");
  CHECK(a == b);
}

TEST_CASE("tangent frame check") {
  const ZForm dz0 = dz(ZVar::z0), dzb0 = dz(ZVar::z0bar), dz1 = dz(ZVar::z1), dzb1 = dz(ZVar::z1bar);
  auto ok = tangent_frame_check(curvature_scalar(monopole_ket(MonopoleFamily::minus, 2)),
                                GaussianRational(2) * (wedge(dz0, dzb0) + wedge(dz1, dzb1)), 200, 1);
  CHECK(ok.pass);
  CHECK(ok.points == 200);
  CHECK(tangent_frame_check(wedge(sphere_relation_differential_z(), dz0), ZForm(), 200, 2).pass);
  auto neg = tangent_frame_check(wedge(dz0, dzb0), ZForm(), 200, 3);
  CHECK_FALSE(neg.pass);
  CHECK(neg.max_abs_difference > 1e-3);
}
