#pragma once

#include "bundle_forge/exact_ring.hpp"
#include "bundle_forge/forms.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace bf_test {

using namespace bundle_forge;

inline GaussianRational random_coefficient(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  Rational re(num(rng), den(rng)), im(complex ? num(rng) : 0, den(rng));
  return {re, im};
}

/// Raw polynomial with up to `terms` monomials of total degree <= max_degree.
template <std::size_t N>
SparsePoly<N> random_raw(std::mt19937_64& rng, unsigned max_degree, unsigned terms, bool complex = true) {
  std::uniform_int_distribution<unsigned> count(0, terms), var(0, N - 1), deg(0, max_degree);
  SparsePoly<N> p;
  const unsigned t = count(rng);
  for (unsigned i = 0; i < t; ++i) {
    Exponent<N> e{};
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, random_coefficient(rng, complex));
  }
  return p;
}

inline XPoly random_xpoly(std::mt19937_64& rng, unsigned max_degree = 3, unsigned terms = 4, bool complex = true) {
  return reduce_x(random_raw<3>(rng, max_degree, terms, complex));
}

inline ZPoly random_zpoly(std::mt19937_64& rng, unsigned max_degree = 3, unsigned terms = 4) {
  return reduce_z(random_raw<4>(rng, max_degree, terms));
}

/// U(1)-invariant z-polynomial: every monomial has equal holomorphic and
/// antiholomorphic degree.
inline ZPoly random_invariant_zpoly(std::mt19937_64& rng, unsigned max_half_degree = 2, unsigned terms = 4) {
  std::uniform_int_distribution<unsigned> count(0, terms), half(0, max_half_degree), bit(0, 1);
  RawZPoly p;
  const unsigned t = count(rng);
  for (unsigned i = 0; i < t; ++i) {
    Exponent<4> e{};
    const unsigned h = half(rng);
    for (unsigned k = 0; k < h; ++k) {
      ++e[bit(rng)];
      ++e[2 + bit(rng)];
    }
    p.add_term(e, random_coefficient(rng));
  }
  return reduce_z(p);
}

/// Random x-form with components of the given degree.
inline XForm random_xform(std::mt19937_64& rng, unsigned degree, unsigned max_degree = 3) {
  XForm w;
  for (unsigned mask = 0; mask < 8; ++mask)
    if (XForm::degree_of(mask) == degree) w.add(mask, random_xpoly(rng, max_degree, 3));
  return w;
}

inline std::array<double, 3> random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::array<double, 3> x{n(rng), n(rng), n(rng)};
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  for (double& c : x) c /= r;
  return x;
}

inline std::array<std::complex<double>, 2> random_s3_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::array<double, 4> v{n(rng), n(rng), n(rng), n(rng)};
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  return {std::complex<double>(v[0] / r, v[1] / r), std::complex<double>(v[2] / r, v[3] / r)};
}

/// Hopf projection of a point of S^3.
inline std::array<double, 3> hopf(const std::array<std::complex<double>, 2>& z) {
  const auto w = z[1] * std::conj(z[0]);
  return {2 * w.real(), 2 * w.imag(), std::norm(z[0]) - std::norm(z[1])};
}

}  // namespace bf_test
