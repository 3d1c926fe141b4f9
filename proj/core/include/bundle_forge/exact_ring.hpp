#pragma once

// Exact arithmetic in the coordinate rings of S^2 and S^3.
//
//   S^2:  C[x1,x2,x3] / (x1^2 + x2^2 + x3^2 - 1)
//   S^3:  C[z0,z1,zb0,zb1] / (z0 zb0 + z1 zb1 - 1)
//
// Each quotient is presented by a single monic relation, so rewriting the
// leading monomial (x3^2, resp. z0*zb0) gives a unique normal form.

#include "bundle_forge/poly.hpp"
#include "bundle_forge/rational.hpp"

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace bundle_forge {

struct SphereS2Ring {
  static constexpr std::size_t kVars = 3;
  static constexpr std::array<std::string_view, 3> kNames{"x1", "x2", "x3"};
  /// x3^c with c >= 2 expands through x3^2 = 1 - x1^2 - x2^2.
  static void reduce_monomial(const Exponent<3>& e, const GaussianRational& c, SparsePoly<3>& out);
  static bool is_canonical(const Exponent<3>& e) { return e[2] <= 1; }
};

struct SphereS3Ring {
  static constexpr std::size_t kVars = 4;
  static constexpr std::array<std::string_view, 4> kNames{"z0", "z1", "z0bar", "z1bar"};
  /// (z0 zb0)^m expands through z0 zb0 = 1 - z1 zb1.
  static void reduce_monomial(const Exponent<4>& e, const GaussianRational& c, SparsePoly<4>& out);
  static bool is_canonical(const Exponent<4>& e) { return e[0] == 0 || e[2] == 0; }
};

using XPoly = CanonicalPoly<SphereS2Ring>;
using ZPoly = CanonicalPoly<SphereS3Ring>;
using RawXPoly = SparsePoly<3>;
using RawZPoly = SparsePoly<4>;

enum class XVar : std::size_t { x1 = 0, x2 = 1, x3 = 2 };
enum class ZVar : std::size_t { z0 = 0, z1 = 1, z0bar = 2, z1bar = 3 };

XPoly reduce_x(const RawXPoly& p);
ZPoly reduce_z(const RawZPoly& p);

XPoly x_var(XVar v);
ZPoly z_var(ZVar v);

/// Complex conjugation. On XPoly only coefficients conjugate (x_mu are real);
/// on ZPoly z_k and zb_k are exchanged as well.
XPoly conj(const XPoly& p);
ZPoly conj(const ZPoly& p);

/// Real and imaginary coefficient parts of an XPoly (both real polynomials).
XPoly real_part(const XPoly& p);
XPoly imag_part(const XPoly& p);

/// Holomorphic minus antiholomorphic degree of a z-monomial.
int charge_of(const Exponent<4>& e);

/// Rewrites a U(1)-invariant z-polynomial in the coordinates of S^2 via
///   z0 zb0 = (1+x3)/2, z1 zb1 = (1-x3)/2, z0 zb1 = (x1-i x2)/2, z1 zb0 = (x1+i x2)/2.
/// Throws NotInvariant naming the first monomial whose charge is nonzero.
XPoly z_to_x(const ZPoly& p);

/// Pull-back along the Hopf projection: x1 = z0 zb1 + z1 zb0,
/// x2 = i(z0 zb1 - z1 zb0), x3 = z0 zb0 - z1 zb1.
ZPoly x_to_z(const XPoly& p);

XPoly partial_derivative(const XPoly& p, XVar v);
ZPoly partial_derivative(const ZPoly& p, ZVar v);
/// Variable looked up by name ("x1".."x3" or "z0","z1","z0bar","z1bar");
/// throws InvalidInput for an unknown name.
XPoly partial_derivative(const XPoly& p, std::string_view var);
ZPoly partial_derivative(const ZPoly& p, std::string_view var);

/// An exact multiple of 4*pi.
struct VolumeUnits {
  GaussianRational value;

  friend bool operator==(const VolumeUnits&, const VolumeUnits&) = default;
  double to_double() const;  // real part times 4*pi
};

/// Integral of x1^a x2^b x3^c over S^2 in units of 4*pi:
/// (a-1)!!(b-1)!!(c-1)!!/(a+b+c+1)!! when all exponents are even, else 0.
VolumeUnits monomial_integral(unsigned a, unsigned b, unsigned c);

/// Integral of a polynomial over S^2, term by term.
VolumeUnits integrate_function(const XPoly& p);

std::complex<double> evaluate(const XPoly& p, const std::array<double, 3>& x);
std::complex<double> evaluate(const ZPoly& p, std::complex<double> z0, std::complex<double> z1);

/// Human-readable rendering in sorted monomial order, e.g. "1/2 - 1/2*x3^2".
std::string to_string(const XPoly& p);
std::string to_string(const ZPoly& p);

}  // namespace bundle_forge
