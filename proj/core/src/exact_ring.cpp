#include "bundle_forge/exact_ring.hpp"

#include "bundle_forge/errors.hpp"

#include <numbers>
#include <sstream>

namespace bundle_forge {

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// (n)!! with (-1)!! = 0!! = 1.
mpz_class double_factorial(long n) {
  mpz_class f = 1;
  for (long k = n; k > 1; k -= 2) f *= k;
  return f;
}

template <class Poly>
Poly power(const Poly& base, unsigned k) {
  Poly out(1L);
  for (unsigned i = 0; i < k; ++i) out = out * base;
  return out;
}

template <class Ring>
std::string render(const CanonicalPoly<Ring>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < Ring::kVars; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += Ring::kNames[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    GaussianRational coeff = c;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) coeff = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << to_string(coeff);
    else if (coeff == GaussianRational(1))
      os << mono;
    else
      os << to_string(coeff) << "*" << mono;
  }
  return os.str();
}

}  // namespace

void SphereS2Ring::reduce_monomial(const Exponent<3>& e, const GaussianRational& c, SparsePoly<3>& out) {
  if (c.is_zero()) return;
  if (e[2] <= 1) {
    out.add_term(e, c);
    return;
  }
  // x3^(2q+r) = (1 - x1^2 - x2^2)^q x3^r, multinomial expansion.
  unsigned q = e[2] / 2;
  unsigned r = e[2] % 2;
  mpz_class qf = factorial(q);
  for (unsigned j = 0; j <= q; ++j)
    for (unsigned k = 0; j + k <= q; ++k) {
      mpz_class coef = qf / (factorial(q - j - k) * factorial(j) * factorial(k));
      if ((j + k) % 2 == 1) coef = -coef;
      out.add_term({e[0] + 2 * j, e[1] + 2 * k, r}, c * GaussianRational(Rational(coef)));
    }
}

void SphereS3Ring::reduce_monomial(const Exponent<4>& e, const GaussianRational& c, SparsePoly<4>& out) {
  if (c.is_zero()) return;
  unsigned m = std::min(e[0], e[2]);
  if (m == 0) {
    out.add_term(e, c);
    return;
  }
  // (z0 zb0)^m = (1 - z1 zb1)^m.
  for (unsigned j = 0; j <= m; ++j) {
    mpz_class coef = binomial(m, j);
    if (j % 2 == 1) coef = -coef;
    out.add_term({e[0] - m, e[1] + j, e[2] - m, e[3] + j}, c * GaussianRational(Rational(coef)));
  }
}

XPoly reduce_x(const RawXPoly& p) { return XPoly::reduce(p); }
ZPoly reduce_z(const RawZPoly& p) { return ZPoly::reduce(p); }

XPoly x_var(XVar v) { return XPoly::variable(static_cast<std::size_t>(v)); }
ZPoly z_var(ZVar v) { return ZPoly::variable(static_cast<std::size_t>(v)); }

XPoly conj(const XPoly& p) {
  RawXPoly raw;
  for (const auto& [e, c] : p.terms()) raw.add_term(e, c.conj());
  return reduce_x(raw);
}

ZPoly conj(const ZPoly& p) {
  RawZPoly raw;
  for (const auto& [e, c] : p.terms()) raw.add_term({e[2], e[3], e[0], e[1]}, c.conj());
  return reduce_z(raw);
}

XPoly real_part(const XPoly& p) {
  RawXPoly raw;
  for (const auto& [e, c] : p.terms()) raw.add_term(e, GaussianRational(c.re()));
  return reduce_x(raw);
}

XPoly imag_part(const XPoly& p) {
  RawXPoly raw;
  for (const auto& [e, c] : p.terms()) raw.add_term(e, GaussianRational(c.im()));
  return reduce_x(raw);
}

int charge_of(const Exponent<4>& e) {
  return static_cast<int>(e[0] + e[1]) - static_cast<int>(e[2] + e[3]);
}

XPoly z_to_x(const ZPoly& p) {
  const GaussianRational half(Rational(1, 2));
  const GaussianRational i = GaussianRational::i();
  const XPoly x1 = x_var(XVar::x1), x2 = x_var(XVar::x2), x3 = x_var(XVar::x3);
  const XPoly z0zb0 = half * (XPoly(1L) + x3);
  const XPoly z1zb1 = half * (XPoly(1L) - x3);
  const XPoly z0zb1 = half * (x1 - i * x2);
  const XPoly z1zb0 = half * (x1 + i * x2);

  XPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (charge_of(e) != 0) {
      throw NotInvariant("z_to_x: monomial " + to_string(ZPoly::monomial(e, c)) +
                         " is not U(1)-invariant (charge " + std::to_string(charge_of(e)) + ")");
    }
    // Greedy pairing in variable order: z0 with zb0, z0 with zb1, z1 with zb0, z1 with zb1.
    unsigned h0 = e[0], h1 = e[1], a0 = e[2], a1 = e[3];
    unsigned p00 = std::min(h0, a0);
    h0 -= p00, a0 -= p00;
    unsigned p01 = std::min(h0, a1);
    h0 -= p01, a1 -= p01;
    unsigned p10 = std::min(h1, a0);
    h1 -= p10, a0 -= p10;
    unsigned p11 = std::min(h1, a1);
    XPoly term = c * power(z0zb0, p00) * power(z0zb1, p01) * power(z1zb0, p10) * power(z1zb1, p11);
    out += term;
  }
  return out;
}

ZPoly x_to_z(const XPoly& p) {
  const GaussianRational i = GaussianRational::i();
  const ZPoly z0 = z_var(ZVar::z0), z1 = z_var(ZVar::z1);
  const ZPoly zb0 = z_var(ZVar::z0bar), zb1 = z_var(ZVar::z1bar);
  const std::array<ZPoly, 3> sub{z0 * zb1 + z1 * zb0, i * (z0 * zb1 - z1 * zb0), z0 * zb0 - z1 * zb1};
  ZPoly out;
  for (const auto& [e, c] : p.terms())
    out += c * power(sub[0], e[0]) * power(sub[1], e[1]) * power(sub[2], e[2]);
  return out;
}

XPoly partial_derivative(const XPoly& p, XVar v) { return p.partial(static_cast<std::size_t>(v)); }
ZPoly partial_derivative(const ZPoly& p, ZVar v) { return p.partial(static_cast<std::size_t>(v)); }

XPoly partial_derivative(const XPoly& p, std::string_view var) {
  for (std::size_t k = 0; k < SphereS2Ring::kNames.size(); ++k)
    if (SphereS2Ring::kNames[k] == var) return p.partial(k);
  throw InvalidInput("unknown x-variable '" + std::string(var) + "'");
}

ZPoly partial_derivative(const ZPoly& p, std::string_view var) {
  for (std::size_t k = 0; k < SphereS3Ring::kNames.size(); ++k)
    if (SphereS3Ring::kNames[k] == var) return p.partial(k);
  throw InvalidInput("unknown z-variable '" + std::string(var) + "'");
}

double VolumeUnits::to_double() const { return value.re().get_d() * 4.0 * std::numbers::pi; }

VolumeUnits monomial_integral(unsigned a, unsigned b, unsigned c) {
  if (a % 2 || b % 2 || c % 2) return {GaussianRational(0)};
  mpz_class num = double_factorial(static_cast<long>(a) - 1) * double_factorial(static_cast<long>(b) - 1) *
                  double_factorial(static_cast<long>(c) - 1);
  mpz_class den = double_factorial(static_cast<long>(a + b + c) + 1);
  Rational q(num, den);
  q.canonicalize();
  return {GaussianRational(q)};
}

VolumeUnits integrate_function(const XPoly& p) {
  GaussianRational sum;
  for (const auto& [e, c] : p.terms()) sum += c * monomial_integral(e[0], e[1], e[2]).value;
  return {sum};
}

std::complex<double> evaluate(const XPoly& p, const std::array<double, 3>& x) {
  const std::array<std::complex<double>, 3> v{x[0], x[1], x[2]};
  return p.evaluate(v);
}

std::complex<double> evaluate(const ZPoly& p, std::complex<double> z0, std::complex<double> z1) {
  const std::array<std::complex<double>, 4> v{z0, z1, std::conj(z0), std::conj(z1)};
  return p.evaluate(v);
}

std::string to_string(const XPoly& p) { return render(p); }
std::string to_string(const ZPoly& p) { return render(p); }

}  // namespace bundle_forge
