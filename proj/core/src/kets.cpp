#include "bundle_forge/kets.hpp"

#include "bundle_forge/errors.hpp"

namespace bundle_forge {

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational pair_weight(const Rational& a, const Rational& b) {
  auto r = rational_sqrt(a * b);
  if (!r) throw OutsideExactField("weights " + a.get_str() + " and " + b.get_str() + " do not pair to a rational square");
  return *r;
}

}  // namespace

EquivariantKet::EquivariantKet(std::vector<KetComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw InvalidInput("a ket needs at least one component");
  for (const auto& c : components_)
    if (sgn(c.weight) <= 0) throw InvalidInput("ket weights must be positive, got " + c.weight.get_str());
}

bool operator==(const EquivariantKet& a, const EquivariantKet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].weight != b[k].weight || !(a[k].poly == b[k].poly)) return false;
  return true;
}

EquivariantKet monopole_ket(MonopoleFamily family, unsigned n) {
  const ZPoly z0 = z_var(ZVar::z0), z1 = z_var(ZVar::z1);
  std::vector<KetComponent> comps;
  comps.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    ZPoly mono(1L);
    for (unsigned j = 0; j < n - k; ++j) mono = mono * z0;
    for (unsigned j = 0; j < k; ++j) mono = mono * z1;
    comps.push_back({binomial(n, k), family == MonopoleFamily::minus ? mono : conj(mono)});
  }
  return EquivariantKet(std::move(comps));
}

EquivariantKet tilde_ket2() {
  const ZPoly z0 = z_var(ZVar::z0), z1 = z_var(ZVar::z1);
  const Rational half(1, 2);
  return EquivariantKet({{half, z1 * z1 - z0 * z0}, {half, z1 * z1 + z0 * z0}, {half, GaussianRational(2) * z0 * z1}});
}

ZPoly pairing(const EquivariantKet& a, const EquivariantKet& b) {
  if (a.size() != b.size()) throw InvalidInput("pairing of kets with different lengths");
  ZPoly out;
  for (std::size_t k = 0; k < a.size(); ++k)
    out += GaussianRational(pair_weight(a[k].weight, b[k].weight)) * (a[k].poly * conj(b[k].poly));
  return out;
}

ZForm connection_form(const EquivariantKet& k) {
  ZForm out;
  for (const auto& c : k.components())
    out += GaussianRational(c.weight) * (c.poly * exterior_derivative(ZForm(conj(c.poly))));
  return out;
}

ZForm curvature_scalar(const EquivariantKet& k) {
  ZForm out;
  for (const auto& c : k.components())
    out += GaussianRational(c.weight) * wedge(exterior_derivative(ZForm(c.poly)), exterior_derivative(ZForm(conj(c.poly))));
  return out;
}

int equivariance_type(const ZPoly& p) {
  std::optional<int> type;
  for (const auto& [e, c] : p.terms()) {
    int m = charge_of(e);
    if (type && *type != m)
      throw NotInvariant("polynomial " + to_string(p) + " mixes equivariance types " + std::to_string(*type) +
                         " and " + std::to_string(m));
    type = m;
  }
  return type.value_or(0);
}

int equivariance_type(const EquivariantKet& k) {
  std::optional<int> type;
  for (const auto& c : k.components()) {
    if (c.poly.is_zero()) continue;
    int m = equivariance_type(c.poly);
    if (type && *type != m)
      throw NotInvariant("ket components have types " + std::to_string(*type) + " and " + std::to_string(m));
    type = m;
  }
  return type.value_or(0);
}

bool operator==(const ScaledXVector& a, const ScaledXVector& b) {
  if (a.components.size() != b.components.size()) return false;
  auto all_zero = [](const ScaledXVector& v) {
    for (const auto& p : v.components)
      if (!p.is_zero()) return false;
    return true;
  };
  if (a.scale == b.scale) return a.components == b.components;
  auto ratio = rational_sqrt(a.scale / b.scale);
  if (!ratio) return all_zero(a) && all_zero(b);
  for (std::size_t k = 0; k < a.components.size(); ++k)
    if (!(GaussianRational(*ratio) * a.components[k] == b.components[k])) return false;
  return true;
}

XPoly pairing(const ScaledXVector& a, const ScaledXVector& b) {
  if (a.components.size() != b.components.size()) throw InvalidInput("pairing of vectors with different lengths");
  XPoly sum;
  for (std::size_t k = 0; k < a.components.size(); ++k) sum += a.components[k] * conj(b.components[k]);
  return GaussianRational(pair_weight(a.scale, b.scale)) * sum;
}

ScaledXVector operator*(const ScaledXMatrix& m, const ScaledXVector& v) {
  if (m.cols() != v.components.size()) throw InvalidInput("matrix-vector dimension mismatch");
  ScaledXVector out{m.scale * v.scale, {}};
  out.components.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.components[r] += m.entries[r][c] * v.components[c];
  return out;
}

ScaledXVector combine(std::span<const XPoly> coefficients, std::span<const ScaledXVector> vectors) {
  if (coefficients.size() != vectors.size() || vectors.empty()) throw InvalidInput("combine: size mismatch");
  ScaledXVector out{vectors.front().scale, std::vector<XPoly>(vectors.front().components.size())};
  for (std::size_t l = 0; l < vectors.size(); ++l) {
    if (vectors[l].scale != out.scale || vectors[l].components.size() != out.components.size())
      throw InvalidInput("combine: vectors must share scale and length");
    for (std::size_t k = 0; k < out.components.size(); ++k)
      out.components[k] += coefficients[l] * vectors[l].components[k];
  }
  return out;
}

NamedRealObjects named_real_objects() {
  const XPoly x1 = x_var(XVar::x1), x2 = x_var(XVar::x2), x3 = x_var(XVar::x3);
  const XPoly one(1L), zero;
  const Rational half(1, 2);

  NamedRealObjects o;
  o.psi_nor = {1, {x1, x2, x3}};
  o.V = {ScaledXVector{1, {zero, -x3, x2}}, ScaledXVector{1, {x3, zero, -x1}}, ScaledXVector{1, {-x2, x1, zero}}};
  o.W = {
      ScaledXVector{half, {one - x1 * x1, zero, -x3, x1 * x2, -(x1 * x3), x2}},
      ScaledXVector{half, {-(x1 * x2), x3, zero, x2 * x2 - one, -(x2 * x3), -x1}},
      ScaledXVector{half, {-(x1 * x3), -x2, x1, x2 * x3, one - x3 * x3, zero}},
  };
  o.u = {half,
         {
             {zero, -x3, x2},
             {one - x1 * x1, -(x1 * x2), -(x1 * x3)},
             {-(x1 * x2), one - x2 * x2, -(x2 * x3)},
             {-x3, zero, x1},
             {-x2, x1, zero},
             {-(x1 * x3), -(x2 * x3), one - x3 * x3},
         }};
  return o;
}

}  // namespace bundle_forge
