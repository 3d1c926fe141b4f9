#pragma once

#include "bundle_forge/errors.hpp"
#include "bundle_forge/exact_ring.hpp"

#include <array>
#include <bit>
#include <complex>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bundle_forge {

/// Element of the exterior algebra generated by d(var_0) .. d(var_{N-1}) over a
/// canonical polynomial ring. Basis monomials are bitmasks with generators in
/// increasing order; degrees above MaxDeg are rejected.
template <class Poly, std::size_t MaxDeg>
class ExteriorForm {
 public:
  static constexpr std::size_t kGens = Poly::kVars;
  static constexpr std::size_t kMaxDegree = MaxDeg;
  using Mask = unsigned;
  using ComponentMap = std::map<Mask, Poly>;

  ExteriorForm() = default;
  ExteriorForm(const Poly& f) { add(0, f); }  // NOLINT(implicit)

  /// d(var_k).
  static ExteriorForm generator(std::size_t k) {
    ExteriorForm f;
    f.add(Mask{1} << k, Poly(1L));
    return f;
  }

  static unsigned degree_of(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

  const ComponentMap& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Coefficient of the basis monomial given as an ordered list of generator
  /// indices, with the permutation sign applied (e.g. {2,0} gives -coef(d0^d2)).
  Poly coefficient(std::initializer_list<std::size_t> gens) const {
    Mask m = 0;
    int sign = 1;
    std::vector<std::size_t> seen;
    for (std::size_t g : gens) {
      if (m & (Mask{1} << g)) return Poly();
      for (std::size_t s : seen)
        if (s > g) sign = -sign;
      seen.push_back(g);
      m |= Mask{1} << g;
    }
    auto it = comps_.find(m);
    if (it == comps_.end()) return Poly();
    return sign > 0 ? it->second : -it->second;
  }

  /// Part of the form of a given degree.
  ExteriorForm homogeneous_part(unsigned deg) const {
    ExteriorForm out;
    for (const auto& [m, p] : comps_)
      if (degree_of(m) == deg) out.comps_.emplace(m, p);
    return out;
  }

  /// True when every nonzero component has degree `deg` (the zero form counts).
  bool is_homogeneous(unsigned deg) const {
    for (const auto& [m, p] : comps_)
      if (degree_of(m) != deg) return false;
    return true;
  }

  void add(Mask m, const Poly& p) {
    if (degree_of(m) > MaxDeg) throw InvalidInput("exterior form degree overflow");
    if (p.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(m, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  ExteriorForm& operator+=(const ExteriorForm& o) {
    for (const auto& [m, p] : o.comps_) add(m, p);
    return *this;
  }
  ExteriorForm& operator-=(const ExteriorForm& o) {
    for (const auto& [m, p] : o.comps_) add(m, -p);
    return *this;
  }
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  friend ExteriorForm operator-(const ExteriorForm& a) {
    ExteriorForm out;
    for (const auto& [m, p] : a.comps_) out.comps_.emplace(m, -p);
    return out;
  }
  friend ExteriorForm operator*(const Poly& f, const ExteriorForm& a) {
    ExteriorForm out;
    for (const auto& [m, p] : a.comps_) out.add(m, f * p);
    return out;
  }
  friend ExteriorForm operator*(const ExteriorForm& a, const Poly& f) { return f * a; }
  friend ExteriorForm operator*(const GaussianRational& s, const ExteriorForm& a) {
    ExteriorForm out;
    for (const auto& [m, p] : a.comps_) out.add(m, s * p);
    return out;
  }
  friend bool operator==(const ExteriorForm& a, const ExteriorForm& b) { return a.comps_ == b.comps_; }

  /// Graded-commutative product.
  friend ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
    ExteriorForm out;
    for (const auto& [ma, pa] : a.comps_)
      for (const auto& [mb, pb] : b.comps_) {
        if (degree_of(ma) + degree_of(mb) > MaxDeg) throw InvalidInput("exterior form degree overflow");
        if (ma & mb) continue;
        Poly prod = pa * pb;
        out.add(ma | mb, reorder_sign(ma, mb) > 0 ? prod : -prod);
      }
    return out;
  }

  /// d(f dv_I) = sum_j (df/dv_j) dv_j ^ dv_I, applied to the stored representative.
  friend ExteriorForm exterior_derivative(const ExteriorForm& a) {
    ExteriorForm out;
    for (const auto& [m, p] : a.comps_)
      for (std::size_t j = 0; j < kGens; ++j) {
        Mask bit = Mask{1} << j;
        if (m & bit) continue;
        Poly dp = p.partial(j);
        if (dp.is_zero()) continue;
        if (degree_of(m) + 1 > MaxDeg) throw InvalidInput("exterior form degree overflow");
        out.add(m | bit, reorder_sign(bit, m) > 0 ? dp : -dp);
      }
    return out;
  }

  /// Applies `map` to every coefficient and the generator permutation `perm`
  /// (generator k goes to perm[k]) to every basis monomial.
  template <class F>
  ExteriorForm transform(F&& map, const std::array<std::size_t, kGens>& perm) const {
    ExteriorForm out;
    for (const auto& [m, p] : comps_) {
      std::vector<std::size_t> image;
      for (std::size_t k = 0; k < kGens; ++k)
        if (m & (Mask{1} << k)) image.push_back(perm[k]);
      int sign = 1;
      Mask target = 0;
      for (std::size_t i = 0; i < image.size(); ++i) {
        target |= Mask{1} << image[i];
        for (std::size_t j = i + 1; j < image.size(); ++j)
          if (image[i] > image[j]) sign = -sign;
      }
      Poly q = map(p);
      out.add(target, sign > 0 ? q : -q);
    }
    return out;
  }

  /// Numeric evaluation on up to MaxDeg tangent vectors. `vars` are the
  /// coordinate values at the point; `vectors[i][k]` is d(var_k)(v_i).
  std::complex<double> evaluate(std::span<const std::complex<double>, kGens> vars,
                                std::span<const std::array<std::complex<double>, kGens>> vectors) const {
    std::complex<double> sum = 0.0;
    const std::size_t deg = vectors.size();
    for (const auto& [m, p] : comps_) {
      if (degree_of(m) != deg) continue;
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < kGens; ++k)
        if (m & (Mask{1} << k)) idx.push_back(k);
      sum += p.evaluate(vars) * determinant(idx, vectors);
    }
    return sum;
  }

 private:
  // Sign of the shuffle that sorts the concatenation (a, b) of two increasing
  // generator lists.
  static int reorder_sign(Mask a, Mask b) {
    int inversions = 0;
    for (std::size_t j = 0; j < kGens; ++j)
      if (b & (Mask{1} << j)) inversions += std::popcount(a >> (j + 1));
    return inversions % 2 == 0 ? 1 : -1;
  }

  static std::complex<double> determinant(const std::vector<std::size_t>& idx,
                                          std::span<const std::array<std::complex<double>, kGens>> v) {
    switch (idx.size()) {
      case 0:
        return 1.0;
      case 1:
        return v[0][idx[0]];
      case 2:
        return v[0][idx[0]] * v[1][idx[1]] - v[0][idx[1]] * v[1][idx[0]];
      case 3: {
        auto e = [&](std::size_t r, std::size_t c) { return v[r][idx[c]]; };
        return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
      }
      default:
        throw InvalidInput("evaluation of forms above degree 3 is not supported");
    }
  }

  ComponentMap comps_;
};

/// Forms on R^3 restricted to S^2: generators dx1, dx2, dx3, up to degree 3.
using XForm = ExteriorForm<XPoly, 3>;
/// Forms on C^2 restricted to S^3: generators dz0, dz1, dzb0, dzb1, up to degree 2.
using ZForm = ExteriorForm<ZPoly, 2>;

/// 2-form basis in the fixed order (dx1^dx2, dx2^dx3, dx3^dx1).
enum class TwoFormBasis { dx1dx2, dx2dx3, dx3dx1 };

XForm dx(XVar v);
ZForm dz(ZVar v);

XPoly coefficient(const XForm& w, TwoFormBasis b);
XForm two_form(const XPoly& f12, const XPoly& f23, const XPoly& f31);

/// x1 dx2dx3 + x2 dx3dx1 + x3 dx1dx2.
XForm volume_form_ambient();
/// The sphere relation r = x1^2 + x2^2 + x3^2 - 1 as a raw polynomial, and dr.
RawXPoly sphere_relation_x();
XForm sphere_relation_differential_x();
RawZPoly sphere_relation_z();
ZForm sphere_relation_differential_z();

/// A 2-form on S^2 written as g * dvol.
struct SphereTwoForm {
  XPoly coeff;
  friend bool operator==(const SphereTwoForm&, const SphereTwoForm&) = default;
};

/// dx_mu ^ dx_nu restricted to S^2 equals eps_{mu nu lambda} x_lambda dvol.
/// Throws InvalidInput when the form has content outside degree 2.
SphereTwoForm restrict_to_sphere(const XForm& w);

VolumeUnits integrate_s2(const SphereTwoForm& w);
VolumeUnits integrate_s2(const XForm& w);

/// Equality of x-forms as forms on S^2 (modulo the ideal generated by r and dr).
/// Degree 1 parts are compared through restrict((a-b) ^ dx_mu) for each mu.
bool equal_on_sphere(const XForm& a, const XForm& b);

/// Complex conjugate of a z-form: coefficients conjugated, dz_k <-> dzb_k.
ZForm conj(const ZForm& w);
/// Complex conjugate of an x-form (coefficients only).
XForm conj(const XForm& w);

std::string to_string(const XForm& w);
std::string to_string(const ZForm& w);
std::string basis_name(const XForm&, unsigned mask);
std::string basis_name(const ZForm&, unsigned mask);

}  // namespace bundle_forge
