#include "bundle_forge/forms.hpp"

#include <sstream>

namespace bundle_forge {

namespace {

constexpr std::array<std::string_view, 3> kXDiffNames{"dx1", "dx2", "dx3"};
constexpr std::array<std::string_view, 4> kZDiffNames{"dz0", "dz1", "dz0bar", "dz1bar"};

template <std::size_t N>
std::string mask_name(unsigned mask, const std::array<std::string_view, N>& names) {
  if (mask == 0) return "1";
  std::string out;
  for (std::size_t k = 0; k < N; ++k)
    if (mask & (1U << k)) {
      if (!out.empty()) out += "^";
      out += names[k];
    }
  return out;
}

template <class Form, std::size_t N>
std::string render_form(const Form& w, const std::array<std::string_view, N>& names) {
  if (w.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, p] : w.components()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(p) << ")";
    if (m != 0) os << "*" << mask_name(m, names);
  }
  return os.str();
}

}  // namespace

XForm dx(XVar v) { return XForm::generator(static_cast<std::size_t>(v)); }
ZForm dz(ZVar v) { return ZForm::generator(static_cast<std::size_t>(v)); }

XPoly coefficient(const XForm& w, TwoFormBasis b) {
  switch (b) {
    case TwoFormBasis::dx1dx2:
      return w.coefficient({0, 1});
    case TwoFormBasis::dx2dx3:
      return w.coefficient({1, 2});
    case TwoFormBasis::dx3dx1:
      return w.coefficient({2, 0});
  }
  return XPoly();
}

XForm two_form(const XPoly& f12, const XPoly& f23, const XPoly& f31) {
  const XForm d1 = dx(XVar::x1), d2 = dx(XVar::x2), d3 = dx(XVar::x3);
  return f12 * wedge(d1, d2) + f23 * wedge(d2, d3) + f31 * wedge(d3, d1);
}

XForm volume_form_ambient() {
  return two_form(x_var(XVar::x3), x_var(XVar::x1), x_var(XVar::x2));
}

RawXPoly sphere_relation_x() {
  RawXPoly r = RawXPoly::monomial({2, 0, 0}) + RawXPoly::monomial({0, 2, 0}) + RawXPoly::monomial({0, 0, 2});
  return r - RawXPoly(GaussianRational(1));
}

XForm sphere_relation_differential_x() {
  const GaussianRational two(2);
  return two * (x_var(XVar::x1) * dx(XVar::x1) + x_var(XVar::x2) * dx(XVar::x2) + x_var(XVar::x3) * dx(XVar::x3));
}

RawZPoly sphere_relation_z() {
  return RawZPoly::monomial({1, 0, 1, 0}) + RawZPoly::monomial({0, 1, 0, 1}) - RawZPoly(GaussianRational(1));
}

ZForm sphere_relation_differential_z() {
  // Written out by hand: the canonical form of z0 zb0 + z1 zb1 is the constant 1.
  return z_var(ZVar::z0bar) * dz(ZVar::z0) + z_var(ZVar::z0) * dz(ZVar::z0bar) + z_var(ZVar::z1bar) * dz(ZVar::z1) +
         z_var(ZVar::z1) * dz(ZVar::z1bar);
}

SphereTwoForm restrict_to_sphere(const XForm& w) {
  if (!w.is_homogeneous(2)) throw InvalidInput("restrict_to_sphere expects a 2-form");
  XPoly g = coefficient(w, TwoFormBasis::dx1dx2) * x_var(XVar::x3) +
            coefficient(w, TwoFormBasis::dx2dx3) * x_var(XVar::x1) +
            coefficient(w, TwoFormBasis::dx3dx1) * x_var(XVar::x2);
  return {g};
}

VolumeUnits integrate_s2(const SphereTwoForm& w) { return integrate_function(w.coeff); }
VolumeUnits integrate_s2(const XForm& w) { return integrate_s2(restrict_to_sphere(w)); }

bool equal_on_sphere(const XForm& a, const XForm& b) {
  const XForm diff = a - b;
  if (!diff.homogeneous_part(0).is_zero()) return false;
  const XForm one = diff.homogeneous_part(1);
  for (XVar v : {XVar::x1, XVar::x2, XVar::x3})
    if (!restrict_to_sphere(wedge(one, dx(v))).coeff.is_zero()) return false;
  return restrict_to_sphere(diff.homogeneous_part(2)).coeff.is_zero();
}

ZForm conj(const ZForm& w) {
  return w.transform([](const ZPoly& p) { return conj(p); }, {2, 3, 0, 1});
}

XForm conj(const XForm& w) {
  return w.transform([](const XPoly& p) { return conj(p); }, {0, 1, 2});
}

std::string to_string(const XForm& w) { return render_form(w, kXDiffNames); }
std::string to_string(const ZForm& w) { return render_form(w, kZDiffNames); }
std::string basis_name(const XForm&, unsigned mask) { return mask_name(mask, kXDiffNames); }
std::string basis_name(const ZForm&, unsigned mask) { return mask_name(mask, kZDiffNames); }

}  // namespace bundle_forge
