#pragma once

#include "bundle_forge/exact_ring.hpp"
#include "bundle_forge/forms.hpp"

#include <array>
#include <span>
#include <vector>

namespace bundle_forge {

/// One entry sqrt(weight) * poly of a bra row.
struct KetComponent {
  Rational weight;
  ZPoly poly;
};

/// The bra row <psi| = (sqrt(w_1) psi_1, ..., sqrt(w_N) psi_N) of an
/// equivariant map S^3 -> C^N. Square-root prefactors are stored squared and
/// only ever combined in sesquilinear pairs.
class EquivariantKet {
 public:
  EquivariantKet() = default;
  /// Throws InvalidInput for an empty component list or a non-positive weight.
  explicit EquivariantKet(std::vector<KetComponent> components);

  const std::vector<KetComponent>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const KetComponent& operator[](std::size_t k) const { return components_[k]; }

  friend bool operator==(const EquivariantKet& a, const EquivariantKet& b);

 private:
  std::vector<KetComponent> components_;
};

enum class MonopoleFamily {
  minus,  ///< components sqrt(C(n,k)) z0^(n-k) z1^k
  plus,   ///< the complex conjugates
};

EquivariantKet monopole_ket(MonopoleFamily family, unsigned n);

/// (1/sqrt 2) (z1^2 - z0^2, z1^2 + z0^2, 2 z0 z1).
EquivariantKet tilde_ket2();

/// sum_k sqrt(w^a_k w^b_k) a_k conj(b_k). Throws InvalidInput on a length
/// mismatch and OutsideExactField when some w^a_k w^b_k is not a rational square.
ZPoly pairing(const EquivariantKet& a, const EquivariantKet& b);

/// A = <psi|d psi> = sum_k w_k psi_k d(conj psi_k).
ZForm connection_form(const EquivariantKet& k);

/// <d psi|d psi> = sum_k w_k d(psi_k) ^ d(conj psi_k).
ZForm curvature_scalar(const EquivariantKet& k);

/// The integer m with phi(p.w) = w^m phi(p), read off as holomorphic minus
/// antiholomorphic degree. Throws NotInvariant if the components disagree or a
/// component mixes types; the zero polynomial has no type and is skipped.
int equivariance_type(const EquivariantKet& k);
int equivariance_type(const ZPoly& p);

/// sqrt(scale) * (components).
struct ScaledXVector {
  Rational scale{1};
  std::vector<XPoly> components;
};

/// sqrt(scale) * (entries), row-major.
struct ScaledXMatrix {
  Rational scale{1};
  std::vector<std::vector<XPoly>> entries;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }
};

/// Equality as functions: sqrt(a) v == sqrt(b) w, exact.
bool operator==(const ScaledXVector& a, const ScaledXVector& b);

/// sum_k sqrt(s_a s_b) a_k conj(b_k); OutsideExactField when s_a s_b is not a square.
XPoly pairing(const ScaledXVector& a, const ScaledXVector& b);

ScaledXVector operator*(const ScaledXMatrix& m, const ScaledXVector& v);

/// sum_l c_l v_l; all vectors must share one scale.
ScaledXVector combine(std::span<const XPoly> coefficients, std::span<const ScaledXVector> vectors);

/// Real geometric objects on S^2: the normal vector, the rotation generators
/// V_l, their images W_l under u, and u itself.
struct NamedRealObjects {
  ScaledXVector psi_nor;
  std::array<ScaledXVector, 3> V;
  std::array<ScaledXVector, 3> W;
  ScaledXMatrix u;
};

NamedRealObjects named_real_objects();

}  // namespace bundle_forge
