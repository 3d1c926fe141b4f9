#pragma once

#include "bundle_forge/exact_ring.hpp"
#include "bundle_forge/forms.hpp"
#include "bundle_forge/kets.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bundle_forge {

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1L);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

using PolyMatrix = Matrix<XPoly>;
using ScalarMatrix = Matrix<GaussianRational>;

/// diag(sqrt(row_weights)) * core * diag(sqrt(col_weights)).
struct WeightedMatrix {
  std::vector<Rational> row_weights;
  std::vector<Rational> col_weights;
  PolyMatrix core;

  std::size_t rows() const { return core.rows(); }
  std::size_t cols() const { return core.cols(); }

  static WeightedMatrix identity(std::size_t n);
  static WeightedMatrix from(const ScaledXMatrix& m);
};

/// A projector p = D M D with D = diag(sqrt(w_k)) and M a hermitian matrix of
/// functions on S^2 satisfying M diag(w) M = M.
struct WeightedProjector {
  std::vector<Rational> weights;
  PolyMatrix core;

  std::size_t size() const { return weights.size(); }
  WeightedMatrix as_matrix() const { return {weights, weights, core}; }
  /// Entry p_jk, available when w_j w_k is a rational square.
  std::optional<XPoly> entry(std::size_t j, std::size_t k) const;
};

/// Product with the inner radicals sqrt(a.col_w * b.row_w) absorbed into the
/// core; throws OutsideExactField when one of them is irrational and
/// InvalidInput on a dimension mismatch.
WeightedMatrix operator*(const WeightedMatrix& a, const WeightedMatrix& b);
WeightedMatrix adjoint(const WeightedMatrix& a);
/// Exact entrywise equality of the represented matrices.
bool operator==(const WeightedMatrix& a, const WeightedMatrix& b);

WeightedProjector projector_from_ket(const EquivariantKet& k);
WeightedProjector normal_projector();
WeightedProjector tangent_projector();

/// sum_l |v_l><v_l| with entry (j,k) = s_l conj(v_lj) v_lk; unit weights.
WeightedProjector sum_of_dyads(std::span<const ScaledXVector> vectors);

struct AxiomReport {
  bool idempotent = false;
  bool hermitian = false;
  /// Set when the trace reduces to a constant.
  std::optional<GaussianRational> trace;
  bool trace_integer = false;

  bool all_pass() const { return idempotent && hermitian && trace_integer; }
};

AxiomReport verify_axioms(const WeightedProjector& p);

WeightedProjector transpose(const WeightedProjector& p);
WeightedMatrix transpose(const WeightedMatrix& a);

/// a + ib -> [[a, -b], [b, a]] on every core entry, weights doubled pairwise.
WeightedProjector real_form(const WeightedProjector& p);
WeightedMatrix real_form(const WeightedMatrix& a);

/// tr(p (dp)^2) = tr(M W dM W dM W), restricted to S^2.
SphereTwoForm chern_form_exact(const WeightedProjector& p);
/// The ambient 2-form tr(M W dM W dM W) before restriction.
XForm chern_trace_ambient(const WeightedProjector& p);
/// c1 = -(1/2 pi i) * integral of tr(p (dp)^2). Throws ConsistencyFailure when
/// the result is not a real integer.
Rational chern_number_exact(const WeightedProjector& p);

/// An element of the base algebra module (A_C)^N.
struct Section {
  std::vector<XPoly> f;
};

/// sum_s sqrt(s) P_s with s squarefree.
struct RadicalZPoly {
  std::map<mpz_class, ZPoly> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const RadicalZPoly&, const RadicalZPoly&) = default;
};

/// The equivariant map sum_k sqrt(w_k) psi_k f_k attached to the section p|f>>.
RadicalZPoly section_pairing(const EquivariantKet& k, const Section& f);
int equivariance_type(const RadicalZPoly& p);

/// (d + <psi|d psi>) phi. Throws NotInvariant unless phi has the ket's type.
ZForm covariant_derivative(const EquivariantKet& k, const ZPoly& phi);

struct GaugeResult {
  WeightedProjector projector;  ///< s p s^dagger
  WeightedMatrix isometry;      ///< v = s p
};

/// Conjugation by an exact unitary s. Supported: any monomial unitary (one
/// unit-modulus entry per row and column) for arbitrary weights, or any exact
/// unitary when all weights are equal. Throws InvalidInput otherwise.
GaugeResult exact_gauge(const WeightedProjector& p, const ScalarMatrix& s);

struct IsometryReport {
  bool source_ok = false;  ///< u^dagger u == src
  bool target_ok = false;  ///< u u^dagger == dst
  bool pass() const { return source_ok && target_ok; }
};

IsometryReport isometry_verify(const WeightedMatrix& u, const WeightedProjector& src, const WeightedProjector& dst);
IsometryReport isometry_verify(const ScaledXMatrix& u, const WeightedProjector& src, const WeightedProjector& dst);

struct ChernReport {
  std::string object;
  std::string backend;  ///< "exact" or "quad"
  /// Empty when the axioms failed and no Chern number was computed.
  std::variant<std::monostate, Rational, double> c1;
  AxiomReport axioms;
  std::optional<double> ms;
};

/// Exact report: axioms plus c1 (c1 is only computed when the axioms pass).
ChernReport chern_report_exact(const std::string& object, const WeightedProjector& p);

}  // namespace bundle_forge
