#pragma once

#include "bundle_forge/rational.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bundle_forge {

template <std::size_t N>
using Exponent = std::array<unsigned, N>;

template <std::size_t N>
unsigned total_degree(const Exponent<N>& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

/// Graded lexicographic order; variable N-1 is the greatest.
template <std::size_t N>
struct GradedLexLess {
  bool operator()(const Exponent<N>& a, const Exponent<N>& b) const {
    unsigned da = total_degree<N>(a);
    unsigned db = total_degree<N>(b);
    if (da != db) return da < db;
    for (std::size_t k = N; k-- > 0;)
      if (a[k] != b[k]) return a[k] < b[k];
    return false;
  }
};

/// Sparse polynomial in N commuting variables over the Gaussian rationals, with
/// no relation imposed. Zero coefficients are never stored.
template <std::size_t N>
class SparsePoly {
 public:
  using Exp = Exponent<N>;
  using TermMap = std::map<Exp, GaussianRational, GradedLexLess<N>>;

  SparsePoly() = default;
  SparsePoly(const GaussianRational& c) {  // NOLINT(implicit)
    add_term(Exp{}, c);
  }

  static SparsePoly monomial(const Exp& e, const GaussianRational& c = GaussianRational(1)) {
    SparsePoly p;
    p.add_term(e, c);
    return p;
  }
  static SparsePoly variable(std::size_t k) {
    Exp e{};
    e[k] = 1;
    return monomial(e);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree<N>(e));
    return d;
  }

  void add_term(const Exp& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparsePoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) { return a *= GaussianRational(-1); }
  friend SparsePoly operator*(SparsePoly a, const GaussianRational& s) { return a *= s; }
  friend SparsePoly operator*(const GaussianRational& s, SparsePoly a) { return a *= s; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exp e;
        for (std::size_t k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  /// Formal partial derivative in variable k.
  SparsePoly partial(std::size_t k) const {
    SparsePoly out;
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exp d = e;
      --d[k];
      out.add_term(d, c * GaussianRational(static_cast<long>(e[k])));
    }
    return out;
  }

  /// Numeric evaluation at the given variable values.
  std::complex<double> evaluate(std::span<const std::complex<double>, N> values) const {
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (std::size_t k = 0; k < N; ++k)
        for (unsigned p = 0; p < e[k]; ++p) t *= values[k];
      sum += t;
    }
    return sum;
  }

 private:
  TermMap terms_;
};

/// Double-precision copy of a polynomial for repeated numeric evaluation.
template <std::size_t N>
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const SparsePoly<N>& p) {
    for (const auto& [e, c] : p.terms()) terms_.push_back({c.to_complex(), e});
  }

  bool is_zero() const { return terms_.empty(); }

  template <class T>
  std::complex<double> operator()(const std::array<T, N>& values) const {
    std::complex<double> sum = 0.0;
    for (const auto& [c, e] : terms_) {
      std::complex<double> t = c;
      for (std::size_t k = 0; k < N; ++k)
        for (unsigned p = 0; p < e[k]; ++p) t *= values[k];
      sum += t;
    }
    return sum;
  }

 private:
  std::vector<std::pair<std::complex<double>, Exponent<N>>> terms_;
};

/// Polynomial kept in the canonical normal form of a quotient ring. `Ring`
/// supplies the variable count and the single-relation rewrite:
///   static constexpr std::size_t kVars;
///   static void reduce_monomial(const Exponent<kVars>&, const GaussianRational&, SparsePoly<kVars>& out);
///   static bool is_canonical(const Exponent<kVars>&);
template <class Ring>
class CanonicalPoly {
 public:
  static constexpr std::size_t kVars = Ring::kVars;
  using Raw = SparsePoly<kVars>;
  using Exp = Exponent<kVars>;

  CanonicalPoly() = default;
  CanonicalPoly(const GaussianRational& c) : raw_(c) {}  // NOLINT(implicit)
  CanonicalPoly(long c) : raw_(GaussianRational(c)) {}   // NOLINT(implicit)

  /// Rewrites an arbitrary polynomial into canonical form.
  static CanonicalPoly reduce(const Raw& p) {
    CanonicalPoly out;
    for (const auto& [e, c] : p.terms()) Ring::reduce_monomial(e, c, out.raw_);
    return out;
  }
  static CanonicalPoly variable(std::size_t k) { return reduce(Raw::variable(k)); }
  static CanonicalPoly monomial(const Exp& e, const GaussianRational& c = GaussianRational(1)) {
    return reduce(Raw::monomial(e, c));
  }

  const Raw& raw() const { return raw_; }
  const typename Raw::TermMap& terms() const { return raw_.terms(); }
  bool is_zero() const { return raw_.is_zero(); }
  unsigned degree() const { return raw_.degree(); }

  /// Returns the constant value when the polynomial has no non-constant term.
  std::optional<GaussianRational> constant_value() const {
    if (raw_.is_zero()) return GaussianRational(0);
    if (raw_.size() == 1 && raw_.terms().begin()->first == Exp{}) return raw_.terms().begin()->second;
    return std::nullopt;
  }

  CanonicalPoly& operator+=(const CanonicalPoly& o) {
    raw_ += o.raw_;
    return *this;
  }
  CanonicalPoly& operator-=(const CanonicalPoly& o) {
    raw_ -= o.raw_;
    return *this;
  }
  CanonicalPoly& operator*=(const GaussianRational& s) {
    raw_ *= s;
    return *this;
  }
  CanonicalPoly& operator*=(const CanonicalPoly& o) { return *this = *this * o; }

  friend CanonicalPoly operator+(CanonicalPoly a, const CanonicalPoly& b) { return a += b; }
  friend CanonicalPoly operator-(CanonicalPoly a, const CanonicalPoly& b) { return a -= b; }
  friend CanonicalPoly operator-(CanonicalPoly a) { return a *= GaussianRational(-1); }
  friend CanonicalPoly operator*(CanonicalPoly a, const GaussianRational& s) { return a *= s; }
  friend CanonicalPoly operator*(const GaussianRational& s, CanonicalPoly a) { return a *= s; }
  friend CanonicalPoly operator*(const CanonicalPoly& a, const CanonicalPoly& b) {
    CanonicalPoly out;
    for (const auto& [ea, ca] : a.terms())
      for (const auto& [eb, cb] : b.terms()) {
        Exp e;
        for (std::size_t k = 0; k < kVars; ++k) e[k] = ea[k] + eb[k];
        Ring::reduce_monomial(e, ca * cb, out.raw_);
      }
    return out;
  }
  friend bool operator==(const CanonicalPoly& a, const CanonicalPoly& b) { return a.raw_ == b.raw_; }

  /// Formal partial derivative of the canonical representative. Derivatives of
  /// canonical monomials are canonical for both rings used here.
  CanonicalPoly partial(std::size_t k) const {
    CanonicalPoly out;
    out.raw_ = raw_.partial(k);
    return out;
  }

  std::complex<double> evaluate(std::span<const std::complex<double>, kVars> values) const {
    return raw_.evaluate(values);
  }

 private:
  Raw raw_;
};

}  // namespace bundle_forge
