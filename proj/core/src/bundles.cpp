#include "bundle_forge/bundles.hpp"

#include "bundle_forge/errors.hpp"

namespace bundle_forge {

namespace {

// sqrt(wa) a == sqrt(wb) b for positive rational wa, wb.
bool radical_equal(const Rational& wa, const XPoly& a, const Rational& wb, const XPoly& b) {
  if (wa == wb) return a == b;
  if (auto q = rational_sqrt(wa / wb)) return GaussianRational(*q) * a == b;
  return a.is_zero() && b.is_zero();
}

Rational inner_weight(const Rational& a, const Rational& b) {
  auto r = rational_sqrt(a * b);
  if (!r) throw OutsideExactField("inner weights " + a.get_str() + " and " + b.get_str() + " are not a rational square");
  return *r;
}

PolyMatrix conj_transpose(const PolyMatrix& m) {
  PolyMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = conj(m(r, c));
  return out;
}

std::vector<Rational> doubled(const std::vector<Rational>& w) {
  std::vector<Rational> out;
  out.reserve(2 * w.size());
  for (const auto& x : w) {
    out.push_back(x);
    out.push_back(x);
  }
  return out;
}

PolyMatrix real_form_core(const PolyMatrix& m) {
  PolyMatrix out(2 * m.rows(), 2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      XPoly a = real_part(m(r, c));
      XPoly b = imag_part(m(r, c));
      out(2 * r, 2 * c) = a;
      out(2 * r, 2 * c + 1) = -b;
      out(2 * r + 1, 2 * c) = b;
      out(2 * r + 1, 2 * c + 1) = a;
    }
  return out;
}

}  // namespace

WeightedMatrix WeightedMatrix::identity(std::size_t n) {
  return {std::vector<Rational>(n, Rational(1)), std::vector<Rational>(n, Rational(1)), PolyMatrix::identity(n)};
}

WeightedMatrix WeightedMatrix::from(const ScaledXMatrix& m) {
  WeightedMatrix out{std::vector<Rational>(m.rows(), m.scale), std::vector<Rational>(m.cols(), Rational(1)),
                     PolyMatrix(m.rows(), m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.entries[r].size() != m.cols()) throw InvalidInput("ragged scaled matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) out.core(r, c) = m.entries[r][c];
  }
  return out;
}

std::optional<XPoly> WeightedProjector::entry(std::size_t j, std::size_t k) const {
  auto r = rational_sqrt(weights[j] * weights[k]);
  if (!r) return core(j, k).is_zero() ? std::optional<XPoly>(XPoly()) : std::nullopt;
  return GaussianRational(*r) * core(j, k);
}

WeightedMatrix operator*(const WeightedMatrix& a, const WeightedMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product dimension mismatch");
  std::vector<GaussianRational> inner;
  inner.reserve(a.cols());
  for (std::size_t m = 0; m < a.cols(); ++m) inner.emplace_back(inner_weight(a.col_weights[m], b.row_weights[m]));
  WeightedMatrix out{a.row_weights, b.col_weights, PolyMatrix(a.rows(), b.cols())};
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      XPoly sum;
      for (std::size_t m = 0; m < a.cols(); ++m) {
        if (a.core(r, m).is_zero() || b.core(m, c).is_zero()) continue;
        sum += inner[m] * (a.core(r, m) * b.core(m, c));
      }
      out.core(r, c) = std::move(sum);
    }
  return out;
}

WeightedMatrix adjoint(const WeightedMatrix& a) { return {a.col_weights, a.row_weights, conj_transpose(a.core)}; }

bool operator==(const WeightedMatrix& a, const WeightedMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!radical_equal(a.row_weights[r] * a.col_weights[c], a.core(r, c), b.row_weights[r] * b.col_weights[c],
                         b.core(r, c)))
        return false;
  return true;
}

WeightedProjector projector_from_ket(const EquivariantKet& k) {
  const std::size_t n = k.size();
  WeightedProjector p{{}, PolyMatrix(n, n)};
  for (const auto& c : k.components()) p.weights.push_back(c.weight);
  for (std::size_t j = 0; j < n; ++j) {
    ZPoly bar = conj(k[j].poly);
    for (std::size_t l = 0; l < n; ++l) p.core(j, l) = z_to_x(bar * k[l].poly);
  }
  return p;
}

WeightedProjector normal_projector() {
  const ScaledXVector nor = named_real_objects().psi_nor;
  return sum_of_dyads(std::span(&nor, 1));
}

WeightedProjector tangent_projector() {
  WeightedProjector p = normal_projector();
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t k = 0; k < p.size(); ++k) p.core(j, k) = (j == k ? XPoly(1L) : XPoly()) - p.core(j, k);
  return p;
}

WeightedProjector sum_of_dyads(std::span<const ScaledXVector> vectors) {
  if (vectors.empty()) throw InvalidInput("sum_of_dyads needs at least one vector");
  const std::size_t n = vectors.front().components.size();
  WeightedProjector p{std::vector<Rational>(n, Rational(1)), PolyMatrix(n, n)};
  for (const auto& v : vectors) {
    if (v.components.size() != n) throw InvalidInput("sum_of_dyads: vectors of different lengths");
    const GaussianRational s(v.scale);
    for (std::size_t j = 0; j < n; ++j) {
      if (v.components[j].is_zero()) continue;
      XPoly bar = s * conj(v.components[j]);
      for (std::size_t k = 0; k < n; ++k) p.core(j, k) += bar * v.components[k];
    }
  }
  return p;
}

AxiomReport verify_axioms(const WeightedProjector& p) {
  AxiomReport report;
  const std::size_t n = p.size();
  if (p.core.rows() != n || p.core.cols() != n) throw InvalidInput("projector core does not match its weights");

  // M diag(w) M == M.
  report.idempotent = true;
  for (std::size_t j = 0; j < n && report.idempotent; ++j)
    for (std::size_t k = 0; k < n && report.idempotent; ++k) {
      XPoly sum;
      for (std::size_t m = 0; m < n; ++m) sum += GaussianRational(p.weights[m]) * (p.core(j, m) * p.core(m, k));
      report.idempotent = sum == p.core(j, k);
    }

  report.hermitian = true;
  for (std::size_t j = 0; j < n && report.hermitian; ++j)
    for (std::size_t k = j; k < n && report.hermitian; ++k) report.hermitian = p.core(j, k) == conj(p.core(k, j));

  XPoly trace;
  for (std::size_t k = 0; k < n; ++k) trace += GaussianRational(p.weights[k]) * p.core(k, k);
  report.trace = trace.constant_value();
  report.trace_integer = report.trace && report.trace->is_real() && report.trace->re().get_den() == 1;
  return report;
}

WeightedMatrix transpose(const WeightedMatrix& a) {
  PolyMatrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a.core(r, c);
  return {a.col_weights, a.row_weights, std::move(t)};
}

WeightedProjector transpose(const WeightedProjector& p) {
  WeightedMatrix t = transpose(p.as_matrix());
  return {p.weights, std::move(t.core)};
}

WeightedMatrix real_form(const WeightedMatrix& a) {
  return {doubled(a.row_weights), doubled(a.col_weights), real_form_core(a.core)};
}

WeightedProjector real_form(const WeightedProjector& p) { return {doubled(p.weights), real_form_core(p.core)}; }

XForm chern_trace_ambient(const WeightedProjector& p) {
  const std::size_t n = p.size();
  std::vector<GaussianRational> w;
  for (const auto& x : p.weights) w.emplace_back(x);

  Matrix<XForm> dm(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) dm(j, k) = exterior_derivative(XForm(p.core(j, k)));

  // A = M W dM, a matrix of 1-forms.
  Matrix<XForm> a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) {
        if (p.core(j, m).is_zero() || dm(m, k).is_zero()) continue;
        a(j, k) += (w[m] * p.core(j, m)) * dm(m, k);
      }

  // tr(A W dM W) = sum_{j,k} w_k w_j A_jk ^ dM_kj.
  XForm trace;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(j, k).is_zero() || dm(k, j).is_zero()) continue;
      trace += (w[j] * w[k]) * wedge(a(j, k), dm(k, j));
    }
  return trace;
}

SphereTwoForm chern_form_exact(const WeightedProjector& p) { return restrict_to_sphere(chern_trace_ambient(p)); }

Rational chern_number_exact(const WeightedProjector& p) {
  // c1 = -(1/2 pi i) * 4 pi * V = 2i V, with V the integral in units of 4 pi.
  const GaussianRational volume = integrate_s2(chern_form_exact(p)).value;
  const GaussianRational c1 = GaussianRational(Rational(0), Rational(2)) * volume;
  if (!c1.is_real()) throw ConsistencyFailure("Chern number has imaginary part " + c1.im().get_str());
  if (c1.re().get_den() != 1) throw ConsistencyFailure("Chern number " + c1.re().get_str() + " is not an integer");
  return c1.re();
}

RadicalZPoly section_pairing(const EquivariantKet& k, const Section& f) {
  if (f.f.size() != k.size()) throw InvalidInput("section length does not match the ket");
  RadicalZPoly out;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (f.f[j].is_zero()) continue;
    RadicalSplit split = split_radical(k[j].weight);
    ZPoly term = GaussianRational(split.root) * (k[j].poly * x_to_z(f.f[j]));
    auto [it, inserted] = out.terms.try_emplace(split.squarefree, term);
    if (!inserted) it->second += term;
    if (it->second.is_zero()) out.terms.erase(it);
  }
  return out;
}

int equivariance_type(const RadicalZPoly& p) {
  std::optional<int> type;
  for (const auto& [s, poly] : p.terms) {
    int m = equivariance_type(poly);
    if (type && *type != m) throw NotInvariant("radical polynomial mixes equivariance types");
    type = m;
  }
  return type.value_or(0);
}

ZForm covariant_derivative(const EquivariantKet& k, const ZPoly& phi) {
  const int want = equivariance_type(k);
  if (!phi.is_zero() && equivariance_type(phi) != want)
    throw NotInvariant("covariant_derivative: phi has type " + std::to_string(equivariance_type(phi)) +
                       ", the ket has type " + std::to_string(want));
  return exterior_derivative(ZForm(phi)) + phi * connection_form(k);
}

GaugeResult exact_gauge(const WeightedProjector& p, const ScalarMatrix& s) {
  const std::size_t n = p.size();
  if (s.rows() != n || s.cols() != n) throw InvalidInput("gauge matrix has the wrong size");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      GaussianRational dot;
      for (std::size_t m = 0; m < n; ++m) dot += s(j, m) * s(k, m).conj();
      if (!(dot == GaussianRational(j == k ? 1 : 0))) throw InvalidInput("gauge matrix is not unitary");
    }

  // Monomial unitary: row j has its single entry sigma_j in column perm[j].
  std::vector<std::size_t> perm(n);
  bool monomial = true;
  for (std::size_t j = 0; j < n && monomial; ++j) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (!s(j, k).is_zero()) {
        perm[j] = k;
        ++count;
      }
    monomial = count == 1;
  }

  GaugeResult out;
  if (monomial) {
    out.projector.weights.resize(n);
    out.projector.core = PolyMatrix(n, n);
    out.isometry = {std::vector<Rational>(n), p.weights, PolyMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
      const GaussianRational& sj = s(j, perm[j]);
      out.projector.weights[j] = p.weights[perm[j]];
      out.isometry.row_weights[j] = p.weights[perm[j]];
      for (std::size_t k = 0; k < n; ++k) {
        out.projector.core(j, k) = (sj * s(k, perm[k]).conj()) * p.core(perm[j], perm[k]);
        out.isometry.core(j, k) = sj * p.core(perm[j], k);
      }
    }
    return out;
  }

  for (const auto& w : p.weights)
    if (w != p.weights.front())
      throw InvalidInput("exact gauge: a non-monomial unitary requires uniform weights");
  PolyMatrix sm(n, n), sms(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) sm(j, k) += s(j, m) * p.core(m, k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) sms(j, k) += s(k, m).conj() * sm(j, m);
  out.projector = {p.weights, std::move(sms)};
  out.isometry = {p.weights, p.weights, std::move(sm)};
  return out;
}

IsometryReport isometry_verify(const WeightedMatrix& u, const WeightedProjector& src, const WeightedProjector& dst) {
  if (u.cols() != src.size() || u.rows() != dst.size())
    throw InvalidInput("isometry_verify: dimensions do not conform");
  const WeightedMatrix ud = adjoint(u);
  return {ud * u == src.as_matrix(), u * ud == dst.as_matrix()};
}

IsometryReport isometry_verify(const ScaledXMatrix& u, const WeightedProjector& src, const WeightedProjector& dst) {
  return isometry_verify(WeightedMatrix::from(u), src, dst);
}

ChernReport chern_report_exact(const std::string& object, const WeightedProjector& p) {
  ChernReport r{object, "exact", std::monostate{}, verify_axioms(p), std::nullopt};
  if (r.axioms.all_pass()) r.c1 = chern_number_exact(p);
  return r;
}

}  // namespace bundle_forge
