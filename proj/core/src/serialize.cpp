#include "bundle_forge/serialize.hpp"

#include "bundle_forge/errors.hpp"

#include <sstream>

namespace bundle_forge::io {

namespace {

template <std::size_t N>
Json vars_json(const std::array<std::string_view, N>& names) {
  Json v = Json::array();
  for (auto n : names) v.push_back(std::string(n));
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidInput("rational must be a \"p/q\" string, got " + j.dump());
}

std::vector<Rational> weights_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("weights must be an array");
  std::vector<Rational> out;
  for (const auto& w : j) out.push_back(rational_field(w));
  return out;
}

Json weights_to_json(const std::vector<Rational>& w) {
  Json out = Json::array();
  for (const auto& q : w) out.push_back(to_string(q));
  return out;
}

template <class Poly, std::size_t N>
Json poly_to_json(const Poly& p, const std::array<std::string_view, N>& names) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exp = Json::array();
    for (unsigned a : e) exp.push_back(a);
    terms.push_back({{"re", to_string(c.re())}, {"im", to_string(c.im())}, {"exp", exp}});
  }
  return {{"vars", vars_json(names)}, {"terms", terms}};
}

template <class Poly, std::size_t N>
Poly poly_from_json(const Json& j, const std::array<std::string_view, N>& names) {
  if (field(j, "vars") != vars_json(names))
    throw InvalidInput("polynomial variables must be " + vars_json(names).dump());
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw InvalidInput("\"terms\" must be an array");
  typename Poly::Raw raw;
  for (const auto& t : terms) {
    const Json& exp = field(t, "exp");
    if (!exp.is_array() || exp.size() != N) throw InvalidInput("exponent must have " + std::to_string(N) + " entries");
    Exponent<N> e{};
    for (std::size_t k = 0; k < N; ++k) {
      if (!exp[k].is_number_integer() || exp[k].get<long long>() < 0)
        throw InvalidInput("exponents must be non-negative integers, got " + exp[k].dump());
      e[k] = exp[k].get<unsigned>();
    }
    Rational re = t.contains("re") ? rational_field(t.at("re")) : Rational(0);
    Rational im = t.contains("im") ? rational_field(t.at("im")) : Rational(0);
    raw.add_term(e, GaussianRational(re, im));
  }
  return Poly::reduce(raw);
}

std::string x_basis(unsigned mask, bool& negate) {
  negate = false;
  if (mask == 0b101) {
    negate = true;
    return "dx3^dx1";
  }
  return basis_name(XForm{}, mask);
}

template <class Form, std::size_t N>
Form form_from_json(const Json& j, const std::array<std::string_view, N>& var_names,
                    const std::array<std::string_view, N>& gen_names,
                    typename Form::ComponentMap::mapped_type (*load)(const Json&)) {
  if (field(j, "vars") != vars_json(var_names))
    throw InvalidInput("form variables must be " + vars_json(var_names).dump());
  const Json& comps = field(j, "components");
  if (!comps.is_array()) throw InvalidInput("\"components\" must be an array");
  Form out;
  for (const auto& c : comps) {
    const std::string basis = field(c, "basis").get<std::string>();
    Form term(load(field(c, "coeff")));
    std::size_t degree = 0;
    if (basis != "1") {
      std::stringstream ss(basis);
      std::string gen;
      while (std::getline(ss, gen, '^')) {
        std::size_t k = 0;
        while (k < N && gen_names[k] != gen) ++k;
        if (k == N) throw InvalidInput("unknown basis generator \"" + gen + "\"");
        term = wedge(term, Form::generator(k));
        ++degree;
      }
    }
    if (c.contains("deg") && c.at("deg") != degree)
      throw InvalidInput("basis \"" + basis + "\" does not have degree " + c.at("deg").dump());
    out += term;
  }
  return out;
}

constexpr std::array<std::string_view, 3> kXGens{"dx1", "dx2", "dx3"};
constexpr std::array<std::string_view, 4> kZGens{"dz0", "dz1", "dz0bar", "dz1bar"};

template <class Poly>
std::vector<std::vector<Poly>> matrix_rows(const Json& j, Poly (*load)(const Json&)) {
  if (!j.is_array()) throw InvalidInput("\"core\" must be an array of rows");
  std::vector<std::vector<Poly>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InvalidInput("matrix rows must be arrays");
    rows.emplace_back();
    for (const auto& e : r) rows.back().push_back(load(e));
    if (rows.back().size() != rows.front().size()) throw InvalidInput("ragged matrix");
  }
  return rows;
}

PolyMatrix to_matrix(const std::vector<std::vector<XPoly>>& rows) {
  PolyMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

Json matrix_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json to_json(const XPoly& p) { return poly_to_json(p, SphereS2Ring::kNames); }
Json to_json(const ZPoly& p) { return poly_to_json(p, SphereS3Ring::kNames); }
XPoly xpoly_from_json(const Json& j) { return poly_from_json<XPoly>(j, SphereS2Ring::kNames); }
ZPoly zpoly_from_json(const Json& j) { return poly_from_json<ZPoly>(j, SphereS3Ring::kNames); }

Json to_json(const XForm& w) {
  Json comps = Json::array();
  for (const auto& [m, p] : w.components()) {
    bool negate = false;
    std::string basis = x_basis(m, negate);
    comps.push_back({{"deg", XForm::degree_of(m)}, {"basis", basis}, {"coeff", to_json(negate ? -p : p)}});
  }
  return {{"vars", vars_json(SphereS2Ring::kNames)}, {"components", comps}};
}

Json to_json(const ZForm& w) {
  Json comps = Json::array();
  for (const auto& [m, p] : w.components())
    comps.push_back({{"deg", ZForm::degree_of(m)}, {"basis", basis_name(w, m)}, {"coeff", to_json(p)}});
  return {{"vars", vars_json(SphereS3Ring::kNames)}, {"components", comps}};
}

XForm xform_from_json(const Json& j) {
  return form_from_json<XForm>(j, SphereS2Ring::kNames, kXGens, &xpoly_from_json);
}

ZForm zform_from_json(const Json& j) {
  return form_from_json<ZForm>(j, SphereS3Ring::kNames, kZGens, &zpoly_from_json);
}

Json to_json(const SphereTwoForm& w) { return {{"basis", "dvol"}, {"coeff", to_json(w.coeff)}}; }

SphereTwoForm sphere_form_from_json(const Json& j) {
  if (field(j, "basis") != "dvol") throw InvalidInput("sphere 2-form basis must be \"dvol\"");
  return {xpoly_from_json(field(j, "coeff"))};
}

Json to_json(const EquivariantKet& k) {
  Json w = Json::array(), c = Json::array();
  for (const auto& comp : k.components()) {
    w.push_back(to_string(comp.weight));
    c.push_back(to_json(comp.poly));
  }
  return {{"weights", w}, {"components", c}};
}

EquivariantKet ket_from_json(const Json& j) {
  auto w = weights_from_json(field(j, "weights"));
  const Json& c = field(j, "components");
  if (!c.is_array() || c.size() != w.size()) throw InvalidInput("ket needs one component per weight");
  std::vector<KetComponent> comps;
  for (std::size_t k = 0; k < w.size(); ++k) comps.push_back({w[k], zpoly_from_json(c[k])});
  return EquivariantKet(std::move(comps));
}

Json to_json(const WeightedProjector& p) {
  return {{"weights", weights_to_json(p.weights)}, {"core", matrix_json(p.core)}};
}

WeightedProjector projector_from_json(const Json& j) {
  WeightedProjector p{weights_from_json(field(j, "weights")), to_matrix(matrix_rows(field(j, "core"), &xpoly_from_json))};
  if (p.core.rows() != p.size() || p.core.cols() != p.size())
    throw InvalidInput("projector core must be " + std::to_string(p.size()) + "x" + std::to_string(p.size()));
  for (const auto& w : p.weights)
    if (sgn(w) <= 0) throw InvalidInput("projector weights must be positive");
  return p;
}

Json to_json(const WeightedMatrix& m) {
  return {{"row_weights", weights_to_json(m.row_weights)},
          {"col_weights", weights_to_json(m.col_weights)},
          {"core", matrix_json(m.core)}};
}

WeightedMatrix weighted_matrix_from_json(const Json& j) {
  WeightedMatrix m{weights_from_json(field(j, "row_weights")), weights_from_json(field(j, "col_weights")),
                   to_matrix(matrix_rows(field(j, "core"), &xpoly_from_json))};
  if (m.core.rows() != m.row_weights.size() || (m.core.rows() && m.core.cols() != m.col_weights.size()))
    throw InvalidInput("weighted matrix core does not match its weights");
  return m;
}

Json to_json(const AxiomReport& a) {
  Json out{{"idempotent", a.idempotent}, {"hermitian", a.hermitian}};
  out["trace"] = a.trace ? Json(to_string(*a.trace)) : Json(nullptr);
  return out;
}

Json to_json(const ChernReport& r) {
  Json out{{"object", r.object}, {"backend", r.backend}};
  if (const auto* q = std::get_if<Rational>(&r.c1))
    out["c1"] = to_string(*q);
  else if (const auto* d = std::get_if<double>(&r.c1))
    out["c1"] = *d;
  else
    out["c1"] = nullptr;
  out["axioms"] = to_json(r.axioms);
  if (r.ms) out["ms"] = *r.ms;
  return out;
}

Eigen::MatrixXcd gauge_matrix_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() <= 0) throw InvalidInput("\"n\" must be a positive integer");
  const auto n = nj.get<Eigen::Index>();
  const Json& rows = field(j, "entries");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) throw InvalidInput("gauge matrix needs n rows");
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw InvalidInput("gauge matrix row " + std::to_string(r) + " needs n entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      auto num = [&](const char* key) {
        if (!e.is_object() || !e.contains(key)) return 0.0;
        if (!e.at(key).is_number()) throw InvalidInput("gauge entries must be decimal numbers");
        return e.at(key).get<double>();
      };
      if (!e.is_object()) throw InvalidInput("gauge entries must be {\"re\":..,\"im\":..} objects");
      g(r, c) = {num("re"), num("im")};
    }
  }
  return g;
}

Json gauge_matrix_to_json(const Eigen::MatrixXcd& g) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back({{"re", g(r, c).real()}, {"im", g(r, c).imag()}});
    rows.push_back(row);
  }
  return {{"n", g.rows()}, {"entries", rows}};
}

}  // namespace bundle_forge::io
