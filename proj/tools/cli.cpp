#include "cli.hpp"

#include "bundle_forge/bundles.hpp"
#include "bundle_forge/errors.hpp"
#include "bundle_forge/quadbench.hpp"
#include "bundle_forge/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace bundle_forge::cli {

namespace {

using Json = io::Json;

std::string fixed(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------- objects

struct Object {
  std::string name;
  std::string mapping;
  WeightedProjector projector;
  std::optional<EquivariantKet> ket;  // set for rank-one ket projectors
};

void check_charge(int c) {
  if (c < -kMaxCharge || c > kMaxCharge) throw InvalidInput("charge out of range");
}

// A negative label selects the holomorphic family (c1 = |label|), a positive
// one its conjugate (c1 = -label).
EquivariantKet ket_for_label(int label) {
  check_charge(label);
  const unsigned n = static_cast<unsigned>(label < 0 ? -label : label);
  return monopole_ket(label <= 0 ? MonopoleFamily::minus : MonopoleFamily::plus, n);
}

std::string label_name(int label) { return "p[" + std::to_string(label) + "]"; }

std::string mapping_for_label(int label) {
  const int n = label < 0 ? -label : label;
  const char* family = label <= 0 ? "minus" : "plus";
  return "charge label " + std::to_string(label) + " -> " + family + " family, n = " + std::to_string(n) +
         ", equivariance type " + std::to_string(-label) + ", c1 = " + std::to_string(-label);
}

Object make_object(const std::string& family, std::optional<int> charge) {
  if (family == "monopole") {
    if (!charge) throw InvalidInput("family monopole needs --charge");
    auto k = ket_for_label(*charge);
    return {label_name(*charge), mapping_for_label(*charge), projector_from_ket(k), k};
  }
  if (family == "realform") {
    if (charge) {
      auto k = ket_for_label(*charge);
      return {label_name(*charge) + "^R", "real form; " + mapping_for_label(*charge) + " before doubling",
              real_form(projector_from_ket(k)), std::nullopt};
    }
    return {"p~[-2]^R", "real form of the tilde projector (label -2, c1 = 2 before doubling)",
            real_form(projector_from_ket(tilde_ket2())), std::nullopt};
  }
  if (charge) throw InvalidInput("--charge applies only to families monopole and realform");
  if (family == "tilde")
    return {"p~[-2]", "tilde projector, label -2, equivariance type 2, c1 = 2", projector_from_ket(tilde_ket2()),
            tilde_ket2()};
  if (family == "normal") return {"p_nor", "normal projector (no charge label)", normal_projector(), std::nullopt};
  if (family == "tangent") return {"p_tan", "tangent projector (no charge label)", tangent_projector(), std::nullopt};
  throw InvalidInput("unknown family '" + family + "'");
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  auto x = text.find('x');
  std::size_t p = 0, a = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument("no x");
    std::size_t used = 0;
    p = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("trailing");
    a = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidInput("grid must look like PxA, got '" + text + "'");
  }
  return {p, a};
}

std::string axioms_text(const AxiomReport& a) {
  return std::string("axioms: idempotent ") + pass_fail(a.idempotent) + ", hermitian " + pass_fail(a.hermitian) +
         ", trace " + (a.trace ? to_string(*a.trace) : std::string("non-constant")) +
         (a.trace_integer ? "" : " (not an integer)");
}

// ---------------------------------------------------------------- verify

class Recorder {
 public:
  explicit Recorder(std::ostream& out) : out_(out) {}
  bool check(const std::string& name, bool ok, const std::string& detail = "") {
    out_ << name << ": " << pass_fail(ok);
    if (!detail.empty()) out_ << " (" << detail << ")";
    out_ << '\n';
    ++total_;
    if (!ok) ++failed_;
    return ok;
  }
  void raw(const std::string& line, bool ok) {
    out_ << line << '\n';
    ++total_;
    if (!ok) ++failed_;
  }
  // Runs fn, recording an exception as a failure of `name`.
  void guarded(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  }
  int total() const { return total_; }
  int failed() const { return failed_; }

 private:
  std::ostream& out_;
  int total_ = 0;
  int failed_ = 0;
};

std::vector<std::pair<std::string, WeightedProjector>> builtin_projectors(int max_charge) {
  std::vector<std::pair<std::string, WeightedProjector>> out;
  for (int n = 0; n <= max_charge; ++n) {
    out.emplace_back(label_name(-n), projector_from_ket(ket_for_label(-n)));
    if (n > 0) out.emplace_back(label_name(n), projector_from_ket(ket_for_label(n)));
  }
  out.emplace_back("p~[-2]", projector_from_ket(tilde_ket2()));
  out.emplace_back("p_nor", normal_projector());
  out.emplace_back("p_tan", tangent_projector());
  out.emplace_back("p~[-2]^R", real_form(projector_from_ket(tilde_ket2())));
  return out;
}

void suite_axioms(Recorder& r, int max_charge) {
  for (const auto& [name, p] : builtin_projectors(max_charge)) {
    r.guarded("axioms " + name, [&] {
      r.check("axioms " + name, verify_axioms(p).all_pass());
      r.check("axioms transpose(" + name + ")", verify_axioms(transpose(p)).all_pass());
      auto a = verify_axioms(p), ar = verify_axioms(real_form(p));
      r.check("axioms real_form(" + name + ")",
              ar.all_pass() && ar.trace && a.trace && *ar.trace == GaussianRational(2) * *a.trace);
    });
  }
}

void suite_curvature(Recorder& r, int max_charge) {
  for (int n = 1; n <= max_charge; ++n)
    for (int label : {-n, n}) {
      r.guarded("c1 " + label_name(label), [&] {
        auto c = chern_number_exact(projector_from_ket(ket_for_label(label)));
        r.check("c1 " + label_name(label) + " = " + std::to_string(-label), c == -label, "got " + to_string(c));
      });
    }
  r.guarded("c1 p[0]", [&] { r.check("c1 p[0] = 0", chern_number_exact(projector_from_ket(ket_for_label(0))) == 0); });
  r.guarded("c1 p~[-2]", [&] { r.check("c1 p~[-2] = 2", chern_number_exact(projector_from_ket(tilde_ket2())) == 2); });
  r.guarded("chern forms", [&] {
    r.check("chern form p_nor = 0", chern_form_exact(normal_projector()).coeff.is_zero());
    r.check("chern form p_tan = 0", chern_form_exact(tangent_projector()).coeff.is_zero());
    r.check("c1 p~[-2]^R = 0", chern_number_exact(real_form(projector_from_ket(tilde_ket2()))) == 0);
  });
  for (const auto& [name, p] : builtin_projectors(max_charge))
    r.guarded("transposition " + name, [&] {
      r.check("c1 transpose(" + name + ") = -c1", chern_number_exact(transpose(p)) == -chern_number_exact(p));
    });
  const auto grid = quad::SphereGrid::make(64, 128);
  for (int n = 1; n <= std::min(max_charge, 4); ++n)
    for (int label : {-n, n}) {
      r.guarded("quadrature " + label_name(label), [&] {
        auto p = projector_from_ket(ket_for_label(label));
        const double an = quad::chern_number_quad(p, grid, quad::Derivative::analytic).c1;
        const double fd = quad::chern_number_quad(p, grid, quad::Derivative::finite_difference).c1;
        r.check("quadrature " + label_name(label) + " analytic", std::abs(an + label) < 1e-6, sci(std::abs(an + label)));
        r.check("quadrature " + label_name(label) + " finite-difference", std::abs(fd + label) < 1e-4,
                sci(std::abs(fd + label)));
      });
    }
}

void suite_isometry(Recorder& r) {
  r.guarded("isometry", [&] {
    auto o = named_real_objects();
    auto rep = isometry_verify(o.u, tangent_projector(), real_form(projector_from_ket(tilde_ket2())));
    r.raw(std::string("u†u = p_tan: ") + pass_fail(rep.source_ok) + "; uu† = (p~_{-2})^R: " +
              pass_fail(rep.target_ok),
          rep.pass());
    bool all = true;
    for (int l = 0; l < 3; ++l) all = all && (o.u * o.V[l] == o.W[l]);
    r.check("u V_l = W_l (l = 1,2,3)", all);
    r.check("p_tan = sum_l |V_l><V_l|", sum_of_dyads(o.V).as_matrix() == tangent_projector().as_matrix());
    r.check("p~[-2]^R = sum_l |W_l><W_l|",
            sum_of_dyads(o.W).as_matrix() == real_form(projector_from_ket(tilde_ket2())).as_matrix());
  });
}

void suite_tangent(Recorder& r, int max_charge, std::uint64_t seed) {
  const ZForm kahler = wedge(dz(ZVar::z0), dz(ZVar::z0bar)) + wedge(dz(ZVar::z1), dz(ZVar::z1bar));
  std::uint64_t s = seed;
  for (int n = 1; n <= std::max(max_charge, 6); ++n)
    for (int label : {-n, n}) {
      r.guarded("curvature " + label_name(label), [&] {
        auto rep = quad::tangent_frame_check(curvature_scalar(ket_for_label(label)),
                                             GaussianRational(-label) * kahler, 200, s++);
        r.check("<dpsi|dpsi> " + label_name(label) + " = " + std::to_string(-label) + " (dz0^dz0bar + dz1^dz1bar)",
                rep.pass, "max |diff| " + sci(rep.max_abs_difference));
      });
    }
  r.guarded("curvature p~[-2]", [&] {
    auto rep = quad::tangent_frame_check(curvature_scalar(tilde_ket2()), GaussianRational(2) * kahler, 200, s++);
    r.check("<dpsi|dpsi> p~[-2] = 2 (dz0^dz0bar + dz1^dz1bar)", rep.pass, "max |diff| " + sci(rep.max_abs_difference));
  });
  r.guarded("connection", [&] {
    bool all = true;
    for (int label = -max_charge; label <= max_charge; ++label) {
      const ZForm a = connection_form(ket_for_label(label));
      all = all && quad::tangent_frame_check(a + conj(a), ZForm(), 200, s++).pass;
    }
    const ZForm a = connection_form(tilde_ket2());
    all = all && quad::tangent_frame_check(a + conj(a), ZForm(), 200, s++).pass;
    r.check("connection forms anti-hermitian on tangents", all);
    auto neg = quad::tangent_frame_check(wedge(dz(ZVar::z0), dz(ZVar::z0bar)), ZForm(), 200, s++);
    r.check("negative control dz0^dz0bar != 0 detected", !neg.pass);
  });
}

void suite_gauge(Recorder& r, std::uint64_t seed) {
  // Exact signed permutations with phases on p[-2].
  r.guarded("exact gauge", [&] {
    std::mt19937_64 rng(seed);
    const auto p = projector_from_ket(ket_for_label(-2));
    const std::array<GaussianRational, 4> phases{GaussianRational(1), GaussianRational(-1), GaussianRational::i(),
                                                 -GaussianRational::i()};
    bool iso = true, charge = true;
    for (int t = 0; t < 10; ++t) {
      std::vector<std::size_t> perm{0, 1, 2};
      std::shuffle(perm.begin(), perm.end(), rng);
      ScalarMatrix s(3, 3);
      for (std::size_t j = 0; j < 3; ++j) s(j, perm[j]) = phases[rng() % 4];
      auto g = exact_gauge(p, s);
      iso = iso && isometry_verify(g.isometry, p, g.projector).pass();
      charge = charge && chern_number_exact(g.projector) == 2;
    }
    r.check("exact gauge: v v† = p^s and v† v = p (10 signed permutations)", iso);
    r.check("exact gauge: c1 invariant", charge);
  });
  r.guarded("numeric gauge", [&] {
    const auto grid = quad::SphereGrid::make(64, 128);
    double worst = 0, worst_cond = 0;
    for (int t = 0; t < 20; ++t) {
      const int label = (t % 2 ? 1 : -1) * (1 + t % 3);
      auto k = ket_for_label(label);
      auto gf = quad::gauge_field(k, quad::random_gauge(k.size(), seed + 1000 + static_cast<std::uint64_t>(t)));
      worst_cond = std::max(worst_cond, gf.condition_number);
      const double c = quad::chern_number_quad(gf.field, grid, quad::Derivative::finite_difference).c1;
      worst = std::max(worst, std::abs(c + label));
    }
    r.check("gauged quadrature within 1e-4 of c1 (20 random g, condition < 10)", worst < 1e-4 && worst_cond < 10,
            "max |diff| " + sci(worst) + ", max condition " + fixed(worst_cond, 3));
  });
}

// ---------------------------------------------------------------- commands

struct Options {
  std::string family;
  std::optional<int> charge;
  bool json = false;
  std::string backend;
  std::string grid = "64x128";
  bool fd = false;
  bool timing = false;
  std::string suite;
  int max_charge = 5;
  std::uint64_t seed = 1;
  std::string g_file;
  std::string monomial;
  std::uint64_t mc_samples = 1000000;
};

int cmd_build(const Options& o, std::ostream& out) {
  auto obj = make_object(o.family, o.charge);
  if (o.json) {
    out << io::to_json(obj.projector).dump(2) << '\n';
    return kSuccess;
  }
  out << "object: " << obj.name << '\n' << "mapping: " << obj.mapping << '\n' << "weights:";
  for (const auto& w : obj.projector.weights) out << ' ' << to_string(w);
  out << '\n';
  for (std::size_t j = 0; j < obj.projector.size(); ++j)
    for (std::size_t k = 0; k < obj.projector.size(); ++k)
      out << "M[" << j + 1 << "][" << k + 1 << "] = " << to_string(obj.projector.core(j, k)) << '\n';
  out << axioms_text(verify_axioms(obj.projector)) << '\n';
  return kSuccess;
}

int cmd_chern(const Options& o, std::ostream& out) {
  auto obj = make_object(o.family, o.charge);
  ChernReport rep;
  const auto start = std::chrono::steady_clock::now();
  if (o.backend == "exact") {
    if (o.fd) throw InvalidInput("--fd applies only to --backend quad");
    rep = chern_report_exact(obj.name, obj.projector);
  } else {
    auto [pa, aa] = parse_grid(o.grid);
    auto grid = quad::SphereGrid::make(pa, aa);
    rep.object = obj.name;
    rep.backend = "quad";
    rep.axioms = verify_axioms(obj.projector);
    rep.c1 = quad::chern_number_quad(obj.projector, grid,
                                     o.fd ? quad::Derivative::finite_difference : quad::Derivative::analytic)
                 .c1;
  }
  if (o.timing)
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (o.json) {
    Json j = io::to_json(rep);
    j["mapping"] = obj.mapping;
    out << j.dump(2) << '\n';
  } else {
    out << "object: " << rep.object << '\n' << "mapping: " << obj.mapping << '\n' << "backend: " << rep.backend;
    if (rep.backend == "quad") out << " (grid " << o.grid << (o.fd ? ", finite differences" : ", analytic") << ")";
    out << '\n';
    if (const auto* q = std::get_if<Rational>(&rep.c1))
      out << "c1 = " << to_string(*q) << '\n';
    else if (const auto* d = std::get_if<double>(&rep.c1))
      out << "c1 = " << fixed(*d) << '\n';
    else
      out << "c1 = n/a\n";
    out << axioms_text(rep.axioms) << '\n';
    if (rep.ms) out << "ms: " << fixed(*rep.ms, 3) << '\n';
  }
  return rep.axioms.all_pass() ? kSuccess : kVerificationFailure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.max_charge < 0 || o.max_charge > kMaxCharge) throw InvalidInput("charge out of range");
  Recorder r(out);
  const std::string& s = o.suite;
  if (s == "axioms" || s == "all") suite_axioms(r, o.max_charge);
  if (s == "curvature" || s == "all") suite_curvature(r, o.max_charge);
  if (s == "isometry" || s == "all") suite_isometry(r);
  if (s == "tangent" || s == "all") suite_tangent(r, o.max_charge, o.seed);
  if (s == "gauge" || s == "all") suite_gauge(r, o.seed);
  if (s != "isometry")
    out << "verify " << s << ": " << r.total() - r.failed() << "/" << r.total() << " checks passed\n";
  return r.failed() == 0 ? kSuccess : kVerificationFailure;
}

int cmd_connection(const Options& o, std::ostream& out) {
  if (!o.charge) throw InvalidInput("connection needs --charge");
  auto k = ket_for_label(*o.charge);
  const ZForm a = connection_form(k);
  if (o.json) {
    Json j{{"object", label_name(*o.charge)}, {"mapping", mapping_for_label(*o.charge)}, {"connection", io::to_json(a)}};
    out << j.dump(2) << '\n';
  } else {
    out << "object: " << label_name(*o.charge) << '\n'
        << "mapping: " << mapping_for_label(*o.charge) << '\n'
        << "A = " << to_string(a) << '\n';
  }
  return kSuccess;
}

int cmd_gauge(const Options& o, std::ostream& out) {
  if (!o.charge) throw InvalidInput("gauge needs --charge");
  auto k = ket_for_label(*o.charge);
  std::ifstream in(o.g_file);
  if (!in) throw InvalidInput("cannot open g-file '" + o.g_file + "'");
  Json gj;
  try {
    gj = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("malformed g-file: " + std::string(e.what()));
  }
  auto g = io::gauge_matrix_from_json(gj);
  auto gf = quad::gauge_field(k, g);
  auto [pa, aa] = parse_grid(o.grid);
  auto grid = quad::SphereGrid::make(pa, aa);
  const auto start = std::chrono::steady_clock::now();
  auto q = quad::chern_number_quad(gf.field, grid, quad::Derivative::finite_difference);
  ChernReport rep;
  rep.object = label_name(*o.charge) + "^g";
  rep.backend = "quad";
  rep.c1 = q.c1;
  rep.axioms.idempotent = q.max_idempotency_residual < quad::kIdempotencyTolerance;
  rep.axioms.hermitian = q.max_hermiticity_residual < quad::kHermiticityTolerance;
  rep.axioms.trace = GaussianRational(1);
  rep.axioms.trace_integer = true;
  if (o.timing)
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.json) {
    Json j = io::to_json(rep);
    j["mapping"] = mapping_for_label(*o.charge);
    j["condition_number"] = gf.condition_number;
    out << j.dump(2) << '\n';
  } else {
    out << "object: " << rep.object << '\n'
        << "mapping: " << mapping_for_label(*o.charge) << '\n'
        << "backend: quad (grid " << o.grid << ", finite differences)\n"
        << "condition number: " << fixed(gf.condition_number, 6) << '\n'
        << "c1 = " << fixed(q.c1) << '\n'
        << "pointwise residuals: idempotency " << sci(q.max_idempotency_residual) << ", hermiticity "
        << sci(q.max_hermiticity_residual) << '\n';
    if (rep.ms) out << "ms: " << fixed(*rep.ms, 3) << '\n';
  }
  return kSuccess;
}

int cmd_integrate(const Options& o, std::ostream& out) {
  std::array<unsigned, 3> e{};
  {
    std::stringstream ss(o.monomial);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
      if (i >= 3) throw InvalidInput("--monomial takes exactly three exponents a,b,c");
      std::size_t used = 0;
      long v = -1;
      try {
        v = std::stol(part, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != part.size() || part.empty() || v < 0 || v > 64)
        throw InvalidInput("exponents must be integers in [0, 64], got '" + part + "'");
      e[i++] = static_cast<unsigned>(v);
    }
    if (i != 3) throw InvalidInput("--monomial takes exactly three exponents a,b,c");
  }
  const auto exact = monomial_integral(e[0], e[1], e[2]);
  const XPoly f = reduce_x(RawXPoly::monomial({e[0], e[1], e[2]}));
  const auto mc = quad::monte_carlo_integral(f, o.mc_samples, o.seed);
  const double diff = std::abs(mc.value - exact.to_double());
  const bool within = diff <= 3 * mc.std_error;
  if (o.json) {
    Json j{{"monomial", {e[0], e[1], e[2]}},
           {"exact", {{"units", "4pi"}, {"value", to_string(exact.value)}, {"float", exact.to_double()}}},
           {"monte_carlo", {{"value", mc.value}, {"std_error", mc.std_error}, {"samples", o.mc_samples}, {"seed", o.seed}}},
           {"within_3_sigma", within}};
    out << j.dump(2) << '\n';
  } else {
    out << "monomial: x1^" << e[0] << " x2^" << e[1] << " x3^" << e[2] << '\n'
        << "exact = " << to_string(exact.value) << " * 4pi = " << fixed(exact.to_double()) << '\n'
        << "monte-carlo = " << fixed(mc.value) << " +- " << fixed(mc.std_error) << " (" << o.mc_samples
        << " samples, seed " << o.seed << ")\n"
        << "within 3 standard errors: " << (within ? "yes" : "no") << '\n';
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical verification of monopole-bundle projectors over S^2", "bundle_forge"};
  app.require_subcommand(1, 1);
  Options o;
  int charge_value = 0;

  auto add_charge = [&](CLI::App* sub) { return sub->add_option("--charge", charge_value, "charge label n (|n| <= 16)"); };
  auto add_grid = [&](CLI::App* sub) { sub->add_option("--grid", o.grid, "quadrature grid PxA")->capture_default_str(); };
  const std::vector<std::string> families{"monopole", "tilde", "normal", "tangent", "realform"};

  auto* build = app.add_subcommand("build", "print a projector");
  build->add_option("--family", o.family)->required()->check(CLI::IsMember(families));
  auto* build_charge = add_charge(build);
  build->add_flag("--json", o.json);

  auto* chern = app.add_subcommand("chern", "compute a Chern number");
  chern->add_option("--family", o.family)->required()->check(CLI::IsMember(families));
  auto* chern_charge = add_charge(chern);
  chern->add_option("--backend", o.backend)->required()->check(CLI::IsMember({"exact", "quad"}));
  add_grid(chern);
  chern->add_flag("--fd", o.fd, "finite-difference derivatives (quad backend)");
  chern->add_flag("--json", o.json);
  chern->add_flag("--timing", o.timing, "include wall-clock milliseconds");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"axioms", "curvature", "isometry", "tangent", "gauge", "all"}));
  verify->add_option("--max-charge", o.max_charge)->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();

  auto* connection = app.add_subcommand("connection", "print the connection form in z-coordinates");
  auto* conn_charge = add_charge(connection)->required();
  connection->add_flag("--json", o.json);

  auto* gauge = app.add_subcommand("gauge", "gauged quadrature Chern number");
  auto* gauge_charge = add_charge(gauge)->required();
  gauge->add_option("--g-file", o.g_file)->required();
  add_grid(gauge);
  gauge->add_flag("--json", o.json);
  gauge->add_flag("--timing", o.timing, "include wall-clock milliseconds");

  auto* integrate = app.add_subcommand("integrate", "exact and Monte-Carlo monomial integrals");
  integrate->add_option("--monomial", o.monomial, "exponents a,b,c")->required();
  integrate->add_option("--mc-samples", o.mc_samples)->capture_default_str();
  integrate->add_option("--seed", o.seed)->capture_default_str();
  integrate->add_flag("--json", o.json);

  std::vector<const char*> argv{"bundle_forge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream buffer;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    for (auto* opt : {build_charge, chern_charge, conn_charge, gauge_charge})
      if (opt->count()) o.charge = charge_value;
    if (o.charge) check_charge(*o.charge);

    int code = kSuccess;
    if (build->parsed()) code = cmd_build(o, buffer);
    if (chern->parsed()) code = cmd_chern(o, buffer);
    if (verify->parsed()) code = cmd_verify(o, buffer);
    if (connection->parsed()) code = cmd_connection(o, buffer);
    if (gauge->parsed()) code = cmd_gauge(o, buffer);
    if (integrate->parsed()) code = cmd_integrate(o, buffer);
    out << buffer.str();
    out.flush();
    return code;
  } catch (const CLI::Success&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return kInvalidInput;
  } catch (const ConsistencyFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bundle_forge::cli
