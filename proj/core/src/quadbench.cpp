#include "bundle_forge/quadbench.hpp"

#include "bundle_forge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <numbers>
#include <random>
#include <thread>

namespace bundle_forge::quad {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Runs body(i) for i in [0, count) on up to worker_count() threads. Each index
// writes its own slot, so callers reduce in a fixed order afterwards.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct PointResult {
  double integrand = 0.0;
  double idempotency = 0.0;
  double hermiticity = 0.0;
};

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("BUNDLE_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n == 0) throw InvalidInput("Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

SphereGrid SphereGrid::make(std::size_t polar, std::size_t azimuthal) {
  if (polar < 8 || azimuthal < 8) throw InvalidInput("quadrature grid needs at least 8 points per axis");
  SphereGrid g;
  gauss_legendre(polar, g.cos_nodes, g.cos_weights);
  g.azimuthal = azimuthal;
  return g;
}

double SphereGrid::total_weight() const {
  double s = 0.0;
  for (double w : cos_weights) s += w;
  return s * 2.0 * kPi;
}

std::array<double, 3> sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<cd, 2> hopf_lift(double theta, double phi) {
  return {cd(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
}

NumericProjectorField field_from_projector(const WeightedProjector& p) {
  const std::size_t n = p.size();
  struct Entry {
    double scale;
    CompiledPoly<3> value;
    std::array<CompiledPoly<3>, 3> grad;
  };
  auto entries = std::make_shared<std::vector<Entry>>();
  entries->reserve(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const XPoly& m = p.core(j, k);
      entries->push_back({std::sqrt(p.weights[j].get_d() * p.weights[k].get_d()), CompiledPoly<3>(m.raw()),
                          {CompiledPoly<3>(m.partial(0).raw()), CompiledPoly<3>(m.partial(1).raw()),
                           CompiledPoly<3>(m.partial(2).raw())}});
    }

  NumericProjectorField f;
  f.dim = n;
  f.source = "polynomial";
  f.value = [entries, n](double theta, double phi) {
    const auto x = sphere_point(theta, phi);
    Eigen::MatrixXcd out(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Entry& e = (*entries)[j * n + k];
        out(j, k) = e.scale * e.value(x);
      }
    return out;
  };
  f.derivatives = [entries, n](double theta, double phi) {
    const auto x = sphere_point(theta, phi);
    const double st = std::sin(theta), ct = std::cos(theta), sp = std::sin(phi), cp = std::cos(phi);
    const std::array<double, 3> dth{ct * cp, ct * sp, -st};
    const std::array<double, 3> dph{-st * sp, st * cp, 0.0};
    Eigen::MatrixXcd a(n, n), b(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Entry& e = (*entries)[j * n + k];
        cd gt = 0.0, gp = 0.0;
        for (std::size_t mu = 0; mu < 3; ++mu) {
          if (e.grad[mu].is_zero()) continue;
          cd g = e.grad[mu](x);
          gt += g * dth[mu];
          gp += g * dph[mu];
        }
        a(j, k) = e.scale * gt;
        b(j, k) = e.scale * gp;
      }
    return std::make_pair(a, b);
  };
  return f;
}

QuadChern chern_number_quad(const NumericProjectorField& field, const SphereGrid& grid, Derivative mode,
                            double fd_step) {
  if (mode == Derivative::analytic && !field.derivatives)
    throw InvalidInput("analytic derivatives are not available for a " + field.source + " field");
  if (!(fd_step > 0.0)) throw InvalidInput("finite-difference step must be positive");

  const std::size_t P = grid.polar(), A = grid.azimuthal;
  const double dphi = 2.0 * kPi / static_cast<double>(A);
  std::vector<PointResult> results(P * A);

  parallel_for(P * A, [&](std::size_t idx) {
    const std::size_t i = idx / A, j = idx % A;
    const double u = grid.cos_nodes[i];
    const double theta = std::acos(u), phi = dphi * static_cast<double>(j);
    const Eigen::MatrixXcd p = field.value(theta, phi);
    Eigen::MatrixXcd dt, dp;
    if (mode == Derivative::analytic) {
      std::tie(dt, dp) = field.derivatives(theta, phi);
    } else {
      dt = (field.value(theta + fd_step, phi) - field.value(theta - fd_step, phi)) / (2.0 * fd_step);
      dp = (field.value(theta, phi + fd_step) - field.value(theta, phi - fd_step)) / (2.0 * fd_step);
    }
    const cd tr = (p * (dt * dp - dp * dt)).trace();
    PointResult& r = results[idx];
    r.idempotency = max_abs(p * p - p);
    r.hermiticity = max_abs(p - p.adjoint());
    // tr(P[dP_t, dP_p]) is purely imaginary; -(1/2 pi i) of it is real.
    r.integrand = (tr / cd(0.0, -2.0 * kPi)).real() / std::sqrt(1.0 - u * u);
    if (!std::isfinite(r.integrand) || !std::isfinite(r.idempotency) || !std::isfinite(r.hermiticity))
      throw ConsistencyFailure("non-finite projector value at theta=" + std::to_string(theta) +
                               " phi=" + std::to_string(phi));
  });

  QuadChern out;
  std::vector<double> rows(P, 0.0);
  for (std::size_t i = 0; i < P; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < A; ++j) {
      const PointResult& r = results[i * A + j];
      s += r.integrand;
      out.max_idempotency_residual = std::max(out.max_idempotency_residual, r.idempotency);
      out.max_hermiticity_residual = std::max(out.max_hermiticity_residual, r.hermiticity);
    }
    rows[i] = grid.cos_weights[i] * dphi * s;
  }
  for (double r : rows) out.c1 += r;

  if (out.max_idempotency_residual >= kIdempotencyTolerance)
    throw ConsistencyFailure("sampled field is not idempotent: max |P^2 - P| = " +
                             std::to_string(out.max_idempotency_residual));
  if (out.max_hermiticity_residual >= kHermiticityTolerance)
    throw ConsistencyFailure("sampled field is not hermitian: max |P - P^dagger| = " +
                             std::to_string(out.max_hermiticity_residual));
  return out;
}

QuadChern chern_number_quad(const WeightedProjector& p, const SphereGrid& grid, Derivative mode, double fd_step) {
  return chern_number_quad(field_from_projector(p), grid, mode, fd_step);
}

Eigen::MatrixXcd random_gauge(std::size_t n, std::uint64_t seed, double max_singular) {
  if (n == 0 || !(max_singular >= 1.0)) throw InvalidInput("random_gauge needs n > 0 and max_singular >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const auto size = static_cast<Eigen::Index>(n);
  auto haar = [&] {
    Eigen::MatrixXcd a(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
      for (Eigen::Index c = 0; c < size; ++c) a(r, c) = {nd(rng), nd(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (Eigen::Index k = 0; k < size; ++k) {
      const cd d = qr.matrixQR()(k, k);
      if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
    }
    return q;
  };
  std::uniform_real_distribution<double> sv(1.0, max_singular);
  Eigen::VectorXcd s(size);
  for (Eigen::Index k = 0; k < size; ++k) s(k) = sv(rng);
  return haar() * s.asDiagonal() * haar();
}

Eigen::VectorXcd ket_vector(const EquivariantKet& k, cd z0, cd z1) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(k.size()));
  for (std::size_t j = 0; j < k.size(); ++j)
    v(static_cast<Eigen::Index>(j)) = std::sqrt(k[j].weight.get_d()) * std::conj(evaluate(k[j].poly, z0, z1));
  return v;
}

GaugeField gauge_field(const EquivariantKet& k, const Eigen::MatrixXcd& g) {
  const auto n = static_cast<Eigen::Index>(k.size());
  if (g.rows() != n || g.cols() != n)
    throw InvalidInput("gauge matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
  const auto& s = svd.singularValues();
  const double smax = s(0), smin = s(s.size() - 1);
  if (!(smin > 0.0) || smin / smax < 1e-14) throw InvalidInput("gauge matrix is singular");

  GaugeField out;
  out.condition_number = smax / smin;
  out.field.dim = k.size();
  out.field.source = "gauge-transformed";
  struct Component {
    double scale;
    CompiledPoly<4> conj_poly;
  };
  std::vector<Component> comps;
  for (const auto& c : k.components()) comps.push_back({std::sqrt(c.weight.get_d()), CompiledPoly<4>(conj(c.poly).raw())});
  out.field.value = [comps, g](double theta, double phi) {
    const auto z = hopf_lift(theta, phi);
    const std::array<cd, 4> vars{z[0], z[1], std::conj(z[0]), std::conj(z[1])};
    Eigen::VectorXcd kv(static_cast<Eigen::Index>(comps.size()));
    for (std::size_t j = 0; j < comps.size(); ++j) kv(static_cast<Eigen::Index>(j)) = comps[j].scale * comps[j].conj_poly(vars);
    const Eigen::VectorXcd gv = g * kv;
    return Eigen::MatrixXcd(gv * gv.adjoint() / gv.squaredNorm());
  };
  return out;
}

std::complex<double> evaluate_on_s3(const ZForm& w, const std::array<cd, 2>& z,
                                    std::span<const std::array<cd, 2>> vectors) {
  const std::array<cd, 4> vars{z[0], z[1], std::conj(z[0]), std::conj(z[1])};
  std::vector<std::array<cd, 4>> gens;
  gens.reserve(vectors.size());
  for (const auto& v : vectors) gens.push_back({v[0], v[1], std::conj(v[0]), std::conj(v[1])});
  return w.evaluate(std::span<const cd, 4>(vars), std::span<const std::array<cd, 4>>(gens));
}

std::complex<double> evaluate_on_s2(const XForm& w, const std::array<double, 3>& x,
                                    std::span<const std::array<double, 3>> vectors) {
  const std::array<cd, 3> vars{x[0], x[1], x[2]};
  std::vector<std::array<cd, 3>> gens;
  gens.reserve(vectors.size());
  for (const auto& v : vectors) gens.push_back({v[0], v[1], v[2]});
  return w.evaluate(std::span<const cd, 3>(vars), std::span<const std::array<cd, 3>>(gens));
}

std::complex<double> gauged_connection(const EquivariantKet& k, const Eigen::MatrixXcd& g,
                                       const std::array<cd, 2>& z, const std::array<cd, 2>& v) {
  const auto n = static_cast<Eigen::Index>(k.size());
  if (g.rows() != n || g.cols() != n) throw InvalidInput("gauge matrix has the wrong size");
  const Eigen::VectorXcd kv = ket_vector(k, z[0], z[1]);
  Eigen::VectorXcd dk(n);
  const std::array<std::array<cd, 2>, 1> vs{v};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& c = k[static_cast<std::size_t>(j)];
    const ZForm d = exterior_derivative(ZForm(conj(c.poly)));
    dk(j) = std::sqrt(c.weight.get_d()) * evaluate_on_s3(d, z, vs);
  }
  const Eigen::MatrixXcd h = g.adjoint() * g;
  const cd norm = kv.dot(h * kv);
  const cd a = kv.dot(h * dk);
  const cd b = dk.dot(h * kv);
  return 0.5 * (a - b) / norm;
}

namespace {

constexpr std::uint64_t kChunk = 8192;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

MonteCarloEstimate monte_carlo_integral(const std::function<double(const std::array<double, 3>&)>& f,
                                        std::uint64_t samples, std::uint64_t seed) {
  if (samples < 10000) throw InvalidInput("Monte-Carlo integration needs at least 10^4 samples");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> sums(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> cos_dist(-1.0, 1.0), phi_dist(0.0, 2.0 * kPi);
    const std::uint64_t begin = c * kChunk, end = std::min(samples, begin + kChunk);
    ChunkSums s;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = cos_dist(rng), phi = phi_dist(rng);
      const double r = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double v = f({r * std::cos(phi), r * std::sin(phi), u});
      s.sum += v;
      s.sum_sq += v * v;
    }
    sums[c] = s;
  });
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {4.0 * kPi * mean, 4.0 * kPi * std::sqrt(var / (n - 1.0))};
}

MonteCarloEstimate monte_carlo_integral(const XPoly& f, std::uint64_t samples, std::uint64_t seed) {
  const CompiledPoly<3> c(f.raw());
  return monte_carlo_integral([&c](const std::array<double, 3>& x) { return c(x).real(); }, samples, seed);
}

namespace {

using Vec4 = std::array<double, 4>;

std::array<cd, 2> to_complex(const Vec4& r) { return {cd(r[0], r[1]), cd(r[2], r[3])}; }
double dot(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

Vec4 normalized(Vec4 v) {
  const double n = std::sqrt(dot(v, v));
  for (double& c : v) c /= n;
  return v;
}

}  // namespace

TangentFrameReport tangent_frame_check(const ZForm& omega, const ZForm& expected, std::size_t points,
                                       std::uint64_t seed, double tolerance) {
  const ZForm diff = omega - expected;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto gaussian = [&] { return Vec4{normal(rng), normal(rng), normal(rng), normal(rng)}; };

  TangentFrameReport rep;
  rep.points = points;
  for (std::size_t p = 0; p < points; ++p) {
    const Vec4 x = normalized(gaussian());
    // Gram-Schmidt against x and each other; resample near-degenerate draws.
    std::array<Vec4, 2> frame;
    for (std::size_t i = 0; i < 2; ++i) {
      for (;;) {
        Vec4 v = gaussian();
        const double before = std::sqrt(dot(v, v));
        auto remove = [&](const Vec4& e) {
          const double c = dot(v, e);
          for (std::size_t k = 0; k < 4; ++k) v[k] -= c * e[k];
        };
        remove(x);
        for (std::size_t j = 0; j < i; ++j) remove(frame[j]);
        if (std::sqrt(dot(v, v)) > 1e-3 * before) {
          frame[i] = normalized(v);
          break;
        }
        ++rep.resampled;
      }
    }
    const auto z = to_complex(x);
    const std::array<std::array<cd, 2>, 2> vs{to_complex(frame[0]), to_complex(frame[1])};
    for (std::size_t deg = 0; deg <= 2; ++deg) {
      const cd value = evaluate_on_s3(diff, z, std::span<const std::array<cd, 2>>(vs.data(), deg));
      rep.max_abs_difference = std::max(rep.max_abs_difference, std::abs(value));
    }
  }
  rep.pass = rep.max_abs_difference < tolerance;
  return rep;
}

}  // namespace bundle_forge::quad
