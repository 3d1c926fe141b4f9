#pragma once

// Floating-point verification backend. Everything here is independent of the
// exact integration path: Chern numbers by quadrature over (theta, phi),
// a Monte-Carlo integration oracle, and pointwise checks of form identities on
// tangent frames of S^3.

#include "bundle_forge/bundles.hpp"
#include "bundle_forge/exact_ring.hpp"
#include "bundle_forge/forms.hpp"
#include "bundle_forge/kets.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bundle_forge::quad {

/// Worker count for parallel maps: BUNDLE_FORGE_THREADS when set, otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Gauss-Legendre in cos(theta) times a uniform trapezoid rule in phi.
struct SphereGrid {
  std::vector<double> cos_nodes;
  std::vector<double> cos_weights;
  std::size_t azimuthal = 0;

  /// Throws InvalidInput unless polar, azimuthal >= 8.
  static SphereGrid make(std::size_t polar, std::size_t azimuthal);
  std::size_t polar() const { return cos_nodes.size(); }
  double total_weight() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// Point of S^2 in the chart (sin t cos f, sin t sin f, cos t).
std::array<double, 3> sphere_point(double theta, double phi);
/// A lift to S^3 under the Hopf map: (cos(t/2), e^{i f} sin(t/2)).
std::array<std::complex<double>, 2> hopf_lift(double theta, double phi);

enum class Derivative { analytic, finite_difference };

/// A projector-valued function of (theta, phi).
struct NumericProjectorField {
  std::size_t dim = 0;
  std::string source;  ///< "polynomial" or "gauge-transformed"
  std::function<Eigen::MatrixXcd(double, double)> value;
  /// Returns (dP/dtheta, dP/dphi); empty when only finite differences are available.
  std::function<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>(double, double)> derivatives;
};

NumericProjectorField field_from_projector(const WeightedProjector& p);

struct QuadChern {
  double c1 = 0.0;
  double max_idempotency_residual = 0.0;
  double max_hermiticity_residual = 0.0;
};

inline constexpr double kIdempotencyTolerance = 1e-10;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kDefaultFdStep = 1e-5;

/// -(1/2 pi i) * sum over the grid of tr(P [dP/dtheta, dP/dphi]) / sin(theta)
/// times the quadrature weights. Throws ConsistencyFailure when a sampled
/// point violates the projector axioms beyond tolerance or produces a
/// non-finite value, and InvalidInput when analytic derivatives are requested
/// for a field that has none.
QuadChern chern_number_quad(const NumericProjectorField& field, const SphereGrid& grid, Derivative mode,
                            double fd_step = kDefaultFdStep);
QuadChern chern_number_quad(const WeightedProjector& p, const SphereGrid& grid, Derivative mode,
                            double fd_step = kDefaultFdStep);

struct GaugeField {
  NumericProjectorField field;
  double condition_number = 0.0;
};

/// Pointwise p^g = g|psi><psi|g^dagger / <psi|g^dagger g|psi>, evaluated from
/// the ket on a Hopf lift. Throws InvalidInput for a wrong-sized or singular g.
GaugeField gauge_field(const EquivariantKet& k, const Eigen::MatrixXcd& g);

/// U diag(s) V with Haar-random unitaries U, V and singular values s drawn
/// uniformly from [1, max_singular]; the condition number is below max_singular.
Eigen::MatrixXcd random_gauge(std::size_t n, std::uint64_t seed, double max_singular = 3.0);

/// Column vector |psi>(z) with entries sqrt(w_k) conj(psi_k(z)).
Eigen::VectorXcd ket_vector(const EquivariantKet& k, std::complex<double> z0, std::complex<double> z1);

/// The gauge-transformed connection form
///   (1/2) N^-1 [<psi|g^dag g|d psi>(v) - <d psi|g^dag g|psi>(v)],  N = <psi|g^dag g|psi>,
/// evaluated at z on the tangent vector v (both in C^2).
std::complex<double> gauged_connection(const EquivariantKet& k, const Eigen::MatrixXcd& g,
                                       const std::array<std::complex<double>, 2>& z,
                                       const std::array<std::complex<double>, 2>& v);

/// A z-form evaluated at z on tangent vectors given in C^2 coordinates.
std::complex<double> evaluate_on_s3(const ZForm& w, const std::array<std::complex<double>, 2>& z,
                                    std::span<const std::array<std::complex<double>, 2>> vectors);
/// An x-form evaluated at x on vectors of R^3.
std::complex<double> evaluate_on_s2(const XForm& w, const std::array<double, 3>& x,
                                    std::span<const std::array<double, 3>> vectors);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// (4 pi / N) sum f(x_i) over uniform samples of S^2 (cos theta uniform in
/// [-1, 1], phi uniform in [0, 2 pi)). Samples are drawn in fixed-size chunks,
/// each with its own generator seeded from (seed, chunk index), so the result
/// does not depend on the worker count. Throws InvalidInput below 10^4 samples.
MonteCarloEstimate monte_carlo_integral(const std::function<double(const std::array<double, 3>&)>& f,
                                        std::uint64_t samples, std::uint64_t seed);
MonteCarloEstimate monte_carlo_integral(const XPoly& f, std::uint64_t samples, std::uint64_t seed);

struct TangentFrameReport {
  bool pass = false;
  double max_abs_difference = 0.0;
  std::size_t points = 0;
  std::size_t resampled = 0;
};

/// Compares two z-forms on random tangent frames of S^3: each homogeneous part
/// of degree d in {0,1,2} is evaluated on d random tangent vectors at every
/// point. Passes iff the largest difference stays below `tolerance`.
TangentFrameReport tangent_frame_check(const ZForm& omega, const ZForm& expected, std::size_t points,
                                       std::uint64_t seed, double tolerance = 1e-10);

}  // namespace bundle_forge::quad
