// Numerical weights of admissible graphs: the normalized hyperbolic angle,
// the 2n-form integrand, Monte-Carlo integration over configurations of n
// points in the upper half plane, and the closed-form wedge integral.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kstar/graphs.hpp"

namespace kstar {

using Complex = std::complex<double>;

struct UpperHalfPoint {
  double re = 0;
  double im = 1;

  UpperHalfPoint() = default;
  /// Throws std::invalid_argument unless im > 0.
  UpperHalfPoint(double re, double im);
  Complex z() const { return {re, im}; }
};

/// phi(p, q) = (1/2pi) arg((q - p)/(q - conj p)), principal branch, in (-1/2, 1/2].
/// q may lie on the real line. Throws on p == q.
double angle_phi(const UpperHalfPoint& p, Complex q);

/// Gradient of phi(p, q) with respect to (Re p, Im p, Re q, Im q).
std::array<double, 4> angle_phi_gradient(Complex p, Complex q);

/// The density of d phi_{e_1^1} ^ d phi_{e_1^2} ^ ... ^ d phi_{e_n^2} at a
/// configuration: the 2n x 2n Jacobian determinant with rows in edge order and
/// columns (Re p_1, Im p_1, Re p_2, ...). L sits at 0 and R at 1.
double weight_integrand(const AdmissibleGraph& g, const std::vector<Complex>& points);

struct WeightEstimate {
  double mean = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Samples with two points (or a point and 0 or 1) closer than epsilon;
  /// they contribute zero.
  std::uint64_t rejected = 0;
  std::size_t batches = 0;
};

enum class Sampler {
  /// Uniform on the unit disk, mapped to H by z = i(1 + w)/(1 - w).
  cayley,
  /// Half the mass as above; the other half in 1/r kernels centred at the
  /// fixed points (0 and 1 for weights) and at previously drawn points,
  /// which cancels the 1/r growth of the integrand at collisions.
  mixture,
};

struct MonteCarloOptions {
  Sampler sampler = Sampler::cayley;
  /// Kernel radius of the mixture sampler.
  double kernel_radius = 0.5;
  /// Samples are split into this many batches, each with its own seed
  /// derived from (seed, batch index). The result depends only on
  /// (samples, seed, batches), never on the thread count.
  std::size_t batches = 64;
  /// 0 means KSTAR_THREADS if set, else the hardware concurrency.
  unsigned threads = 0;
  double epsilon = 1e-8;
};

inline constexpr std::size_t kMinBatches = 30;

/// Thread count used when MonteCarloOptions::threads == 0.
unsigned default_thread_count();

/// Monte-Carlo estimate of the weight integral of g. Points are drawn
/// uniformly from the unit disk and mapped to the upper half plane by
/// z = i(1 + w)/(1 - w).
WeightEstimate weight_mc(const AdmissibleGraph& g, std::uint64_t samples, std::uint64_t seed,
                         const MonteCarloOptions& opts = {});

/// (1/2 pi i) log((y - conj z)/(z - conj y)), principal branch. Endpoints may
/// lie on the real line; for real y != z the value is 1/2 when Re y < Re z and
/// -1/2 otherwise. y == z gives 0 in the upper half plane and throws on the
/// real line.
Complex wedge_integral_closed(Complex y, Complex z);

/// Monte-Carlo value of the integral over x in H of d phi(x, y) ^ d phi(x, z).
WeightEstimate wedge_integral_mc(Complex y, Complex z, std::uint64_t samples, std::uint64_t seed,
                                 const MonteCarloOptions& opts = {});

/// Generic driver: integrates f over H^n against Lebesgue measure. f returns
/// nullopt for a rejected sample. `centers` are the fixed singular points
/// used by the mixture sampler.
WeightEstimate integrate_upper_half(int n_points, const std::vector<Complex>& centers,
                                    const std::function<std::optional<double>(const std::vector<Complex>&)>& f,
                                    std::uint64_t samples, std::uint64_t seed, const MonteCarloOptions& opts);

}  // namespace kstar
