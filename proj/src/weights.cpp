#include "kstar/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "parallel.hpp"

namespace kstar {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Determinant by Gaussian elimination with partial pivoting; destroys a.
double determinant(std::vector<double>& a, int n) {
  double det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    if (a[piv * n + c] == 0) return 0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    const double d = a[c * n + c];
    det *= d;
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / d;
      if (f == 0) continue;
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

Complex vertex_position(Vertex v, const std::vector<Complex>& points) {
  if (v == kLeft) return {0, 0};
  if (v == kRight) return {1, 0};
  return points[v - 1];
}

bool too_close(const std::vector<Complex>& pts, double eps) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i]) < eps || std::abs(pts[i] - 1.0) < eps) return true;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) < eps) return true;
    }
  }
  return false;
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(double r, double i) : re(r), im(i) {
  if (!(i > 0)) throw std::invalid_argument("UpperHalfPoint: imaginary part must be positive");
}

double angle_phi(const UpperHalfPoint& p, Complex q) {
  if (q.imag() < 0) throw std::invalid_argument("angle_phi: second point below the real line");
  const Complex pz = p.z();
  if (q == pz) throw std::invalid_argument("angle_phi: coincident points");
  return std::arg((q - pz) / (q - std::conj(pz))) / kTwoPi;
}

std::array<double, 4> angle_phi_gradient(Complex p, Complex q) {
  const Complex i(0, 1);
  const Complex a = 1.0 / (q - p);
  const Complex b = 1.0 / (q - std::conj(p));
  return {(-a + b).imag() / kTwoPi, (-i * a - i * b).imag() / kTwoPi, (a - b).imag() / kTwoPi,
          (i * a - i * b).imag() / kTwoPi};
}

double weight_integrand(const AdmissibleGraph& g, const std::vector<Complex>& points) {
  const int n = g.order;
  if (static_cast<int>(points.size()) != n) throw std::invalid_argument("weight_integrand: wrong number of points");
  if (n == 0) return 1;
  const int m = 2 * n;
  std::vector<double> jac(m * m, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int e = 0; e < 2; ++e) {
      const int row = 2 * k + e;
      const Vertex t = g.targets[k][e];
      const auto grad = angle_phi_gradient(points[k], vertex_position(t, points));
      jac[row * m + 2 * k] += grad[0];
      jac[row * m + 2 * k + 1] += grad[1];
      if (t > 0) {
        jac[row * m + 2 * (t - 1)] += grad[2];
        jac[row * m + 2 * (t - 1) + 1] += grad[3];
      }
    }
  }
  return determinant(jac, m);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("KSTAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

// Density of the Cayley-uniform sampler at z.
double cayley_density(Complex z) {
  const double a = std::abs(z + Complex(0, 1));
  return 4.0 / (std::numbers::pi * a * a * a * a);
}

// Density at z of the 1/r kernel of radius rho centred at c: a half disk for
// real c, a full disk folded into H otherwise.
double kernel_density(Complex z, Complex c, double rho) {
  if (c.imag() == 0) {
    const double r = std::abs(z - c);
    return r < rho ? 1.0 / (std::numbers::pi * rho * r) : 0.0;
  }
  double q = 0;
  const double r1 = std::abs(z - c), r2 = std::abs(std::conj(z) - c);
  if (r1 < rho) q += 1.0 / r1;
  if (r2 < rho) q += 1.0 / r2;
  return q / (2 * std::numbers::pi * rho);
}

}  // namespace

WeightEstimate integrate_upper_half(int n_points, const std::vector<Complex>& centers,
                                    const std::function<std::optional<double>(const std::vector<Complex>&)>& f,
                                    std::uint64_t samples, std::uint64_t seed, const MonteCarloOptions& opts) {
  if (opts.batches < kMinBatches) {
    throw std::invalid_argument("Monte-Carlo: at least " + std::to_string(kMinBatches) + " batches required");
  }
  if (samples < opts.batches) throw std::invalid_argument("Monte-Carlo: fewer samples than batches");
  const std::size_t nb = opts.batches;
  std::vector<double> batch_sum(nb, 0.0);
  std::vector<std::uint64_t> batch_n(nb, 0), batch_rej(nb, 0);

  auto run_batch = [&](std::size_t b) {
    const std::uint64_t count = samples / nb + (b < samples % nb ? 1 : 0);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b + 1)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Complex> pts(n_points);
    // Kahan summation keeps long batches accurate.
    double sum = 0, comp = 0;
    std::uint64_t rej = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      double jacobian = 1;
      for (int k = 0; k < n_points; ++k) {
        if (opts.sampler == Sampler::cayley) {
          const double r = std::sqrt(unif(rng));
          const double th = kTwoPi * unif(rng);
          const Complex w = std::polar(r, th);
          const Complex d = 1.0 - w;
          pts[k] = Complex(0, 1) * (1.0 + w) / d;
          const double ad = std::abs(d);
          jacobian *= std::numbers::pi * 4.0 / (ad * ad * ad * ad);
          continue;
        }
        // Mixture: centres are the fixed points plus the points drawn so far.
        const std::size_t n_centers = centers.size() + static_cast<std::size_t>(k);
        auto center = [&](std::size_t c) { return c < centers.size() ? centers[c] : pts[c - centers.size()]; };
        const double pick = unif(rng);
        const double u1 = unif(rng), u2 = unif(rng);
        if (n_centers == 0 || pick < 0.5) {
          const Complex w = std::polar(std::sqrt(u1), kTwoPi * u2);
          pts[k] = Complex(0, 1) * (1.0 + w) / (1.0 - w);
        } else {
          const std::size_t c = std::min(n_centers - 1, static_cast<std::size_t>((pick - 0.5) * 2 * n_centers));
          const Complex cc = center(c);
          const double r = opts.kernel_radius * u1;
          Complex z = cc.imag() == 0 ? cc + std::polar(r, std::numbers::pi * u2) : cc + std::polar(r, kTwoPi * u2);
          if (z.imag() < 0) z = std::conj(z);
          pts[k] = z;
        }
        double q = 0;
        for (std::size_t c = 0; c < n_centers; ++c) q += kernel_density(pts[k], center(c), opts.kernel_radius);
        q = n_centers == 0 ? cayley_density(pts[k]) : 0.5 * cayley_density(pts[k]) + 0.5 * q / n_centers;
        jacobian /= q;
      }
      std::optional<double> v;
      if (!too_close(pts, opts.epsilon) && std::all_of(pts.begin(), pts.end(), [](Complex z) { return z.imag() > 0; })) {
        v = f(pts);
      }
      double term = 0;
      if (v && std::isfinite(*v * jacobian)) {
        term = *v * jacobian;
      } else {
        ++rej;
      }
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    batch_sum[b] = sum;
    batch_n[b] = count;
    batch_rej[b] = rej;
  };

  const unsigned threads = opts.threads == 0 ? default_thread_count() : opts.threads;
  detail::parallel_for(nb, threads, run_batch);

  WeightEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.batches = nb;
  double total = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    total += batch_sum[b];
    est.rejected += batch_rej[b];
  }
  est.mean = total / static_cast<double>(samples);
  double var = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    const double m = batch_sum[b] / static_cast<double>(batch_n[b]);
    var += (m - est.mean) * (m - est.mean);
  }
  var /= static_cast<double>(nb - 1);
  est.standard_error = std::sqrt(var / static_cast<double>(nb));
  return est;
}

WeightEstimate weight_mc(const AdmissibleGraph& g, std::uint64_t samples, std::uint64_t seed,
                         const MonteCarloOptions& opts) {
  if (!validate(g)) throw std::invalid_argument("weight_mc: graph is not admissible");
  if (samples == 0) throw std::invalid_argument("weight_mc: samples must be positive");
  if (g.order == 0) return {1.0, 0.0, samples, seed, 0, 0};
  return integrate_upper_half(
      g.order, {Complex(0, 0), Complex(1, 0)}, [&](const std::vector<Complex>& pts) -> std::optional<double> { return weight_integrand(g, pts); },
      samples, seed, opts);
}

Complex wedge_integral_closed(Complex y, Complex z) {
  if (y.imag() < 0 || z.imag() < 0) throw std::invalid_argument("wedge_integral_closed: point below the real line");
  if (y == z) {
    if (y.imag() == 0) throw std::invalid_argument("wedge_integral_closed: coincident real endpoints");
    return {0, 0};
  }
  if (y.imag() == 0 && z.imag() == 0) return {y.real() < z.real() ? 0.5 : -0.5, 0};
  const Complex ratio = (y - std::conj(z)) / (z - std::conj(y));
  return std::log(ratio) / Complex(0, kTwoPi);
}

WeightEstimate wedge_integral_mc(Complex y, Complex z, std::uint64_t samples, std::uint64_t seed,
                                 const MonteCarloOptions& opts) {
  if (y.imag() < 0 || z.imag() < 0) throw std::invalid_argument("wedge_integral_mc: point below the real line");
  if (y == z) throw std::invalid_argument("wedge_integral_mc: coincident endpoints");
  return integrate_upper_half(
      1, {y, z},
      [&](const std::vector<Complex>& pts) -> std::optional<double> {
        const Complex x = pts[0];
        if (std::abs(x - y) < opts.epsilon || std::abs(x - z) < opts.epsilon) return std::nullopt;
        const auto gy = angle_phi_gradient(x, y);
        const auto gz = angle_phi_gradient(x, z);
        return gy[0] * gz[1] - gy[1] * gz[0];
      },
      samples, seed, opts);
}

}  // namespace kstar
