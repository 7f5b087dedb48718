#include "properties.hpp"

#include <functional>

#include "generators.hpp"
#include "kstar/star.hpp"
#include "kstar/text_format.hpp"

namespace kstar::testing {

namespace {

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

PropertyResult run_property(const std::string& name, int cases, std::uint64_t seed,
                            const std::function<std::string(Rng&)>& one_case) {
  PropertyResult r;
  r.name = name;
  for (int c = 0; c < cases; ++c) {
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(c));
    std::string failure;
    try {
      failure = one_case(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!failure.empty()) {
      if (r.failures == 0) r.first_failure = "case " + std::to_string(c) + ": " + failure;
      ++r.failures;
    }
  }
  return r;
}

std::string mv(const MultivectorField& m) { return format_multivector(m); }
std::string op(const MultidiffOperator& o) { return format_operator(o); }

std::vector<Polynomial> random_args(Rng& rng, int dim, int count) {
  std::vector<Polynomial> args;
  for (int i = 0; i < count; ++i) args.push_back(random_polynomial(rng, dim, 3, 3));
  return args;
}

// An associative order-2 deformation with a nontrivial symmetric order-1 part:
// the graph star product of a random Poisson structure, conjugated by a random gauge.
FormalBidiffSeries random_deformation(Rng& rng, int dim) {
  const auto pi = random_poisson(rng, dim, 2);
  const auto s = star_product(pi, 2);
  std::vector<MultidiffOperator> t{MultidiffOperator::identity(dim)};
  for (int k = 1; k <= 2; ++k) t.push_back(random_operator(rng, dim, 1, 2, 1));
  return gauge_transform(GaugeSeries(t), s.series);
}

}  // namespace

PropertyResult schouten_graded_skew(int cases, std::uint64_t seed) {
  return run_property("Schouten graded skew-symmetry", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const int ka = uniform_int(rng, 0, d), kb = uniform_int(rng, 0, d);
    const auto a = random_multivector(rng, d, ka, 2), b = random_multivector(rng, d, kb, 2);
    const auto lhs = schouten_bracket(a, b);
    const auto rhs = schouten_bracket(b, a) * Rational(-sign_pow((ka - 1) * (kb - 1)));
    if (lhs == rhs) return {};
    return "a = " + mv(a) + ", b = " + mv(b);
  });
}

PropertyResult schouten_graded_jacobi(int cases, std::uint64_t seed) {
  return run_property("Schouten graded Jacobi", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    int ka = uniform_int(rng, 0, d), kb = uniform_int(rng, 0, d), kc = uniform_int(rng, 0, d);
    // the bracket of two functions has no degree; allow at most one function
    if (ka == 0 && kb == 0) kb = 1;
    if ((ka == 0 || kb == 0) && kc == 0) kc = 1;
    const auto a = random_multivector(rng, d, ka, 2), b = random_multivector(rng, d, kb, 2),
               c = random_multivector(rng, d, kc, 2);
    const int sa = ka - 1, sb = kb - 1, sc = kc - 1;
    auto sum = schouten_bracket(a, schouten_bracket(b, c)) * Rational(sign_pow(sa * sc));
    sum += schouten_bracket(b, schouten_bracket(c, a)) * Rational(sign_pow(sb * sa));
    sum += schouten_bracket(c, schouten_bracket(a, b)) * Rational(sign_pow(sc * sb));
    if (sum.is_zero()) return {};
    return "a = " + mv(a) + ", b = " + mv(b) + ", c = " + mv(c);
  });
}

PropertyResult schouten_poisson_oracle(int cases, std::uint64_t seed) {
  return run_property("Poisson test against the component Jacobiator", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 2, 3);
    MultivectorField pi(d, 2);
    // Mix guaranteed-Poisson and generic bivectors so both answers occur.
    if (uniform_int(rng, 0, 1) == 0) {
      pi = random_poisson(rng, d, 2);
    } else {
      pi = random_multivector(rng, d, 2, 1, 3);
    }
    bool jacobi = true;
    for (int i = 0; i < d && jacobi; ++i) {
      for (int j = 0; j < d && jacobi; ++j) {
        for (int k = 0; k < d && jacobi; ++k) {
          Polynomial s(d);
          const int idx[3] = {i, j, k};
          for (int c = 0; c < 3; ++c) {
            const int p = idx[c], q = idx[(c + 1) % 3], r = idx[(c + 2) % 3];
            for (int l = 0; l < d; ++l) s += pi.bivector_entry(p, l) * pi.bivector_entry(q, r).derivative(l);
          }
          jacobi = s.is_zero();
        }
      }
    }
    if (jacobi == is_poisson(pi)) return {};
    return "pi = " + mv(pi);
  });
}

PropertyResult gerstenhaber_graded_skew(int cases, std::uint64_t seed) {
  return run_property("Gerstenhaber graded skew-symmetry", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const auto p = random_operator(rng, d, uniform_int(rng, 1, 3), 2, 2);
    const auto q = random_operator(rng, d, uniform_int(rng, 1, 3), 2, 2);
    const auto lhs = gerstenhaber_bracket(p, q);
    const auto rhs = gerstenhaber_bracket(q, p) * Rational(-sign_pow(p.degree() * q.degree()));
    if (lhs == rhs) return {};
    return "phi = " + op(p) + ", psi = " + op(q);
  });
}

PropertyResult gerstenhaber_graded_jacobi(int cases, std::uint64_t seed) {
  return run_property("Gerstenhaber graded Jacobi", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const auto a = random_operator(rng, d, uniform_int(rng, 1, 2), 2, 2);
    const auto b = random_operator(rng, d, uniform_int(rng, 1, 2), 2, 2);
    const auto c = random_operator(rng, d, uniform_int(rng, 1, 2), 2, 2);
    const int ma = a.degree(), mb = b.degree(), mc = c.degree();
    auto sum = gerstenhaber_bracket(a, gerstenhaber_bracket(b, c)) * Rational(sign_pow(ma * mc));
    sum += gerstenhaber_bracket(b, gerstenhaber_bracket(c, a)) * Rational(sign_pow(mb * ma));
    sum += gerstenhaber_bracket(c, gerstenhaber_bracket(a, b)) * Rational(sign_pow(mc * mb));
    if (sum.is_zero()) return {};
    return "a = " + op(a) + ", b = " + op(b) + ", c = " + op(c);
  });
}

PropertyResult gerstenhaber_compose_oracle(int cases, std::uint64_t seed) {
  return run_property("Gerstenhaber composition on arguments", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const auto p = random_operator(rng, d, uniform_int(rng, 1, 3), 2, 2);
    const auto q = random_operator(rng, d, uniform_int(rng, 1, 3), 2, 2);
    const int m1 = p.arity(), m2 = q.arity();
    const auto args = random_args(rng, d, m1 + m2 - 1);
    Polynomial expected(d);
    for (int i = 0; i < m1; ++i) {
      std::vector<Polynomial> inner(args.begin() + i, args.begin() + i + m2);
      std::vector<Polynomial> outer(args.begin(), args.begin() + i);
      outer.push_back(q.apply(inner));
      outer.insert(outer.end(), args.begin() + i + m2, args.end());
      Polynomial v = p.apply(outer);
      if (sign_pow((m2 - 1) * i) < 0) v = -v;
      expected += v;
    }
    if (gerstenhaber_compose(p, q).apply(args) == expected) return {};
    return "phi = " + op(p) + ", psi = " + op(q);
  });
}

PropertyResult hochschild_d_squared(int cases, std::uint64_t seed) {
  return run_property("Hochschild d^2 = 0", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const auto p = random_operator(rng, d, uniform_int(rng, 1, 2), 2, 2);
    if (hochschild_d(hochschild_d(p)).is_zero()) return {};
    return "phi = " + op(p);
  });
}

PropertyResult hochschild_d_bracket(int cases, std::uint64_t seed) {
  return run_property("Hochschild d = -[., mu]_G", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const auto p = random_operator(rng, d, uniform_int(rng, 1, 3), 2, 2);
    const auto dp = hochschild_d(p);
    if (dp != gerstenhaber_bracket(p, MultidiffOperator::multiplication(d)) * Rational(-1)) {
      return "bracket form differs for phi = " + op(p);
    }
    // f0 phi(f1..fm) + sum_i (-1)^{i+1} phi(.., f_i f_{i+1}, ..) + (-1)^{m+1} phi(f0..f_{m-1}) f_m
    const int m = p.arity();
    const auto f = random_args(rng, d, m + 1);
    Polynomial expected = f[0] * p.apply({f.begin() + 1, f.end()});
    for (int i = 0; i < m; ++i) {
      std::vector<Polynomial> a(f.begin(), f.begin() + i);
      a.push_back(f[i] * f[i + 1]);
      a.insert(a.end(), f.begin() + i + 2, f.end());
      Polynomial v = p.apply(a);
      expected += sign_pow(i + 1) > 0 ? v : -v;
    }
    Polynomial last = p.apply({f.begin(), f.end() - 1}) * f[m];
    expected += sign_pow(m + 1) > 0 ? last : -last;
    if (dp.apply(f) == expected) return {};
    return "alternating sum differs for phi = " + op(p);
  });
}

PropertyResult hkr_cocycles(int cases, std::uint64_t seed) {
  return run_property("HKR images are Hochschild cocycles", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    const int k = uniform_int(rng, 1, d);
    const auto a = random_multivector(rng, d, k, 2);
    const auto h = hkr(a);
    if (!hochschild_d(h).is_zero()) return "d(hkr(a)) != 0 for a = " + mv(a);
    // Bivectors against the explicit formula.
    if (k == 2) {
      const auto f = random_args(rng, d, 2);
      Polynomial expected(d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          expected += a.bivector_entry(i, j) * f[0].derivative(i) * f[1].derivative(j);
        }
      }
      expected *= Rational(1, 2);
      if (h.apply(f) != expected) return "hkr(a)(f,g) != (1/2) a^{ij} d_i f d_j g for a = " + mv(a);
    }
    return {};
  });
}

PropertyResult gauge_preserves_associativity(int cases, std::uint64_t seed) {
  return run_property("Gauge transforms preserve associativity and B_1^-", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 2, 3);
    const auto pi = random_poisson(rng, d, 2);
    const auto s = star_product(pi, 2);
    std::vector<MultidiffOperator> t{MultidiffOperator::identity(d)};
    for (int k = 1; k <= 2; ++k) t.push_back(random_operator(rng, d, 1, 2, 1));
    const GaugeSeries gauge(t);
    const auto g = gauge_transform(gauge, s.series);
    if (!is_associative_deformation(g)) return "not associative after gauge, pi = " + mv(pi);
    if (skew_part(g[1]) != skew_part(s.series[1])) return "B_1^- changed, pi = " + mv(pi);
    if (gauge_transform(gauge.inverse(), g) != s.series) return "inverse gauge does not undo, pi = " + mv(pi);
    return {};
  });
}

PropertyResult symmetrize_skew_order1(int cases, std::uint64_t seed) {
  return run_property("symmetrize_order1 gives a skew order-one term", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 2, 3);
    const auto b = random_deformation(rng, d);
    const auto sym = symmetrize_order1(b);
    if (!symmetric_part(sym.gauged[1]).is_zero()) return "symmetric part survives: " + op(sym.gauged[1]);
    if (skew_part(sym.gauged[1]) != skew_part(b[1])) return "skew part changed";
    if (!is_associative_deformation(sym.gauged)) return "associativity lost";
    if (sym.gauged != gauge_transform(GaugeSeries({MultidiffOperator::identity(d), sym.t1, MultidiffOperator(d, 1)}), b)) {
      return "gauged series is not the gauge transform by t1";
    }
    return {};
  });
}

PropertyResult symmetrize_closed_form(int cases, std::uint64_t seed) {
  return run_property("symmetrize_order1 on constant d (x) d", cases, seed, [](Rng& rng) -> std::string {
    const int d = uniform_int(rng, 1, 3);
    MultidiffOperator b1(d, 2), expected(d, 1);
    const int terms = uniform_int(rng, 1, 3);
    for (int t = 0; t < terms; ++t) {
      const int i = uniform_int(rng, 0, d - 1), j = uniform_int(rng, 0, d - 1);
      const Rational s = small_rational(rng);
      Exponents ei(d, 0), ej(d, 0), eij(d, 0);
      ++ei[i];
      ++ej[j];
      ++eij[i];
      ++eij[j];
      b1.add_term({ei, ej}, Polynomial::constant(d, s));
      expected.add_term({eij}, Polynomial::constant(d, -s / 2));
    }
    // A skew piece must not change the answer.
    if (d >= 2) {
      const auto pi = random_poisson(rng, d, 1);
      b1 += hkr(pi) * Rational(2);
    }
    const FormalBidiffSeries b({MultidiffOperator::multiplication(d), b1});
    const auto sym = symmetrize_order1(b);
    if (sym.t1 == expected) return {};
    return "B_1 = " + op(b1) + ": got " + op(sym.t1) + ", expected " + op(expected);
  });
}

std::vector<PropertyResult> all_algebra_properties(int cases) {
  return {schouten_graded_skew(cases),       schouten_graded_jacobi(cases),        schouten_poisson_oracle(cases),
          gerstenhaber_graded_skew(cases),   gerstenhaber_graded_jacobi(cases),    gerstenhaber_compose_oracle(cases),
          hochschild_d_squared(cases),       hochschild_d_bracket(cases),          hkr_cocycles(cases),
          gauge_preserves_associativity(cases), symmetrize_skew_order1(cases),     symmetrize_closed_form(cases)};
}

}  // namespace kstar::testing
