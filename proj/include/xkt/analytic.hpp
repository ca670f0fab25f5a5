#pragma once

// Analytic Schwartz test forms: finite sums of polynomial-times-Gaussian
// terms p(x) exp(-a pi |x|^2) dx_I, evaluated exactly.

#include "xkt/exterior.hpp"
#include "xkt/rng.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace xkt {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;  // one per variable
};

struct AnalyticTerm {
  MultiIndex index;             // wedge component dx_I
  std::vector<Monomial> poly;   // polynomial prefactor
  double gaussian_width = 1.0;  // a in exp(-a pi |x|^2), a > 0
};

struct AnalyticForm {
  int dim = 0;
  int degree = 0;
  std::vector<AnalyticTerm> terms;

  int ncoeff() const { return static_cast<int>(binomial(dim, degree)); }

  void validate() const {
    for (const auto& t : terms) {
      if (t.index.degree() != degree || !t.index.valid(dim))
        throw std::domain_error("AnalyticForm: bad term index");
      if (t.gaussian_width <= 0.0) throw std::domain_error("AnalyticForm: width must be > 0");
      for (const auto& mono : t.poly)
        if (static_cast<int>(mono.exponents.size()) != dim)
          throw std::domain_error("AnalyticForm: bad monomial arity");
    }
  }

  void eval_into(std::span<const double> x, std::span<double> out) const {
    for (double& v : out) v = 0.0;
    for (const auto& term : terms) {
      double r2 = 0.0;
      for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
      double p = 0.0;
      for (const auto& mono : term.poly) {
        double m = mono.coeff;
        for (int d = 0; d < dim; ++d)
          for (int e = 0; e < mono.exponents[d]; ++e) m *= x[d];
        p += m;
      }
      out[lex_rank(term.index.entries, dim)] +=
          p * std::exp(-term.gaussian_width * std::numbers::pi * r2);
    }
  }

  MVector eval(std::span<const double> x) const {
    MVector v(dim, degree);
    eval_into(x, {v.coeffs.data(), static_cast<size_t>(v.coeffs.size())});
    return v;
  }

  // p(x) e^{-a pi |x|^2} dx_I with constant polynomial c.
  static AnalyticForm gaussian(int dim, std::span<const int> index, double width = 1.0,
                               double scale = 1.0) {
    AnalyticForm f;
    f.dim = dim;
    f.degree = static_cast<int>(index.size());
    AnalyticTerm t;
    t.index.entries.assign(index.begin(), index.end());
    t.poly.push_back({scale, std::vector<int>(dim, 0)});
    t.gaussian_width = width;
    f.terms.push_back(std::move(t));
    f.validate();
    return f;
  }

  // x^e_var p(x)-style single-monomial term.
  static AnalyticForm monomial_gaussian(int dim, std::span<const int> index, int var, int power,
                                        double width = 1.0, double scale = 1.0) {
    AnalyticForm f = gaussian(dim, index, width, scale);
    f.terms[0].poly[0].exponents[var] = power;
    return f;
  }
};

inline AnalyticForm operator+(const AnalyticForm& a, const AnalyticForm& b) {
  if (a.dim != b.dim || a.degree != b.degree) throw std::domain_error("AnalyticForm: mismatched sum");
  AnalyticForm out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

inline AnalyticForm operator*(double s, const AnalyticForm& a) {
  AnalyticForm out = a;
  for (auto& t : out.terms)
    for (auto& mono : t.poly) mono.coeff *= s;
  return out;
}

// Random member of the test family: a few monomial-Gaussian terms with
// widths in [0.7, 1.5], degrees <= 2, random components.
inline AnalyticForm random_schwartz_form(int dim, int degree, Rng& rng) {
  const auto basis = basis_indices(dim, degree);
  AnalyticForm f;
  f.dim = dim;
  f.degree = degree;
  const int nterms = 1 + static_cast<int>(rng.uniform() * 2.999);
  for (int t = 0; t < nterms; ++t) {
    AnalyticTerm term;
    term.index = basis[static_cast<size_t>(rng.uniform() * basis.size())];
    term.gaussian_width = rng.uniform(0.7, 1.5);
    Monomial mono;
    mono.coeff = rng.uniform(-1.0, 1.0);
    if (std::abs(mono.coeff) < 0.1) mono.coeff = 0.5;
    mono.exponents.assign(dim, 0);
    const int total_power = static_cast<int>(rng.uniform() * 2.999);
    for (int p = 0; p < total_power; ++p)
      mono.exponents[static_cast<size_t>(rng.uniform() * dim)] += 1;
    term.poly.push_back(std::move(mono));
    f.terms.push_back(std::move(term));
  }
  f.validate();
  return f;
}

}  // namespace xkt
