#pragma once

// Trapezoidal fuzzy sets, linguistic variables, relative quantifiers and the
// sigma-count truth evaluation for quantified sentences ("Q B's are A").

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lognarrator/errors.hpp"

namespace lognar {

enum class DomainUnits { seconds, ratio, count };

inline std::string to_string(DomainUnits u) {
  switch (u) {
    case DomainUnits::seconds: return "seconds";
    case DomainUnits::ratio: return "ratio";
    case DomainUnits::count: return "count";
  }
  return "?";
}

// Trapezoid (a <= b <= c <= d): linear rise on [a,b], plateau 1 on [b,c],
// linear fall on [c,d], 0 outside [a,d].
struct FuzzySet {
  std::string label;
  double a = 0, b = 0, c = 0, d = 0;
  DomainUnits units = DomainUnits::seconds;

  double membership(double x) const {
    if (!std::isfinite(x)) throw InvalidArgumentError("membership of a non-finite value");
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);  // here a < b, since a <= x < b
    return (d - x) / (d - c);             // here c < d
  }
};

inline double membership(const FuzzySet& s, double x) { return s.membership(x); }

inline FuzzySet make_trapezoid(std::string label, double a, double b, double c, double d,
                               DomainUnits units) {
  if (!(a <= b && b <= c && c <= d))
    throw InvalidArgumentError("trapezoid '" + label + "' needs a <= b <= c <= d");
  return FuzzySet{std::move(label), a, b, c, d, units};
}

// "Around v": a +/-10% band with a +/-3% plateau. Used when no user
// vocabulary is configured for an indicator.
inline FuzzySet around_value(double v, DomainUnits units = DomainUnits::seconds) {
  double lo = std::min(0.9 * v, 1.1 * v);  // handles negative centers
  double hi = std::max(0.9 * v, 1.1 * v);
  double plo = std::min(0.97 * v, 1.03 * v);
  double phi = std::max(0.97 * v, 1.03 * v);
  return make_trapezoid("around", lo, plo, phi, hi, units);
}

struct LinguisticVariable {
  std::string name;
  DomainUnits units = DomainUnits::seconds;
  std::vector<FuzzySet> terms;
};

inline LinguisticVariable make_linguistic_variable(std::string name, DomainUnits units,
                                                   std::vector<FuzzySet> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].label == terms[j].label)
        throw ConfigError("linguistic variable '" + name + "': duplicate term '" +
                          terms[i].label + "'");
    if (units == DomainUnits::ratio && (terms[i].a < 0.0 || terms[i].d > 1.0))
      throw ConfigError("linguistic variable '" + name + "': term '" + terms[i].label +
                        "' leaves the [0,1] ratio domain");
  }
  return LinguisticVariable{std::move(name), units, std::move(terms)};
}

enum class QuantifierMonotonicity { non_decreasing, non_increasing, unimodal };

// Relative quantifier over the proportion domain [0,1].
struct Quantifier {
  std::string label;
  FuzzySet shape;
  QuantifierMonotonicity monotone = QuantifierMonotonicity::unimodal;
};

inline Quantifier make_relative_quantifier(std::string label, double a, double b, double c,
                                           double d) {
  if (a < 0.0 || d > 1.0)
    throw ConfigError("quantifier '" + label + "': support must lie in [0,1]");
  FuzzySet shape = make_trapezoid(label, a, b, c, d, DomainUnits::ratio);
  QuantifierMonotonicity mono = QuantifierMonotonicity::unimodal;
  if (c >= 1.0) mono = QuantifierMonotonicity::non_decreasing;
  else if (b <= 0.0) mono = QuantifierMonotonicity::non_increasing;
  return Quantifier{std::move(label), std::move(shape), mono};
}

inline std::vector<Quantifier> default_quantifiers() {
  return {make_relative_quantifier("most", 0.5, 0.8, 1.0, 1.0),
          make_relative_quantifier("few", 0.0, 0.0, 0.2, 0.5),
          make_relative_quantifier("around half", 0.3, 0.45, 0.55, 0.7)};
}

// Sigma-count truth of "Q B's are A" over a population:
//   r = sum_i min(mu_A(x_i), mu_B(x_i)) / sum_i mu_B(x_i)   (mu_B = 1 if absent)
//   truth = mu_Q(r)
// Throws UndefinedTruthError for an empty population or sum mu_B = 0.
inline double truth_degree(const Quantifier& q, const std::optional<FuzzySet>& qualifier,
                           const FuzzySet& summarizer, std::span<const double> population) {
  if (population.empty())
    throw UndefinedTruthError("quantified sentence over an empty population");
  double num = 0.0, den = 0.0;
  for (double x : population) {
    double mb = qualifier ? qualifier->membership(x) : 1.0;
    num += std::min(summarizer.membership(x), mb);
    den += mb;
  }
  if (den == 0.0)
    throw UndefinedTruthError("qualifier excludes the entire population");
  return q.shape.membership(num / den);
}

}  // namespace lognar
