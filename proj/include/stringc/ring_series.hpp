#pragma once

#include <map>
#include <optional>

#include "json.hpp"
#include "stringc/cohring.hpp"
#include "stringc/qseries.hpp"

namespace stringc {

/// Truncated Laurent series in q^{1/den} whose coefficients live in a
/// CohomologyModel. Same precision bookkeeping as QSeries; zero ring
/// coefficients are dropped.
class RingQSeries {
 public:
  using Terms = std::map<Exponent, RingElement>;

  RingQSeries(RingPtr ring, int den, Exponent trunc);
  RingQSeries(RingPtr ring, int den, Exponent trunc, Terms terms);

  static RingQSeries constant(const RingElement& c, int den, Exponent trunc);
  // Scalar series times the ring unit.
  static RingQSeries from_scalar(RingPtr ring, const QSeries& s);

  const RingPtr& ring() const { return ring_; }
  int den() const { return den_; }
  Exponent trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Exponent effective_low() const;

  RingElement coeff(Exponent e) const;

  RingQSeries lifted(int new_den) const;
  RingQSeries truncated(Exponent t) const;

  RingQSeries operator-() const;
  RingQSeries& operator+=(const RingQSeries& o);
  RingQSeries& operator-=(const RingQSeries& o);
  RingQSeries& operator*=(const RingQSeries& o) { return *this = *this * o; }
  friend RingQSeries operator+(RingQSeries a, const RingQSeries& b) { return a += b; }
  friend RingQSeries operator-(RingQSeries a, const RingQSeries& b) { return a -= b; }
  friend RingQSeries operator*(const RingQSeries& a, const RingQSeries& b);
  friend RingQSeries operator*(const RingQSeries& a, const RingElement& c);
  friend RingQSeries operator*(const RingQSeries& a, const QSeries& s);

  // Structural equality (grid, precision, coefficients).
  friend bool operator==(const RingQSeries& a, const RingQSeries& b);

  /// q-coefficientwise integration against the model's fundamental class.
  QSeries integrate() const;

  /// Numeric value at real generator values and real 0 < q < 1.
  double evaluate(std::span<const double> generator_values, double q) const;

 private:
  void canonicalize();

  RingPtr ring_;
  int den_;
  Exponent trunc_;
  Terms terms_;
};

/// Inverse; the lowest coefficient must be a unit (nonzero constant term).
RingQSeries invert(const RingQSeries& a);

/// Substitutes q -> q^{num/den} (see the QSeries overload).
RingQSeries rescale(const RingQSeries& a, int num, int den);

/// First (q-exponent on the lcm grid, cohomological degree) where a and b
/// differ within their common precision, if any.
struct FormDifference {
  int den;
  Exponent exp;
  int degree;
};
std::optional<FormDifference> first_difference(const RingQSeries& a, const RingQSeries& b);

nlohmann::ordered_json to_json(const RingQSeries& s);

}  // namespace stringc
