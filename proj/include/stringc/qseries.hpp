#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "json.hpp"
#include "stringc/rational.hpp"

namespace stringc {

using Exponent = std::int64_t;

// Sentinel precision for series that are exact polynomials. Arithmetic on
// truncation bounds saturates at this value.
inline constexpr Exponent kExact = std::int64_t{1} << 48;

/// Truncated Laurent series in q^{1/den} with rational coefficients.
///
/// Exponents are stored in grid units: key e stands for q^{e/den}. The series
/// is known for every grid exponent e <= trunc; coefficients above trunc are
/// unknown, not zero. Zero coefficients are never stored.
class QSeries {
 public:
  using Terms = std::map<Exponent, Rational>;

  QSeries() = default;
  QSeries(int den, Exponent trunc);
  QSeries(int den, Exponent trunc, Terms terms);

  static QSeries constant(const Rational& c, int den, Exponent trunc);
  static QSeries monomial(const Rational& c, Exponent e, int den, Exponent trunc);

  int den() const { return den_; }
  Exponent trunc() const { return trunc_; }
  bool exact() const { return trunc_ >= kExact; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::optional<Exponent> low() const;
  // Lowest exponent, or trunc+1 for the zero series (the first unknown slot).
  Exponent effective_low() const;

  // Coefficient of q^{e/den}; zero for absent grid points at or below trunc.
  Rational coeff(Exponent e) const;

  // Same series on the finer grid new_den (a multiple of den).
  QSeries lifted(int new_den) const;
  // Lowers the precision bound to min(trunc, t) and drops terms above it.
  QSeries truncated(Exponent t) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }

  // Structural equality: same grid, precision and terms.
  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  void canonicalize();

  int den_ = 1;
  Exponent trunc_ = 0;
  Terms terms_;
};

/// Multiplicative inverse. The result's lowest exponent is the negation of
/// the input's. Throws ZeroLeadingCoefficient for the zero series and
/// GridOverflow for exact input (its inverse has unbounded support).
QSeries invert(const QSeries& a);

/// Substitutes q -> q^{num/den}. Throws GridOverflow when the new grid or
/// exponents leave the representable range.
QSeries rescale(const QSeries& a, int num, int den);

/// True iff every nonzero coefficient sits on an exponent in (1/grid_den)Z.
bool on_grid(const QSeries& a, int grid_den);

/// Value equality: equal terms after lifting to a common grid and the same
/// precision bound (trunc+1)/den.
bool same_value(const QSeries& a, const QSeries& b);

/// True iff a and b agree on every exponent both know.
bool agree_up_to_trunc(const QSeries& a, const QSeries& b);

/// Power product prod_j (1 + sign*q^{j*step})^power for j = 1.. while
/// j*step <= trunc, on grid den. Exact helper for eta-type products.
QSeries pochhammer_power(int den, Exponent step, Exponent offset, int sign, int power,
                         Exponent trunc);

nlohmann::ordered_json to_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& j);

}  // namespace stringc
