#include <random>

#include "doctest.h"
#include "stringc/errors.hpp"
#include "stringc/qseries.hpp"

using namespace stringc;

namespace {

QSeries poly(std::initializer_list<std::pair<Exponent, Rational>> terms, int den = 1, Exponent trunc = kExact) {
  QSeries::Terms t;
  for (const auto& [e, c] : terms) t.emplace(e, c);
  return QSeries(den, trunc, std::move(t));
}

QSeries random_series(std::mt19937_64& rng, bool unit_lead) {
  static const int dens[] = {1, 2, 8};
  const int den = dens[rng() % 3];
  const Exponent low = unit_lead ? static_cast<Exponent>(rng() % 5) - 2 : 0;
  const Exponent trunc = low + 6 + static_cast<Exponent>(rng() % 10);
  QSeries::Terms t;
  for (Exponent e = low; e <= trunc; ++e) {
    if (e != low && rng() % 3 == 0) continue;
    const long num = static_cast<long>(rng() % 21) - 10;
    const long dd = static_cast<long>(rng() % 6) + 1;
    Rational c(num, dd);
    c.canonicalize();
    t.emplace(e, c);
  }
  if (unit_lead) t[low] = Rational(static_cast<long>(rng() % 5) + 1, 3);
  return QSeries(den, trunc, std::move(t));
}

}  // namespace

TEST_CASE("addition cancels, merges grids and has the zero identity") {
  const QSeries a = poly({{0, 1}, {1, 1}});
  const QSeries b = poly({{0, 1}, {1, -1}});
  CHECK(a + b == QSeries::constant(2, 1, kExact));

  const QSeries eighth = QSeries::monomial(1, 1, 8, kExact);
  const QSeries half = QSeries::monomial(1, 1, 2, kExact);
  const QSeries sum = eighth + half;
  CHECK(sum.den() == 8);
  CHECK(sum.coeff(1) == 1);
  CHECK(sum.coeff(4) == 1);
  CHECK(sum.terms().size() == 2);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const QSeries s = random_series(rng, false);
    CHECK(same_value(QSeries(s.den(), kExact) + s, s));
  }
}

TEST_CASE("multiplication") {
  CHECK(poly({{0, 1}, {1, 1}}) * poly({{0, 1}, {1, -1}}) == poly({{0, 1}, {2, -1}}));

  const Exponent t = 12;
  QSeries::Terms geo;
  for (Exponent n = 0; n <= t; ++n) geo.emplace(n, 1);
  const QSeries prod = poly({{0, 1}, {1, -1}}) * QSeries(1, t, geo);
  CHECK(prod.trunc() == t);
  CHECK(prod == QSeries::constant(1, 1, t));

  const QSeries e = QSeries::monomial(1, 1, 8, kExact);
  CHECK(e * e == QSeries::monomial(1, 2, 8, kExact));
}

TEST_CASE("product precision follows the lowest exponents") {
  // q^{-2} * (known through q^5) is known through q^3
  const QSeries a = QSeries::monomial(1, -2, 1, kExact);
  const QSeries b = poly({{0, 1}, {3, 2}}, 1, 5);
  CHECK((a * b).trunc() == 3);
  // a truncated series times q^3 gains precision
  CHECK((QSeries::monomial(1, 3, 1, kExact) * b).trunc() == 8);
  // zero series known through q^4 times q + ...: known through q^5
  const QSeries z(1, 4);
  CHECK((z * poly({{1, 1}}, 1, 10)).trunc() == 5);
}

TEST_CASE("invert") {
  const QSeries inv = invert(poly({{0, 1}, {1, -1}}, 1, 10));
  CHECK(inv.trunc() == 10);
  for (Exponent n = 0; n <= 10; ++n) CHECK(inv.coeff(n) == 1);

  CHECK(invert(QSeries::constant(2, 1, 5)) == QSeries::constant(Rational(1, 2), 1, 5));

  const QSeries m = invert(QSeries::monomial(1, 1, 8, 20));
  CHECK(m.low() == -1);
  CHECK(m.coeff(-1) == 1);
  CHECK(m.terms().size() == 1);

  CHECK_THROWS_AS(invert(QSeries(1, 10)), ZeroLeadingCoefficient);
  CHECK_THROWS_AS(invert(poly({{0, 1}, {1, 1}})), GridOverflow);
}

TEST_CASE("rescale") {
  CHECK(same_value(rescale(poly({{0, 1}, {1, 1}}), 2, 1), poly({{0, 1}, {2, 1}})));

  const QSeries half = QSeries::monomial(1, 1, 2, kExact);
  const QSeries r = rescale(half, 2, 1);
  CHECK(r.den() == 1);
  CHECK(r == QSeries::monomial(1, 1, 1, kExact));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const QSeries s = random_series(rng, true);
    CHECK(same_value(rescale(rescale(s, 2, 1), 1, 2), s));
    CHECK(same_value(rescale(rescale(s, 3, 4), 4, 3), s));
  }

  CHECK_THROWS_AS(rescale(QSeries::monomial(1, Exponent{1} << 40, 1, kExact), 1 << 10, 1), GridOverflow);
  CHECK_THROWS_AS(rescale(QSeries::monomial(1, 1, 1 << 20, kExact), 1, 1 << 20), GridOverflow);
}

TEST_CASE("grid support check") {
  CHECK(on_grid(poly({{0, 1}, {4, 1}}, 2), 1));
  CHECK_FALSE(on_grid(poly({{0, 1}, {1, 1}}, 2), 1));
  CHECK(on_grid(QSeries(8, 40), 1));
  CHECK(on_grid(poly({{2, 1}}, 8), 4));
  CHECK_FALSE(on_grid(poly({{2, 1}}, 8), 2));
}

TEST_CASE("ring axioms hold on random series") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const QSeries a = random_series(rng, false);
    const QSeries b = random_series(rng, false);
    const QSeries c = random_series(rng, false);
    CHECK(same_value((a + b) + c, a + (b + c)));
    CHECK(same_value(a * b, b * a));
    CHECK(agree_up_to_trunc(a * (b + c), a * b + a * c));
    CHECK(same_value((a * b) * c, a * (b * c)));
  }
}

TEST_CASE("a times its inverse is one up to precision") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const QSeries a = random_series(rng, true);
    const QSeries one = a * invert(a);
    CHECK(one.trunc() == a.trunc() - *a.low());
    CHECK(agree_up_to_trunc(one, QSeries::constant(1, a.den(), one.trunc())));
    CHECK(*invert(a).low() == -*a.low());
  }
}

TEST_CASE("json serialization is canonical") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const QSeries s = random_series(rng, true);
    const std::string text = to_json(s).dump();
    const QSeries back = qseries_from_json(nlohmann::json::parse(text));
    CHECK(back == s);
    CHECK(to_json(back).dump() == text);
  }
  const auto j = to_json(poly({{-1, Rational(-3, 4)}, {2, 5}}, 2, 6));
  CHECK(j.dump() ==
        R"({"den":2,"trunc":6,"terms":[{"exp":-1,"num":"-3","den":"4"},{"exp":2,"num":"5","den":"1"}]})");
}

TEST_CASE("json schema errors") {
  using nlohmann::json;
  CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"den":1,"terms":[]})")), SchemaError);
  CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"den":0,"trunc":1,"terms":[]})")), SchemaError);
  CHECK_THROWS_AS(
      qseries_from_json(json::parse(
          R"({"den":1,"trunc":5,"terms":[{"exp":2,"num":"1","den":"1"},{"exp":1,"num":"1","den":"1"}]})")),
      SchemaError);
  CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"den":1,"trunc":1,"terms":[{"exp":2,"num":"1","den":"1"}]})")),
                  SchemaError);
  CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"den":1,"trunc":3,"terms":[{"exp":2,"num":"x","den":"1"}]})")),
                  SchemaError);
  CHECK_THROWS_AS(qseries_from_json(json::parse(R"({"den":1,"trunc":3,"terms":[{"exp":2,"num":"1","den":"0"}]})")),
                  SchemaError);
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("+7") == 7);
  CHECK_THROWS_AS(parse_rational("1/"), SchemaError);
  CHECK_THROWS_AS(parse_rational("a"), SchemaError);
  CHECK(format_rational(Rational(6, 3)) == "2");
  CHECK(format_rational(Rational(-1, 8)) == "-1/8");
  CHECK(has_dyadic_denominator(Rational(-1, 8)));
  CHECK(has_dyadic_denominator(Rational(3, 2)));
  CHECK(has_dyadic_denominator(Rational(5)));
  CHECK_FALSE(has_dyadic_denominator(Rational(1, 3)));
}

TEST_CASE("pochhammer products") {
  // (1-q)(1-q^2)(1-q^3)... = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
  const QSeries euler = pochhammer_power(1, 1, 1, -1, 1, 16);
  const std::map<Exponent, int> pentagonal{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}, {12, -1}, {15, -1}};
  for (Exponent n = 0; n <= 16; ++n) {
    auto it = pentagonal.find(n);
    CHECK(euler.coeff(n) == (it == pentagonal.end() ? 0 : it->second));
  }
  // negative power is the inverse
  const QSeries inv = pochhammer_power(1, 1, 1, -1, -1, 16);
  CHECK(agree_up_to_trunc(inv * euler, QSeries::constant(1, 1, 16)));
  // partition numbers
  const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) CHECK(inv.coeff(n) == p[n]);
  CHECK_THROWS(pochhammer_power(1, 0, 1, 1, 1, 4));
}
