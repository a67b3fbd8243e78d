#include "stringc/qseries.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "stringc/errors.hpp"

namespace stringc {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw SchemaError("malformed rational: '" + std::string(text) + "'");
    for (std::size_t k = i; k < part.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(part[k])))
        throw SchemaError("malformed rational: '" + std::string(text) + "'");
    std::string digits(part[0] == '+' ? part.substr(1) : part);
    return Integer(digits, 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw SchemaError("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool has_dyadic_denominator(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  return mpz_popcount(r.get_den_mpz_t()) == 1;
}

namespace {

Exponent sat_add(Exponent a, Exponent b) {
  if (a >= kExact || b >= kExact) return kExact;
  return std::min(a + b, kExact);
}

int lcm_checked(int a, int b) {
  const long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > std::numeric_limits<int>::max()) throw GridOverflow("grid denominator overflow");
  return static_cast<int>(l);
}

// Precision bound on a grid refined by factor f: the series is supported on
// the coarse grid, so every fine slot strictly below (trunc+1)*f is known.
Exponent refine_trunc(Exponent trunc, Exponent f) {
  if (trunc >= kExact) return kExact;
  return (trunc + 1) * f - 1;
}

}  // namespace

QSeries::QSeries(int den, Exponent trunc) : den_(den), trunc_(std::min(trunc, kExact)) {
  if (den <= 0) throw std::invalid_argument("QSeries grid denominator must be positive");
}

QSeries::QSeries(int den, Exponent trunc, Terms terms) : QSeries(den, trunc) {
  terms_ = std::move(terms);
  canonicalize();
}

QSeries QSeries::constant(const Rational& c, int den, Exponent trunc) {
  return monomial(c, 0, den, trunc);
}

QSeries QSeries::monomial(const Rational& c, Exponent e, int den, Exponent trunc) {
  QSeries s(den, trunc);
  if (e <= s.trunc_ && c != 0) s.terms_.emplace(e, c);
  return s;
}

void QSeries::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || it->first > trunc_) {
      it = terms_.erase(it);
    } else {
      it->second.canonicalize();
      ++it;
    }
  }
}

std::optional<Exponent> QSeries::low() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Exponent QSeries::effective_low() const {
  if (terms_.empty()) return sat_add(trunc_, 1);
  return terms_.begin()->first;
}

Rational QSeries::coeff(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

QSeries QSeries::lifted(int new_den) const {
  if (new_den == den_) return *this;
  if (new_den % den_ != 0) throw std::invalid_argument("lifted: grid must be a multiple");
  const Exponent f = new_den / den_;
  QSeries out(new_den, refine_trunc(trunc_, f));
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * f, c);
  return out;
}

QSeries QSeries::truncated(Exponent t) const {
  QSeries out = *this;
  out.trunc_ = std::min(trunc_, t);
  out.canonicalize();
  return out;
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  const int l = lcm_checked(den_, o.den_);
  if (l != den_) *this = lifted(l);
  const QSeries& rhs = o.den_ == l ? o : o.lifted(l);
  trunc_ = std::min(trunc_, rhs.trunc_);
  for (const auto& [e, c] : rhs.terms_) {
    if (e > trunc_) break;
    terms_[e] += c;
  }
  canonicalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) { return *this = *this * o; }

QSeries operator*(const QSeries& a_in, const QSeries& b_in) {
  const int l = lcm_checked(a_in.den_, b_in.den_);
  const QSeries a = a_in.lifted(l);
  const QSeries b = b_in.lifted(l);
  const Exponent trunc =
      std::min(sat_add(a.trunc_, b.effective_low()), sat_add(b.trunc_, a.effective_low()));
  QSeries out(l, trunc);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea + eb > out.trunc_) break;
      out.terms_[ea + eb] += ca * cb;
    }
  }
  out.canonicalize();
  return out;
}

QSeries invert(const QSeries& a) {
  if (a.is_zero()) throw ZeroLeadingCoefficient("cannot invert the zero series");
  if (a.exact()) throw GridOverflow("inverse of an exact series needs a finite precision bound");
  const Exponent low = *a.low();
  const Exponent rel = a.trunc() - low;  // relative precision of the unit part
  const Rational lead_inv = 1 / a.terms().begin()->second;

  std::vector<std::pair<Exponent, Rational>> tail;  // (offset, coeff) of a/q^low beyond lead
  for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it)
    tail.emplace_back(it->first - low, it->second);

  std::vector<Rational> b(static_cast<std::size_t>(rel + 1));
  b[0] = lead_inv;
  for (Exponent n = 1; n <= rel; ++n) {
    Rational acc = 0;
    for (const auto& [off, c] : tail) {
      if (off > n) break;
      acc += c * b[static_cast<std::size_t>(n - off)];
    }
    b[static_cast<std::size_t>(n)] = -lead_inv * acc;
  }
  QSeries::Terms terms;
  for (Exponent n = 0; n <= rel; ++n)
    if (b[static_cast<std::size_t>(n)] != 0) terms.emplace(n - low, b[static_cast<std::size_t>(n)]);
  return QSeries(a.den(), rel - low, std::move(terms));
}

QSeries rescale(const QSeries& a, int num, int den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("rescale factors must be positive");
  const long long grid = static_cast<long long>(a.den()) * den;
  const long long g = std::gcd(static_cast<long long>(num), grid);
  const long long new_den = grid / g;
  const Exponent f = num / g;
  if (new_den > std::numeric_limits<int>::max()) throw GridOverflow("rescaled grid too fine");
  auto scale = [&](Exponent e) {
    Exponent out = 0;
    if (__builtin_mul_overflow(e, f, &out) || out >= kExact || out <= -kExact)
      throw GridOverflow("rescaled exponent out of range");
    return out;
  };
  QSeries::Terms terms;
  for (const auto& [e, c] : a.terms()) terms.emplace(scale(e), c);
  const Exponent trunc = a.exact() ? kExact : scale(a.trunc() + 1) - 1;
  return QSeries(static_cast<int>(new_den), trunc, std::move(terms));
}

bool on_grid(const QSeries& a, int grid_den) {
  // e/den in (1/g)Z  <=>  e*g divisible by den
  for (const auto& [e, c] : a.terms())
    if ((e * grid_den) % a.den() != 0) return false;
  return true;
}

bool same_value(const QSeries& a, const QSeries& b) {
  const int l = lcm_checked(a.den(), b.den());
  const QSeries la = a.lifted(l);
  const QSeries lb = b.lifted(l);
  return la.trunc() == lb.trunc() && la.terms() == lb.terms();
}

bool agree_up_to_trunc(const QSeries& a, const QSeries& b) { return (a - b).is_zero(); }

QSeries pochhammer_power(int den, Exponent step, Exponent offset, int sign, int power,
                         Exponent trunc) {
  if (step <= 0 || offset <= 0) throw std::invalid_argument("pochhammer_power: positive exponents only");
  QSeries out = QSeries::constant(1, den, trunc);
  if (power == 0) return out;
  for (Exponent e = offset; e <= trunc; e += step) {
    QSeries::Terms factor;
    if (power > 0) {
      // (1 + sign q^e)^power by the binomial theorem
      Integer binom = 1;
      for (int i = 0; i <= power && static_cast<Exponent>(i) * e <= trunc; ++i) {
        Rational c(binom);
        if (sign < 0 && (i % 2)) c = -c;
        factor.emplace(static_cast<Exponent>(i) * e, c);
        binom = binom * (power - i) / (i + 1);
      }
    } else {
      // (1 + sign q^e)^{-p} = sum_i C(p+i-1, i) (-sign)^i q^{ie}
      const int p = -power;
      Integer binom = 1;
      for (int i = 0; static_cast<Exponent>(i) * e <= trunc; ++i) {
        Rational c(binom);
        if (sign > 0 && (i % 2)) c = -c;
        factor.emplace(static_cast<Exponent>(i) * e, c);
        binom = binom * (p + i) / (i + 1);
      }
    }
    out *= QSeries(den, kExact, std::move(factor));
  }
  return out;
}

nlohmann::ordered_json to_json(const QSeries& s) {
  nlohmann::ordered_json j;
  j["den"] = s.den();
  j["trunc"] = s.trunc();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : s.terms()) {
    nlohmann::ordered_json t;
    t["exp"] = e;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

QSeries qseries_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("den") || !j.contains("trunc") || !j.contains("terms"))
      throw SchemaError("QSeries JSON needs den, trunc and terms");
    const int den = j.at("den").get<int>();
    if (den <= 0) throw SchemaError("QSeries den must be positive");
    const Exponent trunc = j.at("trunc").get<Exponent>();
    QSeries::Terms terms;
    Exponent prev = std::numeric_limits<Exponent>::min();
    bool first = true;
    for (const auto& t : j.at("terms")) {
      const Exponent e = t.at("exp").get<Exponent>();
      if (!first && e <= prev) throw SchemaError("QSeries terms must be strictly ascending");
      if (e > trunc) throw SchemaError("QSeries term above trunc");
      first = false;
      prev = e;
      const Rational c = parse_rational(t.at("num").get<std::string>() + "/" +
                                        t.at("den").get<std::string>());
      terms.emplace(e, c);
    }
    return QSeries(den, trunc, std::move(terms));
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("QSeries JSON: ") + ex.what());
  }
}

}  // namespace stringc
