#include "stringc/ring_series.hpp"

#include <cmath>
#include <numeric>

#include "stringc/errors.hpp"

namespace stringc {

namespace {

Exponent sat_add(Exponent a, Exponent b) {
  if (a >= kExact || b >= kExact) return kExact;
  return std::min(a + b, kExact);
}

}  // namespace

RingQSeries::RingQSeries(RingPtr ring, int den, Exponent trunc)
    : ring_(std::move(ring)), den_(den), trunc_(std::min(trunc, kExact)) {
  if (den <= 0) throw std::invalid_argument("RingQSeries grid denominator must be positive");
}

RingQSeries::RingQSeries(RingPtr ring, int den, Exponent trunc, Terms terms)
    : RingQSeries(std::move(ring), den, trunc) {
  terms_ = std::move(terms);
  canonicalize();
}

RingQSeries RingQSeries::constant(const RingElement& c, int den, Exponent trunc) {
  RingQSeries s(c.ring(), den, trunc);
  if (!c.is_zero()) s.terms_.emplace(0, c);
  return s;
}

RingQSeries RingQSeries::from_scalar(RingPtr ring, const QSeries& s) {
  RingQSeries out(ring, s.den(), s.trunc());
  for (const auto& [e, c] : s.terms()) out.terms_.emplace(e, RingElement::constant(ring, c));
  return out;
}

void RingQSeries::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first > trunc_ || it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

Exponent RingQSeries::effective_low() const {
  if (terms_.empty()) return sat_add(trunc_, 1);
  return terms_.begin()->first;
}

RingElement RingQSeries::coeff(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RingElement(ring_) : it->second;
}

RingQSeries RingQSeries::lifted(int new_den) const {
  if (new_den == den_) return *this;
  if (new_den % den_ != 0) throw std::invalid_argument("lifted: grid must be a multiple");
  const Exponent f = new_den / den_;
  RingQSeries out(ring_, new_den, trunc_ >= kExact ? kExact : (trunc_ + 1) * f - 1);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * f, c);
  return out;
}

RingQSeries RingQSeries::truncated(Exponent t) const {
  RingQSeries out = *this;
  out.trunc_ = std::min(trunc_, t);
  out.canonicalize();
  return out;
}

RingQSeries RingQSeries::operator-() const {
  RingQSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

RingQSeries& RingQSeries::operator+=(const RingQSeries& o) {
  const int l = std::lcm(den_, o.den_);
  if (l != den_) *this = lifted(l);
  const RingQSeries rhs = o.lifted(l);
  trunc_ = std::min(trunc_, rhs.trunc_);
  for (const auto& [e, c] : rhs.terms_) {
    if (e > trunc_) break;
    auto it = terms_.find(e);
    if (it == terms_.end())
      terms_.emplace(e, c);
    else
      it->second += c;
  }
  canonicalize();
  return *this;
}

RingQSeries& RingQSeries::operator-=(const RingQSeries& o) { return *this += -o; }

RingQSeries operator*(const RingQSeries& a_in, const RingQSeries& b_in) {
  const int l = std::lcm(a_in.den_, b_in.den_);
  const RingQSeries a = a_in.lifted(l);
  const RingQSeries b = b_in.lifted(l);
  const Exponent trunc =
      std::min(sat_add(a.trunc_, b.effective_low()), sat_add(b.trunc_, a.effective_low()));
  RingQSeries out(a.ring_, l, trunc);
  const CohomologyModel& ring = *a.ring_;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea + eb > trunc) break;
      auto it = out.terms_.find(ea + eb);
      if (it == out.terms_.end()) it = out.terms_.emplace(ea + eb, RingElement(a.ring_)).first;
      ring.multiply_accumulate(ca.coeffs(), cb.coeffs(), it->second.mutable_coeffs());
    }
  }
  out.canonicalize();
  return out;
}

RingQSeries operator*(const RingQSeries& a, const RingElement& c) {
  RingQSeries out = a;
  for (auto& [e, v] : out.terms_) v = v * c;
  out.canonicalize();
  return out;
}

RingQSeries operator*(const RingQSeries& a, const QSeries& s) {
  return a * RingQSeries::from_scalar(a.ring_, s);
}

bool operator==(const RingQSeries& a, const RingQSeries& b) {
  if (a.den_ != b.den_ || a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

QSeries RingQSeries::integrate() const {
  QSeries::Terms out;
  const CohomologyModel& ring = *ring_;
  for (const auto& [e, c] : terms_) {
    Rational total = 0;
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (sgn(c.coeffs()[i]) != 0 && sgn(ring.integral(i)) != 0)
        total += c.coeffs()[i] * ring.integral(i);
    if (sgn(total) != 0) out.emplace(e, total);
  }
  return QSeries(den_, trunc_, std::move(out));
}

double RingQSeries::evaluate(std::span<const double> generator_values, double q) const {
  double total = 0.0;
  for (const auto& [e, c] : terms_)
    total += c.evaluate(generator_values) * std::pow(q, static_cast<double>(e) / den_);
  return total;
}

RingQSeries invert(const RingQSeries& a) {
  if (a.is_zero()) throw ZeroLeadingCoefficient("cannot invert the zero series");
  if (a.trunc() >= kExact) throw GridOverflow("inverse of an exact series needs a finite precision bound");
  const Exponent low = a.terms().begin()->first;
  const Exponent rel = a.trunc() - low;
  const RingElement lead_inv = a.terms().begin()->second.inverse();
  const CohomologyModel& ring = *a.ring();

  std::vector<std::pair<Exponent, const RingElement*>> tail;
  for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it)
    tail.emplace_back(it->first - low, &it->second);

  std::vector<RingElement> b(static_cast<std::size_t>(rel + 1), RingElement(a.ring()));
  b[0] = lead_inv;
  for (Exponent n = 1; n <= rel; ++n) {
    RingElement acc(a.ring());
    for (const auto& [off, c] : tail) {
      if (off > n) break;
      ring.multiply_accumulate(c->coeffs(), b[static_cast<std::size_t>(n - off)].coeffs(),
                               acc.mutable_coeffs());
    }
    b[static_cast<std::size_t>(n)] = -(lead_inv * acc);
  }
  RingQSeries::Terms terms;
  for (Exponent n = 0; n <= rel; ++n) terms.emplace(n - low, std::move(b[static_cast<std::size_t>(n)]));
  return RingQSeries(a.ring(), a.den(), rel - low, std::move(terms));
}

RingQSeries rescale(const RingQSeries& a, int num, int den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("rescale factors must be positive");
  const long long grid = static_cast<long long>(a.den()) * den;
  const long long g = std::gcd(static_cast<long long>(num), grid);
  const Exponent f = num / g;
  if (grid / g > std::numeric_limits<int>::max()) throw GridOverflow("rescaled grid too fine");
  RingQSeries::Terms terms;
  for (const auto& [e, c] : a.terms()) terms.emplace(e * f, c);
  const Exponent trunc = a.trunc() >= kExact ? kExact : (a.trunc() + 1) * f - 1;
  return RingQSeries(a.ring(), static_cast<int>(grid / g), trunc, std::move(terms));
}

std::optional<FormDifference> first_difference(const RingQSeries& a, const RingQSeries& b) {
  const RingQSeries diff = a - b;
  if (diff.is_zero()) return std::nullopt;
  const auto& [e, c] = *diff.terms().begin();
  const auto& ring = *diff.ring();
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (sgn(c.coeffs()[i]) != 0) return FormDifference{diff.den(), e, ring.degree(i)};
  return std::nullopt;
}

nlohmann::ordered_json to_json(const RingQSeries& s) {
  nlohmann::ordered_json j;
  j["den"] = s.den();
  j["trunc"] = s.trunc();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"exp", e}, {"coeff", c.to_string()}});
  j["terms"] = std::move(terms);
  return j;
}

}  // namespace stringc
