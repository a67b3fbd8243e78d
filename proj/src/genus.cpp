#include "stringc/genus.hpp"

#include <numeric>

#include "stringc/errors.hpp"
#include "stringc/theta.hpp"

namespace stringc {

namespace {

long long sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0LL); }

long long norm_sq(const std::vector<int>& v) {
  long long s = 0;
  for (int x : v) s += static_cast<long long>(x) * x;
  return s;
}

bool is_4m(const ManifoldModel& m) { return m.dimension % 4 == 0; }

void require_valid(const ManifoldModel& m, const GenusSpec& spec) {
  const SpecReport report = validate_spec(spec, m.dimension);
  if (!report.ok()) {
    std::string msg = "invalid genus spec:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw SpecViolation(msg);
  }
}

RingElement one(const RingPtr& ring) { return RingElement::constant(ring, 1); }

}  // namespace

SpecReport validate_spec(const GenusSpec& spec, int dimension) {
  if (dimension < 0 || dimension % 2 != 0)
    throw UnsupportedDimension("genus specs need an even dimension, got " + std::to_string(dimension));
  SpecReport r;
  const long long total = sum_of(spec.a) + sum_of(spec.b);
  r.parity_ok = total % 2 == 0;
  if (!r.parity_ok)
    r.violations.push_back("parity: sum(a)+sum(b) = " + std::to_string(total) + " is odd");
  r.norm = 3 * norm_sq(spec.a) + norm_sq(spec.b);
  r.target = dimension % 4 == 0 ? 2LL * spec.k - 2 : 2LL * spec.k;
  r.level_ok = r.norm == r.target;
  if (!r.level_ok)
    r.violations.push_back("level: 3|a|^2+|b|^2 = " + std::to_string(r.norm) + " but " +
                           (dimension % 4 == 0 ? "2k-2" : "2k") + " = " + std::to_string(r.target));
  return r;
}

std::vector<std::string> spec_warnings(const ManifoldModel& m, const GenusSpec& spec) {
  std::vector<std::string> out;
  if (!stringc_level_check(m, spec.k))
    out.push_back("model '" + m.name + "' fails the level " + std::to_string(2 * spec.k + 1) +
                  " String^c check; the form is defined but carries no modularity guarantee");
  for (int b : spec.b)
    if (b == 0) {
      out.push_back("b contains 0; the genus vanishes identically");
      break;
    }
  return out;
}

nlohmann::ordered_json to_json(const GenusSpec& spec) {
  nlohmann::ordered_json j;
  j["k"] = spec.k;
  j["a"] = spec.a;
  j["b"] = spec.b;
  return j;
}

GenusSpec genus_spec_from_json(const nlohmann::json& j) {
  try {
    GenusSpec s;
    s.k = j.at("k").get<int>();
    s.a = j.value("a", std::vector<int>{});
    s.b = j.value("b", std::vector<int>{});
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("genus spec: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Theta form

namespace {

class FactorCache {
 public:
  explicit FactorCache(int q_order) : order_(q_order) {}

  const RingQSeries& phi0_of(const RingElement& w) {
    for (const auto& [key, value] : phi0_)
      if (key == w) return value;
    phi0_.emplace_back(w, phi0(w, order_));
    return phi0_.back().second;
  }

 private:
  int order_;
  std::vector<std::pair<RingElement, RingQSeries>> phi0_;
};

RingQSeries even_triple(const RingElement& w, int q_order) {
  return phi1(w, q_order) * phi2(w, q_order) * phi3(w, q_order);
}

}  // namespace

RingQSeries plain_witten_form(const ManifoldModel& m, int q_order) {
  FactorCache cache(q_order);
  RingQSeries form = RingQSeries::constant(one(m.ring), 2, 2LL * q_order);
  for (const auto& root : m.tangent_roots) form *= cache.phi0_of(root);
  return form;
}

QSeries plain_witten_genus(const ManifoldModel& m, int q_order) {
  return plain_witten_form(m, q_order).integrate();
}

RingQSeries witten_form_theta(const ManifoldModel& m, const GenusSpec& spec, int q_order) {
  require_valid(m, spec);
  const RingPtr& ring = m.ring;
  const RingElement& c = m.det_class;
  const Exponent trunc = 2LL * q_order;
  for (int b : spec.b)
    if (b == 0) return RingQSeries(ring, 2, trunc);

  RingQSeries form = plain_witten_form(m, q_order);
  if (is_4m(m)) form *= even_triple(c, q_order);
  std::vector<std::pair<int, RingQSeries>> triples;
  for (int a : spec.a) {
    if (a == 0) continue;
    const int key = std::abs(a);
    auto it = std::find_if(triples.begin(), triples.end(), [&](const auto& p) { return p.first == key; });
    if (it == triples.end()) {
      triples.emplace_back(key, even_triple(c * Rational(key), q_order));
      it = std::prev(triples.end());
    }
    form *= it->second;
  }
  if (!is_4m(m)) form *= psi(c, q_order);
  for (int b : spec.b) form *= psi(c * Rational(b), q_order);
  return form;
}

QSeries witten_genus(const ManifoldModel& m, const GenusSpec& spec, int q_order) {
  return witten_form_theta(m, spec, q_order).integrate();
}

// ---------------------------------------------------------------------------
// Bundle form. Everything below runs in p = e^{pi i tau} on the integer grid;
// the theta variable is q = p^2.

namespace {

std::vector<Rational> bernoulli_numbers(int n) {
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  std::vector<Rational> b(static_cast<std::size_t>(n + 1));
  b[0] = 1;
  for (int mm = 1; mm <= n; ++mm) {
    Rational acc = 0;
    Integer binom = 1;  // C(mm+1, k)
    for (int k = 0; k < mm; ++k) {
      acc += Rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (mm + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(mm)] = -acc / Rational(mm + 1);
  }
  return b;
}

// (x/2)/sinh(x/2) = sum_n (2 - 2^{2n}) B_{2n} / (2n)! (x/2)^{2n}
std::vector<Rational> a_hat_coefficients(int degree) {
  const auto bern = bernoulli_numbers(degree);
  std::vector<Rational> out(static_cast<std::size_t>(degree + 1));
  Integer fact = 1;
  for (int i = 0; i <= degree; ++i) {
    if (i > 0) fact *= i;
    if (i % 2) continue;
    Rational coeff = Rational(2 - (Integer(1) << static_cast<unsigned>(i))) *
                     bern[static_cast<std::size_t>(i)] / Rational(fact);
    Integer half_pow = Integer(1) << static_cast<unsigned>(i);
    out[static_cast<std::size_t>(i)] = coeff / Rational(half_pow);
  }
  return out;
}

QSeries scalar_binomial(int sign, Exponent e, Exponent trunc) {
  QSeries::Terms t{{0, Rational(1)}};
  if (e <= trunc) t.emplace(e, Rational(sign));
  return QSeries(1, trunc, std::move(t));
}

// ch Lambda_t of (L + Lbar) minus its rank, t = sign p^e, root pair +-r.
RingQSeries ch_lambda_tilde(const RingElement& r, int sign, Exponent e, Exponent trunc) {
  const RingPtr& ring = r.ring();
  RingQSeries::Terms up{{0, one(ring)}}, down{{0, one(ring)}};
  up.emplace(e, ring_exp(r) * Rational(sign));
  down.emplace(e, ring_exp(-r) * Rational(sign));
  const QSeries trivial = invert(scalar_binomial(sign, e, trunc));
  return RingQSeries(ring, 1, trunc, std::move(up)) * RingQSeries(ring, 1, trunc, std::move(down)) *
         (trivial * trivial);
}

// ch S_t of (L + Lbar) minus its rank, t = p^e, root pair +-r.
RingQSeries ch_sym_tilde(const RingElement& r, Exponent e, Exponent trunc) {
  const RingPtr& ring = r.ring();
  RingQSeries::Terms up{{0, one(ring)}}, down{{0, one(ring)}};
  up.emplace(e, -ring_exp(r));
  down.emplace(e, -ring_exp(-r));
  const RingQSeries denom =
      RingQSeries(ring, 1, trunc, std::move(up)) * RingQSeries(ring, 1, trunc, std::move(down));
  const QSeries trivial = scalar_binomial(-1, e, trunc);
  return invert(denom) * (trivial * trivial);
}

RingQSeries a_hat_times_witten_bundle(const ManifoldModel& m, Exponent trunc) {
  const RingPtr& ring = m.ring;
  const auto a_hat = a_hat_coefficients(ring->dimension_cap() / 2 + 1);
  RingElement genus_class = one(ring);
  for (const auto& r : m.tangent_roots) genus_class = genus_class * apply_power_series(r, a_hat);
  RingQSeries out = RingQSeries::constant(genus_class, 1, trunc);
  for (const auto& r : m.tangent_roots)
    for (Exponent e = 2; e <= trunc; e += 2) out *= ch_sym_tilde(r, e, trunc);
  return out;
}

// Lambda_{p^{2n}} Lambda_{-p^{2n-1}} Lambda_{p^{2n-1}} of the tilde bundle with roots +-r.
RingQSeries theta_triple_bundle(const RingElement& r, Exponent trunc) {
  RingQSeries out = RingQSeries::constant(one(r.ring()), 1, trunc);
  for (Exponent e = 1; e <= trunc; ++e) {
    if (e % 2 == 0) {
      out *= ch_lambda_tilde(r, +1, e, trunc);
    } else {
      out *= ch_lambda_tilde(r, -1, e, trunc);
      out *= ch_lambda_tilde(r, +1, e, trunc);
    }
  }
  return out;
}

// Lambda_{-p^{2n}} of the tilde bundle with roots +-r.
RingQSeries odd_bundle(const RingElement& r, Exponent trunc) {
  RingQSeries out = RingQSeries::constant(one(r.ring()), 1, trunc);
  for (Exponent e = 2; e <= trunc; e += 2) out *= ch_lambda_tilde(r, -1, e, trunc);
  return out;
}

}  // namespace

RingQSeries plain_witten_form_bundle(const ManifoldModel& m, int q_order) {
  const Exponent trunc = 2LL * q_order;
  return rescale(a_hat_times_witten_bundle(m, trunc), 1, 2);
}

RingQSeries witten_form_bundle(const ManifoldModel& m, const GenusSpec& spec, int q_order) {
  require_valid(m, spec);
  const RingPtr& ring = m.ring;
  const RingElement& c = m.det_class;
  const Exponent trunc = 2LL * q_order;
  const int terms = ring->dimension_cap() / 2 + 1;

  RingElement prefactor = ring_exp(c * Rational(1, 2));
  for (int a : spec.a)
    prefactor = prefactor * apply_power_series(c * Rational(a), cosh_coefficients(terms, Rational(1, 2)));
  for (int b : spec.b)
    prefactor = prefactor * apply_power_series(c * Rational(b), sinh_coefficients(terms, Rational(1, 2)));

  RingQSeries form = a_hat_times_witten_bundle(m, trunc) * prefactor;
  for (int a : spec.a) form *= theta_triple_bundle(c * Rational(a), trunc);
  for (int b : spec.b) form *= odd_bundle(c * Rational(b), trunc);
  if (is_4m(m))
    form *= theta_triple_bundle(c, trunc);
  else
    form *= odd_bundle(c, trunc);
  return rescale(form, 1, 2);
}

// ---------------------------------------------------------------------------

namespace {

CrossCheckReport compare_forms(const RingQSeries& theta_form, const RingQSeries& bundle_form) {
  CrossCheckReport r;
  r.theta_genus = theta_form.integrate();
  r.bundle_genus = bundle_form.integrate();
  r.integrated_difference = r.theta_genus - r.bundle_genus;
  r.integrated_equal = r.integrated_difference.is_zero();
  r.first_form_difference = first_difference(theta_form, bundle_form);
  r.forms_equal = !r.first_form_difference.has_value();
  return r;
}

}  // namespace

CrossCheckReport cross_check(const ManifoldModel& m, const GenusSpec& spec, int q_order) {
  return compare_forms(witten_form_theta(m, spec, q_order), witten_form_bundle(m, spec, q_order));
}

CrossCheckReport plain_cross_check(const ManifoldModel& m, int q_order) {
  return compare_forms(plain_witten_form(m, q_order), plain_witten_form_bundle(m, q_order));
}

nlohmann::ordered_json to_json(const CrossCheckReport& r) {
  nlohmann::ordered_json j;
  j["theta_genus"] = to_json(r.theta_genus);
  j["bundle_genus"] = to_json(r.bundle_genus);
  j["integrated_difference"] = to_json(r.integrated_difference);
  j["integrated_equal"] = r.integrated_equal;
  j["forms_equal"] = r.forms_equal;
  if (r.first_form_difference) {
    const auto& d = *r.first_form_difference;
    j["first_form_difference"] = {{"exp", d.exp}, {"den", d.den}, {"degree", d.degree}};
  } else {
    j["first_form_difference"] = nullptr;
  }
  return j;
}

bool halfint_coefficient_check(const QSeries& series) {
  for (const auto& [e, c] : series.terms())
    if (!has_dyadic_denominator(c)) return false;
  return true;
}

}  // namespace stringc
