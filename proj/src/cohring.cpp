#include "stringc/cohring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "stringc/errors.hpp"

namespace stringc {

namespace {

void enumerate_monomials(const std::vector<Generator>& gens, int cap, std::size_t pos,
                         int degree, CohomologyModel::Monomial& cur,
                         std::vector<std::pair<int, CohomologyModel::Monomial>>& out) {
  if (pos == gens.size()) {
    out.emplace_back(degree, cur);
    return;
  }
  for (int e = 0; e < gens[pos].nilpotency && degree + e * gens[pos].degree <= cap; ++e) {
    cur[pos] = e;
    enumerate_monomials(gens, cap, pos + 1, degree + e * gens[pos].degree, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

CohomologyModel::CohomologyModel(std::vector<Generator> generators, int dimension_cap,
                                 const std::vector<std::pair<Monomial, Rational>>& integration)
    : generators_(std::move(generators)), cap_(dimension_cap) {
  if (cap_ < 0) throw SchemaError("dimension cap must be nonnegative");
  for (const auto& g : generators_) {
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw GradingError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                         "; only even positive degrees are supported");
    if (g.nilpotency < 1) throw SchemaError("generator '" + g.name + "' needs nilpotency >= 1");
  }

  std::vector<std::pair<int, Monomial>> found;
  Monomial cur(generators_.size(), 0);
  enumerate_monomials(generators_, cap_, 0, 0, cur, found);
  std::sort(found.begin(), found.end());
  for (auto& [d, m] : found) {
    degrees_.push_back(d);
    index_.emplace(m, monomials_.size());
    monomials_.push_back(std::move(m));
  }

  const std::size_t n = monomials_.size();
  table_.assign(n * n, -1);
  Monomial sum(generators_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (degrees_[i] + degrees_[j] > cap_) continue;
      for (std::size_t g = 0; g < sum.size(); ++g) sum[g] = monomials_[i][g] + monomials_[j][g];
      if (auto k = index_of(sum)) table_[i * n + j] = static_cast<int>(*k);
    }
  }

  integrals_.assign(n, Rational(0));
  for (const auto& [mono, value] : integration) {
    if (mono.size() != generators_.size())
      throw SchemaError("integration monomial has wrong number of exponents");
    int d = 0;
    for (std::size_t g = 0; g < mono.size(); ++g) {
      if (mono[g] < 0) throw SchemaError("negative exponent in integration monomial");
      d += mono[g] * generators_[g].degree;
    }
    if (d != cap_)
      throw IntegrationDegreeError("integration assigned to a degree-" + std::to_string(d) +
                                   " monomial in a dimension-" + std::to_string(cap_) + " model");
    auto k = index_of(mono);
    if (!k) throw IntegrationDegreeError("integration assigned to a monomial that vanishes by nilpotency");
    integrals_[*k] = value;
  }
}

std::optional<std::size_t> CohomologyModel::index_of(std::span<const int> exponents) const {
  if (exponents.size() != generators_.size()) return std::nullopt;
  int d = 0;
  for (std::size_t g = 0; g < exponents.size(); ++g) {
    if (exponents[g] < 0 || exponents[g] >= generators_[g].nilpotency) return std::nullopt;
    d += exponents[g] * generators_[g].degree;
  }
  if (d > cap_) return std::nullopt;
  auto it = index_.find(Monomial(exponents.begin(), exponents.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CohomologyModel::multiply_accumulate(std::span<const Rational> a, std::span<const Rational> b,
                                          std::span<Rational> out) const {
  const std::size_t n = size();
  Rational tmp;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    const int* row = &table_[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 0 || sgn(b[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      out[static_cast<std::size_t>(row[j])] += tmp;
    }
  }
}

// ---------------------------------------------------------------------------

RingElement::RingElement(RingPtr ring) : ring_(std::move(ring)), c_(ring_->size()) {}

RingElement::RingElement(RingPtr ring, std::vector<Rational> coeffs)
    : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (c_.size() != ring_->size()) throw std::invalid_argument("coefficient vector size mismatch");
}

RingElement RingElement::constant(RingPtr ring, const Rational& c) {
  RingElement e(std::move(ring));
  e.c_[0] = c;
  return e;
}

RingElement RingElement::generator(RingPtr ring, std::size_t index) {
  RingElement e(ring);
  std::vector<int> mono(ring->generators().size(), 0);
  mono.at(index) = 1;
  if (auto k = ring->index_of(mono)) e.c_[*k] = 1;
  return e;
}

bool RingElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

bool RingElement::is_homogeneous(int d) const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0 && ring_->degree(i) != d) return false;
  return true;
}

RingElement RingElement::degree_part(int d) const {
  RingElement out(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (ring_->degree(i) == d) out.c_[i] = c_[i];
  return out;
}

RingElement RingElement::operator-() const {
  RingElement out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RingElement& RingElement::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement out(a.ring_);
  a.ring_->multiply_accumulate(a.c_, b.c_, out.c_);
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.ring_ == b.ring_ && a.c_ == b.c_;
}

RingElement RingElement::pow(unsigned n) const {
  RingElement result = constant(ring_, 1);
  RingElement base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

RingElement RingElement::inverse() const {
  if (sgn(c_[0]) == 0)
    throw ZeroLeadingCoefficient("ring element without constant term is not invertible");
  // u = c0 (1 + n) with n nilpotent: u^{-1} = c0^{-1} sum_k (-n)^k
  const Rational inv0 = 1 / c_[0];
  RingElement neg_n = *this * (-inv0);
  neg_n.c_[0] = 0;
  RingElement sum = constant(ring_, 1);
  RingElement term = constant(ring_, 1);
  for (;;) {
    term = term * neg_n;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * inv0;
}

double RingElement::evaluate(std::span<const double> generator_values) const {
  double total = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    double m = c_[i].get_d();
    const auto& mono = ring_->monomial(i);
    for (std::size_t g = 0; g < mono.size(); ++g) m *= std::pow(generator_values[g], mono[g]);
    total += m;
  }
  return total;
}

std::string RingElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  const auto& gens = ring_->generators();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rational c = c_[i];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    c = abs(c);
    const auto& mono = ring_->monomial(i);
    std::string monostr;
    for (std::size_t g = 0; g < mono.size(); ++g) {
      if (mono[g] == 0) continue;
      if (!monostr.empty()) monostr += "*";
      monostr += gens[g].name;
      if (mono[g] > 1) monostr += "^" + std::to_string(mono[g]);
    }
    if (monostr.empty())
      os << format_rational(c);
    else if (c == 1)
      os << monostr;
    else
      os << format_rational(c) << "*" << monostr;
    first = false;
  }
  return first ? "0" : os.str();
}

RingElement apply_power_series(const RingElement& w, std::span<const Rational> coeffs) {
  if (sgn(w.constant_term()) != 0)
    throw DegreeError("power series argument must have zero constant term");
  RingElement result(w.ring());
  RingElement power = RingElement::constant(w.ring(), 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (n > 0) power = power * w;
    if (power.is_zero()) break;
    if (sgn(coeffs[n]) != 0) result += power * coeffs[n];
  }
  return result;
}

std::vector<Rational> exp_coefficients(int n, const Rational& scale) {
  std::vector<Rational> out(static_cast<std::size_t>(n + 1));
  Rational term = 1;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) term = term * scale / i;
    out[static_cast<std::size_t>(i)] = term;
  }
  return out;
}

std::vector<Rational> sinh_coefficients(int n, const Rational& scale) {
  auto out = exp_coefficients(n, scale);
  for (int i = 0; i <= n; i += 2) out[static_cast<std::size_t>(i)] = 0;
  return out;
}

std::vector<Rational> cosh_coefficients(int n, const Rational& scale) {
  auto out = exp_coefficients(n, scale);
  for (int i = 1; i <= n; i += 2) out[static_cast<std::size_t>(i)] = 0;
  return out;
}

RingElement ring_exp(const RingElement& w) {
  const int n = w.ring()->dimension_cap() / 2 + 1;
  return apply_power_series(w, exp_coefficients(n));
}

// ---------------------------------------------------------------------------

namespace {

RingElement linear(const RingPtr& ring, const std::vector<Rational>& per_generator) {
  RingElement e(ring);
  for (std::size_t g = 0; g < per_generator.size(); ++g)
    if (sgn(per_generator[g]) != 0) e += RingElement::generator(ring, g) * per_generator[g];
  return e;
}

ManifoldModel single_generator_model(std::string name, int complex_dim,
                                     const std::vector<Rational>& root_multipliers,
                                     const Rational& det_multiplier) {
  ManifoldModel m;
  m.name = std::move(name);
  m.dimension = 2 * complex_dim;
  m.ring = std::make_shared<CohomologyModel>(
      std::vector<Generator>{{"x", 2, complex_dim + 1}}, 2 * complex_dim,
      std::vector<std::pair<CohomologyModel::Monomial, Rational>>{{{complex_dim}, Rational(1)}});
  const RingElement x = RingElement::generator(m.ring, 0);
  for (const auto& r : root_multipliers) m.tangent_roots.push_back(x * r);
  m.det_class = x * det_multiplier;
  return m;
}

}  // namespace

ManifoldModel build_point() {
  ManifoldModel m;
  m.name = "point";
  m.dimension = 0;
  m.ring = std::make_shared<CohomologyModel>(
      std::vector<Generator>{}, 0,
      std::vector<std::pair<CohomologyModel::Monomial, Rational>>{{{}, Rational(1)}});
  m.det_class = RingElement(m.ring);
  return m;
}

ManifoldModel build_cp_standard(int n) {
  if (n < 1) throw std::invalid_argument("CP^n needs n >= 1");
  // T CP^n + C = O(1)^{n+1}
  return single_generator_model("cp" + std::to_string(n) + "-standard", n,
                                std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(1)),
                                Rational(n + 1));
}

ManifoldModel build_cp_balanced(int two_n) {
  if (two_n % 2 != 0) throw OddInput("balanced structure needs an even complex dimension");
  if (two_n < 2) throw std::invalid_argument("balanced CP^{2n} needs 2n >= 2");
  const int n = two_n / 2;
  // T CP^{2n} + R^2 = O(1)^{n+1} + O(-1)^n, determinant line O(1)
  std::vector<Rational> roots(static_cast<std::size_t>(n + 1), Rational(1));
  roots.insert(roots.end(), static_cast<std::size_t>(n), Rational(-1));
  return single_generator_model("cp" + std::to_string(two_n) + "-balanced", two_n, roots,
                                Rational(1));
}

ManifoldModel build_product(const ManifoldModel& m1, const ManifoldModel& m2) {
  auto gens1 = m1.ring->generators();
  auto gens2 = m2.ring->generators();
  std::set<std::string> names1;
  for (const auto& g : gens1) names1.insert(g.name);
  for (auto& g : gens2) {
    if (names1.count(g.name)) {
      for (auto& h : gens1)
        if (h.name == g.name) h.name += "1";
      g.name += "2";
    }
  }
  std::vector<Generator> gens = gens1;
  gens.insert(gens.end(), gens2.begin(), gens2.end());

  const std::size_t n1 = gens1.size();
  std::vector<std::pair<CohomologyModel::Monomial, Rational>> integration;
  for (std::size_t i = 0; i < m1.ring->size(); ++i) {
    if (m1.ring->degree(i) != m1.ring->dimension_cap() || sgn(m1.ring->integral(i)) == 0) continue;
    for (std::size_t j = 0; j < m2.ring->size(); ++j) {
      if (m2.ring->degree(j) != m2.ring->dimension_cap() || sgn(m2.ring->integral(j)) == 0)
        continue;
      CohomologyModel::Monomial mono = m1.ring->monomial(i);
      const auto& tail = m2.ring->monomial(j);
      mono.insert(mono.end(), tail.begin(), tail.end());
      integration.emplace_back(std::move(mono), m1.ring->integral(i) * m2.ring->integral(j));
    }
  }

  ManifoldModel m;
  m.name = m1.name + "x" + m2.name;
  m.dimension = m1.dimension + m2.dimension;
  m.ring = std::make_shared<CohomologyModel>(std::move(gens),
                                             m1.ring->dimension_cap() + m2.ring->dimension_cap(),
                                             integration);

  auto embed = [&](const RingElement& e, bool first) {
    RingElement out(m.ring);
    const auto& src = *e.ring();
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (sgn(e.coeffs()[i]) == 0) continue;
      CohomologyModel::Monomial mono(m.ring->generators().size(), 0);
      const auto& part = src.monomial(i);
      std::copy(part.begin(), part.end(), mono.begin() + (first ? 0 : static_cast<long>(n1)));
      if (auto k = m.ring->index_of(mono)) out.mutable_coeffs()[*k] = e.coeffs()[i];
    }
    return out;
  };
  for (const auto& r : m1.tangent_roots) m.tangent_roots.push_back(embed(r, true));
  for (const auto& r : m2.tangent_roots) m.tangent_roots.push_back(embed(r, false));
  m.det_class = embed(m1.det_class, true) + embed(m2.det_class, false);
  return m;
}

ManifoldModel build_formal(const nlohmann::json& manifest) {
  try {
    if (!manifest.is_object()) throw SchemaError("manifest must be a JSON object");
    for (const char* key :
         {"name", "dimension", "generators", "integration", "tangent_roots", "det_class"})
      if (!manifest.contains(key)) throw SchemaError(std::string("manifest missing '") + key + "'");

    ManifoldModel m;
    m.name = manifest.at("name").get<std::string>();
    m.dimension = manifest.at("dimension").get<int>();
    if (m.dimension < 0 || m.dimension % 2 != 0)
      throw GradingError("manifest dimension must be even and nonnegative");

    std::vector<Generator> gens;
    for (const auto& g : manifest.at("generators"))
      gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>(),
                      g.at("nilpotency").get<int>()});

    std::vector<std::pair<CohomologyModel::Monomial, Rational>> integration;
    for (const auto& entry : manifest.at("integration"))
      integration.emplace_back(entry.at("monomial").get<std::vector<int>>(),
                               parse_rational(entry.at("value").get<std::string>()));

    m.ring = std::make_shared<CohomologyModel>(gens, m.dimension, integration);

    auto read_class = [&](const nlohmann::json& j, const std::string& what) {
      if (!j.is_array() || j.size() != gens.size())
        throw SchemaError(what + " needs one coefficient per generator");
      std::vector<Rational> coeffs;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        coeffs.push_back(parse_rational(j[g].get<std::string>()));
        if (sgn(coeffs.back()) != 0 && gens[g].degree != 2)
          throw GradingError(what + " uses generator '" + gens[g].name + "' of degree " +
                             std::to_string(gens[g].degree) + "; degree-2 classes only");
      }
      return linear(m.ring, coeffs);
    };
    for (const auto& r : manifest.at("tangent_roots"))
      m.tangent_roots.push_back(read_class(r, "tangent root"));
    m.det_class = read_class(manifest.at("det_class"), "det_class");
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("manifest: ") + ex.what());
  }
}

nlohmann::ordered_json to_manifest(const ManifoldModel& m) {
  const auto& ring = *m.ring;
  nlohmann::ordered_json j;
  j["name"] = m.name;
  j["dimension"] = m.dimension;
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : ring.generators())
    gens.push_back({{"name", g.name}, {"degree", g.degree}, {"nilpotency", g.nilpotency}});
  j["generators"] = gens;
  auto integ = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring.degree(i) == ring.dimension_cap() && sgn(ring.integral(i)) != 0)
      integ.push_back({{"monomial", ring.monomial(i)}, {"value", format_rational(ring.integral(i))}});
  j["integration"] = integ;
  auto linear_coeffs = [&](const RingElement& e) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t g = 0; g < ring.generators().size(); ++g) {
      std::vector<int> mono(ring.generators().size(), 0);
      mono[g] = 1;
      auto k = ring.index_of(mono);
      arr.push_back(format_rational(k ? e.coeffs()[*k] : Rational(0)));
    }
    return arr;
  };
  auto roots = nlohmann::ordered_json::array();
  for (const auto& r : m.tangent_roots) roots.push_back(linear_coeffs(r));
  j["tangent_roots"] = roots;
  j["det_class"] = linear_coeffs(m.det_class);
  return j;
}

std::vector<std::string> builtin_model_names() {
  std::vector<std::string> names{"point"};
  for (int n = 1; n <= 6; ++n) names.push_back("cp" + std::to_string(n) + "-standard");
  for (int n = 2; n <= 8; n += 2) names.push_back("cp" + std::to_string(n) + "-balanced");
  names.push_back("formal-m8");
  return names;
}

ManifoldModel builtin_model(const std::string& name) {
  if (name == "point") return build_point();
  if (name == "formal-m8") {
    // Q[x]/(x^5), roots (x,x,x,2x), c = x: p1 = 7 c^2
    auto m = single_generator_model("formal-m8", 4,
                                    {Rational(1), Rational(1), Rational(1), Rational(2)},
                                    Rational(1));
    return m;
  }
  for (int n = 1; n <= 6; ++n)
    if (name == "cp" + std::to_string(n) + "-standard") return build_cp_standard(n);
  for (int n = 2; n <= 8; n += 2)
    if (name == "cp" + std::to_string(n) + "-balanced") return build_cp_balanced(n);
  throw SchemaError("unknown builtin model '" + name + "'");
}

RingElement first_pontryagin(const ManifoldModel& m) {
  RingElement p1(m.ring);
  for (const auto& r : m.tangent_roots) p1 += r * r;
  return p1;
}

RingElement obstruction_class(const ManifoldModel& m, int k) {
  RingElement diff = first_pontryagin(m) - m.det_class * m.det_class * Rational(2 * k + 1);
  return diff * Rational(1, 2);
}

bool stringc_level_check(const ManifoldModel& m, int k) { return obstruction_class(m, k).is_zero(); }

Rational integrate(const ManifoldModel& m, const RingElement& e) {
  Rational total = 0;
  const auto& ring = *m.ring;
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (sgn(e.coeffs()[i]) != 0 && sgn(ring.integral(i)) != 0) total += e.coeffs()[i] * ring.integral(i);
  return total;
}

}  // namespace stringc
