#include "stringc/modforms.hpp"

#include "stringc/errors.hpp"

namespace stringc {

namespace {

Integer divisor_power_sum(long long n, unsigned power) {
  Integer total = 0;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), power);
    total += t;
    const long long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), power);
      total += t;
    }
  }
  return total;
}

QSeries power(const QSeries& s, int n, Exponent trunc) {
  QSeries out = QSeries::constant(1, 1, trunc);
  for (int i = 0; i < n; ++i) out = out * s;
  return out;
}

// Integer-exponent copy of a series whose support lies on q^Z.
QSeries to_integer_grid(const QSeries& s) {
  const int d = s.den();
  QSeries::Terms terms;
  for (const auto& [e, c] : s.terms()) terms.emplace(e / d, c);
  const Exponent trunc = s.exact() ? kExact : (s.trunc() >= 0 ? s.trunc() / d : -((-s.trunc() + d - 1) / d));
  return QSeries(1, trunc, std::move(terms));
}

}  // namespace

QSeries eisenstein(int weight, int q_order) {
  if (q_order < 0) throw std::invalid_argument("q_order must be nonnegative");
  Integer scale;
  unsigned power = 0;
  if (weight == 4) {
    scale = 240;
    power = 3;
  } else if (weight == 6) {
    scale = -504;
    power = 5;
  } else {
    throw UnsupportedWeight("eisenstein: weight must be 4 or 6, got " + std::to_string(weight));
  }
  QSeries::Terms terms{{0, Rational(1)}};
  for (long long n = 1; n <= q_order; ++n) terms.emplace(n, Rational(scale * divisor_power_sum(n, power)));
  return QSeries(1, q_order, std::move(terms));
}

QSeries delta_product(int q_order) {
  return QSeries::monomial(1, 1, 1, kExact) * pochhammer_power(1, 1, 1, -1, 24, q_order - 1);
}

int dimension_formula(int weight) {
  if (weight < 0 || weight % 2 != 0 || weight == 2) return 0;
  return weight % 12 == 2 ? weight / 12 : weight / 12 + 1;
}

ModularBasis basis(int weight, int q_order) {
  ModularBasis out;
  out.weight = weight;
  if (weight < 0 || weight % 2 != 0) return out;
  const QSeries e4 = eisenstein(4, q_order);
  const QSeries e6 = eisenstein(6, q_order);
  for (int beta = weight / 6; beta >= 0; --beta) {
    const int rest = weight - 6 * beta;
    if (rest % 4) continue;
    const int alpha = rest / 4;
    out.monomials.emplace_back(alpha, beta);
    out.expansions.push_back(power(e4, alpha, q_order) * power(e6, beta, q_order));
  }
  return out;
}

MembershipResult membership(const QSeries& series, int weight, int q_order) {
  MembershipResult r;
  r.weight = weight;
  if (!on_grid(series, 1)) {
    r.reason = "series has fractional q-exponents";
    for (const auto& [e, c] : series.terms())
      if (e % series.den() != 0) {
        r.first_bad_exp = e;  // grid units of the input
        break;
      }
    return r;
  }
  const QSeries s = to_integer_grid(series);
  if (!s.is_zero() && s.terms().begin()->first < 0) {
    r.reason = "series has negative q-exponents";
    r.first_bad_exp = s.terms().begin()->first;
    return r;
  }
  const ModularBasis b = basis(weight, q_order);
  const int dim = static_cast<int>(b.monomials.size());
  r.dimension = dim;
  r.monomials = b.monomials;
  const Exponent top = std::min<Exponent>(q_order, s.trunc());
  const Exponent known = top + 1;
  if (known < dim)
    throw InsufficientOrder("membership at weight " + std::to_string(weight) + " needs " + std::to_string(dim) +
                            " coefficients, only " + std::to_string(std::max<Exponent>(known, 0)) + " known");

  // Gaussian elimination on the dim x dim window [coefficient n of monomial j].
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(dim), std::vector<Rational>(dim + 1));
  for (int n = 0; n < dim; ++n) {
    for (int j = 0; j < dim; ++j) m[n][j] = b.expansions[j].coeff(n);
    m[n][dim] = s.coeff(n);
  }
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    while (piv < dim && sgn(m[piv][col]) == 0) ++piv;
    if (piv == dim) throw InvariantError("modular basis window is singular");
    std::swap(m[piv], m[col]);
    for (int row = 0; row < dim; ++row) {
      if (row == col || sgn(m[row][col]) == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (int j = col; j <= dim; ++j) m[row][j] -= f * m[col][j];
    }
  }
  r.coordinates.resize(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) r.coordinates[j] = m[j][dim] / m[j][j];

  QSeries fit(1, q_order);
  for (int j = 0; j < dim; ++j) fit += b.expansions[j] * r.coordinates[j];
  for (Exponent n = dim; n <= top; ++n) {
    if (fit.coeff(n) != s.coeff(n)) {
      r.first_bad_exp = n;
      r.reason = "coefficient of q^" + std::to_string(n) + " disagrees with the fitted combination";
      return r;
    }
    ++r.verified;
  }
  if (r.verified < kRequiredSurplus) {
    r.reason = "only " + std::to_string(r.verified) + " surplus coefficients verified, need " +
               std::to_string(kRequiredSurplus);
    return r;
  }
  r.member = true;
  return r;
}

WeightDetection detect_weight(const QSeries& series, int max_weight, int q_order) {
  WeightDetection out;
  if (series.is_zero()) {
    out.weight = 0;
    out.zero_series = true;
    return out;
  }
  for (int w = 0; w <= max_weight; w += 2) {
    try {
      MembershipResult r = membership(series, w, q_order);
      if (r.member) {
        out.weight = w;
        out.result = std::move(r);
        return out;
      }
    } catch (const InsufficientOrder&) {
      break;
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const MembershipResult& r) {
  nlohmann::ordered_json j;
  if (r.member) {
    j["weight"] = r.weight;
    auto coords = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.monomials.size(); ++i) {
      const auto [a, b] = r.monomials[i];
      coords["E4^" + std::to_string(a) + "*E6^" + std::to_string(b)] = format_rational(r.coordinates[i]);
    }
    j["coordinates"] = std::move(coords);
    j["verified_surplus"] = r.verified;
  } else {
    j["member"] = false;
    j["weight"] = r.weight;
    if (r.first_bad_exp)
      j["first_bad_exp"] = *r.first_bad_exp;
    else
      j["first_bad_exp"] = nullptr;
    j["reason"] = r.reason;
  }
  return j;
}

}  // namespace stringc
