#include "stringc/theta.hpp"

#include <cmath>
#include <numbers>

#include "stringc/errors.hpp"

namespace stringc {

namespace {

constexpr int kGrid = 2;

void require_degree_two(const RingElement& w) {
  if (!w.is_homogeneous(2)) throw DegreeError("theta factor argument must be a degree-2 class");
}

int series_terms(const RingElement& w) { return w.ring()->dimension_cap() / 2 + 1; }

// (1 + sign e^{w} q^e)(1 + sign e^{-w} q^e) for every e = offset + step*i <= trunc.
RingQSeries twisted_pair_product(const RingElement& w, Exponent offset, int sign, Exponent trunc) {
  const RingPtr& ring = w.ring();
  const RingElement y = ring_exp(w);
  const RingElement y_inv = ring_exp(-w);
  RingQSeries out = RingQSeries::constant(RingElement::constant(ring, 1), kGrid, trunc);
  for (Exponent e = offset; e <= trunc; e += kGrid) {
    RingQSeries::Terms f;
    f.emplace(0, RingElement::constant(ring, 1));
    f.emplace(e, (y + y_inv) * Rational(sign));
    if (2 * e <= trunc) f.emplace(2 * e, RingElement::constant(ring, 1));
    out *= RingQSeries(ring, kGrid, kExact, std::move(f));
  }
  return out;
}

// prod_j 1/((1 - e^w q^{2j})(1 - e^{-w} q^{2j})) via geometric series in grid units.
RingQSeries inverse_pair_product(const RingElement& w, Exponent trunc) {
  const RingPtr& ring = w.ring();
  RingQSeries out = RingQSeries::constant(RingElement::constant(ring, 1), kGrid, trunc);
  for (Exponent e = kGrid; e <= trunc; e += kGrid) {
    for (int s : {1, -1}) {
      RingQSeries::Terms g;
      for (Exponent n = 0; n * e <= trunc; ++n)
        g.emplace(n * e, ring_exp(w * Rational(s * static_cast<long>(n))));
      out *= RingQSeries(ring, kGrid, kExact, std::move(g));
    }
  }
  return out;
}

}  // namespace

RingQSeries phi0(const RingElement& w, int q_order) {
  require_degree_two(w);
  const Exponent trunc = Exponent{kGrid} * q_order;
  const int n = series_terms(w);
  // sinh(w/2)/(w/2) = sum (1/2)^{2i} w^{2i} / (2i+1)!
  std::vector<Rational> shifted(static_cast<std::size_t>(n + 1));
  {
    const auto s = sinh_coefficients(n + 1, Rational(1, 2));
    for (int i = 0; i <= n; ++i) shifted[static_cast<std::size_t>(i)] = 2 * s[static_cast<std::size_t>(i + 1)];
  }
  const RingElement a_hat = apply_power_series(w, shifted).inverse();
  const QSeries norm = pochhammer_power(kGrid, kGrid, kGrid, -1, 2, trunc);
  return inverse_pair_product(w, trunc) * norm * a_hat;
}

RingQSeries phi1(const RingElement& w, int q_order) {
  require_degree_two(w);
  const Exponent trunc = Exponent{kGrid} * q_order;
  const RingElement ch = apply_power_series(w, cosh_coefficients(series_terms(w), Rational(1, 2)));
  const QSeries norm = pochhammer_power(kGrid, kGrid, kGrid, +1, -2, trunc);
  return twisted_pair_product(w, kGrid, +1, trunc) * norm * ch;
}

RingQSeries phi2(const RingElement& w, int q_order) {
  require_degree_two(w);
  const Exponent trunc = Exponent{kGrid} * q_order;
  const QSeries norm = pochhammer_power(kGrid, kGrid, 1, -1, -2, trunc);
  return twisted_pair_product(w, 1, -1, trunc) * norm;
}

RingQSeries phi3(const RingElement& w, int q_order) {
  require_degree_two(w);
  const Exponent trunc = Exponent{kGrid} * q_order;
  const QSeries norm = pochhammer_power(kGrid, kGrid, 1, +1, -2, trunc);
  return twisted_pair_product(w, 1, +1, trunc) * norm;
}

RingQSeries psi(const RingElement& w, int q_order) {
  require_degree_two(w);
  const Exponent trunc = Exponent{kGrid} * q_order;
  const RingElement sh = apply_power_series(w, sinh_coefficients(series_terms(w), Rational(1, 2)));
  const QSeries norm = pochhammer_power(kGrid, kGrid, kGrid, -1, -2, trunc);
  return twisted_pair_product(w, kGrid, -1, trunc) * norm * sh;
}

// ---------------------------------------------------------------------------

ThetaNull theta_null(int i, int q_order) {
  if (q_order < 0) throw std::invalid_argument("q_order must be nonnegative");
  constexpr int den = 8;
  const Exponent trunc = Exponent{den} * q_order;
  const QSeries eta_part = pochhammer_power(den, den, den, -1, 1, trunc);
  switch (i) {
    case 1: {
      const QSeries prod = eta_part * pochhammer_power(den, den, den, +1, 2, trunc);
      return {ThetaIndex::One, (QSeries::monomial(2, 1, den, kExact) * prod).truncated(trunc)};
    }
    case 2:
      return {ThetaIndex::Two, eta_part * pochhammer_power(den, den, den / 2, -1, 2, trunc)};
    case 3:
      return {ThetaIndex::Three, eta_part * pochhammer_power(den, den, den / 2, +1, 2, trunc)};
    default:
      throw std::invalid_argument("theta_null index must be 1, 2 or 3");
  }
}

ThetaNull theta_prime_null_over_pi(int q_order) {
  if (q_order < 0) throw std::invalid_argument("q_order must be nonnegative");
  constexpr int den = 8;
  const Exponent trunc = Exponent{den} * q_order;
  const QSeries prod = pochhammer_power(den, den, den, -1, 3, trunc);
  return {ThetaIndex::PrimeOverPi, (QSeries::monomial(2, 1, den, kExact) * prod).truncated(trunc)};
}

QSeries euler_product(int q_order) {
  if (q_order < 1) throw std::invalid_argument("q_order must be positive");
  return pochhammer_power(1, 1, 1, +1, 1, q_order) * pochhammer_power(1, 2, 1, -1, 1, q_order);
}

// ---------------------------------------------------------------------------

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cd kI{0.0, 1.0};

void require_upper_half_plane(cd tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half plane");
}

}  // namespace

std::complex<double> numeric_theta(int which, cd v, cd tau, int terms) {
  require_upper_half_plane(tau);
  if (terms < 1) throw std::invalid_argument("numeric_theta needs terms >= 1");
  const cd y = std::exp(2.0 * kPi * kI * v);
  const cd y_inv = 1.0 / y;
  const cd eighth = std::exp(kPi * kI * tau / 4.0);  // q^{1/8}
  cd prod{1.0, 0.0};
  for (int j = 1; j <= terms; ++j) {
    const cd qj = std::exp(2.0 * kPi * kI * tau * static_cast<double>(j));
    const cd qh = std::exp(2.0 * kPi * kI * tau * (j - 0.5));
    switch (which) {
      case 0: prod *= (1.0 - qj) * (1.0 - y * qj) * (1.0 - y_inv * qj); break;
      case 1: prod *= (1.0 - qj) * (1.0 + y * qj) * (1.0 + y_inv * qj); break;
      case 2: prod *= (1.0 - qj) * (1.0 - y * qh) * (1.0 - y_inv * qh); break;
      case 3: prod *= (1.0 - qj) * (1.0 + y * qh) * (1.0 + y_inv * qh); break;
      default: throw std::invalid_argument("theta index must be 0..3");
    }
  }
  switch (which) {
    case 0: return 2.0 * eighth * std::sin(kPi * v) * prod;
    case 1: return 2.0 * eighth * std::cos(kPi * v) * prod;
    default: return prod;
  }
}

std::string law_name(TransformLaw law) {
  switch (law) {
    case TransformLaw::ThetaT: return "theta(v,tau+1)";
    case TransformLaw::ThetaS: return "theta(v,-1/tau)";
    case TransformLaw::Theta1T: return "theta1(v,tau+1)";
    case TransformLaw::Theta1S: return "theta1(v,-1/tau)";
    case TransformLaw::Theta2T: return "theta2(v,tau+1)";
    case TransformLaw::Theta2S: return "theta2(v,-1/tau)";
    case TransformLaw::Theta3T: return "theta3(v,tau+1)";
    case TransformLaw::Theta3S: return "theta3(v,-1/tau)";
  }
  return "unknown";
}

double transform_residual(TransformLaw law, cd v, cd tau, int terms) {
  require_upper_half_plane(tau);
  const cd shifted = tau + 1.0;
  const cd inverted = -1.0 / tau;
  const cd root = std::sqrt(tau / kI);  // principal branch
  const cd gauss = std::exp(kPi * kI * tau * v * v);
  const cd eighth_turn = std::exp(kPi * kI / 4.0);
  auto th = [&](int which, cd vv, cd tt) { return numeric_theta(which, vv, tt, terms); };
  cd lhs, rhs;
  switch (law) {
    case TransformLaw::ThetaT:
      lhs = th(0, v, shifted);
      rhs = eighth_turn * th(0, v, tau);
      break;
    case TransformLaw::ThetaS:
      lhs = th(0, v, inverted);
      rhs = (1.0 / kI) * root * gauss * th(0, tau * v, tau);
      break;
    case TransformLaw::Theta1T:
      lhs = th(1, v, shifted);
      rhs = eighth_turn * th(1, v, tau);
      break;
    case TransformLaw::Theta1S:
      lhs = th(1, v, inverted);
      rhs = root * gauss * th(2, tau * v, tau);
      break;
    case TransformLaw::Theta2T:
      lhs = th(2, v, shifted);
      rhs = th(3, v, tau);
      break;
    case TransformLaw::Theta2S:
      lhs = th(2, v, inverted);
      rhs = root * gauss * th(1, tau * v, tau);
      break;
    case TransformLaw::Theta3T:
      lhs = th(3, v, shifted);
      rhs = th(2, v, tau);
      break;
    case TransformLaw::Theta3S:
      lhs = th(3, v, inverted);
      rhs = root * gauss * th(3, tau * v, tau);
      break;
  }
  return std::abs(lhs - rhs);
}

}  // namespace stringc
