#pragma once

#include <complex>
#include <string>

#include "stringc/ring_series.hpp"

namespace stringc {

// All exact factors below are RingQSeries in q = e^{2 pi i tau} on the
// half-integer grid (den = 2), known through q^{q_order}. The argument w is a
// degree-2 class in topological normalization, w = 2 pi i v.

/// (w/2)/sinh(w/2) * prod_j (1-q^j)^2 / ((1-e^w q^j)(1-e^{-w} q^j))
RingQSeries phi0(const RingElement& w, int q_order);
/// cosh(w/2) * prod_j (1+e^w q^j)(1+e^{-w} q^j) / (1+q^j)^2
RingQSeries phi1(const RingElement& w, int q_order);
/// prod_j (1-e^w q^{j-1/2})(1-e^{-w} q^{j-1/2}) / (1-q^{j-1/2})^2
RingQSeries phi2(const RingElement& w, int q_order);
/// prod_j (1+e^w q^{j-1/2})(1+e^{-w} q^{j-1/2}) / (1+q^{j-1/2})^2
RingQSeries phi3(const RingElement& w, int q_order);
/// sinh(w/2) * prod_j (1-e^w q^j)(1-e^{-w} q^j) / (1-q^j)^2
RingQSeries psi(const RingElement& w, int q_order);

enum class ThetaIndex { One = 1, Two = 2, Three = 3, PrimeOverPi = 4 };

struct ThetaNull {
  ThetaIndex index;
  QSeries series;  // den = 8
};

/// theta_i(0, tau) from the product formulas, known through q^{q_order}.
ThetaNull theta_null(int i, int q_order);
/// theta'(0, tau) / pi = 2 q^{1/8} prod_j (1-q^j)^3.
ThetaNull theta_prime_null_over_pi(int q_order);

/// prod_j (1+q^j)(1-q^{2j-1}) on the integer grid through q^{q_order}; the
/// infinite product is identically 1.
QSeries euler_product(int q_order);

/// Partial product (j <= terms) of theta (which = 0) or theta_1..theta_3.
std::complex<double> numeric_theta(int which, std::complex<double> v, std::complex<double> tau,
                                   int terms);

enum class TransformLaw {
  ThetaT,   // theta(v, tau+1) = e^{i pi/4} theta(v, tau)
  ThetaS,   // theta(v, -1/tau) = (1/i)(tau/i)^{1/2} e^{i pi tau v^2} theta(tau v, tau)
  Theta1T,  // theta_1(v, tau+1) = e^{i pi/4} theta_1(v, tau)
  Theta1S,  // theta_1(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta_2(tau v, tau)
  Theta2T,  // theta_2(v, tau+1) = theta_3(v, tau)
  Theta2S,  // theta_2(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta_1(tau v, tau)
  Theta3T,  // theta_3(v, tau+1) = theta_2(v, tau)
  Theta3S,  // theta_3(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta_3(tau v, tau)
};
inline constexpr TransformLaw kAllLaws[] = {
    TransformLaw::ThetaT,  TransformLaw::ThetaS,  TransformLaw::Theta1T, TransformLaw::Theta1S,
    TransformLaw::Theta2T, TransformLaw::Theta2S, TransformLaw::Theta3T, TransformLaw::Theta3S};
std::string law_name(TransformLaw law);

/// |LHS - RHS| of the law at (v, tau); principal branch for (tau/i)^{1/2}.
double transform_residual(TransformLaw law, std::complex<double> v, std::complex<double> tau,
                          int terms);

}  // namespace stringc
