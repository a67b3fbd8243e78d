#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stringc/qseries.hpp"

namespace stringc {

// Level-one modular forms as q-expansions in q = e^{2 pi i tau}, den = 1.

/// E4 = 1 + 240 sum sigma_3(n) q^n, E6 = 1 - 504 sum sigma_5(n) q^n through
/// q^{q_order}. Throws UnsupportedWeight for any other weight.
QSeries eisenstein(int weight, int q_order);

/// q prod (1-q^n)^24.
QSeries delta_product(int q_order);

/// dim M_w(SL(2,Z)).
int dimension_formula(int weight);

struct ModularBasis {
  int weight = 0;
  std::vector<std::pair<int, int>> monomials;  // (alpha, beta): E4^alpha E6^beta
  std::vector<QSeries> expansions;
};

ModularBasis basis(int weight, int q_order);

inline constexpr int kRequiredSurplus = 5;

struct MembershipResult {
  bool member = false;
  int weight = 0;
  std::vector<std::pair<int, int>> monomials;
  std::vector<Rational> coordinates;
  int dimension = 0;
  int verified = 0;  // coefficients checked beyond the solving window
  std::optional<Exponent> first_bad_exp;
  std::string reason;
};

/// Solves for the basis coordinates on the first dim coefficients and checks
/// every later coefficient through min(q_order, known precision). A pass
/// needs all of them to agree and at least kRequiredSurplus of them.
/// Throws InsufficientOrder when fewer than dim coefficients are known.
MembershipResult membership(const QSeries& series, int weight, int q_order);

struct WeightDetection {
  std::optional<int> weight;
  bool zero_series = false;
  std::optional<MembershipResult> result;
};

/// Smallest even weight <= max_weight whose membership test passes.
WeightDetection detect_weight(const QSeries& series, int max_weight, int q_order);

nlohmann::ordered_json to_json(const MembershipResult& r);

}  // namespace stringc
