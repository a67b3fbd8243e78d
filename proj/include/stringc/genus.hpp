#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stringc/ring_series.hpp"

namespace stringc {

/// Twisting data of a generalized Witten genus of level 2k+1.
struct GenusSpec {
  int k = 0;
  std::vector<int> a;
  std::vector<int> b;

  friend bool operator==(const GenusSpec&, const GenusSpec&) = default;
  friend auto operator<=>(const GenusSpec&, const GenusSpec&) = default;
};

struct SpecReport {
  bool parity_ok = true;
  bool level_ok = true;
  long long norm = 0;    // 3|a|^2 + |b|^2
  long long target = 0;  // 2k-2 (dim 4m) or 2k (dim 4m+2)
  std::vector<std::string> violations;
  bool ok() const { return parity_ok && level_ok; }
};

/// Parity of sum(a)+sum(b) and the dimension-dependent level condition.
/// Throws UnsupportedDimension for odd dimension.
SpecReport validate_spec(const GenusSpec& spec, int dimension);

/// Non-fatal observations: failed String^c level check, zero b entries.
std::vector<std::string> spec_warnings(const ManifoldModel& m, const GenusSpec& spec);

nlohmann::ordered_json to_json(const GenusSpec& spec);
GenusSpec genus_spec_from_json(const nlohmann::json& j);

/// Chern-root theta form of the type (2k+1; a, b) Witten form, D=2 grid in
/// q = e^{2 pi i tau}. Throws SpecViolation when validate_spec fails.
RingQSeries witten_form_theta(const ManifoldModel& m, const GenusSpec& spec, int q_order);
QSeries witten_genus(const ManifoldModel& m, const GenusSpec& spec, int q_order);

RingQSeries plain_witten_form(const ManifoldModel& m, int q_order);
QSeries plain_witten_genus(const ManifoldModel& m, int q_order);

/// Bundle (Chern character of the twisted bundle) form, computed in the
/// variable e^{pi i tau} and returned on the same grid as the theta form.
RingQSeries witten_form_bundle(const ManifoldModel& m, const GenusSpec& spec, int q_order);
RingQSeries plain_witten_form_bundle(const ManifoldModel& m, int q_order);

struct CrossCheckReport {
  QSeries theta_genus;
  QSeries bundle_genus;
  QSeries integrated_difference;
  bool integrated_equal = false;
  bool forms_equal = false;
  std::optional<FormDifference> first_form_difference;
};

CrossCheckReport cross_check(const ManifoldModel& m, const GenusSpec& spec, int q_order);
CrossCheckReport plain_cross_check(const ManifoldModel& m, int q_order);
nlohmann::ordered_json to_json(const CrossCheckReport& r);

/// True iff every coefficient has a power-of-two denominator.
bool halfint_coefficient_check(const QSeries& series);

}  // namespace stringc
