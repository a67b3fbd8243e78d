#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "stringc/rational.hpp"

namespace stringc {

struct Generator {
  std::string name;
  int degree = 2;       // cohomological degree, even and positive
  int nilpotency = 1;   // generator^nilpotency = 0
};

/// Truncated graded polynomial ring Q[g_1..g_n] / (g_i^{nil_i}, degree > cap)
/// with a linear integration functional on its top degree.
///
/// Elements are dense coefficient vectors over the monomial basis, which is
/// enumerated once at construction (ordered by degree, then by exponent
/// vector) together with a full multiplication table.
class CohomologyModel {
 public:
  using Monomial = std::vector<int>;

  CohomologyModel(std::vector<Generator> generators, int dimension_cap,
                  const std::vector<std::pair<Monomial, Rational>>& integration);

  const std::vector<Generator>& generators() const { return generators_; }
  int dimension_cap() const { return cap_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& monomial(std::size_t i) const { return monomials_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }
  std::optional<std::size_t> index_of(std::span<const int> exponents) const;
  // Basis index of monomial(i)*monomial(j), or -1 when the product vanishes.
  int product(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  const Rational& integral(std::size_t i) const { return integrals_[i]; }

  // out += a*b on raw coefficient vectors.
  void multiply_accumulate(std::span<const Rational> a, std::span<const Rational> b,
                           std::span<Rational> out) const;

 private:
  std::vector<Generator> generators_;
  int cap_;
  std::vector<Monomial> monomials_;
  std::vector<int> degrees_;
  std::map<Monomial, std::size_t> index_;
  std::vector<int> table_;
  std::vector<Rational> integrals_;
};

using RingPtr = std::shared_ptr<const CohomologyModel>;

/// Element of a CohomologyModel.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(RingPtr ring);
  RingElement(RingPtr ring, std::vector<Rational> coeffs);

  static RingElement constant(RingPtr ring, const Rational& c);
  static RingElement generator(RingPtr ring, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  std::vector<Rational>& mutable_coeffs() { return c_; }

  bool is_zero() const;
  const Rational& constant_term() const { return c_[0]; }
  // True iff every nonzero monomial has cohomological degree d (zero passes).
  bool is_homogeneous(int d) const;
  RingElement degree_part(int d) const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rational& s);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator*(RingElement a, const Rational& s) { return a *= s; }
  friend RingElement operator*(const Rational& s, RingElement a) { return a *= s; }
  friend bool operator==(const RingElement& a, const RingElement& b);

  RingElement pow(unsigned n) const;
  // Multiplicative inverse; throws ZeroLeadingCoefficient without a constant term.
  RingElement inverse() const;

  // Value at numeric generator values (used for float consistency checks).
  double evaluate(std::span<const double> generator_values) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Rational> c_;
};

/// sum_n coeffs[n] * w^n for w without constant term; terms past the ring's
/// nilpotency order are dropped automatically.
RingElement apply_power_series(const RingElement& w, std::span<const Rational> coeffs);

// Taylor coefficients up to x^n of common functions, exact.
std::vector<Rational> exp_coefficients(int n, const Rational& scale = 1);
std::vector<Rational> sinh_coefficients(int n, const Rational& scale = 1);
std::vector<Rational> cosh_coefficients(int n, const Rational& scale = 1);

// e^w in the ring; w must have zero constant term.
RingElement ring_exp(const RingElement& w);

/// A stable almost complex / formal Spin^c model: ring, tangent Chern roots
/// (topological normalization, one per complex line) and determinant class.
struct ManifoldModel {
  std::string name;
  RingPtr ring;
  int dimension = 0;
  std::vector<RingElement> tangent_roots;
  RingElement det_class;
};

ManifoldModel build_point();
ManifoldModel build_cp_standard(int n);
ManifoldModel build_cp_balanced(int two_n);
ManifoldModel build_product(const ManifoldModel& m1, const ManifoldModel& m2);
ManifoldModel build_formal(const nlohmann::json& manifest);
nlohmann::ordered_json to_manifest(const ManifoldModel& m);

/// Resolves "cp<n>-standard", "cp<2n>-balanced", "formal-m8", "point".
ManifoldModel builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

RingElement first_pontryagin(const ManifoldModel& m);
bool stringc_level_check(const ManifoldModel& m, int k);
RingElement obstruction_class(const ManifoldModel& m, int k);
Rational integrate(const ManifoldModel& m, const RingElement& e);

}  // namespace stringc
