#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stringc/genus.hpp"

namespace stringc {

/// Lexicographically greatest (w, x, y, z) with w >= x >= y >= z >= 0 and
/// w^2 + x^2 + y^2 + z^2 = n.
std::array<long long, 4> four_square(long long n);

struct EnumerationOptions {
  std::optional<int> s;           // fixed b-length; free in [0, dimension/2] otherwise
  std::optional<int> max_entry;   // defaults to ceil(sqrt(2k)) + 1
  int max_a_length = 4;
};

/// All admissible specs for the dimension and level, one per orbit under
/// permutation and sign change. Representatives use positive entries sorted
/// in nonincreasing order; zero entries are not emitted (a zero a-entry is a
/// factor of 1, a zero b-entry kills the genus). The list is sorted by
/// (a, b) lexicographically.
std::vector<GenusSpec> enumerate_specs(int dimension, int k, const EnumerationOptions& opts = {});

int default_max_entry(int k);

enum class VanishingCase { A1, A2, A3, B1, B2, B3 };

VanishingCase parse_case(const std::string& name);
std::string case_name(VanishingCase c);

/// b-vector of length 2m for the nonvanishing argument: (1,..,1,3,3),
/// (1,..,1) or (1,..,1,3) depending on the residue of k-m mod 3. When k is
/// given the residue and lower bound for the case are checked.
std::vector<int> theorem66_bvector(int m, VanishingCase c, std::optional<int> k = std::nullopt);

/// Full spec for the case: the b-vector above and a from four_square of
/// the remaining norm (zero entries dropped). Throws CaseHypothesisError.
GenusSpec theorem66_spec(int m, VanishingCase c, int k);

/// Checks sum_{j != i} (a_j - a_i)^2 - (2n+1) a_i^2 = sum_j a_j^2 at every
/// fixed point i. Throws InvariantError unless the weights have odd length,
/// are pairwise distinct and sum to zero.
bool fixed_point_check(std::span<const long long> weights);

/// Specs at dimension 4n and level 2n+1+24 alpha (k = n + 12 alpha) with
/// s = 2n and every b-entry nonzero.
std::vector<GenusSpec> homotopy_cp_levels(int n, int alpha, std::optional<int> max_entry = std::nullopt);

}  // namespace stringc
