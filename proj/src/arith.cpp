#include "stringc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stringc/errors.hpp"

namespace stringc {

namespace {

long long isqrt(long long n) {
  if (n <= 0) return 0;
  auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Nonincreasing positive vectors of length len, entries <= cap, with square
// sum exactly target.
void partitions(long long target, int len, int cap, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (len == 0) {
    if (target == 0) out.push_back(cur);
    return;
  }
  if (target < len) return;  // every remaining entry contributes >= 1
  const long long top = std::min<long long>(cap, isqrt(target - (len - 1)));
  for (long long v = top; v >= 1; --v) {
    if (v * v * len < target) break;  // remaining entries are <= v
    cur.push_back(static_cast<int>(v));
    partitions(target - v * v, len - 1, static_cast<int>(v), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::array<long long, 4> four_square(long long n) {
  if (n < 0) throw std::invalid_argument("four_square needs n >= 0");
  for (long long w = isqrt(n); w >= 0; --w) {
    const long long r1 = n - w * w;
    for (long long x = std::min(w, isqrt(r1)); x >= 0; --x) {
      const long long r2 = r1 - x * x;
      for (long long y = std::min(x, isqrt(r2)); y >= 0; --y) {
        const long long r3 = r2 - y * y;
        const long long z = isqrt(r3);
        if (z * z == r3 && z <= y) return {w, x, y, z};
      }
    }
  }
  throw InvariantError("no four-square decomposition found");  // unreachable by Lagrange
}

int default_max_entry(int k) {
  const long long t = 2LL * std::max(k, 0);
  long long r = isqrt(t);
  if (r * r < t) ++r;
  return static_cast<int>(r) + 1;
}

std::vector<GenusSpec> enumerate_specs(int dimension, int k, const EnumerationOptions& opts) {
  if (dimension < 0 || dimension % 2 != 0)
    throw UnsupportedDimension("enumerate_specs needs an even dimension");
  const int cap = opts.max_entry.value_or(default_max_entry(k));
  if (cap < 1) throw std::invalid_argument("max_entry must be at least 1");
  const long long target = dimension % 4 == 0 ? 2LL * k - 2 : 2LL * k;
  if (target < 0) return {};

  std::vector<int> s_values;
  if (opts.s) {
    s_values.push_back(*opts.s);
  } else {
    for (int s = 0; s <= dimension / 2; ++s) s_values.push_back(s);
  }

  std::set<GenusSpec> found;
  std::vector<int> cur;
  for (int r = 0; r <= opts.max_a_length; ++r) {
    for (long long a_norm = 0; 3 * a_norm <= target; ++a_norm) {
      std::vector<std::vector<int>> as;
      partitions(a_norm, r, cap, cur, as);
      for (const auto& a : as) {
        for (int s : s_values) {
          std::vector<std::vector<int>> bs;
          partitions(target - 3 * a_norm, s, cap, cur, bs);
          for (const auto& b : bs) {
            GenusSpec spec{k, a, b};
            if (validate_spec(spec, dimension).ok()) found.insert(std::move(spec));
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

VanishingCase parse_case(const std::string& name) {
  static const std::pair<const char*, VanishingCase> table[] = {
      {"A1", VanishingCase::A1}, {"A2", VanishingCase::A2}, {"A3", VanishingCase::A3},
      {"B1", VanishingCase::B1}, {"B2", VanishingCase::B2}, {"B3", VanishingCase::B3}};
  for (const auto& [n, c] : table)
    if (name == n) return c;
  throw std::invalid_argument("unknown case '" + name + "'");
}

std::string case_name(VanishingCase c) {
  switch (c) {
    case VanishingCase::A1: return "A1";
    case VanishingCase::A2: return "A2";
    case VanishingCase::A3: return "A3";
    case VanishingCase::B1: return "B1";
    case VanishingCase::B2: return "B2";
    case VanishingCase::B3: return "B3";
  }
  return "?";
}

namespace {

struct CaseData {
  int residue;    // k - m mod 3
  int min_gap;    // lower bound on k - m
  int threes;     // trailing 3-entries in b
  bool four_m;
};

CaseData case_data(VanishingCase c) {
  switch (c) {
    case VanishingCase::A1: return {0, 9, 2, true};
    case VanishingCase::A2: return {1, 1, 0, true};
    case VanishingCase::A3: return {2, 5, 1, true};
    case VanishingCase::B1: return {0, 0, 0, false};
    case VanishingCase::B2: return {1, 4, 1, false};
    case VanishingCase::B3: return {2, 8, 2, false};
  }
  throw std::invalid_argument("bad case");
}

}  // namespace

std::vector<int> theorem66_bvector(int m, VanishingCase c, std::optional<int> k) {
  if (m < 1) throw CaseHypothesisError("m must be positive");
  const CaseData d = case_data(c);
  if (d.threes > 2 * m)
    throw CaseHypothesisError("case " + case_name(c) + " needs 2m >= " + std::to_string(d.threes));
  if (k) {
    const int gap = *k - m;
    const int residue = ((gap % 3) + 3) % 3;
    if (residue != d.residue || gap < d.min_gap)
      throw CaseHypothesisError("case " + case_name(c) + " requires k-m = " + std::to_string(d.residue) +
                                " mod 3 and k-m >= " + std::to_string(d.min_gap) + ", got k-m = " +
                                std::to_string(gap));
  }
  std::vector<int> b(static_cast<std::size_t>(2 * m), 1);
  for (int i = 0; i < d.threes; ++i) b[b.size() - 1 - static_cast<std::size_t>(i)] = 3;
  return b;
}

GenusSpec theorem66_spec(int m, VanishingCase c, int k) {
  const CaseData d = case_data(c);
  GenusSpec spec;
  spec.k = k;
  spec.b = theorem66_bvector(m, c, k);
  long long b_norm = 0;
  for (int v : spec.b) b_norm += static_cast<long long>(v) * v;
  const long long rest = (d.four_m ? 2LL * k - 2 : 2LL * k) - b_norm;
  if (rest < 0 || rest % 3 != 0)
    throw CaseHypothesisError("remaining norm " + std::to_string(rest) + " is not 3 times a square sum");
  for (long long v : four_square(rest / 3))
    if (v != 0) spec.a.push_back(static_cast<int>(v));
  const int dim = d.four_m ? 4 * m : 4 * m + 2;
  if (!validate_spec(spec, dim).ok())
    throw CaseHypothesisError("constructed spec fails validation at dimension " + std::to_string(dim));
  return spec;
}

bool fixed_point_check(std::span<const long long> weights) {
  if (weights.size() % 2 == 0) throw InvariantError("weight vector must have odd length 2n+1");
  long long total = 0;
  for (long long w : weights) total += w;
  if (total != 0) throw InvariantError("weights must sum to zero");
  std::vector<long long> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvariantError("weights must be pairwise distinct");

  const auto level = static_cast<long long>(weights.size());  // 2n+1
  long long norm = 0;
  for (long long w : weights) norm += w * w;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    long long restricted = -level * weights[i] * weights[i];
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (j != i) restricted += (weights[j] - weights[i]) * (weights[j] - weights[i]);
    if (restricted != norm) return false;
  }
  return true;
}

std::vector<GenusSpec> homotopy_cp_levels(int n, int alpha, std::optional<int> max_entry) {
  if (n < 1 || alpha < 1) throw std::invalid_argument("homotopy_cp_levels needs n >= 1 and alpha >= 1");
  EnumerationOptions opts;
  opts.s = 2 * n;
  opts.max_entry = max_entry;
  return enumerate_specs(4 * n, n + 12 * alpha, opts);
}

}  // namespace stringc
