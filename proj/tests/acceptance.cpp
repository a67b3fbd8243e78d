#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "stringc/arith.hpp"
#include "stringc/cli.hpp"
#include "stringc/errors.hpp"
#include "stringc/genus.hpp"
#include "stringc/modforms.hpp"
#include "stringc/theta.hpp"

using namespace stringc;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(budget_s) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d: %s | %s | %.3f s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// shared between criteria 5-7
QSeries w_cp2, w_cp4, w_m8;

std::string run_cli_capture(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"stringc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "Euler product identity to q^50", 1.0, [] {
    const QSeries e = euler_product(50);
    const bool ok = same_value(e, QSeries::constant(1, 1, 50));
    return Outcome{ok, "terms=" + std::to_string(e.terms().size()) + " trunc=" + std::to_string(e.trunc())};
  });

  criterion(2, "Jacobi identity on the q^{1/8} grid to q^20", 1.0, [] {
    const QSeries lhs = theta_prime_null_over_pi(20).series;
    const QSeries rhs = theta_null(1, 20).series * theta_null(2, 20).series * theta_null(3, 20).series;
    const bool ok = lhs.den() == 8 && lhs.trunc() >= 160 && agree_up_to_trunc(lhs, rhs);
    return Outcome{ok, "den=" + std::to_string(lhs.den()) + " trunc=" + std::to_string(lhs.trunc())};
  });

  criterion(3, "transformation laws, 20 seeded samples, 60 terms", 1.0, [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.8, 1.5), vim(-0.2, 0.2);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const cd tau(re(rng), im(rng));
      const cd v(re(rng), vim(rng));
      for (TransformLaw law : kAllLaws) worst = std::max(worst, transform_residual(law, v, tau, 60));
    }
    return Outcome{worst < 1e-9, "max residual " + fmt(worst)};
  });

  criterion(4, "plain Witten genus: CP2 q^0 = -1/8, CP1 = 0", 0, [] {
    const QSeries cp2 = plain_witten_genus(build_cp_balanced(2), 10);
    const QSeries cp1 = plain_witten_genus(build_cp_standard(1), 10);
    const bool ok = cp2.coeff(0) == Rational(-1, 8) && cp1.is_zero() && cp1.trunc() >= 20;
    return Outcome{ok, "CP2 q^0 = " + format_rational(cp2.coeff(0)) + ", CP1 zero=" + (cp1.is_zero() ? "yes" : "no")};
  });

  criterion(5, "vanishing: level 3 on CP2, level 5 b=(1,1) on CP4, to q^20", 30.0, [] {
    w_cp2 = witten_genus(build_cp_balanced(2), {1, {}, {}}, 20);
    w_cp4 = witten_genus(build_cp_balanced(4), {2, {}, {1, 1}}, 20);
    const bool ok = w_cp2.is_zero() && w_cp4.is_zero() && w_cp2.trunc() >= 40 && w_cp4.trunc() >= 40;
    return Outcome{ok, std::string("CP2 ") + (w_cp2.is_zero() ? "zero" : "nonzero") + ", CP4 " +
                           (w_cp4.is_zero() ? "zero" : "nonzero")};
  });

  criterion(6, "level 7 a=(1) b=(1) on the formal dim-8 model is weight 4", 0, [] {
    w_m8 = witten_genus(builtin_model("formal-m8"), {3, {1}, {1}}, 20);
    const QSeries g = rescale(w_m8, 2, 1);
    const bool grid = on_grid(w_m8, 1) || on_grid(g, 1);
    const MembershipResult r = membership(g, 4, 20);
    const bool ok = grid && r.member && r.verified >= kRequiredSurplus;
    std::string lambda = r.coordinates.empty() ? "?" : format_rational(r.coordinates[0]);
    return Outcome{ok, "lambda = " + lambda + ", verified " + std::to_string(r.verified) + " surplus coefficients" +
                           (g.is_zero() ? " (series is identically zero)" : "")};
  });

  criterion(7, "Z[1/2] coefficients for the genera of criteria 5-6", 0, [] {
    const bool ok = halfint_coefficient_check(w_cp2) && halfint_coefficient_check(w_cp4) &&
                    halfint_coefficient_check(w_m8);
    return Outcome{ok, "checked 3 series"};
  });

  criterion(8, "bundle and theta pipelines agree", 0, [] {
    std::string detail;
    bool ok = true;
    for (const char* name : {"cp2-balanced", "cp4-balanced", "cp2-standard", "cp4-standard"}) {
      const ManifoldModel m = builtin_model(name);
      const bool eq = plain_witten_form_bundle(m, 10) == plain_witten_form(m, 10);
      ok = ok && eq;
      detail += std::string(name) + (eq ? " equal; " : " DIFFER; ");
    }
    const CrossCheckReport a = cross_check(build_cp_balanced(2), {1, {}, {}}, 10);
    const CrossCheckReport b = cross_check(build_cp_balanced(4), {2, {}, {1, 1}}, 10);
    ok = ok && a.integrated_difference.is_zero() && b.integrated_difference.is_zero();
    detail += "twisted integrated difference " + std::string(a.integrated_equal && b.integrated_equal ? "0" : "nonzero");
    return Outcome{ok, detail};
  });

  criterion(9, "four_square vs exhaustive search, enumeration at dim 8 k=2 s=2", 0, [] {
    int bad = 0;
    for (long long n = 0; n <= 1000; ++n) {
      std::array<long long, 4> best{-1, -1, -1, -1};
      for (long long w = 0; w * w <= n; ++w)
        for (long long x = 0; x <= w; ++x)
          for (long long y = 0; y <= x; ++y)
            for (long long z = 0; z <= y; ++z)
              if (w * w + x * x + y * y + z * z == n) best = std::max(best, std::array<long long, 4>{w, x, y, z});
      if (four_square(n) != best) ++bad;
    }
    const auto specs = enumerate_specs(8, 2, {.s = 2});
    const bool enum_ok = specs == std::vector<GenusSpec>{{2, {}, {1, 1}}};
    return Outcome{bad == 0 && enum_ok,
                   std::to_string(bad) + " mismatches; enumeration " + (enum_ok ? "{a=(), b=(1,1)}" : "wrong")};
  });

  criterion(10, "fixed-point identity on 100 random weight vectors", 0, [] {
    std::mt19937_64 rng(10);
    int passed = 0;
    while (passed < 100) {
      const int n = static_cast<int>(rng() % 4) + 1;
      std::vector<long long> w;
      long long sum = 0;
      for (int i = 0; i < 2 * n; ++i) {
        w.push_back(static_cast<long long>(rng() % 41) - 20);
        sum += w.back();
      }
      w.push_back(-sum);
      if (std::abs(w.back()) > 20 || std::set<long long>(w.begin(), w.end()).size() != w.size()) continue;
      if (!fixed_point_check(w)) return Outcome{false, "identity failed"};
      ++passed;
    }
    int raised = 0;
    const std::vector<std::vector<long long>> invalid{{1, 1, -2}, {1, 2, 3}, {5, 0, 0}, {2, -1, 0}};
    for (const auto& w : invalid) {
      try {
        fixed_point_check(w);
      } catch (const InvariantError&) {
        ++raised;
      }
    }
    return Outcome{raised == 4, "100 valid vectors pass, " + std::to_string(raised) + "/4 invalid raise"};
  });

  criterion(11, "nonvanishing b-vectors and homotopy CP levels", 0, [] {
    const bool vec = theorem66_bvector(2, VanishingCase::A1) == std::vector<int>{1, 1, 3, 3} &&
                     theorem66_bvector(3, VanishingCase::A2) == std::vector<int>{1, 1, 1, 1, 1, 1} &&
                     theorem66_bvector(1, VanishingCase::A3) == std::vector<int>{1, 3};
    int good = 0;
    const auto specs = homotopy_cp_levels(1, 1);
    for (const auto& s : specs) {
      long long norm = 0;
      bool nonzero = true;
      for (int a : s.a) norm += 3LL * a * a;
      for (int b : s.b) {
        norm += 1LL * b * b;
        nonzero = nonzero && b != 0;
      }
      if (nonzero && norm == 24) ++good;
    }
    return Outcome{vec && good > 0, std::to_string(good) + "/" + std::to_string(specs.size()) + " specs solve 24"};
  });

  criterion(12, "repeated runs give byte-identical JSON", 0, [] {
    const std::vector<std::vector<std::string>> runs{
        {"verify-identities", "--order", "30"},
        {"theta-transform", "--samples", "20", "--seed", "7"},
        {"enumerate", "--dim", "8", "--k", "5"},
        {"genus", "--model", "builtin:cp4-balanced", "--k", "2", "--b", "1,1", "--order", "6", "--cross-check"},
        {"genus", "--model", "builtin:formal-m8", "--k", "3", "--a", "1", "--b", "1", "--order", "10", "--modular"},
        {"model-show", "--model", "builtin:cp4-balanced"}};
    int same = 0;
    for (const auto& args : runs) {
      int c1 = 0, c2 = 0;
      const std::string first = run_cli_capture(args, c1);
      const std::string second = run_cli_capture(args, c2);
      if (c1 == 0 && c2 == 0 && first == second && !first.empty()) ++same;
    }
    return Outcome{same == static_cast<int>(runs.size()),
                   std::to_string(same) + "/" + std::to_string(runs.size()) + " commands identical"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
