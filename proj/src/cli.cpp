#include "stringc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stringc/arith.hpp"
#include "stringc/errors.hpp"
#include "stringc/genus.hpp"
#include "stringc/modforms.hpp"
#include "stringc/theta.hpp"

namespace stringc {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kDefaultOrder = 20;
constexpr const char* kConventionTwoPi = "e^{2 pi i tau}";
constexpr const char* kConventionPi = "e^{pi i tau}";

struct Options {
  std::string model = "builtin:point";
  int k = 0;
  std::vector<int> a, b;
  std::optional<int> order;
  std::string format = "json";
  std::string grid = "pi";
  bool cross_check = false;
  bool modular = false;
  int max_weight = 12;
  int samples = 20;
  std::uint64_t seed = 7;
  int terms = 60;
  int dim = 0;
  std::optional<int> s;
  std::optional<int> max_entry;
  int max_a_length = 4;
  std::optional<int> weight;
  std::string input = "-";
  int k_min = 0;
  int k_max = 10;
};

// Thrown for malformed invocations; mapped to the invalid-spec exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

int resolve_order(const std::optional<int>& flag) {
  int order = kDefaultOrder;
  if (flag) {
    order = *flag;
  } else if (const char* env = std::getenv("STRINGC_GENUS_ORDER")) {
    try {
      order = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("STRINGC_GENUS_ORDER is not an integer: ") + env);
    }
  }
  if (order < 1) throw UsageError("order must be at least 1");
  return order;
}

ManifoldModel load_model(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    try {
      return builtin_model(source.substr(prefix.size()));
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
  std::ifstream in(source);
  if (!in) throw UsageError("cannot open manifest '" + source + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("manifest is not valid JSON: ") + ex.what());
  }
  return build_formal(j);
}

nlohmann::json read_json_input(const std::string& path) {
  try {
    if (path == "-") return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input '" + path + "'");
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("input is not valid JSON: ") + ex.what());
  }
}

QSeries on_output_grid(const QSeries& two_pi_series, const std::string& grid) {
  return grid == "pi" ? rescale(two_pi_series, 2, 1) : two_pi_series;
}

const char* convention(const std::string& grid) { return grid == "pi" ? kConventionPi : kConventionTwoPi; }

void write_csv(std::ostream& out, const QSeries& s) {
  out << "exp_num,exp_den,coeff_num,coeff_den\n";
  for (const auto& [e, c] : s.terms()) {
    const Rational exp(e, s.den());
    out << exp.get_num() << ',' << exp.get_den() << ',' << c.get_num() << ',' << c.get_den() << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_genus(const Options& o, std::ostream& out, std::ostream& err) {
  const ManifoldModel m = load_model(o.model);
  const GenusSpec spec{o.k, o.a, o.b};
  const int order = resolve_order(o.order);

  const SpecReport report = validate_spec(spec, m.dimension);
  if (!report.ok()) {
    ojson j;
    j["error"] = {{"type", "SpecViolation"}, {"violations", report.violations}};
    j["model"] = m.name;
    j["spec"] = to_json(spec);
    out << j.dump(2) << '\n';
    return kExitInvalidSpec;
  }
  const auto warnings = spec_warnings(m, spec);
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  std::optional<CrossCheckReport> cc;
  QSeries genus;
  if (o.cross_check) {
    cc = cross_check(m, spec, order);
    genus = cc->theta_genus;
  } else {
    genus = witten_genus(m, spec, order);
  }
  const QSeries shown = on_output_grid(genus, o.grid);

  if (o.format == "csv") {
    write_csv(out, shown);
    return kExitOk;
  }

  ojson j;
  j["model"] = m.name;
  j["spec"] = to_json(spec);
  j["q_convention"] = convention(o.grid);
  j["series"] = to_json(shown);
  ojson checks;
  checks["level_condition"] = stringc_level_check(m, spec.k);
  checks["halfint"] = halfint_coefficient_check(genus);
  if (o.modular) {
    const WeightDetection wd = detect_weight(genus, o.max_weight, order);
    checks["modular_weight"] = wd.weight ? ojson(*wd.weight) : ojson(nullptr);
    checks["zero_series"] = wd.zero_series;
  } else {
    checks["modular_weight"] = nullptr;
  }
  j["checks"] = std::move(checks);
  j["warnings"] = warnings;
  if (cc) {
    ojson c = to_json(*cc);
    for (const char* key : {"theta_genus", "bundle_genus", "integrated_difference"}) {
      const QSeries& s = key == std::string("theta_genus")    ? cc->theta_genus
                         : key == std::string("bundle_genus") ? cc->bundle_genus
                                                              : cc->integrated_difference;
      c[key] = to_json(on_output_grid(s, o.grid));
    }
    j["cross_check"] = std::move(c);
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  EnumerationOptions opts;
  opts.s = o.s;
  opts.max_entry = o.max_entry;
  opts.max_a_length = o.max_a_length;
  for (const auto& spec : enumerate_specs(o.dim, o.k, opts)) out << to_json(spec).dump() << '\n';
  return kExitOk;
}

RingPtr scalar_ring(int nilpotency) {
  return std::make_shared<const CohomologyModel>(
      std::vector<Generator>{{"t", 2, nilpotency}}, 2 * (nilpotency - 1),
      std::vector<std::pair<CohomologyModel::Monomial, Rational>>{{{nilpotency - 1}, Rational(1)}});
}

int cmd_verify_identities(const Options& o, std::ostream& out) {
  const int order = o.order.value_or(50);
  if (order < 1) throw UsageError("order must be at least 1");
  ojson results = ojson::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass) {
    results.push_back({{"identity", name}, {"pass", pass}});
    all = all && pass;
  };

  record("euler_product", same_value(euler_product(order), QSeries::constant(1, 1, order)));

  const QSeries prime = theta_prime_null_over_pi(order).series;
  const QSeries nulls =
      theta_null(1, order).series * theta_null(2, order).series * theta_null(3, order).series;
  record("jacobi_theta_nulls", agree_up_to_trunc(prime, nulls) && prime.trunc() <= nulls.trunc());

  const QSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
  const QSeries disc = (e4 * e4 * e4 - e6 * e6) * Rational(1, 1728);
  record("discriminant_product", agree_up_to_trunc(disc, delta_product(order)));

  const int parity_order = std::min(order, 10);
  const RingPtr ring = scalar_ring(7);
  const RingElement w = RingElement::generator(ring, 0) * Rational(3, 2);
  record("phi0_even", phi0(w, parity_order) == phi0(-w, parity_order));
  record("phi1_even", phi1(w, parity_order) == phi1(-w, parity_order));
  record("phi2_even", phi2(w, parity_order) == phi2(-w, parity_order));
  record("phi3_even", phi3(w, parity_order) == phi3(-w, parity_order));
  record("psi_odd", psi(w, parity_order) == -psi(-w, parity_order));

  ojson j;
  j["order"] = order;
  j["identities"] = std::move(results);
  j["all_pass"] = all;
  out << j.dump(2) << '\n';
  return all ? kExitOk : kExitComputation;
}

// Uniform double in [lo, hi) from the top 53 bits; identical on every platform.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int cmd_theta_transform(const Options& o, std::ostream& out) {
  if (o.samples < 1) throw UsageError("samples must be at least 1");
  if (o.terms < 1) throw UsageError("terms must be at least 1");
  std::mt19937_64 rng(o.seed);
  std::vector<double> worst(std::size(kAllLaws), 0.0);
  for (int i = 0; i < o.samples; ++i) {
    const std::complex<double> tau(uniform(rng, -0.5, 0.5), uniform(rng, 0.8, 1.5));
    const std::complex<double> v(uniform(rng, -0.5, 0.5), uniform(rng, -0.2, 0.2));
    for (std::size_t l = 0; l < std::size(kAllLaws); ++l)
      worst[l] = std::max(worst[l], transform_residual(kAllLaws[l], v, tau, o.terms));
  }
  ojson laws = ojson::array();
  double overall = 0.0;
  for (std::size_t l = 0; l < std::size(kAllLaws); ++l) {
    laws.push_back({{"law", law_name(kAllLaws[l])}, {"max_residual", worst[l]}});
    overall = std::max(overall, worst[l]);
  }
  ojson j;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  j["terms"] = o.terms;
  j["laws"] = std::move(laws);
  j["max_residual"] = overall;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_modform_check(const Options& o, std::ostream& out) {
  const nlohmann::json input = read_json_input(o.input);
  QSeries series;
  if (input.contains("series")) {
    series = qseries_from_json(input.at("series"));
    if (input.value("q_convention", std::string(kConventionTwoPi)) == kConventionPi)
      series = rescale(series, 1, 2);
  } else {
    series = qseries_from_json(input);
  }
  const int order = o.order.value_or(static_cast<int>(std::min<Exponent>(series.trunc() / series.den(), 1000)));
  if (o.weight) {
    const MembershipResult r = membership(series, *o.weight, order);
    out << to_json(r).dump(2) << '\n';
    return kExitOk;
  }
  const WeightDetection wd = detect_weight(series, o.max_weight, order);
  ojson j;
  if (wd.zero_series) {
    j["weight"] = 0;
    j["coordinates"] = ojson::object();
    j["zero_series"] = true;
  } else if (wd.result) {
    j = to_json(*wd.result);
    j["zero_series"] = false;
  } else {
    j["member"] = false;
    j["max_weight"] = o.max_weight;
    j["first_bad_exp"] = nullptr;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_model_show(const Options& o, std::ostream& out) {
  const ManifoldModel m = load_model(o.model);
  if (o.k_min > o.k_max) throw UsageError("k-min exceeds k-max");
  const RingElement c = m.det_class;
  ojson j;
  j["model"] = m.name;
  j["dimension"] = m.dimension;
  j["manifest"] = to_manifest(m);
  j["p1"] = first_pontryagin(m).to_string();
  j["c"] = c.to_string();
  j["c_squared"] = (c * c).to_string();
  j["c_top_integral"] = format_rational(integrate(m, c.pow(static_cast<unsigned>(m.dimension / 2))));
  ojson levels = ojson::array();
  ojson obstructions = ojson::array();
  for (int k = o.k_min; k <= o.k_max; ++k) {
    if (stringc_level_check(m, k)) levels.push_back(k);
    obstructions.push_back({{"k", k}, {"level", 2 * k + 1}, {"class", obstruction_class(m, k).to_string()}});
  }
  j["string_c_levels"] = std::move(levels);
  j["obstruction_classes"] = std::move(obstructions);
  out << j.dump(2) << '\n';
  return kExitOk;
}

void print_error(std::ostream& out, const std::string& type, const std::string& message) {
  ojson j;
  j["error"] = {{"type", type}, {"message", message}};
  out << j.dump(2) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized Witten genera of String^c models as exact q-series.\n"
               "Chern roots and c are given in topological normalization x = 2 pi i z."};
  app.require_subcommand(1);

  auto add_order = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--order", o.order, help);
  };

  auto* genus = app.add_subcommand("genus", "Compute a type (2k+1; a, b) Witten genus");
  genus->add_option("--model", o.model, "builtin:NAME or a manifest path")->required();
  genus->add_option("--k", o.k, "Level is 2k+1")->required();
  genus->add_option("--a", o.a, "Comma separated a-vector")->delimiter(',');
  genus->add_option("--b", o.b, "Comma separated b-vector")->delimiter(',');
  add_order(genus, "Order in e^{2 pi i tau} (default 20, env STRINGC_GENUS_ORDER)");
  genus->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  genus->add_option("--grid", o.grid, "Output variable: pi = e^{pi i tau}, 2pi = e^{2 pi i tau}")
      ->check(CLI::IsMember({"pi", "2pi"}));
  genus->add_flag("--cross-check", o.cross_check, "Also run the bundle pipeline and diff");
  genus->add_flag("--modular", o.modular, "Detect the modular weight of the result");
  genus->add_option("--max-weight", o.max_weight);

  auto* enumerate = app.add_subcommand("enumerate", "List admissible (a, b) for a level");
  enumerate->add_option("--dim", o.dim)->required();
  enumerate->add_option("--k", o.k)->required();
  enumerate->add_option("--s", o.s, "Fixed length of b");
  enumerate->add_option("--max-entry", o.max_entry);
  enumerate->add_option("--max-a-length", o.max_a_length);

  auto* verify = app.add_subcommand("verify-identities", "Exact theta, Euler and parity identities");
  add_order(verify, "Order in q (default 50)");

  auto* transform = app.add_subcommand("theta-transform", "Numeric transformation laws at random points");
  transform->add_option("--samples", o.samples);
  transform->add_option("--seed", o.seed);
  transform->add_option("--terms", o.terms, "Product terms per theta evaluation");

  auto* modform = app.add_subcommand("modform-check", "Level-one membership of a q-series");
  modform->add_option("--input", o.input, "QSeries or genus JSON file, - for stdin");
  modform->add_option("--weight", o.weight);
  modform->add_option("--max-weight", o.max_weight);
  add_order(modform, "Coefficients to use (default: all known)");

  auto* show = app.add_subcommand("model-show", "Characteristic classes and level diagnosis");
  show->add_option("--model", o.model, "builtin:NAME or a manifest path")->required();
  show->add_option("--k-min", o.k_min);
  show->add_option("--k-max", o.k_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << ex.what() << '\n';
    print_error(out, "UsageError", ex.what());
    return kExitInvalidSpec;
  }

  try {
    if (*genus) return cmd_genus(o, out, err);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*verify) return cmd_verify_identities(o, out);
    if (*transform) return cmd_theta_transform(o, out);
    if (*modform) return cmd_modform_check(o, out);
    if (*show) return cmd_model_show(o, out);
  } catch (const UsageError& ex) {
    print_error(out, "UsageError", ex.what());
    return kExitInvalidSpec;
  } catch (const SpecViolation& ex) {
    print_error(out, "SpecViolation", ex.what());
    return kExitInvalidSpec;
  } catch (const SchemaError& ex) {
    print_error(out, "SchemaError", ex.what());
    return kExitInvalidSpec;
  } catch (const UnsupportedDimension& ex) {
    print_error(out, "UnsupportedDimension", ex.what());
    return kExitInvalidSpec;
  } catch (const GradingError& ex) {
    print_error(out, "GradingError", ex.what());
    return kExitInvalidSpec;
  } catch (const IntegrationDegreeError& ex) {
    print_error(out, "IntegrationDegreeError", ex.what());
    return kExitInvalidSpec;
  } catch (const std::exception& ex) {
    print_error(out, "ComputationError", ex.what());
    return kExitComputation;
  }
  return kExitInvalidSpec;
}

}  // namespace stringc
