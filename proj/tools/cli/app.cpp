#include "cli/app.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rnms/diffraction.hpp"
#include "rnms/entropy.hpp"
#include "rnms/errors.hpp"
#include "rnms/geometry.hpp"
#include "rnms/induced.hpp"
#include "rnms/legality.hpp"
#include "rnms/spectrum_table.hpp"
#include "rnms/substitution.hpp"
#include "rnms/validation.hpp"

namespace rnms::cli {
namespace {

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

template <typename T>
T parse_scalar(std::string s, const char* what) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError(std::string("cannot parse ") + what + " '" + s + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

/// Writes to the file named by `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Common {
  int m = 1;
  std::string probs;
  std::uint64_t seed = 0;
  std::string out;
};

ProbabilityVector probs_or_uniform(const Common& c) {
  if (c.probs.empty()) return ProbabilityVector::uniform(c.m);
  return ProbabilityVector(parse_probs(c.probs, c.m));
}

void add_common(CLI::App* sub, Common& c, bool with_m, bool with_probs, bool with_seed) {
  if (with_m) sub->add_option("--m", c.m, "noble means parameter m >= 1")->capture_default_str();
  if (with_probs) sub->add_option("--probs", c.probs, "comma-separated p_0,...,p_m (default uniform)");
  if (with_seed) {
    sub->add_option("--seed", c.seed, "random seed")->envname("RNMS_SEED")->capture_default_str();
  }
  sub->add_option("--out", c.out, "output file (default stdout)");
}

int cmd_generate(const Common& c, int steps, const std::string& points, std::ostream& out) {
  const auto probs = probs_or_uniform(c);
  RandomSource rng(c.seed);
  const Word w = iterate_random(c.m, probs, "a", steps, rng);
  const auto counts = abelianization(w);
  Sink sink(c.out, out);
  sink.stream() << w << '\n' << "a=" << counts.a << " b=" << counts.b << '\n' << "seed=" << c.seed << '\n';
  if (!points.empty()) {
    std::ofstream pf(points);
    if (!pf) throw std::runtime_error("cannot open " + points + " for writing");
    write_point_set_csv(realize(w, c.m), pf);
  }
  return kOk;
}

int cmd_entropy(const Common& c, const std::string& m_list, const std::string& mode, int max_n, double tol,
                std::ostream& out, std::ostream& err) {
  Sink sink(c.out, out);
  auto& os = sink.stream();
  os << "m,n_or_ell,value,method\n";
  int status = kOk;
  for (int m : parse_int_list(m_list)) {
    if (mode == "series" || mode == "both") {
      const auto r = entropy_series(m, tol);
      os << m << ",," << num(r.value) << ",series\n";
    }
    if (mode == "empirical" || mode == "both") {
      for (int n = 3; n <= max_n; ++n) {
        try {
          os << m << ',' << n << ',' << num(empirical_entropy(m, n)) << ",empirical\n";
        } catch (const ResourceError& e) {
          err << "m=" << m << ": " << e.what() << '\n';
          status = kNumeric;
          break;
        }
      }
    }
  }
  return status;
}

int cmd_complexity(const Common& c, const std::string& lengths, const std::string& mode, std::ostream& out) {
  Sink sink(c.out, out);
  auto& os = sink.stream();
  os << "m,n_or_ell,value,method\n";
  for (int ell : parse_int_list(lengths)) {
    if (mode == "exact" || mode == "both") os << c.m << ',' << ell << ',' << complexity_exact(c.m, ell) << ",exact\n";
    if ((mode == "formula" || mode == "both") && ell >= c.m + 3 && ell <= 2 * c.m + 2) {
      os << c.m << ',' << ell << ',' << complexity_formula(c.m, ell) << ",formula\n";
    } else if (mode == "formula" && !(ell >= c.m + 3 && ell <= 2 * c.m + 2)) {
      throw ParameterError("the complexity formula holds only for " + std::to_string(c.m + 3) +
                           " <= l <= " + std::to_string(2 * c.m + 2));
    }
  }
  return kOk;
}

int cmd_frequencies(const Common& c, int ell, std::size_t empirical, std::ostream& out) {
  const auto probs = probs_or_uniform(c);
  probs.validate(c.m, true);
  const auto phi = word_frequencies(c.m, ell, probs);
  std::map<Word, double> emp;
  if (empirical > 0) emp = empirical_frequencies(c.m, probs, ell, empirical, c.seed);
  Sink sink(c.out, out);
  auto& os = sink.stream();
  os << "word,analytic_frequency,empirical_frequency,abs_error\n";
  for (const auto& w : phi.words) {
    os << w << ',' << num(phi(w)) << ',';
    if (empirical > 0) {
      const auto it = emp.find(w);
      const double e = it == emp.end() ? 0.0 : it->second;
      os << num(e) << ',' << num(std::abs(e - phi(w)));
    } else {
      os << ',';
    }
    os << '\n';
  }
  return kOk;
}

struct DiffractOptions {
  int n = 6;
  double kmax = 3.0;
  int grid = 2000;
  double star_cutoff = 8.0;
  int samples = 1000;
  unsigned threads = 0;
  std::string format = "csv";
  bool misprint = false;
};

int cmd_diffract(const Common& c, const DiffractOptions& d, std::ostream& out) {
  const auto probs = probs_or_uniform(c);
  probs.validate(c.m);
  if (d.format != "csv" && d.format != "json") throw ParameterError("format must be csv or json");
  const auto grid = default_k_grid(c.m, d.kmax, d.grid, d.star_cutoff);
  auto table = mc_spectrum(c.m, probs, d.n, grid, d.samples, c.seed, d.threads);
  if (d.misprint) {
    if (c.m != 1) throw UnsupportedError("the misprint diagnostic exists only for m = 1");
    for (auto& row : table.rows) {
      if (row.ac) row.ac = ac_density(row.k, d.n, probs[0], DeltaVariant::Misprint);
    }
  }
  const auto format = d.format == "csv" ? SpectrumFormat::Csv : SpectrumFormat::Json;
  if (!c.out.empty()) {
    spectrum_export(table, c.out, format);
  } else if (format == SpectrumFormat::Csv) {
    write_spectrum_csv(table, out);
  } else {
    write_spectrum_json(table, out);
  }
  return kOk;
}

int cmd_validate(bool misprint, unsigned threads, std::ostream& out) {
  ValidationOptions options;
  options.misprint_mode = misprint;
  options.threads = threads;
  bool all = true;
  run_validation(options, [&](const CheckResult& r) {
    const char* status = r.expected_divergent ? (r.passed ? "EXPECTED-DIVERGENT" : "FAIL") : (r.passed ? "PASS" : "FAIL");
    out << std::left << std::setw(20) << status << std::setw(24) << r.name << '[' << r.anchor << "] " << r.detail
        << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n"
        << std::defaultfloat << std::flush;
    all = all && r.passed;
  });
  out << (all ? "all checks passed\n" : "validation FAILED\n");
  return all ? kOk : kValidationFailed;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) {
      values.push_back(parse_scalar<int>(part, "integer"));
      continue;
    }
    const int lo = parse_scalar<int>(part.substr(0, dash), "range start");
    const int hi = parse_scalar<int>(part.substr(dash + 1), "range end");
    if (hi < lo) throw ParameterError("empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty()) throw ParameterError("empty integer list");
  return values;
}

std::vector<double> parse_probs(const std::string& text, int m) {
  std::vector<double> p;
  for (const auto& part : split(text, ',')) p.push_back(parse_scalar<double>(part, "probability"));
  if (p.size() != std::size_t(m) + 1) {
    throw ParameterError("expected " + std::to_string(m + 1) + " probabilities for m=" + std::to_string(m) + ", got " +
                         std::to_string(p.size()));
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ParameterError("probabilities must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("probabilities sum to " + num(sum) + ", not 1");
  for (double& x : p) x /= sum;
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random noble means substitutions: sampling, entropy, complexity, frequencies, diffraction", "rnms"};
  app.set_config("--config", "", "read options from a TOML/INI file; flags override it");
  app.require_subcommand(1);
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "print the parsed configuration and exit");

  Common c;

  auto* generate = app.add_subcommand("generate", "sample zeta_m^k(a)");
  add_common(generate, c, true, true, true);
  int steps = 5;
  std::string points;
  generate->add_option("--steps", steps, "number of substitution steps k")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--points", points, "also write the point set CSV (u,v,real_value,star_value) here");

  auto* entropy = app.add_subcommand("entropy", "topological entropy: series and/or log|G_n|/l_n");
  add_common(entropy, c, false, false, false);
  std::string m_list = "1";
  std::string entropy_mode = "series";
  int max_n = 10;
  double tol = 1e-9;
  entropy->add_option("--m", m_list, "values of m, e.g. 1-7 or 1,3")->capture_default_str();
  entropy->add_option("--mode", entropy_mode, "series | empirical | both")->capture_default_str()
      ->check(CLI::IsMember({"series", "empirical", "both"}));
  entropy->add_option("--max-n", max_n, "largest generation level for empirical mode")->capture_default_str();
  entropy->add_option("--tol", tol, "tail bound tolerance of the series")->capture_default_str();

  auto* complexity = app.add_subcommand("complexity", "number of legal words of each length");
  add_common(complexity, c, true, false, false);
  std::string lengths = "1-4";
  std::string complexity_mode = "both";
  complexity->add_option("--lengths", lengths, "word lengths, e.g. 1-4")->capture_default_str();
  complexity->add_option("--mode", complexity_mode, "exact | formula | both")->capture_default_str()
      ->check(CLI::IsMember({"exact", "formula", "both"}));

  auto* frequencies = app.add_subcommand("frequencies", "Perron-Frobenius word frequencies");
  add_common(frequencies, c, true, true, true);
  int ell = 2;
  std::size_t empirical = 0;
  frequencies->add_option("--ell", ell, "word length")->capture_default_str()->check(CLI::PositiveNumber);
  frequencies->add_option("--empirical", empirical, "letters in a Monte Carlo realization (0 = skip)")
      ->capture_default_str();

  auto* diffract = app.add_subcommand("diffract", "diffraction spectrum table");
  add_common(diffract, c, true, true, true);
  DiffractOptions d;
  diffract->add_option("--n", d.n, "inflation level")->capture_default_str()->check(CLI::NonNegativeNumber);
  diffract->add_option("--kmax", d.kmax, "largest k")->capture_default_str()->check(CLI::PositiveNumber);
  diffract->add_option("--grid", d.grid, "uniform grid points in [0, kmax]")->capture_default_str();
  diffract->add_option("--star-cutoff", d.star_cutoff, "largest |k'| of added Fourier module points")
      ->capture_default_str();
  diffract->add_option("--samples", d.samples, "Monte Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  diffract->add_option("--threads", d.threads, "worker threads (0 = hardware)")->capture_default_str();
  diffract->add_option("--format", d.format, "csv | json")->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  diffract->add_flag("--misprint-mode", d.misprint, "diagnostic: ac column from the misprinted Delta_n");

  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  bool validate_misprint = false;
  unsigned validate_threads = 0;
  validate->add_flag("--misprint-mode", validate_misprint, "also show the divergence of the misprinted Delta_n");
  validate->add_option("--threads", validate_threads, "worker threads (0 = hardware)")->capture_default_str();

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (dump_config) {
    out << app.config_to_str(true, false);
    return kOk;
  }

  try {
    if (c.m < 1) throw ParameterError("m must be a positive integer");
    if (*generate) return cmd_generate(c, steps, points, out);
    if (*entropy) return cmd_entropy(c, m_list, entropy_mode, max_n, tol, out, err);
    if (*complexity) return cmd_complexity(c, lengths, complexity_mode, out);
    if (*frequencies) return cmd_frequencies(c, ell, empirical, out);
    if (*diffract) return cmd_diffract(c, d, out);
    if (*validate) return cmd_validate(validate_misprint, validate_threads, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace rnms::cli
