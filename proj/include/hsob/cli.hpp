#ifndef HSOB_CLI_HPP
#define HSOB_CLI_HPP

// Run configuration parsing and the four run modes (verify, sweep, sequences,
// interpolate). Output is CSV preceded by a "# seed=<u64>" line.
//
// Config format: "[section]" headers, "key = value" lines, '#' comments.
//
//   [run]          command, seed, jobs
//   [problem.N]    sigma, b, p
//   [sweep]        K (comma list), tol, monotone_tol
//   [verify]       n_random, K_random
//   [sequences]    families, w, n
//   [interpolate]  Y, ny, nx, phi (h<k> | random), K, n_phi
//   [output]       path
//
// Multipliers: affine(a, b) | poly(c0, c1, ...) | sampled(name, order=M).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hsob/coeff_vec.hpp"
#include "hsob/hermite.hpp"
#include "hsob/interpolation.hpp"
#include "hsob/monotonicity.hpp"
#include "hsob/multiplier.hpp"
#include "hsob/sequences.hpp"

namespace hsob::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Command { Verify, Sweep, Sequences, Interpolate };

inline std::optional<Command> parse_command(std::string_view s) {
  if (s == "verify") return Command::Verify;
  if (s == "sweep") return Command::Sweep;
  if (s == "sequences") return Command::Sequences;
  if (s == "interpolate") return Command::Interpolate;
  return std::nullopt;
}

struct ProblemConfig {
  std::string name;
  MonoProblem problem;
};

struct RunConfig {
  std::optional<Command> command;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<ProblemConfig> problems;

  std::vector<int> k_schedule = default_k_schedule();
  double tol = 1e-6;
  double monotone_tol = 1e-10;

  int n_random = 100;
  int k_random = 32;

  std::vector<SequenceName> families{kAllSequences.begin(), kAllSequences.end()};
  std::vector<Complex> ws{Complex(1.0), Complex(-1.0), Complex(2.5), Complex(1.0, 2.0)};
  std::vector<std::size_t> ns{1, 10, 100, 1000, 10000, 100000, 1000000};

  double Y = 20.0;
  int ny = 401;
  int nx = 11;
  std::string phi = "h0";
  int phi_K = 32;
  int n_phi = 1;

  std::optional<std::string> output_path;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view s, int line) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ConfigError(line, "malformed number '" + t + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s, int line) {
  const std::string t = trim(s);
  Int v{};
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError(line, "malformed integer '" + t + "'");
  }
  return v;
}

}  // namespace detail

/// "a", "bi", "a+bi", "a-bi", "i", "-i".
inline Complex parse_complex(std::string_view text, int line = 0) {
  std::string s = detail::trim(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw ConfigError(line, "empty complex number");
  if (s.back() != 'i') return {detail::parse_double(s, line), 0.0};
  s.pop_back();
  // split at the last sign that is not an exponent sign or the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [line](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::parse_double(t, line);
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {detail::parse_double(s.substr(0, split), line), imag_of(s.substr(split))};
}

inline std::string format_complex(Complex w) {
  if (w.imag() == 0.0) return format_double(w.real());
  const std::string im = format_double(w.imag());
  return format_double(w.real()) + (w.imag() < 0.0 ? "" : "+") + im + "i";
}

inline MultiplierSpec parse_multiplier(std::string_view text, int line = 0) {
  const std::string s = detail::trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw ConfigError(line, "malformed multiplier '" + s + "'");
  }
  const std::string kind = detail::trim(std::string_view(s).substr(0, open));
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  const auto args = detail::split(inner, ',');
  if (kind == "affine") {
    if (args.size() != 2) throw ConfigError(line, "affine(a, b) takes exactly 2 arguments");
    return MultiplierSpec::affine(detail::parse_double(args[0], line), detail::parse_double(args[1], line));
  }
  if (kind == "poly") {
    if (detail::trim(inner).empty()) throw ConfigError(line, "poly(...) needs at least one coefficient");
    std::vector<double> c;
    for (const auto& a : args) c.push_back(detail::parse_double(a, line));
    return MultiplierSpec::polynomial(std::move(c));
  }
  if (kind == "sampled") {
    if (args.size() != 2) throw ConfigError(line, "sampled(name, order=M) takes exactly 2 arguments");
    const auto eq = args[1].find('=');
    if (eq == std::string::npos || detail::trim(std::string_view(args[1]).substr(0, eq)) != "order") {
      throw ConfigError(line, "sampled(...) second argument must be order=M");
    }
    const int order = detail::parse_int<int>(std::string_view(args[1]).substr(eq + 1), line);
    if (order < 1) throw ConfigError(line, "sampled order must be >= 1");
    if (!lookup_sampled(args[0])) {
      throw ConfigError(line, "unknown sampled function '" + args[0] + "' (known: tanh, sin, atan, gauss_bump)");
    }
    return MultiplierSpec::sampled(args[0], order);
  }
  throw ConfigError(line, "unknown multiplier kind '" + kind + "'");
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::map<std::string, std::size_t> problem_index;
  std::map<std::string, int> seen;  // section.key -> line
  std::vector<std::pair<bool, bool>> problem_has;  // (sigma, b)
  std::vector<int> problem_line;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw ConfigError(line, "malformed section header");
      section = detail::trim(std::string_view(l).substr(1, l.size() - 2));
      if (section.rfind("problem.", 0) == 0) {
        if (section.size() == 8) throw ConfigError(line, "problem section needs a name");
        if (problem_index.count(section)) throw ConfigError(line, "duplicate section [" + section + "]");
        problem_index[section] = cfg.problems.size();
        cfg.problems.push_back({section.substr(8), {}});
        problem_has.emplace_back(false, false);
        problem_line.push_back(line);
      } else if (section != "run" && section != "sweep" && section != "verify" && section != "sequences" &&
                 section != "interpolate" && section != "output") {
        throw ConfigError(line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    const std::string key = detail::trim(std::string_view(l).substr(0, eq));
    const std::string value = detail::trim(std::string_view(l).substr(eq + 1));
    if (section.empty()) throw ConfigError(line, "key '" + key + "' outside any section");
    if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
    const std::string full = section + "." + key;
    if (seen.count(full)) throw ConfigError(line, "duplicate key '" + key + "'");
    seen[full] = line;

    auto unknown = [&] { return ConfigError(line, "unknown key '" + key + "' in [" + section + "]"); };
    auto positive = [&](double v) {
      if (!(v > 0.0)) throw ConfigError(line, "'" + key + "' must be positive");
      return v;
    };

    if (section.rfind("problem.", 0) == 0) {
      const std::size_t idx = problem_index[section];
      auto& prob = cfg.problems[idx].problem;
      if (key == "sigma") {
        prob.sigma = parse_multiplier(value, line);
        problem_has[idx].first = true;
      } else if (key == "b") {
        prob.b = parse_multiplier(value, line);
        problem_has[idx].second = true;
      } else if (key == "p") {
        prob.p = detail::parse_double(value, line);
      } else {
        throw unknown();
      }
    } else if (section == "run") {
      if (key == "command") {
        cfg.command = parse_command(value);
        if (!cfg.command) throw ConfigError(line, "unknown command '" + value + "'");
      } else if (key == "seed") {
        cfg.seed = detail::parse_int<std::uint64_t>(value, line);
      } else if (key == "jobs") {
        cfg.jobs = detail::parse_int<int>(value, line);
        if (cfg.jobs < 1) throw ConfigError(line, "jobs must be >= 1");
      } else {
        throw unknown();
      }
    } else if (section == "sweep") {
      if (key == "K") {
        cfg.k_schedule.clear();
        for (const auto& k : detail::split(value, ',')) {
          const int kv = detail::parse_int<int>(k, line);
          if (kv < 1) throw ConfigError(line, "K values must be >= 1");
          if (!cfg.k_schedule.empty() && kv <= cfg.k_schedule.back()) {
            throw ConfigError(line, "K schedule must be strictly increasing");
          }
          cfg.k_schedule.push_back(kv);
        }
      } else if (key == "tol") {
        cfg.tol = positive(detail::parse_double(value, line));
      } else if (key == "monotone_tol") {
        cfg.monotone_tol = positive(detail::parse_double(value, line));
      } else {
        throw unknown();
      }
    } else if (section == "verify") {
      if (key == "n_random") {
        cfg.n_random = detail::parse_int<int>(value, line);
        if (cfg.n_random < 1) throw ConfigError(line, "n_random must be >= 1");
      } else if (key == "K_random") {
        cfg.k_random = detail::parse_int<int>(value, line);
        if (cfg.k_random < 1) throw ConfigError(line, "K_random must be >= 1");
      } else {
        throw unknown();
      }
    } else if (section == "sequences") {
      if (key == "families") {
        cfg.families.clear();
        for (const auto& f : detail::split(value, ',')) {
          const auto fam = parse_sequence_name(f);
          if (!fam) throw ConfigError(line, "unknown sequence family '" + f + "'");
          cfg.families.push_back(*fam);
        }
      } else if (key == "w") {
        cfg.ws.clear();
        for (const auto& w : detail::split(value, ',')) cfg.ws.push_back(parse_complex(w, line));
      } else if (key == "n") {
        cfg.ns.clear();
        for (const auto& n : detail::split(value, ',')) cfg.ns.push_back(detail::parse_int<std::size_t>(n, line));
      } else {
        throw unknown();
      }
    } else if (section == "interpolate") {
      if (key == "Y") {
        cfg.Y = detail::parse_double(value, line);
        if (cfg.Y < 10.0) throw ConfigError(line, "Y must be >= 10");
      } else if (key == "ny") {
        cfg.ny = detail::parse_int<int>(value, line);
        if (cfg.ny < 101 || cfg.ny % 2 == 0) throw ConfigError(line, "ny must be odd and >= 101");
      } else if (key == "nx") {
        cfg.nx = detail::parse_int<int>(value, line);
        if (cfg.nx < 3 || cfg.nx % 2 == 0) throw ConfigError(line, "nx must be odd and >= 3");
      } else if (key == "phi") {
        if (value != "random" && !(value.size() > 1 && value[0] == 'h')) {
          throw ConfigError(line, "phi must be h<k> or random");
        }
        if (value != "random") detail::parse_int<int>(std::string_view(value).substr(1), line);
        cfg.phi = value;
      } else if (key == "K") {
        cfg.phi_K = detail::parse_int<int>(value, line);
        if (cfg.phi_K < 1) throw ConfigError(line, "K must be >= 1");
      } else if (key == "n_phi") {
        cfg.n_phi = detail::parse_int<int>(value, line);
        if (cfg.n_phi < 1) throw ConfigError(line, "n_phi must be >= 1");
      } else {
        throw unknown();
      }
    } else if (section == "output") {
      if (key == "path") {
        cfg.output_path = value;
      } else {
        throw unknown();
      }
    }
  }
  for (std::size_t i = 0; i < cfg.problems.size(); ++i) {
    if (!problem_has[i].first || !problem_has[i].second) {
      throw ConfigError(problem_line[i], "problem '" + cfg.problems[i].name + "' needs both sigma and b");
    }
  }
  return cfg;
}

// --- run modes ---------------------------------------------------------------

namespace detail {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results are
/// written by index, so output order does not depend on scheduling.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += jobs) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline bool is_constant(const MultiplierSpec& m) {
  const auto d = m.degree();
  return d && *d <= 0;
}

inline bool has_bounded_derivative(const MultiplierSpec& m) {
  if (const auto* s = std::get_if<SampledMultiplier>(&m.kind())) return s->derivative_bound.has_value();
  const auto d = m.degree();
  return d && *d <= 1;
}

inline double affine_slope(const MultiplierSpec& m) {
  const auto c = *m.polynomial_coeffs();
  return c.size() > 1 ? c[1] : 0.0;
}

struct CheckRow {
  std::string problem;
  std::string check;
  double value;
  double threshold;
  bool passed;
};

inline RealCoeffVec unit_random(int support, int alloc, double p, std::mt19937_64& rng) {
  RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(support), static_cast<std::size_t>(alloc), rng);
  phi *= 1.0 / norm_p(phi, p);
  return phi;
}

inline std::vector<CheckRow> verify_problem(const ProblemConfig& pc, const RunConfig& cfg, std::uint64_t seed) {
  const MonoProblem& prob = pc.problem;
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  const int growth = form_band_growth(prob);
  const int alloc = cfg.k_random + growth;
  const bool polynomial_kinds = !prob.sigma.is_sampled() && !prob.b.is_sampled();

  if (prob.p == 0.0 && polynomial_kinds && is_constant(prob.sigma) && is_constant(prob.b)) {
    double worst = 0.0;
    for (int t = 0; t < cfg.n_random; ++t) {
      const RealCoeffVec phi = unit_random(cfg.k_random, alloc, 0.0, rng);
      worst = std::max(worst, std::abs(mono_form(prob, phi)));
    }
    rows.push_back({pc.name, "constant_nullity", worst, 1e-10, worst <= 1e-10});
  }
  if (prob.p == 0.0 && polynomial_kinds && has_bounded_derivative(prob.sigma) && has_bounded_derivative(prob.b)) {
    const QuadratureRule rule = gauss_hermite(2 * alloc + 8);
    double worst = 0.0;
    for (int t = 0; t < cfg.n_random; ++t) {
      const RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(cfg.k_random), static_cast<std::size_t>(alloc), rng);
      const double form = mono_form(prob, phi);
      const double oracle = mono_p0_oracle(prob.sigma, prob.b, phi, rule);
      const double nrm = norm_p(phi, 0.0);
      worst = std::max(worst, std::abs(form - oracle) / (1.0 + nrm * nrm));
    }
    rows.push_back({pc.name, "p0_oracle", worst, 1e-8, worst <= 1e-8});
  }
  const MonotonicityReport rep = plateau_sweep(prob, cfg.k_schedule, cfg.tol, cfg.monotone_tol);
  if (prob.p == 0.0 && polynomial_kinds && has_bounded_derivative(prob.sigma) && has_bounded_derivative(prob.b)) {
    const double a = affine_slope(prob.sigma);
    const double closed = a * a - affine_slope(prob.b);
    double worst = 0.0;
    for (const auto& e : rep.entries) worst = std::max(worst, std::abs(e.lambda_max - closed));
    rows.push_back({pc.name, "affine_closed_form", worst, 1e-9, worst <= 1e-9});
  }
  double drop = 0.0;
  for (std::size_t i = 1; i < rep.entries.size(); ++i) {
    drop = std::max(drop, rep.entries[i - 1].lambda_max - rep.entries[i].lambda_max);
  }
  rows.push_back({pc.name, "monotone", std::max(drop, 0.0), cfg.monotone_tol * std::max(1.0, std::abs(rep.plateau)),
                  rep.monotone});
  rows.push_back({pc.name, "plateau", rep.last_step, cfg.tol * std::max(1.0, std::abs(rep.plateau)), rep.converged});
  return rows;
}

}  // namespace detail

/// Runs the configured command and writes CSV to `out`. Returns 0 when every
/// check passes and 1 otherwise; configuration problems throw ConfigError
/// (the caller maps them to exit code 2).
inline int run(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.command) throw ConfigError(0, "no command given");
  out << "# seed=" << cfg.seed << '\n';
  const int n_prob = static_cast<int>(cfg.problems.size());

  switch (*cfg.command) {
    case Command::Verify: {
      if (cfg.problems.empty()) throw ConfigError(0, "verify needs at least one [problem.N] section");
      std::vector<std::vector<detail::CheckRow>> results(cfg.problems.size());
      detail::parallel_for(n_prob, cfg.jobs, [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        results[ui] = detail::verify_problem(cfg.problems[ui], cfg, cfg.seed + ui);
      });
      out << "problem,check,value,threshold,passed\n";
      bool all = true;
      for (const auto& rs : results) {
        for (const auto& r : rs) {
          out << r.problem << ',' << r.check << ',' << format_double(r.value) << ',' << format_double(r.threshold)
              << ',' << (r.passed ? "true" : "false") << '\n';
          all = all && r.passed;
        }
      }
      return all ? 0 : 1;
    }
    case Command::Sweep: {
      if (cfg.problems.empty()) throw ConfigError(0, "sweep needs at least one [problem.N] section");
      std::vector<MonotonicityReport> reports(cfg.problems.size());
      detail::parallel_for(n_prob, cfg.jobs, [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        reports[ui] = plateau_sweep(cfg.problems[ui].problem, cfg.k_schedule, cfg.tol, cfg.monotone_tol);
      });
      out << "sigma_kind,sigma_params,b_kind,b_params,p,K,lambda_max,converged\n";
      bool all = true;
      for (const auto& rep : reports) {
        const auto& pr = rep.problem;
        for (const auto& e : rep.entries) {
          out << pr.sigma.kind_name() << ',' << pr.sigma.params_string() << ',' << pr.b.kind_name() << ','
              << pr.b.params_string() << ',' << format_double(pr.p) << ',' << e.K << ','
              << format_double(e.lambda_max) << ',' << (rep.converged ? "true" : "false") << '\n';
        }
        all = all && rep.converged && rep.monotone;
      }
      return all ? 0 : 1;
    }
    case Command::Sequences: {
      out << "name,w,n,value_re,value_im,scaled_abs\n";
      for (auto fam : cfg.families) {
        for (Complex w : cfg.ws) {
          for (std::size_t n : cfg.ns) {
            Complex v;
            try {
              v = seq_value(fam, w, n);
            } catch (const std::domain_error&) {
              continue;  // outside the family's domain for this w
            }
            const double scaled = std::pow(static_cast<double>(n), claimed_decay(fam)) * std::abs(v);
            out << sequence_name(fam) << ',' << format_complex(w) << ',' << n << ',' << format_double(v.real())
                << ',' << format_double(v.imag()) << ',' << format_double(scaled) << '\n';
          }
        }
      }
      return 0;
    }
    case Command::Interpolate: {
      if (cfg.problems.empty()) throw ConfigError(0, "interpolate needs at least one [problem.N] section");
      for (const auto& pc : cfg.problems) {
        for (const auto* m : {&pc.problem.sigma, &pc.problem.b}) {
          const auto d = m->degree();
          if (!d || *d > 1) throw ConfigError(0, "interpolate: problem '" + pc.name + "' must have affine sigma and b");
        }
      }
      const StripGrid grid = make_strip_grid(cfg.Y, cfg.ny, cfg.nx);
      const bool random_phi = cfg.phi == "random";
      const int basis_k = random_phi ? 0 : detail::parse_int<int>(std::string_view(cfg.phi).substr(1), 0);
      const int support = random_phi ? cfg.phi_K : basis_k + 1;
      const int alloc = support + 4;
      const int n_phi = random_phi ? cfg.n_phi : 1;

      std::vector<std::vector<ThreeLinesReport>> reports(cfg.problems.size());
      detail::parallel_for(n_prob, cfg.jobs, [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        std::mt19937_64 rng(cfg.seed + ui);
        for (int t = 0; t < n_phi; ++t) {
          const RealCoeffVec phi = random_phi ? detail::unit_random(support, alloc, 0.0, rng)
                                              : RealCoeffVec::basis(static_cast<std::size_t>(basis_k),
                                                                    static_cast<std::size_t>(alloc));
          reports[ui].push_back(three_lines_check(cfg.problems[ui].problem, phi, grid));
        }
      });
      out << "x,y,F_re,F_im,bound,margin\n";
      bool all = true;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        for (std::size_t t = 0; t < reports[i].size(); ++t) {
          const auto& rep = reports[i][t];
          out << "# problem=" << cfg.problems[i].name << " phi=" << t << " m0=" << format_double(rep.m0)
              << " m1=" << format_double(rep.m1) << '\n';
          for (const auto& r : rep.rows) {
            out << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.F.real()) << ','
                << format_double(r.F.imag()) << ',' << format_double(r.bound) << ',' << format_double(r.margin)
                << '\n';
          }
          all = all && rep.passed;
        }
      }
      return all ? 0 : 1;
    }
  }
  return 2;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hsob::cli

#endif  // HSOB_CLI_HPP
