// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hsob/hsob.hpp"
#include "oracles.hpp"

using namespace hsob;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body, double budget_s) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = o.passed;
  std::string timing = "t=" + std::to_string(secs).substr(0, 6) + "s";
  if (budget_s > 0.0) {
    timing += " (budget " + std::to_string(budget_s).substr(0, 5) + "s)";
    if (secs > budget_s) ok = false;
  }
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s | %s | %s\n", id, ok ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              timing.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RealCoeffVec unit_phi(int k, int alloc, double p, std::mt19937_64& rng) {
  RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(alloc), rng);
  phi *= 1.0 / norm_p(phi, p);
  return phi;
}

// ---------------------------------------------------------------------------

Outcome constant_nullity() {
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> kdist(1, 64);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const MonoProblem prob{MultiplierSpec::constant(coef(rng)), MultiplierSpec::constant(coef(rng)), 0.0};
    const int k = kdist(rng);
    const RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(k + form_band_growth(prob)), rng);
    const double n2 = norm_p(phi, 0.0) * norm_p(phi, 0.0);
    worst = std::max(worst, std::abs(mono_form(prob, phi)) / n2);
  }
  return {worst <= kTol, "max |M0|/||phi||^2 = " + fmt(worst) + " (tol 1e-10)"};
}

Outcome affine_closed_form() {
  constexpr double kLambdaTol = 1e-9;
  constexpr double kOracleRelTol = 1e-8;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  double worst_lambda = 0.0;
  double worst_rel = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double a = coef(rng), b = coef(rng), g = coef(rng), d = coef(rng);
    const MonoProblem prob{MultiplierSpec::affine(a, b), MultiplierSpec::affine(g, d), 0.0};
    const double closed = a * a - g;
    for (int k : default_k_schedule()) worst_lambda = std::max(worst_lambda, std::abs(best_constant(prob, k) - closed));

    const int k = 32;
    const int alloc = k + form_band_growth(prob);
    const QuadratureRule rule = gauss_hermite(2 * alloc + 8);
    for (int s = 0; s < 5; ++s) {
      const RealCoeffVec phi = random_coeffs(k, static_cast<std::size_t>(alloc), rng);
      const double form = mono_form(prob, phi);
      const double oracle = mono_p0_oracle(prob.sigma, prob.b, phi, rule);
      // relative to the size of the two integrand terms, which do not cancel in rounding
      const double scale = (a * a + std::abs(g)) * norm_p(phi, 0.0) * norm_p(phi, 0.0);
      worst_rel = std::max(worst_rel, std::abs(form - oracle) / scale);
    }
  }
  return {worst_lambda <= kLambdaTol && worst_rel <= kOracleRelTol,
          "max |lambda - (a^2 - g)| = " + fmt(worst_lambda) + " (tol 1e-9), max rel form/oracle = " + fmt(worst_rel) +
              " (tol 1e-8)"};
}

Outcome plateau_grid() {
  constexpr double kTol = 1e-6;
  constexpr double kMonotoneTol = 1e-10;
  std::vector<MonoProblem> grid;
  for (double p : {0.0, 0.5, 1.0, 2.0}) grid.push_back({MultiplierSpec::affine(1.0, 1.0), MultiplierSpec::affine(2.0, 0.0), p});
  for (double p : {0.0, 1.0, 2.0}) {
    grid.push_back({MultiplierSpec::sampled("tanh", 1104), MultiplierSpec::affine(1.0, 0.0), p});
  }
  bool all = true;
  std::string detail;
  for (const auto& prob : grid) {
    const auto rep = plateau_sweep(prob, default_k_schedule(), kTol, kMonotoneTol);
    const bool ok = rep.converged && rep.monotone;
    all = all && ok;
    detail += (detail.empty() ? "" : "; ") + std::string(prob.sigma.is_sampled() ? "tanh" : "affine") + " p=" +
              fmt(prob.p) + ": C~" + fmt(rep.plateau) + " step " + fmt(rep.last_step) +
              (rep.monotone ? "" : " non-monotone") + (ok ? "" : " [fail]");
  }
  return {all, detail};
}

Outcome adjoint_decomposition() {
  constexpr double kTol = 1e-11;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> qd(-2.0, 2.0);
  std::uniform_int_distribution<int> kdist(1, 32);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double q = qd(rng);
    const int k1 = kdist(rng), k2 = kdist(rng);
    const RealCoeffVec phi = unit_phi(k1, k1 + 1, q, rng);
    const RealCoeffVec psi = unit_phi(k2, k2 + 1, q, rng);
    worst = std::max(worst, std::abs(adjoint_defect(q, phi, psi)));
  }
  return {worst <= kTol, "max defect = " + fmt(worst) + " (tol 1e-11, unit q-norm inputs)"};
}

Outcome commutator_closed_form() {
  constexpr double kEntryTol = 1e-11;
  constexpr double kGrowth = 1.05;
  const std::vector<Complex> ws{Complex(1.0), Complex(2.0), Complex(0.5, 1.0), Complex(-1.5)};
  double worst_entry = 0.0;
  double worst_ratio = 0.0;
  for (Complex w : ws) {
    const ComplexOp comp = commutator_Hw_partial(w, 128);
    const ComplexOp closed = commutator_Hw_partial_closed_form(w, 128);
    worst_entry = std::max(worst_entry, (comp.matrix() - closed.matrix()).cwiseAbs().maxCoeff());
    const double n128 = finite_section_norm(comp);
    const double n512 = finite_section_norm(commutator_Hw_partial(w, 512));
    worst_ratio = std::max(worst_ratio, n512 / n128);
  }
  return {worst_entry <= kEntryTol && worst_ratio <= kGrowth,
          "max entry diff = " + fmt(worst_entry) + " (tol 1e-11), max norm(512)/norm(128) = " + fmt(worst_ratio) +
              " (limit 1.05)"};
}

Outcome sequence_bounds() {
  constexpr double kStable = 1.01;
  constexpr double kTailRel = 0.01;
  constexpr double kAbsFloor = 1e-6;
  const std::vector<Complex> ws{Complex(1.0), Complex(-1.0), Complex(2.5), Complex(1.0, 2.0)};
  std::vector<std::string> bad;
  for (SequenceName fam : kAllSequences) {
    const auto certs = certify_bounds(fam, ws, 1'000'000, 10'000);
    bool fam_ok = true;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const auto& c = certs[i];
      const bool stable = c.M <= kStable * c.M_checkpoint + kAbsFloor;
      const auto limit = oracle::expansion_limit(sequence_name(fam), ws[i]);
      bool tail = false;
      if (limit) {
        tail = *limit == 0.0 ? c.asymptote <= kAbsFloor : std::abs(c.asymptote - *limit) <= kTailRel * *limit;
      }
      fam_ok = fam_ok && stable && tail;
    }
    if (!fam_ok) bad.emplace_back(sequence_name(fam));
  }
  std::string detail = "16 families x 4 w";
  if (!bad.empty()) {
    detail += "; failing:";
    for (const auto& b : bad) detail += " " + b;
  }
  return {bad.empty(), detail};
}

Outcome hermite_power_identity() {
  constexpr double kRelTol = 1e-10;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> kdist(1, 32);
  double worst = 0.0;
  for (int p = 1; p <= 4; ++p) {
    for (int t = 0; t < 25; ++t) {
      const int k = t == 0 ? 32 : kdist(rng);
      const RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(k + 2 * p), rng);
      worst = std::max(worst, hermite_power_identity_check<long double>(p, phi) / norm_p(phi, 0.0));
    }
  }
  return {worst <= kRelTol, "max defect/||phi||_0 = " + fmt(worst) + " (tol 1e-10)"};
}

Outcome isometries() {
  constexpr double kRelTol = 1e-12;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> yd(-50.0, 50.0);
  std::uniform_real_distribution<double> pd(-2.0, 2.0);
  std::uniform_int_distribution<int> kdist(1, 64);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int k = kdist(rng);
    const RealCoeffVec phi = random_coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(k), rng);
    const double y = yd(rng), p = pd(rng), q = pd(rng);
    const double nq = norm_p(phi, q);
    worst = std::max(worst, std::abs(norm_p(hermite_power(Complex(0.0, y), phi), p) / norm_p(phi, p) - 1.0));
    worst = std::max(worst, std::abs(norm_p(hermite_power(p, phi), q - p) / nq - 1.0));
  }
  return {worst <= kRelTol, "max relative defect = " + fmt(worst) + " (tol 1e-12)"};
}

Outcome three_lines() {
  constexpr double kClosedTol = 1e-12;
  const MonoProblem unit{MultiplierSpec::constant(1.0), MultiplierSpec::constant(0.0), 0.0};
  const RealCoeffVec h0 = RealCoeffVec::basis(0, 8);
  const StripGrid grid = make_strip_grid();
  const auto rep = three_lines_check(unit, h0, grid);
  double worst_closed = 0.0;
  for (const auto& r : rep.rows) {
    const Complex z(r.x, r.y);
    const Complex closed = (std::pow(Complex(3.0), 2.0 * z) - 1.0) / 2.0;
    worst_closed = std::max(worst_closed, std::abs(r.F - closed) / std::max(1.0, std::abs(closed)));
  }
  const double f0 = std::abs(f_eval(unit, h0, 0.0));
  const double f1 = std::abs(f_eval(unit, h0, 1.0) - 4.0);

  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  int random_pass = 0;
  double worst_margin = rep.worst_margin;
  for (int t = 0; t < 20; ++t) {
    const MonoProblem prob{MultiplierSpec::affine(coef(rng), coef(rng)), MultiplierSpec::constant(0.0), 0.0};
    const auto r = three_lines_check(prob, unit_phi(32, 36, 0.0, rng), grid);
    if (r.passed) ++random_pass;
    worst_margin = std::min(worst_margin, r.worst_margin);
  }
  const bool ok = worst_closed <= kClosedTol && f0 <= kClosedTol && f1 <= kClosedTol && rep.passed && random_pass == 20;
  return {ok, "closed form err = " + fmt(worst_closed) + ", |F(0)| = " + fmt(f0) + ", |F(1)-4| = " + fmt(f1) +
                  ", h0 bound " + (rep.passed ? "holds" : "violated") + ", random " + std::to_string(random_pass) +
                  "/20, min margin = " + fmt(worst_margin)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("hsob_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "[run]\ncommand = interpolate\nseed = 31337\n\n"
                        "[problem.lin]\nsigma = affine(0.7, -0.4)\nb = affine(0.2, 0)\n\n"
                        "[interpolate]\nphi = random\nK = 24\nn_phi = 2\nny = 201\nnx = 11\n";
  auto run_once = [&](const fs::path& out) {
    const std::string cmd = std::string(HSOB_CLI_PATH) + " --config " + cfg.string() + " --out " + out.string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int rc1 = run_once(dir / "a.csv");
  const int rc2 = run_once(dir / "b.csv");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(dir / "a.csv");
  const std::string b = slurp(dir / "b.csv");
  fs::remove_all(dir);
  const bool ok = rc1 == rc2 && rc1 != 2 && !a.empty() && a == b;
  return {ok, "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " + std::to_string(a.size()) +
                  " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  report(1, "constant-coefficient nullity", constant_nullity, 1.0);
  report(2, "affine p=0 closed form", affine_closed_form, 10.0);
  report(3, "plateau certification", plateau_grid, 300.0);
  report(4, "adjoint decomposition", adjoint_decomposition, 1.0);
  report(5, "commutator closed form", commutator_closed_form, 0.0);
  report(6, "sequence bounds", sequence_bounds, 5.0);
  report(7, "H-power identity", hermite_power_identity, 1.0);
  report(8, "isometries", isometries, 0.0);
  report(9, "three-lines check", three_lines, 30.0);
  report(10, "end-to-end determinism", determinism, 0.0);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
