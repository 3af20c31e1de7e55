#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hsob/cli.hpp"

using namespace hsob;
using namespace hsob::cli;

namespace {

const char* kMinimal = R"(
[problem.one]
sigma = affine(1.0, 0.5)
b = affine(0, 0)
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / ("hsob_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HSOB_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  }
  return rows;
}

}  // namespace

TEST(ParseConfig, MinimalHasDefaults) {
  const RunConfig cfg = parse_config(kMinimal);
  ASSERT_EQ(cfg.problems.size(), 1u);
  EXPECT_EQ(cfg.problems[0].name, "one");
  EXPECT_EQ(cfg.k_schedule, (std::vector<int>{8, 16, 32, 64, 128, 256, 512}));
  EXPECT_EQ(cfg.tol, 1e-6);
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_FALSE(cfg.command.has_value());
  EXPECT_TRUE(cfg.problems[0].problem.sigma.is_affine());
  EXPECT_EQ(cfg.problems[0].problem.p, 0.0);
}

TEST(ParseConfig, AffineArityError) {
  const std::string err = error_of("[problem.x]\nsigma = affine(2)\nb = affine(0, 0)\n");
  EXPECT_NE(err.find("line 2"), std::string::npos) << err;
  EXPECT_NE(err.find("2 arguments"), std::string::npos) << err;
}

TEST(ParseConfig, SampledSpec) {
  const RunConfig cfg = parse_config("[problem.s]\nsigma = affine(0, 1)\nb = sampled(tanh, order=64)\n");
  const auto& b = cfg.problems[0].problem.b;
  ASSERT_TRUE(b.is_sampled());
  const auto& s = std::get<SampledMultiplier>(b.kind());
  EXPECT_EQ(s.name, "tanh");
  EXPECT_EQ(s.order, 64);
  EXPECT_NEAR(b(0.3), std::tanh(0.3), 1e-15);
  EXPECT_NE(error_of("[problem.s]\nsigma = sampled(cosh, order=64)\nb = affine(0,0)\n").find("line 2"),
            std::string::npos);
  EXPECT_NE(error_of("[problem.s]\nsigma = sampled(tanh, 64)\nb = affine(0,0)\n").find("order="), std::string::npos);
}

TEST(ParseConfig, Errors) {
  EXPECT_NE(error_of("[sweep]\nK = 16, 8\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("[sweep]\n\nfoo = 1\n").find("line 3: unknown key"), std::string::npos);
  EXPECT_NE(error_of("[nowhere]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(error_of("[sweep]\ntol = -1\n").find("positive"), std::string::npos);
  EXPECT_NE(error_of("[sweep]\ntol = 1e-6\ntol = 1e-7\n").find("duplicate"), std::string::npos);
  EXPECT_NE(error_of("[problem.x]\nsigma = affine(1, 0)\n").find("needs both"), std::string::npos);
  EXPECT_NE(error_of("[problem.x]\nsigma = affin(1, 0)\n").find("unknown multiplier"), std::string::npos);
  EXPECT_NE(error_of("[problem.x]\nsigma = affine(1, x)\n").find("malformed number"), std::string::npos);
  EXPECT_NE(error_of("k = 1\n").find("outside"), std::string::npos);
  EXPECT_NE(error_of("[run]\ncommand = dance\n").find("unknown command"), std::string::npos);
}

TEST(ParseConfig, PolyAndComments) {
  const RunConfig cfg = parse_config("# header\n[problem.q]  # trailing\nsigma = poly(0, 0, 1)\nb = poly(3)\np = 1.5\n");
  EXPECT_EQ(cfg.problems[0].problem.sigma.degree(), std::optional<int>(2));
  EXPECT_EQ(cfg.problems[0].problem.p, 1.5);
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("1"), Complex(1.0, 0.0));
  EXPECT_EQ(parse_complex("-2.5"), Complex(-2.5, 0.0));
  EXPECT_EQ(parse_complex("1+2i"), Complex(1.0, 2.0));
  EXPECT_EQ(parse_complex("0.5-i"), Complex(0.5, -1.0));
  EXPECT_EQ(parse_complex("3i"), Complex(0.0, 3.0));
  EXPECT_EQ(parse_complex("i"), Complex(0.0, 1.0));
  EXPECT_EQ(parse_complex("1e-3+2e+1i"), Complex(1e-3, 20.0));
  EXPECT_THROW(parse_complex("1+2j"), ConfigError);
  EXPECT_EQ(format_complex(Complex(1.0, 2.0)), "1+2i");
  EXPECT_EQ(format_complex(Complex(2.5, 0.0)), "2.5");
  EXPECT_EQ(parse_complex(format_complex(Complex(0.1, -0.3))), Complex(0.1, -0.3));
}

TEST(Run, VerifyConstantProblemPasses) {
  RunConfig cfg = parse_config("[run]\ncommand = verify\n[problem.c]\nsigma = affine(0, 2)\nb = affine(0, -1)\n"
                               "[sweep]\nK = 8, 16, 32\n[verify]\nn_random = 20\n");
  std::ostringstream out;
  EXPECT_EQ(run(cfg, out), 0) << out.str();
  EXPECT_EQ(out.str().rfind("# seed=0\nproblem,check,value,threshold,passed\n", 0), 0u);
  EXPECT_NE(out.str().find("c,constant_nullity,"), std::string::npos);
}

TEST(Run, SweepAffineIsConstant) {
  RunConfig cfg = parse_config("[run]\ncommand = sweep\nseed = 4\n[problem.a]\nsigma = affine(1.5, 0.2)\n"
                               "b = affine(-0.5, 1)\n[sweep]\nK = 8, 16, 32, 64\n");
  std::ostringstream out;
  EXPECT_EQ(run(cfg, out), 0);
  const auto rows = csv_rows(out.str());
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "sigma_kind,sigma_params,b_kind,b_params,p,K,lambda_max,converged");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cols = hsob::cli::detail::split(rows[i], ',');
    ASSERT_EQ(cols.size(), 8u);
    EXPECT_EQ(cols[0], "affine");
    EXPECT_NEAR(std::stod(cols[6]), 1.5 * 1.5 + 0.5, 1e-9);
    EXPECT_EQ(cols[7], "true");
  }
  EXPECT_EQ(out.str().rfind("# seed=4\n", 0), 0u);
}

TEST(Run, SequencesSkipsUndefinedCells) {
  RunConfig cfg = parse_config("[run]\ncommand = sequences\n[sequences]\nfamilies = alpha_tilde, l\nw = 0.5\nn = 0, 1, 10\n");
  std::ostringstream out;
  EXPECT_EQ(run(cfg, out), 0);
  const auto rows = csv_rows(out.str());
  EXPECT_EQ(rows[0], "name,w,n,value_re,value_im,scaled_abs");
  EXPECT_GE(rows.size(), 4u);
}

TEST(Run, InterpolateRejectsSampled) {
  RunConfig cfg = parse_config("[run]\ncommand = interpolate\n[problem.s]\nsigma = sampled(tanh, order=64)\nb = affine(0,0)\n");
  std::ostringstream out;
  EXPECT_THROW(run(cfg, out), ConfigError);
}

TEST(Run, NoCommandIsError) {
  RunConfig cfg = parse_config(kMinimal);
  std::ostringstream out;
  EXPECT_THROW(run(cfg, out), ConfigError);
}

TEST(EndToEnd, ExitCodes) {
  const auto dir = temp_dir();
  const auto good = dir / "good.ini";
  write_file(good, "[run]\ncommand = verify\n[problem.c]\nsigma = affine(0, 2)\nb = affine(0, 3)\n"
                   "[sweep]\nK = 8, 16, 32\n[verify]\nn_random = 10\n");
  EXPECT_EQ(run_cli("--config " + good.string() + " --out " + (dir / "good.csv").string()), 0);
  EXPECT_EQ(read_file(dir / "good.csv").rfind("# seed=0\n", 0), 0u);

  // sigma = x^2 has no plateau at p = 0: lambda_max grows with K
  const auto bad = dir / "bad.ini";
  write_file(bad, "[run]\ncommand = sweep\n[problem.q]\nsigma = poly(0, 0, 1)\nb = affine(0, 0)\n[sweep]\nK = 8, 16, 32\n");
  EXPECT_EQ(run_cli("--config " + bad.string() + " --out " + (dir / "bad.csv").string()), 1);

  const auto order = dir / "order.ini";
  write_file(order, "[run]\ncommand = sweep\n[problem.a]\nsigma = affine(1, 0)\nb = affine(0, 0)\n[sweep]\nK = 16, 8\n");
  EXPECT_EQ(run_cli("--config " + order.string()), 2);
  EXPECT_EQ(run_cli("--config " + (dir / "missing.ini").string()), 2);
  EXPECT_EQ(run_cli("sweep"), 2);
  EXPECT_EQ(run_cli("frobnicate --config " + good.string()), 2);
  EXPECT_EQ(run_cli("--config " + good.string() + " --out /nonexistent_dir/x.csv"), 2);
  std::filesystem::remove_all(dir);
}

TEST(EndToEnd, ByteIdenticalAcrossRuns) {
  const auto dir = temp_dir();
  const std::string cfg = std::string(HSOB_CONFIG_DIR) + "/interpolate.ini";
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  const auto c = dir / "c.csv";
  EXPECT_EQ(run_cli("--config " + cfg + " --out " + a.string()), 0);
  EXPECT_EQ(run_cli("--config " + cfg + " --out " + b.string() + " --jobs 2"), 0);
  EXPECT_EQ(run_cli("--config " + cfg + " --out " + c.string() + " --seed 12"), 0);
  const std::string ta = read_file(a);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, read_file(b));
  EXPECT_NE(ta, read_file(c));
  EXPECT_EQ(read_file(c).rfind("# seed=12\n", 0), 0u);
  std::filesystem::remove_all(dir);
}

TEST(EndToEnd, ShippedConfigsParse) {
  for (const char* name : {"affine_sweep.ini", "tanh_sweep.ini", "verify.ini", "sequences.ini", "interpolate.ini"}) {
    EXPECT_NO_THROW(load_config(std::string(HSOB_CONFIG_DIR) + "/" + name)) << name;
  }
}
