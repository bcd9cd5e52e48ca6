#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "casimir/abelplana.hpp"
#include "casimir/cli.hpp"
#include "casimir/report.hpp"

using namespace casimir;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1) {
    fields.push_back(line.substr(start, comma - start));
  }
  fields.push_back(line.substr(start));
  return fields;
}

double parse(const std::string& s) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(r.ec == std::errc{});
  return v;
}

// Value of `key` on a "key   value" line of text output.
double field(const std::string& text, const std::string& key) {
  for (const auto& line : lines(text)) {
    if (line.rfind(key + " ", 0) == 0) {
      const auto pos = line.find_first_not_of(' ', key.size());
      return parse(line.substr(pos));
    }
  }
  FAIL("missing field " << key);
  return 0;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("casimir_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("value formatting is locale independent with 9 significant digits") {
  CHECK(format_value(-0.041123351671205660) == "-0.0411233517");
  CHECK(format_value(1e-300) == "1e-300");
  CHECK(format_value(50.0) == "50");
  CHECK(format_value(-0.0) == "0");
  CHECK(format_fixed(1.58) == "1.580000");
  CHECK(format_fixed(-1e-9) == "0.000000");
}

TEST_CASE("pressure defaults land on the large-x exponential regime") {
  const auto r = run({"pressure"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.empty());
  const double p = field(r.out, "reduced_pressure");
  CHECK(std::abs(p - (-kPi * kPi / 240 + std::pow(kPi, 4) / (1008 * 2500.0))) < 2e-8);
  CHECK(field(r.out, "x") == 50.0);
  CHECK(field(r.out, "kappa") == 0.0);
  CHECK(field(r.out, "nu") == 1.0);
  CHECK(r.out.find("method            direct") != std::string::npos);
}

TEST_CASE("pressure closed form with --alpha") {
  const auto r = run({"pressure", "--cutoff", "none", "--alpha", "1", "--method", "closed"});
  CHECK(r.code == kExitOk);
  CHECK(field(r.out, "reduced_pressure") == doctest::Approx(0.0042992).epsilon(1e-5));
}

TEST_CASE("pressure csv format") {
  const auto r = run({"pressure", "--x", "20", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "cutoff,x,kappa,alpha,nu,method,reduced_pressure,abs_error");
  const auto f = split(rows[1]);
  REQUIRE(f.size() == 8);
  CHECK(f[0] == "exp");
  CHECK(f[5] == "direct");
  CHECK(parse(f[6]) == doctest::Approx(-0.0408822824716773335).epsilon(1e-8));
}

TEST_CASE("every method agrees for the exponential cutoff") {
  for (const char* method : {"direct", "em", "abel-plana", "closed"}) {
    const auto r = run({"pressure", "--x", "20", "--method", method});
    REQUIRE(r.code == kExitOk);
    CHECK(field(r.out, "reduced_pressure") == doctest::Approx(-0.0408822824716773335).epsilon(1e-8));
  }
}

TEST_CASE("--alpha and --kappa: the last one wins, with a warning") {
  const auto a = run({"pressure", "--cutoff", "none", "--method", "closed", "--kappa", "0.1", "--alpha", "1"});
  CHECK(a.code == kExitOk);
  CHECK(a.err.find("warning") != std::string::npos);
  CHECK(field(a.out, "alpha") == doctest::Approx(1.0));

  const auto k = run({"pressure", "--cutoff", "none", "--method", "closed", "--alpha", "1", "--kappa", "0.1"});
  CHECK(k.code == kExitOk);
  CHECK(k.err.find("warning") != std::string::npos);
  CHECK(field(k.out, "kappa") == doctest::Approx(0.1));

  const auto single = run({"pressure", "--cutoff", "none", "--method", "closed", "--alpha", "1"});
  CHECK(single.err.empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"pressure", "--x", "-1"}).code == kExitUsage);
  CHECK(run({"pressure", "--x", "-1"}).err.find("error") != std::string::npos);
  CHECK(run({"pressure", "--nu", "0", "--cutoff", "tanh"}).code == kExitUsage);
  CHECK(run({"pressure", "--cutoff", "bogus"}).code == kExitUsage);
  CHECK(run({"pressure", "--method", "bogus"}).code == kExitUsage);
  CHECK(run({"pressure", "--cutoff", "tanh", "--method", "closed"}).code == kExitUsage);
  CHECK(run({"pressure", "--cutoff", "none", "--method", "direct"}).code == kExitUsage);
  CHECK(run({"pressure", "--cutoff", "exp4", "--method", "abel-plana"}).code == kExitUsage);
  CHECK(run({"pressure", "--cutoff", "exp", "--method", "em", "--kappa", "0.2"}).code == kExitUsage);
  CHECK(run({"pressure", "--x", "abc"}).code == kExitUsage);
  CHECK(run({"fig2", "--points", "1"}).code == kExitUsage);
  CHECK(run({"fig2", "--alpha-max", "0"}).code == kExitUsage);
  CHECK(run({"verify", "nonsense"}).code == kExitUsage);
  CHECK(run({"bose", "--n", "0"}).code == kExitUsage);
  CHECK(run({"window", "--tol", "0"}).code == kExitUsage);
  CHECK(run({"shift", "--alpha", "1", "--x", "10", "--sign", "0"}).code == kExitUsage);
  CHECK(run({"sweep", "--variable", "x", "--start", "5", "--stop", "1", "--out", "unused.csv"}).code == kExitUsage);
  CHECK(run({"sweep", "--variable", "x", "--start", "0", "--stop", "1", "--scale", "log", "--out", "u.csv"}).code ==
        kExitUsage);
  CHECK(run({"sweep", "--variable", "x", "--start", "1", "--stop", "2", "--points", "1", "--out", "u.csv"}).code ==
        kExitUsage);
}

TEST_CASE("help exits successfully") {
  const auto r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("pressure") != std::string::npos);
  CHECK(run({"sweep", "--help"}).code == kExitOk);
}

TEST_CASE("fig2 defaults") {
  TempDir dir;
  const auto csv = dir.path / "fig2.csv";
  const auto svg = dir.path / "fig2.svg";
  const auto r = run({"fig2", "--out", csv.string(), "--svg", svg.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == "alpha,reduced_pressure");
  CHECK(rows[1].rfind("0.000000,-0.041123", 0) == 0);
  const auto last = split(rows.back());
  CHECK(last[0] == "1.580000");
  CHECK(parse(last[1]) < 0);

  // Row nearest alpha = 1 is repulsive.
  std::size_t nearest = 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(parse(split(rows[i])[0]) - 1.0) < std::abs(parse(split(rows[nearest])[0]) - 1.0)) nearest = i;
  }
  CHECK(parse(split(rows[nearest])[1]) > 0);

  const std::string chart = read_file(svg);
  CHECK(chart.rfind("<?xml", 0) == 0);
  CHECK(chart.find("version=\"1.1\"") != std::string::npos);
  CHECK(chart.find("Parameter α") != std::string::npos);
  CHECK(chart.find("Casimir pressure in units of d⁻⁴") != std::string::npos);
  CHECK(chart.find("<polyline") != std::string::npos);
  CHECK(chart.find("</svg>") != std::string::npos);
}

TEST_CASE("fig2 output is byte-identical across runs") {
  TempDir dir;
  const auto a = dir.path / "a.csv";
  const auto b = dir.path / "b.csv";
  REQUIRE(run({"fig2", "--out", a.string(), "--svg", (dir.path / "a.svg").string()}).code == kExitOk);
  REQUIRE(run({"fig2", "--out", b.string(), "--svg", (dir.path / "b.svg").string()}).code == kExitOk);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(dir.path / "a.svg") == read_file(dir.path / "b.svg"));
  // Overwriting an existing file replaces it.
  REQUIRE(run({"fig2", "--out", a.string(), "--points", "2"}).code == kExitOk);
  CHECK(lines(read_file(a)).size() == 3);
}

TEST_CASE("fig2 with two points writes the endpoints") {
  TempDir dir;
  const auto csv = dir.path / "two.csv";
  REQUIRE(run({"fig2", "--out", csv.string(), "--points", "2"}).code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 3);
  CHECK(split(rows[1])[0] == "0.000000");
  CHECK(split(rows[2])[0] == "1.580000");
  // No temporary files are left behind.
  CHECK(std::distance(std::filesystem::directory_iterator(dir.path), std::filesystem::directory_iterator{}) == 1);
}

TEST_CASE("unwritable output exits with 1") {
  const auto r = run({"fig2", "--out", "/nonexistent-dir/fig2.csv"});
  CHECK(r.code == kExitNumeric);
  CHECK(r.err.find("cannot write") != std::string::npos);
}

TEST_CASE("sweep over x, log scale, approaches the ideal value monotonically") {
  TempDir dir;
  const auto csv = dir.path / "sweep.csv";
  const auto r = run({"sweep", "--variable", "x", "--start", "5", "--stop", "200", "--points", "9", "--scale", "log",
                      "--cutoff", "exp", "--out", csv.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "variable,value,reduced_pressure,abs_error,error_code");
  double previous = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    REQUIRE(f.size() == 5);
    CHECK(f[0] == "x");
    CHECK(f[4].empty());
    const double deviation = std::abs(parse(f[2]) + kPi * kPi / 240);
    CHECK(deviation < previous);
    previous = deviation;
  }
  CHECK(parse(split(rows[1])[1]) == 5.0);
  CHECK(parse(split(rows.back())[1]) == 200.0);
}

TEST_CASE("sweep over alpha reproduces the fig2 data") {
  TempDir dir;
  const auto sweep = dir.path / "sweep.csv";
  const auto fig = dir.path / "fig.csv";
  REQUIRE(run({"sweep", "--variable", "alpha", "--start", "0", "--stop", "1.58", "--points", "100", "--cutoff", "none",
               "--out", sweep.string()})
              .code == kExitOk);
  REQUIRE(run({"fig2", "--out", fig.string()}).code == kExitOk);
  const auto a = lines(read_file(sweep));
  const auto b = lines(read_file(fig));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(split(a[i])[2] == split(b[i])[1]);
  }
}

TEST_CASE("sweep over nu with the tanh cutoff: corrections grow with nu") {
  TempDir dir;
  const auto csv = dir.path / "nu.csv";
  REQUIRE(run({"sweep", "--variable", "nu", "--start", "0.5", "--stop", "2", "--points", "4", "--cutoff", "tanh",
               "--x", "10", "--out", csv.string()})
              .code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 5);
  double previous = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double nu = parse(split(rows[i])[1]);
    const double oracle = tanh_pressure(ReducedParams(10.0, 0.0, nu)).reduced_pressure + kPi * kPi / 240;
    CHECK(std::abs(oracle) > previous);
    previous = std::abs(oracle);
  }
  // The 9-digit CSV shows the change once it exceeds the print resolution.
  CHECK(std::abs(parse(split(rows[4])[2]) + kPi * kPi / 240) > std::abs(parse(split(rows[1])[2]) + kPi * kPi / 240));
}

TEST_CASE("sweep is identical for any thread count") {
  TempDir dir;
  const auto one = dir.path / "one.csv";
  const auto many = dir.path / "many.csv";
  const std::vector<std::string> base{"sweep", "--variable", "x", "--start", "3", "--stop", "60", "--points", "17"};
  auto with = [&](const std::filesystem::path& out, const char* threads) {
    auto args = base;
    args.insert(args.end(), {"--out", out.string(), "--threads", threads});
    return run(args).code;
  };
  REQUIRE(with(one, "1") == kExitOk);
  REQUIRE(with(many, "8") == kExitOk);
  CHECK(read_file(one) == read_file(many));
}

TEST_CASE("sweep records failing points and exits with 1") {
  TempDir dir;
  const auto csv = dir.path / "fail.csv";
  const auto r = run({"sweep", "--variable", "x", "--start", "0", "--stop", "10", "--points", "3", "--out", csv.string()});
  CHECK(r.code == kExitNumeric);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == "x,0,,,domain");
  CHECK(split(rows[2])[4].empty());
}

TEST_CASE("verify suites") {
  const auto roots = run({"verify", "roots"});
  CHECK(roots.code == kExitOk);
  CHECK(roots.out.find("PASS [4]") != std::string::npos);
  CHECK(roots.out.find("PASS [9]") != std::string::npos);
  CHECK(roots.out.find("0.842") != std::string::npos);

  const auto coeffs = run({"verify", "coefficients"});
  CHECK(coeffs.code == kExitOk);
  for (const char* n : {"[1]", "[2]", "[3]"}) CHECK(coeffs.out.find(std::string("PASS ") + n) != std::string::npos);

  const auto suppression = run({"verify", "suppression"});
  CHECK(suppression.code == kExitOk);
  CHECK(suppression.out.find("decay rate") != std::string::npos);

  CHECK(run({"verify", "cross-method"}).code == kExitOk);
}

TEST_CASE("bose, window and shift") {
  const auto b = run({"bose", "--n", "3"});
  CHECK(b.code == kExitOk);
  CHECK(field(b.out, "quadrature") == doctest::Approx(1.0 / 240).epsilon(1e-9));

  const auto w = run({"window"});
  CHECK(w.code == kExitOk);
  CHECK(field(w.out, "alpha_low") == doctest::Approx(0.842156).epsilon(1e-5));
  CHECK(field(w.out, "alpha_high") == doctest::Approx(1.228240).epsilon(1e-5));

  const auto s = run({"shift", "--alpha", "1", "--x", "10", "--sign", "1", "--order", "3"});
  CHECK(s.code == kExitOk);
  CHECK(field(s.out, "series") == doctest::Approx(0.68));
  CHECK(field(s.out, "exact") == doctest::Approx(0.683013455).epsilon(1e-8));
}

TEST_CASE("compute_pressure dispatch") {
  const ReducedParams p(8.0);
  CHECK(compute_pressure(parse_cutoff("tanh"), "auto", p).method == PressureMethod::abel_plana);
  CHECK(compute_pressure(parse_cutoff("none"), "auto", ReducedParams(1.0, 0.3)).method == PressureMethod::closed_form);
  CHECK(compute_pressure(parse_cutoff("exp4"), "auto", p).method == PressureMethod::direct);
  CHECK(compute_pressure(parse_cutoff("exp4"), "em", ReducedParams(40.0)).reduced_pressure ==
        doctest::Approx(compute_pressure(parse_cutoff("exp4"), "direct", ReducedParams(40.0)).reduced_pressure)
            .epsilon(1e-10));
  CHECK_THROWS_AS(parse_cutoff("exp5"), DomainError);
  CHECK_THROWS_AS(compute_pressure(parse_cutoff("tanh"), "abel-plana", ReducedParams(8.0, 0.1)), UnsupportedError);
}
