#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "aitest/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = aitest::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("aitest_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::size_t count_cells(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

}  // namespace

TEST_CASE("critical subcommand") {
  // 1 + log2(0.95) = 0.925999...; four-place rounding gives 0.9260.
  auto r = cli({"critical", "--alpha", "0.05", "--sided", "one", "--ref", "uniform:2", "--unit", "bits"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.9260\n");

  r = cli({"critical", "--alpha", "0.25", "--sided", "two", "--ref", "uniform:2", "--mode", "exact", "--unit", "nats"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.6931\n");

  r = cli({"critical", "--alpha", "0.05", "--sided", "one", "--ref", "uniform:10", "--unit", "nits:10"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.9777\n");

  r = cli({"critical", "--alpha", "0.05", "--sided", "one", "--unit", "bits", "--unit", "nats"});
  CHECK(r.out == "0.9260\n0.6419\n");

  r = cli({"critical", "--alpha", "0.05", "--sided", "one", "--unit", "bits", "--raw"});
  CHECK(std::fabs(std::stod(r.out) - (1.0 + std::log2(0.95))) < 1e-15);
}

TEST_CASE("test subcommand emits JSON and a scriptable exit code") {
  auto r = cli({"test", "--p-obs", "0.5", "--sided", "two", "--alpha", "0.05", "--ref", "uniform:2"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["reject"] == false);
  CHECK(j["p_value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  for (const char* key : {"statistic", "unit", "p_value", "critical_value", "alpha", "reject"}) CHECK(j.contains(key));

  r = cli({"test", "--p-obs", "0.99", "--sided", "one", "--alpha", "0.05", "--ref", "uniform:2", "--unit", "bits"});
  CHECK(r.code == 1);
  j = json::parse(r.out);
  CHECK(j["reject"] == true);
  CHECK(j["unit"] == "bits");
  CHECK(j["statistic"].get<double>() == doctest::Approx(std::log2(1.98)).epsilon(1e-12));
  CHECK(j["p_value"].get<double>() == doctest::Approx(0.01).epsilon(1e-9));

  r = cli({"test", "--p-obs", "0.6", "--sided", "one", "--alpha", "0.05", "--ref", "uniform:2"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["reject"] == false);
  CHECK(j["p_value"].get<double>() == doctest::Approx(0.4).epsilon(1e-12));

  r = cli({"test", "--statistic", "0.6", "--sided", "two"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["p_value"].get<double>() == doctest::Approx(1.0 - std::sinh(0.6)).epsilon(1e-12));
}

TEST_CASE("table subcommand") {
  auto r = cli({"table", "--preset", "supp-table-1"});
  CHECK(r.code == 0);
  std::ifstream golden(AITEST_GOLDEN_DIR "/supp_table_1.csv", std::ios::binary);
  std::ostringstream g;
  g << golden.rdbuf();
  CHECK(r.out == g.str());

  r = cli({"table", "--alphas", "0.1,0.05", "--sided", "two", "--format", "markdown"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("| alpha | nats | bits |\n|---|---|---|\n"));

  const auto out_path = scratch_dir() / "t.csv";
  r = cli({"table", "--preset", "supp-table-2", "--output", out_path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::file_size(out_path) > 0);

  r = cli({"table", "--alphas", "0.5,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("row 2") != std::string::npos);

  r = cli({"table", "--preset", "supp-table-1", "--sided", "two"});
  CHECK(r.code == 2);
}

TEST_CASE("cdf subcommand") {
  auto r = cli({"cdf", "--x", "0.6931471805599453", "--sided", "two", "--raw"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.75).epsilon(1e-12));
  r = cli({"cdf", "--x", "0.5", "--sided", "one", "--unit", "bits", "--tail"});
  CHECK(r.out == "0.2929\n");
  r = cli({"cdf", "--x", "0", "--sided", "two", "--pdf"});
  CHECK(r.out == "1.0000\n");
  r = cli({"cdf", "--x", "-1", "--sided", "two"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--x") != std::string::npos);
}

TEST_CASE("gof subcommand") {
  const auto p = write_file("p.txt", "0.2\n0.3\n0.5\n");
  const auto q = write_file("q.txt", "0.2\n0.3\n0.5\n");
  auto r = cli({"gof", "--p", p.string(), "--q", q.string(), "--unit", "nats"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.000000\n");

  const auto q2 = write_file("q2.txt", "# uniform\n0.25\n0.25\n0.5\n");
  r = cli({"gof", "--p", p.string(), "--q", q2.string(), "--raw"});
  CHECK(std::stod(r.out) == doctest::Approx(std::log(1.25) + std::log(1.2)).epsilon(1e-12));

  const auto csv = write_file("pq.csv", "p,q\n0.5,0.25\n0.5,0.75\n");
  r = cli({"gof", "--csv", csv.string(), "--unit", "bits", "--raw"});
  CHECK(std::stod(r.out) == doctest::Approx(1.0 + std::log2(1.5)).epsilon(1e-12));

  const auto bad = write_file("bad.txt", "0.5\nabc\n");
  r = cli({"gof", "--p", bad.string(), "--q", q.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("--p") != std::string::npos);

  const auto shorter = write_file("short.txt", "0.5\n0.5\n");
  r = cli({"gof", "--p", p.string(), "--q", shorter.string()});
  CHECK(r.code == 2);
}

TEST_CASE("mc-check subcommand") {
  auto r = cli({"mc-check", "--target", "cdf", "--threshold", "0.6931", "--sided", "two", "--ref", "uniform:2", "--seed",
                "42", "--samples", "1000000"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["estimate"].get<double>() == doctest::Approx(0.75).epsilon(5e-3));
  for (const char* key : {"estimate", "std_error", "exact"}) CHECK(j.contains(key));

  r = cli({"mc-check", "--target", "critical", "--alpha", "0.05", "--sided", "one", "--seed", "7", "--samples",
           "200000"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["pass"] == true);

  const auto p = write_file("mp.txt", "0.1\n0.2\n0.3\n0.4\n");
  const auto v = write_file("mv.txt", "0.4\n0.3\n0.2\n0.1\n");
  r = cli({"mc-check", "--target", "conservation", "--p", p.string(), "--v", v.string(), "--seed", "1", "--samples",
           "1000"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["rows"].size() == 4);
  CHECK(j["pass"] == true);

  r = cli({"mc-check", "--target", "conservation", "--p", p.string(), "--v", v.string(), "--r", "0.5", "--seed", "1",
           "--samples", "1000"});
  CHECK(r.code == 2);

  r = cli({"mc-check", "--target", "cdf", "--threshold", "0.5"});
  CHECK(r.code == 2);
}

TEST_CASE("malformed input exits 2 and names the flag") {
  struct Case {
    std::vector<std::string> args;
    std::string flag;
  };
  const std::vector<Case> cases{
      {{"critical", "--alpha", "1.5"}, "--alpha"},
      {{"critical", "--alpha", "0.05", "--sided", "three"}, "--sided"},
      {{"critical", "--alpha", "0.05", "--ref", "uniform:1"}, "--ref"},
      {{"critical", "--alpha", "0.05", "--ref", "event:0"}, "--ref"},
      {{"critical", "--alpha", "0.05", "--prior", "beta:1"}, "--prior"},
      {{"critical", "--alpha", "0.05", "--prior", "beta:-1,2"}, "--prior"},
      {{"critical", "--alpha", "0.05", "--prior", "{\"type\":\"nope\"}"}, "--prior"},
      {{"critical", "--alpha", "0.05", "--prior", "empirical:/nonexistent.json"}, "--prior"},
      {{"critical", "--alpha", "0.05", "--unit", "nits:1"}, "--unit"},
      {{"critical", "--alpha", "0.05", "--mode", "paper", "--sided", "one"}, "--mode"},
      {{"critical", "--alpha", "0.05", "--mode", "fuzzy"}, "--mode"},
      {{"test", "--p-obs", "0"}, "--p-obs"},
      {{"test", "--p-obs", "1.2"}, "--p-obs"},
      {{"test"}, "--p-obs"},
      {{"table", "--alphas", "0.1,x"}, "--alphas"},
      {{"table", "--alphas", "0.1", "--format", "tsv"}, "--format"},
      {{"mc-check", "--target", "magic", "--seed", "1", "--samples", "10"}, "--target"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args);
    const auto r = cli(c.args);
    CHECK(r.code == 2);
    CHECK(r.err.find(c.flag) != std::string::npos);
  }
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"critical"}).code == 2);
  CHECK(cli({"critical", "--alpha", "abc"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("fuzzed valid flag combinations produce parseable output") {
  std::mt19937_64 rng(2024);
  auto pick = [&](const std::vector<std::string>& options) {
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  };
  const std::vector<std::string> sides{"one", "two"};
  const std::vector<std::string> refs{"uniform:2", "uniform:10", "event:0.3", "event:0.05"};
  const std::vector<std::string> priors{"uniform", "beta:0.5,0.5", "beta:2,3", "beta:1,1"};
  const std::vector<std::string> units{"bits", "nats", "nits:10"};
  const std::vector<std::string> alphas{"0.001", "0.01", "0.05", "0.1", "0.25", "0.5"};

  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const int kind = i % 4;
    std::vector<std::string> args;
    if (kind == 0) {
      args = {"table", "--alphas", pick(alphas) + "," + pick(alphas), "--sided", pick(sides), "--ref", pick(refs),
              "--prior", pick(priors), "--unit", pick(units), "--unit", pick(units)};
      if (i % 8 == 0) args.push_back("--raw");
    } else if (kind == 1) {
      args = {"test", "--p-obs", pick({"0.01", "0.3", "0.5", "0.9", "1"}), "--alpha", pick(alphas), "--sided",
              pick(sides), "--ref", pick(refs), "--prior", pick(priors), "--unit", pick(units)};
    } else if (kind == 2) {
      args = {"mc-check", "--target", pick({"cdf", "tail"}), "--threshold", pick({"0", "0.2", "0.7"}), "--sided",
              pick(sides), "--ref", pick(refs), "--prior", pick(priors), "--seed", std::to_string(i), "--samples",
              "20000"};
    } else {
      args = {"critical", "--alpha", pick(alphas), "--sided", pick(sides), "--ref", pick(refs), "--prior",
              pick(priors), "--unit", pick(units)};
    }
    CAPTURE(args);
    const auto r = cli(args);
    if (kind == 0) {
      REQUIRE(r.code == 0);
      const auto lines = lines_of(r.out);
      REQUIRE(lines.size() == 3);
      for (const auto& line : lines) CHECK(count_cells(line) == 3);
    } else if (kind == 1 || kind == 2) {
      REQUIRE(r.code != 2);
      const auto j = json::parse(r.out, nullptr, false);
      CHECK_FALSE(j.is_discarded());
      CHECK(j.is_object());
    } else {
      REQUIRE(r.code == 0);
      CHECK(lines_of(r.out).size() == 1);
    }
    ++checked;
  }
  CHECK(checked == 200);
}
