#include "aitest/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aitest/errors.hpp"
#include "aitest/gof.hpp"
#include "aitest/mc_oracle.hpp"
#include "aitest/tables.hpp"
#include "aitest/test_engine.hpp"

namespace aitest::cli {
namespace {

using nlohmann::json;

// Raised for a flag whose value is malformed; the message names the flag.
struct FlagError : ValidationError {
  FlagError(const std::string& flag, const std::string& why) : ValidationError(flag + ": " + why) {}
};

template <class F>
auto with_flag(const std::string& flag, F&& parse) {
  try {
    return parse();
  } catch (const FlagError&) {
    throw;
  } catch (const std::exception& e) {
    throw FlagError(flag, e.what());
  }
}

double parse_number(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("'" + std::string(text) + "' is not a number");
  }
  return v;
}

std::vector<double> parse_number_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::string_view rest = item;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(parse_number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return out;
}

Sidedness parse_sided(const std::string& s) {
  if (s == "one") return Sidedness::OneSidedUpper;
  if (s == "two") return Sidedness::TwoSided;
  throw FlagError("--sided", "expected 'one' or 'two', got '" + s + "'");
}

CriticalMode parse_mode(const std::string& s) {
  if (s == "exact") return CriticalMode::Exact;
  if (s == "paper") return CriticalMode::PaperTable;
  throw FlagError("--mode", "expected 'exact' or 'paper', got '" + s + "'");
}

// uniform | beta:a,b | empirical:path.json | inline JSON object
Prior parse_prior(const std::string& s) {
  return with_flag("--prior", [&] {
    if (s == "uniform") return Prior::uniform();
    if (s.starts_with("beta:")) {
      const auto params = parse_number_list({s.substr(5)});
      if (params.size() != 2) throw ValidationError("beta prior needs two parameters, beta:a,b");
      return Prior::beta(params[0], params[1]);
    }
    if (s.starts_with("empirical:")) {
      const std::string path = s.substr(10);
      std::ifstream in(path);
      if (!in) throw ValidationError("cannot open '" + path + "'");
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded()) throw ValidationError("'" + path + "' is not valid JSON");
      if (j.is_array()) j = json{{"type", "empirical"}, {"table", j}};
      return prior_from_json(j);
    }
    if (!s.empty() && s.front() == '{') {
      json j = json::parse(s, nullptr, false);
      if (j.is_discarded()) throw ValidationError("inline prior is not valid JSON");
      return prior_from_json(j);
    }
    throw ValidationError("expected uniform, beta:a,b, empirical:path.json or a JSON object");
  });
}

std::vector<InfoUnit> parse_units(const std::vector<std::string>& names, const InfoUnit& fallback) {
  if (names.empty()) return {fallback};
  std::vector<InfoUnit> units;
  for (const auto& n : names) units.push_back(with_flag("--unit", [&] { return parse_unit(n); }));
  return units;
}

std::string sided_name(Sidedness s) { return s == Sidedness::OneSidedUpper ? "one" : "two"; }
std::string mode_name(CriticalMode m) { return m == CriticalMode::Exact ? "exact" : "paper"; }

// JSON has no infinity; +inf critical values are emitted as the string "inf".
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_shortest(v);
}

// Flags shared by the subcommands that describe a test.
struct SpecFlags {
  std::string sided = "two";
  std::string ref = "uniform:2";
  std::string prior = "uniform";
  std::string mode = "exact";
  std::vector<std::string> units;
  bool raw = false;

  void add_to(CLI::App* cmd, bool with_mode = true, bool multi_unit = false) {
    cmd->add_option("--sided", sided, "one | two")->capture_default_str();
    cmd->add_option("--ref", ref, "uniform:N | event:q")->capture_default_str();
    cmd->add_option("--prior", prior, "uniform | beta:a,b | empirical:path.json | JSON")->capture_default_str();
    if (with_mode) cmd->add_option("--mode", mode, "exact | paper")->capture_default_str();
    auto* u = cmd->add_option("--unit", units, "bits | nats | nits:N");
    if (multi_unit) {
      u->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    } else {
      u->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::Throw);
    }
    cmd->add_flag("--raw", raw, "print full precision");
  }

  TestSpec spec(double alpha, const InfoUnit& unit_fallback = InfoUnit::nats()) const {
    TestSpec s;
    s.sidedness = parse_sided(sided);
    s.alpha = alpha;
    s.unit = parse_units(units, unit_fallback).front();
    s.ref = with_flag("--ref", [&] { return parse_reference(ref); });
    s.prior = parse_prior(prior);
    s.mode = parse_mode(mode);
    return s;
  }
};

void require_alpha_flag(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw FlagError("--alpha", "must lie in (0,1)");
}

void check_mode_supported(const TestSpec& s) {
  if (s.mode == CriticalMode::PaperTable &&
      (s.sidedness != Sidedness::TwoSided || s.ref.q() != 0.5 || !s.prior.is_uniform())) {
    throw FlagError("--mode", "paper mode needs --sided two, the coin reference and a uniform prior");
  }
}

std::string render(double v, bool raw, int decimals = 4) {
  return raw ? format_shortest(v) : format_fixed(v, decimals);
}

std::pair<std::vector<double>, std::vector<double>> read_csv_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::vector<double> p;
  std::vector<double> q;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("line " + std::to_string(lineno) + ": expected p,q");
    std::string a = line.substr(0, comma);
    std::string b = line.substr(comma + 1);
    if (lineno == 1 && a == "p" && b == "q") continue;
    p.push_back(parse_number(a));
    q.push_back(parse_number(b));
  }
  return {p, q};
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact hypothesis tests for active information", "aitest"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // critical
    auto* critical = app.add_subcommand("critical", "critical value of the test");
    double crit_alpha = 0.0;
    SpecFlags crit_flags;
    critical->add_option("--alpha", crit_alpha, "significance level in (0,1)")->required();
    crit_flags.add_to(critical, true, true);

    // test
    auto* test = app.add_subcommand("test", "run a test on an observed probability or statistic; JSON output");
    double test_alpha = 0.05;
    std::optional<double> p_obs;
    std::optional<double> stat;
    SpecFlags test_flags;
    auto* p_opt = test->add_option("--p-obs", p_obs, "observed exogenous probability in (0,1]");
    auto* s_opt = test->add_option("--statistic", stat, "precomputed statistic, in --unit");
    p_opt->excludes(s_opt);
    test->add_option("--alpha", test_alpha, "significance level in (0,1)")->capture_default_str();
    test_flags.add_to(test);

    // table
    auto* table = app.add_subcommand("table", "rejection-region table (CSV or markdown)");
    std::string preset;
    std::vector<std::string> alphas;
    std::string format = "csv";
    int precision = 4;
    std::string output;
    SpecFlags table_flags;
    table_flags.sided = "one";
    auto* preset_opt = table->add_option("--preset", preset, "supp-table-1 | supp-table-2");
    auto* alphas_opt = table->add_option("--alphas", alphas, "comma-separated alpha levels")
                           ->expected(1)
                           ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    table->add_option("--format", format, "csv | markdown")->capture_default_str();
    table->add_option("--precision", precision, "decimal places")->capture_default_str()->check(CLI::Range(0, 17));
    table->add_option("--output", output, "write to file instead of stdout");
    table_flags.add_to(table, true, true);
    preset_opt->excludes(alphas_opt);
    for (const char* name : {"--sided", "--ref", "--prior", "--mode", "--unit"}) {
      preset_opt->excludes(table->get_option(name));
    }

    // cdf
    auto* cdf = app.add_subcommand("cdf", "CDF, tail or density of the statistic at a threshold");
    double cdf_x = 0.0;
    bool want_tail = false;
    bool want_pdf = false;
    SpecFlags cdf_flags;
    cdf->add_option("--x", cdf_x, "threshold, in --unit")->required();
    auto* tail_flag = cdf->add_flag("--tail", want_tail, "print P[statistic > x] instead");
    auto* pdf_flag = cdf->add_flag("--pdf", want_pdf, "print the two-sided density (uniform prior)");
    tail_flag->excludes(pdf_flag);
    cdf_flags.add_to(cdf, false);

    // gof
    auto* gof = app.add_subcommand("gof", "goodness-of-fit statistic between two distributions");
    std::string p_file;
    std::string q_file;
    std::string csv_file;
    std::optional<double> step;
    std::vector<std::string> gof_units;
    bool gof_raw = false;
    auto* gp = gof->add_option("--p", p_file, "one probability per line");
    auto* gq = gof->add_option("--q", q_file, "one probability per line");
    auto* gc = gof->add_option("--csv", csv_file, "two-column p,q file");
    gc->excludes(gp)->excludes(gq);
    gp->needs(gq);
    gq->needs(gp);
    gof->add_option("--step", step, "grid spacing; treats inputs as sampled densities");
    gof->add_option("--unit", gof_units, "bits | nats | nits:N")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::Throw);
    gof->add_flag("--raw", gof_raw, "print full precision");

    // mc-check
    auto* mc = app.add_subcommand("mc-check", "Monte Carlo cross-check of an exact result; JSON report");
    std::string target = "cdf";
    double threshold = 0.0;
    double mc_alpha = 0.05;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::string v_file;
    std::optional<double> r_value;
    std::vector<std::string> x_grid;
    std::string method = "auto";
    SpecFlags mc_flags;
    mc->add_option("--target", target, "cdf | tail | critical | conservation")->capture_default_str();
    auto* thr_opt = mc->add_option("--threshold", threshold, "threshold for cdf/tail, in --unit");
    mc->add_option("--alpha", mc_alpha, "alpha for the critical target")->capture_default_str();
    mc->add_option("--seed", seed, "RNG seed")->required();
    mc->add_option("--samples", samples, "number of samples")->required()->check(CLI::PositiveNumber);
    mc->add_option("--p", p_file, "conservation: distribution file, one probability per line");
    mc->add_option("--v", v_file, "conservation: nonnegative v values, one per line");
    mc->add_option("--r", r_value, "conservation: constant r (default: sum of v)");
    mc->add_option("--x", x_grid, "conservation: comma-separated x values")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    mc->add_option("--method", method, "conservation: auto | enumerate | sample")->capture_default_str();
    mc_flags.add_to(mc);

    std::vector<const char*> argv{"aitest"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    try {
      if (critical->parsed()) return cmd_critical(crit_alpha, crit_flags);
      if (test->parsed()) {
        if (!p_obs && !stat) throw FlagError("--p-obs", "one of --p-obs or --statistic is required");
        return cmd_test(p_obs, stat, test_alpha, test_flags);
      }
      if (table->parsed()) return cmd_table(preset, alphas, format, precision, output, table_flags);
      if (cdf->parsed()) return cmd_cdf(cdf_x, want_tail, want_pdf, cdf_flags);
      if (gof->parsed()) return cmd_gof(p_file, q_file, csv_file, step, gof_units, gof_raw);
      if (mc->parsed()) {
        if (target == "cdf" || target == "tail") {
          if (thr_opt->count() == 0) throw FlagError("--threshold", "required for --target " + target);
          return cmd_mc_distribution(target == "tail", threshold, seed, samples, mc_flags);
        }
        if (target == "critical") return cmd_mc_critical(mc_alpha, seed, samples, mc_flags);
        if (target == "conservation") return cmd_mc_conservation(p_file, v_file, r_value, x_grid, method, seed, samples);
        throw FlagError("--target", "expected cdf, tail, critical or conservation");
      }
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    return kExitUsage;
  }

 private:
  int cmd_critical(double alpha, const SpecFlags& flags) {
    require_alpha_flag(alpha);
    const TestSpec s = flags.spec(alpha);
    check_mode_supported(s);
    const auto units = parse_units(flags.units, InfoUnit::nats());
    const InfoValue crit = s.sidedness == Sidedness::OneSidedUpper
                               ? critical_one_sided(alpha, s.ref, s.prior, InfoUnit::nats())
                               : critical_two_sided(alpha, s.ref, s.prior, s.mode);
    for (const auto& u : units) out_ << render(convert(crit, u).value, flags.raw) << '\n';
    return kExitOk;
  }

  int cmd_test(std::optional<double> p_obs, std::optional<double> stat, double alpha, const SpecFlags& flags) {
    require_alpha_flag(alpha);
    const TestSpec s = flags.spec(alpha);
    check_mode_supported(s);
    TestResult r;
    if (p_obs) {
      if (!(*p_obs > 0.0 && *p_obs <= 1.0)) throw FlagError("--p-obs", "must lie in (0,1]");
      r = run_test(*p_obs, s);
    } else {
      if (std::isnan(*stat)) throw FlagError("--statistic", "is NaN");
      r = run_test_on_statistic(InfoValue{*stat, s.unit}, s);
    }
    json j{{"statistic", number(r.statistic.value.value)},
           {"unit", s.unit.name()},
           {"p_value", r.p_value},
           {"critical_value", number(r.critical_value.value)},
           {"alpha", r.alpha},
           {"reject", r.reject},
           {"sided", sided_name(s.sidedness)},
           {"reference", s.ref.name()},
           {"prior", prior_to_json(s.prior)},
           {"mode", mode_name(s.mode)}};
    out_ << j.dump() << '\n';
    return r.reject ? kExitReject : kExitOk;
  }

  int cmd_table(const std::string& preset, const std::vector<std::string>& alphas, const std::string& format,
                int precision, const std::string& output, const SpecFlags& flags) {
    TableSpec spec;
    if (!preset.empty()) {
      auto p = table_preset(preset);
      if (!p) throw FlagError("--preset", "unknown preset '" + preset + "'");
      spec = *p;
    } else {
      if (alphas.empty()) throw FlagError("--alphas", "one of --preset or --alphas is required");
      spec.alphas = with_flag("--alphas", [&] { return parse_number_list(alphas); });
      const TestSpec s = flags.spec(0.5);
      check_mode_supported(TestSpec{s.sidedness, 0.5, s.unit, s.ref, s.prior, s.mode});
      spec.sidedness = s.sidedness;
      spec.ref = s.ref;
      spec.prior = s.prior;
      spec.mode = s.mode;
      if (!flags.units.empty()) {
        spec.units = parse_units(flags.units, InfoUnit::nats());
      } else if (spec.sidedness == Sidedness::TwoSided) {
        spec.units = {InfoUnit::nats(), InfoUnit::bits()};
      }
    }
    if (format == "csv") {
      spec.format = TableFormat::Csv;
    } else if (format == "markdown") {
      spec.format = TableFormat::Markdown;
    } else {
      throw FlagError("--format", "expected csv or markdown");
    }
    spec.precision = precision;
    spec.raw = flags.raw;
    const std::string text = with_flag("--alphas", [&] { return generate_table(spec); });
    if (output.empty()) {
      out_ << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) throw FlagError("--output", "cannot write '" + output + "'");
      f << text;
    }
    return kExitOk;
  }

  int cmd_cdf(double x, bool tail, bool pdf, const SpecFlags& flags) {
    const TestSpec s = flags.spec(0.5);
    const InfoValue threshold{x, s.unit};
    double value = 0.0;
    if (s.sidedness == Sidedness::OneSidedUpper) {
      if (pdf) throw FlagError("--pdf", "only available with --sided two");
      value = tail ? tail_one_sided(threshold, s.ref, s.prior) : cdf_one_sided(threshold, s.ref, s.prior);
    } else {
      if (!(x >= 0.0)) throw FlagError("--x", "two-sided thresholds must be >= 0");
      const double n = threshold.in_nats();
      if (pdf) {
        if (!s.prior.is_uniform()) throw FlagError("--pdf", "only available with the uniform prior");
        value = pdf_two_sided(n, s.ref);
      } else {
        value = tail ? tail_two_sided(n, s.ref, s.prior) : cdf_two_sided(n, s.ref, s.prior);
      }
    }
    out_ << render(value, flags.raw) << '\n';
    return kExitOk;
  }

  int cmd_gof(const std::string& p_file, const std::string& q_file, const std::string& csv_file,
              std::optional<double> step, const std::vector<std::string>& units, bool raw) {
    std::vector<double> p;
    std::vector<double> q;
    if (!csv_file.empty()) {
      std::tie(p, q) = with_flag("--csv", [&] { return read_csv_pairs(csv_file); });
    } else if (!p_file.empty()) {
      p = with_flag("--p", [&] { return load_column(p_file); });
      q = with_flag("--q", [&] { return load_column(q_file); });
    } else {
      throw FlagError("--p", "provide --p and --q, or --csv");
    }
    const InfoUnit unit = parse_units(units, InfoUnit::nats()).front();
    double value = 0.0;
    if (step) {
      if (!(*step > 0.0)) throw FlagError("--step", "must be positive");
      value = gof_statistic(GridPair{p, q, *step}, unit);
    } else {
      if (p.size() != q.size()) throw ShapeError("p and q differ in length");
      value = gof_statistic(DiscretePair{DiscreteDist(p), DiscreteDist(q)}, unit);
    }
    out_ << render(value, raw, 6) << '\n';
    return kExitOk;
  }

  int cmd_mc_distribution(bool tail, double threshold, std::uint64_t seed, std::uint64_t samples,
                          const SpecFlags& flags) {
    const TestSpec s = flags.spec(0.5);
    const InfoValue t{threshold, s.unit};
    double exact = 0.0;
    if (s.sidedness == Sidedness::OneSidedUpper) {
      exact = cdf_one_sided(t, s.ref, s.prior);
    } else {
      if (!(threshold >= 0.0)) throw FlagError("--threshold", "two-sided thresholds must be >= 0");
      exact = cdf_two_sided(t.in_nats(), s.ref, s.prior);
    }
    MCEstimate est = empirical_cdf(t, s.sidedness, s.ref, s.prior, seed, samples);
    if (tail) {
      est.estimate = 1.0 - est.estimate;
      exact = 1.0 - exact;
    }
    const bool pass = agrees_within(est, exact, 4.0);
    json j{{"target", tail ? "tail" : "cdf"},
           {"sided", sided_name(s.sidedness)},
           {"threshold", threshold},
           {"unit", s.unit.name()},
           {"reference", s.ref.name()},
           {"prior", prior_to_json(s.prior)},
           {"estimate", est.estimate},
           {"std_error", est.std_error},
           {"exact", exact},
           {"samples", est.n_samples},
           {"seed", est.seed},
           {"tolerance_se", 4.0},
           {"pass", pass}};
    out_ << j.dump() << '\n';
    return pass ? kExitOk : kExitReject;
  }

  int cmd_mc_critical(double alpha, std::uint64_t seed, std::uint64_t samples, const SpecFlags& flags) {
    require_alpha_flag(alpha);
    const TestSpec s = flags.spec(alpha);
    if (s.mode != CriticalMode::Exact) throw FlagError("--mode", "mc-check compares against exact critical values");
    if (samples < 1000) throw FlagError("--samples", "the critical target needs at least 1000 samples");
    const double exact = s.sidedness == Sidedness::OneSidedUpper
                             ? critical_one_sided(alpha, s.ref, s.prior, InfoUnit::nats()).value
                             : critical_two_sided(alpha, s.ref, s.prior).value;
    const double est = empirical_critical(alpha, s.sidedness, s.ref, s.prior, seed, samples);
    const double se = quantile_standard_error(alpha, exact, s.sidedness, s.ref, s.prior, samples);
    const bool pass = std::fabs(est - exact) <= 4.0 * se;
    json j{{"target", "critical"},         {"sided", sided_name(s.sidedness)},
           {"alpha", alpha},               {"reference", s.ref.name()},
           {"prior", prior_to_json(s.prior)}, {"unit", "nats"},
           {"estimate", est},              {"std_error", number(se)},
           {"exact", number(exact)},       {"samples", samples},
           {"seed", seed},                 {"tolerance_se", 4.0},
           {"pass", pass}};
    out_ << j.dump() << '\n';
    return pass ? kExitOk : kExitReject;
  }

  int cmd_mc_conservation(const std::string& p_file, const std::string& v_file, std::optional<double> r_value,
                          const std::vector<std::string>& x_items, const std::string& method_name,
                          std::uint64_t seed, std::uint64_t samples) {
    if (p_file.empty()) throw FlagError("--p", "required for --target conservation");
    if (v_file.empty()) throw FlagError("--v", "required for --target conservation");
    const DiscreteDist p = with_flag("--p", [&] { return DiscreteDist::load(p_file); });
    const std::vector<double> v = with_flag("--v", [&] { return load_column(v_file); });
    const double r = r_value ? *r_value : std::accumulate(v.begin(), v.end(), 0.0);
    const std::vector<double> xs =
        x_items.empty() ? std::vector<double>{0.0, 0.5, 1.0, 2.0} : with_flag("--x", [&] { return parse_number_list(x_items); });
    BoundMethod method = BoundMethod::Auto;
    if (method_name == "enumerate") {
      method = BoundMethod::Enumerate;
    } else if (method_name == "sample") {
      method = BoundMethod::Sample;
    } else if (method_name != "auto") {
      throw FlagError("--method", "expected auto, enumerate or sample");
    }
    const auto rows = with_flag("--v", [&] { return conservation_bound_check(p, v, r, xs, seed, samples, method); });
    bool pass = true;
    json jrows = json::array();
    for (const auto& row : rows) {
      pass = pass && row.holds;
      jrows.push_back({{"x", row.x},
                       {"lhs", row.lhs},
                       {"std_error", row.std_error},
                       {"bound", row.bound},
                       {"holds", row.holds}});
    }
    json j{{"target", "conservation"}, {"r", r}, {"samples", samples}, {"seed", seed}, {"rows", jrows}, {"pass", pass}};
    out_ << j.dump() << '\n';
    return pass ? kExitOk : kExitReject;
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return Runner(out, err).run(args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  } catch (...) {
    err << "error: unexpected failure\n";
  }
  return kExitUsage;
}

}  // namespace aitest::cli
