#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <map>
#include <ostream>

#include "cli/output.hpp"
#include "northpole/densities.hpp"
#include "northpole/error.hpp"
#include "northpole/estimate.hpp"
#include "northpole/haar.hpp"
#include "northpole/pole.hpp"

namespace northpole::cli {

namespace {

using json = nlohmann::ordered_json;

const char* to_string(Command c) {
  switch (c) {
    case Command::Sample: return "sample";
    case Command::Density: return "density";
    case Command::Table: return "table";
    case Command::Verify: return "verify";
    case Command::Haar: return "haar";
  }
  return "";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Direct: return "direct";
    case Method::Qr: return "qr";
    case Method::Decomposition: return "decomposition";
  }
  return "";
}

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = to_string(cfg.command);
  j["p"] = cfg.p;
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["method"] = to_string(cfg.method);
  j["format"] = to_string(cfg.format);
  j["alpha"] = cfg.alpha;
  if (cfg.command == Command::Table) j["dims"] = cfg.dims;
  if (cfg.command == Command::Verify) {
    j["identity_draws"] = cfg.identity_draws;
    j["fixture"] = mc::to_string(cfg.fixture);
  }
  return j;
}

void write_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

json ks_json(const mc::KsReport& r) {
  return json{{"statistic", r.statistic}, {"n", r.n},
              {"m", r.m},                 {"alpha", r.alpha},
              {"critical", r.critical},   {"pass", r.pass},
              {"attempts", r.attempts}};
}

haar::HaarMethod haar_method(Method m) {
  return m == Method::Decomposition ? haar::HaarMethod::Decomposition
                                    : haar::HaarMethod::Qr;
}

}  // namespace

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 1) throw UsageError("sample: --k must be >= 1");
  const bool exact = cfg.method == Method::Exact;
  if (exact && cfg.k > 3) {
    throw UsageError("no exact representation; use --method direct");
  }
  if (exact && cfg.p < (cfg.k == 1 ? 2 : 3)) {
    throw UsageError("sample: exact U_" + std::to_string(cfg.k) + " requires p >= " +
                     std::to_string(cfg.k == 1 ? 2 : 3));
  }
  if (!exact && cfg.method == Method::Decomposition && cfg.p < 3) {
    throw UsageError("sample: the decomposition sampler requires p >= 3");
  }
  if (cfg.p < 1) throw UsageError("sample: --p must be >= 1");

  const int k = cfg.k;
  const int p = cfg.p;
  const mc::StreamPlan plan{cfg.seed, std::string("sample/") + to_string(cfg.method)};
  std::vector<double> values;
  if (exact) {
    values = mc::collect(
        [&](RngStream& rng) { return pole::sample_exact(k, p, rng).value; }, cfg.n,
        plan);
  } else {
    const haar::HaarMethod hm = haar_method(cfg.method);
    values = mc::collect(
        [&](RngStream& rng) { return pole::sample_direct(k, p, hm, rng).value; },
        cfg.n, plan);
  }

  if (cfg.format == Format::Csv) {
    write_csv_row(out, "index", "value");
    for (std::size_t i = 0; i < values.size(); ++i) {
      write_csv_row(out, i, format_double(values[i]));
    }
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      rows.push_back({{"index", i}, {"value", values[i]}});
    }
    write_json(out, json{{"config", config_json(cfg)}, {"rows", rows}});
  }
  return kExitSuccess;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  if (cfg.p == 1) {
    throw UsageError("degenerate density: f(.|1) is two point masses at ±1");
  }
  if (cfg.p < 2) throw UsageError("density: --p must be >= 2");
  if (cfg.n < 2) throw UsageError("density: grid size --n must be >= 2");

  // Cell midpoints of an even partition of (-1, 1).
  const double n = static_cast<double>(cfg.n);
  json rows = json::array();
  if (cfg.format == Format::Csv) write_csv_row(out, "x", "density", "cdf");
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double x = -1.0 + (2.0 * static_cast<double>(i) + 1.0) / n;
    const double f = densities::density_f(x, cfg.p);
    const double c = densities::cdf_f(x, cfg.p);
    if (cfg.format == Format::Csv) {
      write_csv_row(out, format_double(x), format_double(f), format_double(c));
    } else {
      rows.push_back({{"x", x}, {"density", f}, {"cdf", c}});
    }
  }
  if (cfg.format == Format::Json) {
    write_json(out, json{{"config", config_json(cfg)}, {"rows", rows}});
  }
  return kExitSuccess;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < mc::kMinEstimateSamples) {
    throw UsageError("table: --n must be >= " +
                     std::to_string(mc::kMinEstimateSamples));
  }
  for (int p : cfg.dims) {
    if (p < 3) throw UsageError("table: every dimension must be >= 3");
  }
  const auto rows = mc::reproduce_table(cfg.dims, cfg.n, cfg.seed);
  if (cfg.format == Format::Csv) {
    write_csv_row(out, "p", "prob_positive", "std_error", "n");
    for (const auto& r : rows) {
      write_csv_row(out, r.p, format_double(r.prob_positive),
                    format_double(r.std_error), r.n);
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"p", r.p},
                     {"prob_positive", r.prob_positive},
                     {"std_error", r.std_error},
                     {"n", r.n}});
    }
    write_json(out, json{{"config", config_json(cfg)}, {"rows", arr}});
  }
  return kExitSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw UsageError("verify: --alpha must lie in (0, 1)");
  }
  if (cfg.n < mc::kMinEstimateSamples) {
    throw UsageError("verify: --n must be >= " +
                     std::to_string(mc::kMinEstimateSamples));
  }
  mc::BatteryConfig bc;
  bc.seed = cfg.seed;
  bc.n = cfg.n;
  bc.alpha = cfg.alpha;
  bc.identity_draws = cfg.identity_draws;
  bc.fixture = cfg.fixture;
  const mc::BatteryReport report = mc::run_battery(bc);

  if (cfg.format == Format::Csv) {
    write_csv_row(out, "name", "pass", "observed", "bound");
    for (const auto& c : report.checks) {
      write_csv_row(out, c.name, c.pass ? 1 : 0, format_double(c.observed),
                    format_double(c.bound));
    }
  } else {
    json rows = json::array();
    for (const auto& c : report.checks) {
      json row{{"name", c.name},
               {"pass", c.pass},
               {"observed", c.observed},
               {"bound", c.bound}};
      if (c.ks) row["ks"] = ks_json(*c.ks);
      rows.push_back(std::move(row));
    }
    write_json(out, json{{"config", config_json(cfg)},
                         {"pass", report.all_pass()},
                         {"failures", report.failures()},
                         {"rows", rows}});
  }

  if (report.all_pass()) return kExitSuccess;
  for (const auto& name : report.failures()) err << "FAILED: " << name << '\n';
  return kExitVerificationFailure;
}

int cmd_haar(const RunConfig& cfg, std::ostream& out) {
  if (cfg.method != Method::Qr && cfg.method != Method::Decomposition) {
    throw UsageError("haar: --method must be qr or decomposition");
  }
  if (cfg.method == Method::Decomposition && cfg.p < 3) {
    throw UsageError("haar: the decomposition sampler requires p >= 3");
  }
  if (cfg.p < 1) throw UsageError("haar: --p must be >= 1");

  const haar::HaarMethod hm = haar_method(cfg.method);
  const int p = cfg.p;
  const auto samples = mc::collect(
      [&](RngStream& rng) {
        return hm == haar::HaarMethod::Qr ? haar::sample_haar_qr(p, rng)
                                          : haar::sample_haar_decomposition(p, rng);
      },
      cfg.n, mc::StreamPlan{cfg.seed, std::string("haar/") + to_string(cfg.method)});

  if (cfg.format == Format::Csv) {
    out << "index,defect";
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) out << ",g" << i << '_' << j;
    }
    out << '\n';
  }
  json rows = json::array();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& g = samples[s].gamma;
    const double defect = linalg::orthogonality_defect(g);
    if (!(defect <= haar::kOrthogonalityTolerance)) {
      throw NumericError("haar: emitted matrix has orthogonality defect " +
                         format_double(defect));
    }
    if (cfg.format == Format::Csv) {
      out << s << ',' << format_double(defect);
      for (double x : g.data()) out << ',' << format_double(x);
      out << '\n';
    } else {
      json matrix = json::array();
      for (std::size_t i = 0; i < g.dim(); ++i) {
        matrix.push_back(std::vector<double>(g.row(i).begin(), g.row(i).end()));
      }
      rows.push_back({{"index", s}, {"defect", defect}, {"matrix", matrix}});
    }
  }
  if (cfg.format == Format::Json) {
    write_json(out, json{{"config", config_json(cfg)}, {"rows", rows}});
  }
  return kExitSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Haar orthogonal matrices and the north-pole statistics U_k"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format;
  const std::map<std::string, Method> methods{{"exact", Method::Exact},
                                              {"direct", Method::Direct},
                                              {"qr", Method::Qr},
                                              {"decomposition", Method::Decomposition}};
  const std::map<std::string, Format> formats{{"csv", Format::Csv},
                                              {"json", Format::Json}};
  std::string fixture_name = "none";

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master 64-bit seed")
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
        ->option_text("csv|json");
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method,
                    "exact, direct, qr or decomposition")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case).description(""))
        ->option_text("exact|direct|qr|decomposition");
  };

  auto* sample = app.add_subcommand("sample", "Draw U_k = (Γ^k)_11");
  sample->add_option("--k", cfg.k, "Matrix power k >= 1");
  sample->add_option("--p", cfg.p, "Dimension p");
  sample->add_option("--n", cfg.n, "Number of draws (default 100000)");
  add_method(sample);
  add_seed(sample);
  add_format(sample);

  auto* density = app.add_subcommand("density", "Tabulate f(.|p) and its CDF");
  density->add_option("--p", cfg.p, "Dimension p >= 2");
  density->add_option("--n", cfg.n, "Grid points (default 201)");
  add_format(density);

  auto* table = app.add_subcommand("table", "Estimate P(U_2 > 0) per dimension");
  table->add_option("--dims", cfg.dims, "Comma-separated dimensions")
      ->delimiter(',');
  table->add_option("--n", cfg.n, "Draws per dimension (default 1000000)");
  add_seed(table);
  add_format(table);

  auto* verify = app.add_subcommand("verify", "Run the verification battery");
  verify->add_option("--n", cfg.n, "Draws per statistical check (default 100000)");
  verify->add_option("--alpha", cfg.alpha, "KS significance level")
      ->capture_default_str();
  verify->add_option("--identity-draws", cfg.identity_draws,
                     "Haar draws per dimension for the algebraic identities")
      ->capture_default_str();
  verify->add_option("--fixture", fixture_name,
                     "Run against a known-bad component: none, qr-no-sign-fix, "
                     "u2-drop-xi1-squared")
      ->check(CLI::IsMember({"none", "qr-no-sign-fix", "u2-drop-xi1-squared"}));
  add_seed(verify);
  add_format(verify);

  auto* haar_cmd = app.add_subcommand("haar", "Emit Haar orthogonal matrices");
  haar_cmd->add_option("--p", cfg.p, "Dimension p");
  haar_cmd->add_option("--n", cfg.n, "Number of matrices (default 1)");
  add_method(haar_cmd);
  add_seed(haar_cmd);
  add_format(haar_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  // Per-command defaults for options that were not given.
  auto given = [](CLI::App* sub, const char* name) {
    return sub->count(name) > 0;
  };
  try {
    if (*sample) {
      cfg.command = Command::Sample;
      return cmd_sample(cfg, out);
    }
    if (*density) {
      cfg.command = Command::Density;
      if (!given(density, "--n")) cfg.n = 201;
      return cmd_density(cfg, out);
    }
    if (*table) {
      cfg.command = Command::Table;
      if (!given(table, "--n")) cfg.n = 1000000;
      if (cfg.dims.empty()) cfg.dims = mc::kTableDims;
      return cmd_table(cfg, out);
    }
    if (*verify) {
      cfg.command = Command::Verify;
      if (!given(verify, "--format")) cfg.format = Format::Json;
      cfg.fixture = *mc::parse_fixture(fixture_name);
      return cmd_verify(cfg, out, err);
    }
    cfg.command = Command::Haar;
    if (!given(haar_cmd, "--n")) cfg.n = 1;
    if (!given(haar_cmd, "--format")) cfg.format = Format::Json;
    if (!given(haar_cmd, "--method")) cfg.method = Method::Qr;
    return cmd_haar(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
}

}  // namespace northpole::cli
