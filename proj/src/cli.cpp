#include "flrwkit/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "flrwkit/axi_chart.hpp"
#include "flrwkit/config.hpp"
#include "flrwkit/criteria.hpp"
#include "flrwkit/format.hpp"
#include "flrwkit/probe.hpp"
#include "flrwkit/report_io.hpp"
#include "flrwkit/sph_chart.hpp"
#include "flrwkit/verify.hpp"

namespace flrwkit {

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

// Failure to write an output file.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw OutputError("failed writing output file '" + path + "'");
}

RunConfig load(const Flags& flags) {
  if (flags.config.empty()) throw ConfigError(0, "", "--config PATH is required");
  RunConfig rc = load_run_config(ConfigFile::load(flags.config));
  if (flags.seed) rc.verify.options.seed = *flags.seed;
  if (flags.tol) {
    if (!(*flags.tol > 0.0)) throw ConfigError(0, "--tol", "--tol must be positive");
    rc.verify.options.tol = *flags.tol;
  }
  return rc;
}

std::shared_ptr<const SphericalChart> build_spherical(const RunConfig& rc) {
  if (!rc.has_spherical) throw ConfigError(0, "spherical", "this command needs a [spherical] section");
  const SphChartParams p{.branch = branch_for_curvature(rc.spec.K),
                         .sf = rc.spec.sf,
                         .labeling = rc.spherical.labeling,
                         .t_ref = rc.spherical.t_ref};
  return std::make_shared<const SphericalChart>(SphericalChart::build(p, *rc.spherical.region, rc.spherical.dims));
}

AxiChart build_axi(const RunConfig& rc) {
  if (!rc.has_axi) throw ConfigError(0, "axi", "this command needs an [axi] section");
  std::shared_ptr<const FGSource> source;
  try {
    if (rc.axi.source == AxiSource::synthetic) {
      source = std::make_shared<const SyntheticFG>(rc.axi.F_text, rc.axi.G_text, *rc.axi.box);
    } else {
      const auto chart = build_spherical(rc);
      // Without an explicit box, centre the automatic one on R0.
      const TRBox box = rc.axi.box ? *rc.axi.box : chart->safe_box(rc.axi.R0);
      source = std::make_shared<const ChartFG>(chart, box);
    }
    const Profile profile = rc.axi.profile == "x" ? Profile() : Profile(rc.axi.profile);
    return AxiChart(source, rc.axi.R0, profile);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::domain && e.code() != ErrorCode::sample_outside_region) throw;
    throw ConfigError(0, "axi", e.what());
  }
}

int cmd_classify(const Flags& flags, std::ostream& out) {
  const RunConfig rc = load(flags);
  emit(flags.out, classify_json(full_report(rc.spec)), out);
  return exit_ok;
}

int cmd_chart_spherical(const Flags& flags, std::ostream& out) {
  const RunConfig rc = load(flags);
  const auto chart = build_spherical(rc);
  std::ostringstream csv;
  write_spherical_csv(csv, *chart, rc.spherical.out_nt, rc.spherical.out_nr);
  emit(flags.out, csv.str(), out);
  return exit_ok;
}

int cmd_chart_axi(const Flags& flags, std::ostream& out) {
  const RunConfig rc = load(flags);
  const AxiChart chart = build_axi(rc);
  std::ostringstream csv;
  write_axi_csv(csv, chart, rc.axi);
  emit(flags.out, csv.str(), out);
  return exit_ok;
}

std::string summary_path(const std::string& trace) {
  std::filesystem::path p(trace);
  if (p.extension() == ".json") return trace + ".summary.json";
  p.replace_extension(".json");
  return p.string();
}

int cmd_probe(const Flags& flags, std::ostream& out, std::ostream& err) {
  const RunConfig rc = load(flags);
  const ProbeResult res = probe(rc.spec, rc.probe.curve);
  const WitnessResult w = witness_degeneracy(rc.spec, rc.probe.curve.R0, rc.probe.curve.theta, rc.probe.epsilon);
  const std::string summary = probe_json(rc.spec, rc.probe, res, w);
  if (flags.out.empty()) {
    out << summary;
    err << "note: no --out given; the trace CSV was not written\n";
    return exit_ok;
  }
  std::ostringstream csv;
  write_probe_csv(csv, res);
  emit(flags.out, csv.str(), out);
  emit(summary_path(flags.out), summary, out);
  return exit_ok;
}

int cmd_verify(const Flags& flags, std::ostream& out, std::ostream& err) {
  const RunConfig rc = load(flags);
  std::vector<std::string> ids = rc.verify.identities;
  if (ids.empty()) {
    if (rc.has_spherical) ids.push_back("sph");
    if (rc.has_axi) {
      ids.push_back("axi");
      ids.push_back("jacobian");
    }
  }
  if (ids.empty()) throw ConfigError(0, "verify", "verify needs a [spherical] or [axi] section");
  std::shared_ptr<const SphericalChart> sph;
  std::optional<AxiChart> axi;
  std::vector<VerifyReport> reports;
  for (const auto& id : ids) {
    if (id == "sph") {
      if (!sph) sph = build_spherical(rc);
      reports.push_back(check_sph_pushforward(*sph, rc.verify.options));
    } else {
      if (!axi) axi.emplace(build_axi(rc));
      reports.push_back(id == "axi" ? check_axi_pushforward(*axi, rc.verify.options, rc.axi.theta_min, rc.axi.theta_max)
                                    : check_jacobian(*axi, rc.verify.options, rc.axi.theta_min, rc.axi.theta_max));
    }
  }
  emit(flags.out, verify_json(rc.spec, reports), out);
  bool pass = true;
  for (const auto& r : reports) {
    if (!r.pass)
      err << "verification failed: " << r.identity << " max residual " << format_double(r.max_residual) << " > tol "
          << format_double(r.tol) << '\n';
    pass = pass && r.pass;
  }
  return pass ? exit_ok : exit_verification;
}

int cmd_catalog_list(const Flags& flags, std::ostream& out) {
  std::ostringstream text;
  write_catalog_list(text);
  emit(flags.out, text.str(), out);
  return exit_ok;
}

// Errors that mean the configured problem cannot be set up, as opposed to a
// failure of the computation itself.
bool is_config_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::config:
    case ErrorCode::syntax:
    case ErrorCode::unknown_function:
    case ErrorCode::unknown_entry:
    case ErrorCode::profile_violation:
    case ErrorCode::region_crosses_degenerate_set:
    case ErrorCode::characteristic_escaped_region:
    case ErrorCode::anchor_outside_interval:
    case ErrorCode::curve_leaves_interval:
    case ErrorCode::degenerate_theta_fixed: return true;
    default: return false;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FLRW chart and inextendibility-criteria toolkit", "flrwkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "configuration file");
    sub->add_option("--out", flags.out, "output path (default: standard output)");
    sub->add_option("--seed", flags.seed, "seed of the verification sampler");
    sub->add_option("--tol", flags.tol, "verification tolerance");
  };

  std::function<int()> action;
  auto* classify = app.add_subcommand("classify", "evaluate every inextendibility criterion (JSON report)");
  add_common(classify);
  classify->callback([&] { action = [&] { return cmd_classify(flags, out); }; });

  auto* chart = app.add_subcommand("chart", "export a chart grid (CSV)");
  chart->require_subcommand(1);
  auto* sph = chart->add_subcommand("spherical", "strongly spherically symmetric chart (T, R, F, G)");
  add_common(sph);
  sph->callback([&] { action = [&] { return cmd_chart_spherical(flags, out); }; });
  auto* axi = chart->add_subcommand("axi", "strongly axisymmetric chart (z, rho, A, B, C, J)");
  add_common(axi);
  axi->callback([&] { action = [&] { return cmd_chart_axi(flags, out); }; });

  auto* prb = app.add_subcommand("probe", "limits along a boundary-approaching curve (CSV trace + JSON summary)");
  add_common(prb);
  prb->callback([&] { action = [&] { return cmd_probe(flags, out, err); }; });

  auto* ver = app.add_subcommand("verify", "finite-difference checks of the chart identities (JSON)");
  add_common(ver);
  ver->callback([&] { action = [&] { return cmd_verify(flags, out, err); }; });

  auto* cat = app.add_subcommand("catalog", "built-in example spacetimes");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "one entry per line: name and provenance");
  add_common(list);
  list->callback([&] { action = [&] { return cmd_catalog_list(flags, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_config;
  }

  try {
    return action ? action() : exit_config;
  } catch (const ConfigError& e) {
    err << "config error";
    if (!e.field().empty()) err << " [" << e.field() << "]";
    err << ": " << e.what() << '\n';
    return exit_config;
  } catch (const Error& e) {
    const bool cfg = is_config_error(e.code());
    err << (cfg ? "config error: " : "error: ") << to_string(e.code()) << ": " << e.what() << '\n';
    return cfg ? exit_config : exit_internal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
}

}  // namespace flrwkit
