#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ofdmim/analysis.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/serialization.hpp"
#include "ofdmim/slm.hpp"

namespace ofdmim::cli {

namespace {

// Raised when an output file cannot be created.
struct UnwritableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Long-form flag names for the system symbols: N, n, k, M.
struct ConfigFlags {
  std::size_t n_fft = 64;
  std::size_t group_size = 16;
  std::size_t active = 2;
  std::size_t mod_order = 4;

  void attach(CLI::App& app) {
    app.add_option("--n-fft", n_fft, "Subcarrier count N (power of two)")->capture_default_str();
    app.add_option("--group-size", group_size, "Subcarriers per group n")->capture_default_str();
    app.add_option("--active", active, "Active subcarriers per group k")->capture_default_str();
    app.add_option("--mod-order", mod_order, "Constellation order M")->capture_default_str();
  }

  SystemConfig build() const { return SystemConfig::make(n_fft, group_size, active, mod_order); }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UnwritableError("cannot write '" + path + "'");
  return out;
}

std::string sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  if (p.extension() == ".csv") return p.replace_extension(".json").string();
  return csv_path + ".json";
}

// Writes `body` to `path` when given, otherwise to `out`.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  auto file = open_output(path);
  writer(file);
  if (!file) throw UnwritableError("failed writing '" + path + "'");
}

struct CcdfArgs {
  ConfigFlags cfg;
  std::string scheme = "slm";
  std::size_t u = 4;
  std::string pss = "random";
  std::string pss_file;
  std::string alphabet = "quaternary";
  std::string perm = "identity";
  std::string perm_file;
  std::string sap_source = "uniform";
  bool first_unit_phase = false;
  bool first_identity_perm = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t workers = 1;
  double gamma_min = 4.0;
  double gamma_max = 13.0;
  double gamma_step = 0.1;
  std::size_t oversample = 1;
};

int cmd_ccdf(const CcdfArgs& a, const CLI::App& sub, std::ostream& out) {
  const SystemConfig cfg = a.cfg.build();
  TrialPlan plan{cfg, SchemeDescriptor::original(), a.trials, a.seed,
                 gamma_grid(a.gamma_min, a.gamma_max, a.gamma_step), a.oversample};
  plan.scheme.sap_source = parse_sap_source(a.sap_source);

  if (parse_scheme_mode(a.scheme) == SchemeMode::original) {
    for (const char* flag : {"--u", "--pss", "--pss-file", "--pss-alphabet", "--perm", "--perm-file",
                             "--first-unit-phase", "--first-identity-perm"}) {
      if (sub.count(flag) > 0) {
        throw ConfigError(std::string("--scheme original takes no ") + flag + " (U is forced to 1)");
      }
    }
  } else {
    SchemeDescriptor s = SchemeDescriptor::slm(a.u, parse_pss_source(a.pss), parse_perm_source(a.perm));
    s.sap_source = plan.scheme.sap_source;
    s.alphabet = parse_phase_alphabet(a.alphabet);
    s.first_phase_all_ones = a.first_unit_phase;
    s.first_perm_identity = a.first_identity_perm;
    if (!a.pss_file.empty()) {
      s.pss = PssSource::pinned;
      s.pinned_pss = pss_from_json(read_json_file(a.pss_file));
    }
    if (!a.perm_file.empty()) {
      s.perm = PermSource::pinned;
      s.pinned_perms = perm_set_from_json(read_json_file(a.perm_file), cfg);
    }
    plan.scheme = std::move(s);
  }
  plan.validate();
  const SchemeInstance instance = instantiate_scheme(plan);

  // Fail on unwritable paths before spending time on trials.
  auto csv = open_output(a.out);
  auto sidecar = open_output(sidecar_path(a.out));

  const CcdfCurve curve = run_ccdf(plan, instance, a.workers);
  write_ccdf_csv(csv, curve);
  sidecar << plan_to_json(plan, instance).dump(2) << '\n';
  if (!csv || !sidecar) throw UnwritableError("failed writing '" + a.out + "'");

  out << "wrote " << a.out << " (" << curve.trials << " trials, " << cfg.describe() << ")\n";
  for (double level : {1e-1, 1e-2, 1e-3}) {
    out << "  PAPR at CCDF " << format_number(level) << ": ";
    try {
      out << format_number(papr_at_ccdf(curve, level)) << " dB\n";
    } catch (const UnresolvableError&) {
      out << "unresolved\n";
    }
  }
  return kOk;
}

struct PermArgs {
  ConfigFlags cfg;
  std::string perm = "random";
  std::string perm_file;
  std::size_t u = 2;
  std::uint64_t seed = 1;
  bool first_identity_perm = false;
  std::string out;
};

int cmd_analyze_perm(const PermArgs& a, std::ostream& out) {
  const SystemConfig cfg = a.cfg.build();
  std::optional<PermutationSet> perms;
  if (!a.perm_file.empty()) {
    perms = perm_set_from_json(read_json_file(a.perm_file), cfg);
  } else {
    Rng rng(a.seed, StreamTag::permutations);
    perms = gen_perm_set(cfg, a.u, parse_perm_kind(a.perm), rng, a.first_identity_perm);
  }
  const json doc = mu_reports_to_json(mu_metric_pairs(*perms, cfg), cfg);
  emit(a.out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
  return kOk;
}

struct PssArgs {
  ConfigFlags cfg;
  std::string pss = "cyclic-hadamard";
  std::string pss_file;
  std::string alphabet = "quaternary";
  std::size_t u = 4;
  std::vector<std::size_t> rows{1, 2};
  std::string sap = "random";
  std::string sap_file;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_analyze_pss(const PssArgs& a, std::ostream& out) {
  const SystemConfig cfg = a.cfg.build();
  std::optional<PhaseSequenceSet> pss;
  if (!a.pss_file.empty()) {
    pss = pss_from_json(read_json_file(a.pss_file));
  } else if (parse_pss_source(a.pss) == PssSource::cyclic_hadamard) {
    pss = gen_hadamard_pss(cfg, a.u);
  } else {
    Rng rng(a.seed, StreamTag::phase_sequences);
    pss = gen_random_pss(cfg, a.u, parse_phase_alphabet(a.alphabet), rng);
  }
  if (a.rows.size() != 2) throw ConfigError("--rows takes exactly two sequence indices");
  if (a.rows[0] >= pss->count() || a.rows[1] >= pss->count()) throw ConfigError("--rows index out of range");
  const PhaseSequence& p1 = (*pss)[a.rows[0]];
  const PhaseSequence& p2 = (*pss)[a.rows[1]];
  if (p1.size() != cfg.n_fft()) {
    throw ConfigError("phase sequence length " + std::to_string(p1.size()) + " != N=" +
                      std::to_string(cfg.n_fft()));
  }

  std::vector<std::size_t> active;
  if (!a.sap_file.empty()) {
    const json doc = read_json_file(a.sap_file);
    try {
      active = doc.at("active").get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed SAP file: ") + e.what());
    }
    const Sap sap = Sap::from_active(active, cfg);
    active.assign(sap.active().begin(), sap.active().end());
  } else if (a.sap == "full") {
    for (std::size_t i = 0; i < cfg.n_fft(); ++i) active.push_back(i);
  } else if (a.sap == "random") {
    Rng rng(a.seed, StreamTag::analysis);
    const Sap sap = sample_random_sap(cfg, rng);
    active.assign(sap.active().begin(), sap.active().end());
  } else {
    throw ConfigError("--sap must be 'random' or 'full'");
  }

  const PssSpectrum full = full_spectrum(p1, p2);
  const PssSpectrum punctured = punctured_spectrum(p1, p2, active);
  emit(a.out, out, [&](std::ostream& o) { write_spectrum_csv(o, punctured, full); });
  return kOk;
}

struct VarRhoArgs {
  ConfigFlags cfg;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::vector<std::size_t> lags;
  std::string out;
};

int cmd_verify_var_rho(const VarRhoArgs& a, std::ostream& out) {
  const SystemConfig cfg = a.cfg.build();
  if (a.trials < 1) throw ConfigError("--trials must be >= 1");
  std::vector<std::size_t> lags = a.lags;
  if (lags.empty()) {
    for (std::size_t m = 0; m < cfg.n_fft(); ++m) lags.push_back(m);
  }
  std::vector<VarRhoRow> rows;
  for (std::size_t m : lags) {
    if (m >= cfg.n_fft()) throw ConfigError("lag m must be in [0, N)");
    // One stream per lag so a row does not depend on which other lags were asked for.
    Rng rng(derive_seed(a.seed, m), StreamTag::analysis);
    rows.push_back({m, var_rho_closed_form(cfg, m), var_rho_empirical(cfg, m, a.trials, rng)});
  }
  emit(a.out, out, [&](std::ostream& o) { write_var_rho_csv(o, rows); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"OFDM-IM selected mapping with per-group permutation: CCDF experiments and analysis", "ofdmim"};
  app.set_version_flag("--version", std::string("ofdmim ") + OFDMIM_VERSION);
  app.require_subcommand(1);

  CcdfArgs ccdf;
  auto* ccdf_cmd = app.add_subcommand("ccdf", "Monte-Carlo CCDF of PAPR for one scheme arm");
  ccdf.cfg.attach(*ccdf_cmd);
  ccdf_cmd->add_option("--scheme", ccdf.scheme, "original | slm")->capture_default_str();
  ccdf_cmd->add_option("--u", ccdf.u, "Number of SLM candidates U")->capture_default_str();
  ccdf_cmd->add_option("--pss", ccdf.pss, "random | hadamard")->capture_default_str();
  ccdf_cmd->add_option("--pss-file", ccdf.pss_file, "Pinned PSS JSON");
  ccdf_cmd->add_option("--pss-alphabet", ccdf.alphabet, "binary | quaternary | continuous")
      ->capture_default_str();
  ccdf_cmd->add_option("--perm", ccdf.perm, "identity | random")->capture_default_str();
  ccdf_cmd->add_option("--perm-file", ccdf.perm_file, "Pinned permutation set JSON");
  ccdf_cmd->add_option("--sap-source", ccdf.sap_source, "uniform | bits")->capture_default_str();
  ccdf_cmd->add_flag("--first-unit-phase", ccdf.first_unit_phase, "Force P_1 to all ones (random PSS)");
  ccdf_cmd->add_flag("--first-identity-perm", ccdf.first_identity_perm, "Force d_1 to the identity");
  ccdf_cmd->add_option("--trials", ccdf.trials, "Number of OFDM-IM blocks")->capture_default_str();
  ccdf_cmd->add_option("--seed", ccdf.seed, "Experiment seed")->capture_default_str();
  ccdf_cmd->add_option("--out", ccdf.out, "Output CSV; a .json plan sidecar is written next to it")
      ->required();
  ccdf_cmd->add_option("--workers", ccdf.workers, "Worker threads (does not change results)")
      ->capture_default_str();
  ccdf_cmd->add_option("--gamma-min", ccdf.gamma_min, "First gamma (dB)")->capture_default_str();
  ccdf_cmd->add_option("--gamma-max", ccdf.gamma_max, "Last gamma (dB)")->capture_default_str();
  ccdf_cmd->add_option("--gamma-step", ccdf.gamma_step, "Gamma step (dB)")->capture_default_str();
  ccdf_cmd->add_option("--oversample", ccdf.oversample, "Oversampling factor L (power of two)")
      ->capture_default_str();

  PermArgs perm;
  auto* perm_cmd = app.add_subcommand("analyze-perm", "mu metric of a permutation set (JSON report)");
  perm.cfg.attach(*perm_cmd);
  perm_cmd->add_option("--perm", perm.perm, "identity | random")->capture_default_str();
  perm_cmd->add_option("--perm-file", perm.perm_file, "Permutation set JSON");
  perm_cmd->add_option("--u", perm.u, "Set size U when generating")->capture_default_str();
  perm_cmd->add_option("--seed", perm.seed, "Seed for random sets")->capture_default_str();
  perm_cmd->add_flag("--first-identity-perm", perm.first_identity_perm, "Force d_1 to the identity");
  perm_cmd->add_option("--out", perm.out, "Output JSON (default stdout)");

  PssArgs pss;
  auto* pss_cmd = app.add_subcommand("analyze-pss", "Punctured and full cross-correlation spectra (CSV)");
  pss.cfg.attach(*pss_cmd);
  pss_cmd->add_option("--pss", pss.pss, "hadamard | random")->capture_default_str();
  pss_cmd->add_option("--pss-file", pss.pss_file, "PSS JSON");
  pss_cmd->add_option("--pss-alphabet", pss.alphabet, "binary | quaternary | continuous")
      ->capture_default_str();
  pss_cmd->add_option("--u", pss.u, "Set size U when generating")->capture_default_str();
  pss_cmd->add_option("--rows", pss.rows, "The two sequence indices to correlate")->expected(2);
  pss_cmd->add_option("--sap", pss.sap, "random | full")->capture_default_str();
  pss_cmd->add_option("--sap-file", pss.sap_file, "JSON {\"active\": [...]} activation pattern");
  pss_cmd->add_option("--seed", pss.seed, "Seed for random PSS / SAP")->capture_default_str();
  pss_cmd->add_option("--out", pss.out, "Output CSV (default stdout)");

  VarRhoArgs var;
  auto* var_cmd = app.add_subcommand("verify-var-rho", "Closed-form vs Monte-Carlo var(rho(m)) (CSV)");
  var.cfg.attach(*var_cmd);
  var_cmd->add_option("--trials", var.trials, "Random activation patterns per lag")->capture_default_str();
  var_cmd->add_option("--seed", var.seed, "Seed")->capture_default_str();
  var_cmd->add_option("--m", var.lags, "Lags to evaluate (default: all)");
  var_cmd->add_option("--out", var.out, "Output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*ccdf_cmd) return cmd_ccdf(ccdf, *ccdf_cmd, out);
    if (*perm_cmd) return cmd_analyze_perm(perm, out);
    if (*pss_cmd) return cmd_analyze_pss(pss, out);
    if (*var_cmd) return cmd_verify_var_rho(var, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const UnwritableError& e) {
    err << "error: " << e.what() << '\n';
    return kUnwritable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace ofdmim::cli
