#include "ofdmim/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ofdmim {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json pss_to_json(const PhaseSequenceSet& pss) {
  json doc;
  doc["kind"] = std::string(to_string(pss.kind()));
  doc["n_fft"] = pss.length();
  json rows = json::array();
  for (const auto& seq : pss.sequences()) rows.push_back(seq.phases());
  doc["phases"] = std::move(rows);
  return doc;
}

PhaseSequenceSet pss_from_json(const json& doc) {
  return guarded("phase sequence set", [&] {
    const PssKind kind = doc.contains("kind") ? parse_pss_kind(doc.at("kind").get<std::string>())
                                              : PssKind::explicit_list;
    std::vector<PhaseSequence> seqs;
    for (const auto& row : doc.at("phases")) {
      const auto phases = row.get<std::vector<double>>();
      seqs.push_back(PhaseSequence::from_phases(phases));
    }
    if (doc.contains("n_fft") && !seqs.empty() && doc.at("n_fft").get<std::size_t>() != seqs.front().size()) {
      throw ConfigError("phase sequence length does not match n_fft");
    }
    return PhaseSequenceSet(std::move(seqs), kind);
  });
}

json perm_set_to_json(const PermutationSet& perms) {
  json doc;
  doc["kind"] = std::string(to_string(perms.kind()));
  doc["n_fft"] = perms[0].size();
  json rows = json::array();
  for (const auto& p : perms.perms()) rows.push_back(std::vector<std::size_t>(p.map().begin(), p.map().end()));
  doc["perms"] = std::move(rows);
  return doc;
}

PermutationSet perm_set_from_json(const json& doc, const SystemConfig& cfg) {
  return guarded("permutation set", [&] {
    std::vector<std::vector<std::size_t>> maps;
    for (const auto& row : doc.at("perms")) maps.push_back(row.get<std::vector<std::size_t>>());
    PermutationSet loaded = make_perm_set(maps, cfg);
    const PermKind kind = doc.contains("kind") ? parse_perm_kind(doc.at("kind").get<std::string>())
                                               : PermKind::explicit_list;
    return PermutationSet(loaded.perms(), kind);
  });
}

json mu_reports_to_json(const std::vector<MuReport>& reports, const SystemConfig& cfg) {
  json doc;
  doc["n_fft"] = cfg.n_fft();
  doc["normalization"] =
      "unnormalized |sum_i' exp(j2pi(i'm - d1(d2^-1(i'))l)/N)|; population variance over the N x N grid";
  json pairs = json::array();
  double sum = 0.0;
  for (const auto& r : reports) {
    json p;
    p["u"] = r.u;
    p["v"] = r.v;
    p["mu"] = r.mu;
    p["mean_magnitude"] = r.mean_magnitude;
    p["grid_rows"] = r.rows;
    p["grid_cols"] = r.cols;
    pairs.push_back(std::move(p));
    sum += r.mu;
  }
  doc["pairs"] = std::move(pairs);
  doc["mu_mean"] = reports.empty() ? 0.0 : sum / static_cast<double>(reports.size());
  return doc;
}

json config_to_json(const SystemConfig& cfg) {
  json doc;
  doc["n_fft"] = cfg.n_fft();
  doc["group_size"] = cfg.group_size();
  doc["active"] = cfg.active();
  doc["groups"] = cfg.groups();
  doc["mod_order"] = cfg.mod_order();
  doc["index_bits"] = cfg.index_bits();
  doc["symbol_bits"] = cfg.symbol_bits();
  return doc;
}

json plan_to_json(const TrialPlan& plan, const SchemeInstance& instance) {
  const SchemeDescriptor& s = plan.scheme;
  json doc;
  doc["config"] = config_to_json(plan.cfg);
  json scheme;
  scheme["mode"] = std::string(to_string(s.mode));
  scheme["u"] = s.candidates;
  scheme["pss"] = std::string(to_string(s.pss));
  scheme["perm"] = std::string(to_string(s.perm));
  scheme["sap_source"] = std::string(to_string(s.sap_source));
  scheme["pss_alphabet"] = std::string(to_string(s.alphabet));
  scheme["first_phase_all_ones"] = s.first_phase_all_ones;
  scheme["first_perm_identity"] = s.first_perm_identity;
  doc["scheme"] = std::move(scheme);
  doc["trials"] = plan.trials;
  doc["seed"] = plan.seed;
  doc["oversample"] = plan.oversample;
  json grid;
  grid["start"] = plan.gamma_db.front();
  grid["stop"] = plan.gamma_db.back();
  grid["points"] = plan.gamma_db.size();
  doc["gamma_db"] = std::move(grid);
  doc["pss_fingerprint"] = fingerprint(pss_to_json(instance.pss));
  doc["perm_fingerprint"] = fingerprint(perm_set_to_json(instance.perms));
  doc["version"] = OFDMIM_VERSION;
  return doc;
}

std::string fingerprint(const json& doc) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc.dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return guarded("JSON file", [&] { return json::parse(in); });
}

void write_var_rho_csv(std::ostream& out, const std::vector<VarRhoRow>& rows) {
  out << "m,analytic,empirical,relative_error\n";
  for (const auto& r : rows) {
    out << r.m << ',' << format_number(r.analytic) << ',' << format_number(r.empirical) << ',';
    if (r.analytic != 0.0) out << format_number(std::abs(r.empirical - r.analytic) / r.analytic);
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const PssSpectrum& punctured, const PssSpectrum& full) {
  out << "m,punctured,full\n";
  for (std::size_t m = 0; m < full.magnitudes.size(); ++m) {
    out << m << ',' << format_number(punctured.magnitudes.at(m)) << ','
        << format_number(full.magnitudes[m]) << '\n';
  }
  out << "# c=" << format_number(full.c.value_or(full.max_magnitude())) << '\n';
}

}  // namespace ofdmim
