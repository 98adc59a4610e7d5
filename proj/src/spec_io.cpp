#include "nrdmft/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nrdmft/error.hpp"

namespace nrdmft {

using nlohmann::json;

json parse_document(std::string_view text, const std::string& source, const std::string& diagnostic) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n');
    throw input_error(diagnostic, source + ": line " + std::to_string(line) + ": not a valid document");
  }
}

json read_document(const std::filesystem::path& path, const std::string& diagnostic) {
  std::ifstream in(path);
  if (!in) throw input_error("cli.UnreadableFile", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string(), diagnostic);
}

namespace {

const char* kSpecDiag = "fock_oracle.MalformedSpecFile";
const char* kConfigDiag = "cli.MalformedConfig";

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& source,
                    const char* diag) {
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key)) throw input_error(diag, source + ": unknown key \"" + key + "\"");
}

double number(const json& doc, const std::string& key, const std::string& source, const char* diag) {
  if (!doc.contains(key)) throw input_error(diag, source + ": missing \"" + key + "\"");
  if (!doc[key].is_number()) throw input_error(diag, source + ": \"" + key + "\" must be a number");
  const double v = doc[key].get<double>();
  if (!std::isfinite(v)) throw input_error(diag, source + ": \"" + key + "\" must be finite");
  return v;
}

double number_or(const json& doc, const std::string& key, double fallback, const std::string& source,
                 const char* diag) {
  return doc.contains(key) ? number(doc, key, source, diag) : fallback;
}

int integer(const json& doc, const std::string& key, const std::string& source, const char* diag) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw input_error(diag, source + ": \"" + key + "\" must be an integer");
  return doc[key].get<int>();
}

std::vector<double> reals(const json& doc, const std::string& source, const std::string& what, const char* diag) {
  if (!doc.is_array()) throw input_error(diag, source + ": " + what + " must be an array");
  std::vector<double> out;
  for (const auto& v : doc) {
    if (!v.is_number()) throw input_error(diag, source + ": " + what + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

SystemSpec system_spec_from_json(const json& doc, const std::string& source) {
  if (!doc.is_object()) throw input_error(kSpecDiag, source + ": expected an object");
  reject_unknown(doc, {"n_sites", "graph", "U", "beta", "mu", "bath"}, source, kSpecDiag);
  SystemSpec out;
  HubbardSpec& h = out.hubbard;
  if (!doc.contains("graph")) throw input_error(kSpecDiag, source + ": missing \"graph\"");
  const json& g = doc["graph"];
  if (g.is_object()) {
    reject_unknown(g, {"ring", "t"}, source, kSpecDiag);
    const int n = integer(g, "ring", source, kSpecDiag);
    h = HubbardSpec::ring(n, number(g, "t", source, kSpecDiag), 0.0, 1.0, 0.0);
    if (doc.contains("n_sites") && integer(doc, "n_sites", source, kSpecDiag) != n)
      throw input_error(kSpecDiag, source + ": n_sites disagrees with the ring size");
  } else if (g.is_array()) {
    h.n_sites = integer(doc, "n_sites", source, kSpecDiag);
    for (const auto& e : g) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number())
        throw input_error(kSpecDiag, source + ": graph edges must be [i, j, t]");
      h.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
  } else {
    throw input_error(kSpecDiag, source + ": \"graph\" must be an edge list or {\"ring\": N, \"t\": t}");
  }

  if (!doc.contains("U")) throw input_error(kSpecDiag, source + ": missing \"U\"");
  if (doc["U"].is_number()) {
    h.on_site_U.assign(static_cast<std::size_t>(std::max(h.n_sites, 0)), doc["U"].get<double>());
  } else {
    h.on_site_U = reals(doc["U"], source, "\"U\"", kSpecDiag);
  }
  h.beta = number(doc, "beta", source, kSpecDiag);
  const bool uniform = !h.on_site_U.empty() &&
                       std::all_of(h.on_site_U.begin(), h.on_site_U.end(),
                                   [&](double u) { return u == h.on_site_U.front(); });
  if (doc.contains("mu")) {
    h.chem_potential = number(doc, "mu", source, kSpecDiag);
  } else if (uniform) {
    h.chem_potential = h.on_site_U.front() / 2;
  } else {
    throw input_error(kSpecDiag, source + ": \"mu\" is required when U varies between sites");
  }
  try {
    h.validate();
  } catch (const Error& e) {
    throw input_error(e.diagnostic(), source + ": " + e.what());
  }

  if (doc.contains("bath")) {
    const json& b = doc["bath"];
    if (!b.is_object()) throw input_error(kSpecDiag, source + ": \"bath\" must be an object");
    reject_unknown(b, {"energies", "couplings"}, source, kSpecDiag);
    AimSpec aim;
    aim.impurity = h;
    aim.bath_energies = reals(b.value("energies", json::array()), source, "bath energies", kSpecDiag);
    const json& c = b.value("couplings", json::array());
    if (!c.is_array() || static_cast<int>(c.size()) != h.n_sites)
      throw input_error(kSpecDiag, source + ": bath couplings need one row per impurity site");
    aim.couplings.resize(h.n_sites, static_cast<Eigen::Index>(aim.bath_energies.size()));
    for (int i = 0; i < h.n_sites; ++i) {
      const std::vector<double> row = reals(c[static_cast<std::size_t>(i)], source, "coupling row", kSpecDiag);
      if (row.size() != aim.bath_energies.size())
        throw input_error(kSpecDiag, source + ": coupling row length must match the bath energies");
      for (std::size_t k = 0; k < row.size(); ++k) aim.couplings(i, static_cast<Eigen::Index>(k)) = row[k];
    }
    aim.validate();
    out.aim = std::move(aim);
  }
  return out;
}

SystemSpec read_system_spec(const std::filesystem::path& path) {
  return system_spec_from_json(read_document(path, kSpecDiag), path.string());
}

LatticeSpec lattice_from_json(const json& doc, const std::string& source, bool attest_transitive) {
  if (doc.is_object() && doc.contains("W")) {
    reject_unknown(doc, {"W", "H_perp", "U", "beta"}, source, kSpecDiag);
    const std::vector<double> w = reals(doc["W"], source, "\"W\"", kSpecDiag);
    const auto p = static_cast<Eigen::Index>(w.size());
    if (!doc.contains("H_perp") || !doc["H_perp"].is_array() || static_cast<Eigen::Index>(doc["H_perp"].size()) != p)
      throw input_error(kSpecDiag, source + ": \"H_perp\" must have one row per entry of W");
    Eigen::MatrixXd h(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const std::vector<double> row = reals(doc["H_perp"][static_cast<std::size_t>(i)], source, "H_perp row", kSpecDiag);
      if (static_cast<Eigen::Index>(row.size()) != p) throw input_error(kSpecDiag, source + ": H_perp must be square");
      for (Eigen::Index j = 0; j < p; ++j) h(i, j) = row[static_cast<std::size_t>(j)];
    }
    return LatticeSpec::make(Eigen::Map<const Eigen::VectorXd>(w.data(), p), h,
                             number(doc, "U", source, kSpecDiag), number(doc, "beta", source, kSpecDiag));
  }
  const SystemSpec s = system_spec_from_json(doc, source);
  return lattice_from_hubbard(s.hubbard, 0, attest_transitive);
}

DmftRunConfig dmft_config_from_json(const json& doc, const std::string& source,
                                    const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw input_error(kConfigDiag, source + ": expected an object");
  reject_unknown(doc,
                 {"lattice", "U", "beta", "damping", "n_max_atoms", "n_max_self_energy_atoms", "tol", "max_iter",
                  "eta", "spectrum", "output_dir", "attest_transitive", "triple_budget", "pole_budget"},
                 source, kConfigDiag);
  if (!doc.contains("lattice")) throw input_error(kConfigDiag, source + ": missing \"lattice\"");

  json lattice_doc = doc["lattice"];
  std::string lattice_source = source + ":lattice";
  if (lattice_doc.is_string()) {
    std::filesystem::path p = lattice_doc.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    lattice_doc = read_document(p, kSpecDiag);
    lattice_source = p.string();
  }
  // Top-level U and beta override the lattice file.
  if (lattice_doc.is_object()) {
    if (doc.contains("U")) lattice_doc["U"] = number(doc, "U", source, kConfigDiag);
    if (doc.contains("beta")) lattice_doc["beta"] = number(doc, "beta", source, kConfigDiag);
    if (doc.contains("U") && !lattice_doc.contains("W")) lattice_doc.erase("mu");
  }
  const bool attest = doc.value("attest_transitive", false);

  DmftRunConfig cfg;
  cfg.lattice = lattice_from_json(lattice_doc, lattice_source, attest);
  DmftOptions& o = cfg.options;
  o.damping = number_or(doc, "damping", o.damping, source, kConfigDiag);
  auto optional_count = [&](const char* key, std::optional<std::size_t>& slot) {
    if (!doc.contains(key)) return;
    if (doc[key].is_null()) {
      slot.reset();
      return;
    }
    const int v = integer(doc, key, source, kConfigDiag);
    if (v < 0) throw input_error(kConfigDiag, source + ": \"" + key + "\" must be >= 0");
    if (v == 0) slot.reset();
    else slot = static_cast<std::size_t>(v);
  };
  optional_count("n_max_atoms", o.n_max_atoms);
  optional_count("n_max_self_energy_atoms", o.n_max_self_energy_atoms);
  o.tol_w2 = number_or(doc, "tol", o.tol_w2, source, kConfigDiag);
  if (doc.contains("max_iter")) o.max_iter = integer(doc, "max_iter", source, kConfigDiag);
  if (doc.contains("triple_budget")) {
    const double b = number(doc, "triple_budget", source, kConfigDiag);
    if (!(b >= 1.0)) throw input_error(kConfigDiag, source + ": \"triple_budget\" must be >= 1");
    o.triple_budget = static_cast<std::size_t>(b);
  }
  if (doc.contains("pole_budget")) {
    const double b = number(doc, "pole_budget", source, kConfigDiag);
    if (!(b >= 1.0)) throw input_error(kConfigDiag, source + ": \"pole_budget\" must be >= 1");
    o.pole_budget = static_cast<std::size_t>(b);
  }
  o.eta = number_or(doc, "eta", o.eta, source, kConfigDiag);
  o.validate();

  if (doc.contains("spectrum")) {
    const json& s = doc["spectrum"];
    if (!s.is_object()) throw input_error(kConfigDiag, source + ": \"spectrum\" must be an object");
    reject_unknown(s, {"lo", "hi", "count"}, source, kConfigDiag);
    cfg.spectrum_lo = number_or(s, "lo", cfg.spectrum_lo, source, kConfigDiag);
    cfg.spectrum_hi = number_or(s, "hi", cfg.spectrum_hi, source, kConfigDiag);
    if (s.contains("count")) {
      const int c = integer(s, "count", source, kConfigDiag);
      if (c < 2) throw input_error(kConfigDiag, source + ": spectrum count must be >= 2");
      cfg.spectrum_count = static_cast<std::size_t>(c);
    }
    if (!(cfg.spectrum_hi > cfg.spectrum_lo))
      throw input_error(kConfigDiag, source + ": spectrum needs hi > lo");
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw input_error(kConfigDiag, source + ": \"output_dir\" must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  return cfg;
}

}  // namespace nrdmft
