#include "nrdmft/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "nrdmft/bath_update.hpp"
#include "nrdmft/dmft.hpp"
#include "nrdmft/error.hpp"
#include "nrdmft/fock_suite.hpp"
#include "nrdmft/ipt.hpp"
#include "nrdmft/measure_io.hpp"
#include "nrdmft/nevanlinna.hpp"
#include "nrdmft/spec_io.hpp"

namespace nrdmft::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCliDiag = "cli.InvalidArguments";

const char* kMeasureFormat =
    "Measure file: {\"atoms\": [[position, weight], ...], \"mass_check\": total}.\n"
    "  Weights must be >= 0; mass_check is optional on input and verified to 1e-9.\n";

const char* kLatticeFormat =
    "Lattice file, one of:\n"
    "  {\"n_sites\": 8, \"graph\": {\"ring\": 8, \"t\": 1.0}, \"U\": 2.0, \"beta\": 4.0}\n"
    "  {\"n_sites\": 3, \"graph\": [[i, j, t], ...], \"U\": 2.0, \"beta\": 4.0, \"mu\": 1.0}\n"
    "  {\"W\": [...], \"H_perp\": [[...], ...], \"U\": 2.0, \"beta\": 4.0}\n"
    "  Graph specs must be vertex-transitive; site 0 is the impurity.\n";

const char* kDmftFormat =
    "Run config (JSON object):\n"
    "  lattice                  path (relative to the config) or inline lattice object\n"
    "  U, beta                  override the lattice values\n"
    "  damping                  mixing weight lambda in (0, 1], default 0.5\n"
    "  n_max_atoms              atoms kept in nu, default 64; 0 or null disables\n"
    "  n_max_self_energy_atoms  atoms kept in mu before the bath update, default 256; 0 or null disables\n"
    "  tol                      W2 and mass(mu) tolerance, default 1e-4\n"
    "  max_iter                 default 200\n"
    "  eta                      spectrum broadening, default 0.05\n"
    "  spectrum                 {\"lo\": -6, \"hi\": 6, \"count\": 601}\n"
    "  output_dir               default dmft_out; --out takes precedence\n"
    "  attest_transitive        accept graphs above 12 vertices unchecked\n"
    "  triple_budget, pole_budget  guards on the IPT and bath-update sizes\n"
    "Outputs: nu.json, mu.json, history.csv, spectrum.csv, report.txt.\n"
    "history.csv columns: iteration,residual_w2,nu_atoms,mu_atoms,mu_mass,compression_cost,\n"
    "  m1,m2,image_m1,image_m2,target_m1,target_m2\n"
    "--sweep KEY=a,b,c runs one job per value in OUT/KEY=value/ on worker threads.\n"
    "Exit codes: 0 converged or atomic limit, 1 input error, 2 max_iter reached, 3 numerical failure;\n"
    "a sweep returns the largest code of its runs.\n";

const char* kInterpFormat =
    "Input: one point per line, four reals \"Re(z) Im(z) Re(w) Im(w)\" with Im(z) > 0, Im(w) >= 0.\n"
    "  Blank lines and lines starting with # are ignored.\n"
    "Output: verdict=<NoSolution|UniqueSolution|Indeterminate|Inconclusive> depth=K witness=J\n";

int code_for(const Error& e) { return e.kind() == Error::Kind::Input ? kInputError : kNumericalFailure; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw input_error("cli.OutputError", "cannot write " + path.string());
  f << text;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw input_error("cli.OutputError", "cannot create " + dir.string() + ": " + ec.message());
}

// Values given on the command line win over the --config document.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json doc = read_document(path, "cli.MalformedConfig");
  if (!doc.is_object()) throw input_error("cli.MalformedConfig", path + ": expected an object");
  return doc;
}

template <class T>
T pick(const std::optional<T>& flag, const json& cfg, const char* key, const char* what) {
  if (flag) return *flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw input_error("cli.MalformedConfig", std::string("config key \"") + key + "\" has the wrong type");
    }
  }
  throw input_error(kCliDiag, std::string("missing ") + what);
}

std::string spectrum_csv(const DiscreteMeasure& m, double eta, double lo, double hi, std::size_t count) {
  std::string s = "omega,value\n";
  for (const auto& [w, v] : export_spectrum(m, eta, lo, hi, count)) s += format_real(w) + "," + format_real(v) + "\n";
  return s;
}

// ---- oracle ----------------------------------------------------------------

int cmd_oracle(std::uint64_t seed, std::ostream& out) {
  const std::vector<SuiteRow> rows = run_oracle_suite(seed);
  std::size_t width = 4;
  for (const SuiteRow& r : rows) width = std::max(width, r.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "check"
      << "  status  worst      tolerance\n";
  bool all = true;
  for (const SuiteRow& r : rows) {
    all = all && r.passed;
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %-6s  %-9.3g  %.1e", r.passed ? "PASS" : "FAIL", r.worst, r.tolerance);
    out << std::left << std::setw(static_cast<int>(width)) << r.name << buf << "\n";
  }
  out << (all ? "all checks passed" : "some checks failed") << " (seed " << seed << ")\n";
  return all ? kSuccess : kNumericalFailure;
}

// ---- ipt -------------------------------------------------------------------

struct IptArgs {
  std::string config;
  std::optional<std::string> nu;
  std::optional<double> w_norm_sq;
  std::optional<double> U;
  std::optional<double> beta;
  std::optional<int> frequencies;
  bool oracle = false;
  std::string out = ".";
};

int cmd_ipt(const IptArgs& a, std::ostream& out) {
  const json cfg = load_config(a.config);
  const DiscreteMeasure nu = read_measure_file(pick(a.nu, cfg, "nu", "--nu"));
  const double w2 = pick(a.w_norm_sq, cfg, "w_norm_sq", "--w-norm-sq");
  const double U = pick(a.U, cfg, "U", "--U");
  const double beta = pick(a.beta, cfg, "beta", "--beta");
  const int count = a.frequencies ? *a.frequencies : cfg.value("frequencies", 10);
  if (count < 1) throw input_error(kCliDiag, "--frequencies must be >= 1");

  const DiscreteMeasure mu = ipt_map(nu, w2, beta);
  ensure_dir(a.out);
  write_measure_file(fs::path(a.out) / "mu.json", mu);

  std::string csv = a.oracle ? "n,omega,re_sigma,im_sigma,re_oracle,im_oracle\n" : "n,omega,re_sigma,im_sigma\n";
  const DiscreteMeasure delta = nu.scaled(w2);
  for (int n = 0; n < count; ++n) {
    const double w = matsubara_frequency(beta, n);
    const Complex s = U * U * cauchy_transform(mu, Complex(0.0, w));
    csv += std::to_string(n) + "," + format_real(w) + "," + format_real(s.real()) + "," + format_real(s.imag());
    if (a.oracle) {
      const Complex o = ipt_matsubara_oracle(delta, U, beta, n);
      csv += "," + format_real(o.real()) + "," + format_real(o.imag());
    }
    csv += "\n";
  }
  write_text(fs::path(a.out) / "sigma_matsubara.csv", csv);
  out << "mu: " << mu.size() << " atoms, mass " << format_real(mu.mass()) << "\n";
  return kSuccess;
}

// ---- bath-update -----------------------------------------------------------

struct BathArgs {
  std::string config;
  std::optional<std::string> mu;
  std::optional<std::string> lattice;
  bool attest = false;
  std::string out = ".";
};

int cmd_bath_update(const BathArgs& a, std::ostream& out) {
  const json cfg = load_config(a.config);
  const DiscreteMeasure mu = read_measure_file(pick(a.mu, cfg, "mu", "--mu"));
  const std::string lattice_path = pick(a.lattice, cfg, "lattice", "--lattice");
  const LatticeSpec lattice =
      lattice_from_json(read_document(lattice_path, "fock_oracle.MalformedSpec"), lattice_path, a.attest);

  const Hybridization h = bath_update(mu, lattice);
  ensure_dir(a.out);
  write_measure_file(fs::path(a.out) / "nu.json", h.nu);
  const MomentTargets t = hybridization_moment_targets(lattice, mu.mass());
  std::ostringstream r;
  r << "disconnected " << (h.disconnected ? "true" : "false") << "\n"
    << "nu_atoms " << h.nu.size() << "\n"
    << "nu_mass " << format_real(h.nu.mass()) << "\n"
    << "mu_mass " << format_real(mu.mass()) << "\n"
    << "m1 " << format_real(moment(h.nu, 1)) << "\n"
    << "target_m1 " << format_real(t.m1) << "\n"
    << "m2 " << format_real(moment(h.nu, 2)) << "\n"
    << "target_m2 " << format_real(t.m2) << "\n";
  write_text(fs::path(a.out) / "moments.txt", r.str());
  out << r.str();
  return kSuccess;
}

// ---- dmft ------------------------------------------------------------------

struct DmftOutcome {
  int code = kSuccess;
  bool failed = false;
  std::string summary;
};

std::string history_csv(const DmftState& s) {
  std::string csv = "iteration,residual_w2,nu_atoms,mu_atoms,mu_mass,compression_cost,m1,m2,image_m1,image_m2,"
                    "target_m1,target_m2\n";
  for (int i = 0; i < s.iterations(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const MomentLedgerEntry& e = s.moment_ledger[k];
    csv += std::to_string(i + 1) + "," + format_real(s.residual_history[k]) + "," +
           std::to_string(s.atom_history[k]) + "," + std::to_string(s.mu_atom_history[k]) + "," +
           format_real(s.mu_mass_history[k]) + "," + format_real(s.compression_cost_history[k]) + "," +
           format_real(e.m1) + "," + format_real(e.m2) + "," + format_real(e.image_m1) + "," +
           format_real(e.image_m2) + "," + format_real(e.target_m1) + "," + format_real(e.target_m2) + "\n";
  }
  return csv;
}

DmftOutcome run_dmft(const json& doc, const std::string& source, const fs::path& base_dir,
                     const std::optional<fs::path>& out_override) {
  DmftOutcome o;
  try {
    const DmftRunConfig cfg = dmft_config_from_json(doc, source, base_dir);
    const fs::path dir = out_override ? *out_override : fs::path(cfg.output_dir);
    const DmftState s = solve(cfg.lattice, cfg.options);
    ensure_dir(dir);
    write_measure_file(dir / "nu.json", s.nu);
    write_measure_file(dir / "mu.json", s.mu_last);
    write_text(dir / "history.csv", history_csv(s));
    write_text(dir / "spectrum.csv",
               spectrum_csv(s.nu, cfg.options.eta, cfg.spectrum_lo, cfg.spectrum_hi, cfg.spectrum_count));

    std::ostringstream r;
    r << "status " << to_string(s.status) << "\n"
      << "iterations " << s.iterations() << "\n";
    if (!s.residual_history.empty()) {
      const MomentLedgerEntry& e = s.moment_ledger.back();
      r << "residual_w2 " << format_real(s.residual_history.back()) << "\n"
        << "nu_atoms " << s.nu.size() << "\n"
        << "mu_mass " << format_real(s.mu_mass_history.back()) << "\n"
        << "m1 " << format_real(e.m1) << " target " << format_real(e.target_m1) << "\n"
        << "m2 " << format_real(e.m2) << " target " << format_real(e.target_m2) << "\n"
        << "compression_warning " << (s.compression_warning ? "true" : "false") << "\n";
    }
    write_text(dir / "report.txt", r.str());

    o.code = (s.status == DmftStatus::MaxIterations) ? kNotConverged : kSuccess;
    o.summary = dir.string() + ": " + to_string(s.status) + " after " + std::to_string(s.iterations()) +
                " iterations" +
                (s.residual_history.empty() ? "" : ", residual " + format_real(s.residual_history.back()));
  } catch (const Error& e) {
    o.code = code_for(e);
    o.failed = true;
    o.summary = std::string("error: ") + e.what();
  }
  return o;
}

const std::vector<std::string> kIntegerKeys = {"n_max_atoms", "n_max_self_energy_atoms", "max_iter"};
const std::vector<std::string> kRealKeys = {"U", "beta", "damping", "tol", "eta", "triple_budget", "pole_budget"};

struct Sweep {
  std::string key;
  std::vector<std::string> values;
};

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw input_error(kCliDiag, "--sweep expects KEY=a,b,c");
  Sweep s;
  s.key = text.substr(0, eq);
  if (std::find(kIntegerKeys.begin(), kIntegerKeys.end(), s.key) == kIntegerKeys.end() &&
      std::find(kRealKeys.begin(), kRealKeys.end(), s.key) == kRealKeys.end())
    throw input_error(kCliDiag, "--sweep key \"" + s.key + "\" is not a numeric config key");
  std::stringstream list(text.substr(eq + 1));
  std::string item;
  while (std::getline(list, item, ','))
    if (!item.empty()) s.values.push_back(item);
  if (s.values.empty()) throw input_error(kCliDiag, "--sweep has no values");
  return s;
}

json sweep_value(const Sweep& s, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v))
    throw input_error(kCliDiag, "--sweep value \"" + text + "\" is not a number");
  if (std::find(kIntegerKeys.begin(), kIntegerKeys.end(), s.key) != kIntegerKeys.end()) {
    if (v != std::floor(v)) throw input_error(kCliDiag, "--sweep " + s.key + " needs integers");
    return static_cast<long long>(v);
  }
  return v;
}

struct DmftArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> sweep;
  int threads = 0;
};

int cmd_dmft(const DmftArgs& a, std::ostream& out, std::ostream& err) {
  if (a.config.empty()) throw input_error(kCliDiag, "dmft needs --config");
  const json doc = load_config(a.config);
  const fs::path base = fs::path(a.config).parent_path();

  if (!a.sweep) {
    const DmftOutcome o = run_dmft(doc, a.config, base, a.out ? std::optional<fs::path>(*a.out) : std::nullopt);
    (o.failed ? err : out) << o.summary << "\n";
    return o.code;
  }

  const Sweep sweep = parse_sweep(*a.sweep);
  const fs::path root = a.out ? fs::path(*a.out) : fs::path(doc.value("output_dir", std::string("dmft_out")));
  std::vector<json> docs;
  std::vector<fs::path> dirs;
  for (const std::string& v : sweep.values) {
    json d = doc;
    d[sweep.key] = sweep_value(sweep, v);
    docs.push_back(std::move(d));
    dirs.push_back(root / (sweep.key + "=" + v));
  }

  std::vector<DmftOutcome> outcomes(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) outcomes[i] = run_dmft(docs[i], a.config, base, dirs[i]);
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min<std::size_t>(docs.size(), a.threads > 0 ? static_cast<std::size_t>(a.threads) : hw);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  int code = kSuccess;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    out << sweep.key << "=" << sweep.values[i] << "  " << outcomes[i].summary << "\n";
    code = std::max(code, outcomes[i].code);
  }
  return code;
}

// ---- interp ----------------------------------------------------------------

InterpolationProblem read_interp_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cli.MalformedInterpFile", "cannot open " + path);
  InterpolationProblem p;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream in(line);
    double v[4];
    std::string rest;
    if (!(in >> v[0] >> v[1] >> v[2] >> v[3]) || (in >> rest))
      throw input_error("cli.MalformedInterpFile",
                        path + ": line " + std::to_string(lineno) + ": expected four reals");
    p.nodes.emplace_back(v[0], v[1]);
    p.values.emplace_back(v[2], v[3]);
  }
  if (p.nodes.empty()) throw input_error("cli.MalformedInterpFile", path + ": no data points");
  return p;
}

int cmd_interp(const std::string& input, std::optional<int> max_depth, double tol, std::ostream& out) {
  const Classification c = classify(read_interp_file(input), max_depth, tol);
  out << "verdict=" << to_string(c.verdict) << " depth=" << c.depth << " witness=" << c.witness << "\n";
  return kSuccess;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  std::string config;
  std::optional<std::string> measure;
  std::optional<double> eta;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<int> count;
  std::optional<std::string> out;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const json cfg = load_config(a.config);
  const DiscreteMeasure m = read_measure_file(pick(a.measure, cfg, "measure", "--measure"));
  const double eta = a.eta ? *a.eta : cfg.value("eta", 0.05);
  const double lo = a.lo ? *a.lo : cfg.value("lo", -6.0);
  const double hi = a.hi ? *a.hi : cfg.value("hi", 6.0);
  const int count = a.count ? *a.count : cfg.value("count", 601);
  if (count < 2) throw input_error(kCliDiag, "--count must be >= 2");
  const std::string csv = spectrum_csv(m, eta, lo, hi, static_cast<std::size_t>(count));
  if (a.out) {
    ensure_dir(*a.out);
    write_text(fs::path(*a.out) / "spectrum.csv", csv);
  } else {
    out << csv;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-measure IPT-DMFT for finite Hubbard models, with an exact-diagonalization oracle."};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 input error, 2 non-convergence, 3 numerical failure.");

  std::uint64_t seed = 1;
  auto* oracle = app.add_subcommand("oracle", "Run the randomized exact-diagonalization invariant suite.");
  oracle->add_option("--seed", seed, "Seed of the random systems")->capture_default_str();
  oracle->footer("Prints one row per invariant: name, PASS/FAIL, worst violation, tolerance.\n"
                 "Exit code 3 when any row fails.");

  IptArgs ipt_args;
  auto* ipt = app.add_subcommand("ipt", "Apply the measure-level IPT map to nu.");
  ipt->add_option("--config", ipt_args.config, "JSON object with keys nu, w_norm_sq, U, beta, frequencies");
  ipt->add_option("--nu", ipt_args.nu, "Measure file of the normalized hybridization nu");
  ipt->add_option("--w-norm-sq", ipt_args.w_norm_sq, "Coupling strength |W|^2");
  ipt->add_option("--U", ipt_args.U, "Interaction");
  ipt->add_option("--beta", ipt_args.beta, "Inverse temperature");
  ipt->add_option("--frequencies", ipt_args.frequencies, "Number of Matsubara values written (default 10)");
  ipt->add_flag("--oracle", ipt_args.oracle, "Add tau-quadrature reference columns");
  ipt->add_option("--out", ipt_args.out, "Output directory")->capture_default_str();
  ipt->footer(std::string(kMeasureFormat) +
              "Outputs: mu.json (self-energy measure, Sigma = U^2 * Cauchy transform of mu) and\n"
              "sigma_matsubara.csv with columns n,omega,re_sigma,im_sigma[,re_oracle,im_oracle].\n");

  BathArgs bath_args;
  auto* bath = app.add_subcommand("bath-update", "Map a self-energy measure mu to the hybridization measure nu.");
  bath->add_option("--config", bath_args.config, "JSON object with keys mu, lattice");
  bath->add_option("--mu", bath_args.mu, "Measure file of mu (Sigma = U^2 * Cauchy transform of mu)");
  bath->add_option("--lattice", bath_args.lattice, "Lattice file");
  bath->add_flag("--attest-transitive", bath_args.attest, "Accept graphs above 12 vertices without checking");
  bath->add_option("--out", bath_args.out, "Output directory")->capture_default_str();
  bath->footer(std::string(kMeasureFormat) + kLatticeFormat +
               "Outputs: nu.json and moments.txt (\"key value\" lines: disconnected, nu_atoms, nu_mass,\n"
               "mu_mass, m1, target_m1, m2, target_m2).\n");

  DmftArgs dmft_args;
  auto* dmft = app.add_subcommand("dmft", "Iterate the DMFT fixed-point map.");
  dmft->add_option("--config", dmft_args.config, "Run config file")->required();
  dmft->add_option("--out", dmft_args.out, "Output directory (overrides output_dir)");
  dmft->add_option("--sweep", dmft_args.sweep, "KEY=a,b,c: one run per value of a numeric config key");
  dmft->add_option("--threads", dmft_args.threads, "Sweep worker threads (default: hardware)");
  dmft->add_option("--seed", seed, "Accepted for uniformity; the solver is deterministic");
  dmft->footer(std::string(kDmftFormat) + kLatticeFormat);

  std::string interp_input;
  std::optional<int> max_depth;
  double tol = 1e-9;
  auto* interp = app.add_subcommand("interp", "Classify a Nevanlinna-Pick interpolation problem.");
  interp->add_option("input,--input", interp_input, "Data file")->required();
  interp->add_option("--max-depth", max_depth, "Largest number of Schur steps");
  interp->add_option("--tol", tol, "Unit-circle band")->capture_default_str();
  interp->footer(kInterpFormat);

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Broadened spectral function of a measure.");
  spectrum->add_option("--config", spec_args.config, "JSON object with keys measure, eta, lo, hi, count");
  spectrum->add_option("--measure", spec_args.measure, "Measure file");
  spectrum->add_option("--eta", spec_args.eta, "Lorentzian broadening (default 0.05)");
  spectrum->add_option("--lo", spec_args.lo, "Grid start (default -6)");
  spectrum->add_option("--hi", spec_args.hi, "Grid end (default 6)");
  spectrum->add_option("--count", spec_args.count, "Grid points (default 601)");
  spectrum->add_option("--out", spec_args.out, "Directory for spectrum.csv (default: stdout)");
  spectrum->footer(std::string(kMeasureFormat) +
                   "Output columns: omega,value with value = -Im C(omega + i eta) / pi.\n");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*oracle) return cmd_oracle(seed, out);
    if (*ipt) return cmd_ipt(ipt_args, out);
    if (*bath) return cmd_bath_update(bath_args, out);
    if (*dmft) return cmd_dmft(dmft_args, out, err);
    if (*interp) return cmd_interp(interp_input, max_depth, tol, out);
    if (*spectrum) return cmd_spectrum(spec_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_for(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nrdmft::cli
