#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nrdmft/bath_update.hpp"
#include "nrdmft/dmft.hpp"
#include "nrdmft/fock.hpp"

namespace nrdmft {

// Parses text into a document; syntax errors become input errors of the form
// "<source>: line N: ..." under the given diagnostic name.
nlohmann::json parse_document(std::string_view text, const std::string& source, const std::string& diagnostic);
nlohmann::json read_document(const std::filesystem::path& path, const std::string& diagnostic);

// System spec:
//   {"n_sites": 3, "graph": [[0, 1, 1.0], ...] | {"ring": 8, "t": 1.0},
//    "U": 2.0 | [..per site..], "beta": 4.0, "mu": 1.0,
//    "bath": {"energies": [...], "couplings": [[...per bath level...], ...per impurity site]}}
// "mu" defaults to U/2 when U is uniform.
struct SystemSpec {
  HubbardSpec hubbard;
  std::optional<AimSpec> aim;  // present when "bath" is given; the graph is the impurity
};

SystemSpec system_spec_from_json(const nlohmann::json& doc, const std::string& source);
SystemSpec read_system_spec(const std::filesystem::path& path);

// Lattice file: either a system spec (site 0 of a vertex-transitive graph) or
// {"W": [...], "H_perp": [[...]], "U": u, "beta": b}.
LatticeSpec lattice_from_json(const nlohmann::json& doc, const std::string& source, bool attest_transitive = false);

// Run config of the dmft subcommand, see README for the keys.
struct DmftRunConfig {
  LatticeSpec lattice;
  DmftOptions options;
  double spectrum_lo = -6.0;
  double spectrum_hi = 6.0;
  std::size_t spectrum_count = 601;
  std::string output_dir = "dmft_out";
};

// base_dir resolves a relative "lattice" path.
DmftRunConfig dmft_config_from_json(const nlohmann::json& doc, const std::string& source,
                                    const std::filesystem::path& base_dir);

}  // namespace nrdmft
