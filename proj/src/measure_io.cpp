#include "nrdmft/measure_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nrdmft/error.hpp"

namespace nrdmft {

namespace {

std::string line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n');
  return "line " + std::to_string(line);
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

DiscreteMeasure parse_measure(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    throw input_error("measure_core.MalformedMeasureFile",
                      source + ": " + line_of(text, e.byte == 0 ? 0 : e.byte - 1) +
                          ": not a valid document");
  }
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
    throw input_error("measure_core.MalformedMeasureFile", source + ": missing \"atoms\" array");

  std::vector<Atom> atoms;
  std::size_t index = 0;
  for (const auto& pair : doc["atoms"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw input_error("measure_core.MalformedMeasureFile",
                        source + ": atom " + std::to_string(index) +
                            " is not a [position, weight] pair");
    atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    ++index;
  }
  DiscreteMeasure m(std::move(atoms));

  if (doc.contains("mass_check")) {
    if (!doc["mass_check"].is_number())
      throw input_error("measure_core.MalformedMeasureFile", source + ": mass_check is not a number");
    const double expected = doc["mass_check"].get<double>();
    if (std::abs(expected - m.mass()) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw input_error("measure_core.MassCheckFailed",
                        source + ": mass_check " + format_real(expected) + " but atoms sum to " +
                            format_real(m.mass()));
  }
  return m;
}

std::string format_measure(const DiscreteMeasure& m) {
  std::ostringstream out;
  out << "{\n  \"atoms\": [";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i == 0 ? "\n    [" : ",\n    [") << format_real(m[i].position) << ", "
        << format_real(m[i].weight) << "]";
  }
  out << (m.empty() ? "],\n" : "\n  ],\n");
  out << "  \"mass_check\": " << format_real(m.mass()) << "\n}\n";
  return out.str();
}

DiscreteMeasure read_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw input_error("measure_core.UnreadableFile", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str(), path.string());
}

void write_measure_file(const std::filesystem::path& path, const DiscreteMeasure& m) {
  std::ofstream out(path);
  if (!out) throw input_error("measure_core.UnwritableFile", "cannot write " + path.string());
  out << format_measure(m);
}

}  // namespace nrdmft
