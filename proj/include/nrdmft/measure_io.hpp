#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nrdmft/measure.hpp"

namespace nrdmft {

// Text format: {"atoms": [[x, w], ...], "mass_check": m}. "mass_check" is
// optional on input and always written on output.
DiscreteMeasure parse_measure(std::string_view text, const std::string& source = "<string>");
std::string format_measure(const DiscreteMeasure& m);

DiscreteMeasure read_measure_file(const std::filesystem::path& path);
void write_measure_file(const std::filesystem::path& path, const DiscreteMeasure& m);

// printf("%.17g"), the round-trip representation used in every text output.
std::string format_real(double x);

}  // namespace nrdmft
