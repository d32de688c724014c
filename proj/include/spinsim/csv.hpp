#pragma once

#include <string>
#include <vector>

namespace spinsim {

/// Canonical number formatting for CSV output: shortest %.12g, "nan"/"inf"
/// spelled out. Deterministic for identical inputs.
std::string csv_double(double v);

/// One RFC-4180-style line (numeric/plain fields, '.' decimal separator, no
/// quoting needed), newline included.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace spinsim
