#pragma once

#include <string>

#include "otter/error.hpp"
#include "otter/transforms.hpp"

namespace otter {

enum class WeightFormat { Auto, Csv, Json };

/// Parses component weights.
///
/// CSV: one `k,weight` row per line (k >= 1), an optional `k,weight` header,
/// blank lines and `#` comments ignored; indices missing between rows are zero.
/// JSON: an array of numbers, element i holding w_(i+1).
/// Integer entries give exact weights; any decimal entry makes the whole
/// sequence real. Errors throw ParseError naming the line (CSV) or element (JSON).
WeightSequence parse_weights(const std::string& text, WeightFormat format = WeightFormat::Auto);

/// Reads a file; Auto picks JSON for a leading '[' and CSV otherwise.
WeightSequence read_weight_file(const std::string& path, WeightFormat format = WeightFormat::Auto);

}  // namespace otter
