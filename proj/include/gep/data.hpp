#pragma once

#include <optional>
#include <string>

#include "gep/params.hpp"

namespace gep {

// Bundled example datasets: March precipitation in Minneapolis/St Paul
// (Hinkley, 30 values, inches) and prices of children's wooden toys in a
// Suffolk craft shop (31 values, pounds).
enum class DatasetId { precipitation, toys };

Sample builtin_dataset(DatasetId id);

std::optional<DatasetId> dataset_from_name(const std::string& name);
std::string dataset_name(DatasetId id);

// Reads one value per line, or the given zero-based column of comma-separated
// lines.  '#' lines and blank lines are skipped; with skip_header the first
// data line is dropped.  Parse failures and nonpositive values are reported
// with their line number.
Sample load_sample(const std::string& path, std::optional<int> column = std::nullopt,
                   bool skip_header = false);

}  // namespace gep
