#pragma once

#include <optional>
#include <string>

#include "gep/inference.hpp"
#include "gep/params.hpp"

namespace gep {

enum class FitModel { ep, gep, both };

// One fit run packaged for reporting: every number needed to reproduce the
// run (tool version, seed, config, data provenance) plus the results.
struct FitReport {
    std::string tool_version;
    std::string provenance;  // "builtin:<name>" or the input path
    FitModel model = FitModel::both;
    double level = 0.95;
    FitConfig config{};
    std::optional<FitResult> ep;
    std::optional<FitResult> gep;
    std::optional<LrResult> lr;  // present when model == both
};

FitReport run_fit_report(const Sample& sample, FitModel model, double level,
                         const FitConfig& config, const std::string& provenance);

// Machine-readable document; parse_report(to_json(r)) reproduces r exactly.
std::string to_json(const FitReport& r);
FitReport parse_report(const std::string& json_text);

// Human-readable table, 6 significant digits.
std::string to_table(const FitReport& r);

// CSV grid "x,<op>" of pdf/cdf/hazard values at steps+1 uniformly spaced
// points, 17 significant digits.
std::string emit_grid(const GepParams& p, const std::string& op, double x_min, double x_max,
                      int steps);

}  // namespace gep
