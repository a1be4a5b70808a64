#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "ucm/importance.hpp"
#include "ucm/model.hpp"
#include "ucm/simulate.hpp"

namespace ucmcli {

enum class Format { Text, Json, Csv };

std::optional<Format> format_from_string(const std::string& s);

/// %.9g rendering (trailing zeros trimmed), or fixed decimals when
/// round_digits >= 0.
std::string fmt_num(double value, int round_digits = -1);

struct AnalyzeOptions {
    std::optional<double> overall_threshold;
    std::optional<double> alt_threshold;
    int round_digits = -1;
};

std::string render_report(const ucm::ImportanceReport& report,
                          std::span<const ucm::ScenarioPath> paths, const AnalyzeOptions& opts,
                          Format format);

std::string render_estimate(const ucm::Estimate& est, int loop_bound,
                            const std::map<std::string, std::string>& signature_names,
                            int round_digits, Format format);

std::string render_validation(const ucm::ValidationReport& report);

}  // namespace ucmcli
