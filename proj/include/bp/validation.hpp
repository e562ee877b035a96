#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bp/regression.hpp"
#include "bp/tags.hpp"

namespace bp {

// Leave-one-out results for one regression variant. Errors are signed
// (predicted minus ground-truth byte premium, after the length ratio is
// converted with the language's measured bytes-per-char), and RMSEs are
// split by whether the language's script is shared by at least
// `script_count_threshold` languages in the record set.
struct VariantReport {
  std::optional<double> rmse_common;    // absent when no language qualifies
  std::optional<double> rmse_uncommon;
  std::size_t n_common = 0;
  std::size_t n_uncommon = 0;
  std::map<LanguageTag, double> per_language_errors;
  std::vector<LanguageTag> skipped;  // not evaluable (e.g. family missing for I)
};

struct ValidationReport {
  std::map<RegressionVariant, VariantReport> per_variant;
  std::size_t script_count_threshold = 5;
};

struct ValidationOptions {
  std::size_t script_count_threshold = 5;
  double ridge = 1e-8;
  ClipPolicy clip{};
};

// For every language: refit the variant with that language held out,
// predict its length ratio, convert to a byte premium via its measured
// bytes-per-char, and score against its (clipped) ground-truth premium.
// Script commonality is a property of the full record set, not of each
// fold. The reference language's record supplies the conversion's
// reference bytes-per-char and must be present.
ValidationReport loo_validate(std::span<const GroundTruthRecord> records,
                              const std::vector<RegressionVariant>& variants,
                              const LanguageTag& reference, const ValidationOptions& options = {});

struct FeatureAvailability {
  bool family = false;
  bool script = false;
  // Script type is always obtainable, so regression III is always viable.
};

// Decision rule for which regression to use: uncommon scripts always get
// III; common scripts get the richest variant whose features are at hand
// (I needs family+script, II needs script, III needs script type only).
RegressionVariant select_variant(const std::string& script, const FeatureAvailability& available,
                                 const std::map<std::string, std::size_t>& script_counts,
                                 std::size_t threshold = 5);

// Script frequencies over a record set, keyed by lowercase ISO 15924 code.
std::map<std::string, std::size_t> script_counts(std::span<const GroundTruthRecord> records);

std::string report_to_json(const ValidationReport& report);

// Plain-text table: one row per script-commonality bucket, one column per
// variant.
std::string report_table(const ValidationReport& report);

}  // namespace bp
