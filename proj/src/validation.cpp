#include "bp/validation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bp/errors.hpp"
#include "bp/format.hpp"

namespace bp {

std::map<std::string, std::size_t> script_counts(std::span<const GroundTruthRecord> records) {
  std::map<std::string, std::size_t> counts;
  for (const auto& record : records) ++counts[record.tag.script()];
  return counts;
}

ValidationReport loo_validate(std::span<const GroundTruthRecord> records,
                              const std::vector<RegressionVariant>& variants,
                              const LanguageTag& reference, const ValidationOptions& options) {
  if (records.size() < 3) {
    throw InsufficientDataError("leave-one-out validation needs at least 3 records, got " +
                                std::to_string(records.size()));
  }
  // Fixed evaluation and fitting order, so identical record multisets give
  // bit-identical reports.
  std::vector<GroundTruthRecord> sorted(records.begin(), records.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const GroundTruthRecord& a, const GroundTruthRecord& b) { return a.tag < b.tag; });

  const GroundTruthRecord* reference_record = nullptr;
  for (const auto& record : sorted) {
    if (record.tag == reference) reference_record = &record;
  }
  if (reference_record == nullptr) {
    throw UnknownLanguageError(reference.canonical(),
                               "reference language '" + reference.canonical() +
                                   "' has no ground-truth record");
  }
  const double bpc_reference = reference_record->bytes_per_char;

  const auto counts = script_counts(sorted);

  ValidationReport report;
  report.script_count_threshold = options.script_count_threshold;

  for (const RegressionVariant variant : variants) {
    VariantReport variant_report;

    std::vector<GroundTruthRecord> eligible;
    for (const auto& record : sorted) {
      if (variant == RegressionVariant::I && !record.family) {
        variant_report.skipped.push_back(record.tag);
      } else {
        eligible.push_back(record);
      }
    }

    double sq_common = 0.0;
    double sq_uncommon = 0.0;
    std::vector<GroundTruthRecord> training;
    training.reserve(eligible.size());
    for (const auto& held_out : eligible) {
      training.clear();
      for (const auto& record : eligible) {
        if (record.tag != held_out.tag) training.push_back(record);
      }
      assert(training.size() + 1 == eligible.size());

      const RegressionModel model = fit_regression(training, variant, options.ridge, options.clip);
      RegressionFeatures features;
      features.char_entropy = held_out.char_entropy;
      features.script_type = held_out.script_type;
      features.script = held_out.tag.script();
      features.family = held_out.family;
      const PredictionResult prediction = predict_length_ratio(model, features);
      const double predicted_premium = premium_from_length_ratio(
          prediction.length_ratio, held_out.bytes_per_char, bpc_reference);
      const double error = predicted_premium - clipped_premium(held_out, options.clip);
      variant_report.per_language_errors[held_out.tag] = error;

      const bool common = counts.at(held_out.tag.script()) >= options.script_count_threshold;
      if (common) {
        sq_common += error * error;
        ++variant_report.n_common;
      } else {
        sq_uncommon += error * error;
        ++variant_report.n_uncommon;
      }
    }

    if (variant_report.n_common > 0) {
      variant_report.rmse_common =
          std::sqrt(sq_common / static_cast<double>(variant_report.n_common));
    }
    if (variant_report.n_uncommon > 0) {
      variant_report.rmse_uncommon =
          std::sqrt(sq_uncommon / static_cast<double>(variant_report.n_uncommon));
    }
    report.per_variant[variant] = std::move(variant_report);
  }
  return report;
}

RegressionVariant select_variant(const std::string& script, const FeatureAvailability& available,
                                 const std::map<std::string, std::size_t>& script_counts,
                                 std::size_t threshold) {
  std::string key = script;
  for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto it = script_counts.find(key);
  const std::size_t count = (it == script_counts.end()) ? 0 : it->second;
  if (count < threshold) return RegressionVariant::III;
  if (available.family && available.script) return RegressionVariant::I;
  if (available.script) return RegressionVariant::II;
  return RegressionVariant::III;
}

std::string report_to_json(const ValidationReport& report) {
  nlohmann::json doc;
  doc["script_count_threshold"] = report.script_count_threshold;
  nlohmann::json variants = nlohmann::json::object();
  for (const auto& [variant, variant_report] : report.per_variant) {
    nlohmann::json entry;
    entry["rmse_common"] = variant_report.rmse_common
                               ? nlohmann::json(*variant_report.rmse_common)
                               : nlohmann::json(nullptr);
    entry["rmse_uncommon"] = variant_report.rmse_uncommon
                                 ? nlohmann::json(*variant_report.rmse_uncommon)
                                 : nlohmann::json(nullptr);
    entry["n_common"] = variant_report.n_common;
    entry["n_uncommon"] = variant_report.n_uncommon;
    nlohmann::json errors = nlohmann::json::object();
    for (const auto& [tag, error] : variant_report.per_language_errors) {
      errors[tag.canonical()] = error;
    }
    entry["per_language_errors"] = errors;
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& tag : variant_report.skipped) skipped.push_back(tag.canonical());
    entry["skipped"] = skipped;
    variants[std::string(to_string(variant))] = entry;
  }
  doc["per_variant"] = variants;
  return doc.dump(2) + "\n";
}

std::string report_table(const ValidationReport& report) {
  const auto cell = [](const std::optional<double>& rmse, std::size_t n) {
    if (!rmse) return std::string("     -    ");
    std::string text = format_double(*rmse, 3) + " (n=" + std::to_string(n) + ")";
    while (text.size() < 10) text.push_back(' ');
    return text;
  };
  std::string out = "RMSE of predicted byte premiums (leave-one-out)\n";
  out += "                                ";
  for (const auto& [variant, variant_report] : report.per_variant) {
    out += "  ";
    out += to_string(variant);
    out += std::string(12 - std::string(to_string(variant)).size(), ' ');
  }
  out += "\n";
  out += "Scripts with count >= " + std::to_string(report.script_count_threshold) + "       ";
  for (const auto& [variant, variant_report] : report.per_variant) {
    out += "  " + cell(variant_report.rmse_common, variant_report.n_common) + "  ";
  }
  out += "\n";
  out += "Scripts with count <  " + std::to_string(report.script_count_threshold) + "       ";
  for (const auto& [variant, variant_report] : report.per_variant) {
    out += "  " + cell(variant_report.rmse_uncommon, variant_report.n_uncommon) + "  ";
  }
  out += "\n";
  bool any_skipped = false;
  for (const auto& [variant, variant_report] : report.per_variant) {
    if (!variant_report.skipped.empty()) {
      if (!any_skipped) {
        out += "Skipped (missing features):\n";
        any_skipped = true;
      }
      out += "  ";
      out += to_string(variant);
      out += ":";
      for (const auto& tag : variant_report.skipped) out += " " + tag.canonical();
      out += "\n";
    }
  }
  return out;
}

}  // namespace bp
