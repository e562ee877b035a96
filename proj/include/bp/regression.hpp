#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bp/metrics.hpp"
#include "bp/tags.hpp"

namespace bp {

// Predictor subsets for the length-ratio regressions, in decreasing order
// of information required:
//   I   entropy + family + script + script type
//   II  entropy + script + script type
//   III entropy + script type
enum class RegressionVariant { I = 1, II = 2, III = 3 };

std::string_view to_string(RegressionVariant variant);
RegressionVariant variant_from_string(std::string_view name);

// Everything the regressions can see about a language.
struct RegressionFeatures {
  double char_entropy = 0.0;                // bits
  ScriptType script_type = ScriptType::alphabet;
  std::optional<std::string> script;        // ISO 15924, lowercase
  std::optional<std::string> family;
};

// A language with measured premium, length ratio, and monolingual stats,
// all relative to one reference language. `byte_premium` and
// `length_ratio` are the raw measured values; clipping for regression is
// applied downstream and the raw values stay available.
struct GroundTruthRecord {
  LanguageTag tag;
  double length_ratio = 0.0;
  double byte_premium = 0.0;
  double bytes_per_char = 0.0;
  double char_entropy = 0.0;
  ScriptType script_type = ScriptType::alphabet;
  std::optional<std::string> family;
  std::string source_dataset;  // NLLB, FLORES, or Bible
};

// Premiums above `max_premium` are clipped before deriving regression
// targets, and the length ratio is rescaled consistently (same ratio,
// same bytes-per-char).
struct ClipPolicy {
  double max_premium = 4.0;
};

double clipped_premium(const GroundTruthRecord& record, const ClipPolicy& clip = {});
double clipped_length_ratio(const GroundTruthRecord& record, const ClipPolicy& clip = {});

// Fitted linear model predicting length ratios. Categorical predictors are
// one-hot encoded with the most frequent level dropped as the reference
// level (coefficient 0); `level_maps` holds the remaining levels.
struct RegressionModel {
  RegressionVariant variant = RegressionVariant::III;
  double intercept = 0.0;
  double entropy_coef = 0.0;
  std::map<std::string, std::map<std::string, double>> level_maps;   // predictor -> level -> coef
  std::map<std::string, std::string> reference_levels;               // predictor -> dropped level
  std::vector<LanguageTag> training_languages;
  std::string target = "length_ratio relative to reference language";
};

// Ordinary least squares on the one-hot design, with `ridge` added to the
// normal-equation diagonal (intercept excluded). ridge = 0 demands a
// full-rank design and raises RankDeficiencyError otherwise. The default
// 1e-8 stabilizes near-collinear one-hot blocks: script levels nest inside
// script types in real data, which makes the dummy blocks linearly
// dependent.
RegressionModel fit_regression(std::span<const GroundTruthRecord> records,
                               RegressionVariant variant, double ridge = 1e-8,
                               const ClipPolicy& clip = {});

struct PredictionResult {
  double length_ratio = 0.0;
  // Categorical levels absent from training; they predicted as the
  // reference level (contribution 0).
  std::vector<std::string> unseen_levels;
  bool floored = false;  // raw prediction fell below the positivity floor

  bool has_warnings() const { return !unseen_levels.empty() || floored; }
};

// Linear prediction. The result is floored at 1e-3 so downstream byte
// premium conversion stays positive.
PredictionResult predict_length_ratio(const RegressionModel& model,
                                      const RegressionFeatures& features);

// Byte premium from a length ratio and the bytes-per-char of both sides:
// bpc_target * length_ratio / bpc_reference.
double premium_from_length_ratio(double length_ratio, double bpc_target, double bpc_reference);

// Deduplicates records that appear under several source datasets, keeping
// NLLB over FLORES over Bible (first occurrence wins within a dataset).
std::vector<GroundTruthRecord> merge_records(std::span<const GroundTruthRecord> records);

// Versioned JSON round trip for fitted models.
std::string model_to_json(const RegressionModel& model);
RegressionModel model_from_json(const std::string& json_text);
void save_model(const RegressionModel& model, const std::filesystem::path& path);
RegressionModel load_model(const std::filesystem::path& path);

// Records CSV: header
// `language,length_ratio,byte_premium,bytes_per_char,char_entropy,script_type,family,source`,
// empty family for unknown.
void write_records_csv(std::span<const GroundTruthRecord> records,
                       const std::filesystem::path& path);
std::vector<GroundTruthRecord> read_records_csv(const std::filesystem::path& path);

}  // namespace bp
