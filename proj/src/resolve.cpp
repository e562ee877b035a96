#include "bp/resolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bp/corpus.hpp"
#include "bp/errors.hpp"
#include "bp/format.hpp"
#include "bp/metrics.hpp"
#include "bp/normalize.hpp"
#include "bp/utf8.hpp"

namespace bp {

std::string_view to_string(ResolveMethod method) {
  switch (method) {
    case ResolveMethod::table: return "table";
    case ResolveMethod::parallel: return "parallel";
    case ResolveMethod::regression_I: return "regression-I";
    case ResolveMethod::regression_II: return "regression-II";
    case ResolveMethod::regression_III: return "regression-III";
  }
  return "table";
}

namespace {

constexpr std::size_t kHardMinimumLines = 5;
constexpr std::size_t kSoftMinimumLines = 20;

int method_rank(ResolveMethod method) {
  switch (method) {
    case ResolveMethod::table: return 0;
    case ResolveMethod::parallel: return 1;
    default: return 2;
  }
}

ResolveMethod method_for_variant(RegressionVariant variant) {
  switch (variant) {
    case RegressionVariant::I: return ResolveMethod::regression_I;
    case RegressionVariant::II: return ResolveMethod::regression_II;
    case RegressionVariant::III: return ResolveMethod::regression_III;
  }
  return ResolveMethod::regression_III;
}

std::vector<std::string> load_lines(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string content = std::move(buffer).str();
  if (const auto bad = utf8::find_invalid(content)) {
    throw DecodeError(*bad, "invalid UTF-8 in " + path.string() + " at byte offset " +
                                std::to_string(*bad));
  }
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(start, end - start);
    if (normalize) line = nfc(line);
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

// Premium of `tag` relative to the table's reference via the monolingual
// regression path.
double resolve_monolingual(const LanguageTag& tag, const MonolingualInput& input,
                           const PremiumTable& table, const ResolveAux& aux,
                           ResolveMethod& method_out, std::vector<std::string>& warnings) {
  const std::vector<std::string> lines = load_lines(input.path, aux.normalize_nfc);
  std::size_t non_empty = 0;
  for (const auto& line : lines) {
    if (!line.empty()) ++non_empty;
  }
  if (non_empty < kHardMinimumLines) {
    throw InsufficientDataError("monolingual text for '" + tag.canonical() + "' has only " +
                                std::to_string(non_empty) + " non-empty lines; at least " +
                                std::to_string(kHardMinimumLines) + " are required");
  }
  if (non_empty < kSoftMinimumLines) {
    warnings.push_back("monolingual text for '" + tag.canonical() + "' has only " +
                       std::to_string(non_empty) + " non-empty lines; entropy and " +
                       "bytes-per-char estimates stabilize at about " +
                       std::to_string(kSoftMinimumLines) + " lines");
  }

  const LanguageProfile stats = profile(tag, lines, input.script_type);

  RegressionFeatures features;
  features.char_entropy = stats.char_entropy;
  features.script_type = input.script_type;
  // "zzzz" is the uncoded-script placeholder, not a usable script level.
  if (input.script) {
    features.script = input.script;
  } else if (tag.script() != "zzzz") {
    features.script = tag.script();
  }
  features.family = input.family;

  RegressionModel model;
  double reference_bpc = 0.0;
  std::map<std::string, std::size_t> counts;
  if (aux.model) {
    model = *aux.model;
    for (const auto& training_tag : model.training_languages) ++counts[training_tag.script()];
    if (!aux.reference_bpc) {
      throw DataError("a pre-fitted model needs the reference language's bytes-per-char "
                      "(pass it alongside the model, or supply ground-truth records instead)");
    }
    reference_bpc = *aux.reference_bpc;
  } else if (!aux.records.empty()) {
    const std::vector<GroundTruthRecord> merged = merge_records(aux.records);
    counts = script_counts(merged);
    const FeatureAvailability availability{features.family.has_value(),
                                           features.script.has_value()};
    const RegressionVariant variant = select_variant(features.script.value_or(tag.script()),
                                                     availability, counts,
                                                     aux.script_count_threshold);
    std::vector<GroundTruthRecord> usable;
    for (const auto& record : merged) {
      if (variant == RegressionVariant::I && !record.family) continue;
      usable.push_back(record);
    }
    model = fit_regression(usable, variant, aux.ridge, aux.clip);
    if (aux.reference_bpc) {
      reference_bpc = *aux.reference_bpc;
    } else {
      const auto it = std::find_if(merged.begin(), merged.end(), [&](const GroundTruthRecord& r) {
        return r.tag == table.reference;
      });
      if (it == merged.end()) {
        throw DataError("ground-truth records lack the reference language '" +
                        table.reference.canonical() +
                        "', so there is no reference bytes-per-char for the conversion");
      }
      reference_bpc = it->bytes_per_char;
    }
  } else {
    throw DataError("language '" + tag.canonical() +
                    "' is not in the premium table and no regression model or ground-truth "
                    "records were supplied for the monolingual path");
  }

  const PredictionResult prediction = predict_length_ratio(model, features);
  for (const auto& level : prediction.unseen_levels) {
    warnings.push_back("level " + level + " was not seen in training; it contributes as the "
                       "reference level");
  }
  if (prediction.floored) {
    warnings.push_back("predicted length ratio for '" + tag.canonical() +
                       "' fell below the positivity floor and was clamped");
  }
  method_out = method_for_variant(model.variant);
  return premium_from_length_ratio(prediction.length_ratio, stats.bytes_per_char, reference_bpc);
}

// Premium of `tag` relative to the table's reference: table entry if
// present, else parallel shortcut, else monolingual regression.
double resolve_one(const LanguageTag& tag, const std::optional<ParallelInput>& parallel,
                   const std::optional<MonolingualInput>& monolingual, const PremiumTable& table,
                   const ResolveAux& aux, ResolveMethod& method_out,
                   std::vector<std::string>& warnings) {
  if (table.contains(tag)) {
    method_out = ResolveMethod::table;
    return table.at(tag);
  }
  if (parallel) {
    if (!table.contains(parallel->known_language)) {
      throw UnknownLanguageError(parallel->known_language.canonical(),
                                 "parallel text must pair '" + tag.canonical() +
                                     "' with a language in the table; '" +
                                     parallel->known_language.canonical() + "' is not");
    }
    Bitext bitext = load_bitext(parallel->novel_path, parallel->known_path, tag,
                                parallel->known_language);
    if (aux.normalize_nfc) bitext = nfc_normalized(bitext);
    std::uint64_t bytes_novel = 0;
    std::uint64_t bytes_known = 0;
    for (const auto& [novel, known] : bitext.segments) {
      bytes_novel += byte_len(novel);
      bytes_known += byte_len(known);
    }
    if (bytes_known == 0) {
      throw DegenerateCorpusError("known side of the parallel text for '" + tag.canonical() +
                                  "' is empty");
    }
    method_out = ResolveMethod::parallel;
    return (static_cast<double>(bytes_novel) / static_cast<double>(bytes_known)) *
           table.at(parallel->known_language);
  }
  if (monolingual) {
    return resolve_monolingual(tag, *monolingual, table, aux, method_out, warnings);
  }
  throw UnknownLanguageError(
      tag.canonical(),
      "language '" + tag.canonical() + "' is not in the premium table; either supply parallel "
      "text pairing it with a known language, or supply monolingual text plus its script type "
      "for a regression estimate");
}

}  // namespace

Resolution resolve_pair(const LanguageTag& lang_a, const LanguageTag& lang_b,
                        const PremiumTable& table, const ResolveAux& aux) {
  Resolution resolution;
  ResolveMethod method_a = ResolveMethod::table;
  ResolveMethod method_b = ResolveMethod::table;
  const double premium_a = resolve_one(lang_a, aux.parallel_a, aux.monolingual_a, table, aux,
                                       method_a, resolution.warnings);
  const double premium_b = resolve_one(lang_b, aux.parallel_b, aux.monolingual_b, table, aux,
                                       method_b, resolution.warnings);
  resolution.premium = premium_a / premium_b;
  resolution.method = (method_rank(method_a) >= method_rank(method_b)) ? method_a : method_b;
  return resolution;
}

std::uint64_t convert_size(std::uint64_t size_bytes, const LanguageTag& from,
                           const LanguageTag& to, const PremiumTable& table,
                           const ResolveAux& aux) {
  const Resolution resolution = resolve_pair(from, to, table, aux);
  const double converted = static_cast<double>(size_bytes) / resolution.premium;
  return static_cast<std::uint64_t>(std::llround(converted));
}

std::map<LanguageTag, double> rescale_proportions(const std::map<LanguageTag, double>& proportions,
                                                  const PremiumTable& table) {
  if (proportions.empty()) throw ArgumentError("no proportions to rescale");
  std::string unknown;
  double sum = 0.0;
  for (const auto& [tag, value] : proportions) {
    if (value < 0.0) {
      throw ArgumentError("proportion for '" + tag.canonical() + "' is negative");
    }
    if (!table.contains(tag)) {
      if (!unknown.empty()) unknown += ", ";
      unknown += tag.canonical();
    }
    sum += value;
  }
  if (!unknown.empty()) {
    throw UnknownLanguageError(unknown, "languages not in the premium table: " + unknown);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("proportions must sum to 1 (within 1e-9), got " + format_double(sum));
  }

  std::map<LanguageTag, double> scaled;
  double scaled_sum = 0.0;
  for (const auto& [tag, value] : proportions) {
    const double adjusted = value / table.at(tag);
    scaled[tag] = adjusted;
    scaled_sum += adjusted;
  }
  for (auto& [tag, value] : scaled) value /= scaled_sum;
  return scaled;
}

}  // namespace bp
