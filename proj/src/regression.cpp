#include "bp/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bp/errors.hpp"
#include "bp/format.hpp"

namespace bp {

namespace {

constexpr double kLengthRatioFloor = 1e-3;
constexpr int kModelFormatVersion = 1;

using Json = nlohmann::json;

const char* kPredictorScriptType = "script_type";
const char* kPredictorScript = "script";
const char* kPredictorFamily = "family";

// Fixed predictor order for design-matrix columns.
std::vector<std::string> predictors_for(RegressionVariant variant) {
  switch (variant) {
    case RegressionVariant::I: return {kPredictorScriptType, kPredictorScript, kPredictorFamily};
    case RegressionVariant::II: return {kPredictorScriptType, kPredictorScript};
    case RegressionVariant::III: return {kPredictorScriptType};
  }
  return {kPredictorScriptType};
}

std::optional<std::string> level_of(const GroundTruthRecord& record, const std::string& predictor) {
  if (predictor == kPredictorScriptType) return std::string(to_string(record.script_type));
  if (predictor == kPredictorScript) return record.tag.script();
  return record.family;
}

std::optional<std::string> level_of(const RegressionFeatures& features,
                                    const std::string& predictor) {
  if (predictor == kPredictorScriptType) return std::string(to_string(features.script_type));
  if (predictor == kPredictorScript) return features.script;
  return features.family;
}

}  // namespace

std::string_view to_string(RegressionVariant variant) {
  switch (variant) {
    case RegressionVariant::I: return "I";
    case RegressionVariant::II: return "II";
    case RegressionVariant::III: return "III";
  }
  return "III";
}

RegressionVariant variant_from_string(std::string_view name) {
  if (name == "I" || name == "1" || name == "i") return RegressionVariant::I;
  if (name == "II" || name == "2" || name == "ii") return RegressionVariant::II;
  if (name == "III" || name == "3" || name == "iii") return RegressionVariant::III;
  throw ArgumentError("unknown regression variant '" + std::string(name) +
                      "' (expected I, II, or III)");
}

double clipped_premium(const GroundTruthRecord& record, const ClipPolicy& clip) {
  return std::min(record.byte_premium, clip.max_premium);
}

double clipped_length_ratio(const GroundTruthRecord& record, const ClipPolicy& clip) {
  if (record.byte_premium <= clip.max_premium) return record.length_ratio;
  // Shrink the length ratio by the same factor as the premium, so the
  // clipped record still satisfies the bytes-per-char identity.
  return record.length_ratio * (clip.max_premium / record.byte_premium);
}

RegressionModel fit_regression(std::span<const GroundTruthRecord> records,
                               RegressionVariant variant, double ridge, const ClipPolicy& clip) {
  if (records.size() < 2) {
    throw InsufficientDataError("regression needs at least 2 records, got " +
                                std::to_string(records.size()));
  }
  if (ridge < 0.0) throw ArgumentError("ridge must be non-negative");

  const std::vector<std::string> predictors = predictors_for(variant);

  // Level frequencies; the most frequent level per predictor (ties broken
  // lexicographically) becomes the dropped reference level.
  std::map<std::string, std::map<std::string, std::size_t>> level_counts;
  for (const auto& record : records) {
    for (const auto& predictor : predictors) {
      const auto level = level_of(record, predictor);
      if (!level) {
        throw FeatureMissingError(record.tag.canonical(), predictor,
                                  "record for '" + record.tag.canonical() + "' lacks required '" +
                                      predictor + "' for regression " +
                                      std::string(to_string(variant)));
      }
      ++level_counts[predictor][*level];
    }
  }

  RegressionModel model;
  model.variant = variant;

  // Column layout: [intercept, entropy, dummies in predictor order with
  // levels sorted, reference level dropped].
  struct Column {
    std::string predictor;
    std::string level;
  };
  std::vector<Column> dummy_columns;
  for (const auto& predictor : predictors) {
    const auto& counts = level_counts.at(predictor);
    std::string reference = counts.begin()->first;
    std::size_t best = counts.begin()->second;
    for (const auto& [level, count] : counts) {
      if (count > best) {
        reference = level;
        best = count;
      }
    }
    model.reference_levels[predictor] = reference;
    for (const auto& [level, count] : counts) {
      if (level != reference) dummy_columns.push_back({predictor, level});
    }
  }

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(records.size());
  const std::ptrdiff_t p = 2 + static_cast<std::ptrdiff_t>(dummy_columns.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n, p);
  Eigen::VectorXd target(n);
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    const auto& record = records[static_cast<std::size_t>(row)];
    design(row, 0) = 1.0;
    design(row, 1) = record.char_entropy;
    for (std::size_t c = 0; c < dummy_columns.size(); ++c) {
      const auto level = level_of(record, dummy_columns[c].predictor);
      if (level && *level == dummy_columns[c].level) {
        design(row, 2 + static_cast<std::ptrdiff_t>(c)) = 1.0;
      }
    }
    target(row) = clipped_length_ratio(record, clip);
  }

  Eigen::MatrixXd normal = design.transpose() * design;
  if (ridge == 0.0) {
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
    if (lu.rank() < p) {
      throw RankDeficiencyError(
          "design matrix is rank deficient (rank " + std::to_string(lu.rank()) + " of " +
          std::to_string(p) +
          "); collinear or underrepresented levels — use a positive ridge value");
    }
  } else {
    for (std::ptrdiff_t j = 1; j < p; ++j) normal(j, j) += ridge;  // intercept undamped
  }
  const Eigen::VectorXd coef = normal.ldlt().solve(design.transpose() * target);

  model.intercept = coef(0);
  model.entropy_coef = coef(1);
  for (std::size_t c = 0; c < dummy_columns.size(); ++c) {
    model.level_maps[dummy_columns[c].predictor][dummy_columns[c].level] =
        coef(2 + static_cast<std::ptrdiff_t>(c));
  }
  // Predictors with a single level contribute no dummy columns; keep an
  // empty map so the predictor is still declared.
  for (const auto& predictor : predictors) {
    model.level_maps.try_emplace(predictor);
  }
  model.training_languages.reserve(records.size());
  for (const auto& record : records) model.training_languages.push_back(record.tag);
  return model;
}

PredictionResult predict_length_ratio(const RegressionModel& model,
                                      const RegressionFeatures& features) {
  PredictionResult result;
  double value = model.intercept + model.entropy_coef * features.char_entropy;
  for (const auto& [predictor, levels] : model.level_maps) {
    const auto level = level_of(features, predictor);
    if (!level) {
      throw FeatureMissingError("", predictor,
                                "prediction requires '" + predictor + "' for regression " +
                                    std::string(to_string(model.variant)));
    }
    if (*level == model.reference_levels.at(predictor)) continue;
    const auto it = levels.find(*level);
    if (it == levels.end()) {
      // Unseen level: contributes 0, same as the reference level.
      result.unseen_levels.push_back(predictor + "=" + *level);
      continue;
    }
    value += it->second;
  }
  if (value < kLengthRatioFloor) {
    value = kLengthRatioFloor;
    result.floored = true;
  }
  result.length_ratio = value;
  return result;
}

double premium_from_length_ratio(double length_ratio, double bpc_target, double bpc_reference) {
  if (!(length_ratio > 0.0) || !(bpc_target > 0.0) || !(bpc_reference > 0.0)) {
    throw ArgumentError("length ratio and bytes-per-char values must be positive");
  }
  return bpc_target * length_ratio / bpc_reference;
}

std::vector<GroundTruthRecord> merge_records(std::span<const GroundTruthRecord> records) {
  const auto priority = [](const std::string& source) {
    if (source == "NLLB") return 0;
    if (source == "FLORES") return 1;
    if (source == "Bible") return 2;
    return 3;
  };
  std::map<LanguageTag, std::size_t> chosen;
  std::vector<GroundTruthRecord> out;
  for (const auto& record : records) {
    const auto it = chosen.find(record.tag);
    if (it == chosen.end()) {
      chosen[record.tag] = out.size();
      out.push_back(record);
    } else if (priority(record.source_dataset) < priority(out[it->second].source_dataset)) {
      out[it->second] = record;
    }
  }
  return out;
}

std::string model_to_json(const RegressionModel& model) {
  Json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["variant"] = std::string(to_string(model.variant));
  doc["target"] = model.target;
  doc["intercept"] = model.intercept;
  doc["entropy_coef"] = model.entropy_coef;
  doc["reference_levels"] = model.reference_levels;
  Json levels = Json::object();
  for (const auto& [predictor, map] : model.level_maps) {
    levels[predictor] = map;
  }
  doc["level_coefficients"] = levels;
  Json langs = Json::array();
  for (const auto& tag : model.training_languages) langs.push_back(tag.canonical());
  doc["training_languages"] = langs;
  return doc.dump(2) + "\n";
}

RegressionModel model_from_json(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
  try {
    if (doc.at("format_version").get<int>() != kModelFormatVersion) {
      throw DataError("unsupported model format version " +
                      doc.at("format_version").dump());
    }
    RegressionModel model;
    model.variant = variant_from_string(doc.at("variant").get<std::string>());
    model.target = doc.at("target").get<std::string>();
    model.intercept = doc.at("intercept").get<double>();
    model.entropy_coef = doc.at("entropy_coef").get<double>();
    model.reference_levels =
        doc.at("reference_levels").get<std::map<std::string, std::string>>();
    for (const auto& [predictor, map] : doc.at("level_coefficients").items()) {
      model.level_maps[predictor] = map.get<std::map<std::string, double>>();
    }
    for (const auto& tag : doc.at("training_languages")) {
      model.training_languages.push_back(LanguageTag::parse(tag.get<std::string>()));
    }
    return model;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const RegressionModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << model_to_json(model);
  if (!out) throw DataError("write failure on file: " + path.string());
}

RegressionModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

namespace {

constexpr const char* kRecordsHeader =
    "language,length_ratio,byte_premium,bytes_per_char,char_entropy,script_type,family,source";

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    cells.push_back(line.substr(start, end - start));
    if (end == line.size()) break;
    start = end + 1;
  }
  return cells;
}

}  // namespace

void write_records_csv(std::span<const GroundTruthRecord> records,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << kRecordsHeader << '\n';
  for (const auto& record : records) {
    out << record.tag.canonical() << ',' << format_double(record.length_ratio) << ','
        << format_double(record.byte_premium) << ',' << format_double(record.bytes_per_char) << ','
        << format_double(record.char_entropy) << ',' << to_string(record.script_type) << ','
        << record.family.value_or("") << ',' << record.source_dataset << '\n';
  }
  if (!out) throw DataError("write failure on file: " + path.string());
}

std::vector<GroundTruthRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::vector<GroundTruthRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kRecordsHeader) {
        throw FormatError(line_no,
                          path.string() + ": expected header '" + kRecordsHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 8) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": expected 8 columns, got " + std::to_string(cells.size()));
    }
    GroundTruthRecord record;
    record.tag = LanguageTag::parse(cells[0]);
    record.length_ratio = parse_double(cells[1]);
    record.byte_premium = parse_double(cells[2]);
    record.bytes_per_char = parse_double(cells[3]);
    record.char_entropy = parse_double(cells[4]);
    record.script_type = script_type_from_string(cells[5]);
    if (!cells[6].empty()) record.family = cells[6];
    record.source_dataset = cells[7];
    if (record.source_dataset != "NLLB" && record.source_dataset != "FLORES" &&
        record.source_dataset != "Bible") {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": source must be NLLB, FLORES, or Bible, got '" +
                                     cells[7] + "'");
    }
    if (!(record.length_ratio > 0.0) || !(record.byte_premium > 0.0) ||
        !(record.bytes_per_char > 0.0)) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": ratios and bytes-per-char must be positive");
    }
    records.push_back(std::move(record));
  }
  if (records.empty()) throw EmptyCorpusError("no records in " + path.string());
  return records;
}

}  // namespace bp
