#include "bp/records.hpp"

#include <fstream>

#include "bp/errors.hpp"
#include "bp/estimation.hpp"
#include "bp/format.hpp"
#include "bp/metrics.hpp"

namespace bp {

namespace {

constexpr const char* kStatsHeader = "language,bytes_per_char,char_entropy";

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

ScriptType script_type_for(const LanguageTag& tag,
                           const std::map<LanguageTag, LanguageMetadata>& metadata) {
  if (const auto it = metadata.find(tag); it != metadata.end()) {
    return it->second.script_type;
  }
  if (const auto mapped = script_type_for_script(tag.script())) {
    return *mapped;
  }
  throw DataError("no script type known for script '" + tag.script() + "' (language '" +
                  tag.canonical() + "'); add the language to a metadata file");
}

std::optional<std::string> family_for(const LanguageTag& tag,
                                      const std::map<LanguageTag, LanguageMetadata>& metadata) {
  if (const auto it = metadata.find(tag); it != metadata.end()) {
    return it->second.family;
  }
  return std::nullopt;
}

}  // namespace

std::map<LanguageTag, LanguageStats> read_stats_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::map<LanguageTag, LanguageStats> stats;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kStatsHeader) {
        throw FormatError(line_no, path.string() + ": expected header '" +
                                       std::string(kStatsHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 3) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": expected 3 columns, got " + std::to_string(cells.size()));
    }
    LanguageStats row;
    row.tag = LanguageTag::parse(cells[0]);
    row.bytes_per_char = parse_double(cells[1]);
    row.char_entropy = parse_double(cells[2]);
    stats.emplace(row.tag, row);  // first occurrence wins
  }
  if (!header_seen) throw FormatError(1, path.string() + ": missing header row");
  return stats;
}

void append_stats_csv(const std::vector<LanguageStats>& stats,
                      const std::filesystem::path& path) {
  std::map<LanguageTag, LanguageStats> existing;
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    existing = read_stats_csv(path);
  }
  const bool fresh = existing.empty();
  std::ofstream out(path, fresh ? std::ios::binary : (std::ios::binary | std::ios::app));
  if (!out) throw DataError("cannot write file: " + path.string());
  if (fresh) out << kStatsHeader << '\n';
  for (const auto& row : stats) {
    if (existing.contains(row.tag)) continue;
    out << row.tag.canonical() << ',' << format_double(row.bytes_per_char) << ','
        << format_double(row.char_entropy) << '\n';
    existing.emplace(row.tag, row);
  }
  if (!out) throw DataError("write failure on file: " + path.string());
}

std::vector<GroundTruthRecord> records_from_multiparallel(
    const MultiParallelCorpus& corpus, const LanguageTag& reference, const std::string& source,
    const std::map<LanguageTag, LanguageMetadata>& metadata) {
  const PremiumMap premiums = multiparallel_premiums(corpus, reference);
  const PremiumMap length_ratios = multiparallel_length_ratios(corpus, reference);

  std::vector<GroundTruthRecord> records;
  records.reserve(corpus.languages.size());
  for (std::size_t i = 0; i < corpus.languages.size(); ++i) {
    const LanguageTag& tag = corpus.languages[i];
    std::vector<std::string> column;
    column.reserve(corpus.rows.size());
    for (const auto& row : corpus.rows) column.push_back(row[i]);

    const ScriptType script_type = script_type_for(tag, metadata);
    const LanguageProfile stats = profile(tag, column, script_type);
    if (stats.total_chars == 0) {
      throw DegenerateCorpusError("language '" + tag.canonical() + "' has an empty column");
    }

    GroundTruthRecord record;
    record.tag = tag;
    record.length_ratio = length_ratios.at(tag);
    record.byte_premium = premiums.at(tag);
    record.bytes_per_char = stats.bytes_per_char;
    record.char_entropy = stats.char_entropy;
    record.script_type = script_type;
    record.family = family_for(tag, metadata);
    record.source_dataset = source;
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<GroundTruthRecord> assemble_records(
    const PremiumTable& premiums, const PremiumTable& length_ratios,
    const std::map<LanguageTag, LanguageStats>& stats, const std::string& source,
    const std::map<LanguageTag, LanguageMetadata>& metadata) {
  std::vector<GroundTruthRecord> records;
  std::string missing;
  for (const auto& [tag, premium] : premiums.premiums) {
    const auto lr = length_ratios.premiums.find(tag);
    if (lr == length_ratios.premiums.end()) continue;
    const auto st = stats.find(tag);
    if (st == stats.end()) {
      if (!missing.empty()) missing += ", ";
      missing += tag.canonical();
      continue;
    }
    GroundTruthRecord record;
    record.tag = tag;
    record.length_ratio = lr->second;
    record.byte_premium = premium;
    record.bytes_per_char = st->second.bytes_per_char;
    record.char_entropy = st->second.char_entropy;
    record.script_type = script_type_for(tag, metadata);
    record.family = family_for(tag, metadata);
    record.source_dataset = source;
    records.push_back(std::move(record));
  }
  if (!missing.empty()) {
    throw DataError("no monolingual stats for: " + missing);
  }
  if (records.empty()) {
    throw InsufficientDataError("no language appears in both fitted tables");
  }
  return records;
}

}  // namespace bp
