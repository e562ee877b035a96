#include "bp/registry.hpp"

#include <array>
#include <cstdlib>
#include <fstream>

#include "bp/errors.hpp"
#include "bp/format.hpp"

#ifndef BP_BUNDLED_DATA_DIR
#define BP_BUNDLED_DATA_DIR ""
#endif

namespace bp {

namespace {

struct ScriptTypeEntry {
  std::string_view script;
  ScriptType type;
};

// ISO 15924 (lowercase) to script taxonomy. Sorted by script code.
constexpr std::array<ScriptTypeEntry, 31> kScriptTypes{{
    {"arab", ScriptType::abjad},
    {"armn", ScriptType::alphabet},
    {"beng", ScriptType::abugida},
    {"cans", ScriptType::abugida},
    {"cyrl", ScriptType::alphabet},
    {"deva", ScriptType::abugida},
    {"ethi", ScriptType::abugida},
    {"geor", ScriptType::alphabet},
    {"grek", ScriptType::alphabet},
    {"gujr", ScriptType::abugida},
    {"guru", ScriptType::abugida},
    {"hang", ScriptType::alphabet},
    {"hani", ScriptType::logography},
    {"hans", ScriptType::logography},
    {"hant", ScriptType::logography},
    {"hebr", ScriptType::abjad},
    {"jpan", ScriptType::logography},
    {"khmr", ScriptType::abugida},
    {"knda", ScriptType::abugida},
    {"laoo", ScriptType::abugida},
    {"latn", ScriptType::alphabet},
    {"mlym", ScriptType::abugida},
    {"mymr", ScriptType::abugida},
    {"orya", ScriptType::abugida},
    {"sinh", ScriptType::abugida},
    {"syrc", ScriptType::abjad},
    {"taml", ScriptType::abugida},
    {"telu", ScriptType::abugida},
    {"tfng", ScriptType::alphabet},
    {"thai", ScriptType::abugida},
    {"tibt", ScriptType::abugida},
}};

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

constexpr const char* kMetadataHeader = "language,script_type,family,bytes_per_char,char_entropy";

}  // namespace

std::optional<ScriptType> script_type_for_script(std::string_view script) {
  std::string key(script);
  for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const auto& entry : kScriptTypes) {
    if (entry.script == key) return entry.type;
  }
  return std::nullopt;
}

std::map<LanguageTag, LanguageMetadata> read_metadata_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::map<LanguageTag, LanguageMetadata> metadata;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kMetadataHeader) {
        throw FormatError(line_no, path.string() + ": expected header '" +
                                       std::string(kMetadataHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 5) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": expected 5 columns, got " + std::to_string(cells.size()));
    }
    LanguageMetadata entry;
    entry.tag = LanguageTag::parse(cells[0]);
    entry.script_type = script_type_from_string(cells[1]);
    if (!cells[2].empty()) entry.family = cells[2];
    if (!cells[3].empty()) entry.bytes_per_char = parse_double(cells[3]);
    if (!cells[4].empty()) entry.char_entropy = parse_double(cells[4]);

    // The one mapping table is authoritative; reject contradictions.
    const auto mapped = script_type_for_script(entry.tag.script());
    if (mapped && *mapped != entry.script_type) {
      throw DataError(path.string() + " line " + std::to_string(line_no) + ": script '" +
                      entry.tag.script() + "' is " + std::string(to_string(*mapped)) +
                      " but row declares " + cells[1]);
    }
    if (!metadata.emplace(entry.tag, entry).second) {
      throw DuplicateLanguageError("duplicate language '" + entry.tag.canonical() + "' in " +
                                   path.string());
    }
  }
  if (!header_seen) throw FormatError(1, path.string() + ": missing header row");
  return metadata;
}

void write_metadata_csv(const std::map<LanguageTag, LanguageMetadata>& metadata,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << kMetadataHeader << '\n';
  for (const auto& [tag, entry] : metadata) {
    out << tag.canonical() << ',' << to_string(entry.script_type) << ','
        << entry.family.value_or("") << ','
        << (entry.bytes_per_char ? format_double(*entry.bytes_per_char) : "") << ','
        << (entry.char_entropy ? format_double(*entry.char_entropy) : "") << '\n';
  }
  if (!out) throw DataError("write failure on file: " + path.string());
}

Registry Registry::load(const std::filesystem::path& premiums_csv,
                        const std::filesystem::path& metadata_csv) {
  Registry registry;
  registry.table_ = load_premium_table(premiums_csv);
  registry.metadata_ = read_metadata_csv(metadata_csv);
  for (auto& [tag, entry] : registry.metadata_) {
    const auto it = registry.table_.premiums.find(tag);
    if (it != registry.table_.premiums.end()) {
      entry.premium = it->second;
      entry.premium_source = registry.table_.source;
    }
  }
  return registry;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("BYTE_PREMIUM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return BP_BUNDLED_DATA_DIR;
}

Registry Registry::load_bundled(std::optional<std::filesystem::path> dir) {
  const std::filesystem::path base = dir ? *dir : default_data_dir();
  return load(base / "premiums.csv", base / "metadata.csv");
}

std::optional<LanguageMetadata> Registry::find(const LanguageTag& tag) const {
  const auto it = metadata_.find(tag);
  if (it == metadata_.end()) return std::nullopt;
  return it->second;
}

}  // namespace bp
