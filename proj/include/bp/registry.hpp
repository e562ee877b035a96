#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bp/fitting.hpp"
#include "bp/metrics.hpp"
#include "bp/tags.hpp"

namespace bp {

// Per-language entry of the bundled registry.
struct LanguageMetadata {
  LanguageTag tag;
  ScriptType script_type = ScriptType::alphabet;
  std::optional<std::string> family;
  std::optional<double> bytes_per_char;
  std::optional<double> char_entropy;
  std::optional<double> premium;
  std::string premium_source;  // bundled | fitted | parallel-derived | predicted
};

// The script-to-taxonomy mapping. Single source of truth: metadata files
// are checked against it at load time.
std::optional<ScriptType> script_type_for_script(std::string_view script);

// metadata.csv: header `language,script_type,family,bytes_per_char,char_entropy`,
// empty fields for unknowns.
std::map<LanguageTag, LanguageMetadata> read_metadata_csv(const std::filesystem::path& path);
void write_metadata_csv(const std::map<LanguageTag, LanguageMetadata>& metadata,
                        const std::filesystem::path& path);

// Bundled premium table plus per-language metadata. Immutable once loaded;
// safe to share across threads.
class Registry {
public:
  static Registry load(const std::filesystem::path& premiums_csv,
                       const std::filesystem::path& metadata_csv);

  // Loads from `dir`, or from the default data directory: the
  // BYTE_PREMIUM_DATA_DIR environment variable when set, else the path
  // compiled in at build time.
  static Registry load_bundled(std::optional<std::filesystem::path> dir = std::nullopt);

  const PremiumTable& table() const { return table_; }
  const std::map<LanguageTag, LanguageMetadata>& metadata() const { return metadata_; }
  std::optional<LanguageMetadata> find(const LanguageTag& tag) const;

private:
  PremiumTable table_;
  std::map<LanguageTag, LanguageMetadata> metadata_;
};

std::filesystem::path default_data_dir();

}  // namespace bp
