#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bp/tags.hpp"

namespace bp {

// Line-aligned parallel text in two languages. One line is one segment; no
// re-segmentation, no Unicode normalization, empty lines kept (ratio
// operations skip them later, so alignment with other tools is preserved).
// Immutable after loading; safe to share across threads.
struct Bitext {
  LanguageTag lang_a;
  LanguageTag lang_b;
  std::vector<std::pair<std::string, std::string>> segments;
};

// Text aligned across any number of languages: one column per language, one
// aligned tuple per row.
struct MultiParallelCorpus {
  std::vector<LanguageTag> languages;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column_of(const LanguageTag& tag) const;
};

// Reads two one-segment-per-line UTF-8 files and pairs them up, keeping at
// most the first `max_segments` lines. The files must have equal line
// counts even when a limit is given.
Bitext load_bitext(const std::filesystem::path& path_a, const std::filesystem::path& path_b,
                   const LanguageTag& lang_a, const LanguageTag& lang_b,
                   std::optional<std::size_t> max_segments = std::nullopt);

// Reads a UTF-8 TSV whose header row lists canonical language tags. Tabs
// inside text are not representable and surface as ragged-row errors.
MultiParallelCorpus load_multiparallel(const std::filesystem::path& path);

// Canonical TSV form of a corpus: header row, '\n' line endings, trailing
// newline. Loading a file in this form and re-serializing it is
// byte-identical.
std::string serialize_multiparallel(const MultiParallelCorpus& corpus);

// First min(n, rows) rows. A prefix rather than a random sample, so results
// are reproducible.
MultiParallelCorpus sample_lines(const MultiParallelCorpus& corpus, std::size_t n);

// NFC-normalized copies, for the CLI's opt-in --normalize nfc.
Bitext nfc_normalized(const Bitext& bitext);
MultiParallelCorpus nfc_normalized(const MultiParallelCorpus& corpus);

}  // namespace bp
