#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bp/corpus.hpp"
#include "bp/fitting.hpp"
#include "bp/registry.hpp"
#include "bp/regression.hpp"

namespace bp {

// Monolingual statistics row used when assembling records from pairwise
// pipelines: `language,bytes_per_char,char_entropy`.
struct LanguageStats {
  LanguageTag tag;
  double bytes_per_char = 0.0;
  double char_entropy = 0.0;
};

std::map<LanguageTag, LanguageStats> read_stats_csv(const std::filesystem::path& path);
// Appends rows for languages not already present ("first wins": entropy is
// stable across samples, so the first measurement stands).
void append_stats_csv(const std::vector<LanguageStats>& stats, const std::filesystem::path& path);

// Ground-truth records straight from a multi-parallel corpus: premiums and
// length ratios from column totals, bytes-per-char and entropy from each
// column, families from `metadata` when present. Script types come from
// metadata first, then the built-in script mapping.
std::vector<GroundTruthRecord> records_from_multiparallel(
    const MultiParallelCorpus& corpus, const LanguageTag& reference, const std::string& source,
    const std::map<LanguageTag, LanguageMetadata>& metadata = {});

// Ground-truth records from separately fitted byte-premium and length-ratio
// tables (the pairwise pipeline) joined with per-language stats. Every
// language in both tables must have a stats row.
std::vector<GroundTruthRecord> assemble_records(
    const PremiumTable& premiums, const PremiumTable& length_ratios,
    const std::map<LanguageTag, LanguageStats>& stats, const std::string& source,
    const std::map<LanguageTag, LanguageMetadata>& metadata = {});

}  // namespace bp
