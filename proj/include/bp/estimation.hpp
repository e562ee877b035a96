#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bp/corpus.hpp"
#include "bp/tags.hpp"

namespace bp {

using PremiumMap = std::map<LanguageTag, double>;

// One measured pairwise byte premium BP_{A/B}. Mean-of-ratios estimates are
// not exactly reciprocal, so (A,B,p) and (B,A,q) are distinct observations;
// the fitter reconciles them.
struct PairwiseObservation {
  LanguageTag lang_a;
  LanguageTag lang_b;
  double premium = 0.0;
  std::size_t n_segments = 0;
};

struct PairwiseResult {
  PairwiseObservation observation;
  std::size_t segments_skipped = 0;  // empty side on either language
  bool high_skip_ratio = false;      // more than 10% of segments skipped
};

// BP_{A/B} as the mean over segments of the per-segment byte ratio
// len(a_i)/len(b_i). Segments with an empty side have no defined ratio and
// are skipped (and counted).
PairwiseResult pairwise_premium(const Bitext& bitext);

// Per-language premiums from a multi-parallel corpus: total column bytes
// over total reference bytes. The reference maps to exactly 1.0, and the
// ratio identity BP_{A/B} = BP_A / BP_B holds by construction.
PremiumMap multiparallel_premiums(const MultiParallelCorpus& corpus, const LanguageTag& reference);

// Characters-instead-of-bytes analog: total column code points over total
// reference code points (per-language length ratios).
PremiumMap multiparallel_length_ratios(const MultiParallelCorpus& corpus,
                                       const LanguageTag& reference);

// Pearson's r over the premium values of the languages present in both
// maps. Requires at least 3 shared languages.
double cross_dataset_correlation(const PremiumMap& premiums_x, const PremiumMap& premiums_y);

// CSV with header `language,byte_premium`, canonical tags, rows sorted by
// tag, values at full precision. `comments` render as leading `# ` lines.
std::string premium_csv(const PremiumMap& premiums,
                        const std::vector<std::pair<std::string, std::string>>& comments = {});
void write_premium_csv(const PremiumMap& premiums, const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& comments = {});
PremiumMap read_premium_csv(const std::filesystem::path& path,
                            std::map<std::string, std::string>* comments_out = nullptr);

// Observation list CSV: `lang_a,lang_b,premium,n_segments`.
void write_observations_csv(const std::vector<PairwiseObservation>& observations,
                            const std::filesystem::path& path, bool append = false);
std::vector<PairwiseObservation> read_observations_csv(const std::filesystem::path& path);

}  // namespace bp
