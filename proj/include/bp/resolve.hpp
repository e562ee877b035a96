#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bp/fitting.hpp"
#include "bp/regression.hpp"
#include "bp/tags.hpp"
#include "bp/validation.hpp"

namespace bp {

// Monolingual text for a language outside the table, plus whatever is known
// about it. Script type alone is enough (regression III); script and family
// unlock richer variants.
struct MonolingualInput {
  std::filesystem::path path;
  ScriptType script_type = ScriptType::alphabet;
  std::optional<std::string> script;  // defaults to the tag's script code
  std::optional<std::string> family;
};

// Parallel text pairing a language outside the table with a language in it.
struct ParallelInput {
  std::filesystem::path novel_path;  // the unknown language's side
  std::filesystem::path known_path;  // the known language's side
  LanguageTag known_language;
};

// Auxiliary inputs for the fallback paths, per side of the queried pair.
struct ResolveAux {
  std::optional<ParallelInput> parallel_a;
  std::optional<ParallelInput> parallel_b;
  std::optional<MonolingualInput> monolingual_a;
  std::optional<MonolingualInput> monolingual_b;

  // Regression path: a fitted model, or ground-truth records to fit one
  // per query. Records also supply the reference bytes-per-char; with a
  // bare model, pass reference_bpc explicitly.
  std::optional<RegressionModel> model;
  std::vector<GroundTruthRecord> records;
  std::optional<double> reference_bpc;

  bool normalize_nfc = false;
  std::size_t script_count_threshold = 5;
  double ridge = 1e-8;
  ClipPolicy clip{};
};

enum class ResolveMethod {
  table,
  parallel,
  regression_I,
  regression_II,
  regression_III,
};

std::string_view to_string(ResolveMethod method);

struct Resolution {
  double premium = 0.0;  // BP_{A/B}
  ResolveMethod method = ResolveMethod::table;  // least direct method used
  std::vector<std::string> warnings;
};

// The decision cascade for a language pair: languages in the table resolve
// by the ratio identity; a language outside it resolves from parallel text
// to a known language when given, else from monolingual text through the
// length-ratio regressions. Method precedence is strict: the table wins
// over parallel text, which wins over regression, whenever applicable.
Resolution resolve_pair(const LanguageTag& lang_a, const LanguageTag& lang_b,
                        const PremiumTable& table, const ResolveAux& aux = {});

// Bytes in `to` that encode content comparable to `size_bytes` of `from`:
// round(size_bytes / BP_{from/to}).
std::uint64_t convert_size(std::uint64_t size_bytes, const LanguageTag& from,
                           const LanguageTag& to, const PremiumTable& table,
                           const ResolveAux& aux = {});

// Appendix-style proportion rescaling: divide each language's proportion by
// its byte premium and renormalize to sum to 1. Input must sum to 1 within
// 1e-9. Invariant under rebasing of the table (the common factor cancels).
std::map<LanguageTag, double> rescale_proportions(const std::map<LanguageTag, double>& proportions,
                                                  const PremiumTable& table);

}  // namespace bp
