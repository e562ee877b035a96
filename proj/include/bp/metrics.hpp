#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "bp/tags.hpp"

namespace bp {

// Four-way writing-system taxonomy used as a regression predictor.
enum class ScriptType {
  alphabet,    // one symbol per segment, consonant or vowel
  abjad,       // consonant symbols, vowels often unwritten
  abugida,     // consonant-vowel units with secondary vowel marks
  logography,  // symbols carry semantic as well as phonetic information
};

std::string_view to_string(ScriptType type);
ScriptType script_type_from_string(std::string_view name);

// Monolingual statistics for one language. "Character" means Unicode code
// point throughout, not grapheme cluster: code points are deterministic and
// locale-independent, while grapheme segmentation varies with the Unicode
// version. This matters for abugida text, where combining vowel marks count
// individually.
struct LanguageProfile {
  LanguageTag tag;
  std::uint64_t total_bytes = 0;
  std::uint64_t total_chars = 0;
  double bytes_per_char = 0.0;
  double char_entropy = 0.0;  // bits
  ScriptType script_type = ScriptType::alphabet;
  std::optional<std::string> family;
};

// UTF-8 encoded length in bytes.
std::size_t byte_len(std::string_view text);

// Unicode code point count. Assumes valid UTF-8.
std::size_t char_len(std::string_view text);

struct EntropyOptions {
  // Drop whitespace code points from the distribution. The default keeps
  // everything; there is no principled exclusion list, so include-all is
  // the no-judgment baseline. The option exists so either convention can
  // be replicated.
  bool skip_whitespace = false;
};

// Shannon entropy in bits of the unigram code-point distribution pooled
// across all texts. Empty strings contribute nothing.
double char_entropy(std::span<const std::string> texts, const EntropyOptions& options = {});

LanguageProfile profile(const LanguageTag& tag, std::span<const std::string> texts,
                        ScriptType script_type, std::optional<std::string> family = std::nullopt,
                        const EntropyOptions& options = {});

}  // namespace bp
