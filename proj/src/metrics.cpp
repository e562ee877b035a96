#include "bp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "bp/errors.hpp"
#include "bp/utf8.hpp"

namespace bp {

std::string_view to_string(ScriptType type) {
  switch (type) {
    case ScriptType::alphabet: return "alphabet";
    case ScriptType::abjad: return "abjad";
    case ScriptType::abugida: return "abugida";
    case ScriptType::logography: return "logography";
  }
  return "alphabet";
}

ScriptType script_type_from_string(std::string_view name) {
  if (name == "alphabet") return ScriptType::alphabet;
  if (name == "abjad") return ScriptType::abjad;
  if (name == "abugida") return ScriptType::abugida;
  if (name == "logography") return ScriptType::logography;
  throw ArgumentError("unknown script type '" + std::string(name) +
                      "' (expected alphabet, abjad, abugida, or logography)");
}

std::size_t byte_len(std::string_view text) { return text.size(); }

std::size_t char_len(std::string_view text) { return utf8::count_code_points(text); }

namespace {

bool is_unicode_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
    case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
    case 0x200A: case 0x2028: case 0x2029: case 0x202F: case 0x205F:
    case 0x3000:
      return true;
    default:
      return false;
  }
}

// Code-point histogram: dense ASCII counters plus a spill map.
class CodePointCounts {
public:
  void add(char32_t cp) {
    if (cp < 128) {
      ++ascii_[cp];
    } else {
      ++other_[cp];
    }
  }

  // Counts in ascending code-point order, for deterministic summation.
  std::vector<std::uint64_t> sorted_counts() const {
    std::vector<std::pair<char32_t, std::uint64_t>> spill(other_.begin(), other_.end());
    std::sort(spill.begin(), spill.end());
    std::vector<std::uint64_t> out;
    out.reserve(128 + spill.size());
    for (const auto count : ascii_) {
      if (count > 0) out.push_back(count);
    }
    for (const auto& [cp, count] : spill) out.push_back(count);
    return out;
  }

private:
  std::array<std::uint64_t, 128> ascii_{};
  std::unordered_map<char32_t, std::uint64_t> other_;
};

}  // namespace

double char_entropy(std::span<const std::string> texts, const EntropyOptions& options) {
  CodePointCounts histogram;
  std::uint64_t total = 0;
  for (const auto& text : texts) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char32_t cp = utf8::decode_unchecked(text, i);
      if (options.skip_whitespace && is_unicode_whitespace(cp)) continue;
      histogram.add(cp);
      ++total;
    }
  }
  if (total == 0) {
    throw InsufficientDataError("cannot compute character entropy: no characters in input");
  }

  const double n = static_cast<double>(total);
  double entropy = 0.0;
  for (const std::uint64_t count : histogram.sorted_counts()) {
    const double p = static_cast<double>(count) / n;
    entropy += p * std::log2(n / static_cast<double>(count));
  }
  return entropy;
}

LanguageProfile profile(const LanguageTag& tag, std::span<const std::string> texts,
                        ScriptType script_type, std::optional<std::string> family,
                        const EntropyOptions& options) {
  LanguageProfile result{tag, 0, 0, 0.0, 0.0, script_type, std::move(family)};
  for (const auto& text : texts) {
    result.total_bytes += byte_len(text);
    result.total_chars += char_len(text);
  }
  result.char_entropy = char_entropy(texts, options);  // throws if all empty
  result.bytes_per_char =
      static_cast<double>(result.total_bytes) / static_cast<double>(result.total_chars);
  return result;
}

}  // namespace bp
