#include "bp/normalize.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "bp/utf8.hpp"
#include "unicode_data.hpp"

namespace bp {

namespace {

using namespace unicode_data;

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

int combining_class(char32_t cp) {
  const auto* begin = kCcc;
  const auto* end = kCcc + kCccCount;
  const auto* it = std::lower_bound(begin, end, cp,
                                    [](const CccEntry& e, char32_t c) { return e.cp < c; });
  return (it != end && it->cp == cp) ? it->ccc : 0;
}

std::span<const char32_t> decomposition(char32_t cp) {
  const auto* begin = kDecomp;
  const auto* end = kDecomp + kDecompCount;
  const auto* it = std::lower_bound(begin, end, cp,
                                    [](const DecompEntry& e, char32_t c) { return e.cp < c; });
  if (it == end || it->cp != cp) return {};
  return {kDecompPool + it->offset, it->len};
}

char32_t compose_pair(char32_t a, char32_t b) {
  // Hangul LV and LVT composition is algorithmic.
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
      b < kHangulVBase + kHangulVCount) {
    return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
      (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
      b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  const auto* begin = kComp;
  const auto* end = kComp + kCompCount;
  const auto* it = std::lower_bound(begin, end, key,
                                    [](const CompEntry& e, std::uint64_t k) { return e.key < k; });
  return (it != end && it->key == key) ? it->composed : 0;
}

void decompose_into(char32_t cp, std::vector<char32_t>& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    const int index = static_cast<int>(cp - kHangulSBase);
    out.push_back(kHangulLBase + index / kHangulNCount);
    out.push_back(kHangulVBase + (index % kHangulNCount) / kHangulTCount);
    if (index % kHangulTCount != 0) out.push_back(kHangulTBase + index % kHangulTCount);
    return;
  }
  const auto seq = decomposition(cp);
  if (seq.empty()) {
    out.push_back(cp);
  } else {
    out.insert(out.end(), seq.begin(), seq.end());
  }
}

// Canonical ordering: stable sort of each nonzero-ccc run by combining class.
void canonical_order(std::vector<char32_t>& cps) {
  const std::size_t n = cps.size();
  for (std::size_t i = 1; i < n; ++i) {
    const int cc = combining_class(cps[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(cps[j - 1]) > cc) {
      std::swap(cps[j - 1], cps[j]);
      --j;
    }
  }
}

void compose(std::vector<char32_t>& cps) {
  if (cps.empty()) return;
  std::size_t starter = (combining_class(cps[0]) == 0) ? 0 : static_cast<std::size_t>(-1);
  int prev_cc = combining_class(cps[0]);
  std::size_t write = 1;
  for (std::size_t read = 1; read < cps.size(); ++read) {
    const char32_t c = cps[read];
    const int cc = combining_class(c);
    const bool blocked = starter == static_cast<std::size_t>(-1) ||
                         (write > starter + 1 && prev_cc >= cc);
    if (!blocked) {
      if (const char32_t composed = compose_pair(cps[starter], c)) {
        cps[starter] = composed;
        continue;  // c consumed; prev_cc unchanged
      }
    }
    if (cc == 0) starter = write;
    prev_cc = cc;
    cps[write++] = c;
  }
  cps.resize(write);
}

}  // namespace

std::string nfc(std::string_view text) {
  // ASCII needs no work; the common case for Latin-script corpora.
  bool ascii = true;
  for (const char c : text) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(text);

  std::vector<char32_t> cps;
  cps.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    decompose_into(utf8::decode_unchecked(text, i), cps);
  }
  canonical_order(cps);
  compose(cps);

  std::string out;
  out.reserve(text.size());
  for (const char32_t cp : cps) utf8::encode(cp, out);
  return out;
}

}  // namespace bp
