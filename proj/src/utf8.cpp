#include "bp/utf8.hpp"

#include <atomic>
#include <bit>

#if defined(__x86_64__)
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace bp::utf8 {

namespace {

std::atomic<bool> g_force_scalar{false};

inline unsigned char at(const char* d, std::size_t i) {
  return static_cast<unsigned char>(d[i]);
}

// Validates one multibyte sequence whose leading byte is at i; advances i
// past it on success. Rejects overlongs, surrogates, and > U+10FFFF.
bool advance_multibyte(const char* d, std::size_t n, std::size_t& i) {
  const unsigned char b0 = at(d, i);
  if (b0 < 0xC2) return false;  // lone continuation byte, or overlong C0/C1
  if (b0 <= 0xDF) {
    if (i + 1 >= n || (at(d, i + 1) & 0xC0) != 0x80) return false;
    i += 2;
    return true;
  }
  if (b0 <= 0xEF) {
    if (i + 2 >= n) return false;
    const unsigned char b1 = at(d, i + 1);
    const unsigned char lo = (b0 == 0xE0) ? 0xA0 : 0x80;  // overlong guard
    const unsigned char hi = (b0 == 0xED) ? 0x9F : 0xBF;  // surrogate guard
    if (b1 < lo || b1 > hi || (at(d, i + 2) & 0xC0) != 0x80) return false;
    i += 3;
    return true;
  }
  if (b0 <= 0xF4) {
    if (i + 3 >= n) return false;
    const unsigned char b1 = at(d, i + 1);
    const unsigned char lo = (b0 == 0xF0) ? 0x90 : 0x80;
    const unsigned char hi = (b0 == 0xF4) ? 0x8F : 0xBF;  // cap at U+10FFFF
    if (b1 < lo || b1 > hi || (at(d, i + 2) & 0xC0) != 0x80 || (at(d, i + 3) & 0xC0) != 0x80)
      return false;
    i += 4;
    return true;
  }
  return false;  // F5..FF never valid
}

}  // namespace

namespace detail {

std::size_t count_code_points_scalar(const char* d, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((at(d, i) & 0xC0) != 0x80) ++count;
  }
  return count;
}

std::optional<std::size_t> find_invalid_scalar(const char* d, std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    if (at(d, i) < 0x80) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (!advance_multibyte(d, n, i)) return start;
  }
  return std::nullopt;
}

#if defined(__x86_64__)

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) std::size_t count_code_points_avx2(const char* d, std::size_t n) {
  // Continuation bytes are 0x80..0xBF, i.e. signed values below -64.
  const __m256i boundary = _mm256_set1_epi8(-64);
  std::size_t continuations = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
    const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpgt_epi8(boundary, v)));
    continuations += std::popcount(mask);
  }
  for (; i < n; ++i) {
    if ((at(d, i) & 0xC0) == 0x80) ++continuations;
  }
  return n - continuations;
}

__attribute__((target("avx2"))) std::optional<std::size_t> find_invalid_avx2(const char* d,
                                                                             std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    if (at(d, i) < 0x80) {
      ++i;
      // Vector-skip runs of ASCII; stop at the first high byte.
      while (i + 32 <= n) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
        const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(v));
        if (mask != 0) {
          i += std::countr_zero(mask);
          break;
        }
        i += 32;
      }
      if (i + 32 > n) {
        while (i < n && at(d, i) < 0x80) ++i;
      }
      continue;
    }
    const std::size_t start = i;
    if (!advance_multibyte(d, n, i)) return start;
  }
  return std::nullopt;
}

#endif  // __x86_64__

#if defined(__aarch64__)

std::size_t count_code_points_neon(const char* d, std::size_t n) {
  const int8x16_t boundary = vdupq_n_s8(-64);
  std::size_t continuations = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const int8x16_t v = vreinterpretq_s8_u8(vld1q_u8(reinterpret_cast<const std::uint8_t*>(d + i)));
    const uint8x16_t is_cont = vcltq_s8(v, boundary);
    continuations += vaddvq_u8(vshrq_n_u8(is_cont, 7));
  }
  for (; i < n; ++i) {
    if ((at(d, i) & 0xC0) == 0x80) ++continuations;
  }
  return n - continuations;
}

std::optional<std::size_t> find_invalid_neon(const char* d, std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    if (at(d, i) < 0x80) {
      ++i;
      while (i + 16 <= n) {
        const uint8x16_t v = vld1q_u8(reinterpret_cast<const std::uint8_t*>(d + i));
        if (vmaxvq_u8(v) >= 0x80) break;
        i += 16;
      }
      while (i < n && at(d, i) < 0x80) ++i;
      continue;
    }
    const std::size_t start = i;
    if (!advance_multibyte(d, n, i)) return start;
  }
  return std::nullopt;
}

#endif  // __aarch64__

}  // namespace detail

namespace {

using CountFn = std::size_t (*)(const char*, std::size_t);
using ValidateFn = std::optional<std::size_t> (*)(const char*, std::size_t);

CountFn resolve_count() {
#if defined(__x86_64__)
  if (detail::cpu_has_avx2()) return detail::count_code_points_avx2;
#elif defined(__aarch64__)
  return detail::count_code_points_neon;
#endif
  return detail::count_code_points_scalar;
}

ValidateFn resolve_validate() {
#if defined(__x86_64__)
  if (detail::cpu_has_avx2()) return detail::find_invalid_avx2;
#elif defined(__aarch64__)
  return detail::find_invalid_neon;
#endif
  return detail::find_invalid_scalar;
}

}  // namespace

void set_force_scalar(bool force) { g_force_scalar.store(force, std::memory_order_relaxed); }

std::size_t count_code_points(std::string_view text) {
  if (g_force_scalar.load(std::memory_order_relaxed)) {
    return detail::count_code_points_scalar(text.data(), text.size());
  }
  static const CountFn fn = resolve_count();
  return fn(text.data(), text.size());
}

std::optional<std::size_t> find_invalid(std::string_view text) {
  if (g_force_scalar.load(std::memory_order_relaxed)) {
    return detail::find_invalid_scalar(text.data(), text.size());
  }
  static const ValidateFn fn = resolve_validate();
  return fn(text.data(), text.size());
}

bool is_valid(std::string_view text) { return !find_invalid(text).has_value(); }

char32_t decode_unchecked(std::string_view text, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  if (b0 < 0xE0) {
    const char32_t cp = ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(text[i + 1]) & 0x3Fu);
    i += 2;
    return cp;
  }
  if (b0 < 0xF0) {
    const char32_t cp = ((b0 & 0x0Fu) << 12) |
                        ((static_cast<unsigned char>(text[i + 1]) & 0x3Fu) << 6) |
                        (static_cast<unsigned char>(text[i + 2]) & 0x3Fu);
    i += 3;
    return cp;
  }
  const char32_t cp = ((b0 & 0x07u) << 18) |
                      ((static_cast<unsigned char>(text[i + 1]) & 0x3Fu) << 12) |
                      ((static_cast<unsigned char>(text[i + 2]) & 0x3Fu) << 6) |
                      (static_cast<unsigned char>(text[i + 3]) & 0x3Fu);
  i += 4;
  return cp;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace bp::utf8
