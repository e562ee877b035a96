#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace bp::utf8 {

// Number of Unicode code points in valid UTF-8 (counts non-continuation
// bytes). Behaviour on invalid input is unspecified; validate first.
std::size_t count_code_points(std::string_view text);

// Byte offset of the first invalid sequence, or nullopt if the input is
// well-formed UTF-8 (rejects overlongs, surrogates, and > U+10FFFF).
std::optional<std::size_t> find_invalid(std::string_view text);

bool is_valid(std::string_view text);

// Decodes the code point whose leading byte is at `i` and advances `i`
// past it. Assumes valid UTF-8.
char32_t decode_unchecked(std::string_view text, std::size_t& i);

// Appends the UTF-8 encoding of `cp` to `out`.
void encode(char32_t cp, std::string& out);

// Routes count/validate through the scalar reference kernels even when a
// vector unit is available. For tests and benchmarks.
void set_force_scalar(bool force);

namespace detail {

// Scalar reference kernels; the dispatched entry points above must agree
// with these bit-for-bit on every input.
std::size_t count_code_points_scalar(const char* data, std::size_t size);
std::optional<std::size_t> find_invalid_scalar(const char* data, std::size_t size);

#if defined(__x86_64__)
bool cpu_has_avx2();
std::size_t count_code_points_avx2(const char* data, std::size_t size);
std::optional<std::size_t> find_invalid_avx2(const char* data, std::size_t size);
#endif
#if defined(__aarch64__)
std::size_t count_code_points_neon(const char* data, std::size_t size);
std::optional<std::size_t> find_invalid_neon(const char* data, std::size_t size);
#endif

}  // namespace detail

}  // namespace bp::utf8
