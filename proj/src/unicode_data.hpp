#pragma once

#include <cstddef>
#include <cstdint>

namespace bp::unicode_data {

// Full canonical (NFD) decomposition of `cp`: kDecompPool[offset, offset+len).
struct DecompEntry {
  char32_t cp;
  std::uint32_t offset;
  std::uint8_t len;
};

struct CccEntry {
  char32_t cp;
  std::uint8_t ccc;
};

// key = (uint64(first) << 32) | second, sorted ascending.
struct CompEntry {
  std::uint64_t key;
  char32_t composed;
};

extern const DecompEntry kDecomp[];
extern const std::size_t kDecompCount;
extern const char32_t kDecompPool[];
extern const CccEntry kCcc[];
extern const std::size_t kCccCount;
extern const CompEntry kComp[];
extern const std::size_t kCompCount;

}  // namespace bp::unicode_data
