#pragma once

#include <string>
#include <string_view>

#include "bp/corpus.hpp"
#include "bp/estimation.hpp"

namespace bp {

// RFC 1952 gzip at maximum compression (level 9), with the header mtime and
// OS fields pinned so identical input always produces identical bytes.
std::string gzip_compress(std::string_view data);

// Gzip round-trip check helper; inflates a gzip stream.
std::string gzip_decompress(std::string_view data);

// Byte premiums over compressed text: each language's column is joined into
// one document ('\n' between rows), compressed, and sized against the
// reference's compressed document. Whole-column compression, not per row:
// per-row gzip would mostly measure header overhead, and the question being
// answered is about corpus-level storage.
PremiumMap compressed_premiums(const MultiParallelCorpus& corpus, const LanguageTag& reference);

}  // namespace bp
