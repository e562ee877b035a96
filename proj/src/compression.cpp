#include "bp/compression.hpp"

#include <zlib.h>

#include <cstring>
#include <vector>

#include "bp/errors.hpp"
#include "bp/metrics.hpp"

namespace bp {

namespace {

constexpr int kGzipWindowBits = 15 + 16;  // 32 KiB window, gzip wrapper
constexpr int kCompressionLevel = 9;
constexpr int kMemLevel = 8;

}  // namespace

std::string gzip_compress(std::string_view data) {
  z_stream stream;
  std::memset(&stream, 0, sizeof(stream));
  if (deflateInit2(&stream, kCompressionLevel, Z_DEFLATED, kGzipWindowBits, kMemLevel,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error("deflateInit2 failed");
  }

  // Pin the header: mtime 0, no name/comment/extra, fixed OS byte. Without
  // this the output bytes depend on the wall clock and platform.
  gz_header header;
  std::memset(&header, 0, sizeof(header));
  header.time = 0;
  header.os = 3;  // always "Unix", regardless of build platform
  if (deflateSetHeader(&stream, &header) != Z_OK) {
    deflateEnd(&stream);
    throw Error("deflateSetHeader failed");
  }

  std::string out;
  out.resize(deflateBound(&stream, static_cast<uLong>(data.size())) + 32);
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  stream.avail_in = static_cast<uInt>(data.size());
  stream.next_out = reinterpret_cast<Bytef*>(out.data());
  stream.avail_out = static_cast<uInt>(out.size());

  const int rc = deflate(&stream, Z_FINISH);
  if (rc != Z_STREAM_END) {
    deflateEnd(&stream);
    throw Error("deflate failed with code " + std::to_string(rc));
  }
  out.resize(stream.total_out);
  deflateEnd(&stream);
  return out;
}

std::string gzip_decompress(std::string_view data) {
  z_stream stream;
  std::memset(&stream, 0, sizeof(stream));
  if (inflateInit2(&stream, kGzipWindowBits) != Z_OK) {
    throw Error("inflateInit2 failed");
  }
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  stream.avail_in = static_cast<uInt>(data.size());

  std::string out;
  std::vector<char> buffer(1 << 16);
  int rc = Z_OK;
  do {
    stream.next_out = reinterpret_cast<Bytef*>(buffer.data());
    stream.avail_out = static_cast<uInt>(buffer.size());
    rc = inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&stream);
      throw DataError("inflate failed with code " + std::to_string(rc));
    }
    out.append(buffer.data(), buffer.size() - stream.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&stream);
  return out;
}

PremiumMap compressed_premiums(const MultiParallelCorpus& corpus, const LanguageTag& reference) {
  const auto ref_column = corpus.column_of(reference);
  if (!ref_column) {
    throw UnknownLanguageError(reference.canonical(),
                               "reference language '" + reference.canonical() +
                                   "' is not a column of the corpus");
  }

  // One concatenated document per language.
  std::vector<std::string> documents(corpus.languages.size());
  for (std::size_t r = 0; r < corpus.rows.size(); ++r) {
    for (std::size_t i = 0; i < corpus.rows[r].size(); ++i) {
      if (r > 0) documents[i].push_back('\n');
      documents[i] += corpus.rows[r][i];
    }
  }
  if (byte_len(documents[*ref_column]) == 0) {
    throw DegenerateCorpusError("reference language '" + reference.canonical() +
                                "' has zero total size in the corpus");
  }

  std::vector<std::size_t> compressed_sizes(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    compressed_sizes[i] = gzip_compress(documents[i]).size();
  }

  const double ref_size = static_cast<double>(compressed_sizes[*ref_column]);
  PremiumMap premiums;
  for (std::size_t i = 0; i < corpus.languages.size(); ++i) {
    premiums[corpus.languages[i]] =
        (i == *ref_column) ? 1.0 : static_cast<double>(compressed_sizes[i]) / ref_size;
  }
  return premiums;
}

}  // namespace bp
