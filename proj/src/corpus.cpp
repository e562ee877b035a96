#include "bp/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "bp/errors.hpp"
#include "bp/normalize.hpp"
#include "bp/utf8.hpp"

namespace bp {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw DataError("read failure on file: " + path.string());
  }
  return std::move(buffer).str();
}

std::string read_validated(const std::filesystem::path& path) {
  std::string content = read_file(path);
  if (const auto bad = utf8::find_invalid(content)) {
    throw DecodeError(*bad, "invalid UTF-8 in " + path.string() + " at byte offset " +
                                std::to_string(*bad));
  }
  return content;
}

// Splits on '\n'. A trailing newline terminates the final line rather than
// opening an empty one; interior empty lines are kept.
std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::optional<std::size_t> MultiParallelCorpus::column_of(const LanguageTag& tag) const {
  for (std::size_t i = 0; i < languages.size(); ++i) {
    if (languages[i] == tag) return i;
  }
  return std::nullopt;
}

Bitext load_bitext(const std::filesystem::path& path_a, const std::filesystem::path& path_b,
                   const LanguageTag& lang_a, const LanguageTag& lang_b,
                   std::optional<std::size_t> max_segments) {
  const std::vector<std::string> lines_a = split_lines(read_validated(path_a));
  const std::vector<std::string> lines_b = split_lines(read_validated(path_b));
  if (lines_a.empty()) throw EmptyCorpusError("empty corpus file: " + path_a.string());
  if (lines_b.empty()) throw EmptyCorpusError("empty corpus file: " + path_b.string());
  if (lines_a.size() != lines_b.size()) {
    throw AlignmentError(lines_a.size(), lines_b.size(),
                         "bitext line counts differ: " + path_a.string() + " has " +
                             std::to_string(lines_a.size()) + " lines, " + path_b.string() +
                             " has " + std::to_string(lines_b.size()));
  }

  std::size_t count = lines_a.size();
  if (max_segments) count = std::min(count, *max_segments);

  Bitext bitext{lang_a, lang_b, {}};
  bitext.segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bitext.segments.emplace_back(lines_a[i], lines_b[i]);
  }
  return bitext;
}

MultiParallelCorpus load_multiparallel(const std::filesystem::path& path) {
  const std::vector<std::string> lines = split_lines(read_validated(path));
  if (lines.empty()) throw EmptyCorpusError("empty corpus file: " + path.string());

  MultiParallelCorpus corpus;
  {
    std::size_t start = 0;
    const std::string& header = lines[0];
    std::set<LanguageTag> seen;
    while (start <= header.size()) {
      std::size_t end = header.find('\t', start);
      if (end == std::string::npos) end = header.size();
      const LanguageTag tag = LanguageTag::parse(header.substr(start, end - start));
      if (!seen.insert(tag).second) {
        throw DuplicateLanguageError("duplicate language '" + tag.canonical() +
                                     "' in header of " + path.string());
      }
      corpus.languages.push_back(tag);
      if (end == header.size()) break;
      start = end + 1;
    }
  }

  const std::size_t columns = corpus.languages.size();
  for (std::size_t row = 1; row < lines.size(); ++row) {
    std::vector<std::string> cells;
    cells.reserve(columns);
    const std::string& line = lines[row];
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find('\t', start);
      if (end == std::string::npos) end = line.size();
      cells.push_back(line.substr(start, end - start));
      if (end == line.size()) break;
      start = end + 1;
    }
    if (cells.size() != columns) {
      throw FormatError(row + 1, "row " + std::to_string(row + 1) + " of " + path.string() +
                                     " has " + std::to_string(cells.size()) + " columns, header has " +
                                     std::to_string(columns));
    }
    corpus.rows.push_back(std::move(cells));
  }
  if (corpus.rows.empty()) {
    throw EmptyCorpusError("no data rows in " + path.string());
  }
  return corpus;
}

std::string serialize_multiparallel(const MultiParallelCorpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.languages.size(); ++i) {
    if (i > 0) out.push_back('\t');
    out += corpus.languages[i].canonical();
  }
  out.push_back('\n');
  for (const auto& row : corpus.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.push_back('\t');
      out += row[i];
    }
    out.push_back('\n');
  }
  return out;
}

MultiParallelCorpus sample_lines(const MultiParallelCorpus& corpus, std::size_t n) {
  if (n == 0) throw ArgumentError("sample size must be at least 1");
  MultiParallelCorpus out;
  out.languages = corpus.languages;
  const std::size_t count = std::min(n, corpus.rows.size());
  out.rows.assign(corpus.rows.begin(), corpus.rows.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

Bitext nfc_normalized(const Bitext& bitext) {
  Bitext out{bitext.lang_a, bitext.lang_b, {}};
  out.segments.reserve(bitext.segments.size());
  for (const auto& [a, b] : bitext.segments) {
    out.segments.emplace_back(nfc(a), nfc(b));
  }
  return out;
}

MultiParallelCorpus nfc_normalized(const MultiParallelCorpus& corpus) {
  MultiParallelCorpus out;
  out.languages = corpus.languages;
  out.rows.reserve(corpus.rows.size());
  for (const auto& row : corpus.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& cell : row) cells.push_back(nfc(cell));
    out.rows.push_back(std::move(cells));
  }
  return out;
}

}  // namespace bp
