#include "bp/estimation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bp/errors.hpp"
#include "bp/format.hpp"
#include "bp/metrics.hpp"

namespace bp {

PairwiseResult pairwise_premium(const Bitext& bitext) {
  double ratio_sum = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;
  for (const auto& [text_a, text_b] : bitext.segments) {
    const std::size_t bytes_a = byte_len(text_a);
    const std::size_t bytes_b = byte_len(text_b);
    if (bytes_a == 0 || bytes_b == 0) {
      ++skipped;
      continue;
    }
    ratio_sum += static_cast<double>(bytes_a) / static_cast<double>(bytes_b);
    ++used;
  }
  if (used == 0) {
    throw InsufficientDataError("no usable segments for " + bitext.lang_a.canonical() + "/" +
                                bitext.lang_b.canonical() + ": all " + std::to_string(skipped) +
                                " segments have an empty side");
  }
  PairwiseResult result;
  result.observation = {bitext.lang_a, bitext.lang_b, ratio_sum / static_cast<double>(used), used};
  result.segments_skipped = skipped;
  result.high_skip_ratio = skipped * 10 > (used + skipped);
  return result;
}

namespace {

PremiumMap column_total_ratios(const MultiParallelCorpus& corpus, const LanguageTag& reference,
                               std::size_t (*measure)(std::string_view)) {
  const auto ref_column = corpus.column_of(reference);
  if (!ref_column) {
    throw UnknownLanguageError(reference.canonical(),
                               "reference language '" + reference.canonical() +
                                   "' is not a column of the corpus");
  }
  std::vector<std::uint64_t> totals(corpus.languages.size(), 0);
  for (const auto& row : corpus.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      totals[i] += measure(row[i]);
    }
  }
  if (totals[*ref_column] == 0) {
    throw DegenerateCorpusError("reference language '" + reference.canonical() +
                                "' has zero total size in the corpus");
  }
  const double ref_total = static_cast<double>(totals[*ref_column]);
  PremiumMap premiums;
  for (std::size_t i = 0; i < corpus.languages.size(); ++i) {
    premiums[corpus.languages[i]] =
        (i == *ref_column) ? 1.0 : static_cast<double>(totals[i]) / ref_total;
  }
  return premiums;
}

}  // namespace

PremiumMap multiparallel_premiums(const MultiParallelCorpus& corpus, const LanguageTag& reference) {
  return column_total_ratios(corpus, reference, byte_len);
}

PremiumMap multiparallel_length_ratios(const MultiParallelCorpus& corpus,
                                       const LanguageTag& reference) {
  return column_total_ratios(corpus, reference, char_len);
}

double cross_dataset_correlation(const PremiumMap& premiums_x, const PremiumMap& premiums_y) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [tag, value] : premiums_x) {
    const auto it = premiums_y.find(tag);
    if (it != premiums_y.end()) {
      x.push_back(value);
      y.push_back(it->second);
    }
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw InsufficientOverlapError("need at least 3 shared languages to correlate, have " +
                                   std::to_string(n));
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw InsufficientDataError("correlation undefined: a premium set is constant");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::string premium_csv(const PremiumMap& premiums,
                        const std::vector<std::pair<std::string, std::string>>& comments) {
  std::string out;
  for (const auto& [key, value] : comments) {
    out += "# " + key + ": " + value + "\n";
  }
  out += "language,byte_premium\n";
  for (const auto& [tag, premium] : premiums) {
    out += tag.canonical() + "," + format_double(premium) + "\n";
  }
  return out;
}

void write_premium_csv(const PremiumMap& premiums, const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << premium_csv(premiums, comments);
  if (!out) throw DataError("write failure on file: " + path.string());
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    cells.push_back(line.substr(start, end - start));
    if (end == line.size()) break;
    start = end + 1;
  }
  return cells;
}

}  // namespace

PremiumMap read_premium_csv(const std::filesystem::path& path,
                            std::map<std::string, std::string>* comments_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  PremiumMap premiums;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comments_out) {
        std::string body = line.substr(1);
        const std::size_t colon = body.find(':');
        if (colon != std::string::npos) {
          std::string key = body.substr(0, colon);
          std::string value = body.substr(colon + 1);
          const auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
          };
          trim(key);
          trim(value);
          (*comments_out)[key] = value;
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != "language,byte_premium") {
        throw FormatError(line_no, path.string() + ": expected header 'language,byte_premium', got '" +
                                       line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 2) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": expected 2 columns, got " + std::to_string(cells.size()));
    }
    const LanguageTag tag = LanguageTag::parse(cells[0]);
    const double premium = parse_double(cells[1]);
    if (!(premium > 0.0)) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": premium must be positive, got " + cells[1]);
    }
    if (!premiums.emplace(tag, premium).second) {
      throw DuplicateLanguageError("duplicate language '" + tag.canonical() + "' in " +
                                   path.string());
    }
  }
  if (!header_seen) throw FormatError(1, path.string() + ": missing header row");
  if (premiums.empty()) throw EmptyCorpusError("no premium rows in " + path.string());
  return premiums;
}

void write_observations_csv(const std::vector<PairwiseObservation>& observations,
                            const std::filesystem::path& path, bool append) {
  const bool exists = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
  std::ofstream out(path, append ? (std::ios::binary | std::ios::app) : std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  if (!append || !exists) {
    out << "lang_a,lang_b,premium,n_segments\n";
  }
  for (const auto& obs : observations) {
    out << obs.lang_a.canonical() << ',' << obs.lang_b.canonical() << ','
        << format_double(obs.premium) << ',' << obs.n_segments << '\n';
  }
  if (!out) throw DataError("write failure on file: " + path.string());
}

std::vector<PairwiseObservation> read_observations_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::vector<PairwiseObservation> observations;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "lang_a,lang_b,premium,n_segments") {
        throw FormatError(line_no, path.string() +
                                       ": expected header 'lang_a,lang_b,premium,n_segments'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 4) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": expected 4 columns, got " + std::to_string(cells.size()));
    }
    PairwiseObservation obs;
    obs.lang_a = LanguageTag::parse(cells[0]);
    obs.lang_b = LanguageTag::parse(cells[1]);
    obs.premium = parse_double(cells[2]);
    obs.n_segments = static_cast<std::size_t>(parse_double(cells[3]));
    if (!(obs.premium > 0.0)) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": premium must be positive");
    }
    if (obs.n_segments == 0) {
      throw FormatError(line_no, path.string() + " line " + std::to_string(line_no) +
                                     ": n_segments must be at least 1");
    }
    observations.push_back(std::move(obs));
  }
  if (observations.empty()) {
    throw EmptyCorpusError("no observations in " + path.string());
  }
  return observations;
}

}  // namespace bp
