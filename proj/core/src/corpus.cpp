#include "semrel/corpus.hpp"

#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "semrel/error.hpp"
#include "semrel/text.hpp"

namespace semrel {

std::optional<int> StrokeTable::find(char32_t c) const {
  const auto it = counts_.find(c);
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

void StrokeTable::insert(char32_t c, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "stroke count must be >= 1");
  counts_.insert_or_assign(c, count);
}

ParsedStrokeTable parse_stroke_table(std::istream& source) {
  ParsedStrokeTable result;
  std::string line;
  std::size_t line_no = 0;
  while (text::read_line(source, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    bool ok = fields.size() == 2;
    std::optional<std::u32string> chars;
    std::optional<long long> count;
    if (ok) {
      chars = text::decode_utf8(fields[0]);
      count = text::parse_int(fields[1]);
      ok = chars && chars->size() == 1 && count && *count >= 1 && *count <= 1000;
    }
    if (!ok) {
      result.malformed_lines.push_back(line_no);
      continue;
    }
    result.table.insert((*chars)[0], static_cast<int>(*count));
  }
  if (result.table.size() == 0) throw Error(ErrorCode::EmptyTable, "no usable stroke-table lines");
  return result;
}

namespace {

std::u32string decode_word(std::string_view word) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  auto chars = text::decode_utf8(word);
  if (!chars) throw Error(ErrorCode::InvalidArgument, "word is not valid UTF-8");
  return std::move(*chars);
}

}  // namespace

int word_stroke_count(std::string_view word, const StrokeTable& table) {
  int total = 0;
  for (char32_t c : decode_word(word)) {
    const auto n = table.find(c);
    if (!n) {
      throw Error(ErrorCode::UnknownCharacter,
                  "'" + text::encode_utf8(c) + "' in '" + std::string(word) + "'");
    }
    total += *n;
  }
  return total;
}

std::optional<int> find_word_stroke_count(std::string_view word, const StrokeTable& table) {
  if (word.empty()) return std::nullopt;
  const auto chars = text::decode_utf8(word);
  if (!chars) return std::nullopt;
  int total = 0;
  for (char32_t c : *chars) {
    const auto n = table.find(c);
    if (!n) return std::nullopt;
    total += *n;
  }
  return total;
}

double log_transform(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::NonPositive, fmt::format("log of non-positive value {}", x));
  }
  return std::log(x);
}

namespace {

struct ColumnIndex {
  std::size_t surface, sentence_id, position, experiment_id;
  std::optional<std::size_t> word_freq, first, gaze, total, surprisal;
};

ColumnIndex resolve_columns(const std::vector<std::string_view>& header, const ColumnMap& map) {
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  auto require = [&](const std::string& name) {
    const auto i = find(name);
    if (!i) throw Error(ErrorCode::MissingColumn, "corpus header lacks '" + name + "'");
    return *i;
  };
  ColumnIndex idx{};
  idx.surface = require(map.surface);
  idx.sentence_id = require(map.sentence_id);
  idx.position = require(map.position);
  idx.experiment_id = require(map.experiment_id);
  idx.word_freq = find(map.word_freq);
  idx.first = find(map.first_duration);
  idx.gaze = find(map.gaze_duration);
  idx.total = find(map.total_duration);
  idx.surprisal = find(map.surprisal);
  return idx;
}

enum class Domain { Positive, NonNegative };

std::optional<double> optional_number(const std::vector<std::string_view>& row,
                                      std::optional<std::size_t> col, Domain domain,
                                      std::size_t row_no, std::string_view what) {
  if (!col || row[*col].empty()) return std::nullopt;
  const auto v = text::parse_double(row[*col]);
  const bool in_domain = v && (domain == Domain::Positive ? *v > 0.0 : *v >= 0.0);
  if (!in_domain) {
    throw Error(ErrorCode::BadNumeric,
                fmt::format("row {}: bad {} value '{}'", row_no, what, row[*col]));
  }
  return v;
}

}  // namespace

Corpus parse_corpus(std::istream& source, const ColumnMap& columns) {
  std::string line;
  if (!text::read_line(source, line)) {
    throw Error(ErrorCode::MissingColumn, "corpus file has no header row");
  }
  const std::string header_line = line;
  const auto header = text::split(header_line, '\t');
  const auto idx = resolve_columns(header, columns);

  Corpus corpus;
  std::unordered_map<std::string, std::size_t> sentence_slot;
  std::size_t row_no = 1;
  while (text::read_line(source, line)) {
    ++row_no;
    if (line.empty()) continue;
    const auto row = text::split(line, '\t');
    if (row.size() != header.size()) {
      throw Error(ErrorCode::BadNumeric,
                  fmt::format("row {}: expected {} fields, found {}", row_no, header.size(),
                              row.size()));
    }
    Token tok;
    tok.surface = std::string(row[idx.surface]);
    tok.sentence_id = std::string(row[idx.sentence_id]);
    tok.experiment_id = std::string(row[idx.experiment_id]);
    if (tok.surface.empty() || tok.sentence_id.empty()) {
      throw Error(ErrorCode::BadNumeric,
                  fmt::format("row {}: empty surface or sentence_id", row_no));
    }
    const auto pos = text::parse_int(row[idx.position]);
    if (!pos || *pos < 1) {
      throw Error(ErrorCode::BadNumeric,
                  fmt::format("row {}: bad position '{}'", row_no, row[idx.position]));
    }
    tok.position = static_cast<int>(*pos);
    tok.word_freq = optional_number(row, idx.word_freq, Domain::Positive, row_no, "word_freq");
    tok.first_duration = optional_number(row, idx.first, Domain::Positive, row_no, "first_dur");
    tok.gaze_duration = optional_number(row, idx.gaze, Domain::Positive, row_no, "gaze_dur");
    tok.total_duration = optional_number(row, idx.total, Domain::Positive, row_no, "total_dur");
    tok.surprisal = optional_number(row, idx.surprisal, Domain::NonNegative, row_no, "surprisal");

    auto [it, inserted] = sentence_slot.try_emplace(tok.sentence_id, corpus.sentences.size());
    if (inserted) corpus.sentences.push_back(Sentence{tok.sentence_id, {}});
    auto& sentence = corpus.sentences[it->second];
    if (tok.position != static_cast<int>(sentence.tokens.size()) + 1) {
      throw Error(ErrorCode::NonConsecutivePositions,
                  fmt::format("sentence '{}': position {} follows {}", sentence.id, tok.position,
                              sentence.tokens.size()));
    }
    sentence.tokens.push_back(std::move(tok));
    ++corpus.token_count;
  }
  return corpus;
}

namespace {

std::string format_optional(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

}  // namespace

void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << "surface\tsentence_id\tposition\texperiment_id\tword_freq\tfirst_dur\tgaze_dur\t"
         "total_dur\tsurprisal\n";
  for (const auto& sentence : corpus.sentences) {
    for (const auto& t : sentence.tokens) {
      out << t.surface << '\t' << t.sentence_id << '\t' << t.position << '\t' << t.experiment_id
          << '\t' << format_optional(t.word_freq) << '\t' << format_optional(t.first_duration)
          << '\t' << format_optional(t.gaze_duration) << '\t'
          << format_optional(t.total_duration) << '\t' << format_optional(t.surprisal) << '\n';
    }
  }
}

}  // namespace semrel
