#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semrel {

// ---------------------------------------------------------------------------
// Stroke counts
// ---------------------------------------------------------------------------

/// Character -> pen-stroke count. Every stored count is >= 1.
class StrokeTable {
 public:
  std::optional<int> find(char32_t c) const;
  std::size_t size() const noexcept { return counts_.size(); }

  /// Throws InvalidArgument for counts < 1.
  void insert(char32_t c, int count);

 private:
  std::unordered_map<char32_t, int> counts_;
};

struct ParsedStrokeTable {
  StrokeTable table;
  std::vector<std::size_t> malformed_lines;  // 1-based line numbers
};

/// Reads "<char>\t<count>" lines. Lines with more than one character, a
/// non-integer or a count < 1 are skipped and reported. Throws EmptyTable
/// when no line is usable.
ParsedStrokeTable parse_stroke_table(std::istream& source);

/// Sum of per-character stroke counts. Throws UnknownCharacter naming the
/// first character missing from the table, InvalidArgument for an empty
/// word or invalid UTF-8.
int word_stroke_count(std::string_view word, const StrokeTable& table);

/// Non-throwing variant: nullopt when any character is unknown.
std::optional<int> find_word_stroke_count(std::string_view word, const StrokeTable& table);

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct Token {
  std::string surface;
  std::string sentence_id;
  int position = 0;  // 1-based within the sentence
  std::string experiment_id;
  std::optional<double> word_freq;
  std::optional<double> first_duration;  // ms
  std::optional<double> gaze_duration;   // ms
  std::optional<double> total_duration;  // ms
  std::optional<double> surprisal;       // bits
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::size_t token_count = 0;
};

/// Header names for each Token field. Defaults match the corpus TSV layout.
struct ColumnMap {
  std::string surface = "surface";
  std::string sentence_id = "sentence_id";
  std::string position = "position";
  std::string experiment_id = "experiment_id";
  std::string word_freq = "word_freq";
  std::string first_duration = "first_dur";
  std::string gaze_duration = "gaze_dur";
  std::string total_duration = "total_dur";
  std::string surprisal = "surprisal";
};

/// Parses a tab-separated corpus with a header row. Rows are grouped by
/// sentence_id in order of first appearance; within a sentence the
/// positions must read 1, 2, ..., n in file order. Empty optional fields
/// are missing values.
///
/// Errors: MissingColumn (a required header is absent), BadNumeric (row
/// number in the message; also non-positive durations/frequency and
/// negative surprisal), NonConsecutivePositions (sentence id in message).
Corpus parse_corpus(std::istream& source, const ColumnMap& columns = {});

/// Writes the corpus back in the default TSV layout.
void write_corpus(std::ostream& out, const Corpus& corpus);

/// Natural logarithm; throws NonPositive for x <= 0 or non-finite x.
double log_transform(double x);

}  // namespace semrel
