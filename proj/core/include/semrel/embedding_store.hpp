#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semrel {

using VectorView = std::span<const double>;

struct LoadDiagnostics {
  std::size_t lines_read = 0;  // non-blank data lines, header excluded
  std::size_t malformed_lines = 0;
  std::size_t duplicate_tokens = 0;
  std::optional<std::size_t> declared_count;
};

/// Read-only token -> vector table. Vectors live in one contiguous buffer,
/// so views returned by lookup() stay valid for the table's lifetime.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool contains(std::string_view token) const { return index_.find(token) != index_.end(); }

  /// Exact, case-sensitive match; no Unicode normalization.
  std::optional<VectorView> lookup(std::string_view token) const;

  /// Tokens in file order.
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  /// Builds a table directly; used by tests and synthetic-data generators.
  /// Duplicate keys keep the first vector.
  static EmbeddingTable from_entries(
      std::size_t dim, const std::vector<std::pair<std::string, std::vector<double>>>& entries);

 private:
  friend class EmbeddingTableBuilder;

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
};

struct ParsedEmbeddings {
  EmbeddingTable table;
  LoadDiagnostics diagnostics;
};

/// Parses the word2vec text format: optional "<count> <dim>" header, then
/// "<token> <f1> ... <fd>" rows. Rows with the wrong arity or unparsable
/// floats are skipped and counted. Throws EmptyInput when nothing usable
/// was read and DimensionUndeterminable when, without a header, the first
/// row carries no floats.
ParsedEmbeddings parse_embeddings(std::istream& source, bool expect_header);

/// True if the line looks like a word2vec header: exactly two unsigned integers.
bool looks_like_header(std::string_view line);

double dot(VectorView u, VectorView v);

/// u.v / (|u||v|). Throws DimMismatch or ZeroVector.
double cosine(VectorView u, VectorView v);

/// Pearson correlation of the coordinate sequences. Throws DimMismatch
/// (also for length < 2) or ZeroVariance.
double pearson(VectorView u, VectorView v);

}  // namespace semrel
