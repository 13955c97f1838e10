#include "semrel/embedding_store.hpp"

#include <cmath>
#include <string>

#include "semrel/error.hpp"
#include "semrel/text.hpp"

namespace semrel {

class EmbeddingTableBuilder {
 public:
  explicit EmbeddingTableBuilder(std::size_t dim) { table_.dim_ = dim; }

  // Returns false when the token is already present.
  bool add(std::string_view token, std::span<const double> values) {
    if (table_.index_.find(token) != table_.index_.end()) return false;
    table_.index_.emplace(std::string(token), table_.tokens_.size());
    table_.tokens_.emplace_back(token);
    table_.data_.insert(table_.data_.end(), values.begin(), values.end());
    return true;
  }

  EmbeddingTable finish() && { return std::move(table_); }

 private:
  EmbeddingTable table_;
};

std::optional<VectorView> EmbeddingTable::lookup(std::string_view token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return VectorView(data_.data() + it->second * dim_, dim_);
}

EmbeddingTable EmbeddingTable::from_entries(
    std::size_t dim, const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  EmbeddingTableBuilder builder(dim);
  for (const auto& [token, values] : entries) {
    if (values.size() != dim) {
      throw Error(ErrorCode::DimMismatch, "vector for '" + token + "' has wrong length");
    }
    builder.add(token, values);
  }
  return std::move(builder).finish();
}

bool looks_like_header(std::string_view line) {
  const auto fields = text::split(line, ' ');
  if (fields.size() != 2) return false;
  for (auto f : fields) {
    if (f.empty()) return false;
    for (char c : f) {
      if (c < '0' || c > '9') return false;
    }
  }
  return true;
}

namespace {

// Splits "<token> <f1> ... <fn>" and parses the floats. Tolerates a
// trailing space, which the reference word2vec writer emits.
bool parse_row(std::string_view line, std::string_view& token, std::vector<double>& values) {
  while (!line.empty() && line.back() == ' ') line.remove_suffix(1);
  auto fields = text::split(line, ' ');
  if (fields.size() < 2 || fields[0].empty()) return false;
  token = fields[0];
  values.clear();
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto v = text::parse_double(fields[i]);
    if (!v) return false;
    values.push_back(*v);
  }
  return true;
}

}  // namespace

ParsedEmbeddings parse_embeddings(std::istream& source, bool expect_header) {
  LoadDiagnostics diag;
  std::string line;
  std::size_t dim = 0;

  if (expect_header) {
    if (!text::read_line(source, line) || !looks_like_header(line)) {
      throw Error(ErrorCode::DimensionUndeterminable, "expected '<count> <dim>' header line");
    }
    const auto fields = text::split(line, ' ');
    diag.declared_count = static_cast<std::size_t>(*text::parse_int(fields[0]));
    dim = static_cast<std::size_t>(*text::parse_int(fields[1]));
    if (dim == 0) throw Error(ErrorCode::DimensionUndeterminable, "header declares dimension 0");
  }

  std::optional<EmbeddingTableBuilder> builder;
  if (dim > 0) builder.emplace(dim);

  std::string_view token;
  std::vector<double> values;
  bool first_row = true;
  while (text::read_line(source, line)) {
    if (line.empty()) continue;
    ++diag.lines_read;
    const bool ok = parse_row(line, token, values);
    if (first_row && !builder) {
      if (!ok) {
        throw Error(ErrorCode::DimensionUndeterminable,
                    "no header and the first row is malformed");
      }
      dim = values.size();
      builder.emplace(dim);
    }
    first_row = false;
    if (!ok || values.size() != dim) {
      ++diag.malformed_lines;
      continue;
    }
    if (!builder->add(token, values)) ++diag.duplicate_tokens;
  }

  if (!builder) throw Error(ErrorCode::EmptyInput, "no embedding rows");
  auto table = std::move(*builder).finish();
  if (table.size() == 0) throw Error(ErrorCode::EmptyInput, "no well-formed embedding rows");
  return {std::move(table), diag};
}

double dot(VectorView u, VectorView v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "vector lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double cosine(VectorView u, VectorView v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "vector lengths differ");
  const double nu = std::sqrt(dot(u, u));
  const double nv = std::sqrt(dot(v, v));
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  return dot(u, v) / (nu * nv);
}

double pearson(VectorView u, VectorView v) {
  if (u.size() != v.size() || u.size() < 2) {
    throw Error(ErrorCode::DimMismatch, "pearson needs two vectors of equal length >= 2");
  }
  const auto n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    suv += du * dv;
    suu += du * du;
    svv += dv * dv;
  }
  if (suu == 0.0 || svv == 0.0) throw Error(ErrorCode::ZeroVariance, "constant vector");
  return suv / std::sqrt(suu * svv);
}

}  // namespace semrel
