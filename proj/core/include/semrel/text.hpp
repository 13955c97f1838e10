#pragma once

// Small text helpers shared by the file parsers.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semrel::text {

/// Decodes UTF-8 into Unicode scalar values. Returns nullopt on any
/// malformed, overlong or surrogate sequence.
std::optional<std::u32string> decode_utf8(std::string_view s);

std::string encode_utf8(char32_t cp);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char delim);

/// Strips one trailing '\r' so CRLF files read like LF files.
std::string_view chomp(std::string_view s);

/// Reads the next line with the trailing '\r' removed.
bool read_line(std::istream& in, std::string& line);

/// Strict parse: the whole field must be a finite number.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

}  // namespace semrel::text

namespace semrel::text {

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// Splits one CSV line, honouring double-quoted fields. Returns nullopt for
/// an unterminated quote.
std::optional<std::vector<std::string>> split_csv(std::string_view line);

}  // namespace semrel::text
