#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unizero/canonical.hpp"
#include "unizero/enumeration.hpp"
#include "unizero/int_matrix.hpp"

namespace unizero {

struct ParseOptions {
  std::optional<int> n;         // otherwise inferred as the integer square root
  bool require_nonzero = false;  // zerofree context
};

/// Parses n^2 integers separated by whitespace and/or commas. Throws
/// ParseError tagged with `line_no` for malformed tokens, non-square counts
/// and (when required) zero entries.
IntMatrix parse_matrix_line(std::string_view text, std::size_t line_no = 1, const ParseOptions& opts = {});

/// Space-separated row-major entries.
std::string format_matrix_line(const IntMatrix& m);

/// Comma-separated row-major entries.
std::string format_matrix_commas(const IntMatrix& m);

struct MatrixRecord {
  int n = 0;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  bool positive = false;
  std::vector<std::int64_t> entries;

  static MatrixRecord from_class(const CanonicalClass& c);
  IntMatrix matrix() const;

  friend bool operator==(const MatrixRecord&, const MatrixRecord&) = default;
};

std::string to_jsonl(const MatrixRecord& r);
/// Throws ParseError (kind kFormat) on invalid JSON or schema.
MatrixRecord parse_jsonl_record(std::string_view line, std::size_t line_no = 1);

/// "# n=.. alpha=.. beta=.. count=.. positive=.." (beta printed as lo..hi
/// for a range).
std::string enumeration_header(const EnumerationResult& r);

std::string scan_csv(const std::vector<SequenceRow>& rows);
std::string scan_jsonl(const std::vector<SequenceRow>& rows);

}  // namespace unizero
