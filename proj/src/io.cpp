#include "unizero/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "unizero/error.hpp"

namespace unizero {

namespace {

using Kind = ParseError::Kind;

bool is_sep(char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n'; }

}  // namespace

IntMatrix parse_matrix_line(std::string_view text, std::size_t line_no, const ParseOptions& opts) {
  std::vector<std::int64_t> vals;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    const std::string_view tok = text.substr(i, j - i);
    std::int64_t v = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(Kind::kMalformedToken, line_no, "malformed token '" + std::string(tok) + "'");
    if (v == 0 && opts.require_nonzero) throw ParseError(Kind::kZeroEntry, line_no, "zero entry in zerofree context");
    vals.push_back(v);
    i = j;
  }
  int n = 0;
  if (opts.n) {
    n = *opts.n;
    if (vals.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw ParseError(Kind::kDimensionMismatch, line_no,
                       "expected " + std::to_string(n * n) + " entries, got " + std::to_string(vals.size()));
  } else {
    n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
    if (vals.empty() || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != vals.size())
      throw ParseError(Kind::kNonSquare, line_no, std::to_string(vals.size()) + " entries is not a perfect square");
  }
  try {
    return IntMatrix(n, vals);
  } catch (const Error& e) {
    throw ParseError(Kind::kFormat, line_no, e.what());
  }
}

std::string format_matrix_line(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.flat().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(m.flat()[i]);
  }
  return out;
}

std::string format_matrix_commas(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.flat().size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(m.flat()[i]);
  }
  return out;
}

MatrixRecord MatrixRecord::from_class(const CanonicalClass& c) {
  return {c.rep.dim(), c.stats.alpha, c.stats.beta, c.stats.positive, {c.rep.flat().begin(), c.rep.flat().end()}};
}

IntMatrix MatrixRecord::matrix() const { return IntMatrix(n, entries); }

std::string to_jsonl(const MatrixRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["positive"] = r.positive;
  j["entries"] = r.entries;
  return j.dump();
}

MatrixRecord parse_jsonl_record(std::string_view line, std::size_t line_no) {
  try {
    const auto j = nlohmann::json::parse(line);
    MatrixRecord r;
    r.n = j.at("n").get<int>();
    r.alpha = j.at("alpha").get<std::int64_t>();
    r.beta = j.at("beta").get<std::int64_t>();
    r.positive = j.at("positive").get<bool>();
    r.entries = j.at("entries").get<std::vector<std::int64_t>>();
    if (r.n < 1 || r.entries.size() != static_cast<std::size_t>(r.n) * static_cast<std::size_t>(r.n))
      throw ParseError(Kind::kNonSquare, line_no, "entries length is not n^2");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(Kind::kFormat, line_no, e.what());
  }
}

std::string enumeration_header(const EnumerationResult& r) {
  std::ostringstream os;
  const ClassQuery& q = r.query;
  os << "# n=" << q.n << " alpha=" << q.alpha << " beta=";
  if (q.beta_min == q.beta_max) {
    os << q.beta_min;
  } else {
    os << q.beta_min << ".." << q.beta_max;
  }
  os << " count=" << r.total_count << " positive=" << r.positive_count;
  return os.str();
}

std::string scan_csv(const std::vector<SequenceRow>& rows) {
  std::ostringstream os;
  os << "beta,count,positive\n";
  for (const auto& r : rows) os << r.beta << ',' << r.total << ',' << r.positive << '\n';
  return os.str();
}

std::string scan_jsonl(const std::vector<SequenceRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["beta"] = r.beta;
    j["count"] = r.total;
    j["positive"] = r.positive;
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace unizero
