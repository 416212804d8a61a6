#include "unizero/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "unizero/error.hpp"

namespace unizero {

namespace {

void put_entries(std::ostringstream& os, const std::vector<std::int64_t>& e) {
  for (std::int64_t v : e) os << ' ' << v;
}

[[noreturn]] void bad(const std::string& what) { throw Error("checkpoint: " + what); }

std::vector<std::int64_t> read_entries(std::istringstream& is, std::size_t count) {
  std::vector<std::int64_t> e(count);
  for (auto& v : e)
    if (!(is >> v)) bad("truncated entry list");
  return e;
}

std::int64_t read_kv(std::istringstream& is, const std::string& key) {
  std::string tok;
  if (!(is >> tok) || tok.rfind(key + "=", 0) != 0) bad("expected " + key);
  try {
    return std::stoll(tok.substr(key.size() + 1));
  } catch (const std::exception&) {
    bad("bad value for " + key);
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool same_search(const ClassQuery& a, const ClassQuery& b) {
  return a.n == b.n && a.alpha == b.alpha && a.beta_min == b.beta_min && a.beta_max == b.beta_max &&
         a.positive_only == b.positive_only && a.count_only == b.count_only && a.mode == b.mode;
}

std::string serialize_checkpoint(const SearchCheckpoint& cp) {
  std::ostringstream os;
  const ClassQuery& q = cp.query;
  const std::size_t cells = static_cast<std::size_t>(q.n) * static_cast<std::size_t>(q.n);
  os << "unizero-checkpoint " << cp.format_version << '\n';
  os << "query n=" << q.n << " alpha=" << q.alpha << " beta_min=" << q.beta_min << " beta_max=" << q.beta_max
     << " positive_only=" << (q.positive_only ? 1 : 0) << " count_only=" << (q.count_only ? 1 : 0)
     << " mode=" << to_string(q.mode) << '\n';
  os << "units " << cp.unit_count << " split_nodes " << cp.split_nodes << '\n';
  for (const UnitRecord& u : cp.completed) {
    os << "unit " << u.id << " nodes " << u.nodes << " buckets " << u.buckets.size() << " classes "
       << u.classes.size() << '\n';
    for (const auto& b : u.buckets) {
      if (b.first.size() != cells) throw Error("checkpoint: bucket representative has wrong size");
      os << "bucket " << b.beta << ' ' << b.count << ' ' << b.positive;
      put_entries(os, b.first);
      os << '\n';
    }
    for (const auto& c : u.classes) {
      if (c.entries.size() != cells) throw Error("checkpoint: class has wrong size");
      os << "class " << c.beta << ' ' << (c.positive ? 1 : 0);
      put_entries(os, c.entries);
      os << '\n';
    }
  }
  std::string body = os.str();
  std::ostringstream tail;
  tail << "digest " << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(body) << '\n';
  return body + tail.str();
}

SearchCheckpoint parse_checkpoint(std::string_view text) {
  const std::size_t pos = text.rfind("digest ");
  if (pos == std::string_view::npos) bad("missing digest");
  if (pos != 0 && text[pos - 1] != '\n') bad("digest not on its own line");
  {
    std::istringstream ds(std::string(text.substr(pos + 7)));
    std::string hex;
    ds >> hex;
    std::uint64_t want = 0;
    try {
      want = std::stoull(hex, nullptr, 16);
    } catch (const std::exception&) {
      bad("unreadable digest");
    }
    if (want != fnv1a64(text.substr(0, pos))) bad("digest mismatch");
  }

  std::istringstream in(std::string(text.substr(0, pos)));
  std::string line;
  SearchCheckpoint cp;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) bad(std::string("missing ") + what);
    return std::istringstream(line);
  };

  {
    auto ls = next_line("header");
    std::string magic;
    ls >> magic >> cp.format_version;
    if (magic != "unizero-checkpoint") bad("bad magic");
    if (cp.format_version != SearchCheckpoint::kFormatVersion)
      bad("unsupported format version " + std::to_string(cp.format_version));
  }
  {
    auto ls = next_line("query");
    std::string tag;
    ls >> tag;
    if (tag != "query") bad("expected query line");
    ClassQuery& q = cp.query;
    q.n = static_cast<int>(read_kv(ls, "n"));
    q.alpha = static_cast<int>(read_kv(ls, "alpha"));
    q.beta_min = static_cast<int>(read_kv(ls, "beta_min"));
    q.beta_max = static_cast<int>(read_kv(ls, "beta_max"));
    q.positive_only = read_kv(ls, "positive_only") != 0;
    q.count_only = read_kv(ls, "count_only") != 0;
    std::string mode;
    ls >> mode;
    if (mode == "mode=zerofree") {
      q.mode = SearchMode::kZerofree;
    } else if (mode == "mode=unrestricted") {
      q.mode = SearchMode::kUnrestricted;
    } else {
      bad("bad mode");
    }
    if (q.n < 1 || q.n > kMaxDim) bad("dimension out of range");
  }
  {
    auto ls = next_line("units");
    std::string a, b;
    ls >> a >> cp.unit_count >> b >> cp.split_nodes;
    if (a != "units" || b != "split_nodes" || !ls) bad("bad units line");
  }
  const std::size_t cells = static_cast<std::size_t>(cp.query.n) * static_cast<std::size_t>(cp.query.n);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag, k1, k2, k3;
    UnitRecord u;
    std::size_t nb = 0, nc = 0;
    ls >> tag >> u.id >> k1 >> u.nodes >> k2 >> nb >> k3 >> nc;
    if (tag != "unit" || k1 != "nodes" || k2 != "buckets" || k3 != "classes" || !ls) bad("bad unit line");
    if (u.id >= cp.unit_count) bad("unit id out of range");
    if (!cp.completed.empty() && cp.completed.back().id >= u.id) bad("unit ids not ascending");
    for (std::size_t i = 0; i < nb; ++i) {
      auto bs = next_line("bucket");
      UnitRecord::Bucket b;
      bs >> tag >> b.beta >> b.count >> b.positive;
      if (tag != "bucket" || !bs) bad("bad bucket line");
      b.first = read_entries(bs, cells);
      u.buckets.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < nc; ++i) {
      auto cs = next_line("class");
      UnitRecord::Class c;
      int pos_flag = 0;
      cs >> tag >> c.beta >> pos_flag;
      if (tag != "class" || !cs) bad("bad class line");
      c.positive = pos_flag != 0;
      c.entries = read_entries(cs, cells);
      u.classes.push_back(std::move(c));
    }
    cp.completed.push_back(std::move(u));
  }
  return cp;
}

void write_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp) {
  const std::string text = serialize_checkpoint(cp);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SearchCheckpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace unizero
