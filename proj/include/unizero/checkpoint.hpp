#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unizero/enumeration.hpp"

namespace unizero {

/// Results of one finished work unit.
struct UnitRecord {
  struct Bucket {
    std::int64_t beta = 0;
    std::uint64_t count = 0;
    std::uint64_t positive = 0;
    std::vector<std::int64_t> first;

    friend bool operator==(const Bucket&, const Bucket&) = default;
  };
  struct Class {
    std::int64_t beta = 0;
    bool positive = false;
    std::vector<std::int64_t> entries;

    friend bool operator==(const Class&, const Class&) = default;
  };

  std::size_t id = 0;
  std::uint64_t nodes = 0;
  std::vector<Bucket> buckets;  // ascending beta
  std::vector<Class> classes;   // emission order

  friend bool operator==(const UnitRecord&, const UnitRecord&) = default;
};

/// Serialized frontier of an interrupted enumeration. Text container:
///
///   unizero-checkpoint <version>
///   query n=<n> alpha=<a> beta_min=<b> beta_max=<b> positive_only=<0|1>
///         count_only=<0|1> mode=<zerofree|unrestricted>      (one line)
///   units <total> split_nodes <k>
///   unit <id> nodes <k> buckets <b> classes <c>
///   bucket <beta> <count> <positive> <entries...>
///   class <beta> <0|1> <entries...>
///   digest <16 hex digits>
///
/// The digest is FNV-1a 64 over every byte before the digest line.
struct SearchCheckpoint {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  ClassQuery query;
  std::size_t unit_count = 0;
  std::uint64_t split_nodes = 0;
  std::vector<UnitRecord> completed;  // ascending id
};

/// Same query modulo run-time knobs (threads, limits, long_run).
bool same_search(const ClassQuery& a, const ClassQuery& b);

std::string serialize_checkpoint(const SearchCheckpoint& cp);

/// Throws Error on a malformed container, version mismatch or bad digest.
SearchCheckpoint parse_checkpoint(std::string_view text);

/// Writes via a temporary file and rename.
void write_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp);
SearchCheckpoint read_checkpoint(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace unizero
