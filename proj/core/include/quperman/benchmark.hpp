#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/health.hpp"

namespace quperman {

using Tags = std::map<std::string, std::string, std::less<>>;
/// Conjunction of tag equalities; empty matches everything.
using TagFilter = Tags;

struct BenchmarkEntry {
  std::string projectId;
  double score = 0;
  Tags tags;  ///< conventional keys: language, domain, sizeClass
  std::string recordedAt;  ///< UTC, ISO-8601 "YYYY-MM-DDThh:mm:ssZ"

  bool operator==(const BenchmarkEntry&) const = default;
};

/// Throws InputError for a key outside [A-Za-z][A-Za-z0-9_.-]* or an empty
/// value or one with control characters.
void validate_tags(const Tags& tags);

/// Parses "key=value" items.
Tags parse_tag_list(std::span<const std::string> items);

/// Parses "key=value&key2=value2" (URL query form, already decoded).
TagFilter parse_tag_query(std::string_view query);

std::string utc_now_iso8601();

/// In-memory benchmark corpus. Project ids are unique; entries are kept
/// sorted by id.
class BenchmarkStore {
 public:
  /// Appends, or replaces the entry with the same id.
  const BenchmarkEntry& upsert(BenchmarkEntry entry);

  [[nodiscard]] const BenchmarkEntry* find(std::string_view projectId) const;
  [[nodiscard]] const std::vector<BenchmarkEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  /// Scores of entries matching `filter`, ascending.
  [[nodiscard]] std::vector<double> scores(const TagFilter& filter) const;

  bool operator==(const BenchmarkStore&) const = default;

 private:
  std::vector<BenchmarkEntry> entries_;
};

/// Validates and upserts a project's score. `recordedAt` defaults to now.
const BenchmarkEntry& ingest_entry(BenchmarkStore& store, double score, std::string projectId, Tags tags,
                                   std::optional<std::string> recordedAt = std::nullopt);
const BenchmarkEntry& ingest_entry(BenchmarkStore& store, const ProjectHealth& health, std::string projectId,
                                   Tags tags, std::optional<std::string> recordedAt = std::nullopt);

struct BenchmarkDistribution {
  TagFilter filter;
  std::size_t n = 0;
  double p10 = 0;  ///< Laggards
  double p50 = 0;
  double p90 = 0;  ///< Leaders
  std::string method = "nearest-rank";

  bool operator==(const BenchmarkDistribution&) const = default;
};

/// Value at 1-based rank ceil(p/100 * n) of an ascending array, p in [1,100].
double nearest_rank(std::span<const double> ascending, int percent);

/// Throws EmptyDistributionError when nothing matches.
BenchmarkDistribution distribution(const BenchmarkStore& store, const TagFilter& filter = {});
BenchmarkDistribution distribution_of(std::vector<double> scores, const TagFilter& filter = {});

/// 100 * |{s : s <= score}| / n.
double percentile_of(double score, std::span<const double> scores);

/// `bench.v1` is JSON Lines: a header record then one record per entry.
std::string serialize_store(const BenchmarkStore& store);
BenchmarkStore parse_store(std::string_view text);
void save_store(const BenchmarkStore& store, const std::filesystem::path& path);
/// A missing or empty file yields an empty store.
BenchmarkStore load_store(const std::filesystem::path& path);

std::string to_distribution_document(const BenchmarkDistribution& dist);
std::string to_entry_document(const BenchmarkEntry& entry);

}  // namespace quperman
