#include "quperman/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <regex>
#include <sstream>

#include "json_util.hpp"
#include "quperman/error.hpp"

namespace quperman {

using detail::Json;

namespace {

constexpr std::string_view kSchema = "bench.v1";

bool has_control(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x20 || c == 0x7f; });
}

void validate_entry(const BenchmarkEntry& e) {
  if (e.projectId.empty() || has_control(e.projectId)) {
    throw InputError("project id must be non-empty and free of control characters");
  }
  if (!std::isfinite(e.score) || e.score < kMinScore || e.score > kMaxScore) {
    throw InputError("score for '" + e.projectId + "' must lie in [1, 10]");
  }
  validate_tags(e.tags);
  static const std::regex kIso(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
  if (!std::regex_match(e.recordedAt, kIso)) {
    throw InputError("recordedAt for '" + e.projectId + "' must be UTC ISO-8601 (YYYY-MM-DDThh:mm:ssZ)");
  }
}

bool matches(const Tags& tags, const TagFilter& filter) {
  for (const auto& [k, v] : filter) {
    const auto it = tags.find(k);
    if (it == tags.end() || it->second != v) return false;
  }
  return true;
}

std::pair<std::string, std::string> split_pair(std::string_view item) {
  const auto eq = item.find('=');
  if (eq == std::string_view::npos) throw InputError("tag '" + std::string(item) + "' must have the form key=value");
  return {std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))};
}

Json entry_json(const BenchmarkEntry& e) {
  Json j;
  j["projectId"] = e.projectId;
  j["score"] = e.score;
  Json tags = Json::object();
  for (const auto& [k, v] : e.tags) tags[k] = v;
  j["tags"] = tags;
  j["recordedAt"] = e.recordedAt;
  return j;
}

Json filter_json(const TagFilter& f) {
  Json j = Json::object();
  for (const auto& [k, v] : f) j[k] = v;
  return j;
}

}  // namespace

void validate_tags(const Tags& tags) {
  static const std::regex kKey(R"([A-Za-z][A-Za-z0-9_.\-]*)");
  for (const auto& [k, v] : tags) {
    if (!std::regex_match(k, kKey)) throw InputError("malformed tag key '" + k + "'");
    if (v.empty() || has_control(v)) throw InputError("malformed value for tag '" + k + "'");
  }
}

Tags parse_tag_list(std::span<const std::string> items) {
  Tags out;
  for (const auto& item : items) {
    auto [k, v] = split_pair(item);
    out[std::move(k)] = std::move(v);
  }
  validate_tags(out);
  return out;
}

TagFilter parse_tag_query(std::string_view query) {
  TagFilter out;
  while (!query.empty()) {
    const auto amp = query.find('&');
    const auto item = query.substr(0, amp);
    query = amp == std::string_view::npos ? std::string_view{} : query.substr(amp + 1);
    if (item.empty()) continue;
    auto [k, v] = split_pair(item);
    out[std::move(k)] = std::move(v);
  }
  validate_tags(out);
  return out;
}

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const BenchmarkEntry& BenchmarkStore::upsert(BenchmarkEntry entry) {
  validate_entry(entry);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry.projectId,
                             [](const BenchmarkEntry& e, const std::string& id) { return e.projectId < id; });
  if (it != entries_.end() && it->projectId == entry.projectId) {
    *it = std::move(entry);
    return *it;
  }
  return *entries_.insert(it, std::move(entry));
}

const BenchmarkEntry* BenchmarkStore::find(std::string_view projectId) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), projectId,
                             [](const BenchmarkEntry& e, std::string_view id) { return e.projectId < id; });
  return it != entries_.end() && it->projectId == projectId ? &*it : nullptr;
}

std::vector<double> BenchmarkStore::scores(const TagFilter& filter) const {
  std::vector<double> out;
  for (const auto& e : entries_) {
    if (matches(e.tags, filter)) out.push_back(e.score);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const BenchmarkEntry& ingest_entry(BenchmarkStore& store, double score, std::string projectId, Tags tags,
                                   std::optional<std::string> recordedAt) {
  BenchmarkEntry e;
  e.projectId = std::move(projectId);
  e.score = score;
  e.tags = std::move(tags);
  e.recordedAt = recordedAt ? std::move(*recordedAt) : utc_now_iso8601();
  return store.upsert(std::move(e));
}

const BenchmarkEntry& ingest_entry(BenchmarkStore& store, const ProjectHealth& health, std::string projectId,
                                   Tags tags, std::optional<std::string> recordedAt) {
  return ingest_entry(store, health.score, std::move(projectId), std::move(tags), std::move(recordedAt));
}

double nearest_rank(std::span<const double> ascending, int percent) {
  if (ascending.empty()) throw EmptyDistributionError("no scores to rank");
  if (percent < 1 || percent > 100) throw ParameterError("percentile must lie in [1, 100]");
  const std::size_t n = ascending.size();
  const std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;  // ceil(p n / 100)
  return ascending[std::max<std::size_t>(rank, 1) - 1];
}

BenchmarkDistribution distribution_of(std::vector<double> scores, const TagFilter& filter) {
  if (scores.empty()) throw EmptyDistributionError("no benchmark entries match the filter");
  std::sort(scores.begin(), scores.end());
  BenchmarkDistribution d;
  d.filter = filter;
  d.n = scores.size();
  d.p10 = nearest_rank(scores, 10);
  d.p50 = nearest_rank(scores, 50);
  d.p90 = nearest_rank(scores, 90);
  return d;
}

BenchmarkDistribution distribution(const BenchmarkStore& store, const TagFilter& filter) {
  return distribution_of(store.scores(filter), filter);
}

double percentile_of(double score, std::span<const double> scores) {
  if (scores.empty()) throw EmptyDistributionError("no scores to position against");
  const auto below = std::count_if(scores.begin(), scores.end(), [&](double s) { return s <= score; });
  return 100.0 * static_cast<double>(below) / static_cast<double>(scores.size());
}

std::string serialize_store(const BenchmarkStore& store) {
  std::string out = Json{{"schema", kSchema}}.dump() + "\n";
  for (const auto& e : store.entries()) out += entry_json(e).dump() + "\n";
  return out;
}

BenchmarkStore parse_store(std::string_view text) {
  BenchmarkStore store;
  bool header = false;
  int lineNo = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string what = "bench.v1 line " + std::to_string(lineNo);
    const auto j = detail::parse_json(line, what);
    if (!header) {
      detail::check_schema(j, kSchema, what);
      header = true;
      continue;
    }
    BenchmarkEntry e;
    e.projectId = detail::require_string(j, "projectId", what);
    e.score = detail::require_number(j, "score", what);
    const auto& tags = detail::require(j, "tags", what);
    if (!tags.is_object()) throw InputError(what + ": 'tags' must be an object");
    for (const auto& [k, v] : tags.items()) {
      if (!v.is_string()) throw InputError(what + ": tag values must be strings");
      e.tags[k] = v.get<std::string>();
    }
    e.recordedAt = detail::require_string(j, "recordedAt", what);
    if (store.find(e.projectId) != nullptr) throw InputError(what + ": duplicate project id '" + e.projectId + "'");
    try {
      store.upsert(std::move(e));
    } catch (const InputError& err) {
      throw InputError(what + ": " + err.what());
    }
  }
  return store;
}

void save_store(const BenchmarkStore& store, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write benchmark store '" + path.string() + "'");
    out << serialize_store(store);
    if (!out.flush()) throw InputError("cannot write benchmark store '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot replace benchmark store '" + path.string() + "': " + ec.message());
}

BenchmarkStore load_store(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read benchmark store '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_store(ss.str());
}

std::string to_distribution_document(const BenchmarkDistribution& dist) {
  Json j;
  j["schema"] = "distribution.v1";
  j["filter"] = filter_json(dist.filter);
  j["n"] = dist.n;
  j["p10"] = dist.p10;
  j["p50"] = dist.p50;
  j["p90"] = dist.p90;
  j["method"] = dist.method;
  return detail::dump_document(j);
}

std::string to_entry_document(const BenchmarkEntry& entry) {
  Json j;
  j["schema"] = "entry.v1";
  j["entry"] = entry_json(entry);
  return detail::dump_document(j);
}

}  // namespace quperman
