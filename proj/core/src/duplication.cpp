#include "quperman/duplication.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>

#include "quperman/error.hpp"

namespace quperman {

std::vector<std::string> normalized_tokens(const TokenizedSource& source) {
  std::vector<std::string> out;
  out.reserve(source.tokens.size());
  for (const auto& t : source.tokens) out.push_back(t.kind == TokenKind::Identifier ? std::string("$id") : t.text);
  return out;
}

std::vector<double> duplication_ratio(const std::vector<std::vector<std::string>>& streams, std::size_t windowSize) {
  if (windowSize < kMinWindowSize) {
    throw ParameterError("duplication window must be at least " + std::to_string(kMinWindowSize) + " tokens");
  }

  std::unordered_map<std::string, std::uint32_t> intern;
  std::vector<std::vector<std::uint32_t>> ids(streams.size());
  for (std::size_t s = 0; s < streams.size(); ++s) {
    ids[s].reserve(streams[s].size());
    for (const auto& tok : streams[s]) {
      auto [it, inserted] = intern.try_emplace(tok, static_cast<std::uint32_t>(intern.size()));
      ids[s].push_back(it->second);
    }
  }

  struct Window {
    std::size_t stream;
    std::size_t offset;
  };
  // Rolling polynomial fingerprint; equal fingerprints are confirmed by
  // comparing the windows, so collisions cannot create false matches.
  constexpr std::uint64_t kBase = 1'000'003;
  std::uint64_t top = 1;
  for (std::size_t i = 1; i < windowSize; ++i) top *= kBase;

  std::unordered_map<std::uint64_t, std::vector<Window>> buckets;
  for (std::size_t s = 0; s < ids.size(); ++s) {
    const auto& v = ids[s];
    if (v.size() < windowSize) continue;
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < windowSize; ++i) h = h * kBase + v[i] + 1;
    buckets[h].push_back({s, 0});
    for (std::size_t i = 1; i + windowSize <= v.size(); ++i) {
      h = (h - (v[i - 1] + 1) * top) * kBase + v[i + windowSize - 1] + 1;
      buckets[h].push_back({s, i});
    }
  }

  auto window = [&](const Window& w) {
    return std::span<const std::uint32_t>(ids[w.stream]).subspan(w.offset, windowSize);
  };

  // Difference arrays marking covered token ranges.
  std::vector<std::vector<int>> cover(ids.size());
  for (std::size_t s = 0; s < ids.size(); ++s) cover[s].assign(ids[s].size() + 1, 0);
  auto mark = [&](const Window& w) {
    cover[w.stream][w.offset] += 1;
    cover[w.stream][w.offset + windowSize] -= 1;
  };

  for (auto& [hash, members] : buckets) {
    if (members.size() < 2) continue;
    // Partition the bucket into classes of identical windows.
    std::vector<std::vector<Window>> classes;
    for (const auto& w : members) {
      const auto content = window(w);
      bool placed = false;
      for (auto& cls : classes) {
        const auto rep = window(cls.front());
        if (std::equal(rep.begin(), rep.end(), content.begin())) {
          cls.push_back(w);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({w});
    }
    for (const auto& cls : classes) {
      if (cls.size() < 2) continue;
      for (const auto& w : cls) mark(w);
    }
  }

  std::vector<double> ratios(ids.size(), 0.0);
  for (std::size_t s = 0; s < ids.size(); ++s) {
    const auto n = ids[s].size();
    if (n < windowSize) continue;
    std::size_t covered = 0;
    int running = 0;
    for (std::size_t i = 0; i < n; ++i) {
      running += cover[s][i];
      if (running > 0) ++covered;
    }
    ratios[s] = static_cast<double>(covered) / static_cast<double>(n);
  }
  return ratios;
}

}  // namespace quperman
