#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "quperman/frontend.hpp"
#include "quperman/metrics.hpp"

namespace quperman {

struct DiscoveryOptions {
  std::vector<std::string> include;
  std::vector<std::string> exclude;
};

/// The glob sets used when a config does not name any.
DiscoveryOptions default_discovery_options();

/// A discovered file and its bytes. `unit.tokenCount` stays zero until the
/// content has been tokenized.
struct LoadedSource {
  SourceUnit unit;
  std::string content;
  const Frontend* frontend = nullptr;
};

/// Walks `root`, keeps files matching include and not exclude, reads them
/// and assigns a frontend. Sorted by path. Unreadable or binary files are
/// skipped with a warning; an unreadable root throws InputError.
std::vector<LoadedSource> load_sources(const std::filesystem::path& root,
                                       const DiscoveryOptions& options,
                                       const FrontendRegistry& registry,
                                       std::vector<std::string>& warnings);

std::vector<SourceUnit> discover_sources(const std::filesystem::path& root,
                                         const DiscoveryOptions& options,
                                         const FrontendRegistry& registry,
                                         std::vector<std::string>& warnings);

std::vector<SourceUnit> discover_sources(const std::filesystem::path& root,
                                         const DiscoveryOptions& options);

}  // namespace quperman
