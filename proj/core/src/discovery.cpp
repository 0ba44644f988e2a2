#include "quperman/discovery.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "quperman/error.hpp"
#include "quperman/glob.hpp"
#include "quperman/hash.hpp"

namespace quperman {

namespace fs = std::filesystem;

DiscoveryOptions default_discovery_options() {
  DiscoveryOptions o;
  for (const char* ext : {"c", "h", "cc", "cpp", "cxx", "hpp", "hh", "hxx", "ipp", "java", "js", "mjs", "cjs", "ts",
                          "cs", "kt", "py", "pyw", "rb", "go", "rs", "swift", "scala", "lua", "php", "sh"}) {
    o.include.push_back(std::string("**/*.") + ext);
  }
  o.exclude = {"**/.git/**", "**/node_modules/**", "**/vendor/**", "**/third_party/**"};
  return o;
}

namespace {

bool read_file(const fs::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return !in.bad();
}

}  // namespace

std::vector<LoadedSource> load_sources(const fs::path& root, const DiscoveryOptions& options,
                                       const FrontendRegistry& registry, std::vector<std::string>& warnings) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw InputError("root '" + root.string() + "' is not a readable directory");

  const GlobSet include(options.include);
  const GlobSet exclude(options.exclude);

  std::vector<fs::path> candidates;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw InputError("cannot read root '" + root.string() + "': " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      warnings.push_back("traversal error: " + ec.message());
      ec.clear();
      continue;
    }
    const auto status = it->symlink_status(ec);
    if (ec) continue;
    const std::string rel = fs::relative(it->path(), root, ec).generic_string();
    if (ec) continue;
    if (fs::is_directory(status)) {
      if (exclude.any_match(rel + "/")) it.disable_recursion_pending();
      continue;
    }
    if (!fs::is_regular_file(status)) continue;
    if (!include.any_match(rel) || exclude.any_match(rel)) continue;
    candidates.push_back(it->path());
  }

  std::vector<LoadedSource> out;
  out.reserve(candidates.size());
  for (const auto& p : candidates) {
    LoadedSource src;
    src.unit.path = fs::relative(p, root).generic_string();
    if (!read_file(p, src.content)) {
      warnings.push_back(src.unit.path + ": unreadable, skipped");
      continue;
    }
    if (src.content.find('\0') != std::string::npos) {
      warnings.push_back(src.unit.path + ": binary content, skipped");
      continue;
    }
    src.frontend = &registry.select(src.unit.path);
    src.unit.languageTag = std::string(src.frontend->id());
    src.unit.contentHash = sha256_hex(src.content);
    src.unit.lineCount = count_lines(src.content);
    out.push_back(std::move(src));
  }
  std::sort(out.begin(), out.end(), [](const LoadedSource& a, const LoadedSource& b) { return a.unit.path < b.unit.path; });
  return out;
}

std::vector<SourceUnit> discover_sources(const fs::path& root, const DiscoveryOptions& options,
                                         const FrontendRegistry& registry, std::vector<std::string>& warnings) {
  auto loaded = load_sources(root, options, registry, warnings);
  std::vector<SourceUnit> units;
  units.reserve(loaded.size());
  for (auto& src : loaded) {
    src.unit.tokenCount = src.frontend->tokenize(src.content).tokens.size();
    units.push_back(std::move(src.unit));
  }
  return units;
}

std::vector<SourceUnit> discover_sources(const fs::path& root, const DiscoveryOptions& options) {
  const FrontendRegistry registry;
  std::vector<std::string> warnings;
  return discover_sources(root, options, registry, warnings);
}

}  // namespace quperman
