#include "quperman/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "quperman/error.hpp"

namespace quperman {

ExtractResult extract_functions(const Frontend& frontend, const TokenizedSource& source, NestedFunctions nested) {
  ExtractResult result = frontend.find_functions(source);
  auto& spans = result.spans;
  std::sort(spans.begin(), spans.end(), [](const FunctionSpan& a, const FunctionSpan& b) {
    if (a.tokenBegin != b.tokenBegin) return a.tokenBegin < b.tokenBegin;
    return a.tokenEnd > b.tokenEnd;
  });
  // Parent = innermost earlier span whose token range contains this one.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    while (!open.empty() && spans[open.back()].tokenEnd < spans[i].tokenEnd) open.pop_back();
    // A span that merely overlaps (heuristic frontends) is not nested.
    while (!open.empty() && !(spans[open.back()].tokenBegin <= spans[i].tokenBegin &&
                              spans[i].tokenEnd <= spans[open.back()].tokenEnd)) {
      open.pop_back();
    }
    spans[i].parent = open.empty() ? std::nullopt : std::optional<std::size_t>(open.back());
    open.push_back(i);
  }
  if (nested == NestedFunctions::Merged) {
    std::vector<FunctionSpan> kept;
    for (auto& s : spans) {
      if (!s.parent) kept.push_back(std::move(s));
    }
    spans = std::move(kept);
  }
  // Final order by start line; parents keep preceding their children.
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (spans[a].startLine != spans[b].startLine) return spans[a].startLine < spans[b].startLine;
    return spans[a].endLine > spans[b].endLine;
  });
  std::vector<std::size_t> rank(spans.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  std::vector<FunctionSpan> sorted;
  sorted.reserve(spans.size());
  for (auto idx : order) {
    FunctionSpan s = std::move(spans[idx]);
    if (s.parent) s.parent = rank[*s.parent];
    sorted.push_back(std::move(s));
  }
  result.spans = std::move(sorted);
  return result;
}

namespace {

const std::vector<std::string> kCFamilyExtensions = {".c",  ".h",   ".cc",  ".cpp", ".cxx", ".hpp", ".hh", ".hxx",
                                                     ".ipp", ".java", ".js", ".mjs", ".cjs", ".ts",  ".cs", ".kt"};
const std::vector<std::string> kPythonExtensions = {".py", ".pyw"};

struct GenericGroup {
  CommentStyle style;
  std::vector<std::string> extensions;
};
const std::vector<GenericGroup> kGenericGroups = {
    {CommentStyle::Hash, {".rb", ".sh", ".bash", ".pl", ".r"}},
    {CommentStyle::Slash, {".go", ".rs", ".swift", ".scala"}},
    {CommentStyle::DashDash, {".lua", ".sql"}},
    {CommentStyle::HashAndSlash, {".php"}},
};

}  // namespace

FrontendRegistry::FrontendRegistry() {
  owned_.push_back(make_c_family_frontend());
  cFamily_ = owned_.back().get();
  owned_.push_back(make_python_frontend());
  python_ = owned_.back().get();
  owned_.push_back(make_generic_frontend(CommentStyle::HashAndSlash));
  fallback_ = owned_.back().get();

  for (const auto& e : kCFamilyExtensions) byExtension_.push_back({e, cFamily_});
  for (const auto& e : kPythonExtensions) byExtension_.push_back({e, python_});
  for (const auto& g : kGenericGroups) {
    owned_.push_back(make_generic_frontend(g.style));
    for (const auto& e : g.extensions) byExtension_.push_back({e, owned_.back().get()});
  }
}

const std::vector<std::string>& FrontendRegistry::known_ids() {
  static const std::vector<std::string> ids = {"c-family", "python", "generic"};
  return ids;
}

const Frontend* FrontendRegistry::find(std::string_view id) const {
  if (id == "c-family") return cFamily_;
  if (id == "python") return python_;
  if (id == "generic") return fallback_;
  return nullptr;
}

void FrontendRegistry::add_override(const std::string& pattern, const std::string& id) {
  const Frontend* f = find(id);
  if (f == nullptr) throw ConfigError("unknown frontend '" + id + "' for pattern '" + pattern + "'");
  overrides_.emplace_back(Glob(pattern), f);
}

const Frontend& FrontendRegistry::select(std::string_view relativePath) const {
  for (const auto& [glob, frontend] : overrides_) {
    if (glob.matches(relativePath)) return *frontend;
  }
  const auto dot = relativePath.rfind('.');
  const auto slash = relativePath.rfind('/');
  if (dot != std::string_view::npos && (slash == std::string_view::npos || dot > slash)) {
    std::string ext(relativePath.substr(dot));
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const auto& e : byExtension_) {
      if (e.extension == ext) return *e.frontend;
    }
  }
  return *fallback_;
}

}  // namespace quperman
