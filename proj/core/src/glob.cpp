#include "quperman/glob.hpp"

#include "quperman/error.hpp"

namespace quperman {
namespace {

std::string to_regex(std::string_view glob) {
  std::string re;
  for (std::size_t i = 0; i < glob.size(); ++i) {
    const char c = glob[i];
    if (c == '*') {
      if (i + 1 < glob.size() && glob[i + 1] == '*') {
        ++i;
        if (i + 1 < glob.size() && glob[i + 1] == '/') {
          ++i;
          re += "(?:.*/)?";
        } else {
          re += ".*";
        }
      } else {
        re += "[^/]*";
      }
    } else if (c == '?') {
      re += "[^/]";
    } else if (c == '[') {
      const auto close = glob.find(']', i + 1);
      if (close == std::string_view::npos) throw ConfigError("unterminated '[' in glob '" + std::string(glob) + "'");
      std::string body(glob.substr(i + 1, close - i - 1));
      if (!body.empty() && body[0] == '!') body[0] = '^';
      for (std::size_t k = 0; k < body.size(); ++k) {
        if (body[k] == '\\' || (body[k] == '[' )) body.insert(k++, "\\");
      }
      re += "[" + body + "]";
      i = close;
    } else if (std::string_view("\\^$.|+(){}").find(c) != std::string_view::npos) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  return re;
}

}  // namespace

Glob::Glob(std::string pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw ConfigError("empty glob pattern");
  try {
    regex_ = std::regex(to_regex(pattern_), std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw ConfigError("invalid glob '" + pattern_ + "': " + e.what());
  }
}

bool Glob::matches(std::string_view path) const {
  return std::regex_match(path.begin(), path.end(), regex_);
}

GlobSet::GlobSet(const std::vector<std::string>& patterns) {
  globs_.reserve(patterns.size());
  for (const auto& p : patterns) globs_.emplace_back(p);
}

bool GlobSet::any_match(std::string_view path) const {
  for (const auto& g : globs_) {
    if (g.matches(path)) return true;
  }
  return false;
}

}  // namespace quperman
