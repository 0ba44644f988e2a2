#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace quperman {

/// Path glob over '/'-separated relative paths.
///
///   `**`   any sequence of characters including '/'; `**/` also matches
///          zero leading directories
///   `*`    any run of characters within one path segment
///   `?`    one character other than '/'
///   `[..]` character class (`[!..]` negates)
class Glob {
 public:
  explicit Glob(std::string pattern);

  [[nodiscard]] bool matches(std::string_view path) const;
  [[nodiscard]] const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
  std::regex regex_;
};

class GlobSet {
 public:
  GlobSet() = default;
  explicit GlobSet(const std::vector<std::string>& patterns);

  [[nodiscard]] bool any_match(std::string_view path) const;
  [[nodiscard]] bool empty() const { return globs_.empty(); }

 private:
  std::vector<Glob> globs_;
};

}  // namespace quperman
