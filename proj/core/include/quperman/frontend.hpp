#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quperman/glob.hpp"
#include "quperman/token.hpp"

namespace quperman {

/// A function found by a frontend. Token indices are a half-open range
/// into TokenizedSource::tokens.
struct FunctionSpan {
  std::string name;
  int startLine = 1;
  int endLine = 1;
  int arity = 0;
  std::size_t tokenBegin = 0;
  std::size_t tokenEnd = 0;
  int maxNesting = 0;
  std::optional<std::size_t> parent;  ///< enclosing function, index into the span list
};

enum class NestedFunctions {
  Separate,  ///< nested functions are reported as their own units
  Merged,    ///< nested functions are folded into the enclosing one
};

struct ExtractResult {
  std::vector<FunctionSpan> spans;  ///< ordered by startLine, parents before children
  std::vector<std::string> warnings;
};

/// A language frontend: lexer with token classification plus a
/// function-span extractor.
class Frontend {
 public:
  virtual ~Frontend() = default;

  [[nodiscard]] virtual std::string_view id() const = 0;
  [[nodiscard]] virtual TokenizedSource tokenize(std::string_view content) const = 0;
  [[nodiscard]] virtual ExtractResult find_functions(const TokenizedSource& source) const = 0;
};

/// Brace-delimited languages: C, C++, Java, JavaScript, TypeScript, C#, Kotlin.
std::unique_ptr<Frontend> make_c_family_frontend();
/// Indentation-delimited Python.
std::unique_ptr<Frontend> make_python_frontend();

enum class CommentStyle { Hash, Slash, DashDash, HashAndSlash };
/// Heuristic fallback for anything else.
std::unique_ptr<Frontend> make_generic_frontend(CommentStyle style);

/// Runs the frontend and applies the nested-function policy.
ExtractResult extract_functions(const Frontend& frontend, const TokenizedSource& source,
                                NestedFunctions nested = NestedFunctions::Separate);

/// Maps files to frontends by extension, with glob overrides taking
/// precedence. Files nobody claims go to the generic fallback.
class FrontendRegistry {
 public:
  FrontendRegistry();

  /// Forces every path matching `pattern` onto the frontend named `id`.
  /// Throws ConfigError for an unknown id.
  void add_override(const std::string& pattern, const std::string& id);

  [[nodiscard]] const Frontend& select(std::string_view relativePath) const;
  [[nodiscard]] const Frontend* find(std::string_view id) const;

  static const std::vector<std::string>& known_ids();

 private:
  struct ExtensionEntry {
    std::string extension;
    const Frontend* frontend;
  };
  std::vector<std::unique_ptr<Frontend>> owned_;
  std::vector<ExtensionEntry> byExtension_;
  std::vector<std::pair<Glob, const Frontend*>> overrides_;
  const Frontend* cFamily_ = nullptr;
  const Frontend* python_ = nullptr;
  const Frontend* fallback_ = nullptr;
};

}  // namespace quperman
