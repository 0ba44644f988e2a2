#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace quperman {

enum class TokenKind { Identifier, Keyword, Number, String, Operator, Punctuation };

/// How a token participates in Halstead counting.
enum class HalsteadRole { Operator, Operand, Ignored };

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string text;
  int line = 1;     ///< 1-based line of the first character
  int endLine = 1;  ///< last line touched (multi-line literals)
  HalsteadRole role = HalsteadRole::Ignored;
  bool decision = false;  ///< counts as a cyclomatic decision point
};

/// Per-physical-line facts recorded while lexing.
struct LineInfo {
  bool code = false;     ///< carries at least one non-comment token
  bool comment = false;  ///< carries comment text
  int indent = 0;        ///< leading whitespace width (tab = 8 columns)
  bool logicalStart = true;  ///< begins a new logical line (not a continuation)
};

struct TokenizedSource {
  std::vector<Token> tokens;
  std::vector<LineInfo> lines;  ///< lines[i] describes line i + 1
  std::vector<std::string> warnings;
};

/// Number of newline-delimited lines; a trailing fragment without '\n'
/// counts as a line, an empty buffer has none.
std::size_t count_lines(std::string_view content);

}  // namespace quperman
