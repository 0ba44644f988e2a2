#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "../lex_util.hpp"
#include "quperman/frontend.hpp"

namespace quperman {
namespace {

using detail::Scanner;

const std::set<std::string, std::less<>> kKeywords = {
    "and",   "begin", "break", "case",  "catch", "const",  "continue", "def",   "do",    "elif",
    "else",  "elsif", "end",   "except", "false", "finally", "fn",      "for",   "foreach", "fun",
    "func",  "function", "if", "impl",  "in",    "let",    "local",   "loop",  "match", "mut",
    "nil",   "not",   "null",  "or",    "proc",  "pub",    "rescue",  "return", "self", "struct",
    "sub",   "switch", "then", "true",  "try",   "unless", "until",   "val",   "var",   "when",
    "while", "None",  "True",  "False",
};
const std::set<std::string, std::less<>> kLiteralKeywords = {"true", "false", "nil", "null", "self",
                                                            "None", "True", "False"};
const std::set<std::string, std::less<>> kDecisionWords = {"if",    "elif",  "elsif", "unless", "for", "foreach",
                                                          "while", "until", "case",  "when",   "catch", "rescue",
                                                          "except", "and",  "or"};
const std::set<std::string, std::less<>> kDecisionOps = {"&&", "||"};
const std::set<std::string, std::less<>> kHeaderWords = {"def", "function", "func", "fn", "fun", "sub", "proc"};
const std::set<std::string, std::less<>> kModifiers = {"pub",      "public", "private", "protected", "static",
                                                      "async",    "local",  "export",  "override",  "inline",
                                                      "unsafe",   "const",  "extern",  "final",     "open",
                                                      "internal", "mutating"};

const std::vector<std::string_view> kOperators = {
    "...", "&&", "||", "==", "!=", "<=", ">=", "->", "=>", "::", "++", "--", "+=", "-=", "*=", "/=",
    "**",  "<<", ">>", "..", ":=", "+",  "-",  "*",  "/",  "%",  "=",  "<",  ">",  "!",  "&",  "|",
    "^",   "~",  "?",  ":",  ".",  ";",  ",",  "(",  ")",  "{",  "}",  "[",  "]",  "@",  "$",
};
const std::set<std::string, std::less<>> kDelimiters = {"(", ")", "[", "]", "{", "}", ",", ";"};
const std::set<std::string, std::less<>> kNameJoiners = {".", ":", "::"};

bool line_comment_at(const Scanner& s, CommentStyle style) {
  switch (style) {
    case CommentStyle::Hash:
      return s.peek() == '#';
    case CommentStyle::Slash:
      return s.starts_with("//");
    case CommentStyle::DashDash:
      return s.starts_with("--");
    case CommentStyle::HashAndSlash:
      return s.peek() == '#' || s.starts_with("//");
  }
  return false;
}

bool block_comments(CommentStyle style) {
  return style == CommentStyle::Slash || style == CommentStyle::HashAndSlash;
}

TokenizedSource lex(std::string_view text, CommentStyle style) {
  Scanner s(text);
  while (!s.done()) {
    const char c = s.peek();
    const int startLine = s.line();
    const std::size_t start = s.pos();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      s.advance();
      continue;
    }
    if (line_comment_at(s, style)) {
      while (!s.done() && s.peek() != '\n') s.advance();
      s.mark_comment(startLine, startLine);
      continue;
    }
    if (block_comments(style) && s.starts_with("/*")) {
      s.advance(2);
      while (!s.done() && !s.starts_with("*/")) s.advance();
      s.advance(2);
      s.mark_comment(startLine, s.line());
      continue;
    }
    if (c == '"' || c == '\'') {
      if (!detail::scan_quoted(s, c, false)) s.warn("unterminated string at line " + std::to_string(startLine));
      s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
      continue;
    }
    if (detail::is_digit(static_cast<unsigned char>(c))) {
      detail::scan_number(s);
      s.emit(TokenKind::Number, std::string(s.slice(start)), startLine);
      continue;
    }
    if (detail::is_ident_start(static_cast<unsigned char>(c))) {
      while (!s.done() && detail::is_ident_char(static_cast<unsigned char>(s.peek()))) s.advance();
      // Ruby-style predicate/bang method names.
      if ((s.peek() == '?' || s.peek() == '!') && s.peek(1) != '=') s.advance();
      const std::string word(s.slice(start));
      s.emit(kKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier, word, startLine);
      continue;
    }
    const auto op = detail::match_operator(s, kOperators);
    const std::string textOp = op.empty() ? std::string(1, c) : std::string(op);
    s.advance(textOp.size());
    s.emit(kDelimiters.contains(textOp) ? TokenKind::Punctuation : TokenKind::Operator, textOp, startLine);
  }
  auto out = s.finish();
  for (auto& t : out.tokens) {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::Number:
      case TokenKind::String:
        t.role = HalsteadRole::Operand;
        break;
      case TokenKind::Keyword:
        t.role = kLiteralKeywords.contains(t.text) ? HalsteadRole::Operand : HalsteadRole::Operator;
        t.decision = kDecisionWords.contains(t.text);
        break;
      case TokenKind::Operator:
        t.role = HalsteadRole::Operator;
        t.decision = kDecisionOps.contains(t.text);
        break;
      case TokenKind::Punctuation:
        t.role = HalsteadRole::Ignored;
        break;
    }
  }
  return out;
}

struct PhysicalLine {
  int line = 0;
  std::size_t tokenBegin = 0;
  std::size_t tokenEnd = 0;
};

// Token runs per line, keyed by the line a token starts on.
std::vector<PhysicalLine> group_lines(const std::vector<Token>& tokens) {
  std::vector<PhysicalLine> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (out.empty() || out.back().line != tokens[i].line) {
      out.push_back({tokens[i].line, i, i + 1});
    } else {
      out.back().tokenEnd = i + 1;
    }
  }
  return out;
}

int count_arity(const std::vector<Token>& tokens, std::size_t from, std::size_t lineEnd) {
  std::size_t open = from;
  while (open < lineEnd && tokens[open].text != "(") ++open;
  if (open == lineEnd) {
    // Parenthesis-free parameter list: `def name a, b`
    std::size_t n = 0;
    for (std::size_t i = from; i < lineEnd; ++i) {
      if (tokens[i].kind == TokenKind::Identifier) ++n;
    }
    return static_cast<int>(n);
  }
  int depth = 0;
  int commas = 0;
  bool any = false;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    const auto& s = tokens[i].text;
    if (s == "(" || s == "[" || s == "{") ++depth;
    if (s == ")" || s == "]" || s == "}") {
      if (--depth == 0) break;
      continue;
    }
    if (depth == 1) {
      if (s == ",") {
        ++commas;
      } else if (s != "(") {
        any = true;
      }
    }
  }
  return any ? commas + 1 : 0;
}

// Depth = number of distinct indentation levels among body code lines
// deeper than `base`, minus the body's own level.
int indentation_nesting(const TokenizedSource& src, int bodyFirst, int bodyLast, int base) {
  std::vector<int> levels;
  for (int l = bodyFirst; l <= bodyLast; ++l) {
    const auto& info = src.lines[static_cast<std::size_t>(l - 1)];
    if (info.code && info.indent > base) levels.push_back(info.indent);
  }
  if (levels.empty()) return 0;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return static_cast<int>(levels.size()) - 1;
}

class GenericFrontend final : public Frontend {
 public:
  explicit GenericFrontend(CommentStyle style) : style_(style) {}

  std::string_view id() const override { return "generic"; }

  TokenizedSource tokenize(std::string_view content) const override { return lex(content, style_); }

  ExtractResult find_functions(const TokenizedSource& source) const override {
    ExtractResult out;
    const auto& tokens = source.tokens;
    const auto lines = group_lines(tokens);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const auto& pl = lines[li];
      std::size_t k = pl.tokenBegin;
      while (k < pl.tokenEnd && kModifiers.contains(tokens[k].text)) ++k;
      if (k + 1 >= pl.tokenEnd || !kHeaderWords.contains(tokens[k].text)) continue;
      std::size_t nameIdx = k + 1;
      // Go method receiver: func (r *T) Name(...)
      if (tokens[nameIdx].text == "(") {
        int depth = 0;
        for (; nameIdx < pl.tokenEnd; ++nameIdx) {
          if (tokens[nameIdx].text == "(") ++depth;
          if (tokens[nameIdx].text == ")" && --depth == 0) break;
        }
        ++nameIdx;
      }
      if (nameIdx >= pl.tokenEnd ||
          (tokens[nameIdx].kind != TokenKind::Identifier && tokens[nameIdx].text != "self")) {
        continue;
      }

      FunctionSpan span;
      span.name = tokens[nameIdx].text;
      // Qualified forms: `M.load`, `M:load`, `self.name`.
      std::size_t after = nameIdx + 1;
      while (after + 1 < pl.tokenEnd && kNameJoiners.contains(tokens[after].text) &&
             tokens[after + 1].kind == TokenKind::Identifier) {
        span.name += tokens[after].text + tokens[after + 1].text;
        after += 2;
      }
      span.startLine = pl.line;
      span.tokenBegin = pl.tokenBegin;
      span.arity = count_arity(tokens, after, pl.tokenEnd);

      const int headerIndent = source.lines[static_cast<std::size_t>(pl.line - 1)].indent;
      std::size_t last = li;
      for (std::size_t j = li + 1; j < lines.size(); ++j) {
        const int indent = source.lines[static_cast<std::size_t>(lines[j].line - 1)].indent;
        if (indent > headerIndent) {
          last = j;
          continue;
        }
        const auto& head = tokens[lines[j].tokenBegin].text;
        if (head == "}" || head == "end" || head == ")" || head == "]") last = j;
        break;
      }
      span.endLine = std::max(lines[last].line, tokens[lines[last].tokenEnd - 1].endLine);
      span.tokenEnd = lines[last].tokenEnd;
      span.maxNesting = span.endLine > span.startLine
                            ? indentation_nesting(source, span.startLine + 1, span.endLine, headerIndent)
                            : 0;
      out.spans.push_back(std::move(span));
    }

    if (out.spans.empty() && !tokens.empty()) {
      FunctionSpan whole;
      whole.name = "<anonymous>";
      whole.startLine = tokens.front().line;
      whole.endLine = tokens.back().endLine;
      whole.tokenBegin = 0;
      whole.tokenEnd = tokens.size();
      whole.maxNesting = indentation_nesting(source, whole.startLine, whole.endLine, -1);
      out.spans.push_back(std::move(whole));
      out.warnings.push_back("no function syntax recognised; whole file treated as one anonymous unit");
    }
    return out;
  }

 private:
  CommentStyle style_;
};

}  // namespace

std::unique_ptr<Frontend> make_generic_frontend(CommentStyle style) {
  return std::make_unique<GenericFrontend>(style);
}

}  // namespace quperman
