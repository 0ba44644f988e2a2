#include <algorithm>
#include <cctype>
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
    "False",  "None",  "True",    "and",      "as",   "assert", "async",  "await", "break",
    "class",  "continue", "def",  "del",      "elif", "else",   "except", "finally", "for",
    "from",   "global", "if",     "import",   "in",   "is",     "lambda", "nonlocal", "not",
    "or",     "pass",  "raise",   "return",   "try",  "while",  "with",   "yield",
};
const std::set<std::string, std::less<>> kLiteralKeywords = {"True", "False", "None"};
const std::set<std::string, std::less<>> kDecisionWords = {"if", "elif", "for", "while", "except", "and", "or"};
const std::set<std::string, std::less<>> kCompoundWords = {"if",   "elif", "else",  "for",   "while", "try",  "except",
                                                          "finally", "with", "def", "class", "async", "match", "case"};

const std::vector<std::string_view> kOperators = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=", "+=",
    "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", "@=", "+",  "-",  "*",  "/",  "%",  "@",  "&",  "|",
    "^",   "~",   "<",   ">",   "=",   ".",  ",",  ":",  ";",  "(",  ")",  "[",  "]",  "{",  "}",  "!",
};
const std::set<std::string, std::less<>> kDelimiters = {"(", ")", "[", "]", "{", "}", ",", ":", ";"};

bool is_string_prefix(std::string_view w) {
  if (w.size() > 2) return false;
  return std::all_of(w.begin(), w.end(), [](char c) {
    const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return l == 'r' || l == 'b' || l == 'f' || l == 'u';
  });
}

// Scans a (possibly triple-quoted) string whose opening quote is at the cursor.
bool scan_string(Scanner& s) {
  const char q = s.peek();
  if (s.peek(1) == q && s.peek(2) == q) {
    const std::string close(3, q);
    s.advance(3);
    while (!s.done()) {
      if (s.peek() == '\\') {
        s.advance(2);
        continue;
      }
      if (s.starts_with(close)) {
        s.advance(3);
        return true;
      }
      s.advance();
    }
    return false;
  }
  return detail::scan_quoted(s, q, false);
}

TokenizedSource lex(std::string_view text) {
  Scanner s(text);
  int depth = 0;
  int lastLine = 0;
  while (!s.done()) {
    const char c = s.peek();
    const int startLine = s.line();
    const std::size_t start = s.pos();

    if (startLine != lastLine) {
      // Lines opened inside brackets or after a backslash continue the
      // previous logical line.
      s.info(startLine).logicalStart = depth == 0;
      lastLine = startLine;
    }

    if (c == '\\' && (s.peek(1) == '\n' || (s.peek(1) == '\r' && s.peek(2) == '\n'))) {
      s.advance(s.peek(1) == '\r' ? 3 : 2);
      lastLine = s.line();
      s.info(s.line()).logicalStart = false;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      s.advance();
      continue;
    }
    if (c == '#') {
      while (!s.done() && s.peek() != '\n') s.advance();
      s.mark_comment(startLine, startLine);
      continue;
    }
    if (c == '"' || c == '\'') {
      if (!scan_string(s)) s.warn("unterminated string at line " + std::to_string(startLine));
      s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
      for (int l = startLine + 1; l <= s.line(); ++l) s.info(l).logicalStart = false;
      lastLine = s.line();
      continue;
    }
    if (detail::is_digit(static_cast<unsigned char>(c)) ||
        (c == '.' && detail::is_digit(static_cast<unsigned char>(s.peek(1))))) {
      detail::scan_number(s);
      s.emit(TokenKind::Number, std::string(s.slice(start)), startLine);
      continue;
    }
    if (detail::is_ident_start(static_cast<unsigned char>(c))) {
      while (!s.done() && detail::is_ident_char(static_cast<unsigned char>(s.peek()))) s.advance();
      const std::string word(s.slice(start));
      if ((s.peek() == '"' || s.peek() == '\'') && is_string_prefix(word)) {
        if (!scan_string(s)) s.warn("unterminated string at line " + std::to_string(startLine));
        s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
        for (int l = startLine + 1; l <= s.line(); ++l) s.info(l).logicalStart = false;
        lastLine = s.line();
        continue;
      }
      s.emit(kKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier, word, startLine);
      continue;
    }
    const auto op = detail::match_operator(s, kOperators);
    const std::string text = op.empty() ? std::string(1, c) : std::string(op);
    s.advance(text.size());
    if (text == "(" || text == "[" || text == "{") ++depth;
    if (text == ")" || text == "]" || text == "}") depth = std::max(0, depth - 1);
    s.emit(kDelimiters.contains(text) ? TokenKind::Punctuation : TokenKind::Operator, text, startLine);
  }
  return s.finish();
}

struct LogicalLine {
  int firstLine = 0;
  int lastLine = 0;
  int indent = 0;
  std::size_t tokenBegin = 0;
  std::size_t tokenEnd = 0;
};

std::vector<LogicalLine> logical_lines(const TokenizedSource& src) {
  std::vector<LogicalLine> out;
  for (std::size_t i = 0; i < src.tokens.size(); ++i) {
    const Token& t = src.tokens[i];
    const auto& info = src.lines[static_cast<std::size_t>(t.line - 1)];
    const bool fresh = out.empty() || (info.logicalStart && t.line != out.back().firstLine &&
                                       t.line > out.back().lastLine);
    if (fresh) {
      out.push_back({t.line, t.endLine, info.indent, i, i + 1});
    } else {
      out.back().lastLine = std::max(out.back().lastLine, t.endLine);
      out.back().tokenEnd = i + 1;
    }
  }
  return out;
}

// Index of the first ':' at bracket depth 0 in a logical line, or tokenEnd.
std::size_t header_colon(const std::vector<Token>& tokens, const LogicalLine& ll) {
  int depth = 0;
  for (std::size_t i = ll.tokenBegin; i < ll.tokenEnd; ++i) {
    const auto& s = tokens[i].text;
    if (s == "(" || s == "[" || s == "{") ++depth;
    if (s == ")" || s == "]" || s == "}") --depth;
    if (s == ":" && depth == 0) return i;
  }
  return ll.tokenEnd;
}

bool is_compound_header(const std::vector<Token>& tokens, const LogicalLine& ll) {
  const auto& first = tokens[ll.tokenBegin].text;
  return kCompoundWords.contains(first) && header_colon(tokens, ll) < ll.tokenEnd;
}

int count_params(const std::vector<Token>& tokens, std::size_t open, std::size_t end) {
  // Parameters are the comma-separated, non-empty groups; self/cls in first
  // position and the bare '*' and '/' markers do not count.
  int depth = 0;
  int count = 0;
  std::vector<std::string> group;
  auto flush = [&](bool firstGroup) {
    if (group.empty()) return;
    const bool marker = group.size() == 1 && (group[0] == "*" || group[0] == "/");
    const bool receiver = firstGroup && (group[0] == "self" || group[0] == "cls");
    if (!marker && !receiver) ++count;
    group.clear();
  };
  bool first = true;
  for (std::size_t i = open + 1; i < end; ++i) {
    const auto& s = tokens[i].text;
    if (depth == 0 && s == ")") break;
    if (s == "(" || s == "[" || s == "{") ++depth;
    if (s == ")" || s == "]" || s == "}") --depth;
    if (depth == 0 && s == ",") {
      flush(first);
      first = false;
      continue;
    }
    group.push_back(s);
  }
  flush(first);
  return count;
}

class PythonFrontend final : public Frontend {
 public:
  std::string_view id() const override { return "python"; }

  TokenizedSource tokenize(std::string_view content) const override {
    auto out = lex(content);
    // Keyword-dependent classification; `match`/`case` are soft keywords
    // only at the head of a logical line.
    const auto lines = logical_lines(out);
    std::vector<bool> head(out.tokens.size(), false);
    for (const auto& ll : lines) head[ll.tokenBegin] = true;
    for (std::size_t i = 0; i < out.tokens.size(); ++i) {
      Token& t = out.tokens[i];
      switch (t.kind) {
        case TokenKind::Identifier:
          if (head[i] && (t.text == "match" || t.text == "case")) {
            t.role = HalsteadRole::Operator;
            t.decision = t.text == "case";
          } else {
            t.role = HalsteadRole::Operand;
          }
          break;
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
          break;
        case TokenKind::Punctuation:
          t.role = HalsteadRole::Ignored;
          break;
      }
    }
    return out;
  }

  ExtractResult find_functions(const TokenizedSource& source) const override {
    ExtractResult out;
    const auto& tokens = source.tokens;
    const auto lines = logical_lines(source);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const auto& ll = lines[li];
      std::size_t k = ll.tokenBegin;
      if (tokens[k].text == "async" && k + 1 < ll.tokenEnd) ++k;
      if (tokens[k].text != "def" || k + 2 >= ll.tokenEnd) continue;
      if (tokens[k + 1].kind != TokenKind::Identifier) continue;

      FunctionSpan span;
      span.name = tokens[k + 1].text;
      span.startLine = ll.firstLine;
      span.tokenBegin = ll.tokenBegin;
      std::size_t open = k + 2;
      while (open < ll.tokenEnd && tokens[open].text != "(") ++open;
      span.arity = open < ll.tokenEnd ? count_params(tokens, open, ll.tokenEnd) : 0;

      const std::size_t colon = header_colon(tokens, ll);
      std::size_t last = li;
      if (colon + 1 >= ll.tokenEnd) {
        // Block body: every following logical line indented deeper.
        for (std::size_t j = li + 1; j < lines.size() && lines[j].indent > ll.indent; ++j) last = j;
      }
      span.endLine = lines[last].lastLine;
      span.tokenEnd = lines[last].tokenEnd;

      // Compound-statement depth relative to the body.
      struct Open {
        int indent;
      };
      std::vector<Open> stack;
      int best = 0;
      for (std::size_t j = li + 1; j <= last; ++j) {
        const auto& body = lines[j];
        while (!stack.empty() && stack.back().indent >= body.indent) stack.pop_back();
        const int depth = static_cast<int>(stack.size());
        best = std::max(best, depth);
        if (is_compound_header(tokens, body)) {
          if (header_colon(tokens, body) + 1 < body.tokenEnd) {
            best = std::max(best, depth + 1);
          } else {
            stack.push_back({body.indent});
          }
        }
      }
      span.maxNesting = best;
      out.spans.push_back(std::move(span));
    }
    return out;
  }
};

}  // namespace

std::unique_ptr<Frontend> make_python_frontend() { return std::make_unique<PythonFrontend>(); }

}  // namespace quperman
