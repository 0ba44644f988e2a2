#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "../lex_util.hpp"
#include "quperman/frontend.hpp"

namespace quperman {
namespace {

using detail::Scanner;

// Reserved words of C, C++, Java, JavaScript/TypeScript, C# and Kotlin that
// are never identifiers in practice. Contextual words (in, of, get, set, is)
// stay identifiers.
const std::set<std::string, std::less<>> kKeywords = {
    "abstract", "alignas", "alignof", "asm", "async", "auto", "await", "boolean", "bool", "break",
    "byte", "case", "catch", "char", "char8_t", "char16_t", "char32_t", "checked", "class", "co_await",
    "co_return", "co_yield", "const", "const_cast", "consteval", "constexpr", "constinit", "continue",
    "debugger", "decltype", "default", "delete", "do", "double", "dynamic_cast", "else", "enum",
    "explicit", "export", "extends", "extern", "false", "final", "finally", "fixed", "float", "for",
    "foreach", "friend", "fun", "function", "goto", "if", "implements", "import", "inline",
    "instanceof", "int", "interface", "let", "lock", "long", "mutable", "namespace", "native", "new",
    "noexcept", "null", "nullptr", "operator", "override", "package", "private", "protected", "public",
    "readonly", "register", "reinterpret_cast", "requires", "return", "sealed", "short", "signed",
    "sizeof", "stackalloc", "static", "static_assert", "static_cast", "struct", "super", "switch",
    "synchronized", "template", "this", "thread_local", "throw", "throws", "transient", "true", "try",
    "typedef", "typeid", "typename", "typeof", "union", "unchecked", "unsafe", "unsigned", "using",
    "val", "var", "virtual", "void", "volatile", "when", "while", "yield",
};

// Keywords that denote values; Halstead counts them as operands.
const std::set<std::string, std::less<>> kLiteralKeywords = {"true", "false", "null", "nullptr", "this", "super"};

// Decision points: branch and loop keywords, case labels, catch clauses,
// short-circuit operators and the ternary.
const std::set<std::string, std::less<>> kDecisionWords = {"if", "for", "foreach", "while", "case", "catch"};
const std::set<std::string, std::less<>> kDecisionOps = {"&&", "||", "?"};

const std::vector<std::string_view> kOperators = {
    ">>>=", "<<=", ">>=", "<=>", "...", "->*", "===", "!==", ">>>", "->", "++", "--", "<<", ">>", "<=",
    ">=",   "==",  "!=",  "&&",  "||",  "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "::", "=>",
    "?.",   "??",  "**",  ".*",  "+",   "-",   "*",   "/",   "%",   "=",  "<",  ">",  "!",  "&",  "|",
    "^",    "~",   "?",   ":",   ".",   ";",   ",",   "(",   ")",   "{",  "}",  "[",  "]",  "@",  "#",
    "\\",   "$",
};

const std::set<std::string, std::less<>> kDelimiters = {";", ",", "(", ")", "{", "}", "[", "]"};

bool is_string_prefix(std::string_view id) { return id == "L" || id == "u" || id == "U" || id == "u8"; }
bool is_raw_prefix(std::string_view id) {
  return id == "R" || id == "LR" || id == "uR" || id == "UR" || id == "u8R";
}

void classify(Token& t) {
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

// Raw string: R"delim( ... )delim"
bool scan_raw_string(Scanner& s) {
  s.advance();  // '"'
  std::string delim;
  while (!s.done() && s.peek() != '(' && s.peek() != '\n' && delim.size() < 16) {
    delim += s.peek();
    s.advance();
  }
  if (s.peek() != '(') return false;
  const std::string close = ")" + delim + "\"";
  while (!s.done()) {
    if (s.starts_with(close)) {
      s.advance(close.size());
      return true;
    }
    s.advance();
  }
  return false;
}

TokenizedSource lex(std::string_view text) {
  Scanner s(text);
  while (!s.done()) {
    const char c = s.peek();
    const int startLine = s.line();
    const std::size_t start = s.pos();

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      s.advance();
      continue;
    }
    // Preprocessor directive: counted as code, not tokenized.
    if (c == '#' && s.at_line_start()) {
      while (!s.done() && s.peek() != '\n') {
        if (s.peek() == '\\' && s.peek(1) == '\n') s.advance();
        s.advance();
      }
      s.mark_code(startLine, s.line());
      continue;
    }
    if (s.starts_with("//")) {
      while (!s.done() && s.peek() != '\n') s.advance();
      s.mark_comment(startLine, startLine);
      continue;
    }
    if (s.starts_with("/*")) {
      s.advance(2);
      bool closed = false;
      while (!s.done()) {
        if (s.starts_with("*/")) {
          s.advance(2);
          closed = true;
          break;
        }
        s.advance();
      }
      if (!closed) s.warn("unterminated block comment starting at line " + std::to_string(startLine));
      s.mark_comment(startLine, s.line());
      continue;
    }
    if (c == '"' || c == '\'' || c == '`') {
      if (!detail::scan_quoted(s, c, c == '`')) {
        s.warn("unterminated literal at line " + std::to_string(startLine));
      }
      s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
      continue;
    }
    if (detail::is_digit(static_cast<unsigned char>(c)) ||
        (c == '.' && detail::is_digit(static_cast<unsigned char>(s.peek(1))))) {
      detail::scan_number(s);
      s.emit(TokenKind::Number, std::string(s.slice(start)), startLine);
      continue;
    }
    if (detail::is_ident_start(static_cast<unsigned char>(c)) || c == '$') {
      while (!s.done() && (detail::is_ident_char(static_cast<unsigned char>(s.peek())) || s.peek() == '$')) {
        s.advance();
      }
      const std::string word(s.slice(start));
      if (s.peek() == '"' && is_raw_prefix(word)) {
        if (!scan_raw_string(s)) s.warn("unterminated raw string at line " + std::to_string(startLine));
        s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
        continue;
      }
      if ((s.peek() == '"' || s.peek() == '\'') && is_string_prefix(word)) {
        if (!detail::scan_quoted(s, s.peek(), false)) {
          s.warn("unterminated literal at line " + std::to_string(startLine));
        }
        s.emit(TokenKind::String, std::string(s.slice(start)), startLine);
        continue;
      }
      s.emit(kKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier, word, startLine);
      continue;
    }
    const auto op = detail::match_operator(s, kOperators);
    if (!op.empty()) {
      s.advance(op.size());
      s.emit(kDelimiters.contains(op) ? TokenKind::Punctuation : TokenKind::Operator, std::string(op), startLine);
      continue;
    }
    // Unknown byte: keep it as an operator so nothing is silently lost.
    s.advance();
    s.emit(TokenKind::Operator, std::string(s.slice(start)), startLine);
  }
  auto out = s.finish();
  for (auto& t : out.tokens) classify(t);
  return out;
}

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Matching partner index for every bracket token, npos when unbalanced.
std::vector<std::size_t> match_brackets(const std::vector<Token>& tokens) {
  std::vector<std::size_t> match(tokens.size(), npos);
  std::vector<std::size_t> stack;
  auto opener_of = [](std::string_view close) -> std::string_view {
    if (close == ")") return "(";
    if (close == "]") return "[";
    return "{";
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i].text;
    if (tokens[i].kind != TokenKind::Punctuation) continue;
    if (t == "(" || t == "[" || t == "{") {
      stack.push_back(i);
    } else if (t == ")" || t == "]" || t == "}") {
      // Pop through mismatched openers so one stray bracket does not
      // unbalance the rest of the file.
      auto want = opener_of(t);
      auto it = std::find_if(stack.rbegin(), stack.rend(),
                             [&](std::size_t idx) { return tokens[idx].text == want; });
      if (it == stack.rend()) continue;
      const std::size_t open = *it;
      stack.erase(std::next(it).base(), stack.end());
      match[open] = i;
      match[i] = open;
    }
  }
  return match;
}

bool is_text(const Token& t, std::string_view s) { return t.text == s; }

const std::set<std::string, std::less<>> kAccessWords = {"public", "private", "protected", "signals", "slots"};

// Keywords that may not appear between a parameter list and a body.
const std::set<std::string, std::less<>> kTrailerStopWords = {
    "return", "if",     "else",  "for",    "while",   "do",       "switch",    "case",     "default",
    "break",  "continue", "goto", "new",   "delete",  "sizeof",   "co_await",  "co_return", "co_yield",
    "foreach", "when",  "catch", "yield",  "typeof",  "instanceof", "function", "class",    "struct",
};
const std::set<std::string, std::less<>> kTrailerOps = {"::", "<", ">", ">>", "*", "&", "&&", "->", ",",
                                                       ".",  "...", "[", "]", ":", "@"};
// Keywords that may take a parenthesised argument in a trailer.
const std::set<std::string, std::less<>> kTrailerCallWords = {"noexcept", "throw", "requires", "decltype",
                                                             "alignas"};

// Given the matching ')' of a parameter list, returns the index of the
// body '{' or npos when the parentheses are not a definition.
std::size_t find_body(const std::vector<Token>& tokens, const std::vector<std::size_t>& match, std::size_t close) {
  bool inInit = false;
  std::size_t steps = 0;
  for (std::size_t j = close + 1; j < tokens.size() && steps < 256; ++j, ++steps) {
    const Token& t = tokens[j];
    const Token& prev = tokens[j - 1];
    if (is_text(t, "{") && t.kind == TokenKind::Punctuation) {
      // Member brace-initializer `m{x}` is followed by ',' or the body.
      if (inInit && (prev.kind == TokenKind::Identifier || is_text(prev, ">")) && match[j] != npos &&
          match[j] + 1 < tokens.size() && (is_text(tokens[match[j] + 1], ",") || is_text(tokens[match[j] + 1], "{"))) {
        j = match[j];
        continue;
      }
      return j;
    }
    if (is_text(t, "(") && t.kind == TokenKind::Punctuation) {
      const bool allowed = inInit ? (prev.kind == TokenKind::Identifier || is_text(prev, ">"))
                                  : (prev.kind == TokenKind::Keyword && kTrailerCallWords.contains(prev.text)) ||
                                        is_text(prev, "__attribute__");
      if (!allowed || match[j] == npos) return npos;
      j = match[j];
      continue;
    }
    if (is_text(t, ":") && t.kind == TokenKind::Operator) {
      inInit = true;
      continue;
    }
    switch (t.kind) {
      case TokenKind::Identifier:
        continue;
      case TokenKind::Keyword:
        if (kTrailerStopWords.contains(t.text)) return npos;
        continue;
      case TokenKind::Operator:
      case TokenKind::Punctuation:
        if (kTrailerOps.contains(t.text)) {
          if (is_text(t, "[") && match[j] != npos) j = match[j];
          continue;
        }
        return npos;
      default:
        return npos;
    }
  }
  return npos;
}

int count_arity(const std::vector<Token>& tokens, std::size_t open, std::size_t close) {
  if (close <= open + 1) return 0;
  if (close == open + 2 && tokens[open + 1].text == "void") return 0;
  int commas = 0;
  int depth = 0;
  int angle = 0;
  for (std::size_t i = open + 1; i < close; ++i) {
    const auto& s = tokens[i].text;
    if (s == "(" || s == "[" || s == "{") {
      ++depth;
    } else if (s == ")" || s == "]" || s == "}") {
      --depth;
    } else if (s == "<") {
      ++angle;
    } else if (s == ">") {
      angle = std::max(0, angle - 1);
    } else if (s == ">>") {
      angle = std::max(0, angle - 2);
    } else if (s == "," && depth == 0 && angle == 0) {
      ++commas;
    }
  }
  return commas + 1;
}

// Builds the (possibly qualified) name ending at `last` and returns it
// with the index of its first token.
std::pair<std::string, std::size_t> qualified_name(const std::vector<Token>& tokens, std::size_t last) {
  std::size_t first = last;
  std::string name = tokens[last].text;
  if (first > 0 && tokens[first - 1].text == "~") {
    --first;
    name = "~" + name;
  }
  while (first >= 2 && tokens[first - 1].text == "::" && tokens[first - 2].kind == TokenKind::Identifier) {
    name = tokens[first - 2].text + "::" + name;
    first -= 2;
  }
  return {name, first};
}

// Whether the '{' at `i` opens a statement block (as opposed to a braced
// initializer, object literal or type body).
bool opens_block(const std::vector<Token>& tokens, std::size_t i) {
  if (i == 0) return true;
  const auto& p = tokens[i - 1];
  static const std::set<std::string, std::less<>> kBefore = {")", "{", "}", ";", ":", "else", "do", "try",
                                                            "finally", "=>", "->"};
  return kBefore.contains(p.text);
}

int max_block_nesting(const std::vector<Token>& tokens, const std::vector<std::size_t>& match, std::size_t body) {
  const std::size_t end = match[body] == npos ? tokens.size() : match[body];
  int depth = 0;
  int best = 0;
  std::vector<bool> stack;
  for (std::size_t i = body + 1; i < end; ++i) {
    const auto& t = tokens[i];
    if (t.kind != TokenKind::Punctuation) continue;
    if (t.text == "{") {
      const bool block = opens_block(tokens, i);
      stack.push_back(block);
      if (block) best = std::max(best, ++depth);
    } else if (t.text == "}" && !stack.empty()) {
      if (stack.back()) --depth;
      stack.pop_back();
    }
  }
  return best;
}

class CFamilyFrontend final : public Frontend {
 public:
  std::string_view id() const override { return "c-family"; }

  TokenizedSource tokenize(std::string_view content) const override { return lex(content); }

  ExtractResult find_functions(const TokenizedSource& source) const override {
    ExtractResult out;
    const auto& tokens = source.tokens;
    const auto match = match_brackets(tokens);
    bool unbalanced = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (t.kind != TokenKind::Punctuation || t.text != "(" || match[i] == npos) continue;

      std::string name;
      std::size_t first = 0;
      const Token& before = tokens[i - 1];
      if (before.kind == TokenKind::Identifier) {
        std::tie(name, first) = qualified_name(tokens, i - 1);
        if (first > 0 && (tokens[first - 1].text == "new" || tokens[first - 1].text == "." ||
                          tokens[first - 1].text == "->" || tokens[first - 1].text == ",")) {
          continue;
        }
        // `: member(x) {}` is a constructor initializer, `public:` is not.
        if (first > 1 && tokens[first - 1].text == ":" && !kAccessWords.contains(tokens[first - 2].text)) continue;
      } else if (i >= 2 && tokens[i - 2].text == "operator" && before.kind == TokenKind::Operator) {
        name = "operator" + before.text;
        first = i - 2;
      } else if (i >= 3 && before.text == ")" && tokens[i - 2].text == "(" && tokens[i - 3].text == "operator") {
        name = "operator()";
        first = i - 3;
      } else {
        continue;
      }

      const std::size_t close = match[i];
      const std::size_t body = find_body(tokens, match, close);
      if (body == npos) continue;

      FunctionSpan span;
      span.name = name;
      span.tokenBegin = first;
      span.startLine = tokens[first].line;
      span.arity = count_arity(tokens, i, close);
      if (match[body] == npos) {
        unbalanced = true;
        span.tokenEnd = tokens.size();
      } else {
        span.tokenEnd = match[body] + 1;
      }
      span.endLine = tokens[span.tokenEnd - 1].endLine;
      span.maxNesting = max_block_nesting(tokens, match, body);
      out.spans.push_back(std::move(span));
    }
    if (unbalanced) out.warnings.push_back("unbalanced braces; a function runs to end of file");
    return out;
  }
};

}  // namespace

std::unique_ptr<Frontend> make_c_family_frontend() { return std::make_unique<CFamilyFrontend>(); }

}  // namespace quperman
