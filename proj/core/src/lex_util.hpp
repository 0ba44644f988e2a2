#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/token.hpp"

namespace quperman::detail {

inline bool is_ident_start(unsigned char c) { return std::isalpha(c) != 0 || c == '_' || c >= 0x80; }
inline bool is_ident_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_' || c >= 0x80; }
inline bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }

/// Cursor over a source buffer that keeps LineInfo up to date.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {
    out_.lines.resize(std::max<std::size_t>(count_lines(text), 1));
    begin_line();
  }

  [[nodiscard]] bool done() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  [[nodiscard]] bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  [[nodiscard]] std::size_t pos() const { return pos_; }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] bool at_line_start() const { return atLineStart_; }
  [[nodiscard]] std::string_view slice(std::size_t from) const { return text_.substr(from, pos_ - from); }

  /// Consumes one character, tracking newlines.
  void advance() {
    if (done()) return;
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      begin_line();
    } else if (c != ' ' && c != '\t' && c != '\r' && c != '\f') {
      atLineStart_ = false;
    }
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance();
  }

  LineInfo& info(int line) {
    const auto idx = static_cast<std::size_t>(line - 1);
    if (idx >= out_.lines.size()) out_.lines.resize(idx + 1);
    return out_.lines[idx];
  }
  void mark_comment(int from, int to) {
    for (int l = from; l <= to; ++l) info(l).comment = true;
  }
  void mark_code(int from, int to) {
    for (int l = from; l <= to; ++l) info(l).code = true;
  }

  void emit(TokenKind kind, std::string text, int startLine) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = startLine;
    t.endLine = line_;
    mark_code(startLine, t.endLine);
    out_.tokens.push_back(std::move(t));
  }

  void warn(std::string message) { out_.warnings.push_back(std::move(message)); }

  TokenizedSource finish() {
    // A trailing newline does not open a new line.
    out_.lines.resize(std::max<std::size_t>(count_lines(text_), 0));
    return std::move(out_);
  }

  TokenizedSource& result() { return out_; }

 private:
  void begin_line() {
    atLineStart_ = true;
    int width = 0;
    for (std::size_t p = pos_; p < text_.size(); ++p) {
      if (text_[p] == ' ') {
        ++width;
      } else if (text_[p] == '\t') {
        width = (width / 8 + 1) * 8;
      } else {
        break;
      }
    }
    info(line_).indent = width;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  bool atLineStart_ = true;
  TokenizedSource out_;
};

/// Longest operator from `table` at the cursor, or empty.
inline std::string_view match_operator(const Scanner& s, const std::vector<std::string_view>& table) {
  std::string_view best;
  for (auto op : table) {
    if (op.size() > best.size() && s.starts_with(op)) best = op;
  }
  return best;
}

/// Scans a number-ish literal: digits, letters, '.', '_' and digit
/// separators, with a signed exponent.
inline void scan_number(Scanner& s) {
  const bool hex = s.peek() == '0' && (s.peek(1) == 'x' || s.peek(1) == 'X');
  while (!s.done()) {
    const char c = s.peek();
    if (is_ident_char(static_cast<unsigned char>(c)) || c == '.' || c == '\'') {
      // ' is a digit separator only between digits
      if (c == '\'' && !(std::isxdigit(static_cast<unsigned char>(s.peek(1))) != 0)) break;
      const bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
      s.advance();
      if (exponent && (s.peek() == '+' || s.peek() == '-')) s.advance();
    } else {
      break;
    }
  }
}

/// Scans a quoted literal starting at the opening quote. Stops at an
/// unescaped newline unless `multiline`. Returns false when unterminated.
inline bool scan_quoted(Scanner& s, char quote, bool multiline) {
  s.advance();  // opening quote
  while (!s.done()) {
    const char c = s.peek();
    if (c == '\\') {
      s.advance(2);
      continue;
    }
    if (c == quote) {
      s.advance();
      return true;
    }
    if (c == '\n' && !multiline) return false;
    s.advance();
  }
  return false;
}

}  // namespace quperman::detail
