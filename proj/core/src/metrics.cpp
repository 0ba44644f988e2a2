#include "quperman/metrics.hpp"

#include <cmath>
#include <set>
#include <string_view>

namespace quperman {

double HalsteadCounts::volume() const {
  const auto n = vocabulary();
  const auto total = length();
  if (total == 0 || n == 0) return 0.0;
  return static_cast<double>(total) * std::log2(static_cast<double>(n));
}

int cyclomatic_complexity(std::span<const Token> tokens) {
  int cc = 1;
  for (const auto& t : tokens) {
    if (t.decision) ++cc;
  }
  return cc;
}

HalsteadCounts halstead(std::span<const Token> tokens) {
  HalsteadCounts h;
  std::set<std::string_view> operators;
  std::set<std::string_view> operands;
  for (const auto& t : tokens) {
    switch (t.role) {
      case HalsteadRole::Operator:
        ++h.totalOperators;
        operators.insert(t.text);
        break;
      case HalsteadRole::Operand:
        ++h.totalOperands;
        operands.insert(t.text);
        break;
      case HalsteadRole::Ignored:
        break;
    }
  }
  h.distinctOperators = operators.size();
  h.distinctOperands = operands.size();
  return h;
}

FileMetrics compute_file_metrics(SourceUnit unit, const TokenizedSource& source,
                                 const std::vector<FunctionSpan>& spans) {
  FileMetrics fm;
  const auto lineCount = source.lines.size();
  for (const auto& info : source.lines) {
    if (info.code) ++fm.totalLoc;
    if (info.comment) ++fm.commentLines;
  }
  fm.commentDensity = static_cast<double>(fm.commentLines) / static_cast<double>(std::max<std::size_t>(unit.lineCount, 1));

  // Innermost owner of every line and token; spans arrive parents first.
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> lineOwner(lineCount + 1, kNone);
  std::vector<std::size_t> tokenOwner(source.tokens.size(), kNone);
  for (std::size_t s = 0; s < spans.size(); ++s) {
    const auto& span = spans[s];
    for (int l = span.startLine; l <= span.endLine && static_cast<std::size_t>(l) <= lineCount; ++l) {
      lineOwner[static_cast<std::size_t>(l)] = s;
    }
    for (std::size_t t = span.tokenBegin; t < span.tokenEnd && t < tokenOwner.size(); ++t) tokenOwner[t] = s;
  }

  fm.functions.reserve(spans.size());
  for (std::size_t s = 0; s < spans.size(); ++s) {
    const auto& span = spans[s];
    FunctionMetrics f;
    f.name = span.name;
    f.startLine = span.startLine;
    f.endLine = span.endLine;
    f.arity = span.arity;
    f.maxNesting = span.maxNesting;
    for (int l = span.startLine; l <= span.endLine && static_cast<std::size_t>(l) <= lineCount; ++l) {
      if (lineOwner[static_cast<std::size_t>(l)] != s) continue;
      const auto& info = source.lines[static_cast<std::size_t>(l - 1)];
      if (info.code) ++f.loc;
      if (info.comment) ++f.commentLines;
    }
    std::vector<Token> owned;
    for (std::size_t t = span.tokenBegin; t < span.tokenEnd && t < tokenOwner.size(); ++t) {
      if (tokenOwner[t] == s) owned.push_back(source.tokens[t]);
    }
    f.cyclomatic = cyclomatic_complexity(owned);
    const auto h = halstead(owned);
    f.halsteadLength = h.length();
    f.halsteadVocabulary = h.vocabulary();
    f.halsteadVolume = h.volume();
    fm.functions.push_back(std::move(f));
  }
  fm.unit = std::move(unit);
  return fm;
}

}  // namespace quperman
