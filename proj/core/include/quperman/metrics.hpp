#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quperman/frontend.hpp"
#include "quperman/token.hpp"

namespace quperman {

struct SourceUnit {
  std::string path;         ///< relative to the analysis root, '/'-separated
  std::string languageTag;  ///< frontend id
  std::string contentHash;  ///< sha256 of the file bytes
  std::size_t lineCount = 0;
  std::size_t tokenCount = 0;

  bool operator==(const SourceUnit&) const = default;
};

struct HalsteadCounts {
  std::size_t distinctOperators = 0;
  std::size_t distinctOperands = 0;
  std::size_t totalOperators = 0;
  std::size_t totalOperands = 0;

  /// N
  [[nodiscard]] std::size_t length() const { return totalOperators + totalOperands; }
  /// n
  [[nodiscard]] std::size_t vocabulary() const { return distinctOperators + distinctOperands; }
  /// V = N log2 n, zero for an empty stream.
  [[nodiscard]] double volume() const;
};

struct FunctionMetrics {
  std::string name;
  int startLine = 1;
  int endLine = 1;
  int loc = 0;  ///< non-blank, non-comment-only lines owned by this function
  int cyclomatic = 1;
  int maxNesting = 0;
  int arity = 0;
  std::size_t halsteadLength = 0;
  std::size_t halsteadVocabulary = 0;
  double halsteadVolume = 0.0;
  int commentLines = 0;

  bool operator==(const FunctionMetrics&) const = default;
};

struct FileMetrics {
  SourceUnit unit;
  int totalLoc = 0;
  int commentLines = 0;
  double commentDensity = 0.0;  ///< commentLines / max(lineCount, 1)
  std::vector<FunctionMetrics> functions;
  double duplicationRatio = 0.0;

  bool operator==(const FileMetrics&) const = default;
};

/// 1 + number of decision-point tokens.
int cyclomatic_complexity(std::span<const Token> tokens);

HalsteadCounts halstead(std::span<const Token> tokens);

inline double halstead_volume(std::span<const Token> tokens) { return halstead(tokens).volume(); }

/// Builds per-file metrics from a tokenized source and its spans. Tokens
/// and lines inside a nested span belong to the innermost function only.
/// duplicationRatio is left at zero; it needs the whole corpus.
FileMetrics compute_file_metrics(SourceUnit unit, const TokenizedSource& source,
                                 const std::vector<FunctionSpan>& spans);

}  // namespace quperman
