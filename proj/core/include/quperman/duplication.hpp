#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quperman/token.hpp"

namespace quperman {

inline constexpr std::size_t kDefaultWindowSize = 25;
inline constexpr std::size_t kMinWindowSize = 8;

/// Token texts with identifiers replaced by a placeholder, so renamed
/// clones fingerprint identically.
std::vector<std::string> normalized_tokens(const TokenizedSource& source);

/// For every stream, the fraction of its tokens covered by some window of
/// `windowSize` consecutive tokens whose content occurs at least twice in
/// the whole corpus (in the same stream or another). Streams shorter than
/// the window score 0. Throws ParameterError for windowSize < 8.
std::vector<double> duplication_ratio(const std::vector<std::vector<std::string>>& streams,
                                      std::size_t windowSize = kDefaultWindowSize);

}  // namespace quperman
