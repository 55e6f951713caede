#pragma once

#include <cstdint>
#include <vector>

#include "msidx/core_types.hpp"

namespace msidx {

/// Full suffix arrays of a Text. Used at build time and by tests only; none
/// of these arrays are stored in an index.
struct SuffixStructures {
  std::vector<std::uint64_t> sa;
  std::vector<std::uint64_t> isa;
  std::vector<std::uint64_t> lcp;   // lcp[0] = 0
  std::vector<std::uint64_t> plcp;  // plcp[p] = lcp[isa[p]]
  Bytes bwt;
};

// Prefix doubling followed by Kasai's LCP scan.
SuffixStructures build_suffix_structures(const Text& text);

/// Brute-force references. Deliberately independent of the index code paths.
namespace oracle {

// pos is the smallest position realizing the maximal length, kNone if len = 0.
std::vector<MsEntry> matching_statistics(const Text& text, std::span<const Byte> pattern);

std::uint64_t lce(const Text& text, std::uint64_t i, std::uint64_t j);

std::vector<std::uint64_t> occurrences(const Text& text, std::span<const Byte> needle);

// Length of the longest suffix of prefix[0..j] occurring in the text, for
// every j.
std::vector<std::uint64_t> suffix_match_lengths(const Text& text, std::span<const Byte> stream);

}  // namespace oracle

}  // namespace msidx
