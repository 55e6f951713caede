#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "msidx/rlbwt.hpp"
#include "msidx/suffix_builder.hpp"

namespace msidx {

/// For each character c and each pair of consecutive c-runs (end q1 of run k,
/// start q2 of run k+1): the smallest t in [q1+1, q2] minimizing LCP[t].
class ThresholdTable {
 public:
  ThresholdTable() = default;
  explicit ThresholdTable(std::array<std::vector<std::uint64_t>, 256> rows)
      : rows_(std::move(rows)) {}

  // Row for the pair (run `ordinal` of c, run `ordinal + 1` of c).
  std::uint64_t first_min(Byte c, std::uint64_t ordinal) const;
  std::span<const std::uint64_t> of(Byte c) const noexcept { return rows_[c]; }
  std::uint64_t entry_count() const noexcept;

  friend bool operator==(const ThresholdTable&, const ThresholdTable&) = default;

 private:
  std::array<std::vector<std::uint64_t>, 256> rows_;
};

// Needs the full LCP array, so only available while building.
ThresholdTable build_thresholds(const SuffixStructures& ss, const RlBwt& bwt);

}  // namespace msidx
