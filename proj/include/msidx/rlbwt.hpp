#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "msidx/core_types.hpp"
#include "msidx/suffix_builder.hpp"

namespace msidx {

struct BwtRun {
  Byte ch;
  std::uint64_t start;   // first BWT row of the run
  std::uint64_t length;
  std::uint64_t sa_first;  // SA at the run's first row
  std::uint64_t sa_last;   // SA at the run's last row

  std::uint64_t end() const noexcept { return start + length - 1; }
  friend bool operator==(const BwtRun&, const BwtRun&) = default;
};

/// Result of locating the nearest copies of a character around a row where
/// the BWT holds something else.
struct Neighbors {
  std::uint64_t prev = kNone;  // last row <= q holding c (a run end)
  std::uint64_t next = kNone;  // first row > q holding c (a run start)
  // Ordinal of prev's run among the runs of c; indexes the threshold pair
  // (prev_run, prev_run + 1). Meaningless when prev is kNone.
  std::uint64_t prev_run = kNone;
};

/// Run-length encoded BWT with SA samples at both ends of every run.
/// Storage is O(r): plain sorted arrays searched by binary search.
class RlBwt {
 public:
  RlBwt() = default;
  RlBwt(const SuffixStructures& ss);
  // Rebuilds the derived tables from a deserialized run list.
  explicit RlBwt(std::vector<BwtRun> runs);

  std::uint64_t size() const noexcept { return n_; }
  std::uint64_t run_count() const noexcept { return runs_.size(); }
  std::span<const BwtRun> runs() const noexcept { return runs_; }

  Byte at(std::uint64_t q) const;
  std::uint64_t count(Byte c) const noexcept;
  // Number of bytes in the text smaller than c.
  std::uint64_t smaller(Byte c) const noexcept { return char_totals_[c]; }

  // Copies of c in BWT[0..y], inclusive.
  std::uint64_t rank(Byte c, std::uint64_t y) const;
  // Row of the k-th copy of c, k 1-based. Throws rank_out_of_range.
  std::uint64_t select(Byte c, std::uint64_t k) const;
  std::uint64_t lf(std::uint64_t q) const;

  // SA[q] for q the first or last row of a run; throws not_a_boundary.
  std::uint64_t sa_at_boundary(std::uint64_t q) const;

  // Requires BWT[q] != c. Throws both_none when c does not occur.
  Neighbors neighbors(Byte c, std::uint64_t q) const;

  // Run list of one character, in BWT order: indexes into runs().
  std::span<const std::uint32_t> runs_of(Byte c) const noexcept { return char_runs_[c]; }

 private:
  std::size_t run_index(std::uint64_t q) const;
  void index_runs();

  std::uint64_t n_ = 0;
  std::vector<BwtRun> runs_;
  std::array<std::vector<std::uint32_t>, 256> char_runs_;
  // Copies of c before each run of c, parallel to char_runs_.
  std::array<std::vector<std::uint64_t>, 256> char_cum_;
  std::array<std::uint64_t, 257> char_totals_{};
};

}  // namespace msidx
