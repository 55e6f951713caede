#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msidx/core_types.hpp"
#include "msidx/grammar.hpp"
#include "msidx/rlbwt.hpp"

namespace msidx {

struct SamplePoint {
  std::uint64_t text;    // SA[q] at a run boundary q
  std::uint64_t target;  // SA[q - 1] (pred) or SA[q + 1] (succ), kNone at the ends

  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

/// Samples for phi and its inverse, both sorted by text position. phi moves
/// in lockstep with p between consecutive run-start samples, phi^-1 between
/// consecutive run-end samples.
struct LocateSamples {
  std::vector<SamplePoint> pred;  // one per run start
  std::vector<SamplePoint> succ;  // one per run end

  friend bool operator==(const LocateSamples&, const LocateSamples&) = default;
};

LocateSamples build_locate_samples(const RlBwt& bwt);

class OccurrenceCursor;

class Locator {
 public:
  Locator(const LocateSamples& samples, const Slp& slp) : samples_(&samples), slp_(&slp) {}

  // SA[ISA[p] - 1], or kNone when p is the smallest suffix.
  std::uint64_t phi(std::uint64_t p) const;
  // SA[ISA[p] + 1], or kNone when p is the largest suffix.
  std::uint64_t phi_inv(std::uint64_t p) const;
  // LCP between suffix p and its lexicographic predecessor, via the grammar.
  std::uint64_t plcp(std::uint64_t p) const;

  // Every occurrence of pattern[i..j], given the pattern's matching
  // statistics. Yields nothing if ms[i] is shorter than the window.
  OccurrenceCursor locate(std::span<const MsEntry> ms, std::uint64_t i, std::uint64_t j) const;

 private:
  std::uint64_t text_size() const noexcept { return slp_->size(); }

  const LocateSamples* samples_;
  const Slp* slp_;
};

/// Lazy occurrence listing: walks phi upward from the known occurrence while
/// the PLCP stays long enough, then phi^-1 downward.
class OccurrenceCursor {
 public:
  std::optional<std::uint64_t> next();
  std::vector<std::uint64_t> collect();

 private:
  friend class Locator;
  enum class Phase { first, up, down, done };

  OccurrenceCursor(const Locator& loc, std::uint64_t anchor, std::uint64_t width, bool empty)
      : loc_(&loc), anchor_(anchor), current_(anchor), width_(width),
        phase_(empty ? Phase::done : Phase::first) {}

  const Locator* loc_;
  std::uint64_t anchor_;
  std::uint64_t current_;
  std::uint64_t width_;
  Phase phase_;
};

}  // namespace msidx
