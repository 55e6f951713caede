#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "msidx/core_types.hpp"
#include "msidx/grammar.hpp"
#include "msidx/rlbwt.hpp"
#include "msidx/thresholds.hpp"

namespace msidx {

enum class Variant {
  standard,   // LCE with subtree skipping
  naive,      // LCE by plain character extraction
  heuristic,  // nearer candidate first, second LCE only when needed
  two_pass,   // thresholds for pos, grammar random access for len
};

const char* to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

struct QueryCounters {
  std::uint64_t steps = 0;       // pattern characters processed
  std::uint64_t lf_hits = 0;     // BWT[q] matched the next character
  std::uint64_t mismatches = 0;
  std::uint64_t restarts = 0;
  std::uint64_t lce_calls = 0;
  std::uint64_t lce_char_compares = 0;
  std::uint64_t lce_skips = 0;
  std::uint64_t random_accesses = 0;  // second pass of two_pass only

  QueryCounters& operator+=(const QueryCounters& o) noexcept;
};

/// Per-query state: the current BWT row and the entry last emitted. Holds no
/// buffers, so a session is O(1) words regardless of pattern length.
struct MsCursor {
  std::uint64_t q = kNone;
  MsEntry last;
  Variant variant = Variant::standard;
};

/// One mismatch step of the first pass of two_pass, for cross-checking the
/// threshold rule against direct LCE comparison.
struct MismatchDecision {
  std::uint64_t q = 0;
  std::uint64_t prev = kNone;
  std::uint64_t next = kNone;
  std::uint64_t pos = 0;  // text position of the suffix at row q
  bool chose_prev = false;
};

class MsEngine {
 public:
  MsEngine(const RlBwt& bwt, const Slp& slp, const ThresholdTable* thresholds = nullptr)
      : bwt_(&bwt), slp_(&slp), thresholds_(thresholds) {}

  const RlBwt& bwt() const noexcept { return *bwt_; }
  const Slp& slp() const noexcept { return *slp_; }
  bool has_thresholds() const noexcept { return thresholds_ != nullptr; }

  // Starts a fresh match at the first copy of c in the BWT; (kNone, 0) if c
  // does not occur.
  MsEntry restart(MsCursor& cur, Byte c, QueryCounters* counters = nullptr) const;

  // Extends the processed suffix one character to the left.
  MsEntry push(MsCursor& cur, Byte c, QueryCounters* counters = nullptr) const;

  // Right-to-left single pass. Not valid for Variant::two_pass.
  std::vector<MsEntry> one_pass(const Pattern& pattern, Variant variant,
                                QueryCounters* counters = nullptr) const;

  std::vector<MsEntry> two_pass(const Pattern& pattern, QueryCounters* counters = nullptr,
                                std::vector<MismatchDecision>* trace = nullptr) const;

  std::vector<MsEntry> compute(const Pattern& pattern, Variant variant,
                               QueryCounters* counters = nullptr) const;

 private:
  std::uint64_t extension(Variant v, std::uint64_t a, std::uint64_t b, QueryCounters* c) const;

  const RlBwt* bwt_;
  const Slp* slp_;
  const ThresholdTable* thresholds_;
};

/// Left-to-right matching over an index of the reversed text: each pushed
/// byte yields the longest suffix of the stream so far occurring in the text,
/// with pos in forward text coordinates.
class StreamSession {
 public:
  StreamSession(MsEngine engine, Variant variant);

  MsEntry push(Byte c);
  const QueryCounters& counters() const noexcept { return counters_; }

 private:
  MsEngine engine_;
  MsCursor cursor_;
  QueryCounters counters_;
};

struct Mem {
  std::uint64_t i = 0;
  std::uint64_t pos = 0;
  std::uint64_t len = 0;

  friend bool operator==(const Mem&, const Mem&) = default;
};

inline constexpr std::uint64_t kDefaultMinMemLength = 25;

// Left-maximal entries with len >= min_len. Right-maximality is built in.
std::vector<Mem> extract_mems(std::span<const MsEntry> ms, std::uint64_t min_len);

}  // namespace msidx
