#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "msidx/core_types.hpp"

namespace msidx {

// ---------------------------------------------------------------------------
// Prefix-free parsing

struct PfpParams {
  std::uint64_t window = 10;
  std::uint64_t modulus = 100;
};

inline constexpr PfpParams kTestPfpParams{4, 11};

/// Dictionary and parse of the padded text (window copies of 0x02 on both
/// sides). Consecutive phrases overlap by exactly `window` bytes.
struct PfpOutput {
  std::uint64_t window = 0;
  std::uint64_t modulus = 0;
  std::vector<Bytes> dictionary;  // sorted, distinct
  std::vector<std::uint32_t> parse;
};

// Phrase breaks fall after every window, lying inside the text, whose
// Karp-Rabin fingerprint (base 256, modulo 2^61 - 1) is 0 modulo `modulus`.
PfpOutput pfp_parse(const Text& text, PfpParams params);

// Inverse of pfp_parse: the padded text.
Bytes pfp_reconstruct(const PfpOutput& pfp);

// ---------------------------------------------------------------------------
// Straight-line program

using RuleId = std::uint32_t;

struct Rule {
  static constexpr RuleId kTerminal = 0xFFFFFFFFu;

  RuleId left;   // the byte value for terminals
  RuleId right;  // kTerminal for terminals

  bool terminal() const noexcept { return right == kTerminal; }
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Grammar with a single root whose expansion is the whole text. Rules are
/// topologically ordered: children always have smaller ids than parents.
class Slp {
 public:
  Slp() = default;
  // Checks the ordering and computes expansion lengths.
  Slp(std::vector<Rule> rules, RuleId root);

  std::span<const Rule> rules() const noexcept { return rules_; }
  RuleId root() const noexcept { return root_; }
  std::uint64_t size() const noexcept { return exp_len_.empty() ? 0 : exp_len_[root_]; }
  std::uint64_t rule_count() const noexcept { return rules_.size(); }
  std::uint64_t expansion_length(RuleId r) const noexcept { return exp_len_[r]; }
  std::uint64_t depth() const noexcept { return depth_; }

  Byte access(std::uint64_t i) const;
  Bytes extract(std::uint64_t i, std::uint64_t len) const;
  Bytes expand() const { return extract(0, size()); }

 private:
  std::vector<Rule> rules_;
  std::vector<std::uint64_t> exp_len_;
  RuleId root_ = 0;
  std::uint64_t depth_ = 0;
};

/// Accumulates rules, reusing the id of any pair that already exists.
class SlpBuilder {
 public:
  RuleId terminal(Byte b);
  RuleId pair(RuleId left, RuleId right);
  std::size_t size() const noexcept { return rules_.size(); }
  Slp finish(RuleId root) &&;

 private:
  std::vector<Rule> rules_;
  std::unordered_map<std::uint64_t, RuleId> pairs_;
  std::unordered_map<Byte, RuleId> terminals_;
};

struct RepairResult {
  RuleId root = 0;
  std::size_t replacement_rules = 0;  // new rules made by pair replacement
  std::size_t chaining_rules = 0;     // new rules joining the leftover sequence
};

// RePair: repeatedly replace the most frequent adjacent pair (lowest pair
// wins ties) occurring at least twice without overlap, then join what is left
// into one root by pairing neighbours level by level from the left.
RepairResult repair_compress(std::span<const RuleId> sequence, SlpBuilder& builder);

// Like repair_compress but over several independent sequences at once: pairs
// never straddle two sequences. Returns one root per sequence.
std::vector<RuleId> repair_compress_many(std::span<const std::vector<RuleId>> sequences,
                                         SlpBuilder& builder, RepairResult* totals = nullptr);

// RePair over the dictionary phrases, then over the parse, then substitution.
Slp build_slp(const Text& text, PfpParams params);

// ---------------------------------------------------------------------------
// Longest common extension

struct LceStats {
  std::uint64_t calls = 0;
  std::uint64_t char_compares = 0;
  std::uint64_t skips = 0;  // subtrees matched without expansion
};

// Walks both suffixes in lockstep and skips every pair of aligned subtrees
// carrying the same rule id.
std::uint64_t lce(const Slp& slp, std::uint64_t i, std::uint64_t j, LceStats* stats = nullptr);

// Character-by-character extraction without skipping.
std::uint64_t lce_naive(const Slp& slp, std::uint64_t i, std::uint64_t j,
                        LceStats* stats = nullptr);

}  // namespace msidx
