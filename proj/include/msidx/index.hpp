#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include "msidx/core_types.hpp"
#include "msidx/grammar.hpp"
#include "msidx/locator.hpp"
#include "msidx/ms_engine.hpp"
#include "msidx/rlbwt.hpp"
#include "msidx/thresholds.hpp"

namespace msidx {

struct BuildOptions {
  InputMode mode = InputMode::raw;
  PfpParams pfp{};
  bool reversed = false;
  bool with_locate = false;
  bool with_thresholds = false;
};

namespace index_flags {
inline constexpr std::uint64_t reversed = 1u << 0;
inline constexpr std::uint64_t has_locate = 1u << 1;
inline constexpr std::uint64_t has_thresholds = 1u << 2;
inline constexpr std::uint64_t all = reversed | has_locate | has_thresholds;
}  // namespace index_flags

inline constexpr char kIndexMagic[8] = {'M', 'S', 'I', 'D', 'X', '0', '0', '1'};

struct IndexParams {
  std::uint64_t window = 0;
  std::uint64_t modulus = 0;
  std::array<std::uint64_t, 256> histogram{};
  std::uint64_t n = 0;
  std::uint64_t r = 0;
  std::uint64_t rule_count = 0;

  friend bool operator==(const IndexParams&, const IndexParams&) = default;
};

/// Everything a query needs: the run-length BWT, the grammar, and the
/// optional locate samples and thresholds. None of the full suffix arrays
/// survive construction.
///
/// Engines, locators and sessions handed out by an index point into it; the
/// index must outlive them and must not move while they are in use.
class MsIndex {
 public:
  static MsIndex build(const Text& text, const BuildOptions& options);
  static MsIndex build(std::span<const Byte> raw, const BuildOptions& options);

  Bytes serialize() const;
  static MsIndex deserialize(std::span<const Byte> bytes);
  void save(const std::filesystem::path& path) const;
  static MsIndex load(const std::filesystem::path& path);

  std::uint64_t flags() const noexcept { return flags_; }
  bool reversed() const noexcept { return flags_ & index_flags::reversed; }
  const IndexParams& params() const noexcept { return params_; }

  const RlBwt& bwt() const noexcept { return bwt_; }
  const Slp& slp() const noexcept { return slp_; }
  const std::optional<LocateSamples>& locate_samples() const noexcept { return samples_; }
  const std::optional<ThresholdTable>& thresholds() const noexcept { return thresholds_; }

  MsEngine engine() const;
  // Throws missing_section unless built with locate samples.
  Locator locator() const;
  // Throws invalid_argument unless built over the reversed text.
  StreamSession open_stream(Variant variant) const;

  std::vector<MsEntry> matching_statistics(const Pattern& pattern, Variant variant,
                                           QueryCounters* counters = nullptr) const;

 private:
  std::uint64_t flags_ = 0;
  IndexParams params_;
  RlBwt bwt_;
  Slp slp_;
  std::optional<LocateSamples> samples_;
  std::optional<ThresholdTable> thresholds_;
};

}  // namespace msidx
