#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "msidx/error.hpp"

namespace msidx {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;

inline constexpr Byte kSentinel = 0x00;
inline constexpr Byte kRecordSeparator = 0x01;
// Used only to pad the text before prefix-free parsing; never part of a Text.
inline constexpr Byte kPadding = 0x02;

// Marks an undefined text position or BWT row.
inline constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

enum class InputMode { raw, fasta };

/// A sentinel-terminated corpus. The sentinel 0x00 occurs exactly once, as
/// the last byte. 0x01 only appears as a FASTA record separator.
class Text {
 public:
  Text() = default;

  std::span<const Byte> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  Byte operator[](std::size_t i) const noexcept { return bytes_[i]; }
  // Number of distinct byte values, the sentinel included.
  std::size_t alphabet_size() const noexcept { return sigma_; }
  std::array<std::uint64_t, 256> histogram() const noexcept;

  // Bytes without the trailing sentinel.
  std::span<const Byte> body() const noexcept {
    return std::span<const Byte>(bytes_).first(bytes_.size() - 1);
  }

  // Text whose body is the reverse of this body; the sentinel stays last.
  Text reversed() const;

  // Wraps already-terminated bytes, re-checking every invariant.
  static Text from_terminated(Bytes bytes);

  friend bool operator==(const Text&, const Text&) = default;

 private:
  explicit Text(Bytes bytes);

  Bytes bytes_;
  std::size_t sigma_ = 0;

  friend Text validate_text(std::span<const Byte>, InputMode);
};

/// Raw mode appends the sentinel. FASTA mode drops header lines and line
/// breaks, joins records with 0x01, then appends the sentinel.
Text validate_text(std::span<const Byte> raw, InputMode mode);
Text validate_text(std::string_view raw, InputMode mode);

/// A query string: at least one byte, no 0x00 or 0x01.
class Pattern {
 public:
  explicit Pattern(std::span<const Byte> bytes);
  explicit Pattern(std::string_view bytes);

  std::span<const Byte> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  Byte operator[](std::size_t i) const noexcept { return bytes_[i]; }

 private:
  Bytes bytes_;
};

/// One matching-statistics cell: the longest prefix of the pattern suffix
/// starting here that occurs in the text, and one place it occurs.
struct MsEntry {
  std::uint64_t pos = kNone;
  std::uint64_t len = 0;

  friend bool operator==(const MsEntry&, const MsEntry&) = default;
};

inline std::span<const Byte> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const Byte*>(s.data()), s.size()};
}

}  // namespace msidx
