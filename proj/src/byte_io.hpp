#pragma once

#include <cstdint>
#include <span>

#include "msidx/core_types.hpp"

namespace msidx::detail {

// Fixed-width little-endian 64-bit fields.
class ByteWriter {
 public:
  void u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out_.push_back(static_cast<Byte>(v >> (8 * k)));
  }
  void raw(std::span<const Byte> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  void blob(const Bytes& bytes) {
    u64(bytes.size());
    raw(bytes);
  }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const Byte> in) : in_(in) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= std::uint64_t{in_[at_ + k]} << (8 * k);
    at_ += 8;
    return v;
  }
  std::span<const Byte> raw(std::uint64_t len) {
    need(len);
    auto s = in_.subspan(at_, len);
    at_ += len;
    return s;
  }
  std::span<const Byte> blob() { return raw(u64()); }
  // Element count that must fit in the remaining bytes at `width` each.
  std::uint64_t count(std::uint64_t width) {
    const auto c = u64();
    if (width != 0 && c > remaining() / width) throw Error(ErrorCode::format, "truncated index section");
    return c;
  }
  std::uint64_t remaining() const noexcept { return in_.size() - at_; }
  bool done() const noexcept { return at_ == in_.size(); }

 private:
  void need(std::uint64_t len) const {
    if (len > remaining()) throw Error(ErrorCode::format, "truncated index file");
  }

  std::span<const Byte> in_;
  std::size_t at_ = 0;
};

}  // namespace msidx::detail
