#include "msidx/core_types.hpp"

#include <algorithm>
#include <string>

namespace msidx {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::forbidden_byte: return "forbidden byte";
    case ErrorCode::empty_input: return "empty input";
    case ErrorCode::malformed_fasta: return "malformed FASTA";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::out_of_bounds: return "out of bounds";
    case ErrorCode::rank_out_of_range: return "rank out of range";
    case ErrorCode::not_a_boundary: return "not a run boundary";
    case ErrorCode::both_none: return "character absent from BWT";
    case ErrorCode::missing_section: return "missing index section";
    case ErrorCode::format: return "bad index format";
    case ErrorCode::version_mismatch: return "index version mismatch";
    case ErrorCode::io: return "I/O error";
  }
  return "unknown error";
}

namespace {

bool reserved(Byte b) noexcept {
  return b == kSentinel || b == kRecordSeparator || b == kPadding;
}

[[noreturn]] void forbidden(Byte b, std::uint64_t pos) {
  throw Error(ErrorCode::forbidden_byte,
              "forbidden byte 0x0" + std::to_string(b) + " at offset " + std::to_string(pos),
              pos);
}

}  // namespace

Text::Text(Bytes bytes) : bytes_(std::move(bytes)) {
  std::array<bool, 256> seen{};
  for (Byte b : bytes_) seen[b] = true;
  sigma_ = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

std::array<std::uint64_t, 256> Text::histogram() const noexcept {
  std::array<std::uint64_t, 256> h{};
  for (Byte b : bytes_) ++h[b];
  return h;
}

Text Text::reversed() const {
  Bytes out(bytes_.rbegin() + 1, bytes_.rend());
  out.push_back(kSentinel);
  return Text(std::move(out));
}

Text Text::from_terminated(Bytes bytes) {
  if (bytes.size() < 2) throw Error(ErrorCode::empty_input, "text needs at least one character");
  if (bytes.back() != kSentinel) throw Error(ErrorCode::format, "text is not sentinel-terminated");
  for (std::size_t i = 0; i + 1 < bytes.size(); ++i) {
    if (bytes[i] == kSentinel || bytes[i] == kPadding) forbidden(bytes[i], i);
  }
  return Text(std::move(bytes));
}

Text validate_text(std::span<const Byte> raw, InputMode mode) {
  if (raw.empty()) throw Error(ErrorCode::empty_input, "input is empty");

  Bytes out;
  out.reserve(raw.size() + 1);

  if (mode == InputMode::raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (reserved(raw[i])) forbidden(raw[i], i);
      out.push_back(raw[i]);
    }
  } else {
    // Records are '>' header lines followed by sequence lines.
    std::size_t i = 0;
    std::size_t records = 0;
    bool record_has_sequence = false;
    while (i < raw.size()) {
      std::size_t eol = i;
      while (eol < raw.size() && raw[eol] != '\n') ++eol;
      std::size_t end = eol;
      if (end > i && raw[end - 1] == '\r') --end;

      if (end > i && raw[i] == '>') {
        if (records > 0 && !record_has_sequence)
          throw Error(ErrorCode::malformed_fasta,
                      "record " + std::to_string(records) + " has no sequence");
        if (records > 0) out.push_back(kRecordSeparator);
        ++records;
        record_has_sequence = false;
      } else if (end > i) {
        if (records == 0)
          throw Error(ErrorCode::malformed_fasta, "sequence data before the first header");
        for (std::size_t k = i; k < end; ++k) {
          if (reserved(raw[k])) forbidden(raw[k], k);
          out.push_back(raw[k]);
        }
        record_has_sequence = true;
      }
      i = eol + 1;
    }
    if (records == 0) throw Error(ErrorCode::malformed_fasta, "no FASTA header found");
    if (!record_has_sequence)
      throw Error(ErrorCode::malformed_fasta,
                  "record " + std::to_string(records) + " has no sequence");
  }

  out.push_back(kSentinel);
  return Text(std::move(out));
}

Text validate_text(std::string_view raw, InputMode mode) {
  return validate_text(as_bytes(raw), mode);
}

Pattern::Pattern(std::span<const Byte> bytes) : bytes_(bytes.begin(), bytes.end()) {
  if (bytes_.empty()) throw Error(ErrorCode::empty_input, "pattern is empty");
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    if (bytes_[i] == kSentinel || bytes_[i] == kRecordSeparator) forbidden(bytes_[i], i);
  }
}

Pattern::Pattern(std::string_view bytes) : Pattern(as_bytes(bytes)) {}

}  // namespace msidx
