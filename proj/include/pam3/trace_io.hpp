#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pam3/core.hpp"

namespace pam3 {

enum class Op : std::uint8_t { Read, Write };

struct TraceRecord {
    Op op = Op::Write;
    std::uint64_t address = 0;
    std::vector<std::uint8_t> payload;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

enum class OpFilter : std::uint8_t { All, Read, Write };

std::string_view opFilterName(OpFilter filter) noexcept;
std::optional<OpFilter> opFilterFromString(std::string_view name) noexcept;

/// Parses `R|W <0x-address> <hex-payload>` lines. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError with the 1-based line.
std::vector<TraceRecord> parseTextTrace(std::istream& in);

/// Writes records in the form parseTextTrace reads (lowercase hex).
void formatTextTrace(std::span<const TraceRecord> records, std::ostream& out);

/// Reads an entire binary stream into one WRITE record at address 0.
/// Throws EmptyInput if the stream holds no bytes.
std::vector<TraceRecord> parseRawTrace(std::istream& in);

std::vector<TraceRecord> filterRecords(std::span<const TraceRecord> records, OpFilter filter);

struct FrameStream {
    std::vector<Frame> frames;
    /// Zero bytes appended to complete the final 3-byte group (0, 1 or 2).
    std::uint8_t padBytes = 0;
};

/// Groups the concatenated payload bytes three at a time (X, Y, Z) and
/// modulates each group, zero-padding the last one.
FrameStream frameBytes(std::span<const std::uint8_t> bytes);
FrameStream frameRecords(std::span<const TraceRecord> records);

/// Demodulates every frame and strips the padding. Throws InvalidPair on a
/// frame that was not produced by modulate, and std::invalid_argument when
/// padBytes is out of range.
std::vector<std::uint8_t> unframe(const FrameStream& stream);

/// Pulls modulated frames from a binary stream in fixed-size reads, so the
/// input never has to fit in memory.
class RawFrameReader {
public:
    explicit RawFrameReader(std::istream& in, std::size_t chunkBytes = 1 << 16);

    /// Next frame, or nullopt at end of input.
    std::optional<Frame> next();

    /// Total payload bytes consumed so far.
    std::uint64_t bytesRead() const noexcept { return bytesRead_; }

    /// Padding applied to the final frame; meaningful once next() returned nullopt.
    std::uint8_t padBytes() const noexcept { return padBytes_; }

private:
    bool refill();

    std::istream& in_;
    std::vector<std::uint8_t> buffer_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    std::uint64_t bytesRead_ = 0;
    std::uint8_t padBytes_ = 0;
};

/// `byteCount` uniformly random bytes in one WRITE record. Deterministic per
/// seed on every platform. Throws std::invalid_argument if byteCount is 0.
std::vector<TraceRecord> generateRandomTrace(std::uint64_t byteCount, std::uint64_t seed);

/// Like generateRandomTrace but each byte is zero with probability
/// `zeroFraction` and uniformly random otherwise.
std::vector<TraceRecord> generateSparseTrace(std::uint64_t byteCount, double zeroFraction,
                                             std::uint64_t seed);

}  // namespace pam3
