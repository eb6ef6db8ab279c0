#include "pam3/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pam3/errors.hpp"

namespace pam3 {

std::string_view opFilterName(OpFilter filter) noexcept {
    switch (filter) {
        case OpFilter::All: return "all";
        case OpFilter::Read: return "read";
        case OpFilter::Write: return "write";
    }
    return "all";
}

std::optional<OpFilter> opFilterFromString(std::string_view name) noexcept {
    for (OpFilter f : {OpFilter::All, OpFilter::Read, OpFilter::Write}) {
        if (opFilterName(f) == name) return f;
    }
    return std::nullopt;
}

namespace {

int hexDigit(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::uint64_t parseAddress(std::string_view field, std::size_t lineNo) {
    if (field.size() < 3 || field[0] != '0' || (field[1] != 'x' && field[1] != 'X')) {
        throw ParseError(lineNo, "address must be 0x-prefixed hex: '" + std::string(field) + "'");
    }
    std::uint64_t value = 0;
    const char* first = field.data() + 2;
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value, 16);
    if (ec == std::errc::result_out_of_range) throw ParseError(lineNo, "address exceeds 64 bits");
    if (ec != std::errc() || ptr != last) {
        throw ParseError(lineNo, "non-hex character in address '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::uint8_t> parsePayload(std::string_view field, std::size_t lineNo) {
    if (field.size() % 2 != 0) throw ParseError(lineNo, "payload has odd hex length");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(field.size() / 2);
    for (std::size_t i = 0; i < field.size(); i += 2) {
        const int hi = hexDigit(field[i]);
        const int lo = hexDigit(field[i + 1]);
        if (hi < 0 || lo < 0) throw ParseError(lineNo, "non-hex character in payload");
        bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return bytes;
}

}  // namespace

std::vector<TraceRecord> parseTextTrace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::istringstream fields(line);
        std::string op, address, payload, extra;
        if (!(fields >> op) || op[0] == '#') continue;

        TraceRecord rec;
        if (op == "R") {
            rec.op = Op::Read;
        } else if (op == "W") {
            rec.op = Op::Write;
        } else {
            throw ParseError(lineNo, "unknown op '" + op + "', expected R or W");
        }
        if (!(fields >> address >> payload)) throw ParseError(lineNo, "expected '<op> <address> <payload>'");
        if (fields >> extra) throw ParseError(lineNo, "unexpected trailing field '" + extra + "'");

        rec.address = parseAddress(address, lineNo);
        rec.payload = parsePayload(payload, lineNo);
        records.push_back(std::move(rec));
    }
    if (in.bad()) throw ParseError(lineNo, "read failure");
    return records;
}

void formatTextTrace(std::span<const TraceRecord> records, std::ostream& out) {
    static constexpr char kHex[] = "0123456789abcdef";
    for (const auto& rec : records) {
        out << (rec.op == Op::Read ? 'R' : 'W') << " 0x" << std::hex << rec.address << std::dec << ' ';
        for (std::uint8_t b : rec.payload) out << kHex[b >> 4] << kHex[b & 0xF];
        out << '\n';
    }
}

std::vector<TraceRecord> parseRawTrace(std::istream& in) {
    TraceRecord rec;
    rec.op = Op::Write;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        rec.payload.insert(rec.payload.end(), buf, buf + in.gcount());
    }
    if (rec.payload.empty()) throw EmptyInput("raw trace is empty");
    std::vector<TraceRecord> out;
    out.push_back(std::move(rec));
    return out;
}

std::vector<TraceRecord> filterRecords(std::span<const TraceRecord> records, OpFilter filter) {
    std::vector<TraceRecord> out;
    for (const auto& rec : records) {
        if (filter == OpFilter::All || (filter == OpFilter::Read && rec.op == Op::Read) ||
            (filter == OpFilter::Write && rec.op == Op::Write)) {
            out.push_back(rec);
        }
    }
    return out;
}

namespace {

// Feeds bytes three at a time into modulated frames.
class Framer {
public:
    explicit Framer(std::vector<Frame>& frames) : frames_(frames) {}

    void push(std::uint8_t b) {
        group_[fill_++] = b;
        if (fill_ == 3) {
            frames_.push_back(modulate({group_[0], group_[1], group_[2]}));
            fill_ = 0;
        }
    }

    std::uint8_t finish() {
        if (fill_ == 0) return 0;
        const auto pad = static_cast<std::uint8_t>(3 - fill_);
        while (fill_ != 0) push(0);
        return pad;
    }

private:
    std::vector<Frame>& frames_;
    std::array<std::uint8_t, 3> group_{};
    std::size_t fill_ = 0;
};

}  // namespace

FrameStream frameBytes(std::span<const std::uint8_t> bytes) {
    FrameStream fs;
    fs.frames.reserve((bytes.size() + 2) / 3);
    Framer framer(fs.frames);
    for (std::uint8_t b : bytes) framer.push(b);
    fs.padBytes = framer.finish();
    return fs;
}

FrameStream frameRecords(std::span<const TraceRecord> records) {
    std::size_t total = 0;
    for (const auto& rec : records) total += rec.payload.size();
    FrameStream fs;
    fs.frames.reserve((total + 2) / 3);
    Framer framer(fs.frames);
    for (const auto& rec : records) {
        for (std::uint8_t b : rec.payload) framer.push(b);
    }
    fs.padBytes = framer.finish();
    return fs;
}

std::vector<std::uint8_t> unframe(const FrameStream& stream) {
    if (stream.padBytes > 2) throw std::invalid_argument("padBytes must be 0, 1 or 2");
    if (stream.frames.empty() && stream.padBytes != 0) {
        throw std::invalid_argument("padding declared on an empty frame stream");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(stream.frames.size() * 3);
    for (const Frame& f : stream.frames) {
        const Word24 w = demodulate(f);
        bytes.insert(bytes.end(), {w.x, w.y, w.z});
    }
    bytes.resize(bytes.size() - stream.padBytes);
    return bytes;
}

RawFrameReader::RawFrameReader(std::istream& in, std::size_t chunkBytes)
    : in_(in), buffer_(std::max<std::size_t>(chunkBytes, 3)) {}

bool RawFrameReader::refill() {
    // Keep any leftover partial group at the front of the buffer.
    const std::size_t left = end_ - pos_;
    std::copy(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_),
              buffer_.begin() + static_cast<std::ptrdiff_t>(end_), buffer_.begin());
    pos_ = 0;
    end_ = left;
    while (end_ < 3 && in_) {
        in_.read(reinterpret_cast<char*>(buffer_.data() + end_),
                 static_cast<std::streamsize>(buffer_.size() - end_));
        const auto got = static_cast<std::size_t>(in_.gcount());
        end_ += got;
        bytesRead_ += got;
        if (got == 0) break;
    }
    return end_ > 0;
}

std::optional<Frame> RawFrameReader::next() {
    if (end_ - pos_ < 3 && !refill()) return std::nullopt;
    std::array<std::uint8_t, 3> g{};
    const std::size_t avail = std::min<std::size_t>(3, end_ - pos_);
    for (std::size_t i = 0; i < avail; ++i) g[i] = buffer_[pos_ + i];
    pos_ += avail;
    if (avail < 3) padBytes_ = static_cast<std::uint8_t>(3 - avail);
    return modulate({g[0], g[1], g[2]});
}

namespace {

// Bytes come straight from the engine output, which the standard fixes
// exactly, so traces are identical across standard libraries.
class ByteSource {
public:
    explicit ByteSource(std::uint64_t seed) : engine_(seed) {}

    std::uint8_t byte() {
        if (left_ == 0) {
            word_ = engine_();
            left_ = 8;
        }
        const auto b = static_cast<std::uint8_t>(word_ & 0xFF);
        word_ >>= 8;
        --left_;
        return b;
    }

    /// Uniform double in [0, 1) from the top 53 bits of one engine draw.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

}  // namespace

std::vector<TraceRecord> generateRandomTrace(std::uint64_t byteCount, std::uint64_t seed) {
    if (byteCount == 0) throw std::invalid_argument("byteCount must be at least 1");
    ByteSource src(seed);
    TraceRecord rec;
    rec.payload.resize(byteCount);
    for (auto& b : rec.payload) b = src.byte();
    return {std::move(rec)};
}

std::vector<TraceRecord> generateSparseTrace(std::uint64_t byteCount, double zeroFraction,
                                             std::uint64_t seed) {
    if (byteCount == 0) throw std::invalid_argument("byteCount must be at least 1");
    if (!(zeroFraction >= 0.0 && zeroFraction <= 1.0)) {
        throw std::invalid_argument("zeroFraction must lie in [0, 1]");
    }
    ByteSource src(seed);
    TraceRecord rec;
    rec.payload.resize(byteCount);
    for (auto& b : rec.payload) b = src.unit() < zeroFraction ? 0 : src.byte();
    return {std::move(rec)};
}

}  // namespace pam3
