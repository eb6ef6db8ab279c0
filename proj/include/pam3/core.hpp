#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace pam3 {

/// One PAM-3 line level. The underlying value is the normalized level itself.
enum class Symbol : std::int8_t { Neg = -1, Zero = 0, Pos = 1 };

constexpr int level(Symbol s) noexcept { return static_cast<int>(s); }

/// Index into per-level arrays ordered (-1, 0, +1).
constexpr std::size_t levelIndex(Symbol s) noexcept { return static_cast<std::size_t>(level(s) + 1); }

constexpr Symbol symbolAt(std::size_t index) noexcept {
    return static_cast<Symbol>(static_cast<int>(index) - 1);
}

inline constexpr std::array<Symbol, 3> kAllSymbols{Symbol::Neg, Symbol::Zero, Symbol::Pos};

/// Returns the symbol for an integer level, or nullopt if it is not -1, 0 or +1.
constexpr std::optional<Symbol> symbolFromLevel(int value) noexcept {
    if (value < -1 || value > 1) return std::nullopt;
    return static_cast<Symbol>(value);
}

/// Three 8-bit word lines X, Y, Z.
struct Word24 {
    std::uint8_t x = 0;
    std::uint8_t y = 0;
    std::uint8_t z = 0;

    friend constexpr bool operator==(const Word24&, const Word24&) = default;
};

inline constexpr std::size_t kSymbolsPerLine = 8;
inline constexpr std::size_t kSymbolsPerFrame = 2 * kSymbolsPerLine;

using Line = std::array<Symbol, kSymbolsPerLine>;

/// Two PAM-3 lines of eight symbols each.
struct Frame {
    Line lineA{};
    Line lineB{};

    friend constexpr bool operator==(const Frame&, const Frame&) = default;
};

/// Builds a frame where every symbol on both lines is `s`.
constexpr Frame uniformFrame(Symbol s) noexcept {
    Frame f;
    f.lineA.fill(s);
    f.lineB.fill(s);
    return f;
}

/// Occurrence counts of each level. 64-bit so it also serves for trace totals.
struct SymbolCounts {
    std::uint64_t neg = 0;
    std::uint64_t zero = 0;
    std::uint64_t pos = 0;

    constexpr std::uint64_t total() const noexcept { return neg + zero + pos; }

    constexpr std::uint64_t of(Symbol s) const noexcept {
        switch (s) {
            case Symbol::Neg: return neg;
            case Symbol::Zero: return zero;
            case Symbol::Pos: return pos;
        }
        return 0;
    }

    constexpr std::array<std::uint64_t, 3> asArray() const noexcept { return {neg, zero, pos}; }

    constexpr SymbolCounts& operator+=(const SymbolCounts& o) noexcept {
        neg += o.neg;
        zero += o.zero;
        pos += o.pos;
        return *this;
    }

    friend constexpr bool operator==(const SymbolCounts&, const SymbolCounts&) = default;
};

/// Maps column i (bit 7-i of each byte, MSB first) through the fixed
/// 3-bit-to-pair table. Never emits the (0, 0) pair.
Frame modulate(const Word24& word) noexcept;

/// Exact inverse of modulate. Throws InvalidPair on a (0, 0) column.
Word24 demodulate(const Frame& frame);

SymbolCounts countSymbols(const Frame& frame) noexcept;

}  // namespace pam3
