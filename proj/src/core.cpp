#include "pam3/core.hpp"

#include "pam3/errors.hpp"

namespace pam3 {

namespace {

struct Pair {
    Symbol a;
    Symbol b;
};

// 3-bit symbol (x y z, x most significant) -> (lineA, lineB).
constexpr std::array<Pair, 8> kPairTable{{
    {Symbol::Neg, Symbol::Neg},    // 000
    {Symbol::Neg, Symbol::Zero},   // 001
    {Symbol::Neg, Symbol::Pos},    // 010
    {Symbol::Zero, Symbol::Neg},   // 011
    {Symbol::Zero, Symbol::Pos},   // 100
    {Symbol::Pos, Symbol::Neg},    // 101
    {Symbol::Pos, Symbol::Zero},   // 110
    {Symbol::Pos, Symbol::Pos},    // 111
}};

// Indexed by 3 * levelIndex(a) + levelIndex(b); -1 marks the reserved (0,0) pair.
constexpr std::array<int, 9> kInverseTable = [] {
    std::array<int, 9> inv{};
    inv.fill(-1);
    for (std::size_t v = 0; v < kPairTable.size(); ++v) {
        inv[3 * levelIndex(kPairTable[v].a) + levelIndex(kPairTable[v].b)] = static_cast<int>(v);
    }
    return inv;
}();

static_assert(kInverseTable[3 * 1 + 1] == -1, "(0,0) must stay unused");

}  // namespace

Frame modulate(const Word24& word) noexcept {
    Frame f;
    for (std::size_t i = 0; i < kSymbolsPerLine; ++i) {
        const unsigned shift = 7 - static_cast<unsigned>(i);
        const unsigned v = (((word.x >> shift) & 1u) << 2) | (((word.y >> shift) & 1u) << 1) |
                           ((word.z >> shift) & 1u);
        f.lineA[i] = kPairTable[v].a;
        f.lineB[i] = kPairTable[v].b;
    }
    return f;
}

Word24 demodulate(const Frame& frame) {
    Word24 w;
    for (std::size_t i = 0; i < kSymbolsPerLine; ++i) {
        const int v = kInverseTable[3 * levelIndex(frame.lineA[i]) + levelIndex(frame.lineB[i])];
        if (v < 0) throw InvalidPair(i);
        const unsigned shift = 7 - static_cast<unsigned>(i);
        w.x = static_cast<std::uint8_t>(w.x | (((v >> 2) & 1) << shift));
        w.y = static_cast<std::uint8_t>(w.y | (((v >> 1) & 1) << shift));
        w.z = static_cast<std::uint8_t>(w.z | ((v & 1) << shift));
    }
    return w;
}

SymbolCounts countSymbols(const Frame& frame) noexcept {
    std::array<std::uint64_t, 3> c{};
    for (Symbol s : frame.lineA) ++c[levelIndex(s)];
    for (Symbol s : frame.lineB) ++c[levelIndex(s)];
    return {c[0], c[1], c[2]};
}

}  // namespace pam3
