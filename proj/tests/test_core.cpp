#include <doctest.h>

#include <random>

#include "pam3/core.hpp"
#include "pam3/errors.hpp"
#include "test_support.hpp"

using namespace pam3;
using pam3::test::frameFromLevels;

namespace {

// Reference pair for a 3-bit value: lexicographic walk over the nine
// (a, b) level pairs with (0, 0) skipped.
std::pair<int, int> referencePair(unsigned v) {
    const unsigned idx = v < 4 ? v : v + 1;
    return {static_cast<int>(idx / 3) - 1, static_cast<int>(idx % 3) - 1};
}

Frame referenceModulate(Word24 w) {
    Frame f;
    for (int i = 0; i < 8; ++i) {
        const int bit = 7 - i;
        const unsigned v = (((w.x >> bit) & 1u) << 2) | (((w.y >> bit) & 1u) << 1) | ((w.z >> bit) & 1u);
        const auto [a, b] = referencePair(v);
        f.lineA[i] = *symbolFromLevel(a);
        f.lineB[i] = *symbolFromLevel(b);
    }
    return f;
}

}  // namespace

TEST_CASE("modulate maps the table endpoints") {
    CHECK(modulate({0x00, 0x00, 0x00}) == uniformFrame(Symbol::Neg));
    CHECK(modulate({0xFF, 0xFF, 0xFF}) == uniformFrame(Symbol::Pos));

    const Frame f = modulate({0x00, 0x00, 0xFF});
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(f.lineA[i] == Symbol::Neg);
        CHECK(f.lineB[i] == Symbol::Zero);
    }
}

TEST_CASE("modulate matches the lexicographic reference on every column value") {
    // One column at a time, each of the 8 symbols, at every bit position.
    for (unsigned v = 0; v < 8; ++v) {
        for (int col = 0; col < 8; ++col) {
            const auto bit = static_cast<std::uint8_t>(0x80u >> col);
            const Word24 w{static_cast<std::uint8_t>((v & 4) ? bit : 0), static_cast<std::uint8_t>((v & 2) ? bit : 0),
                           static_cast<std::uint8_t>((v & 1) ? bit : 0)};
            CHECK(modulate(w) == referenceModulate(w));
        }
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const auto r = rng();
        const Word24 w{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(r >> 8),
                       static_cast<std::uint8_t>(r >> 16)};
        REQUIRE(modulate(w) == referenceModulate(w));
    }
}

TEST_CASE("modulate never emits the (0,0) pair") {
    for (std::uint32_t v = 0; v < (1u << 24); v += 4099) {
        const Frame f = modulate({static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                                  static_cast<std::uint8_t>(v)});
        for (std::size_t i = 0; i < 8; ++i) {
            REQUIRE_FALSE((f.lineA[i] == Symbol::Zero && f.lineB[i] == Symbol::Zero));
        }
    }
}

TEST_CASE("demodulate inverts modulate") {
    CHECK(demodulate(uniformFrame(Symbol::Neg)) == Word24{0x00, 0x00, 0x00});
    CHECK(demodulate(uniformFrame(Symbol::Pos)) == Word24{0xFF, 0xFF, 0xFF});

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100000; ++i) {
        const auto r = rng();
        const Word24 w{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(r >> 8),
                       static_cast<std::uint8_t>(r >> 16)};
        REQUIRE(demodulate(modulate(w)) == w);
    }
}

TEST_CASE("demodulate rejects the reserved pair") {
    Frame f = uniformFrame(Symbol::Neg);
    f.lineA[5] = Symbol::Zero;
    f.lineB[5] = Symbol::Zero;
    CHECK_THROWS_AS(demodulate(f), InvalidPair);
    try {
        demodulate(f);
    } catch (const InvalidPair& e) {
        CHECK(e.column() == 5);
    }
}

TEST_CASE("countSymbols") {
    CHECK(countSymbols(uniformFrame(Symbol::Neg)) == SymbolCounts{16, 0, 0});
    CHECK(countSymbols(test::hand655()) == SymbolCounts{6, 5, 5});
    CHECK(countSymbols(modulate({0x00, 0x00, 0xFF})) == SymbolCounts{8, 8, 0});

    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) REQUIRE(countSymbols(test::randomFrame(rng)).total() == 16);
}

TEST_CASE("uniform words give a 6:4:6 symbol split") {
    // Exact fractions from the eight table pairs.
    SymbolCounts table;
    for (unsigned v = 0; v < 8; ++v) {
        const auto [a, b] = referencePair(v);
        for (int level : {a, b}) {
            if (level < 0) ++table.neg;
            else if (level == 0) ++table.zero;
            else ++table.pos;
        }
    }
    REQUIRE(table == SymbolCounts{6, 4, 6});

    SymbolCounts all;
    for (std::uint32_t v = 0; v < (1u << 24); v += 7) {
        all += countSymbols(modulate({static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                                      static_cast<std::uint8_t>(v)}));
    }
    const double n = static_cast<double>(all.total());
    CHECK(static_cast<double>(all.neg) / n == doctest::Approx(6.0 / 16).epsilon(0.01));
    CHECK(static_cast<double>(all.zero) / n == doctest::Approx(4.0 / 16).epsilon(0.01));
    CHECK(static_cast<double>(all.pos) / n == doctest::Approx(6.0 / 16).epsilon(0.01));
}

TEST_CASE("symbolFromLevel only accepts the three levels") {
    CHECK(symbolFromLevel(-1) == Symbol::Neg);
    CHECK(symbolFromLevel(0) == Symbol::Zero);
    CHECK(symbolFromLevel(1) == Symbol::Pos);
    CHECK_FALSE(symbolFromLevel(2).has_value());
    CHECK_FALSE(symbolFromLevel(-2).has_value());
}
