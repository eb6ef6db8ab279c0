#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pam3/core.hpp"
#include "pam3/power.hpp"

namespace pam3 {

enum class AlgorithmTag : std::uint8_t { None, DBI, MF, SORT };

inline constexpr std::array<AlgorithmTag, 4> kAllAlgorithms{AlgorithmTag::None, AlgorithmTag::DBI,
                                                            AlgorithmTag::MF, AlgorithmTag::SORT};

/// "NONE", "DBI", "MF" or "SORT".
std::string_view algorithmName(AlgorithmTag tag) noexcept;

/// Case-insensitive inverse of algorithmName.
std::optional<AlgorithmTag> algorithmFromString(std::string_view name) noexcept;

/// Number of flag wires carried alongside the data lines.
constexpr unsigned flagWidth(AlgorithmTag tag) noexcept {
    switch (tag) {
        case AlgorithmTag::None: return 0;
        case AlgorithmTag::DBI: return 1;
        case AlgorithmTag::MF: return 2;
        case AlgorithmTag::SORT: return 3;
    }
    return 0;
}

/// Largest valid flag value: MF reserves 0b11 and SORT reserves 6 and 7.
constexpr std::uint8_t maxFlag(AlgorithmTag tag) noexcept {
    switch (tag) {
        case AlgorithmTag::None: return 0;
        case AlgorithmTag::DBI: return 1;
        case AlgorithmTag::MF: return 2;
        case AlgorithmTag::SORT: return 5;
    }
    return 0;
}

struct EncodedFrame {
    Frame frame;
    AlgorithmTag algorithm = AlgorithmTag::None;
    std::uint8_t flag = 0;

    friend constexpr bool operator==(const EncodedFrame&, const EncodedFrame&) = default;
};

/// A bijection over {-1, 0, +1}. images[levelIndex(s)] is where s is sent.
struct PermutationCode {
    std::uint8_t index = 0;
    std::array<Symbol, 3> images{Symbol::Neg, Symbol::Zero, Symbol::Pos};

    constexpr Symbol apply(Symbol s) const noexcept { return images[levelIndex(s)]; }

    friend constexpr bool operator==(const PermutationCode&, const PermutationCode&) = default;
};

inline constexpr std::size_t kPermutationCount = 6;

/// Lexicographic order over (image of -1, image of 0, image of +1).
inline constexpr std::array<PermutationCode, kPermutationCount> kPermutationTable{{
    {0, {Symbol::Neg, Symbol::Zero, Symbol::Pos}},
    {1, {Symbol::Neg, Symbol::Pos, Symbol::Zero}},
    {2, {Symbol::Zero, Symbol::Neg, Symbol::Pos}},
    {3, {Symbol::Zero, Symbol::Pos, Symbol::Neg}},
    {4, {Symbol::Pos, Symbol::Neg, Symbol::Zero}},
    {5, {Symbol::Pos, Symbol::Zero, Symbol::Neg}},
}};

/// Looks up a permutation by flag value; throws InvalidFlag for 6 and 7.
const PermutationCode& permutationByIndex(std::uint8_t index);

/// Canonical index of a bijection given by its images, or nullopt if `images`
/// is not a bijection.
std::optional<std::uint8_t> permutationIndexOf(const std::array<Symbol, 3>& images) noexcept;

PermutationCode inverse(const PermutationCode& code) noexcept;

/// Rewrites every symbol of the frame through the bijection.
Frame applyPermutation(const Frame& frame, const PermutationCode& code) noexcept;

EncodedFrame encodeDBI(const Frame& frame) noexcept;
Frame decodeDBI(const EncodedFrame& encoded);

EncodedFrame encodeMF(const Frame& frame) noexcept;
Frame decodeMF(const EncodedFrame& encoded);

EncodedFrame encodeSORT(const Frame& frame) noexcept;
Frame decodeSORT(const EncodedFrame& encoded);

/// Dispatches on `tag`. None passes the frame through with flag 0.
EncodedFrame encode(AlgorithmTag tag, const Frame& frame) noexcept;
Frame decode(const EncodedFrame& encoded);

struct PermutationChoice {
    PermutationCode code;
    double power = 0.0;
};

/// Tries all six bijections and keeps the one with the lowest termination
/// power; the lowest canonical index wins ties.
PermutationChoice bruteForceBestPermutation(const Frame& frame, const PowerModel& model = {});

}  // namespace pam3
