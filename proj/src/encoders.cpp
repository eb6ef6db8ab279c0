#include "pam3/encoders.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "pam3/errors.hpp"

namespace pam3 {

std::string_view algorithmName(AlgorithmTag tag) noexcept {
    switch (tag) {
        case AlgorithmTag::None: return "NONE";
        case AlgorithmTag::DBI: return "DBI";
        case AlgorithmTag::MF: return "MF";
        case AlgorithmTag::SORT: return "SORT";
    }
    return "NONE";
}

std::optional<AlgorithmTag> algorithmFromString(std::string_view name) noexcept {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (AlgorithmTag tag : kAllAlgorithms) {
        if (algorithmName(tag) == upper) return tag;
    }
    return std::nullopt;
}

const PermutationCode& permutationByIndex(std::uint8_t index) {
    if (index >= kPermutationCount) {
        throw InvalidFlag("permutation index " + std::to_string(index) + " is not in 0..5");
    }
    return kPermutationTable[index];
}

std::optional<std::uint8_t> permutationIndexOf(const std::array<Symbol, 3>& images) noexcept {
    for (const auto& code : kPermutationTable) {
        if (code.images == images) return code.index;
    }
    return std::nullopt;
}

PermutationCode inverse(const PermutationCode& code) noexcept {
    std::array<Symbol, 3> inv{};
    for (Symbol s : kAllSymbols) inv[levelIndex(code.apply(s))] = s;
    return kPermutationTable[*permutationIndexOf(inv)];
}

Frame applyPermutation(const Frame& frame, const PermutationCode& code) noexcept {
    Frame out;
    for (std::size_t i = 0; i < kSymbolsPerLine; ++i) {
        out.lineA[i] = code.apply(frame.lineA[i]);
        out.lineB[i] = code.apply(frame.lineB[i]);
    }
    return out;
}

namespace {

constexpr PermutationCode kNegation = kPermutationTable[5];  // -1 <-> +1, 0 fixed

void requireAlgorithm(const EncodedFrame& encoded, AlgorithmTag expected) {
    if (encoded.algorithm != expected) {
        throw WrongAlgorithm("expected " + std::string(algorithmName(expected)) + " frame, got " +
                             std::string(algorithmName(encoded.algorithm)));
    }
}

// Transposition of `mf` with +1; identity when mf is +1.
PermutationCode mfTransposition(Symbol mf) noexcept {
    std::array<Symbol, 3> images{Symbol::Neg, Symbol::Zero, Symbol::Pos};
    std::swap(images[levelIndex(mf)], images[levelIndex(Symbol::Pos)]);
    return kPermutationTable[*permutationIndexOf(images)];
}

}  // namespace

EncodedFrame encodeDBI(const Frame& frame) noexcept {
    const SymbolCounts c = countSymbols(frame);
    if (c.neg > c.pos) return {applyPermutation(frame, kNegation), AlgorithmTag::DBI, 1};
    return {frame, AlgorithmTag::DBI, 0};
}

Frame decodeDBI(const EncodedFrame& encoded) {
    requireAlgorithm(encoded, AlgorithmTag::DBI);
    if (encoded.flag > 1) throw InvalidFlag("DBI flag must be 0 or 1");
    return encoded.flag == 1 ? applyPermutation(encoded.frame, kNegation) : encoded.frame;
}

EncodedFrame encodeMF(const Frame& frame) noexcept {
    const SymbolCounts c = countSymbols(frame);
    // Ties prefer +1, then 0, then -1.
    Symbol mf = Symbol::Pos;
    if (c.zero > c.of(mf)) mf = Symbol::Zero;
    if (c.neg > c.of(mf)) mf = Symbol::Neg;
    return {applyPermutation(frame, mfTransposition(mf)), AlgorithmTag::MF,
            static_cast<std::uint8_t>(levelIndex(mf))};
}

Frame decodeMF(const EncodedFrame& encoded) {
    requireAlgorithm(encoded, AlgorithmTag::MF);
    if (encoded.flag > 2) throw InvalidFlag("MF flag " + std::to_string(encoded.flag) + " is reserved");
    return applyPermutation(encoded.frame, mfTransposition(symbolAt(encoded.flag)));
}

EncodedFrame encodeSORT(const Frame& frame) noexcept {
    const auto counts = countSymbols(frame).asArray();
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] < counts[b]; });
    // Least frequent -> -1, middle -> 0, most frequent -> +1.
    std::array<Symbol, 3> images{};
    for (std::size_t rank = 0; rank < 3; ++rank) images[order[rank]] = symbolAt(rank);
    const PermutationCode& code = kPermutationTable[*permutationIndexOf(images)];
    return {applyPermutation(frame, code), AlgorithmTag::SORT, code.index};
}

Frame decodeSORT(const EncodedFrame& encoded) {
    requireAlgorithm(encoded, AlgorithmTag::SORT);
    return applyPermutation(encoded.frame, inverse(permutationByIndex(encoded.flag)));
}

EncodedFrame encode(AlgorithmTag tag, const Frame& frame) noexcept {
    switch (tag) {
        case AlgorithmTag::DBI: return encodeDBI(frame);
        case AlgorithmTag::MF: return encodeMF(frame);
        case AlgorithmTag::SORT: return encodeSORT(frame);
        case AlgorithmTag::None: break;
    }
    return {frame, AlgorithmTag::None, 0};
}

Frame decode(const EncodedFrame& encoded) {
    switch (encoded.algorithm) {
        case AlgorithmTag::DBI: return decodeDBI(encoded);
        case AlgorithmTag::MF: return decodeMF(encoded);
        case AlgorithmTag::SORT: return decodeSORT(encoded);
        case AlgorithmTag::None: break;
    }
    if (encoded.flag != 0) throw InvalidFlag("unencoded frames carry no flag");
    return encoded.frame;
}

PermutationChoice bruteForceBestPermutation(const Frame& frame, const PowerModel& model) {
    PermutationChoice best{kPermutationTable[0], terminationPower(frame, model)};
    for (std::size_t i = 1; i < kPermutationCount; ++i) {
        const double p = terminationPower(applyPermutation(frame, kPermutationTable[i]), model);
        if (p < best.power) best = {kPermutationTable[i], p};
    }
    return best;
}

}  // namespace pam3
