#include "pam3/power.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "pam3/errors.hpp"

namespace pam3 {

PowerModel PowerModel::fromSupply(double vddSquared, double switchUnitEnergy) {
    if (!(vddSquared > 0.0)) throw std::invalid_argument("vddSquared must be positive");
    if (!(switchUnitEnergy >= 0.0)) throw std::invalid_argument("switchUnitEnergy must be >= 0");
    PowerModel m;
    m.vddSquared = vddSquared;
    m.termWeightNeg = vddSquared / 100.0;
    m.termWeightZero = vddSquared / 200.0;
    m.termWeightPos = 0.0;
    m.switchUnitEnergy = switchUnitEnergy;
    return m;
}

double PowerModel::weight(Symbol s) const noexcept {
    switch (s) {
        case Symbol::Neg: return termWeightNeg;
        case Symbol::Zero: return termWeightZero;
        case Symbol::Pos: return termWeightPos;
    }
    return 0.0;
}

double terminationPower(const SymbolCounts& counts, const PowerModel& model) noexcept {
    return static_cast<double>(counts.neg) * model.termWeightNeg +
           static_cast<double>(counts.zero) * model.termWeightZero +
           static_cast<double>(counts.pos) * model.termWeightPos;
}

double terminationPower(const Frame& frame, const PowerModel& model) noexcept {
    return terminationPower(countSymbols(frame), model);
}

double terminationRatio(double encodedTotal, double baselineTotal) {
    if (baselineTotal == 0.0) throw ZeroBaseline("baseline termination power is zero; ratio undefined");
    if (baselineTotal < 0.0) throw std::invalid_argument("baseline power must be positive");
    return encodedTotal / baselineTotal * 100.0;
}

namespace {

constexpr std::uint64_t stepSquared(Symbol from, Symbol to) noexcept {
    const int d = level(to) - level(from);
    return static_cast<std::uint64_t>(d * d);
}

}  // namespace

std::uint64_t switchingSteps(std::span<const Symbol> line) noexcept {
    std::uint64_t steps = 0;
    for (std::size_t i = 1; i < line.size(); ++i) steps += stepSquared(line[i - 1], line[i]);
    return steps;
}

std::uint64_t switchingSteps(const Frame& frame) noexcept {
    return switchingSteps(frame.lineA) + switchingSteps(frame.lineB);
}

std::uint64_t boundarySteps(const Frame& prev, const Frame& next) noexcept {
    return stepSquared(prev.lineA.back(), next.lineA.front()) +
           stepSquared(prev.lineB.back(), next.lineB.front());
}

double lineSwitchingPower(std::span<const Symbol> line, const PowerModel& model) noexcept {
    return static_cast<double>(switchingSteps(line)) * model.switchUnitEnergy;
}

double switchingPower(std::span<const Frame> stream, const PowerModel& model) {
    if (stream.empty()) throw EmptyStream("switching power needs at least one frame");
    std::uint64_t steps = switchingSteps(stream[0]);
    for (std::size_t i = 1; i < stream.size(); ++i) {
        steps += boundarySteps(stream[i - 1], stream[i]) + switchingSteps(stream[i]);
    }
    return static_cast<double>(steps) * model.switchUnitEnergy;
}

double flagTerminationPower(std::uint8_t flag, unsigned width, const PowerModel& model) noexcept {
    const unsigned mask = (1u << width) - 1u;
    const int ones = std::popcount(static_cast<unsigned>(flag) & mask);
    const int zeros = static_cast<int>(width) - ones;
    return zeros * model.termWeightNeg + ones * model.termWeightPos;
}

std::uint64_t flagSwitchingSteps(std::uint8_t prev, std::uint8_t next, unsigned width) noexcept {
    const unsigned mask = (1u << width) - 1u;
    // A toggled binary wire swings between -1 and +1.
    return 4u * static_cast<std::uint64_t>(std::popcount((static_cast<unsigned>(prev) ^ next) & mask));
}

PowerReport makePowerReport(double termBaseline, double termEncoded, double switchBaseline,
                            double switchEncoded) {
    PowerReport r;
    r.termPowerBaseline = termBaseline;
    r.termPowerEncoded = termEncoded;
    r.termRatioPercent = terminationRatio(termEncoded, termBaseline);
    r.switchPowerBaseline = switchBaseline;
    r.switchPowerEncoded = switchEncoded;
    r.switchRatioPercent = switchBaseline == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                 : switchEncoded / switchBaseline * 100.0;
    return r;
}

}  // namespace pam3
