#pragma once

#include <cstdint>
#include <span>

#include "pam3/core.hpp"

namespace pam3 {

/// Per-level termination weights and the switching-energy unit.
///
/// Defaults follow the usual PAM-3 termination table with V^2 normalized to
/// 1: a -1 level costs V^2/100, 0 costs V^2/200 and +1 costs nothing.
/// Switching energy is switchUnitEnergy * (level step)^2 per transition.
struct PowerModel {
    double vddSquared = 1.0;
    double termWeightNeg = 1.0 / 100.0;
    double termWeightZero = 1.0 / 200.0;
    double termWeightPos = 0.0;
    double switchUnitEnergy = 1.0;
    /// Count flag wires as binary lines (bit 0 at -1, bit 1 at +1).
    bool includeFlags = false;

    /// Builds the default table for a given supply. Throws std::invalid_argument
    /// unless vddSquared > 0 and switchUnitEnergy >= 0.
    static PowerModel fromSupply(double vddSquared, double switchUnitEnergy = 1.0);

    double weight(Symbol s) const noexcept;
};

double terminationPower(const SymbolCounts& counts, const PowerModel& model = {}) noexcept;
double terminationPower(const Frame& frame, const PowerModel& model = {}) noexcept;

/// encoded / baseline * 100. Throws ZeroBaseline when baseline is 0.
double terminationRatio(double encodedTotal, double baselineTotal);

/// Sum of squared level steps between consecutive symbols of one line.
std::uint64_t switchingSteps(std::span<const Symbol> line) noexcept;

/// Squared-step sum inside a frame, both lines, not counting its predecessor.
std::uint64_t switchingSteps(const Frame& frame) noexcept;

/// Squared-step sum of the two transitions from the last symbols of `prev`
/// to the first symbols of `next` (one per line).
std::uint64_t boundarySteps(const Frame& prev, const Frame& next) noexcept;

double lineSwitchingPower(std::span<const Symbol> line, const PowerModel& model = {}) noexcept;

/// Switching power of a frame stream, lines A and B concatenated separately
/// across frames. Throws EmptyStream if `stream` is empty.
double switchingPower(std::span<const Frame> stream, const PowerModel& model = {});

/// Termination cost of `width` flag wires, each at -1 for a 0 bit and +1 for a 1 bit.
double flagTerminationPower(std::uint8_t flag, unsigned width, const PowerModel& model = {}) noexcept;

/// Squared-step sum of flag wires going from `prev` to `next` (4 per toggled bit).
std::uint64_t flagSwitchingSteps(std::uint8_t prev, std::uint8_t next, unsigned width) noexcept;

struct PowerReport {
    double termPowerBaseline = 0.0;
    double termPowerEncoded = 0.0;
    double termRatioPercent = 0.0;
    double switchPowerBaseline = 0.0;
    double switchPowerEncoded = 0.0;
    double switchRatioPercent = 0.0;
};

/// Fills both ratios. A zero switching baseline gives a NaN switching ratio
/// because a constant line has nothing to compare against; a zero termination
/// baseline throws ZeroBaseline.
PowerReport makePowerReport(double termBaseline, double termEncoded, double switchBaseline,
                            double switchEncoded);

}  // namespace pam3
