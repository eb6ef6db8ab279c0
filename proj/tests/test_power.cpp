#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pam3/errors.hpp"
#include "pam3/power.hpp"
#include "test_support.hpp"

using namespace pam3;

TEST_CASE("default model follows the termination table") {
    const PowerModel m;
    CHECK(m.termWeightNeg == 2 * m.termWeightZero);
    CHECK(m.termWeightPos == 0.0);
    CHECK(m.termWeightNeg == 1.0 / 100);

    const auto scaled = PowerModel::fromSupply(1.44);
    CHECK(scaled.termWeightNeg == doctest::Approx(0.0144));
    CHECK(scaled.termWeightZero == doctest::Approx(0.0072));
    CHECK_THROWS_AS(PowerModel::fromSupply(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerModel::fromSupply(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("terminationPower") {
    CHECK(terminationPower(uniformFrame(Symbol::Neg)) == doctest::Approx(0.16));
    CHECK(terminationPower(uniformFrame(Symbol::Pos)) == 0.0);
    CHECK(terminationPower(test::hand655()) == doctest::Approx(0.085));
}

TEST_CASE("terminationPower depends only on counts and is monotone") {
    std::mt19937_64 rng(9);
    const PowerModel m;
    for (int i = 0; i < 2000; ++i) {
        Frame f = test::randomFrame(rng);
        const double p = terminationPower(f, m);
        REQUIRE(p >= 0.0);
        const auto c = countSymbols(f);
        REQUIRE((p == 0.0) == (c.neg == 0 && c.zero == 0));

        Frame shuffled = f;
        std::shuffle(shuffled.lineA.begin(), shuffled.lineA.end(), rng);
        std::swap(shuffled.lineA, shuffled.lineB);
        REQUIRE(terminationPower(shuffled, m) == doctest::Approx(p));

        // Raise one symbol by one level.
        const std::size_t k = rng() % 8;
        if (f.lineA[k] != Symbol::Pos) {
            Frame raised = f;
            raised.lineA[k] = symbolAt(levelIndex(f.lineA[k]) + 1);
            REQUIRE(p - terminationPower(raised, m) == doctest::Approx(1.0 / 200));
        }
    }
}

TEST_CASE("terminationRatio") {
    CHECK(terminationRatio(0.075, 0.085) == doctest::Approx(88.23529411764706));
    CHECK(terminationRatio(0.3, 0.3) == 100.0);
    CHECK(terminationRatio(0.0, 0.16) == 0.0);
    CHECK_THROWS_AS(terminationRatio(0.0, 0.0), ZeroBaseline);
    CHECK_THROWS_AS(terminationRatio(1.0, 0.0), ZeroBaseline);
}

TEST_CASE("switching power on single lines") {
    const std::vector<Symbol> flat(10, Symbol::Zero);
    CHECK(lineSwitchingPower(flat) == 0.0);
    const std::vector<Symbol> jump{Symbol::Neg, Symbol::Pos};
    CHECK(lineSwitchingPower(jump) == 4.0);
    const std::vector<Symbol> ramp{Symbol::Neg, Symbol::Zero, Symbol::Pos};
    CHECK(lineSwitchingPower(ramp) == 2.0);

    PowerModel m;
    m.switchUnitEnergy = 0.5;
    CHECK(lineSwitchingPower(jump, m) == 2.0);
}

TEST_CASE("switchingPower over a frame stream") {
    const std::vector<Frame> constant(5, uniformFrame(Symbol::Neg));
    CHECK(switchingPower(constant) == 0.0);
    CHECK_THROWS_AS(switchingPower(std::vector<Frame>{}), EmptyStream);

    // -1 frame then +1 frame: one full-swing transition per line.
    const std::vector<Frame> two{uniformFrame(Symbol::Neg), uniformFrame(Symbol::Pos)};
    CHECK(switchingPower(two) == 8.0);

    // Matches concatenating each physical line across frames.
    std::mt19937_64 rng(12);
    std::vector<Frame> stream;
    for (int i = 0; i < 200; ++i) stream.push_back(test::randomFrame(rng));
    std::vector<Symbol> lineA, lineB;
    for (const auto& f : stream) {
        lineA.insert(lineA.end(), f.lineA.begin(), f.lineA.end());
        lineB.insert(lineB.end(), f.lineB.begin(), f.lineB.end());
    }
    const double expected = lineSwitchingPower(lineA) + lineSwitchingPower(lineB);
    CHECK(switchingPower(stream) == expected);

    // Time reversal leaves it unchanged.
    std::vector<Frame> reversed(stream.rbegin(), stream.rend());
    for (auto& f : reversed) {
        std::reverse(f.lineA.begin(), f.lineA.end());
        std::reverse(f.lineB.begin(), f.lineB.end());
    }
    CHECK(switchingPower(reversed) == expected);
}

TEST_CASE("flag wire power") {
    const PowerModel m;
    CHECK(flagTerminationPower(0b000, 3, m) == doctest::Approx(3 * m.termWeightNeg));
    CHECK(flagTerminationPower(0b101, 3, m) == doctest::Approx(m.termWeightNeg));
    CHECK(flagTerminationPower(1, 1, m) == 0.0);
    CHECK(flagTerminationPower(0, 0, m) == 0.0);
    CHECK(flagSwitchingSteps(0b00, 0b11, 2) == 8);
    CHECK(flagSwitchingSteps(0b100, 0b101, 3) == 4);
    CHECK(flagSwitchingSteps(5, 5, 3) == 0);
}

TEST_CASE("makePowerReport") {
    const auto r = makePowerReport(0.085, 0.075, 10.0, 5.0);
    CHECK(r.termRatioPercent == doctest::Approx(88.235294));
    CHECK(r.switchRatioPercent == 50.0);
    CHECK(std::isnan(makePowerReport(1.0, 0.5, 0.0, 0.0).switchRatioPercent));
    CHECK_THROWS_AS(makePowerReport(0.0, 0.0, 1.0, 1.0), ZeroBaseline);
}
