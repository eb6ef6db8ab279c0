#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pam3/core.hpp"
#include "pam3/encoders.hpp"
#include "pam3/power.hpp"
#include "pam3/trace_io.hpp"

namespace pam3 {

struct AlgorithmStats {
    double termPower = 0.0;
    double switchPower = 0.0;
    double termRatioPercent = 0.0;
    /// NaN when the unencoded stream never switches.
    double switchRatioPercent = 0.0;
};

struct TraceStats {
    std::uint64_t frameCount = 0;
    /// Symbol totals of the unencoded stream.
    SymbolCounts totals;
    std::map<AlgorithmTag, AlgorithmStats> perAlgorithm;
    /// Percent of -1, 0, +1 over all 16 * frameCount symbols.
    std::array<double, 3> distributionPercent{};
    OpFilter opFilter = OpFilter::All;
    bool flagsIncluded = false;
};

/// Incremental trace analysis: frames are pushed in stream order and each one
/// is encoded independently by every requested algorithm. All tallies are
/// integers, so results do not depend on how the stream was split.
class Analyzer {
public:
    explicit Analyzer(std::span<const AlgorithmTag> algorithms, const PowerModel& model = {});

    void add(const Frame& frame);
    void add(std::span<const Frame> frames);

    /// Appends the tallies of an analyzer that saw the frames immediately
    /// following this one's, including the transition across the seam.
    void merge(const Analyzer& later);

    std::uint64_t frameCount() const noexcept { return frames_; }

    /// Throws EmptyStream if no frames were added and ZeroBaseline if the
    /// unencoded stream has zero termination power.
    TraceStats finish(OpFilter opFilter = OpFilter::All) const;

private:
    struct Tally {
        SymbolCounts counts;
        std::uint64_t steps = 0;
        std::uint64_t flagZeros = 0;
        std::uint64_t flagOnes = 0;
        std::uint64_t flagSteps = 0;
        Frame first;
        Frame last;
        std::uint8_t firstFlag = 0;
        std::uint8_t lastFlag = 0;
    };

    double termPower(const Tally& t) const noexcept;
    double switchPower(const Tally& t) const noexcept;

    PowerModel model_;
    std::map<AlgorithmTag, Tally> tallies_;  // always holds None as the baseline
    std::vector<AlgorithmTag> requested_;
    std::uint64_t frames_ = 0;
};

/// Feeds `frames` to a fresh analyzer, splitting the work across up to
/// `threads` workers (0 picks the hardware concurrency).
Analyzer analyzeFrames(std::span<const Frame> frames, std::span<const AlgorithmTag> algorithms,
                       const PowerModel& model = {}, unsigned threads = 0);

/// Runs `algorithms` over the stream, splitting the work across up to
/// `threads` workers (0 picks the hardware concurrency).
TraceStats analyzeTrace(const FrameStream& stream, std::span<const AlgorithmTag> algorithms,
                        const PowerModel& model = {}, unsigned threads = 0);

/// Percent of -1, 0, +1 symbols. Throws EmptyStream on an empty stream.
std::array<double, 3> signalDistribution(const FrameStream& stream);
std::array<double, 3> signalDistribution(const SymbolCounts& totals);

enum class ReportFormat : std::uint8_t { CSV, JSON };

/// Ratios and percentages are rounded to 4 decimal places; powers are
/// written in shortest round-trip form.
std::string writeReport(const TraceStats& stats, ReportFormat format);

/// Inverse of writeReport. Throws ParseError on malformed input.
TraceStats readReport(std::string_view text, ReportFormat format);

std::string writeDistribution(const std::array<double, 3>& percent, std::uint64_t frameCount,
                              ReportFormat format);

/// Rounds to the 4 decimal places used in reports.
double roundReported(double value) noexcept;

}  // namespace pam3
