#include "pam3/analysis.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <thread>

#include "pam3/errors.hpp"

namespace pam3 {

Analyzer::Analyzer(std::span<const AlgorithmTag> algorithms, const PowerModel& model) : model_(model) {
    tallies_[AlgorithmTag::None];
    for (AlgorithmTag tag : algorithms) {
        tallies_[tag];
        if (std::find(requested_.begin(), requested_.end(), tag) == requested_.end()) {
            requested_.push_back(tag);
        }
    }
    std::sort(requested_.begin(), requested_.end());
}

void Analyzer::add(const Frame& frame) {
    for (auto& [tag, t] : tallies_) {
        const EncodedFrame enc = encode(tag, frame);
        const unsigned width = flagWidth(tag);
        const int ones = std::popcount(static_cast<unsigned>(enc.flag));
        t.counts += countSymbols(enc.frame);
        t.steps += switchingSteps(enc.frame);
        t.flagOnes += static_cast<std::uint64_t>(ones);
        t.flagZeros += width - static_cast<unsigned>(ones);
        if (frames_ == 0) {
            t.first = enc.frame;
            t.firstFlag = enc.flag;
        } else {
            t.steps += boundarySteps(t.last, enc.frame);
            t.flagSteps += flagSwitchingSteps(t.lastFlag, enc.flag, width);
        }
        t.last = enc.frame;
        t.lastFlag = enc.flag;
    }
    ++frames_;
}

void Analyzer::add(std::span<const Frame> frames) {
    for (const Frame& f : frames) add(f);
}

void Analyzer::merge(const Analyzer& later) {
    if (later.frames_ == 0) return;
    if (frames_ == 0) {
        tallies_ = later.tallies_;
        frames_ = later.frames_;
        return;
    }
    for (auto& [tag, t] : tallies_) {
        const auto it = later.tallies_.find(tag);
        if (it == later.tallies_.end()) continue;
        const Tally& u = it->second;
        t.counts += u.counts;
        t.steps += u.steps + boundarySteps(t.last, u.first);
        t.flagOnes += u.flagOnes;
        t.flagZeros += u.flagZeros;
        t.flagSteps += u.flagSteps + flagSwitchingSteps(t.lastFlag, u.firstFlag, flagWidth(tag));
        t.last = u.last;
        t.lastFlag = u.lastFlag;
    }
    frames_ += later.frames_;
}

double Analyzer::termPower(const Tally& t) const noexcept {
    double p = terminationPower(t.counts, model_);
    if (model_.includeFlags) {
        p += static_cast<double>(t.flagZeros) * model_.termWeightNeg +
             static_cast<double>(t.flagOnes) * model_.termWeightPos;
    }
    return p;
}

double Analyzer::switchPower(const Tally& t) const noexcept {
    const std::uint64_t steps = t.steps + (model_.includeFlags ? t.flagSteps : 0);
    return static_cast<double>(steps) * model_.switchUnitEnergy;
}

TraceStats Analyzer::finish(OpFilter opFilter) const {
    if (frames_ == 0) throw EmptyStream("trace holds no frames");
    const Tally& base = tallies_.at(AlgorithmTag::None);
    const double baseTerm = termPower(base);
    const double baseSwitch = switchPower(base);

    TraceStats stats;
    stats.frameCount = frames_;
    stats.totals = base.counts;
    stats.distributionPercent = signalDistribution(base.counts);
    stats.opFilter = opFilter;
    stats.flagsIncluded = model_.includeFlags;
    for (AlgorithmTag tag : requested_) {
        const Tally& t = tallies_.at(tag);
        const PowerReport r = makePowerReport(baseTerm, termPower(t), baseSwitch, switchPower(t));
        stats.perAlgorithm[tag] = {r.termPowerEncoded, r.switchPowerEncoded, r.termRatioPercent,
                                   r.switchRatioPercent};
    }
    return stats;
}

Analyzer analyzeFrames(std::span<const Frame> frames, std::span<const AlgorithmTag> algorithms,
                       const PowerModel& model, unsigned threads) {
    constexpr std::size_t kMinFramesPerWorker = 1 << 14;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::clamp<std::size_t>(frames.size() / kMinFramesPerWorker, 1, threads);

    Analyzer total(algorithms, model);
    if (workers == 1) {
        total.add(frames);
        return total;
    }

    const std::size_t chunk = (frames.size() + workers - 1) / workers;
    std::vector<std::future<Analyzer>> parts;
    for (std::size_t begin = 0; begin < frames.size(); begin += chunk) {
        const auto part = frames.subspan(begin, std::min(chunk, frames.size() - begin));
        parts.push_back(std::async(std::launch::async, [part, algorithms, &model] {
            Analyzer a(algorithms, model);
            a.add(part);
            return a;
        }));
    }
    for (auto& p : parts) total.merge(p.get());
    return total;
}

TraceStats analyzeTrace(const FrameStream& stream, std::span<const AlgorithmTag> algorithms,
                        const PowerModel& model, unsigned threads) {
    if (stream.frames.empty()) throw EmptyStream("trace holds no frames");
    return analyzeFrames(stream.frames, algorithms, model, threads).finish();
}

std::array<double, 3> signalDistribution(const SymbolCounts& totals) {
    const std::uint64_t n = totals.total();
    if (n == 0) throw EmptyStream("no symbols to take a distribution over");
    const auto pct = [n](std::uint64_t c) { return 100.0 * static_cast<double>(c) / static_cast<double>(n); };
    return {pct(totals.neg), pct(totals.zero), pct(totals.pos)};
}

std::array<double, 3> signalDistribution(const FrameStream& stream) {
    SymbolCounts totals;
    for (const Frame& f : stream.frames) totals += countSymbols(f);
    return signalDistribution(totals);
}

}  // namespace pam3
