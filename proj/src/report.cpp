#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "pam3/analysis.hpp"
#include "pam3/errors.hpp"

namespace pam3 {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCsvHeader = "algorithm,termPower,termRatioPercent,switchPower,switchRatioPercent";

std::string shortest(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fixed4(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, roundReported(v), std::chars_format::fixed, 4);
    return std::string(buf, ptr);
}

ordered_json reportedNumber(double v) {
    if (std::isnan(v)) return nullptr;
    return roundReported(v);
}

double numberOrNan(const ordered_json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::vector<std::string> splitFields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parseDouble(const std::string& s, std::size_t lineNo) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(lineNo, "bad number '" + s + "'");
    return v;
}

std::uint64_t parseCount(const std::string& s, std::size_t lineNo) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(lineNo, "bad count '" + s + "'");
    return v;
}

std::string writeCsv(const TraceStats& stats) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& [tag, a] : stats.perAlgorithm) {
        out << algorithmName(tag) << ',' << shortest(a.termPower) << ',' << fixed4(a.termRatioPercent) << ','
            << shortest(a.switchPower) << ',' << fixed4(a.switchRatioPercent) << '\n';
    }
    out << '\n' << writeDistribution(stats.distributionPercent, stats.frameCount, ReportFormat::CSV);
    out << "\nmeta,value\n"
        << "frameCount," << stats.frameCount << '\n'
        << "cntNeg," << stats.totals.neg << '\n'
        << "cntZero," << stats.totals.zero << '\n'
        << "cntPos," << stats.totals.pos << '\n'
        << "opFilter," << opFilterName(stats.opFilter) << '\n'
        << "flagsIncluded," << (stats.flagsIncluded ? "true" : "false") << '\n';
    return out.str();
}

TraceStats readCsv(std::string_view text) {
    enum class Block { Header, Rows, DistHeader, Dist, MetaHeader, Meta } block = Block::Header;
    TraceStats stats;
    std::size_t lineNo = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) {
            if (block == Block::Rows) block = Block::DistHeader;
            else if (block == Block::Dist) block = Block::MetaHeader;
            continue;
        }
        const auto f = splitFields(line);
        switch (block) {
            case Block::Header:
                if (line != kCsvHeader) throw ParseError(lineNo, "unexpected CSV header");
                block = Block::Rows;
                break;
            case Block::Rows: {
                if (f.size() != 5) throw ParseError(lineNo, "algorithm row needs 5 fields");
                const auto tag = algorithmFromString(f[0]);
                if (!tag) throw ParseError(lineNo, "unknown algorithm '" + f[0] + "'");
                stats.perAlgorithm[*tag] = {parseDouble(f[1], lineNo), parseDouble(f[3], lineNo),
                                            parseDouble(f[2], lineNo), parseDouble(f[4], lineNo)};
                break;
            }
            case Block::DistHeader:
                if (line != "signal,percent") throw ParseError(lineNo, "expected distribution block");
                block = Block::Dist;
                break;
            case Block::Dist: {
                if (f.size() != 2) throw ParseError(lineNo, "distribution row needs 2 fields");
                const std::size_t idx = f[0] == "-1" ? 0 : f[0] == "0" ? 1 : f[0] == "+1" ? 2 : 3;
                if (idx == 3) throw ParseError(lineNo, "unknown signal '" + f[0] + "'");
                stats.distributionPercent[idx] = parseDouble(f[1], lineNo);
                break;
            }
            case Block::MetaHeader:
                if (line != "meta,value") throw ParseError(lineNo, "expected meta block");
                block = Block::Meta;
                break;
            case Block::Meta: {
                if (f.size() != 2) throw ParseError(lineNo, "meta row needs 2 fields");
                const auto& key = f[0];
                const auto& val = f[1];
                if (key == "frameCount") stats.frameCount = parseCount(val, lineNo);
                else if (key == "cntNeg") stats.totals.neg = parseCount(val, lineNo);
                else if (key == "cntZero") stats.totals.zero = parseCount(val, lineNo);
                else if (key == "cntPos") stats.totals.pos = parseCount(val, lineNo);
                else if (key == "opFilter") {
                    const auto op = opFilterFromString(val);
                    if (!op) throw ParseError(lineNo, "unknown op filter '" + val + "'");
                    stats.opFilter = *op;
                } else if (key == "flagsIncluded") {
                    if (val != "true" && val != "false") throw ParseError(lineNo, "flagsIncluded must be true/false");
                    stats.flagsIncluded = val == "true";
                } else {
                    throw ParseError(lineNo, "unknown meta key '" + key + "'");
                }
                break;
            }
        }
    }
    if (block != Block::Meta) throw ParseError(lineNo, "truncated CSV report");
    return stats;
}

ordered_json distributionJson(const std::array<double, 3>& percent) {
    ordered_json d;
    d["neg"] = reportedNumber(percent[0]);
    d["zero"] = reportedNumber(percent[1]);
    d["pos"] = reportedNumber(percent[2]);
    return d;
}

std::string writeJson(const TraceStats& stats) {
    ordered_json j;
    j["frameCount"] = stats.frameCount;
    j["opFilter"] = std::string(opFilterName(stats.opFilter));
    j["flagsIncluded"] = stats.flagsIncluded;
    j["totals"] = {{"neg", stats.totals.neg}, {"zero", stats.totals.zero}, {"pos", stats.totals.pos}};
    j["distributionPercent"] = distributionJson(stats.distributionPercent);
    ordered_json algs = ordered_json::array();
    for (const auto& [tag, a] : stats.perAlgorithm) {
        ordered_json row;
        row["algorithm"] = std::string(algorithmName(tag));
        row["termPower"] = a.termPower;
        row["termRatioPercent"] = reportedNumber(a.termRatioPercent);
        row["switchPower"] = a.switchPower;
        row["switchRatioPercent"] = reportedNumber(a.switchRatioPercent);
        algs.push_back(std::move(row));
    }
    j["algorithms"] = std::move(algs);
    return j.dump(2) + "\n";
}

TraceStats readJson(std::string_view text) {
    TraceStats stats;
    try {
        const auto j = ordered_json::parse(text);
        stats.frameCount = j.at("frameCount").get<std::uint64_t>();
        const auto op = opFilterFromString(j.at("opFilter").get<std::string>());
        if (!op) throw ParseError(0, "unknown op filter");
        stats.opFilter = *op;
        stats.flagsIncluded = j.at("flagsIncluded").get<bool>();
        const auto& t = j.at("totals");
        stats.totals = {t.at("neg").get<std::uint64_t>(), t.at("zero").get<std::uint64_t>(),
                        t.at("pos").get<std::uint64_t>()};
        const auto& d = j.at("distributionPercent");
        stats.distributionPercent = {numberOrNan(d.at("neg")), numberOrNan(d.at("zero")),
                                     numberOrNan(d.at("pos"))};
        for (const auto& row : j.at("algorithms")) {
            const auto tag = algorithmFromString(row.at("algorithm").get<std::string>());
            if (!tag) throw ParseError(0, "unknown algorithm in report");
            stats.perAlgorithm[*tag] = {row.at("termPower").get<double>(), row.at("switchPower").get<double>(),
                                        numberOrNan(row.at("termRatioPercent")),
                                        numberOrNan(row.at("switchRatioPercent"))};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed JSON report: ") + e.what());
    }
    return stats;
}

}  // namespace

double roundReported(double value) noexcept {
    if (!std::isfinite(value)) return value;
    return std::round(value * 1e4) / 1e4;
}

std::string writeReport(const TraceStats& stats, ReportFormat format) {
    return format == ReportFormat::CSV ? writeCsv(stats) : writeJson(stats);
}

TraceStats readReport(std::string_view text, ReportFormat format) {
    return format == ReportFormat::CSV ? readCsv(text) : readJson(text);
}

std::string writeDistribution(const std::array<double, 3>& percent, std::uint64_t frameCount,
                              ReportFormat format) {
    if (format == ReportFormat::JSON) {
        ordered_json j;
        j["frameCount"] = frameCount;
        j["distributionPercent"] = distributionJson(percent);
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "signal,percent\n"
        << "-1," << fixed4(percent[0]) << '\n'
        << "0," << fixed4(percent[1]) << '\n'
        << "+1," << fixed4(percent[2]) << '\n';
    return out.str();
}

}  // namespace pam3
