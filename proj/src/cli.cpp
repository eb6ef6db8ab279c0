#include "pam3/cli.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pam3/analysis.hpp"
#include "pam3/errors.hpp"
#include "pam3/trace_io.hpp"

namespace pam3 {

namespace {

constexpr char symbolChar(Symbol s) noexcept {
    switch (s) {
        case Symbol::Neg: return '-';
        case Symbol::Zero: return '0';
        case Symbol::Pos: return '+';
    }
    return '?';
}

std::optional<Symbol> symbolFromChar(char c) noexcept {
    switch (c) {
        case '-': return Symbol::Neg;
        case '0': return Symbol::Zero;
        case '+': return Symbol::Pos;
        default: return std::nullopt;
    }
}

Line parseLine(std::string_view field, std::string_view prefix, std::size_t lineNo) {
    if (field.substr(0, prefix.size()) != prefix || field.size() != prefix.size() + kSymbolsPerLine) {
        throw ParseError(lineNo, "expected " + std::string(prefix) + " followed by 8 symbols");
    }
    Line line{};
    for (std::size_t i = 0; i < kSymbolsPerLine; ++i) {
        const auto s = symbolFromChar(field[prefix.size() + i]);
        if (!s) throw ParseError(lineNo, "symbol must be one of '-', '0', '+'");
        line[i] = *s;
    }
    return line;
}

// Parses "key=<decimal>" into a small unsigned value.
unsigned parseKeyedNumber(std::string_view field, std::string_view key, unsigned max, std::size_t lineNo) {
    if (field.substr(0, key.size()) != key) throw ParseError(lineNo, "expected '" + std::string(key) + "'");
    unsigned v = 0;
    const char* first = field.data() + key.size();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last || v > max) {
        throw ParseError(lineNo, "bad value in '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

std::string formatEncodedFrame(const EncodedFrame& frame) {
    std::string s = "A:";
    for (Symbol x : frame.frame.lineA) s += symbolChar(x);
    s += " B:";
    for (Symbol x : frame.frame.lineB) s += symbolChar(x);
    s += " F:" + std::to_string(frame.flag);
    return s;
}

void writeEncodedStream(const EncodedStream& stream, std::ostream& out) {
    out << "# pam3 alg=" << algorithmName(stream.algorithm) << '\n';
    for (const auto& f : stream.frames) out << formatEncodedFrame(f) << '\n';
    out << "# pad=" << static_cast<unsigned>(stream.padBytes) << '\n';
}

EncodedStream readEncodedStream(std::istream& in) {
    EncodedStream stream;
    bool header = false;
    bool trailer = false;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (trailer) throw ParseError(lineNo, "content after the pad trailer");

        std::istringstream fields(line);
        std::string a, b, c, extra;
        fields >> a >> b;
        if (!header) {
            if (a != "#" || b != "pam3" || !(fields >> c) || c.rfind("alg=", 0) != 0 || (fields >> extra)) {
                throw ParseError(lineNo, "expected '# pam3 alg=<NAME>' header");
            }
            const auto tag = algorithmFromString(std::string_view(c).substr(4));
            if (!tag) throw ParseError(lineNo, "unknown algorithm '" + c.substr(4) + "'");
            stream.algorithm = *tag;
            header = true;
            continue;
        }
        if (a == "#") {
            if (fields >> extra) throw ParseError(lineNo, "unexpected text after pad trailer");
            stream.padBytes = static_cast<std::uint8_t>(parseKeyedNumber(b, "pad=", 2, lineNo));
            trailer = true;
            continue;
        }
        if (!(fields >> c) || (fields >> extra)) throw ParseError(lineNo, "expected 'A:... B:... F:n'");
        EncodedFrame ef;
        ef.algorithm = stream.algorithm;
        ef.frame.lineA = parseLine(a, "A:", lineNo);
        ef.frame.lineB = parseLine(b, "B:", lineNo);
        ef.flag = static_cast<std::uint8_t>(parseKeyedNumber(c, "F:", maxFlag(stream.algorithm), lineNo));
        stream.frames.push_back(ef);
    }
    if (!header) throw ParseError(lineNo, "missing '# pam3' header");
    if (!trailer) throw ParseError(lineNo, "missing '# pad=' trailer");
    if (stream.frames.empty() && stream.padBytes != 0) throw ParseError(lineNo, "padding on an empty stream");
    return stream;
}

namespace {

struct Options {
    std::string input = "-";
    std::string output = "-";
    std::string algorithm;
    std::string inputFormat = "text";
    std::string reportFormat = "csv";
    std::string opFilter = "all";
    std::uint64_t seed = 0;
    std::uint64_t byteCount = 0;
    double zeroFraction = 0.0;
    bool includeFlags = false;
    unsigned threads = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Streams {
public:
    Streams(const Options& opt, std::istream& in, std::ostream& out, bool binaryIn, bool binaryOut)
        : in_(&in), out_(&out) {
        if (opt.input != "-") {
            auto f = std::make_unique<std::ifstream>(opt.input, binaryIn ? std::ios::binary : std::ios::in);
            if (!*f) throw Error("cannot open input '" + opt.input + "'");
            in_ = f.get();
            ownedIn_ = std::move(f);
        }
        if (opt.output != "-") {
            auto f = std::make_unique<std::ofstream>(opt.output, binaryOut ? std::ios::binary : std::ios::out);
            if (!*f) throw Error("cannot open output '" + opt.output + "'");
            out_ = f.get();
            ownedOut_ = std::move(f);
        }
    }

    std::istream& in() { return *in_; }
    std::ostream& out() { return *out_; }

    void flush() {
        out_->flush();
        if (!*out_) throw Error("write failure on output");
    }

private:
    std::istream* in_;
    std::ostream* out_;
    std::unique_ptr<std::istream> ownedIn_;
    std::unique_ptr<std::ostream> ownedOut_;
};

AlgorithmTag singleAlgorithm(const Options& opt) {
    if (opt.algorithm == "all") throw UsageError("--alg all is only valid for analyze");
    const auto tag = algorithmFromString(opt.algorithm);
    if (!tag) throw UsageError("--alg: unknown algorithm '" + opt.algorithm + "'");
    return *tag;
}

std::vector<AlgorithmTag> algorithmSet(const Options& opt) {
    if (opt.algorithm == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
    const auto tag = algorithmFromString(opt.algorithm);
    if (!tag) throw UsageError("--alg: unknown algorithm '" + opt.algorithm + "'");
    return {*tag};
}

ReportFormat reportFormat(const Options& opt) {
    return opt.reportFormat == "json" ? ReportFormat::JSON : ReportFormat::CSV;
}

OpFilter opFilter(const Options& opt) { return *opFilterFromString(opt.opFilter); }

bool rawInput(const Options& opt) { return opt.inputFormat == "raw"; }

// Raw traces are a single WRITE record; a read filter leaves nothing.
void checkRawFilter(const Options& opt) {
    if (opFilter(opt) == OpFilter::Read) throw EmptyStream("raw traces hold no READ records");
}

FrameStream loadFrames(const Options& opt, std::istream& in) {
    const auto records = rawInput(opt) ? parseRawTrace(in) : parseTextTrace(in);
    return frameRecords(filterRecords(records, opFilter(opt)));
}

// Streams a raw trace through `sink` in batches so arbitrarily large inputs
// are never held in memory at once.
template <typename Sink>
std::uint8_t forEachRawBatch(std::istream& in, Sink&& sink) {
    constexpr std::size_t kBatchFrames = 1 << 18;
    RawFrameReader reader(in);
    std::vector<Frame> batch;
    batch.reserve(kBatchFrames);
    while (auto f = reader.next()) {
        batch.push_back(*f);
        if (batch.size() == kBatchFrames) {
            sink(std::span<const Frame>(batch));
            batch.clear();
        }
    }
    if (!batch.empty()) sink(std::span<const Frame>(batch));
    if (reader.bytesRead() == 0) throw EmptyInput("raw trace is empty");
    return reader.padBytes();
}

void runEncode(const Options& opt, Streams& io) {
    const AlgorithmTag tag = singleAlgorithm(opt);
    auto& out = io.out();
    out << "# pam3 alg=" << algorithmName(tag) << '\n';
    std::uint8_t pad = 0;
    if (rawInput(opt)) {
        checkRawFilter(opt);
        pad = forEachRawBatch(io.in(), [&](std::span<const Frame> frames) {
            for (const Frame& f : frames) out << formatEncodedFrame(encode(tag, f)) << '\n';
        });
    } else {
        const FrameStream fs = loadFrames(opt, io.in());
        for (const Frame& f : fs.frames) out << formatEncodedFrame(encode(tag, f)) << '\n';
        pad = fs.padBytes;
    }
    out << "# pad=" << static_cast<unsigned>(pad) << '\n';
}

void runDecode(Streams& io) {
    const EncodedStream enc = readEncodedStream(io.in());
    FrameStream fs;
    fs.padBytes = enc.padBytes;
    fs.frames.reserve(enc.frames.size());
    for (const auto& ef : enc.frames) fs.frames.push_back(decode(ef));
    const auto bytes = unframe(fs);
    io.out().write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void runAnalyze(const Options& opt, Streams& io) {
    const auto algorithms = algorithmSet(opt);
    PowerModel model;
    model.includeFlags = opt.includeFlags;
    TraceStats stats;
    if (rawInput(opt)) {
        checkRawFilter(opt);
        Analyzer total(algorithms, model);
        forEachRawBatch(io.in(), [&](std::span<const Frame> frames) {
            total.merge(analyzeFrames(frames, algorithms, model, opt.threads));
        });
        stats = total.finish(opFilter(opt));
    } else {
        stats = analyzeFrames(loadFrames(opt, io.in()).frames, algorithms, model, opt.threads)
                    .finish(opFilter(opt));
    }
    io.out() << writeReport(stats, reportFormat(opt));
}

void runDistribution(const Options& opt, Streams& io) {
    SymbolCounts totals;
    std::uint64_t frames = 0;
    const auto tally = [&](std::span<const Frame> batch) {
        for (const Frame& f : batch) totals += countSymbols(f);
        frames += batch.size();
    };
    if (rawInput(opt)) {
        checkRawFilter(opt);
        forEachRawBatch(io.in(), tally);
    } else {
        tally(loadFrames(opt, io.in()).frames);
    }
    if (frames == 0) throw EmptyStream("trace holds no frames");
    io.out() << writeDistribution(signalDistribution(totals), frames, reportFormat(opt));
}

void runGenRandom(const Options& opt, Streams& io) {
    const auto records = opt.zeroFraction > 0.0 ? generateSparseTrace(opt.byteCount, opt.zeroFraction, opt.seed)
                                                : generateRandomTrace(opt.byteCount, opt.seed);
    const auto& payload = records.front().payload;
    io.out().write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

int runCli(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"PAM-3 low-power bus encoding and trace analysis", "pam3"};
    app.require_subcommand(1);
    Options opt;

    const auto addIo = [&](CLI::App* sub) {
        sub->add_option("-i,--input", opt.input, "Input path, '-' for stdin");
        sub->add_option("-o,--output", opt.output, "Output path, '-' for stdout");
    };
    const auto addTrace = [&](CLI::App* sub) {
        sub->add_option("--format", opt.inputFormat, "Input trace format")
            ->check(CLI::IsMember({"text", "raw"}));
        sub->add_option("--op", opt.opFilter, "Keep only READ or WRITE records")
            ->check(CLI::IsMember({"all", "read", "write"}));
    };
    const auto algNames = CLI::IsMember({"none", "dbi", "mf", "sort", "all"}, CLI::ignore_case);

    auto* encodeCmd = app.add_subcommand("encode", "Encode a trace into frames and flags");
    addIo(encodeCmd);
    addTrace(encodeCmd);
    encodeCmd->add_option("--alg", opt.algorithm, "none, dbi, mf or sort")->required()->check(algNames);

    auto* decodeCmd = app.add_subcommand("decode", "Decode frames back to the raw payload");
    addIo(decodeCmd);

    auto* analyzeCmd = app.add_subcommand("analyze", "Report termination and switching power ratios");
    addIo(analyzeCmd);
    addTrace(analyzeCmd);
    opt.algorithm = "all";
    analyzeCmd->add_option("--alg", opt.algorithm, "none, dbi, mf, sort or all")->check(algNames);
    analyzeCmd->add_option("--report", opt.reportFormat, "Report format")->check(CLI::IsMember({"csv", "json"}));
    analyzeCmd->add_flag("--include-flags", opt.includeFlags, "Count flag wires in power totals");
    analyzeCmd->add_option("--threads", opt.threads, "Worker threads, 0 for all cores");

    auto* distCmd = app.add_subcommand("distribution", "Report the share of each signal level");
    addIo(distCmd);
    addTrace(distCmd);
    distCmd->add_option("--report", opt.reportFormat, "Report format")->check(CLI::IsMember({"csv", "json"}));

    auto* genCmd = app.add_subcommand("gen-random", "Write a random raw trace");
    genCmd->add_option("-o,--output", opt.output, "Output path, '-' for stdout");
    genCmd->add_option("--bytes", opt.byteCount, "Number of bytes")->required()->check(CLI::PositiveNumber);
    genCmd->add_option("--seed", opt.seed, "RNG seed")->required();
    genCmd->add_option("--zero-fraction", opt.zeroFraction, "Probability that a byte is forced to zero")
        ->check(CLI::Range(0.0, 1.0));

    std::vector<std::string> argv;
    argv.reserve(args.size());
    for (auto it = args.rbegin(); it != args.rend(); ++it) argv.push_back(*it);
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "pam3: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (encodeCmd->parsed()) {
            singleAlgorithm(opt);
            Streams io(opt, in, out, rawInput(opt), false);
            runEncode(opt, io);
            io.flush();
        } else if (decodeCmd->parsed()) {
            Streams io(opt, in, out, false, true);
            runDecode(io);
            io.flush();
        } else if (analyzeCmd->parsed()) {
            Streams io(opt, in, out, rawInput(opt), false);
            runAnalyze(opt, io);
            io.flush();
        } else if (distCmd->parsed()) {
            Streams io(opt, in, out, rawInput(opt), false);
            runDistribution(opt, io);
            io.flush();
        } else if (genCmd->parsed()) {
            Streams io(opt, in, out, false, true);
            runGenRandom(opt, io);
            io.flush();
        }
    } catch (const UsageError& e) {
        err << "pam3: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "pam3: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}

}  // namespace pam3
