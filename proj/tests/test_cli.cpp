#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pam3/analysis.hpp"
#include "pam3/cli.hpp"
#include "pam3/errors.hpp"

using namespace pam3;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = runCli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string randomBytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string s(n, '\0');
    for (auto& c : s) c = static_cast<char>(rng());
    return s;
}

}  // namespace

TEST_CASE("encoded stream text form") {
    EncodedStream s;
    s.algorithm = AlgorithmTag::SORT;
    s.frames.push_back(encodeSORT(modulate({0x00, 0x00, 0xff})));
    s.padBytes = 1;
    std::ostringstream out;
    writeEncodedStream(s, out);
    // Counts (8, 8, 0): +1 -> -1, -1 -> 0, 0 -> +1, which is permutation 3.
    CHECK(out.str() == "# pam3 alg=SORT\nA:00000000 B:++++++++ F:3\n# pad=1\n");
    std::istringstream in(out.str());
    const auto back = readEncodedStream(in);
    CHECK(back.algorithm == AlgorithmTag::SORT);
    CHECK(back.padBytes == 1);
    REQUIRE(back.frames.size() == 1);
    CHECK(back.frames[0] == s.frames[0]);

    CHECK(formatEncodedFrame({modulate({0xff, 0x00, 0x0f}), AlgorithmTag::DBI, 1}) ==
          "A:0000++++ B:++++---- F:1");
}

TEST_CASE("malformed encoded streams report the line") {
    const auto lineOf = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            readEncodedStream(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(lineOf("A:-------- B:-------- F:0\n") == 1);
    CHECK(lineOf("# pam3 alg=MF\nA:-------- B:-------- F:3\n# pad=0\n") == 2);
    CHECK(lineOf("# pam3 alg=DBI\nA:------- B:-------- F:0\n# pad=0\n") == 2);
    CHECK(lineOf("# pam3 alg=DBI\nA:-------x B:-------- F:0\n# pad=0\n") == 2);
    CHECK(lineOf("# pam3 alg=SORT\nA:-------- B:-------- F:6\n# pad=0\n") == 2);
    CHECK(lineOf("# pam3 alg=SORT\n# pad=3\n") == 2);
    CHECK(lineOf("# pam3 alg=SORT\nA:-------- B:-------- F:0\n") == 2);
    CHECK(lineOf("# pam3 alg=XOR\n") == 1);
}

TEST_CASE("analyze emits one CSV row per algorithm") {
    const auto r = run({"analyze", "--alg", "all", "--format", "text", "--report", "csv"},
                       "# tiny trace\nW 0x0 000000\nR 0x40 00ff00aa5501\n");
    REQUIRE(r.code == kExitOk);
    const auto stats = readReport(r.out, ReportFormat::CSV);
    CHECK(stats.perAlgorithm.size() == 4);
    CHECK(stats.frameCount == 3);
    CHECK(r.out.rfind("algorithm,termPower,termRatioPercent,switchPower,switchRatioPercent\nNONE,", 0) == 0);
}

TEST_CASE("gen-random piped into analyze") {
    const auto gen = run({"gen-random", "--bytes", "300000", "--seed", "7"});
    REQUIRE(gen.code == kExitOk);
    CHECK(gen.out.size() == 300000);
    CHECK(run({"gen-random", "--bytes", "300000", "--seed", "7"}).out == gen.out);

    const auto r = run({"analyze", "--alg", "sort", "--format", "raw", "--report", "json"}, gen.out);
    REQUIRE(r.code == kExitOk);
    const auto stats = readReport(r.out, ReportFormat::JSON);
    CHECK(stats.frameCount == 100000);
    CHECK(stats.perAlgorithm.at(AlgorithmTag::SORT).termRatioPercent < 100.0);

    // Streaming raw analysis matches the in-memory path.
    const std::vector<std::uint8_t> bytes(gen.out.begin(), gen.out.end());
    const auto direct = analyzeTrace(frameBytes(bytes), std::array{AlgorithmTag::SORT});
    CHECK(writeReport(direct, ReportFormat::JSON) == r.out);
}

TEST_CASE("encode then decode is lossless") {
    for (const char* alg : {"none", "dbi", "mf", "sort"}) {
        for (std::size_t n : {1u, 2u, 3u, 1000u, 4097u}) {
            const std::string data = randomBytes(n, n * 31 + 7);
            const auto enc = run({"encode", "--alg", alg, "--format", "raw"}, data);
            REQUIRE(enc.code == kExitOk);
            const auto dec = run({"decode"}, enc.out);
            REQUIRE(dec.code == kExitOk);
            CHECK(dec.out == data);
        }
    }
    const auto enc = run({"encode", "--alg", "mf"}, "W 0x0 0102\nR 0x8 0304\n");
    REQUIRE(enc.code == kExitOk);
    CHECK(run({"decode"}, enc.out).out == std::string("\x01\x02\x03\x04", 4));

    const auto writesOnly = run({"encode", "--alg", "mf", "--op", "write"}, "W 0x0 0102\nR 0x8 0304\n");
    CHECK(run({"decode"}, writesOnly.out).out == std::string("\x01\x02", 2));
}

TEST_CASE("file input and output") {
    const auto dir = std::filesystem::temp_directory_path() / "pam3_cli_test";
    std::filesystem::create_directories(dir);
    const auto raw = (dir / "trace.bin").string();
    const auto encoded = (dir / "trace.enc").string();
    const auto decoded = (dir / "trace.out").string();
    REQUIRE(run({"gen-random", "--bytes", "1000", "--seed", "3", "-o", raw}).code == kExitOk);
    REQUIRE(run({"encode", "--alg", "sort", "--format", "raw", "-i", raw, "-o", encoded}).code == kExitOk);
    REQUIRE(run({"decode", "-i", encoded, "-o", decoded}).code == kExitOk);
    const auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    CHECK(slurp(decoded) == slurp(raw));
    CHECK(slurp(raw).size() == 1000);
    std::filesystem::remove_all(dir);
}

TEST_CASE("distribution subcommand") {
    const auto r = run({"distribution", "--format", "text"}, "W 0x0 000000000000\n");
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "signal,percent\n-1,100.0000\n0,0.0000\n+1,0.0000\n");

    const auto j = run({"distribution", "--format", "raw", "--report", "json"}, std::string(6, '\xff'));
    REQUIRE(j.code == kExitOk);
    CHECK(j.out.find("\"pos\": 100.0") != std::string::npos);
}

TEST_CASE("usage errors exit 1 and name the flag") {
    auto r = run({"encode", "--alg", "all"}, "W 0x0 00\n");
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--alg") != std::string::npos);

    r = run({"encode"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--alg") != std::string::npos);

    r = run({"analyze", "--report", "xml"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--report") != std::string::npos);

    r = run({"gen-random", "--seed", "1"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--bytes") != std::string::npos);

    CHECK(run({"gen-random", "--bytes", "0", "--seed", "1"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("input errors exit 2 with line numbers") {
    auto r = run({"analyze"}, "W 0x0 00\nW 0x10 abc\n");
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("line 2") != std::string::npos);

    r = run({"analyze", "--format", "raw"}, "");
    CHECK(r.code == kExitInput);

    // Baseline termination power is zero on an all-0xFF trace.
    r = run({"analyze", "--format", "raw"}, std::string(30, '\xff'));
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("zero") != std::string::npos);

    r = run({"decode"}, "# pam3 alg=DBI\nA:-------- B:-------- F:1\n");
    CHECK(r.code == kExitInput);

    r = run({"analyze", "-i", "/nonexistent/trace.txt"});
    CHECK(r.code == kExitInput);

    r = run({"analyze", "--op", "read"}, "W 0x0 000000\n");
    CHECK(r.code == kExitInput);
}

TEST_CASE("outputs are deterministic") {
    const std::string trace = "W 0x0 0011223344556677\nR 0x8 8899aabbccddeeff\n";
    const std::vector<std::string> args{"analyze", "--report", "json", "--include-flags"};
    const auto a = run(args, trace);
    const auto b = run(args, trace);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(readReport(a.out, ReportFormat::JSON).flagsIncluded);
}
