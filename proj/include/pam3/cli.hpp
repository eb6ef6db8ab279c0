#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pam3/encoders.hpp"

namespace pam3 {

/// Exit statuses returned by runCli.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2 };

/// Encoded streams are line oriented:
///
///     # pam3 alg=SORT
///     A:--0+-0+- B:+0-0++-- F:4
///     # pad=1
///
/// Symbols are '-', '0', '+'; F is the flag in decimal. The pad trailer
/// records how many zero bytes completed the final group.
struct EncodedStream {
    AlgorithmTag algorithm = AlgorithmTag::None;
    std::vector<EncodedFrame> frames;
    std::uint8_t padBytes = 0;
};

std::string formatEncodedFrame(const EncodedFrame& frame);
void writeEncodedStream(const EncodedStream& stream, std::ostream& out);

/// Throws ParseError with a line number on malformed input.
EncodedStream readEncodedStream(std::istream& in);

/// Runs one subcommand (encode, decode, analyze, distribution, gen-random).
/// `args` excludes the program name. "-" or an omitted path means `in`/`out`.
int runCli(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pam3
