#pragma once

#include <iosfwd>
#include <string>

#include "sstp/instance.hpp"

namespace sstp {

/// Reads the line-oriented instance format (see README):
///
///   SSTP <nodes> <edges> <scenarios>
///   E <u> <v> <c0>                      one line per edge, 1-based node ids
///   S <probability> <k> <t1> ... <tk>   then, per scenario,
///   C <cs>                              one cost line per edge, edge order
///
/// '#' starts a comment, blank lines are skipped. Throws sstp::ParseError
/// with the offending line number; the parsed instance is fully validated
/// (probability sum within 1e-6, no duplicate edges, ids in range).
SstpInstance parse_instance(std::istream& in);

/// Convenience overload: opens and parses a file. Error messages include
/// the path.
SstpInstance parse_instance_file(const std::string& path);

/// Canonical form of an instance: no comments, single spaces, terminals
/// sorted, reals in shortest round-trip notation. write(parse(write(x)))
/// equals write(x) byte for byte.
std::string write_instance(const SstpInstance& instance);

} // namespace sstp
