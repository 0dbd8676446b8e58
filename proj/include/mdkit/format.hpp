#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace mdkit {

/// Shortest text with 17 significant digits ("%.17g"); round-trips doubles
/// exactly. Non-finite values print as "nan", "inf", "-inf".
std::string fmt_real(double v);

/// Parses a full token as a double (accepts nan/inf). Returns false on
/// trailing garbage or an empty token.
bool parse_real(std::string_view token, double& out);

/// Reads one whitespace-delimited token from `is` and parses it.
bool read_real(std::istream& is, double& out);

}  // namespace mdkit
