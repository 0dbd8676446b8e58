#include "mdkit/format.hpp"

#include <charconv>
#include <cmath>
#include <istream>

namespace mdkit {

std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

bool parse_real(std::string_view token, double& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

bool read_real(std::istream& is, double& out) {
  std::string token;
  if (!(is >> token)) return false;
  return parse_real(token, out);
}

}  // namespace mdkit
