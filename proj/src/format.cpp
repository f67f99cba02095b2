#include "sdsteer/format.hpp"

#include <cstdio>

namespace sdsteer {

std::string fmt_real(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

}  // namespace sdsteer
