// format.hpp: shared numeric formatting for tabular output.

#pragma once

#include <string>

namespace sdsteer {

/// 9 significant digits, shortest of fixed/scientific; -0 prints as 0.
std::string fmt_real(double x);

/// "true" / "false"
std::string fmt_bool(bool b);

}  // namespace sdsteer
