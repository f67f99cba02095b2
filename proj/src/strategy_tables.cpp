#include "sdsteer/strategy_tables.hpp"

#include "sdsteer/channel_factory.hpp"

#include <cmath>
#include <numeric>
#include <string_view>

namespace sdsteer {

double StrategyTableRow::average() const {
  return std::accumulate(per_gate.begin(), per_gate.end(), 0.0) /
         static_cast<double>(per_gate.size());
}

namespace {

StrategyTableRow row(std::string_view strategy, BlochVector probe, std::vector<double> per_gate) {
  return {GuessStrategy::parse(strategy), probe, std::move(per_gate)};
}

std::vector<double> repeated(double p, std::size_t m) { return std::vector<double>(m, p); }

}  // namespace

std::vector<StrategyTableRow> strategy_table(int n) {
  require_supported_setting_count(n);
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const double s5 = std::sqrt(5.0);
  const double s6 = std::sqrt(6.0);
  const double s15 = std::sqrt(15.0);
  switch (n) {
    case 2: {
      const auto p = repeated((1 + 1 / s2) / 2, 1);
      return {row("0", {0, 0, 1}, p), row("1", {0, 0, -1}, p), row("b", {1, 0, 0}, p),
              row("b^1", {-1, 0, 0}, p)};
    }
    case 3: {
      const auto p = repeated((1 + 1 / s3) / 2, 3);
      return {
          row("0,0,0", {0, -1 / s3, s2 / s3}, p),
          row("1,1,1", {0, 1 / s3, -s2 / s3}, p),
          row("0,b,b^1", {0, 1 / s3, s2 / s3}, p),
          row("1,b^1,b", {0, -1 / s3, -s2 / s3}, p),
          row("b,b,1", {s2 / s3, 1 / s3, 0}, p),
          row("b^1,b^1,0", {-s2 / s3, -1 / s3, 0}, p),
          row("b,0,b", {s2 / s3, -1 / s3, 0}, p),
          row("b^1,1,b^1", {-s2 / s3, 1 / s3, 0}, p),
      };
    }
    case 4: {
      const auto p = repeated((1 + 1 / s3) / 2, 2);
      return {
          row("0,0", {0, 0, 1}, p),
          row("1,1", {0, 0, -1}, p),
          row("b,b", {1 / s2, 1 / s2, 0}, p),
          row("b^1,b^1", {-1 / s2, -1 / s2, 0}, p),
          row("b,b^1", {1 / s2, -1 / s2, 0}, p),
          row("b^1,b", {-1 / s2, 1 / s2, 0}, p),
      };
    }
    case 6: {
      const double a = std::sqrt(50 + 10 * s5) / 10;
      const double b = std::sqrt(50 - 10 * s5) / 10;
      const double hi = (15 + s5) / 20;
      const double lo = (5 + s5) / 10;
      const std::vector<double> first{hi, lo, lo};
      const std::vector<double> second{lo, hi, lo};
      const std::vector<double> third{lo, lo, hi};
      return {
          row("b,b,0", {a, 0, b}, first),
          row("b^1,b^1,1", {-a, 0, -b}, first),
          row("b^1,b,1", {-a, 0, b}, first),
          row("b,b^1,0", {a, 0, -b}, first),
          row("b,0,b", {b, a, 0}, third),
          row("b^1,1,b^1", {-b, -a, 0}, third),
          row("b^1,0,b", {-b, a, 0}, third),
          row("b,1,b^1", {b, -a, 0}, third),
          row("0,b,b", {0, b, a}, second),
          row("1,b^1,b^1", {0, -b, -a}, second),
          row("0,b,b^1", {0, -b, a}, second),
          row("1,b^1,b", {0, b, -a}, second),
      };
    }
    default: {  // n == 10
      const double q = s2 / (s15 - s3);
      const double w = (s5 - 1) / (2 * s3);
      const double u = (s5 - 1) / (2 * s6);
      const double t = 2 / (s15 - s3);
      const double p56 = 5.0 / 6;
      const double p23 = 2.0 / 3;
      const double pa = (7 + s5) / 12;
      const double pb = (3 + s5) / 6;
      return {
          row("b,b,b^1,b^1,0", {s2 / s3, 0, 1 / s3}, {p56, p23, pa, pb, p23}),
          row("b,b^1,b^1,0,b", {1 / s6, s5 / s6, 0}, {p23, pa, pb, p23, p56}),
          row("b^1,b^1,0,b,b", {-q, q, -w}, {pa, pb, p23, p56, p23}),
          row("b^1,0,b,b,b^1", {-s5 / s6, -1 / s6, 0}, {pb, p23, p56, p23, pa}),
          row("0,b,b,b^1,b^1", {0, -s2 / s3, 1 / s3}, {p23, p56, p23, pa, pb}),
          row("b^1,b^1,b,b,1", {-s2 / s3, 0, -1 / s3}, {p56, p23, pa, pb, p23}),
          row("b^1,b,b,1,b^1", {-1 / s6, -s5 / s6, 0}, {p23, pa, pb, p23, p56}),
          row("b,b,1,b^1,b^1", {q, -q, w}, {pa, pb, p23, p56, p23}),
          row("b,1,b^1,b^1,b", {s5 / s6, 1 / s6, 0}, {pb, p23, p56, p23, pa}),
          row("1,b^1,b^1,b,b", {0, s2 / s3, -1 / s3}, {p23, p56, p23, pa, pb}),
          row("b^1,0,0,0,b^1", {-s2 / s3, 0, 1 / s3}, {p56, pa, pa, p23, pa}),
          row("0,0,0,b^1,b^1", {-u, -u, t}, {pa, pa, p23, pa, p56}),
          row("0,0,b^1,b^1,0", {u, u, t}, {pa, p23, pa, p56, pa}),
          row("0,b^1,b^1,0,0", {0, s2 / s3, 1 / s3}, {p23, pa, p56, pa, pa}),
          row("b^1,b^1,0,0,0", {-q, q, w}, {pa, p56, pa, pa, p23}),
          row("b,1,1,1,b", {s2 / s3, 0, -1 / s3}, {p56, pa, pa, p23, pa}),
          row("1,1,1,b,b", {u, u, -t}, {pa, pa, p23, pa, p56}),
          row("1,1,b,b,1", {-u, -u, -t}, {pa, p23, pa, p56, pa}),
          row("1,b,b,1,1", {0, -s2 / s3, -1 / s3}, {p23, pa, p56, pa, pa}),
          row("b,b,1,1,1", {q, -q, -w}, {pa, p56, pa, pa, p23}),
      };
    }
  }
}

}  // namespace sdsteer
