#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "taildep/panel.hpp"
#include "taildep/random.hpp"
#include "taildep/simulate.hpp"

namespace taildep::testing {

// Calendar days from 2000-01-03 on; weekends are not skipped.
inline Date day(std::size_t i) {
  using namespace std::chrono;
  return Date{sys_days{year{2000} / January / 3} + days{static_cast<int>(i)}};
}

// Return panel with an index IDX and three partners: COM (comonotone with
// IDX), CLA (Clayton(1) with IDX) and IND (independent of IDX).
inline ReturnPanel synthetic_returns(std::size_t n, std::uint64_t seed) {
  const auto clayton = sample({copula::Clayton{1.0}, n, seed});
  const auto independent = sample({copula::Independence{}, n, seed + 1});
  ReturnPanel panel;
  panel.tickers = {"IDX", "COM", "CLA", "IND"};
  for (std::size_t t = 0; t < n; ++t) {
    panel.dates.push_back(day(t + 1));
    const double z = normal_quantile(clayton.u[t]);
    panel.values.push_back(0.01 * z);
    panel.values.push_back(0.02 * z + 0.001);
    panel.values.push_back(0.015 * normal_quantile(clayton.v[t]));
    panel.values.push_back(0.012 * normal_quantile(independent.u[t]));
  }
  return panel;
}

// Prices starting at 100 whose log returns are `returns`; one row more.
inline ReturnPanel prices_from_returns(const ReturnPanel& returns) {
  ReturnPanel prices;
  prices.tickers = returns.tickers;
  prices.dates.push_back(day(0));
  std::vector<double> level(returns.cols(), std::log(100.0));
  for (double v : level) prices.values.push_back(std::exp(v));
  for (std::size_t r = 0; r < returns.rows(); ++r) {
    prices.dates.push_back(returns.dates[r]);
    for (std::size_t c = 0; c < returns.cols(); ++c) {
      level[c] += returns.at(r, c);
      prices.values.push_back(std::exp(level[c]));
    }
  }
  return prices;
}

inline void write_panel_file(const std::filesystem::path& path, const ReturnPanel& panel) {
  std::ofstream out(path, std::ios::binary);
  write_panel_csv(out, panel);
}

inline std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace taildep::testing
