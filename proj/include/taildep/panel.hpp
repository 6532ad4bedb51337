#pragma once

#include <chrono>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace taildep {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

/// Date x ticker matrix (prices or log returns). Missing cells are NaN.
struct ReturnPanel {
  std::vector<Date> dates;
  std::vector<std::string> tickers;
  std::vector<double> values;  // row-major, dates.size() x tickers.size()

  std::size_t rows() const { return dates.size(); }
  std::size_t cols() const { return tickers.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }

  /// Throws ErrorKind::Data if the ticker is absent.
  std::size_t column_index(std::string_view ticker) const;
  std::vector<double> column(std::string_view ticker) const;

  bool operator==(const ReturnPanel& other) const;
};

enum class PriceFormat {
  Wide,  // date,TICKER1,TICKER2,...
  Long,  // date,ticker,price
};

/// Errors (ErrorKind::Data) name the offending line: unparseable dates or
/// numbers, duplicate (date, ticker) cells, dates not strictly increasing
/// (wide format), ragged rows.
ReturnPanel parse_prices(std::istream& in, PriceFormat format);
ReturnPanel load_prices(const std::string& path, PriceFormat format);

/// r_t = log p_t - log p_{t-1}; one row fewer. A missing price gives missing
/// returns on both adjacent days. Non-positive prices are data errors.
ReturnPanel log_returns(const ReturnPanel& prices);

/// Wide CSV with a "date" column.
void write_panel_csv(std::ostream& out, const ReturnPanel& panel);

}  // namespace taildep
