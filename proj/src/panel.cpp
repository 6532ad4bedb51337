#include "taildep/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>

#include "taildep/csv.hpp"
#include "taildep/error.hpp"

namespace taildep {

namespace {

[[noreturn]] void data_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::Data, "line " + std::to_string(line) + ": " + what);
}

double parse_price(const csv::Row& row, std::size_t field) {
  double value;
  if (!csv::parse_double(row.fields[field], value)) {
    data_error(row.line, "cannot parse number '" + row.fields[field] + "'");
  }
  return value;
}

Date parse_row_date(const csv::Row& row) {
  const auto date = parse_date(row.fields[0]);
  if (!date) data_error(row.line, "cannot parse date '" + row.fields[0] + "'");
  return *date;
}

ReturnPanel parse_wide(const std::vector<csv::Row>& rows) {
  ReturnPanel panel;
  const auto& header = rows.front().fields;
  if (header.size() < 2) data_error(rows.front().line, "expected date and ticker columns");
  panel.tickers.assign(header.begin() + 1, header.end());
  for (std::size_t c = 0; c < panel.tickers.size(); ++c) {
    for (std::size_t d = 0; d < c; ++d) {
      if (panel.tickers[c] == panel.tickers[d]) {
        data_error(rows.front().line, "duplicate ticker column '" + panel.tickers[c] + "'");
      }
    }
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      data_error(row.line, "expected " + std::to_string(header.size()) + " fields, found " +
                               std::to_string(row.fields.size()));
    }
    const Date date = parse_row_date(row);
    if (!panel.dates.empty()) {
      if (date == panel.dates.back()) {
        data_error(row.line, "duplicate date " + row.fields[0]);
      }
      if (date < panel.dates.back()) {
        data_error(row.line, "dates not strictly increasing at " + row.fields[0]);
      }
    }
    panel.dates.push_back(date);
    for (std::size_t c = 1; c < row.fields.size(); ++c) {
      panel.values.push_back(parse_price(row, c));
    }
  }
  return panel;
}

ReturnPanel parse_long(const std::vector<csv::Row>& rows) {
  std::map<Date, std::unordered_map<std::string, double>> cells;
  std::vector<std::string> tickers;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != 3) data_error(row.line, "expected date,ticker,price");
    const Date date = parse_row_date(row);
    const std::string& ticker = row.fields[1];
    if (ticker.empty()) data_error(row.line, "empty ticker");
    const double price = parse_price(row, 2);
    if (seen.emplace(ticker, tickers.size()).second) tickers.push_back(ticker);
    if (!cells[date].emplace(ticker, price).second) {
      data_error(row.line, "duplicate cell for " + row.fields[0] + " / " + ticker);
    }
  }
  ReturnPanel panel;
  panel.tickers = tickers;
  for (const auto& [date, row] : cells) {
    panel.dates.push_back(date);
    for (const auto& ticker : tickers) {
      const auto it = row.find(ticker);
      panel.values.push_back(it == row.end() ? std::numeric_limits<double>::quiet_NaN()
                                             : it->second);
    }
  }
  return panel;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [](std::string_view part, auto& out) {
    const auto r = std::from_chars(part.data(), part.data() + part.size(), out);
    return r.ec == std::errc{} && r.ptr == part.data() + part.size();
  };
  if (!parse(text.substr(0, 4), y) || !parse(text.substr(5, 2), m) ||
      !parse(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date date) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buffer;
}

std::size_t ReturnPanel::column_index(std::string_view ticker) const {
  const auto it = std::find(tickers.begin(), tickers.end(), ticker);
  if (it == tickers.end()) {
    fail(ErrorKind::Data, "ticker '" + std::string(ticker) + "' not in panel");
  }
  return static_cast<std::size_t>(it - tickers.begin());
}

std::vector<double> ReturnPanel::column(std::string_view ticker) const {
  const std::size_t c = column_index(ticker);
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

bool ReturnPanel::operator==(const ReturnPanel& other) const {
  if (dates != other.dates || tickers != other.tickers ||
      values.size() != other.values.size()) {
    return false;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool both_nan = std::isnan(values[i]) && std::isnan(other.values[i]);
    if (!both_nan && values[i] != other.values[i]) return false;
  }
  return true;
}

ReturnPanel parse_prices(std::istream& in, PriceFormat format) {
  const auto rows = csv::read(in);
  if (rows.empty()) fail(ErrorKind::Data, "empty price file");
  return format == PriceFormat::Wide ? parse_wide(rows) : parse_long(rows);
}

ReturnPanel load_prices(const std::string& path, PriceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  return parse_prices(in, format);
}

ReturnPanel log_returns(const ReturnPanel& prices) {
  if (prices.rows() < 2) fail(ErrorKind::Data, "need at least two price rows");
  for (std::size_t r = 0; r < prices.rows(); ++r) {
    for (std::size_t c = 0; c < prices.cols(); ++c) {
      const double p = prices.at(r, c);
      if (!std::isnan(p) && !(p > 0.0 && std::isfinite(p))) {
        fail(ErrorKind::Data, "non-positive price for " + prices.tickers[c] + " on " +
                                  format_date(prices.dates[r]));
      }
    }
  }
  ReturnPanel out;
  out.tickers = prices.tickers;
  out.dates.assign(prices.dates.begin() + 1, prices.dates.end());
  out.values.reserve(out.dates.size() * out.tickers.size());
  for (std::size_t r = 1; r < prices.rows(); ++r) {
    for (std::size_t c = 0; c < prices.cols(); ++c) {
      out.values.push_back(std::log(prices.at(r, c)) - std::log(prices.at(r - 1, c)));
    }
  }
  return out;
}

void write_panel_csv(std::ostream& out, const ReturnPanel& panel) {
  std::vector<std::string> fields{"date"};
  fields.insert(fields.end(), panel.tickers.begin(), panel.tickers.end());
  csv::write_row(out, fields);
  for (std::size_t r = 0; r < panel.rows(); ++r) {
    fields.assign(1, format_date(panel.dates[r]));
    for (std::size_t c = 0; c < panel.cols(); ++c) {
      fields.push_back(csv::format_double(panel.at(r, c)));
    }
    csv::write_row(out, fields);
  }
}

}  // namespace taildep
