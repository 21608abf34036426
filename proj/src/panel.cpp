#include "marketmap/panel.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "marketmap/rng.hpp"

namespace marketmap {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::vector<std::string> split_plain(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

// RFC-4180 style fields: quotes protect commas, doubled quotes escape quotes.
std::vector<std::string> split_quoted(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

bool is_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (s[i] < '0' || s[i] > '9') return false;
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

double parse_price(const std::string& field, int row, const std::string& ticker) {
  double x = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (ec != std::errc{} || ptr != end)
    fail("row " + std::to_string(row) + ": unparseable price for " + ticker +
         ": '" + field + "'");
  if (!(x > 0.0))
    fail("row " + std::to_string(row) + ": price for " + ticker +
         " must be strictly positive, got " + field);
  return x;
}

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Plain Gregorian arithmetic; enough to emit a weekday-only date sequence.
struct CivilDate {
  int y, m, d;
  int weekday;  // 0 = Monday
};

int days_in_month(int y, int m) {
  static const int base[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return (m == 2 && leap) ? 29 : base[m - 1];
}

void advance_to_next_weekday(CivilDate& date) {
  do {
    date.weekday = (date.weekday + 1) % 7;
    if (++date.d > days_in_month(date.y, date.m)) {
      date.d = 1;
      if (++date.m > 12) {
        date.m = 1;
        ++date.y;
      }
    }
  } while (date.weekday >= 5);
}

std::string format_date(const CivilDate& date) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.y, date.m, date.d);
  return buf;
}

}  // namespace

PricePanel load_prices(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail("empty price file: " + path.string());

  const auto header = split_plain(lines[0]);
  if (header.size() < 2 || header[0] != "date")
    fail("price file header must be 'date,<tickers...>', got '" + lines[0] + "'");

  PricePanel panel;
  std::set<std::string> seen;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j].empty()) fail("empty ticker in header column " + std::to_string(j + 1));
    if (!seen.insert(header[j]).second) fail("duplicate ticker '" + header[j] + "'");
    panel.tickers.push_back(header[j]);
  }

  const std::size_t n = panel.tickers.size();
  std::vector<std::string> body;
  for (std::size_t k = 1; k < lines.size(); ++k)
    if (!lines[k].empty()) body.push_back(lines[k]);

  panel.prices.resize(static_cast<Eigen::Index>(body.size()),
                      static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < body.size(); ++k) {
    const int row = static_cast<int>(k) + 2;  // 1-based, after the header
    const auto fields = split_plain(body[k]);
    if (fields.size() != n + 1)
      fail("row " + std::to_string(row) + ": expected " + std::to_string(n + 1) +
           " fields, got " + std::to_string(fields.size()));
    if (!is_iso_date(fields[0]))
      fail("row " + std::to_string(row) + ": malformed date '" + fields[0] + "'");
    if (!panel.dates.empty() && fields[0] <= panel.dates.back())
      fail("row " + std::to_string(row) + ": dates must be strictly increasing ('" +
           panel.dates.back() + "' then '" + fields[0] + "')");
    panel.dates.push_back(fields[0]);
    for (std::size_t j = 0; j < n; ++j)
      panel.prices(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          parse_price(fields[j + 1], row, panel.tickers[j]);
  }
  if (panel.dates.empty()) fail("price file has no data rows: " + path.string());
  return panel;
}

void write_prices(const PricePanel& panel, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "date";
  for (const auto& t : panel.tickers) out << ',' << t;
  out << '\n';
  for (std::size_t k = 0; k < panel.dates.size(); ++k) {
    out << panel.dates[k];
    for (Eigen::Index j = 0; j < panel.prices.cols(); ++j)
      out << ',' << format_double(panel.prices(static_cast<Eigen::Index>(k), j));
    out << '\n';
  }
  if (!out) fail("failed writing " + path.string());
}

std::vector<AssetMeta> load_metadata(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail("empty metadata file: " + path.string());
  if (lines[0] != "ticker,company,sector")
    fail("metadata header must be 'ticker,company,sector', got '" + lines[0] + "'");

  std::vector<AssetMeta> meta;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto fields = split_quoted(lines[k]);
    if (fields.size() != 3)
      fail("metadata row " + std::to_string(k + 1) + ": expected 3 fields, got " +
           std::to_string(fields.size()));
    if (fields[0].empty())
      fail("metadata row " + std::to_string(k + 1) + ": empty ticker");
    if (fields[2].empty())
      fail("metadata row " + std::to_string(k + 1) + ": empty sector for " + fields[0]);
    meta.push_back({fields[0], fields[1], fields[2]});
  }
  return meta;
}

void write_metadata(const std::vector<AssetMeta>& meta,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "ticker,company,sector\n";
  for (const auto& m : meta)
    out << quote_field(m.ticker) << ',' << quote_field(m.company) << ','
        << quote_field(m.sector) << '\n';
  if (!out) fail("failed writing " + path.string());
}

ReturnPanel compute_log_returns(const PricePanel& panel) {
  if (panel.prices.rows() < 2)
    fail("log returns need at least two price rows, got " +
         std::to_string(panel.prices.rows()));
  ReturnPanel r;
  r.tickers = panel.tickers;
  r.returns.resize(panel.prices.rows() - 1, panel.prices.cols());
  for (Eigen::Index t = 0; t + 1 < panel.prices.rows(); ++t)
    for (Eigen::Index j = 0; j < panel.prices.cols(); ++j)
      r.returns(t, j) =
          std::log(panel.prices(t + 1, j)) - std::log(panel.prices(t, j));
  return r;
}

SyntheticPanel generate_synthetic_panel(int n_assets, int n_days,
                                        const std::vector<SectorSpec>& sectors,
                                        double market_loading,
                                        std::uint64_t seed) {
  if (n_assets < 1) fail("n_assets must be positive");
  if (n_days < 2) fail("n_days must be at least 2, got " + std::to_string(n_days));
  if (market_loading < 0.0 || market_loading >= 1.0)
    fail("market loading must lie in [0, 1)");
  int total = 0;
  for (const auto& s : sectors) {
    if (s.size <= 0) fail("sector '" + s.label + "' must have positive size");
    if (s.loading < 0.0 || s.loading >= 1.0)
      fail("sector loading for '" + s.label + "' must lie in [0, 1)");
    const double factor_var =
        market_loading * market_loading + s.loading * s.loading;
    if (factor_var >= 1.0)
      fail("combined factor variance for sector '" + s.label +
           "' reaches " + std::to_string(factor_var) + "; must stay below 1");
    total += s.size;
  }
  if (total != n_assets)
    fail("sector sizes sum to " + std::to_string(total) + ", expected " +
         std::to_string(n_assets));

  SyntheticPanel out;
  std::vector<int> sector_of(n_assets);
  std::vector<double> sector_loading(n_assets), residual(n_assets);
  {
    int i = 0;
    for (std::size_t s = 0; s < sectors.size(); ++s)
      for (int k = 0; k < sectors[s].size; ++k, ++i) {
        sector_of[i] = static_cast<int>(s);
        sector_loading[i] = sectors[s].loading;
        residual[i] = std::sqrt(1.0 - market_loading * market_loading -
                                sectors[s].loading * sectors[s].loading);
        const std::string ordinal = std::to_string(k + 1);
        out.meta.push_back({sectors[s].label + ordinal,
                            sectors[s].label + " Holding " + ordinal,
                            sectors[s].label});
      }
  }

  // one independent stream per factor and per residual series
  rng::SplitMix64 market = rng::derive_stream(seed, {0, 0});
  std::vector<rng::SplitMix64> sector_streams;
  for (std::size_t s = 0; s < sectors.size(); ++s)
    sector_streams.push_back(rng::derive_stream(seed, {1, s}));
  std::vector<rng::SplitMix64> residual_streams;
  for (int i = 0; i < n_assets; ++i)
    residual_streams.push_back(
        rng::derive_stream(seed, {2, static_cast<std::uint64_t>(i)}));

  const int n_returns = n_days - 1;
  Eigen::MatrixXd returns(n_returns, n_assets);
  for (int t = 0; t < n_returns; ++t) {
    const double f = market.next_gaussian();
    std::vector<double> g(sectors.size());
    for (std::size_t s = 0; s < sectors.size(); ++s)
      g[s] = sector_streams[s].next_gaussian();
    for (int i = 0; i < n_assets; ++i)
      returns(t, i) = market_loading * f + sector_loading[i] * g[sector_of[i]] +
                      residual[i] * residual_streams[i].next_gaussian();
  }

  out.prices.tickers.reserve(out.meta.size());
  for (const auto& m : out.meta) out.prices.tickers.push_back(m.ticker);
  out.prices.prices.resize(n_days, n_assets);
  out.prices.prices.row(0).setConstant(100.0);
  for (int t = 0; t < n_returns; ++t)
    for (int i = 0; i < n_assets; ++i)
      out.prices.prices(t + 1, i) =
          out.prices.prices(t, i) * std::exp(returns(t, i));

  CivilDate date{2010, 1, 4, 0};  // a Monday
  out.prices.dates.push_back(format_date(date));
  for (int t = 1; t < n_days; ++t) {
    advance_to_next_weekday(date);
    out.prices.dates.push_back(format_date(date));
  }
  return out;
}

}  // namespace marketmap
