#include "datetime.hpp"
#include "tsflow/error.hpp"
#include "tsflow/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tsflow {

std::optional<std::int64_t> parse_instant(std::string_view text) {
  const auto t = detail::parse_civil(text);
  if (!t) {
    return std::nullopt;
  }
  return detail::to_epoch_seconds(*t);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_has_content = false;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    if (row_has_content || row.size() > 1 || !row.front().empty()) {
      rows.push_back(std::move(row));
    }
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
    case '"':
      quoted = true;
      row_has_content = true;
      break;
    case ',':
      end_cell();
      row_has_content = true;
      break;
    case '\r':
      break;
    case '\n':
      end_row();
      break;
    default:
      cell.push_back(c);
    }
  }
  if (!cell.empty() || !row.empty() || row_has_content) {
    end_row();
  }
  return rows;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  double v = 0.0;
  const char *first = s.data();
  if (*first == '+') {
    ++first;
  }
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

} // namespace

Ingested ingest_csv(const std::filesystem::path &locator, const InputSpec &spec) {
  std::ifstream in(locator, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoError, "cannot read " + locator.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = parse_csv(buf.str());
  if (rows.empty()) {
    throw Error(Errc::HeaderMismatch, "no header row in " + locator.string());
  }

  std::vector<std::string> header;
  for (const auto &h : rows.front()) {
    header.push_back(trim(h));
  }
  auto column_of = [&](const std::string &name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };

  std::optional<std::size_t> time_col;
  std::optional<std::size_t> value_col;
  std::string value_name;
  for (const auto &f : spec.fields) {
    const auto col = column_of(f.name);
    if (!col) {
      std::string expected, found;
      for (const auto &g : spec.fields) expected += (expected.empty() ? "" : ",") + g.name;
      for (const auto &h : header) found += (found.empty() ? "" : ",") + h;
      throw Error(Errc::HeaderMismatch,
                  "header mismatch: expected [" + expected + "], found [" + found + "]");
    }
    if (f.dtype == FieldType::Datetime && !time_col) {
      time_col = col;
    }
    if ((f.dtype == FieldType::Integer || f.dtype == FieldType::Real) && !value_col) {
      value_col = col;
      value_name = f.name;
    }
  }
  if (!value_col) {
    throw Error(Errc::HeaderMismatch, "input declares no numeric field");
  }
  if (rows.size() < 2) {
    throw Error(Errc::EmptySeries, locator.string() + " has no data rows");
  }

  Ingested out;
  std::vector<double> values;
  std::vector<std::int64_t> stamps;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    const std::string cell = *value_col < row.size() ? trim(row[*value_col]) : std::string();
    if (const auto v = parse_number(cell)) {
      values.push_back(*v);
    } else {
      values.push_back(std::numeric_limits<double>::quiet_NaN());
      out.warnings.push_back("row " + std::to_string(r + 1) + ": '" + cell + "' in " + value_name +
                             " is not numeric; treated as missing");
    }
    if (time_col) {
      const std::string t = *time_col < row.size() ? trim(row[*time_col]) : std::string();
      const auto instant = parse_instant(t);
      if (!instant) {
        throw Error(Errc::BadTimestamps,
                    "row " + std::to_string(r + 1) + ": unparseable datetime '" + t + "'");
      }
      if (!stamps.empty() && *instant <= stamps.back()) {
        throw Error(Errc::BadTimestamps,
                    "row " + std::to_string(r + 1) + ": timestamps must be strictly increasing");
      }
      stamps.push_back(*instant);
    }
  }
  if (time_col) {
    out.series = TimeSeries(std::move(values), std::move(stamps), spec.frequency, value_name);
  } else {
    out.series = TimeSeries(std::move(values), {}, spec.frequency, value_name);
  }
  return out;
}

} // namespace tsflow
