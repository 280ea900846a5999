#pragma once

// Tabular report rows and their human / CSV / JSON renderings.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wban/schemes.hpp"

namespace wban {

enum class OutputFormat { Table, Csv, Json };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ValidationError("format", "expected table, csv or json");
}

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Column {
  std::string name;
  // Decimal places in the human table; negative selects scientific notation.
  int decimals = 2;
};

struct Report {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

// Shortest representation that round-trips.
inline std::string exact_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fixed_double(double v, int decimals) {
  char buf[64];
  if (decimals < 0)
    std::snprintf(buf, sizeof buf, "%.3e", v);
  else
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render_cell(const Cell& c, int decimals, bool exact) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, double>) return exact ? exact_double(v) : fixed_double(v, decimals);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

}  // namespace detail

inline void write_table(std::ostream& os, const Report& r) {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].name.size();
  for (const auto& row : r.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      line.push_back(detail::render_cell(row[c], r.columns[c].decimals, false));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const auto& get) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      const std::string s = get(c);
      os << (c ? "  " : "") << s << std::string(width[c] - s.size(), ' ');
    }
    os << '\n';
  };
  emit([&](std::size_t c) { return r.columns[c].name; });
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  os << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto& line : text) emit([&](std::size_t c) { return line[c]; });
}

inline void write_csv(std::ostream& os, const Report& r) {
  for (std::size_t c = 0; c < r.columns.size(); ++c)
    os << (c ? "," : "") << detail::csv_escape(r.columns[c].name);
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < r.columns.size(); ++c)
      os << (c ? "," : "") << detail::csv_escape(detail::render_cell(row[c], 0, true));
    os << '\n';
  }
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) obj[r.columns[c].name] = nullptr;
            else obj[r.columns[c].name] = v;
          },
          row[c]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline void write_report(std::ostream& os, const Report& r, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Table: write_table(os, r); break;
    case OutputFormat::Csv: write_csv(os, r); break;
    case OutputFormat::Json: os << to_json(r).dump(2) << '\n'; break;
  }
}

// ---------------------------------------------------------------------------
// Per-sensor rows

struct ReportRow {
  std::string sensor;
  std::string scheme;
  std::optional<SchemeResult> result;
  // Set when evaluation failed; the row is still emitted.
  std::string error;
};

inline std::string flags_text(const ModelFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(f.saturated, "saturated");
  add(f.uncalibrated_compute, "uncalibrated-compute");
  add(f.extrapolated_adc, "extrapolated-adc");
  return out;
}

enum class RowView { Energy, Lifetime, Storage };

// Human tables show the columns relevant to the command; CSV and JSON carry
// every field so machine consumers see the same numbers regardless of view.
inline Report make_report(const std::vector<ReportRow>& rows, RowView view, OutputFormat fmt) {
  Report r;
  const bool full = fmt != OutputFormat::Table;
  r.columns = {{"sensor"}, {"scheme"}, {"f_s_hz", 3}};
  const bool energy = full || view == RowView::Energy;
  const bool lifetime = full || view == RowView::Lifetime;
  const bool storage = full || view == RowView::Storage;
  if (energy) {
    r.columns.push_back({"e_s_j_per_day", -1});
    r.columns.push_back({"e_t_j_per_day"});
    r.columns.push_back({"e_c_j_per_day"});
    r.columns.push_back({"e_buf_j_per_day"});
  }
  if (energy || lifetime) r.columns.push_back({"e_total_j_per_day"});
  if (lifetime) r.columns.push_back({"lifetime_days"});
  if (storage) {
    r.columns.push_back({"storage_bytes_per_year", 0});
    r.columns.push_back({"storage_mib_per_year"});
    r.columns.push_back({"storage_gib_per_year"});
  }
  r.columns.push_back({"flags"});
  r.columns.push_back({"error"});

  for (const auto& row : rows) {
    std::vector<Cell> cells{row.sensor, row.scheme};
    const auto* res = row.result ? &*row.result : nullptr;
    auto num = [&](auto get) -> Cell { return res ? Cell{get(*res)} : Cell{}; };
    cells.push_back(num([](const SchemeResult& s) { return s.f_s_hz; }));
    if (energy) {
      cells.push_back(num([](const SchemeResult& s) { return s.energy.e_s(); }));
      cells.push_back(num([](const SchemeResult& s) { return s.energy.e_t(); }));
      cells.push_back(num([](const SchemeResult& s) { return s.energy.e_c(); }));
      cells.push_back(num([](const SchemeResult& s) { return s.energy.e_buf(); }));
    }
    if (energy || lifetime) cells.push_back(num([](const SchemeResult& s) { return s.energy.e_total(); }));
    if (lifetime) cells.push_back(num([](const SchemeResult& s) { return s.lifetime_days; }));
    if (storage) {
      cells.push_back(num([](const SchemeResult& s) { return s.storage.bytes_per_year; }));
      cells.push_back(num([](const SchemeResult& s) { return s.storage.display_mib(); }));
      cells.push_back(num([](const SchemeResult& s) { return s.storage.display_gib(); }));
    }
    cells.push_back(res ? flags_text(res->flags) : std::string{});
    cells.push_back(row.error);
    r.rows.push_back(std::move(cells));
  }
  return r;
}

}  // namespace wban
