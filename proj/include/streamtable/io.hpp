#pragma once

#include <streamtable/layout.hpp>
#include <streamtable/order_search.hpp>
#include <streamtable/reductions.hpp>

#include "json.hpp"

#include <array>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace streamtable {

// ---------------------------------------------------------------------------
// CSV tables
//
// First line: corner cell (blank or "row") followed by column labels. Every
// further line: row label followed by one weight per column, given as "p/q",
// integers or decimals. Fields may be double-quoted.

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      out.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw Error(ErrorKind::ParseError, "unterminated quote", line_no, out.size() + 1);
  out.push_back(was_quoted ? field : std::string(trim(field)));
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Parses a CSV table. ParseError carries 1-based line and field numbers.
inline Table parse_table_csv(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
    for (auto& l : lines) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
    }
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  }
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty input", 1);
  if (lines.front().rfind("\xEF\xBB\xBF", 0) == 0) lines.front().erase(0, 3);

  std::vector<std::string> header = detail::split_csv_line(lines.front(), 1);
  if (!header.front().empty() && header.front() != "row") {
    throw Error(ErrorKind::ParseError, "first header cell must be blank or 'row'", 1, 1);
  }
  std::vector<std::string> col_labels(header.begin() + 1, header.end());
  const std::size_t cols = col_labels.size();

  std::vector<std::vector<Rational>> grid;
  std::vector<std::string> row_labels;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    if (detail::trim(lines[li]).empty()) throw Error(ErrorKind::ParseError, "blank line inside table", line_no);
    std::vector<std::string> fields = detail::split_csv_line(lines[li], line_no);
    if (fields.size() != cols + 1) {
      throw Error(ErrorKind::ParseError,
                  "expected " + std::to_string(cols + 1) + " fields, found " + std::to_string(fields.size()), line_no);
    }
    row_labels.push_back(fields.front());
    std::vector<Rational> row;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      try {
        row.push_back(parse_rational(fields[f]));
      } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::ParseError, "not a number: '" + fields[f] + "'", line_no, f + 1);
      }
    }
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw Error(ErrorKind::EmptyTable, "table has no rows");
  return validate_table(std::move(grid), std::move(row_labels), std::move(col_labels));
}

inline std::string write_table_csv(const Table& table) {
  std::string out;
  for (const auto& label : table.col_labels()) out += "," + detail::csv_field(label);
  out += "\n";
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out += detail::csv_field(table.row_labels()[i]);
    for (std::size_t j = 0; j < table.cols(); ++j) out += "," + to_string(table.weight(i, j));
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layout JSON
//
// { "rows", "cols", "row_labels", "col_labels", "weights": [[...]],
//   "heights": ["p/q"], "order": [1-based table rows, top to bottom],
//   "cells": [{ "row", "col", "left", "right" }], "metrics": { "excess", "splits" } }
// Row and column indices are 1-based; rationals are "p/q" strings.

inline nlohmann::ordered_json layout_to_json(const Layout& layout) {
  const Table& t = *layout.table;
  nlohmann::ordered_json doc;
  doc["rows"] = t.rows();
  doc["cols"] = t.cols();
  doc["row_labels"] = t.row_labels();
  doc["col_labels"] = t.col_labels();
  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < t.cols(); ++j) row.push_back(to_string(t.weight(i, j)));
    weights.push_back(std::move(row));
  }
  doc["weights"] = std::move(weights);
  nlohmann::ordered_json heights = nlohmann::ordered_json::array();
  for (const auto& h : layout.heights.values()) heights.push_back(to_string(h));
  doc["heights"] = std::move(heights);
  nlohmann::ordered_json order = nlohmann::ordered_json::array();
  for (std::size_t p : layout.order.perm()) order.push_back(p + 1);
  doc["order"] = std::move(order);
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& r : layout.rects) {
    cells.push_back({{"row", r.row + 1}, {"col", r.col + 1}, {"left", to_string(r.left)}, {"right", to_string(r.right)}});
  }
  doc["cells"] = std::move(cells);
  doc["metrics"] = {{"excess", to_string(excess_area(layout))}, {"splits", split_count(layout)}};
  return doc;
}

inline std::string write_layout_json(const Layout& layout) { return layout_to_json(layout).dump(2) + "\n"; }

/// Rebuilds a layout from JSON. Weights default to the cell areas when the
/// "weights" key is absent.
inline Layout parse_layout_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("layout JSON: ") + e.what());
  }
  try {
    const std::size_t r = doc.at("rows").get<std::size_t>();
    const std::size_t c = doc.at("cols").get<std::size_t>();
    std::vector<Rational> hs;
    for (const auto& h : doc.at("heights")) hs.push_back(parse_rational(h.get<std::string>()));
    if (hs.size() != r) throw Error(ErrorKind::ParseError, "layout JSON: height count differs from rows");
    RowHeights heights(std::move(hs));

    std::vector<std::size_t> perm;
    for (const auto& p : doc.at("order")) {
      std::size_t v = p.get<std::size_t>();
      if (v == 0) throw Error(ErrorKind::ParseError, "layout JSON: order is 1-based");
      perm.push_back(v - 1);
    }
    RowOrder order(std::move(perm));
    if (order.size() != r) throw Error(ErrorKind::ParseError, "layout JSON: order length differs from rows");

    std::vector<CellRect> rects(r * c);
    std::vector<bool> filled(r * c, false);
    for (const auto& cell : doc.at("cells")) {
      std::size_t i = cell.at("row").get<std::size_t>();
      std::size_t j = cell.at("col").get<std::size_t>();
      if (i == 0 || j == 0 || i > r || j > c) throw Error(ErrorKind::ParseError, "layout JSON: cell index out of range");
      --i;
      --j;
      rects[i * c + j] = {i, j, parse_rational(cell.at("left").get<std::string>()),
                          parse_rational(cell.at("right").get<std::string>())};
      filled[i * c + j] = true;
    }
    for (bool f : filled) {
      if (!f) throw Error(ErrorKind::ParseError, "layout JSON: missing cell");
    }

    std::vector<std::vector<Rational>> grid(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (doc.contains("weights")) {
          grid[i].push_back(parse_rational(doc["weights"].at(i).at(j).get<std::string>()));
        } else {
          grid[i].push_back(rects[i * c + j].width() * heights[i]);
        }
      }
    }
    std::vector<std::string> row_labels, col_labels;
    if (doc.contains("row_labels")) row_labels = doc["row_labels"].get<std::vector<std::string>>();
    if (doc.contains("col_labels")) col_labels = doc["col_labels"].get<std::vector<std::string>>();
    auto table = std::make_shared<const Table>(validate_table(std::move(grid), std::move(row_labels), std::move(col_labels)));
    return Layout{table, std::move(heights), std::move(order), std::move(rects)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("layout JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, std::string("layout JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Search results: { "order": [1-based], "score", "objective", "optimal", "evaluations" }

inline std::string write_search_result_json(const SearchResult& res) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json order = nlohmann::ordered_json::array();
  for (std::size_t p : res.best_order.perm()) order.push_back(p + 1);
  doc["order"] = std::move(order);
  if (res.objective == Objective::MinSplitsZeroExcess) {
    doc["score"] = res.score.get_num().get_ui();
  } else {
    doc["score"] = to_string(res.score);
  }
  doc["objective"] = to_string(res.objective);
  doc["optimal"] = res.optimal;
  doc["evaluations"] = res.evaluations;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reduction instance files

/// Betweenness triples: a JSON list of 3-element integer arrays, or an object
/// { "elements": [...], "triples": [[...], ...] }.
inline BetweennessInstance parse_betweenness_json(std::string_view text) {
  try {
    nlohmann::json doc = nlohmann::json::parse(text);
    const nlohmann::json& list = doc.is_object() ? doc.at("triples") : doc;
    std::vector<std::array<long long, 3>> triples;
    for (const auto& t : list) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::InvalidTriples, "each triple needs 3 elements");
      triples.push_back({t[0].get<long long>(), t[1].get<long long>(), t[2].get<long long>()});
    }
    std::vector<long long> elements;
    if (doc.is_object() && doc.contains("elements")) elements = doc["elements"].get<std::vector<long long>>();
    return make_betweenness_instance(std::move(triples), std::move(elements));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("triples JSON: ") + e.what());
  }
}

inline std::string write_betweenness_json(const BetweennessInstance& inst) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& t : inst.triples) doc.push_back({t[0], t[1], t[2]});
  return doc.dump() + "\n";
}

/// Edge list, one "u v" per line; '#' starts a comment. Vertices are numbered
/// in order of first appearance.
inline CubicGraph parse_edge_list(std::string_view text) {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto id = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, vertices.size());
    if (inserted) vertices.push_back(name);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string u, v, extra;
    if (!(fields >> u)) continue;
    if (!(fields >> v) || (fields >> extra)) throw Error(ErrorKind::ParseError, "expected 'u v'", line_no);
    std::size_t a = id(u);
    std::size_t b = id(v);
    edges.emplace_back(a, b);
  }
  return make_cubic_graph(std::move(vertices), std::move(edges));
}

inline std::string write_edge_list(const CubicGraph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges) out += g.vertices[u] + " " + g.vertices[v] + "\n";
  return out;
}

}  // namespace streamtable
