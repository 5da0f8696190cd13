#pragma once

#include <streamtable/layout.hpp>

#include "json.hpp"

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace streamtable {

enum class ModelKind { LP, QCQP, GP };
enum class Relation { LessEqual, Equal, GreaterEqual };

inline const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LP: return "lp";
    case ModelKind::QCQP: return "qcqp";
    case ModelKind::GP: return "gp";
  }
  return "?";
}

/// coef * prod(var ^ exponent). Exponents are 1 or 2 in LP/QCQP models and
/// arbitrary integers in GP monomials.
struct Term {
  Rational coef;
  std::vector<std::pair<std::string, int>> factors;

  bool operator==(const Term& other) const = default;
};

struct Constraint {
  std::string name;
  /// Constraint family, e.g. "C1".."C3" for the LP, "C1'".."C8'" for the GP.
  std::string family;
  std::vector<Term> terms;
  Relation relation = Relation::Equal;
  Rational rhs;
};

struct ModelOptions {
  /// Adds a(j,k+1) >= b(j,k) for every pair of neighbouring cells in a row.
  /// Off by default so the emitted model has exactly the C1-C3 (C'1-C'8)
  /// structure; without it cells of one row may overlap in a solver's optimum.
  bool order_constraints = false;
};

struct ModelFile {
  ModelKind kind = ModelKind::LP;
  std::string text;
  std::vector<std::string> variables;
  std::map<std::string, std::size_t> var_index;
  std::vector<Term> objective;
  std::vector<Constraint> constraints;

  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Fixed heights of an LP model.
  std::optional<RowHeights> heights;

  std::size_t count(std::string_view family) const {
    std::size_t n = 0;
    for (const auto& c : constraints) n += c.family == family ? 1 : 0;
    return n;
  }

  std::size_t count_quadratic() const {
    std::size_t n = 0;
    for (const auto& c : constraints) {
      for (const auto& t : c.terms) {
        if (t.factors.size() > 1 || (t.factors.size() == 1 && t.factors.front().second > 1)) {
          ++n;
          break;
        }
      }
    }
    return n;
  }
};

namespace detail {

inline std::string var_name(char prefix, std::size_t row, std::size_t col) {
  return std::string(1, prefix) + "_" + std::to_string(row + 1) + "_" + std::to_string(col + 1);
}

inline std::string var_name(char prefix, std::size_t row) {
  return std::string(1, prefix) + "_" + std::to_string(row + 1);
}

class ModelBuilder {
 public:
  explicit ModelBuilder(ModelKind kind, std::size_t rows, std::size_t cols) {
    model_.kind = kind;
    model_.rows = rows;
    model_.cols = cols;
  }

  const std::string& var(const std::string& name) {
    if (model_.var_index.emplace(name, model_.variables.size()).second) model_.variables.push_back(name);
    return name;
  }

  void objective(Term t) { model_.objective.push_back(std::move(t)); }

  void constraint(std::string name, std::string family, std::vector<Term> terms, Relation rel, Rational rhs) {
    model_.constraints.push_back({std::move(name), std::move(family), std::move(terms), rel, std::move(rhs)});
  }

  ModelFile take() { return std::move(model_); }

 private:
  ModelFile model_;
};

inline Term lin(Rational coef, const std::string& v) { return Term{std::move(coef), {{v, 1}}}; }
inline Term bilin(Rational coef, const std::string& u, const std::string& v) {
  return Term{std::move(coef), {{u, 1}, {v, 1}}};
}
inline Term mono(Rational coef, std::vector<std::pair<std::string, int>> factors) {
  return Term{std::move(coef), std::move(factors)};
}

/// Decimal text of a rational for LP files: exact when the denominator is of
/// the form 2^a 5^b, otherwise 17 significant digits.
inline std::string lp_number(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den == 1) {
    unsigned long digits = std::max(twos, fives);
    mpz_class scaled = value.get_num() * pow10(digits) / value.get_den();
    std::string s = mpz_class(scaled < 0 ? mpz_class(-scaled) : scaled).get_str();
    if (digits > 0) {
      if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
      s.insert(s.size() - digits, ".");
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
    return (value < 0 ? "-" : "") + s;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value.get_d(), std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string lp_expression(const std::vector<Term>& terms, bool objective) {
  std::string linear;
  std::string quadratic;
  auto append = [](std::string& out, const Rational& coef, const std::string& body) {
    if (coef < 0) {
      out += out.empty() ? "- " : " - ";
    } else if (!out.empty()) {
      out += " + ";
    }
    out += lp_number(abs(coef)) + " " + body;
  };
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    if (t.factors.size() == 1 && t.factors.front().second == 1) {
      append(linear, t.coef, t.factors.front().first);
      continue;
    }
    std::string body;
    if (t.factors.size() == 1) {
      body = t.factors.front().first + " ^ 2";
    } else {
      body = t.factors[0].first + " * " + t.factors[1].first;
    }
    // Quadratic objective terms are written doubled, followed by "/ 2".
    append(quadratic, objective ? Rational(2 * t.coef) : t.coef, body);
  }
  std::string out = linear;
  if (!quadratic.empty()) {
    if (!out.empty()) out += " + ";
    out += "[ " + quadratic + " ]";
    if (objective) out += " / 2";
  }
  if (out.empty()) out = "0";
  return out;
}

inline std::string write_lp_text(const ModelFile& m) {
  std::ostringstream os;
  os << "\\ StreamTable " << (m.kind == ModelKind::LP ? "LP" : "QCQP") << " model: " << m.rows << " rows x " << m.cols
     << " columns\n";
  os << "Minimize\n obj: " << lp_expression(m.objective, true) << "\n";
  os << "Subject To\n";
  for (const auto& c : m.constraints) {
    const char* rel = c.relation == Relation::Equal ? "=" : (c.relation == Relation::LessEqual ? "<=" : ">=");
    os << " " << c.name << ": " << lp_expression(c.terms, false) << " " << rel << " " << lp_number(c.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : m.variables) os << " " << v << " >= 0\n";
  os << "End\n";
  return os.str();
}

inline nlohmann::ordered_json gp_terms_json(const std::vector<Term>& terms) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : terms) {
    nlohmann::ordered_json exps = nlohmann::ordered_json::object();
    for (const auto& [v, e] : t.factors) exps[v] = e;
    out.push_back({{"coef", to_string(t.coef)}, {"exps", exps}});
  }
  return out;
}

/// Shared LP/QCQP structure: positions a, b; adjacency witnesses d.
inline ModelFile build_linear_family(const Table& table, const std::optional<RowHeights>& fixed, const Rational* total,
                                     const ModelOptions& opts) {
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  ModelBuilder mb(fixed ? ModelKind::LP : ModelKind::QCQP, r, c);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.var(var_name('a', j, k));
      mb.var(var_name('b', j, k));
    }
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) mb.var(var_name('d', j, k));
  }
  if (!fixed) {
    for (std::size_t j = 0; j < r; ++j) mb.var(var_name('h', j));
  }

  // Objective: sum over rows and neighbouring cells of h_j (a_{j,k+1} - b_{j,k}).
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k + 1 < c; ++k) {
      if (fixed) {
        mb.objective(lin((*fixed)[j], var_name('a', j, k + 1)));
        mb.objective(lin(Rational(-(*fixed)[j]), var_name('b', j, k)));
      } else {
        mb.objective(bilin(1, var_name('h', j), var_name('a', j, k + 1)));
        mb.objective(bilin(-1, var_name('h', j), var_name('b', j, k)));
      }
    }
  }

  for (std::size_t j = 0; j + 1 < r; ++j) {
    mb.constraint("c1a_" + std::to_string(j + 1), "C1",
                  {lin(1, var_name('a', j, 0)), lin(-1, var_name('a', j + 1, 0))}, Relation::Equal, 0);
    mb.constraint("c1b_" + std::to_string(j + 1), "C1",
                  {lin(1, var_name('b', j, c - 1)), lin(-1, var_name('b', j + 1, c - 1))}, Relation::Equal, 0);
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      std::string name = "c2_" + std::to_string(j + 1) + "_" + std::to_string(k + 1);
      if (fixed) {
        mb.constraint(name, "C2", {lin(1, var_name('b', j, k)), lin(-1, var_name('a', j, k))}, Relation::Equal,
                      table.weight(j, k) / (*fixed)[j]);
      } else {
        mb.constraint(name, "C2",
                      {bilin(1, var_name('h', j), var_name('b', j, k)), bilin(-1, var_name('h', j), var_name('a', j, k))},
                      Relation::Equal, table.weight(j, k));
      }
    }
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      std::string base = "c3_" + std::to_string(j + 1) + "_" + std::to_string(k + 1) + "_";
      const std::string d = var_name('d', j, k);
      mb.constraint(base + "1", "C3", {lin(1, var_name('a', j, k)), lin(-1, d)}, Relation::LessEqual, 0);
      mb.constraint(base + "2", "C3", {lin(1, d), lin(-1, var_name('b', j, k))}, Relation::LessEqual, 0);
      mb.constraint(base + "3", "C3", {lin(1, var_name('a', j + 1, k)), lin(-1, d)}, Relation::LessEqual, 0);
      mb.constraint(base + "4", "C3", {lin(1, d), lin(-1, var_name('b', j + 1, k))}, Relation::LessEqual, 0);
    }
  }
  if (opts.order_constraints) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k + 1 < c; ++k) {
        mb.constraint("c0_" + std::to_string(j + 1) + "_" + std::to_string(k + 1), "C0",
                      {lin(1, var_name('a', j, k + 1)), lin(-1, var_name('b', j, k))}, Relation::GreaterEqual, 0);
      }
    }
  }
  if (!fixed) {
    std::vector<Term> hs;
    for (std::size_t j = 0; j < r; ++j) hs.push_back(lin(1, var_name('h', j)));
    mb.constraint("hsum", "Hsum", std::move(hs), Relation::Equal, *total);
  }

  ModelFile m = mb.take();
  m.heights = fixed;
  m.text = write_lp_text(m);
  return m;
}

}  // namespace detail

/// LP for fixed heights. Variables a, b (2rc) and d ((r-1)c); constraints
/// C1 (2(r-1)), C2 (rc), C3 (4(r-1)c). All variables are non-negative.
inline ModelFile emit_lp_model(const Table& table, const RowHeights& heights, const ModelOptions& opts = {}) {
  if (heights.size() != table.rows()) throw Error(ErrorKind::NonPositiveParameter, "one height per row required");
  return detail::build_linear_family(table, heights, nullptr, opts);
}

/// QCQP with the heights h_j as variables: the LP structure with bilinear
/// width constraints h_j (b - a) = w, a quadratic objective and sum h = H.
inline ModelFile emit_qcqp_model(const Table& table, const Rational& total_height, const ModelOptions& opts = {}) {
  if (total_height <= 0) throw Error(ErrorKind::NonPositiveParameter, "total height must be positive");
  return detail::build_linear_family(table, std::nullopt, &total_height, opts);
}

inline std::string write_gp_json(const ModelFile& m) {
  nlohmann::ordered_json doc;
  doc["objective"] = detail::gp_terms_json(m.objective);
  doc["constraints"] = nlohmann::ordered_json::array();
  for (const auto& c : m.constraints) {
    doc["constraints"].push_back({{"name", c.name},
                                  {"relation", c.relation == Relation::Equal ? "=" : "<="},
                                  {"terms", detail::gp_terms_json(c.terms)}});
  }
  return doc.dump(2) + "\n";
}

/// Geometric program in monomial-list form; every constraint reads
/// posynomial <= 1 or monomial = 1. W and H bound width and height.
inline ModelFile emit_gp_model(const Table& table, const Rational& width, const Rational& height,
                               const ModelOptions& opts = {}) {
  using detail::mono;
  using detail::var_name;
  if (width <= 0 || height <= 0) throw Error(ErrorKind::NonPositiveParameter, "W and H must be positive");
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  detail::ModelBuilder mb(ModelKind::GP, r, c);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.var(var_name('a', j, k));
      mb.var(var_name('b', j, k));
    }
  }
  for (std::size_t j = 0; j < r; ++j) mb.var(var_name('h', j));

  for (std::size_t j = 0; j < r; ++j) mb.objective(mono(1, {{var_name('h', j), 1}, {var_name('b', j, c - 1), 1}}));

  auto idx = [](std::size_t j) { return std::to_string(j + 1); };
  auto idx2 = [](std::size_t j, std::size_t k) { return std::to_string(j + 1) + "_" + std::to_string(k + 1); };
  for (std::size_t j = 0; j + 1 < r; ++j) {
    mb.constraint("c1p_" + idx(j), "C1'", {mono(1, {{var_name('a', j, 0), 1}, {var_name('a', j + 1, 0), -1}})},
                  Relation::Equal, 1);
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    mb.constraint("c2p_" + idx(j), "C2'",
                  {mono(1, {{var_name('b', j, c - 1), 1}, {var_name('b', j + 1, c - 1), -1}})}, Relation::Equal, 1);
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.constraint("c3p_" + idx2(j, k), "C3'",
                    {mono(table.weight(j, k), {{var_name('h', j), -1}, {var_name('b', j, k), -1}}),
                     mono(1, {{var_name('a', j, k), 1}, {var_name('b', j, k), -1}})},
                    Relation::LessEqual, 1);
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.constraint("c4p_" + idx2(j, k), "C4'", {mono(1, {{var_name('a', j, k), 1}, {var_name('b', j, k), -1}})},
                    Relation::LessEqual, 1);
    }
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.constraint("c5p_" + idx2(j, k), "C5'",
                    {mono(1, {{var_name('a', j, k), 1}, {var_name('b', j + 1, k), -1}})}, Relation::LessEqual, 1);
    }
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    for (std::size_t k = 0; k < c; ++k) {
      mb.constraint("c6p_" + idx2(j, k), "C6'",
                    {mono(1, {{var_name('a', j + 1, k), 1}, {var_name('b', j, k), -1}})}, Relation::LessEqual, 1);
    }
  }
  {
    std::vector<Term> hs;
    Rational inv = 1 / height;
    for (std::size_t j = 0; j < r; ++j) hs.push_back(mono(inv, {{var_name('h', j), 1}}));
    mb.constraint("c7p", "C7'", std::move(hs), Relation::LessEqual, 1);
  }
  mb.constraint("c8p", "C8'", {mono(1 / width, {{var_name('b', 0, c - 1), 1}})}, Relation::LessEqual, 1);
  if (opts.order_constraints) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k + 1 < c; ++k) {
        mb.constraint("c0p_" + idx2(j, k), "C0'",
                      {mono(1, {{var_name('b', j, k), 1}, {var_name('a', j, k + 1), -1}})}, Relation::LessEqual, 1);
      }
    }
  }

  ModelFile m = mb.take();
  m.text = write_gp_json(m);
  return m;
}

/// Reads a GP model written by write_gp_json. Constraint families are
/// recovered from the name prefix.
inline ModelFile parse_gp_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("GP model: ") + e.what());
  }
  auto terms = [](const nlohmann::ordered_json& arr) {
    std::vector<Term> out;
    for (const auto& t : arr) {
      Term term{parse_rational(t.at("coef").get<std::string>()), {}};
      for (const auto& [v, e] : t.at("exps").items()) term.factors.emplace_back(v, e.get<int>());
      out.push_back(std::move(term));
    }
    return out;
  };
  ModelFile m;
  m.kind = ModelKind::GP;
  try {
    m.objective = terms(doc.at("objective"));
    for (const auto& c : doc.at("constraints")) {
      Constraint con;
      con.name = c.at("name").get<std::string>();
      std::string prefix = con.name.substr(0, con.name.find('_'));
      con.family = prefix.size() >= 3 && prefix.back() == 'p'
                       ? "C" + prefix.substr(1, prefix.size() - 2) + "'"
                       : prefix;
      std::string rel = c.at("relation").get<std::string>();
      if (rel != "<=" && rel != "=") throw Error(ErrorKind::ParseError, "GP relation must be <= or =");
      con.relation = rel == "=" ? Relation::Equal : Relation::LessEqual;
      con.rhs = 1;
      con.terms = terms(c.at("terms"));
      m.constraints.push_back(std::move(con));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("GP model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, std::string("GP model: ") + e.what());
  }
  auto note_vars = [&](const std::vector<Term>& ts) {
    for (const auto& t : ts) {
      for (const auto& f : t.factors) {
        if (m.var_index.emplace(f.first, m.variables.size()).second) m.variables.push_back(f.first);
      }
    }
  };
  note_vars(m.objective);
  for (const auto& c : m.constraints) note_vars(c.terms);
  m.text = write_gp_json(m);
  return m;
}

// ---------------------------------------------------------------------------
// Solution import

/// Values for model variables. Decimal inputs are snapped to rationals with
/// bounded denominators and mark the assignment inexact.
struct Assignment {
  std::map<std::string, Rational> values;
  bool inexact = false;
};

inline const mpz_class& import_max_denominator() {
  static const mpz_class bound("1000000000");
  return bound;
}

inline Rational import_tolerance() { return Rational(1, 1000000); }

/// Model variables describing a layout drawn in table order: positions, a
/// witness d = max of the two left edges for each stacked pair, and heights.
inline Assignment layout_assignment(const Layout& layout) {
  if (layout.order != RowOrder::identity(layout.rows())) {
    throw Error(ErrorKind::InvalidOrder, "models describe layouts drawn in table row order");
  }
  Assignment out;
  for (std::size_t j = 0; j < layout.rows(); ++j) {
    out.values[detail::var_name('h', j)] = layout.height(j);
    for (std::size_t k = 0; k < layout.cols(); ++k) {
      const CellRect& cell = layout.rect(j, k);
      out.values[detail::var_name('a', j, k)] = cell.left;
      out.values[detail::var_name('b', j, k)] = cell.right;
      if (j + 1 < layout.rows()) {
        const Rational& below = layout.rect(j + 1, k).left;
        out.values[detail::var_name('d', j, k)] = cell.left > below ? cell.left : below;
      }
    }
  }
  return out;
}

namespace detail {

inline void assign_value(Assignment& out, const std::string& name, std::string_view text) {
  Rational v;
  try {
    v = parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "bad value for " + name + ": '" + std::string(text) + "'");
  }
  if (is_decimal_literal(text)) {
    out.inexact = true;
    v = limit_denominator(v, import_max_denominator());
  }
  out.values[name] = std::move(v);
}

}  // namespace detail

/// Accepts either "var value" lines (blank lines and '#' comments ignored) or
/// a JSON object mapping names to numbers or rational strings.
inline Assignment parse_solution(std::string_view text) {
  Assignment out;
  std::string_view trimmed = detail::trim(text);
  if (!trimmed.empty() && trimmed.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, std::string("solution: ") + e.what());
    }
    for (const auto& [name, value] : doc.items()) {
      if (value.is_string()) {
        detail::assign_value(out, name, value.get<std::string>());
      } else if (value.is_number()) {
        detail::assign_value(out, name, value.dump());
      } else {
        throw Error(ErrorKind::ParseError, "solution value for " + name + " is not a number");
      }
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = detail::trim(line);
    if (l.empty() || l.front() == '#') continue;
    std::istringstream fields{std::string(l)};
    std::string name, value, extra;
    if (!(fields >> name >> value) || (fields >> extra)) {
      throw Error(ErrorKind::ParseError, "expected 'name value'", line_no);
    }
    detail::assign_value(out, name, value);
  }
  return out;
}

struct Violation {
  std::string name;
  /// Amount by which the constraint is missed (positive).
  Rational slack;
};

struct ImportResult {
  std::vector<Violation> violations;
  std::optional<Layout> layout;
  Rational objective;
  bool inexact = false;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty() && layout.has_value(); }
};

namespace detail {

inline std::optional<Rational> eval_term(const Term& t, const std::map<std::string, Rational>& values) {
  Rational v = t.coef;
  for (const auto& [name, e] : t.factors) {
    const Rational& x = values.at(name);
    if (e < 0 && x == 0) return std::nullopt;
    for (int p = 0; p < (e < 0 ? -e : e); ++p) {
      if (e < 0) {
        v /= x;
      } else {
        v *= x;
      }
    }
  }
  return v;
}

inline std::optional<Rational> eval_terms(const std::vector<Term>& ts, const std::map<std::string, Rational>& values) {
  Rational sum = 0;
  for (const auto& t : ts) {
    auto v = eval_term(t, values);
    if (!v) return std::nullopt;
    sum += *v;
  }
  return sum;
}

/// Nudges a solver's approximate coordinates into an exact StreamTable:
/// common left edge, cells pushed right to remove overlaps, widths set from
/// the weights (or kept when wider and over-coverage is allowed), and a common
/// right edge.
inline Layout repair_layout(const Table& table, const RowHeights& heights, const std::map<std::string, Rational>& v,
                            bool allow_overcover) {
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  auto shared = std::make_shared<const Table>(table);
  Layout out{shared, heights, RowOrder::identity(r), std::vector<CellRect>(r * c)};
  const Rational start = v.at(var_name('a', 0, 0));
  Rational edge = 0;
  for (std::size_t j = 0; j < r; ++j) {
    Rational cursor = start;
    for (std::size_t k = 0; k < c; ++k) {
      CellRect& rect = out.rect(j, k);
      rect.row = j;
      rect.col = k;
      const Rational& a = v.at(var_name('a', j, k));
      rect.left = k == 0 ? start : (a > cursor ? a : cursor);
      Rational min_right = rect.left + table.weight(j, k) / heights[j];
      rect.right = min_right;
      if (allow_overcover) {
        Rational b = v.at(var_name('b', j, k)) - a + rect.left;
        if (b > min_right) rect.right = b;
      }
      cursor = rect.right;
    }
    if (j == 0 || cursor > edge) edge = cursor;
  }
  for (std::size_t j = 0; j < r; ++j) {
    CellRect& last = out.rect(j, c - 1);
    Rational shift = edge - last.right;
    last.left += shift;
    last.right = edge;
  }
  return out;
}

}  // namespace detail

/// Checks an external solver's assignment against every model constraint
/// (exactly for rational input, within import_tolerance() for decimals) and
/// rebuilds the layout it describes. GP solutions may over-cover cells; they
/// are reported, not shrunk.
inline ImportResult import_and_validate_solution(const ModelFile& model, const Assignment& assignment,
                                                 const Table& table) {
  for (const auto& name : model.variables) {
    if (!assignment.values.count(name)) throw Error(ErrorKind::MissingVariable, "no value for " + name);
  }
  ImportResult res;
  res.inexact = assignment.inexact;
  const Rational tol = assignment.inexact ? import_tolerance() : Rational(0);
  const auto& values = assignment.values;

  for (const auto& name : model.variables) {
    const Rational& x = values.at(name);
    if (x < -tol) res.violations.push_back({"bound:" + name, -x});
  }
  for (const auto& con : model.constraints) {
    auto lhs = detail::eval_terms(con.terms, values);
    if (!lhs) {
      res.violations.push_back({con.name + " (division by zero)", 0});
      continue;
    }
    Rational diff = *lhs - con.rhs;
    bool violated = false;
    Rational miss;
    switch (con.relation) {
      case Relation::Equal:
        miss = abs(diff);
        violated = miss > tol;
        break;
      case Relation::LessEqual:
        miss = diff;
        violated = diff > tol;
        break;
      case Relation::GreaterEqual:
        miss = -diff;
        violated = -diff > tol;
        break;
    }
    if (violated) res.violations.push_back({con.name, miss});
  }
  if (auto obj = detail::eval_terms(model.objective, values)) res.objective = *obj;

  if (!res.violations.empty()) return res;

  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  if (r != model.rows && model.rows != 0) throw Error(ErrorKind::ParseError, "table does not match model rows");
  std::vector<Rational> hs;
  for (std::size_t j = 0; j < r; ++j) {
    if (model.heights) {
      hs.push_back((*model.heights)[j]);
    } else {
      const Rational& h = values.at(detail::var_name('h', j));
      if (h <= 0) {
        res.violations.push_back({"height:" + detail::var_name('h', j), -h});
        return res;
      }
      hs.push_back(h);
    }
  }
  RowHeights heights(std::move(hs));
  const bool gp = model.kind == ModelKind::GP;
  if (gp) res.notes.push_back("geometric-program solution: cells may cover more than their weights; not shrunk");

  Layout layout;
  if (assignment.inexact) {
    layout = detail::repair_layout(table, heights, values, gp);
    res.notes.push_back("decimal values snapped and coordinates repaired to an exact layout");
  } else {
    auto shared = std::make_shared<const Table>(table);
    layout = Layout{shared, heights, RowOrder::identity(r), std::vector<CellRect>(r * c)};
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < c; ++k) {
        layout.rect(j, k) = {j, k, values.at(detail::var_name('a', j, k)), values.at(detail::var_name('b', j, k))};
      }
    }
  }
  for (const auto& msg : layout_violations(layout, gp ? AreaRule::AtLeast : AreaRule::Exact)) {
    res.violations.push_back({"layout: " + msg, 0});
  }
  if (res.violations.empty()) {
    std::size_t splits = split_count(layout);
    if (splits != 0) res.notes.push_back("layout has " + std::to_string(splits) + " split(s)");
    res.layout = std::move(layout);
  }
  return res;
}

/// Throws ConstraintViolated for the first violation of an import.
inline const Layout& require_feasible(const ImportResult& res) {
  if (!res.violations.empty()) {
    const auto& v = res.violations.front();
    throw Error(ErrorKind::ConstraintViolated, v.name + " missed by " + to_string(v.slack));
  }
  return *res.layout;
}

}  // namespace streamtable
