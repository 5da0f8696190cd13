#pragma once

#include <streamtable/height_opt.hpp>
#include <streamtable/io.hpp>
#include <streamtable/model.hpp>
#include <streamtable/order_search.hpp>
#include <streamtable/reductions.hpp>
#include <streamtable/svg.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace streamtable {

namespace cli {

/// Bad flag values found after CLI11 accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool stdin_used = false;

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used) throw UsageError("standard input can only be read once");
      stdin_used = true;
      return std::string(std::istreambuf_iterator<char>(in), {});
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
  }

  /// Output is assembled in memory and written once.
  void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out << text;
      out.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
    f << text;
  }
};

inline Rational parse_number_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": not a number: '" + text + "'");
  }
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(std::string(detail::trim(cur)));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::string(detail::trim(cur)));
  return out;
}

/// "uniform:D", "proportional:H" (total height split by row sums) or
/// "explicit:h1,h2,...".
inline RowHeights parse_heights(const Table& table, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("--heights: expected uniform:D, proportional:H or explicit:h1,...");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "uniform") return initial_heights(table, UniformHeights{parse_number_flag("--heights", arg)});
  if (kind == "proportional") return initial_heights(table, ProportionalToRowSum{parse_number_flag("--heights", arg)});
  if (kind == "explicit") {
    std::vector<Rational> hs;
    for (const auto& tok : split_list(arg)) hs.push_back(parse_number_flag("--heights", tok));
    return initial_heights(table, ExplicitHeights{std::move(hs)});
  }
  throw UsageError("--heights: unknown policy '" + kind + "'");
}

/// Comma-separated row labels or, failing that, 1-based row indices, listed
/// top to bottom.
inline RowOrder parse_order(const std::vector<std::string>& row_labels, const std::string& spec) {
  std::vector<std::string> tokens = split_list(spec);
  std::vector<std::size_t> perm;
  for (const auto& tok : tokens) {
    auto it = std::find(row_labels.begin(), row_labels.end(), tok);
    if (it != row_labels.end()) {
      perm.push_back(static_cast<std::size_t>(it - row_labels.begin()));
      continue;
    }
    if (!detail::all_digits(tok) || tok.empty() || tok.size() > 9) {
      throw Error(ErrorKind::InvalidOrder, "--order: '" + tok + "' is neither a row label nor a row number");
    }
    std::size_t v = std::stoul(tok);
    if (v == 0 || v > row_labels.size()) throw Error(ErrorKind::InvalidOrder, "--order: row " + tok + " out of range");
    perm.push_back(v - 1);
  }
  return RowOrder(std::move(perm));
}

inline std::string json_with_extra(const Layout& layout, const nlohmann::ordered_json& extra) {
  nlohmann::ordered_json doc = layout_to_json(layout);
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  return doc.dump(2) + "\n";
}

inline ReductionInstance load_reduction(Context& ctx, const std::string& kind, const std::string& path,
                                        const std::optional<std::string>& w) {
  std::string text = ctx.read(path);
  if (kind == "betweenness") {
    return betweenness_to_table(parse_betweenness_json(text), w ? parse_number_flag("--w", *w) : Rational(15));
  }
  return hampath_to_table(parse_edge_list(text), w ? parse_number_flag("--w", *w) : Rational(12));
}

}  // namespace cli

/// Runs the command-line tool. `args` excludes the program name. Returns 0 on
/// success, 1 on domain errors and 2 on usage errors.
inline int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Context ctx{in, out, err};

  CLI::App app{"StreamTable layout and optimisation tool", "streamtable"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // layout
  std::string layout_table, layout_heights = "uniform:1", layout_order, layout_out;
  auto* layout_cmd = app.add_subcommand("layout", "Greedy no-split layout for fixed row heights");
  layout_cmd->add_option("table", layout_table, "Table CSV ('-' for stdin)")->required();
  layout_cmd->add_option("--heights", layout_heights, "uniform:D | proportional:H | explicit:h1,h2,...");
  layout_cmd->add_option("--order", layout_order, "Row labels or 1-based rows, top to bottom");
  layout_cmd->add_option("-o,--output", layout_out, "Output file");

  // improve
  std::string improve_table, improve_heights = "uniform:1", improve_out;
  std::size_t improve_iters = kDefaultMaxIters;
  auto* improve_cmd = app.add_subcommand("improve", "Lower row heights to close gaps");
  improve_cmd->add_option("table", improve_table, "Table CSV")->required();
  improve_cmd->add_option("--heights", improve_heights, "Starting heights policy");
  improve_cmd->add_option("--max-iters", improve_iters, "Iteration cap");
  improve_cmd->add_option("-o,--output", improve_out, "Output file");

  // search
  std::string search_table, search_objective = "min-excess", search_method = "brute", search_delta = "1", search_out;
  std::optional<std::uint64_t> search_seed;
  std::size_t search_cap = BruteForceOptions{}.max_rows, search_threads = 0;
  std::size_t search_steps = AnnealSchedule{}.steps;
  double search_cooling = AnnealSchedule{}.cooling;
  std::optional<double> search_t0;
  auto* search_cmd = app.add_subcommand("search", "Search row orders");
  search_cmd->add_option("table", search_table, "Table CSV")->required();
  search_cmd->add_option("--objective", search_objective, "min-excess | min-splits")
      ->check(CLI::IsMember({"min-excess", "min-splits"}));
  search_cmd->add_option("--method", search_method, "brute | anneal")->check(CLI::IsMember({"brute", "anneal"}));
  search_cmd->add_option("--delta", search_delta, "Uniform row height");
  search_cmd->add_option("--seed", search_seed, "Random seed (required for anneal)");
  search_cmd->add_option("--cap", search_cap, "Largest row count for brute force");
  search_cmd->add_option("--threads", search_threads, "Brute-force worker threads (0 = all cores)");
  search_cmd->add_option("--steps", search_steps, "Annealing steps");
  search_cmd->add_option("--cooling", search_cooling, "Annealing cooling factor");
  search_cmd->add_option("--t0", search_t0, "Initial annealing temperature");
  search_cmd->add_option("-o,--output", search_out, "Output file");

  // gen
  std::string gen_kind, gen_file, gen_out;
  std::optional<std::string> gen_w;
  auto* gen_cmd = app.add_subcommand("gen", "Build a table from a betweenness or cubic-graph instance");
  gen_cmd->add_option("kind", gen_kind, "betweenness | hampath")
      ->required()
      ->check(CLI::IsMember({"betweenness", "hampath"}));
  gen_cmd->add_option("instance", gen_file, "Triples JSON or edge list")->required();
  gen_cmd->add_option("--w", gen_w, "Reduction width parameter");
  gen_cmd->add_option("-o,--output", gen_out, "Output file");

  // verify
  std::string verify_kind, verify_file, verify_order, verify_out;
  std::optional<std::string> verify_w;
  auto* verify_cmd = app.add_subcommand("verify", "Check an order against an instance and its threshold");
  verify_cmd->add_option("kind", verify_kind, "betweenness | hampath")
      ->required()
      ->check(CLI::IsMember({"betweenness", "hampath"}));
  verify_cmd->add_option("instance", verify_file, "Triples JSON or edge list")->required();
  verify_cmd->add_option("--order", verify_order, "Elements or vertices, top to bottom")->required();
  verify_cmd->add_option("--w", verify_w, "Reduction width parameter");
  verify_cmd->add_option("-o,--output", verify_out, "Output file");

  // emit-model
  std::string model_kind, model_table, model_heights = "uniform:1", model_total, model_width, model_out;
  bool model_order = false;
  auto* model_cmd = app.add_subcommand("emit-model", "Write an LP, QCQP or GP model");
  model_cmd->add_option("kind", model_kind, "lp | qcqp | gp")->required()->check(CLI::IsMember({"lp", "qcqp", "gp"}));
  model_cmd->add_option("table", model_table, "Table CSV")->required();
  model_cmd->add_option("--heights", model_heights, "Fixed heights (lp)");
  model_cmd->add_option("--total-height", model_total, "Total height H (qcqp, gp)");
  model_cmd->add_option("--width", model_width, "Width W (gp)");
  model_cmd->add_flag("--order-constraints", model_order, "Forbid overlapping cells within a row");
  model_cmd->add_option("-o,--output", model_out, "Output file");

  // import-solution
  std::string import_kind, import_table, import_solution, import_heights = "uniform:1", import_total, import_width,
                                                          import_out;
  bool import_order = false;
  auto* import_cmd = app.add_subcommand("import-solution", "Validate a solver's solution and rebuild the layout");
  import_cmd->add_option("kind", import_kind, "lp | qcqp | gp")->required()->check(CLI::IsMember({"lp", "qcqp", "gp"}));
  import_cmd->add_option("table", import_table, "Table CSV")->required();
  import_cmd->add_option("solution", import_solution, "'name value' lines or JSON object")->required();
  import_cmd->add_option("--heights", import_heights, "Fixed heights (lp)");
  import_cmd->add_option("--total-height", import_total, "Total height H (qcqp, gp)");
  import_cmd->add_option("--width", import_width, "Width W (gp)");
  import_cmd->add_flag("--order-constraints", import_order, "Model was emitted with --order-constraints");
  import_cmd->add_option("-o,--output", import_out, "Output file");

  // render
  std::string render_file, render_out;
  RenderOptions render_opts;
  bool render_smooth = false, render_no_grid = false;
  auto* render_cmd = app.add_subcommand("render", "Draw a layout JSON as SVG");
  render_cmd->add_option("layout", render_file, "Layout JSON")->required();
  render_cmd->add_option("--scale", render_opts.scale, "Pixels per unit")->check(CLI::PositiveNumber);
  render_cmd->add_flag("--smooth", render_smooth, "Round stream corners");
  render_cmd->add_option("--radius", render_opts.radius_fraction, "Corner radius as a fraction of the lowest row")
      ->check(CLI::Range(0.0, 0.5));
  render_cmd->add_flag("--no-grid", render_no_grid, "Hide the dotted row boundaries");
  render_cmd->add_flag("--labels", render_opts.labels, "Draw row and column labels");
  render_cmd->add_option("-o,--output", render_out, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return 2;
  }

  try {
    if (*layout_cmd) {
      Table table = parse_table_csv(ctx.read(layout_table));
      RowHeights heights = parse_heights(table, layout_heights);
      RowOrder order = layout_order.empty() ? RowOrder::identity(table.rows())
                                            : parse_order(table.row_labels(), layout_order);
      ctx.write(layout_out, write_layout_json(greedy_layout(table, heights, order)));
    } else if (*improve_cmd) {
      Table table = parse_table_csv(ctx.read(improve_table));
      ImproveResult res = local_improve(table, parse_heights(table, improve_heights), improve_iters);
      nlohmann::ordered_json log = nlohmann::ordered_json::array();
      for (const auto& step : res.log) {
        log.push_back({{"iteration", step.iteration},
                       {"row", step.row + 1},
                       {"gap_after_col", step.gap_after_col + 1},
                       {"old_height", to_string(step.old_height)},
                       {"new_height", to_string(step.new_height)},
                       {"excess_before", to_string(step.excess_before)},
                       {"excess_after", to_string(step.excess_after)}});
      }
      ctx.write(improve_out, json_with_extra(res.layout, {{"log", log}}));
    } else if (*search_cmd) {
      Table table = parse_table_csv(ctx.read(search_table));
      Rational delta = parse_number_flag("--delta", search_delta);
      Objective objective = search_objective == "min-splits" ? Objective::MinSplitsZeroExcess
                                                             : Objective::MinExcessNoSplit;
      SearchResult res;
      if (search_method == "brute") {
        BruteForceOptions opts;
        opts.max_rows = search_cap;
        opts.threads = search_threads;
        res = brute_force_search(table, delta, objective, opts);
      } else {
        if (!search_seed) throw UsageError("search --method anneal requires --seed");
        AnnealSchedule schedule;
        schedule.steps = search_steps;
        schedule.cooling = search_cooling;
        schedule.initial_temperature = search_t0;
        res = anneal_search(table, delta, objective, *search_seed, schedule);
      }
      ctx.write(search_out, write_search_result_json(res));
    } else if (*gen_cmd) {
      ReductionInstance inst = load_reduction(ctx, gen_kind, gen_file, gen_w);
      err << "threshold: " << to_string(inst.threshold) << "\n";
      ctx.write(gen_out, write_table_csv(inst.table));
    } else if (*verify_cmd) {
      ReductionInstance inst = load_reduction(ctx, verify_kind, verify_file, verify_w);
      RowOrder order = parse_order(inst.table.row_labels(), verify_order);
      nlohmann::ordered_json doc;
      if (inst.kind == ReductionKind::Betweenness) {
        const auto& src = std::get<BetweennessInstance>(inst.source);
        Rational excess = evaluate_order(inst.table, order, inst.delta, Objective::MinExcessNoSplit);
        doc["certificate"] = check_betweenness_certificate(src, order);
        doc["metric"] = "excess";
        doc["value"] = to_string(excess);
        doc["threshold"] = to_string(inst.threshold);
        doc["within_threshold"] = excess <= inst.threshold;
      } else {
        const auto& g = std::get<CubicGraph>(inst.source);
        Rational splits = evaluate_order(inst.table, order, inst.delta, Objective::MinSplitsZeroExcess);
        doc["certificate"] = check_hampath_certificate(g, order);
        doc["metric"] = "splits";
        doc["value"] = splits.get_num().get_ui();
        doc["threshold"] = inst.threshold.get_num().get_ui();
        doc["within_threshold"] = splits <= inst.threshold;
      }
      ctx.write(verify_out, doc.dump(2) + "\n");
    } else if (*model_cmd || *import_cmd) {
      const bool emit = static_cast<bool>(*model_cmd);
      const std::string& kind = emit ? model_kind : import_kind;
      Table table = parse_table_csv(ctx.read(emit ? model_table : import_table));
      ModelOptions opts;
      opts.order_constraints = emit ? model_order : import_order;
      const std::string& total = emit ? model_total : import_total;
      const std::string& width = emit ? model_width : import_width;
      ModelFile model;
      if (kind == "lp") {
        model = emit_lp_model(table, parse_heights(table, emit ? model_heights : import_heights), opts);
      } else {
        if (total.empty()) throw UsageError(kind + " models need --total-height");
        Rational h = parse_number_flag("--total-height", total);
        if (kind == "qcqp") {
          model = emit_qcqp_model(table, h, opts);
        } else {
          if (width.empty()) throw UsageError("gp models need --width");
          model = emit_gp_model(table, parse_number_flag("--width", width), h, opts);
        }
      }
      if (emit) {
        ctx.write(model_out, model.text);
      } else {
        ImportResult res = import_and_validate_solution(model, parse_solution(ctx.read(import_solution)), table);
        for (const auto& note : res.notes) err << "note: " << note << "\n";
        for (const auto& v : res.violations) err << "violated: " << v.name << " by " << to_string(v.slack) << "\n";
        const Layout& layout = require_feasible(res);
        ctx.write(import_out, json_with_extra(layout, {{"objective", to_string(res.objective)},
                                                       {"inexact", res.inexact}}));
      }
    } else if (*render_cmd) {
      Layout layout = parse_layout_json(ctx.read(render_file));
      render_opts.smoothing = render_smooth ? Smoothing::Rounded : Smoothing::None;
      render_opts.show_grid = !render_no_grid;
      if (auto problems = layout_violations(layout, AreaRule::AtLeast); !problems.empty()) {
        throw Error(ErrorKind::ConstraintViolated, "invalid layout: " + problems.front());
      }
      ctx.write(render_out, render_svg(layout, render_opts));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.kind() == ErrorKind::ParseError && e.row()) {
      err << " (line " << *e.row();
      if (e.col()) err << ", field " << *e.col();
      err << ")";
    } else if (e.row()) {
      err << " (row " << *e.row() + 1;
      if (e.col()) err << ", column " << *e.col() + 1;
      err << ")";
    }
    err << "\n";
    return 1;
  }
  return 0;
}

}  // namespace streamtable
