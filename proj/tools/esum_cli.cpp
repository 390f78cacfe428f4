#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "esum/catalog.hpp"
#include "esum/regularize.hpp"

namespace {

using namespace esum;

EvalConfig make_eval_config(double eps, long ladder_max, bool use_ladder) {
  EvalConfig cfg;
  cfg.target_eps = eps;
  if (use_ladder) cfg.backend = EvalConfig::kLadder;
  if (ladder_max > 0) {
    int levels = 0;
    long m = cfg.ladder_m0;
    while (m <= ladder_max) {
      ++levels;
      m <<= 1;
    }
    cfg.ladder_levels = std::max(4, levels);
  }
  return cfg;
}

Env parse_params(const std::vector<std::string>& defs) {
  Env env;
  for (const auto& d : defs) {
    auto eq = d.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad --param " + d + ", want name=value");
    env[d.substr(0, eq)] = parse_rational(d.substr(eq + 1));
  }
  return env;
}

void print_tpoly_values(const TPoly& p, const EvalConfig& cfg) {
  if (p.zero()) {
    std::printf("0 (exact)\n");
    return;
  }
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k).zero()) continue;
    EvalResult r = evaluate_lincomb(p.coeff(k), cfg);
    std::printf("T^%d: %.12f +- %.2e   [%s]\n", k, r.value, r.err_bound,
                p.coeff(k).str().c_str());
  }
}

// Plain z(...) literal, non-admissible allowed (expansion commands work on
// raw symbols, not regularized values).
Index parse_index_arg(const std::string& text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      text.substr(0, open) != "z")
    throw std::runtime_error("expected a z(...) symbol");
  std::vector<int> entries;
  std::string inner = text.substr(open + 1, close - open - 1);
  size_t pos = 0;
  while (pos < inner.size()) {
    auto comma = inner.find(',', pos);
    if (comma == std::string::npos) comma = inner.size();
    std::string tok = inner.substr(pos, comma - pos);
    if (!tok.empty()) entries.push_back(std::stoi(tok));
    pos = comma + 1;
  }
  return Index(entries);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact double-shuffle engine for alternating multiple zeta values"};
  app.require_subcommand(1);
  app.fallthrough();

  double eps = 1e-8;
  long ladder_max = 0;
  bool use_ladder = false;
  app.add_option("--eps", eps, "numeric tolerance (default 1e-8)");
  app.add_option("--ladder-max", ladder_max, "largest truncation level for the ladder backend");
  app.add_flag("--ladder", use_ladder, "use the truncation-ladder evaluator");

  // ---- expand ----
  auto* cmd_expand = app.add_subcommand("expand", "print stuffle/shuffle/mixed-value expansions");
  std::vector<std::string> expand_terms;
  std::string expand_op = "stuffle";
  cmd_expand->add_option("terms", expand_terms, "one symbol, or two z(...) symbols")->required();
  cmd_expand->add_option("--op", expand_op, "stuffle|shuffle (two-term mode)");

  // ---- regularize ----
  auto* cmd_reg = app.add_subcommand("regularize", "print the two regularizations and the defect");
  std::string reg_term;
  cmd_reg->add_option("term", reg_term, "a z(...) symbol")->required();

  // ---- relation ----
  auto* cmd_rel = app.add_subcommand("relation", "run an F-method string and print the relation");
  std::string rel_method, rel_signs;
  int rel_w = 0;
  cmd_rel->add_option("method", rel_method)->required();
  cmd_rel->add_option("--w", rel_w, "weight")->required();
  cmd_rel->add_option("--signs", rel_signs, "per-group signs, e.g. \"++;+\"");

  // ---- relations ----
  auto* cmd_rels = app.add_subcommand("relations", "build and export a relation set");
  int rels_w = 0, rels_depth = 0;
  std::string rels_level = "mzv-only", rels_out;
  cmd_rels->add_option("--w", rels_w)->required();
  cmd_rels->add_option("--depth-cap", rels_depth);
  cmd_rels->add_option("--sign-level", rels_level, "mzv-only|full-euler");
  cmd_rels->add_option("--out", rels_out, "output JSON path");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "verify one identity (inline or record file)");
  std::string verify_expr, verify_file, verify_mode = "numeric";
  std::vector<std::string> verify_params;
  cmd_verify->add_option("expr", verify_expr, "\"lhs = rhs\" or an expression asserted zero");
  cmd_verify->add_option("--file", verify_file, "identity record JSON");
  cmd_verify->add_option("--mode", verify_mode, "numeric|span|both");
  cmd_verify->add_option("--param", verify_params, "name=value bindings (repeatable)");

  // ---- tables ----
  auto* cmd_tables = app.add_subcommand("tables", "run the identity catalog");
  std::string tables_catalog = "data/catalog", tables_out, tables_mode = "numeric";
  std::string tables_weights;
  cmd_tables->add_option("--catalog", tables_catalog, "catalog directory");
  cmd_tables->add_option("--weights", tables_weights, "comma list, filter by weight");
  cmd_tables->add_option("--mode", tables_mode, "numeric|span|both");
  cmd_tables->add_option("--out", tables_out, "write the JSON report here");

  // ---- eval ----
  auto* cmd_eval = app.add_subcommand("eval", "numeric value of a term");
  std::string eval_term;
  std::vector<std::string> eval_params;
  cmd_eval->add_option("term", eval_term)->required();
  cmd_eval->add_option("--param", eval_params, "name=value bindings (repeatable)");

  CLI11_PARSE(app, argc, argv);
  EvalConfig cfg = make_eval_config(eps, ladder_max, use_ladder);

  try {
    if (*cmd_expand) {
      if (expand_terms.size() == 2) {
        Index u = parse_index_arg(expand_terms[0]);
        Index v = parse_index_arg(expand_terms[1]);
        IndexComb r = (expand_op == "shuffle") ? shuffle_indices(u, v) : stuffle(u, v);
        std::printf("%s\n", r.str().c_str());
      } else if (expand_terms.size() == 1) {
        TPoly p = eval_expression(parse_expression(expand_terms[0]), Env{});
        std::printf("%s\n", p.str().c_str());
      } else {
        throw std::runtime_error("expand takes one or two terms");
      }
      return 0;
    }
    if (*cmd_reg) {
      Index u = parse_index_arg(reg_term);
      TPoly star = star_regularize(u), sh = shuffle_regularize(u);
      std::printf("star:    %s\n", star.str().c_str());
      std::printf("shuffle: %s\n", sh.str().c_str());
      TPoly defect = sh - rho_apply(star);
      std::printf("defect:  %s\n", defect.str().c_str());
      VerifyReport rep = numeric_verify(defect, cfg, eps);
      std::printf("defect numeric: %s\n", rep.status_str().c_str());
      return rep.status == VerifyReport::kPass ? 0 : 1;
    }
    if (*cmd_rel) {
      TPoly relation;
      for (MethodTerm& term : parse_method(rel_method)) {
        if (!rel_signs.empty()) apply_signs(term.invocation, rel_signs);
        relation += f_identity(term.invocation, rel_w) * term.coef;
      }
      std::printf("%s\n", relation.str().c_str());
      VerifyReport rep = numeric_verify(relation, cfg, eps);
      for (const auto& r : rep.residuals)
        std::printf("T^%d residual %.3e (bound %.1e)\n", r.t_degree, r.value, r.bound);
      std::printf("%s\n", rep.status_str().c_str());
      return rep.status == VerifyReport::kPass ? 0 : 1;
    }
    if (*cmd_rels) {
      SignLevel level =
          rels_level == "full-euler" ? SignLevel::kFullEuler : SignLevel::kMzvOnly;
      RelationSet set = generate_relations(rels_w, rels_depth > 0 ? rels_depth : rels_w, level);
      std::string json = set.to_json();
      if (rels_out.empty()) {
        std::printf("%s\n", json.c_str());
      } else {
        std::ofstream out(rels_out);
        out << json << "\n";
        std::printf("wrote %zu rows (rank %d) to %s\n", set.rows.size(), span_rank(set),
                    rels_out.c_str());
      }
      return 0;
    }
    if (*cmd_verify) {
      RunOptions opts;
      opts.eps = eps;
      opts.eval = cfg;
      opts.mode = verify_mode == "span"   ? RunOptions::kSpan
                  : verify_mode == "both" ? RunOptions::kBoth
                                          : RunOptions::kNumeric;
      std::vector<ReportEntry> entries;
      if (!verify_file.empty()) {
        for (const auto& rec : load_catalog_file(verify_file)) {
          auto e = run_record(rec, opts);
          entries.insert(entries.end(), e.begin(), e.end());
        }
      } else if (!verify_expr.empty()) {
        Env env = parse_params(verify_params);
        std::string lhs = verify_expr, rhs = "0";
        int depth = 0;
        for (size_t i = 0; i < verify_expr.size(); ++i) {
          char c = verify_expr[i];
          if (c == '(' || c == '{' || c == '[') ++depth;
          if (c == ')' || c == '}' || c == ']') --depth;
          if (c == '=' && depth == 0 && (i == 0 || verify_expr[i - 1] != '>') &&
              (i == 0 || verify_expr[i - 1] != '<')) {
            lhs = verify_expr.substr(0, i);
            rhs = verify_expr.substr(i + 1);
            break;
          }
        }
        IdentityRecord rec;
        rec.id = "inline";
        rec.run_method = false;
        rec.params.push_back({});
        for (const auto& [k, v] : env) rec.params.back()[k] = v.convert_to<long>();
        rec.checks.push_back({"check", lhs, rhs});
        entries = run_record(rec, opts);
      } else {
        throw std::runtime_error("verify needs an expression or --file");
      }
      std::printf("%s", report_to_text(entries).c_str());
      for (const auto& e : entries)
        if (e.counts_as_failure) return 1;
      return 0;
    }
    if (*cmd_tables) {
      RunOptions opts;
      opts.eps = eps;
      opts.eval = cfg;
      opts.mode = tables_mode == "span"   ? RunOptions::kSpan
                  : tables_mode == "both" ? RunOptions::kBoth
                                          : RunOptions::kNumeric;
      if (!tables_weights.empty()) {
        size_t pos = 0;
        while (pos < tables_weights.size()) {
          auto comma = tables_weights.find(',', pos);
          if (comma == std::string::npos) comma = tables_weights.size();
          opts.weights.push_back(std::stoi(tables_weights.substr(pos, comma - pos)));
          pos = comma + 1;
        }
      }
      std::vector<ReportEntry> entries;
      for (const auto& rec : load_catalog(tables_catalog)) {
        auto e = run_record(rec, opts);
        entries.insert(entries.end(), e.begin(), e.end());
      }
      std::string text = report_to_text(entries);
      std::printf("%s", text.c_str());
      int fails = 0;
      for (const auto& e : entries) fails += e.counts_as_failure ? 1 : 0;
      std::printf("---\n%zu results, %d failures\n", entries.size(), fails);
      if (!tables_out.empty()) {
        std::ofstream out(tables_out);
        out << report_to_json(entries) << "\n";
      }
      return fails == 0 ? 0 : 1;
    }
    if (*cmd_eval) {
      Env env = parse_params(eval_params);
      TPoly p = eval_expression(parse_expression(eval_term), env);
      print_tpoly_values(p, cfg);
      return 0;
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 2;
}
