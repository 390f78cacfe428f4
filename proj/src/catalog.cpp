#include "esum/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace esum {

namespace {

using OrderedJson = nlohmann::ordered_json;

IdentityRecord parse_record(const OrderedJson& j) {
  IdentityRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.table = j.value("table", std::string("extra"));
  rec.method = j.value("method", std::string());
  rec.run_method = j.value("run_method", !rec.method.empty() && rec.method != "stuffle");
  rec.signs = j.value("signs", std::string());
  std::string st = j.value("status", std::string("expected-holds"));
  rec.status = (st == "transcription-uncertain") ? IdentityRecord::kTranscriptionUncertain
                                                 : IdentityRecord::kExpectedHolds;
  for (const auto& p : j.at("params")) {
    std::map<std::string, long> ps;
    for (auto it = p.begin(); it != p.end(); ++it) ps[it.key()] = it.value().get<long>();
    rec.params.push_back(std::move(ps));
  }
  if (j.contains("defs"))
    for (auto it = j.at("defs").begin(); it != j.at("defs").end(); ++it)
      rec.defs.emplace_back(it.key(), it.value().get<std::string>());
  if (j.contains("checks"))
    for (const auto& c : j.at("checks"))
      rec.checks.push_back({c.at("label").get<std::string>(), c.at("lhs").get<std::string>(),
                            c.at("rhs").get<std::string>(),
                            c.value("status", std::string()) == "transcription-uncertain"});
  return rec;
}

std::string format_env(const std::map<std::string, long>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ",";
    s += k + "=" + std::to_string(v);
  }
  return s;
}

SignLevel detect_sign_level(const IndexComb& c) {
  for (const auto& [u, _] : c.terms())
    for (size_t i = 0; i < u.depth(); ++i)
      if (u.sign(i) < 0) return SignLevel::kFullEuler;
  return SignLevel::kMzvOnly;
}

void run_span_check(const TPoly& diff, const RunOptions& opts, ReportEntry& entry,
                    bool uncertain) {
  entry.mode = "span";
  if (diff.zero()) {
    entry.status = "PASS";
    return;
  }
  if (diff.degree() > 0) {
    entry.status = "skipped (T-degree > 0)";
    return;
  }
  const IndexComb& cand = diff.coeff(0);
  int w = cand.terms().begin()->first.weight();
  SignLevel level = detect_sign_level(cand);
  int cap = (level == SignLevel::kMzvOnly) ? opts.span_weight_cap_mzv
                                           : opts.span_weight_cap_euler;
  if (w > cap) {
    entry.status = "skipped";
    return;
  }
  RelationSet rels = generate_relations(w, w, level);
  auto cert = verify_in_span(cand, rels);
  if (cert) {
    entry.status = "PASS";
    for (const auto& [rid, c] : cert->combination)
      entry.certificate.emplace_back(std::to_string(rid), to_string(c));
  } else {
    entry.status = uncertain ? "mismatch (flagged)" : "FAIL";
    entry.counts_as_failure = !uncertain;
  }
}

void run_numeric_check(const TPoly& diff, const RunOptions& opts, ReportEntry& entry,
                       bool uncertain) {
  entry.mode = "numeric";
  VerifyReport rep = numeric_verify(diff, opts.eval, opts.eps);
  entry.residuals = rep.residuals;
  if (rep.status == VerifyReport::kPass) {
    entry.status = "PASS";
  } else if (rep.status == VerifyReport::kInconclusive) {
    entry.status = "inconclusive";
  } else {
    entry.status = uncertain ? "mismatch (flagged)" : "FAIL";
    entry.counts_as_failure = !uncertain;
  }
}

}  // namespace

std::vector<IdentityRecord> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file " + path);
  OrderedJson j = OrderedJson::parse(in);
  std::vector<IdentityRecord> out;
  if (j.is_array()) {
    for (const auto& r : j) out.push_back(parse_record(r));
  } else {
    out.push_back(parse_record(j));
  }
  return out;
}

std::vector<IdentityRecord> load_catalog(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<IdentityRecord> out;
  for (const auto& f : files) {
    auto recs = load_catalog_file(f);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<ReportEntry> run_record(const IdentityRecord& rec, const RunOptions& opts) {
  std::vector<ReportEntry> entries;
  const bool uncertain = rec.status == IdentityRecord::kTranscriptionUncertain;

  for (const auto& params : rec.params) {
    Env env;
    for (const auto& [k, v] : params) env[k] = Rational(v);
    std::string perr;
    try {
      for (const auto& [name, expr] : rec.defs)
        env[name] = eval_scalar(parse_expression(expr), env);
    } catch (const std::exception& ex) {
      perr = ex.what();
    }
    long w_env = 0;
    if (env.count("w")) w_env = env["w"].convert_to<long>();
    if (!opts.weights.empty() && w_env != 0 &&
        std::find(opts.weights.begin(), opts.weights.end(), static_cast<int>(w_env)) ==
            opts.weights.end())
      continue;

    if (!perr.empty()) {
      entries.push_back({rec.id, format_env(params), "setup", "error: " + perr, {}, {}, true});
      continue;
    }

    if (rec.run_method && !rec.method.empty() && rec.method != "stuffle") {
      // '|' separates independent method runs within one row
      std::vector<std::string> methods;
      size_t pos = 0;
      while (pos <= rec.method.size()) {
        auto bar = rec.method.find('|', pos);
        if (bar == std::string::npos) bar = rec.method.size();
        methods.push_back(rec.method.substr(pos, bar - pos));
        pos = bar + 1;
      }
      for (size_t mi = 0; mi < methods.size(); ++mi) {
        ReportEntry entry;
        entry.record_id = rec.id;
        entry.instantiation = "method#" + std::to_string(mi + 1) + " " + format_env(params);
        try {
          if (w_env == 0) throw std::invalid_argument("method run needs a weight binding 'w'");
          TPoly relation;
          for (MethodTerm& term : parse_method(methods[mi])) {
            if (!rec.signs.empty()) apply_signs(term.invocation, rec.signs);
            relation += f_identity(term.invocation, static_cast<int>(w_env)) * term.coef;
          }
          run_numeric_check(relation, opts, entry, uncertain);
          entry.mode = "numeric (method relation)";
        } catch (const std::exception& ex) {
          entry.status = std::string("error: ") + ex.what();
          entry.counts_as_failure = !uncertain;
        }
        entries.push_back(std::move(entry));
      }
    }

    for (const auto& check : rec.checks) {
      const bool check_uncertain = uncertain || check.uncertain;
      ReportEntry entry;
      entry.record_id = rec.id;
      entry.instantiation = check.label + " " + format_env(params);
      try {
        TPoly lhs = eval_expression(parse_expression(check.lhs), env);
        TPoly rhs = eval_expression(parse_expression(check.rhs), env);
        TPoly diff = lhs - rhs;
        if (!diff.zero()) homogeneous_weight(diff);  // record invariant
        if (opts.mode == RunOptions::kNumeric || opts.mode == RunOptions::kBoth) {
          ReportEntry num = entry;
          run_numeric_check(diff, opts, num, check_uncertain);
          entries.push_back(std::move(num));
        }
        if (opts.mode == RunOptions::kSpan || opts.mode == RunOptions::kBoth) {
          ReportEntry sp = entry;
          run_span_check(diff, opts, sp, check_uncertain);
          entries.push_back(std::move(sp));
        }
        continue;
      } catch (const std::exception& ex) {
        entry.status = check_uncertain ? "mismatch (flagged): " + std::string(ex.what())
                                       : "error: " + std::string(ex.what());
        entry.counts_as_failure = !check_uncertain;
        entries.push_back(std::move(entry));
      }
    }
  }
  return entries;
}

std::string report_to_json(const std::vector<ReportEntry>& entries) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& e : entries) {
    OrderedJson j;
    j["record_id"] = e.record_id;
    j["instantiation"] = e.instantiation;
    j["mode"] = e.mode;
    j["status"] = e.status;
    OrderedJson res = OrderedJson::array();
    for (const auto& r : e.residuals) {
      char vbuf[40], bbuf[40];
      std::snprintf(vbuf, sizeof vbuf, "%.12e", r.value);
      std::snprintf(bbuf, sizeof bbuf, "%.6e", r.bound);
      res.push_back(OrderedJson{{"t_degree", r.t_degree}, {"value", vbuf}, {"bound", bbuf}});
    }
    j["residuals"] = std::move(res);
    if (!e.certificate.empty()) {
      OrderedJson cert = OrderedJson::array();
      for (const auto& [rid, c] : e.certificate) cert.push_back(OrderedJson::array({rid, c}));
      j["certificate"] = std::move(cert);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string report_to_text(const std::vector<ReportEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries) {
    double worst = 0.0;
    for (const auto& r : e.residuals) worst = std::max(worst, std::abs(r.value));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2e", worst);
    out << "[" << e.status << "] " << e.record_id << " " << e.instantiation;
    if (!e.residuals.empty()) out << "  max|res|=" << buf;
    out << "\n";
  }
  return out.str();
}

}  // namespace esum
