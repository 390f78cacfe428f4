#include "esum/numeric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "esum/word.hpp"

namespace esum {

bool EvalConfig::operator<(const EvalConfig& o) const {
  return std::tie(ladder_m0, ladder_levels, target_eps, max_log_power, backend, split_terms) <
         std::tie(o.ladder_m0, o.ladder_levels, o.target_eps, o.max_log_power, o.backend,
                  o.split_terms);
}

double truncated_sum(const Index& u, long m) {
  const int d = static_cast<int>(u.depth());
  if (d == 0) return 1.0;
  if (m < d) return 0.0;

  // level j accumulator S[j] = sum_{m >= n_j > ... > n_d} with Neumaier
  // compensation; updating j ascending keeps S[j+1] one step behind.
  std::vector<double> s(d, 0.0), comp(d, 0.0), prev(d, 0.0);
  std::vector<int> parts = u.parts();
  SignVector signs = u.signs();
  for (long n = 1; n <= m; ++n) {
    double inv = 1.0 / static_cast<double>(n);
    for (int j = 0; j < d; ++j) prev[j] = s[j] + comp[j];
    for (int j = 0; j < d; ++j) {
      double term = (signs[j] < 0 && (n & 1)) ? -1.0 : 1.0;
      for (int p = 0; p < parts[j]; ++p) term *= inv;
      if (j + 1 < d) {
        double inner = prev[j + 1];
        if (inner == 0.0) continue;
        term *= inner;
      }
      double t = s[j] + term;
      if (std::abs(s[j]) >= std::abs(term))
        comp[j] += (s[j] - t) + term;
      else
        comp[j] += (term - t) + s[j];
      s[j] = t;
    }
  }
  return s[0] + comp[0];
}

namespace {

// ---- path-splitting backend ------------------------------------------------
//
// For an admissible word over letters {0,+1,-1} the defining integral over
// 0 < t_n < ... < t_1 < 1 splits at 1/2.  Flipping t -> 1-t on the upper
// part maps letters 0 -> 1, 1 -> 0, -1 -> 2 (with a sign per -1 letter),
// so the value becomes a sum of n+1 products of series at x = 1/2 that
// converge geometrically.

struct Block {
  int s;
  int y;  // in {1,-1,2}
};

// J(letters; x) = sum over n_1 > ... > n_d >= 1 of prod r_i^{n_i} / n_i^{s_i}
// with r_1 = x/y_1, r_i = y_{i-1}/y_i.
double j_series(const std::vector<int>& letters, double x, int nmax) {
  if (letters.empty()) return 1.0;
  std::vector<Block> blocks;
  int run = 0;
  for (int a : letters) {
    if (a == 0) {
      ++run;
    } else {
      blocks.push_back({run + 1, a});
      run = 0;
    }
  }
  const int d = static_cast<int>(blocks.size());
  std::vector<double> r(d);
  r[0] = x / blocks[0].y;
  for (int i = 1; i < d; ++i) r[i] = static_cast<double>(blocks[i - 1].y) / blocks[i].y;

  std::vector<double> inner(nmax + 1, 1.0), level(nmax + 1, 0.0);
  for (int j = d - 1; j >= 0; --j) {
    level[0] = 0.0;
    double rpow = 1.0;
    for (int n = 1; n <= nmax; ++n) {
      rpow *= r[j];
      double term = rpow * inner[n - 1];
      double inv = 1.0 / n;
      for (int p = 0; p < blocks[j].s; ++p) term *= inv;
      level[n] = level[n - 1] + term;
    }
    inner.swap(level);
  }
  return inner[nmax];
}

double evaluate_split(const Index& u, const EvalConfig& cfg, double* bound) {
  Word w = index_to_word(u);
  const int n = static_cast<int>(w.size());
  const int nmax = cfg.split_terms;
  double total = 0.0, abs_total = 0.0;
  for (int k = 0; k <= n; ++k) {
    // upper part: letters a_k..a_1 flipped; one sign per -1 letter.
    std::vector<int> upper;
    int sign = 1;
    for (int i = k - 1; i >= 0; --i) {
      int a = w.letter(i);
      if (a == 0)
        upper.push_back(1);
      else if (a == 1)
        upper.push_back(0);
      else {
        upper.push_back(2);
        sign = -sign;
      }
    }
    std::vector<int> lower(w.letters().begin() + k, w.letters().end());
    double ju = j_series(upper, 0.5, nmax);
    double jl = j_series(lower, 0.5, nmax);
    total += sign * ju * jl;
    abs_total += std::abs(ju * jl);
  }
  // geometric truncation plus float noise across the n+1 products
  double trunc = std::ldexp(std::pow(static_cast<double>(nmax), u.depth()), -nmax);
  *bound = 4.0 * trunc + 1e-14 * (1.0 + abs_total);
  return total;
}

// ---- ladder backend ---------------------------------------------------------

double evaluate_ladder(const Index& u, const EvalConfig& cfg, double* bound, long* used) {
  const int d = static_cast<int>(u.depth());
  const int levels = cfg.ladder_levels;
  std::vector<long> ms(levels);
  for (int k = 0; k < levels; ++k) ms[k] = cfg.ladder_m0 << k;
  *used = ms.back();

  // one DP pass, checkpointing the ladder
  std::vector<double> vals(levels);
  {
    std::vector<double> s(d, 0.0), comp(d, 0.0), prev(d, 0.0);
    std::vector<int> parts = u.parts();
    SignVector signs = u.signs();
    int next_cp = 0;
    for (long n = 1; n <= ms.back(); ++n) {
      double inv = 1.0 / static_cast<double>(n);
      for (int j = 0; j < d; ++j) prev[j] = s[j] + comp[j];
      for (int j = 0; j < d; ++j) {
        double term = (signs[j] < 0 && (n & 1)) ? -1.0 : 1.0;
        for (int p = 0; p < parts[j]; ++p) term *= inv;
        if (j + 1 < d) {
          double inner = prev[j + 1];
          if (inner == 0.0) continue;
          term *= inner;
        }
        double t = s[j] + term;
        if (std::abs(s[j]) >= std::abs(term))
          comp[j] += (s[j] - t) + term;
        else
          comp[j] += (term - t) + s[j];
        s[j] = t;
      }
      while (next_cp < levels && n == ms[next_cp]) {
        vals[next_cp] = s[0] + comp[0];
        ++next_cp;
      }
    }
  }

  int lp = cfg.max_log_power >= 0 ? cfg.max_log_power : std::max(0, d - 1);
  auto fit_c0 = [&](int skip, double* resid) {
    int pts = levels - skip;
    int cols = 1 + 3 * (lp + 1);
    Eigen::MatrixXd a(pts, cols);
    Eigen::VectorXd b(pts);
    for (int i = 0; i < pts; ++i) {
      double m = static_cast<double>(ms[i + skip]);
      double lg = std::log(m);
      a(i, 0) = 1.0;
      int c = 1;
      for (int r = 1; r <= 3; ++r)
        for (int p = 0; p <= lp; ++p) a(i, c++) = std::pow(lg, p) / std::pow(m, r);
      b(i) = vals[i + skip];
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-13);
    Eigen::VectorXd x = svd.solve(b);
    *resid = (a * x - b).cwiseAbs().maxCoeff();
    return x(0);
  };
  double r0 = 0, r1 = 0;
  double c0 = fit_c0(0, &r0);
  double c0b = fit_c0(std::min(2, levels - 5), &r1);
  *bound = 3.0 * std::max(r0, r1) + std::abs(c0 - c0b) + 1e-14;
  return c0;
}

}  // namespace

EvalResult evaluate(const Index& u, const EvalConfig& cfg) {
  if (!u.admissible()) throw std::invalid_argument("divergent symbol " + u.str());
  EvalResult res;
  res.eps_ref = cfg.target_eps;
  if (u.empty()) {
    res.value = 1.0;
    res.err_bound = 0.0;
    return res;
  }
  static thread_local std::map<std::pair<EvalConfig, Index>, EvalResult> memo;
  auto key = std::make_pair(cfg, u);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  if (cfg.backend == EvalConfig::kSplit) {
    res.value = evaluate_split(u, cfg, &res.err_bound);
    res.truncation_used = cfg.split_terms;
  } else {
    res.value = evaluate_ladder(u, cfg, &res.err_bound, &res.truncation_used);
  }
  memo.emplace(std::move(key), res);
  return res;
}

EvalResult evaluate_lincomb(const IndexComb& c, const EvalConfig& cfg) {
  EvalResult out;
  out.eps_ref = cfg.target_eps;
  for (const auto& [u, coef] : c.terms()) {
    EvalResult r = evaluate(u, cfg);
    double cd = to_double(coef);
    out.value += cd * r.value;
    out.err_bound += std::abs(cd) * r.err_bound;
  }
  return out;
}

VerifyReport numeric_verify(const std::vector<IndexComb>& per_degree, const EvalConfig& cfg,
                            double tol) {
  VerifyReport rep;
  for (size_t k = 0; k < per_degree.size(); ++k) {
    EvalResult r = evaluate_lincomb(per_degree[k], cfg);
    rep.residuals.push_back({static_cast<int>(k), r.value, r.err_bound});
    if (!r.converged()) {
      if (rep.status == VerifyReport::kPass) rep.status = VerifyReport::kInconclusive;
      continue;
    }
    if (std::abs(r.value) > std::max(tol, 3.0 * r.err_bound)) rep.status = VerifyReport::kFail;
  }
  return rep;
}

VerifyReport numeric_verify(const TPoly& identity, const EvalConfig& cfg, double tol) {
  std::vector<IndexComb> per_degree(static_cast<size_t>(std::max(0, identity.degree())) + 1);
  for (size_t k = 0; k < per_degree.size(); ++k)
    per_degree[k] = identity.coeff(static_cast<int>(k));
  return numeric_verify(per_degree, cfg, tol);
}

}  // namespace esum
