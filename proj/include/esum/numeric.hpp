#ifndef ESUM_NUMERIC_HPP
#define ESUM_NUMERIC_HPP

#include <string>
#include <vector>

#include "esum/tpoly.hpp"

namespace esum {

struct EvalConfig {
  // Truncation ladder M0 * 2^k, k = 0..levels-1, for the ladder backend
  // and convergence studies.
  long ladder_m0 = 4096;
  int ladder_levels = 10;
  double target_eps = 1e-9;
  int max_log_power = -1;  // -1: depth-1
  // Primary backend splits the integration path at 1/2 and sums
  // geometrically convergent series; the ladder backend extrapolates
  // truncated sums and serves as an independent cross-check.
  enum Backend { kSplit, kLadder } backend = kSplit;
  int split_terms = 96;

  bool operator<(const EvalConfig& o) const;
};

struct EvalResult {
  double value = 0.0;
  double err_bound = 0.0;
  long truncation_used = 0;
  bool converged() const { return err_bound <= eps_ref; }
  double eps_ref = 1e-9;
};

// Exact partial sum zeta^(M)(s;mu) by depth-level dynamic programming with
// compensated summation.  M < depth gives exact 0.
double truncated_sum(const Index& u, long m);

// Admissible u only; throws on divergent symbols.  Memoized.
EvalResult evaluate(const Index& u, const EvalConfig& cfg = EvalConfig());

EvalResult evaluate_lincomb(const IndexComb& c, const EvalConfig& cfg = EvalConfig());

struct DegreeResidual {
  int t_degree = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct VerifyReport {
  enum Status { kPass, kFail, kInconclusive } status = kPass;
  std::vector<DegreeResidual> residuals;
  std::string status_str() const {
    return status == kPass ? "PASS" : (status == kFail ? "FAIL" : "inconclusive");
  }
};

// PASS iff every T-degree satisfies |value| <= max(tol, 3*errBound).
// Unconverged evaluations make the verdict inconclusive, never PASS.
VerifyReport numeric_verify(const TPoly& identity, const EvalConfig& cfg, double tol);
VerifyReport numeric_verify(const std::vector<IndexComb>& per_degree, const EvalConfig& cfg,
                            double tol);

}  // namespace esum

#endif
