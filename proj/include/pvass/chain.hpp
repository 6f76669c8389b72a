// chain.hpp -- the finite underlying chain of a pVASS and its analytics:
// SCC/BSCC structure, exact invariant distributions, change vectors, trends,
// and error-controlled absorbing-chain solving used by the other modules.
#pragma once

#include "pvass/model.hpp"
#include "pvass/numeric.hpp"

#include <vector>

namespace pvass {

struct UnderlyingChain {
  int n = 0;
  RatMat P;                          // P(p,q) = weight(p->q) / total weight of p
  std::vector<int> scc_of;           // state -> SCC id (reverse topological: BSCCs first is NOT guaranteed)
  std::vector<std::vector<int>> sccs;
  std::vector<char> is_bscc;         // per SCC id: closed under transitions
  std::vector<int> bsccs;            // SCC ids that are bottom, in id order
};

// Builds the underlying chain.  Probabilities use the total weight of ALL
// rules of a state, never enabledness; parallel rules between the same pair
// of states contribute their summed weight (the chain is invariant under the
// Assumption-1 normalization, so raw models are accepted).
UnderlyingChain build_underlying(const Pvass& m);

// Exact invariant distribution of the BSCC with the given SCC id, indexed by
// position in chain.sccs[scc_id].  Throws AnalysisError on non-BSCC input.
RatVec invariant_distribution(const UnderlyingChain& c, int scc_id);

// change(s) = sum over rules of s of kappa * weight / total weight of s.
RatMat change_vectors(const Pvass& m);  // n x d

struct TrendReport {
  struct PerBscc {
    int scc_id = 0;
    std::vector<int> states;  // member states
    RatVec mu;                // invariant distribution, aligned with `states`
    RatMat change;            // |states| x d
    RatVec trend;             // t_S in Q^d
  };
  std::vector<PerBscc> bsccs;
};

TrendReport trend_report(const Pvass& m, const UnderlyingChain& c);

// Trend of one BSCC (exact rationals).
RatVec trend(const Pvass& m, const UnderlyingChain& c, int scc_id);

// --- absorbing-chain solving ----------------------------------------------

struct AbsorbingSolution {
  DVec x;                  // midpoint solution of (I - A) x = C
  double error_bound = 0;  // certified per-entry absolute error
  bool exact = false;      // solved in exact rational arithmetic
  RatVec x_exact;          // populated when exact
};

// Solves (I - A) x = C for substochastic A (spectral radius < 1).  Systems up
// to `exact_cap` unknowns are solved in exact rational arithmetic; larger
// ones in floating point with iterative refinement, the certificate coming
// from the residual and the caller-supplied condition-number bound.
// Throws CertificateError when the certified error exceeds eps_abs.
AbsorbingSolution solve_absorbing(const RatMat& A, const RatVec& C, double eps_abs,
                                  int exact_cap = 200, double cond_bound = 0.0);

// Float variant for callers whose coefficients are themselves approximate.
AbsorbingSolution solve_absorbing(const DMat& A, const DVec& C, double eps_abs,
                                  double cond_bound = 0.0);

// Exact rational solve of a general square system M x = b (full-pivot LU).
RatVec solve_exact(const RatMat& M, const RatVec& b);

}  // namespace pvass
