#pragma once

// Upper and lower bounds for the code quantities, all in exact arbitrary
// precision arithmetic.
//
// Packing: a multiple code with parameters (t, lambda) consumes lambda slots
// on each of the [n t]_q t-subspaces while every codeword occupies [k t]_q of
// them, so A <= floor(lambda [n t]_q / [k t]_q). The covering-side bound is
// the same statement through the duality translation
// B_q(n,k,delta;alpha) = A_q(n,n-k,n-k-delta+1;alpha-1).
//
// Johnson-style steps bound a quantity by a smaller Grassmannian's quantity:
//   step 1: A_q(n,k,t;l) <= floor((q^n-1)/(q^k-1)     * A_q(n-1,k-1,t-1;l))
//   step 2: A_q(n,k,t;l) <= floor((q^n-1)/(q^(n-k)-1) * A_q(n-1,k,t;l)),
//           valid only while l <= [n-1-t k-t]_q.
// The recursion engine chains them, bottoming out at t = 0 / t = k / k = n,
// and lets exact values from the results store preempt the recursion.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "grasscov/grassmann.hpp"
#include "grasscov/store.hpp"

namespace grasscov {

// Largest lambda worth considering: every t-subspace lies in exactly
// [n-t k-t]_q of the k-subspaces, so at that lambda the whole Grassmannian
// is a valid code.
BigInt lambda_complete(int n, int k, int t, int q);

// floor(lambda [n t]_q / [k t]_q). Preconditions 1 <= t < k < n and
// 1 <= lambda; for simple codes lambda must not exceed lambda_complete
// (InvalidArgs otherwise).
BigInt packing_bound_multiple(int n, int k, int t, const BigInt& lambda, int q,
                              bool repeats = false);

// floor((alpha-1) [n delta+k-1]_q / [n-k delta-1]_q). Preconditions
// 1 <= delta <= n-k, 0 < k < n, 2 <= alpha; for simple codes alpha must not
// exceed [k+delta-1 k]_q + 1.
BigInt packing_bound_covering(int n, int k, int delta, const BigInt& alpha, int q,
                              bool repeats = false);

// Johnson steps, multiple side. `inner` is the bound for the smaller
// parameters named above.
BigInt johnson_bound_1(int n, int k, int t, const BigInt& lambda, int q, const BigInt& inner);
BigInt johnson_bound_2(int n, int k, int t, const BigInt& lambda, int q, const BigInt& inner);

// Johnson steps, covering side (duals of the two above; note they swap):
//   covering step 1: B(n,k,delta;a) <= floor((q^n-1)/(q^(n-k)-1) * B(n-1,k,delta;a))
//   covering step 2: B(n,k,delta;a) <= floor((q^n-1)/(q^k-1)     * B(n-1,k-1,delta;a))
BigInt johnson_bound_covering_1(int n, int k, int delta, const BigInt& alpha, int q,
                                const BigInt& inner);
BigInt johnson_bound_covering_2(int n, int k, int delta, const BigInt& alpha, int q,
                                const BigInt& inner);

struct BoundEntry {
  std::string rule;  // "packing", "johnson1", "johnson2", "exact", "complete", "scaling", ...
  BigInt value;
  std::vector<std::string> trace;  // recursion chain, human readable
};

struct BoundRow {
  long long lambda = 0;
  std::vector<BoundEntry> uppers;
  std::vector<BoundEntry> lowers;
  BigInt best_upper;
  std::optional<BigInt> best_lower;
};

struct BoundTable {
  int q = 0, n = 0, k = 0, t = 0;
  bool repeats = false;
  std::vector<BoundRow> rows;
};

class BoundEngine {
 public:
  explicit BoundEngine(int q, const ResultsStore* store = nullptr);

  // Best upper bound for A (or A~ with repeats) with its derivation trace.
  BoundEntry upper_multiple(int n, int k, int t, long long lambda, bool repeats = false);
  // Covering side through the duality translation.
  BoundEntry upper_covering(int n, int k, int delta, long long alpha, bool repeats = false);

  // Best known lower bound (store entries, completeness, repeat scaling).
  std::optional<BoundEntry> lower_multiple(int n, int k, int t, long long lambda,
                                           bool repeats = false);

  BoundTable bound_table(int n, int k, int t, long long lambda_lo, long long lambda_hi,
                         bool repeats = false);

 private:
  BoundEntry upper_rec(int n, int k, int t, long long lambda, bool repeats, int depth);
  int q_;
  const ResultsStore* store_;
  std::map<std::tuple<int, int, int, long long, bool>, BoundEntry> memo_;
};

struct IdentityOutcome {
  std::string name;
  std::string status;  // "holds", "fails", "skipped"
  std::string detail;
};

struct IdentityReport {
  int q = 0, n = 0, k = 0, t = 0;
  long long lambda = 0;
  bool design_detected = false;  // packing meets covering exactly
  std::vector<IdentityOutcome> outcomes;
};

// Cross-checks between certified exact values in the store:
//   dual-lambda1       A(n,k,t;1) = A(n,n-k,n-2k+t;1)
//   complement-sum     A(n,k,t;l) + C(n,k,t;lmax-l) = [n k]_q
//   packing-vs-cover   A(n,k,t;l) <= C(n,k,t;l), equality iff a design exists
//   complement-ineq    A(n,k,t;l) <= A(n,n-k,n-2k+t;l) when 2k <= n
// Throws MissingExactValue when a needed certified value is absent.
IdentityReport identity_checks(int q, int n, int k, int t, long long lambda,
                               const ResultsStore& store);

}  // namespace grasscov
