#pragma once

// Codes in the Grassmannian, possibly with repeated codewords.
//
// Two families of parameters are checked here. A covering code with
// parameters (alpha, delta) demands that every alpha codewords (repeats
// allowed, up to multiplicity) span a subspace of dimension at least
// delta + k. A multiple code with parameters (t, lambda) demands that every
// t-subspace of F_q^n is contained in at most lambda codewords, counted with
// multiplicity. The two notions are orthogonal-complement duals of each
// other, which the tests exercise; the checkers themselves are deliberately
// independent implementations.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grasscov/grassmann.hpp"

namespace grasscov {

class GrassCode {
 public:
  GrassCode() = default;
  GrassCode(FieldCtx ctx, int n, int k);

  // Merge-adds: adding an existing subspace raises its multiplicity.
  void add(const Subspace& s, long long mult = 1);

  const FieldCtx& ctx() const { return ctx_; }
  int n() const { return n_; }
  int k() const { return k_; }

  long long size() const { return size_; }  // sum of multiplicities
  int distinct_count() const { return static_cast<int>(words_.size()); }
  bool simple() const;

  const std::vector<std::pair<Subspace, long long>>& words() const { return words_; }
  long long multiplicity_of(const Subspace& s) const;

  bool operator==(const GrassCode& other) const;
  bool operator!=(const GrassCode& other) const { return !(*this == other); }

 private:
  FieldCtx ctx_;
  int n_ = 0, k_ = 0;
  long long size_ = 0;
  std::vector<std::pair<Subspace, long long>> words_;
  std::unordered_map<Subspace, int, SubspaceHash> index_;
};

struct CoveringWitness {
  // One entry per selected slot; repeats mean the same codeword was used more
  // than once (possible only up to its multiplicity).
  std::vector<int> slots;
  int span_dim = 0;
};

struct MultipleWitness {
  Subspace t_subspace;
  std::vector<int> word_indices;  // distinct codewords containing it
  long long load = 0;             // their multiplicities summed
};

struct ValidityReport {
  bool valid = false;
  bool vacuous = false;           // covering check on a code smaller than alpha
  bool degenerate_alpha = false;  // alpha == 1 says nothing useful
  std::optional<CoveringWitness> covering_witness;
  std::optional<MultipleWitness> multiple_witness;
};

// Minimum over all alpha-element multisubsets of the dimension of their span.
// TooFewCodewords when size(code) < alpha, InvalidArgs when alpha < 1.
int min_alpha_span(const GrassCode& code, long long alpha);

// Covering check; vacuously valid (flagged) when size(code) < alpha.
// The witness, when invalid, is the first offending selection in canonical
// word order. InvalidArgs when alpha < 1 or delta < 1.
ValidityReport check_covering(const GrassCode& code, long long alpha, int delta);

struct LoadReport {
  long long max_load = 0;
  std::optional<Subspace> argmax;  // first t-subspace reaching max_load
  std::vector<int> holders;        // codewords containing it
};

// Largest multiplicity-weighted number of codewords sharing one t-subspace,
// with the t-subspace achieving it. InvalidArgs unless 0 <= t <= k. The
// cost is size(code) * [k t]_q; the budget guards that enumeration.
LoadReport tsubspace_load_report(const GrassCode& code, int t,
                                 long long enum_budget = kDefaultEnumBudget);
long long max_tsubspace_load(const GrassCode& code, int t,
                             long long enum_budget = kDefaultEnumBudget);

// Multiple-code check; witness is an overloaded t-subspace with the codewords
// containing it.
ValidityReport check_multiple(const GrassCode& code, int t, long long lambda,
                              long long enum_budget = kDefaultEnumBudget);

// Minimum pairwise Grassmann distance. NotSimple for multiset codes,
// TooFewCodewords below two codewords.
int min_distance(const GrassCode& code);

// Orthogonal complement applied codeword-wise; multiplicities carry over.
GrassCode dualize(const GrassCode& code);

// G_q(n, k) minus the given simple code, in canonical order.
GrassCode complement(const GrassCode& code, long long enum_budget = kDefaultEnumBudget);

}  // namespace grasscov
