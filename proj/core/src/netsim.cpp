#include "grasscov/netsim.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace grasscov {

namespace {

void validate_params(const NetworkParams& p) {
  make_field(p.q);  // validates q
  if (p.h < 1) throw InvalidArgs("need at least one message symbol");
  if (p.r < 1) throw InvalidArgs("need at least one middle node");
  if (p.alpha < 1 || p.alpha > p.r) throw InvalidArgs("need 1 <= alpha <= r");
  if (p.k < 1) throw InvalidArgs("need at least one link per middle node");
  if (p.eps < 0) throw InvalidArgs("eps must be >= 0");
}

// q^e clamped into long long, or nullopt on overflow.
std::optional<long long> pow_ll(int q, int e) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > std::numeric_limits<long long>::max() / q) return std::nullopt;
    v *= q;
  }
  return v;
}

struct Xorshift {
  std::uint64_t s;
  explicit Xorshift(std::uint64_t seed) : s(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
};

std::vector<Fq> mat_vec(const MatrixFq& m, const std::vector<Fq>& x) {
  const FieldCtx& F = m.ctx();
  std::vector<Fq> y(m.rows(), 0);
  for (int r = 0; r < m.rows(); ++r) {
    Fq acc = 0;
    for (int c = 0; c < m.cols(); ++c) acc = F.add(acc, F.mul(m.at(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

// Inverse via row reduction of [S | I]; nullopt when singular.
std::optional<MatrixFq> invert(const MatrixFq& s) {
  const int n = s.rows();
  MatrixFq aug(s.ctx(), n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.set(r, c, s.at(r, c));
    aug.set(r, n + r, 1);
  }
  RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] >= n) return std::nullopt;
  MatrixFq inv(s.ctx(), n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.set(r, c, rr.mat.at(r, n + c));
  return inv;
}

// Lexicographic enumeration of alpha-subsets of [0, r).
bool next_subset(std::vector<int>& s, long long r) {
  int a = static_cast<int>(s.size());
  int i = a - 1;
  while (i >= 0 && s[i] == r - a + i) --i;
  if (i < 0) return false;
  ++s[i];
  for (int j = i + 1; j < a; ++j) s[j] = s[j - 1] + 1;
  return true;
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt v = 1;
  for (long long i = 0; i < k; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

// The decoder a receiver uses: indices of the first h independent rows of the
// system matrix plus the inverse of that square subsystem. Nullopt when the
// receiver sees fewer than h independent symbols.
struct Decoder {
  std::vector<int> sel;
  MatrixFq inv;
};

std::optional<Decoder> make_decoder(const FieldCtx& F, const MatrixFq& R, int h) {
  SpanAcc acc(F, R.cols());
  std::vector<int> sel;
  for (int r = 0; r < R.rows() && static_cast<int>(sel.size()) < h; ++r)
    if (acc.add_row(R.row(r))) sel.push_back(r);
  if (static_cast<int>(sel.size()) < h) return std::nullopt;
  MatrixFq S(F, h, h);
  for (int i = 0; i < h; ++i)
    for (int c = 0; c < h; ++c) S.set(i, c, R.at(sel[i], c));
  auto inv = invert(S);
  if (!inv) throw std::logic_error("independent rows produced a singular system");
  return Decoder{std::move(sel), std::move(*inv)};
}

std::vector<Fq> run_decoder(const FieldCtx& F, const MatrixFq& R, const Decoder& d,
                            const std::vector<Fq>& x) {
  std::vector<Fq> y = mat_vec(R, x);
  std::vector<Fq> ysel(d.sel.size());
  for (std::size_t i = 0; i < d.sel.size(); ++i) ysel[i] = y[d.sel[i]];
  return mat_vec(d.inv, ysel);
}

}  // namespace

NetworkClass classify(const NetworkParams& p) {
  validate_params(p);
  NetworkClass c;
  c.delta = p.h - p.k - p.eps;
  if (p.k + p.eps >= p.h) {
    c.status = "trivial";
    c.reason = "one middle node plus the direct links already carry h independent symbols, "
               "so routing suffices";
    return c;
  }
  if (static_cast<long long>(p.alpha) * p.k + p.eps < p.h) {
    c.status = "unsolvable";
    c.reason = "all the links into a receiver together carry fewer than h symbols";
    return c;
  }
  c.status = "nontrivial";
  c.reason = "receivers see enough symbols only if every alpha assigned subspaces span "
             "dimension at least h - eps";
  return c;
}

CodeRequirement required_code(const NetworkParams& p) {
  NetworkClass c = classify(p);
  if (c.status != "nontrivial")
    throw InvalidArgs("network is " + c.status + ", no covering code is called for");
  CodeRequirement r;
  r.q = p.q;
  r.n = p.h;
  r.k = p.k;
  r.delta = c.delta;
  r.alpha = p.alpha;
  r.min_words = p.r;
  return r;
}

VectorParams vector_params(int h, int k, int eps, int ell) {
  if (ell < 1) throw InvalidArgs("vector solutions need ell >= 1");
  if (h < 1 || k < 1 || eps < 0) throw InvalidArgs("need h >= 1, k >= 1, eps >= 0");
  VectorParams v;
  v.n = h * ell;
  v.k = k * ell;
  v.delta = (h - k - eps) * ell;
  return v;
}

NetworkParams expand_network(const NetworkParams& p, int ell) {
  validate_params(p);
  if (ell < 1) throw InvalidArgs("vector solutions need ell >= 1");
  NetworkParams e = p;
  e.h = p.h * ell;
  e.k = p.k * ell;
  e.eps = p.eps * ell;
  return e;
}

CodingAssignment assign_scalar(const NetworkParams& p, const GrassCode& code) {
  NetworkClass cls = classify(p);
  if (cls.status == "unsolvable") throw InvalidArgs("network is unsolvable at any assignment");
  if (code.ctx().q() != p.q) throw DimensionMismatch("code field does not match the network");
  if (code.n() != p.h || code.k() != p.k)
    throw DimensionMismatch("code must live in the h-dimensional message space with word "
                            "dimension k");
  if (code.size() < p.r)
    throw CodeTooSmall("code has " + std::to_string(code.size()) + " slots, network needs " +
                       std::to_string(p.r));

  CodingAssignment a;
  a.params = p;
  a.ctx = code.ctx();
  std::vector<int> node_word;  // distinct-word index behind each node
  long long assigned = 0;
  for (int wi = 0; wi < code.distinct_count() && assigned < p.r; ++wi) {
    const auto& [w, mult] = code.words()[wi];
    for (long long c = 0; c < mult && assigned < p.r; ++c, ++assigned) {
      a.node_rows.push_back(w.basis());
      node_word.push_back(wi);
    }
  }

  if (cls.delta >= 1) {
    GrassCode sub(a.ctx, p.h, p.k);
    for (long long i = 0; i < p.r; ++i) sub.add(Subspace::from_rref(a.node_rows[i]));
    ValidityReport rep = check_covering(sub, p.alpha, cls.delta);
    if (!rep.valid) {
      // Map the witness (sub-code word indices, with repeats) back to nodes.
      std::vector<int> nodes;
      std::vector<char> taken(a.node_rows.size(), 0);
      for (int wi : rep.covering_witness->slots) {
        for (std::size_t nd = 0; nd < node_word.size(); ++nd) {
          if (!taken[nd] && node_word[nd] == wi) {
            taken[nd] = 1;
            nodes.push_back(static_cast<int>(nd));
            break;
          }
        }
      }
      std::sort(nodes.begin(), nodes.end());
      throw CodeInvalid("these middle nodes span only dimension " +
                            std::to_string(rep.covering_witness->span_dim) + ", below h - eps = " +
                            std::to_string(p.h - p.eps),
                        nodes, rep.covering_witness->span_dim);
    }
  }
  return a;
}

MatrixFq receiver_matrix(const CodingAssignment& a, const std::vector<int>& nodes) {
  const NetworkParams& p = a.params;
  if (static_cast<int>(nodes.size()) != p.alpha)
    throw InvalidArgs("a receiver connects to exactly alpha middle nodes");
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= p.r) throw InvalidArgs("middle node index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw InvalidArgs("repeated middle node");
  }

  MatrixFq R(a.ctx, p.alpha * p.k + p.eps, p.h);
  SpanAcc acc(a.ctx, p.h);
  int row = 0;
  for (int nd : sorted) {
    const MatrixFq& W = a.node_rows[nd];
    for (int r = 0; r < p.k; ++r, ++row) {
      for (int c = 0; c < p.h; ++c) R.set(row, c, W.at(r, c));
      acc.add_row(W.row(r));
    }
  }
  // Direct links: standard basis vectors that extend the span, zero padded to
  // exactly eps rows.
  int used = 0;
  for (int j = 0; j < p.h && used < p.eps && acc.rank() < p.h; ++j) {
    std::vector<Fq> e(p.h, 0);
    e[j] = 1;
    if (acc.add_row(e)) {
      R.set(row + used, j, 1);
      ++used;
    }
  }
  return R;
}

ReceiverOutcome simulate_receiver(const CodingAssignment& a, const std::vector<int>& nodes,
                                  std::uint64_t seed, long long message_cap) {
  const NetworkParams& p = a.params;
  ReceiverOutcome out;
  out.nodes = nodes;
  std::sort(out.nodes.begin(), out.nodes.end());
  MatrixFq R = receiver_matrix(a, out.nodes);
  auto dec = make_decoder(a.ctx, R, p.h);
  if (!dec) {
    out.status = "singular";
    return out;
  }

  auto decode_ok = [&](const std::vector<Fq>& x) { return run_decoder(a.ctx, R, *dec, x) == x; };

  auto total = pow_ll(p.q, p.h);
  if (total && *total <= message_cap) {
    for (long long idx = 0; idx < *total; ++idx) {
      ++out.messages_tested;
      if (!decode_ok(message_from_index(p.q, p.h, idx))) {
        out.status = "mismatch";
        return out;
      }
    }
  } else {
    Xorshift rng(seed);
    for (long long s = 0; s < message_cap; ++s) {
      std::vector<Fq> x(p.h);
      for (int j = 0; j < p.h; ++j) x[j] = static_cast<Fq>(rng.next() % p.q);
      ++out.messages_tested;
      if (!decode_ok(x)) {
        out.status = "mismatch";
        return out;
      }
    }
  }
  return out;
}

SimulationReport simulate_all(const CodingAssignment& a, std::uint64_t seed,
                              long long message_cap, long long receiver_budget) {
  const NetworkParams& p = a.params;
  BigInt count = binomial(p.r, p.alpha);
  if (count > receiver_budget)
    throw BudgetExceeded("network has " + count.str() + " receivers", count.str());

  SimulationReport rep;
  auto total = pow_ll(p.q, p.h);
  rep.exhaustive_messages = total && *total <= message_cap;

  std::vector<int> nodes(p.alpha);
  for (int i = 0; i < p.alpha; ++i) nodes[i] = i;
  do {
    ReceiverOutcome oc = simulate_receiver(a, nodes, seed, message_cap);
    ++rep.receivers;
    if (oc.status == "ok")
      ++rep.ok;
    else {
      if (oc.status == "mismatch")
        ++rep.mismatch;
      else
        ++rep.singular;
      if (rep.failures.size() < 32) rep.failures.push_back(std::move(oc));
    }
  } while (next_subset(nodes, p.r));
  return rep;
}

SingleMessageReport simulate(const CodingAssignment& a, const std::vector<Fq>& message,
                             long long receiver_budget) {
  const NetworkParams& p = a.params;
  if (static_cast<int>(message.size()) != p.h)
    throw DimensionMismatch("message must carry h symbols");
  for (Fq v : message)
    if (!a.ctx.valid_element(v)) throw InvalidArgs("message symbol outside the field");
  BigInt count = binomial(p.r, p.alpha);
  if (count > receiver_budget)
    throw BudgetExceeded("network has " + count.str() + " receivers", count.str());

  SingleMessageReport rep;
  std::vector<int> nodes(p.alpha);
  for (int i = 0; i < p.alpha; ++i) nodes[i] = i;
  do {
    ++rep.receivers;
    DecodeOutcome oc;
    oc.nodes = nodes;
    MatrixFq R = receiver_matrix(a, nodes);
    auto dec = make_decoder(a.ctx, R, p.h);
    if (!dec) {
      oc.status = "singular";
    } else {
      oc.decoded = run_decoder(a.ctx, R, *dec, message);
      oc.status = (oc.decoded == message) ? "ok" : "mismatch";
    }
    if (oc.status == "ok")
      ++rep.ok;
    else {
      rep.all_ok = false;
      if (rep.failures.size() < 32) rep.failures.push_back(std::move(oc));
    }
  } while (next_subset(nodes, p.r));
  return rep;
}

NonlinearCode nonlinear_from_strings(const NetworkParams& p,
                                     std::vector<std::vector<Fq>> strings) {
  validate_params(p);
  FieldCtx F = make_field(p.q);
  auto total = pow_ll(p.q, p.h);
  if (!total || *total > 1'048'576)
    throw BudgetExceeded("message space too large to tabulate",
                         total ? std::to_string(*total) : "overflow");
  if (static_cast<long long>(strings.size()) != *total)
    throw WrongCount("need one string per message, " + std::to_string(*total) + " in total");
  const long long len = p.r * p.k;
  for (const auto& s : strings) {
    if (static_cast<long long>(s.size()) != len)
      throw WrongLength("every string must carry r*k = " + std::to_string(len) + " symbols");
    for (Fq v : s)
      if (!F.valid_element(v)) throw InvalidArgs("string symbol outside the field");
  }
  NonlinearCode c;
  c.params = p;
  c.strings = std::move(strings);
  return c;
}

NonlinearCode nonlinear_from_linear(const CodingAssignment& a) {
  const NetworkParams& p = a.params;
  auto total = pow_ll(p.q, p.h);
  if (!total || *total > 1'048'576)
    throw BudgetExceeded("message space too large to tabulate",
                         total ? std::to_string(*total) : "overflow");
  std::vector<std::vector<Fq>> strings;
  strings.reserve(static_cast<std::size_t>(*total));
  for (long long idx = 0; idx < *total; ++idx) {
    std::vector<Fq> x = message_from_index(p.q, p.h, idx);
    std::vector<Fq> s;
    s.reserve(static_cast<std::size_t>(p.r) * p.k);
    for (const MatrixFq& W : a.node_rows) {
      std::vector<Fq> y = mat_vec(W, x);
      s.insert(s.end(), y.begin(), y.end());
    }
    strings.push_back(std::move(s));
  }
  return nonlinear_from_strings(p, std::move(strings));
}

namespace {

// Iterate receivers; for each, group messages by the pattern they induce on
// the receiver's alpha*k coordinates.
template <typename Fn>
NonlinearReport scan_receivers(const NonlinearCode& c, long long receiver_budget,
                               Fn&& per_receiver) {
  const NetworkParams& p = c.params;
  auto total = pow_ll(p.q, p.h);
  if (!total || static_cast<long long>(c.strings.size()) != *total)
    throw WrongCount("need one string per message");
  BigInt count = binomial(p.r, p.alpha);
  if (count > receiver_budget)
    throw BudgetExceeded("network has " + count.str() + " receivers", count.str());

  NonlinearReport rep;
  std::vector<int> nodes(p.alpha);
  for (int i = 0; i < p.alpha; ++i) nodes[i] = i;
  std::vector<Fq> pat(static_cast<std::size_t>(p.alpha) * p.k);
  do {
    ++rep.receivers_checked;
    std::map<std::vector<Fq>, std::vector<long long>> classes;
    for (long long idx = 0; idx < *total; ++idx) {
      const auto& s = c.strings[static_cast<std::size_t>(idx)];
      std::size_t at = 0;
      for (int nd : nodes)
        for (int j = 0; j < p.k; ++j) pat[at++] = s[static_cast<std::size_t>(nd) * p.k + j];
      classes[pat].push_back(idx);
    }
    if (!per_receiver(nodes, classes, rep)) return rep;
  } while (next_subset(nodes, p.r));
  return rep;
}

}  // namespace

NonlinearReport nonlinear_check(const NonlinearCode& c, long long receiver_budget) {
  auto limit = pow_ll(c.params.q, c.params.eps);  // nullopt means effectively unlimited
  return scan_receivers(c, receiver_budget,
                        [&](const std::vector<int>& nodes, const auto& classes,
                            NonlinearReport& rep) {
                          for (const auto& [pat, members] : classes) {
                            long long sz = static_cast<long long>(members.size());
                            rep.worst_class = std::max(rep.worst_class, sz);
                            if (limit && sz > *limit) {
                              rep.solvable = false;
                              rep.witness_receiver = nodes;
                              return false;
                            }
                          }
                          return true;
                        });
}

NonlinearReport nonlinear_simulate(const NonlinearCode& c, long long receiver_budget) {
  const int q = c.params.q;
  const int eps = c.params.eps;
  auto limit = pow_ll(q, eps);
  return scan_receivers(
      c, receiver_budget,
      [&](const std::vector<int>& nodes, const auto& classes, NonlinearReport& rep) {
        for (const auto& [pat, members] : classes) {
          long long sz = static_cast<long long>(members.size());
          rep.worst_class = std::max(rep.worst_class, sz);
          if (limit && sz > *limit) {
            rep.solvable = false;
            rep.witness_receiver = nodes;
            return false;
          }
          // Round trip: the direct links carry the message's position inside
          // its class as eps base-q digits; the receiver rebuilds the
          // position from the digits and reads the class back.
          for (std::size_t pos = 0; pos < members.size(); ++pos) {
            std::vector<Fq> digits = message_from_index(q, eps, static_cast<long long>(pos));
            long long back = message_to_index(q, digits);
            if (back < 0 || back >= sz || members[static_cast<std::size_t>(back)] != members[pos]) {
              rep.solvable = false;
              rep.witness_receiver = nodes;
              return false;
            }
          }
        }
        return true;
      });
}

std::vector<Fq> message_from_index(int q, int h, long long idx) {
  if (idx < 0) throw InvalidArgs("message index must be >= 0");
  std::vector<Fq> x(h, 0);
  for (int j = 0; j < h; ++j, idx /= q) x[j] = static_cast<Fq>(idx % q);
  if (idx != 0) throw InvalidArgs("message index out of range");
  return x;
}

long long message_to_index(int q, const std::vector<Fq>& x) {
  long long idx = 0;
  for (std::size_t j = x.size(); j-- > 0;) {
    if (x[j] >= q) throw InvalidArgs("coordinate out of range");
    idx = idx * q + x[j];
  }
  return idx;
}

}  // namespace grasscov
