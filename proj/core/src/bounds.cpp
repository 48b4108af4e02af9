#include "grasscov/bounds.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace grasscov {

static BigInt q_pow(int q, int e) { return boost::multiprecision::pow(BigInt(q), e); }

BigInt lambda_complete(int n, int k, int t, int q) {
  if (!(0 <= t && t <= k && k <= n)) throw InvalidArgs("lambda_complete needs 0 <= t <= k <= n");
  return gaussian_binomial(n - t, k - t, q);
}

BigInt packing_bound_multiple(int n, int k, int t, const BigInt& lambda, int q, bool repeats) {
  if (!(1 <= t && t < k && k < n))
    throw InvalidArgs("packing bound needs 1 <= t < k < n");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  if (!repeats && lambda > lambda_complete(n, k, t, q))
    throw InvalidArgs("lambda exceeds the complete-Grassmannian multiplicity " +
                      lambda_complete(n, k, t, q).str());
  return lambda * gaussian_binomial(n, t, q) / gaussian_binomial(k, t, q);
}

BigInt packing_bound_covering(int n, int k, int delta, const BigInt& alpha, int q, bool repeats) {
  if (!(1 <= delta && delta <= n - k) || !(1 <= k && k < n))
    throw InvalidArgs("covering packing bound needs 0 < k < n and 1 <= delta <= n-k");
  if (alpha < 2) throw InvalidArgs("alpha must be >= 2");
  if (!repeats && alpha > gaussian_binomial(k + delta - 1, k, q) + 1)
    throw InvalidArgs("alpha exceeds the covering maximum " +
                      (gaussian_binomial(k + delta - 1, k, q) + 1).str());
  return (alpha - 1) * gaussian_binomial(n, delta + k - 1, q) /
         gaussian_binomial(n - k, delta - 1, q);
}

BigInt johnson_bound_1(int n, int k, int t, const BigInt& lambda, int q, const BigInt& inner) {
  if (!(1 <= t && t <= k && k <= n)) throw InvalidArgs("johnson step 1 needs 1 <= t <= k <= n");
  if (lambda < 1 || inner < 0) throw InvalidArgs("bad lambda or inner value");
  return (q_pow(q, n) - 1) * inner / (q_pow(q, k) - 1);
}

BigInt johnson_bound_2(int n, int k, int t, const BigInt& lambda, int q, const BigInt& inner) {
  if (!(1 <= t && t <= k && k < n)) throw InvalidArgs("johnson step 2 needs 1 <= t <= k < n");
  if (lambda < 1 || inner < 0) throw InvalidArgs("bad lambda or inner value");
  if (lambda > gaussian_binomial(n - 1 - t, k - t, q))
    throw InvalidArgs("johnson step 2 requires lambda <= [n-1-t k-t]_q = " +
                      gaussian_binomial(n - 1 - t, k - t, q).str());
  return (q_pow(q, n) - 1) * inner / (q_pow(q, n - k) - 1);
}

BigInt johnson_bound_covering_1(int n, int k, int delta, const BigInt& alpha, int q,
                                const BigInt& inner) {
  if (!(1 <= delta && delta <= n - k) || !(1 <= k && k < n))
    throw InvalidArgs("covering johnson step 1 parameter range");
  if (alpha < 2 || inner < 0) throw InvalidArgs("bad alpha or inner value");
  if (alpha - 1 > gaussian_binomial(k + delta - 2, k - 1, q))
    throw InvalidArgs("covering johnson step 1 requires alpha-1 <= [k+delta-2 k-1]_q");
  return (q_pow(q, n) - 1) * inner / (q_pow(q, n - k) - 1);
}

BigInt johnson_bound_covering_2(int n, int k, int delta, const BigInt& alpha, int q,
                                const BigInt& inner) {
  if (!(1 <= delta && delta <= n - k) || !(1 <= k && k < n))
    throw InvalidArgs("covering johnson step 2 parameter range");
  if (alpha < 2 || inner < 0) throw InvalidArgs("bad alpha or inner value");
  return (q_pow(q, n) - 1) * inner / (q_pow(q, k) - 1);
}

static std::string qty_str(bool repeats, int q, int n, int k, int t, long long lambda) {
  std::ostringstream os;
  os << (repeats ? "A~" : "A") << "(" << q << ";" << n << "," << k << "," << t << ";" << lambda
     << ")";
  return os.str();
}

BoundEngine::BoundEngine(int q, const ResultsStore* store) : q_(q), store_(store) {
  if (q < 2) throw InvalidArgs("q must be >= 2");
}

BoundEntry BoundEngine::upper_rec(int n, int k, int t, long long lambda, bool repeats,
                                  int depth) {
  if (!(0 <= t && t <= k && k <= n && n >= 0)) throw InvalidArgs("bound recursion range");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  auto key = std::make_tuple(n, k, t, lambda, repeats);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const std::string self = qty_str(repeats, q_, n, k, t, lambda);
  BoundEntry out;

  auto finish = [&](BoundEntry e) {
    memo_[key] = e;
    return e;
  };

  if (store_) {
    StoreKey sk{repeats ? Quantity::Arep : Quantity::A, q_, n, k, t, lambda};
    if (auto v = store_->exact(sk)) {
      out.rule = "exact";
      out.value = *v;
      auto entry = store_->get(sk);
      out.trace = {self + " = " + v->str() + " exact [" + entry->provenance + "]"};
      return finish(out);
    }
  }

  if (t == 0) {
    // The zero subspace lies in every codeword.
    out.rule = "base-t0";
    out.value = repeats ? BigInt(lambda) : std::min(BigInt(lambda), gaussian_binomial(n, k, q_));
    out.trace = {self + " = " + out.value.str() + " (every codeword holds the zero space)"};
    return finish(out);
  }
  if (k == n) {
    out.rule = "base-full";
    out.value = repeats ? BigInt(lambda) : BigInt(1);
    out.trace = {self + " = " + out.value.str() + " (only the full space is available)"};
    return finish(out);
  }
  if (t == k) {
    // A t-subspace of a codeword is the codeword itself.
    out.rule = "base-tk";
    BigInt g = gaussian_binomial(n, k, q_);
    out.value = repeats ? BigInt(lambda) * g : g;
    out.trace = {self + " = " + out.value.str() + " (t = k: loads are multiplicities)"};
    return finish(out);
  }
  BigInt lc = lambda_complete(n, k, t, q_);
  if (!repeats && BigInt(lambda) >= lc) {
    out.rule = "complete";
    out.value = gaussian_binomial(n, k, q_);
    out.trace = {self + " = " + out.value.str() + " (lambda >= " + lc.str() +
                 ": the whole Grassmannian is valid)"};
    return finish(out);
  }

  std::vector<BoundEntry> cand;
  {
    BoundEntry e;
    e.rule = "packing";
    e.value = packing_bound_multiple(n, k, t, lambda, q_, repeats);
    e.trace = {self + " <= floor(" + std::to_string(lambda) + "*[" + std::to_string(n) + " " +
               std::to_string(t) + "]/[" + std::to_string(k) + " " + std::to_string(t) +
               "]) = " + e.value.str() + " packing"};
    cand.push_back(std::move(e));
  }
  {
    BoundEntry inner = upper_rec(n - 1, k - 1, t - 1, lambda, repeats, depth + 1);
    BoundEntry e;
    e.rule = "johnson1";
    e.value = johnson_bound_1(n, k, t, lambda, q_, inner.value);
    e.trace = {self + " <= floor((q^" + std::to_string(n) + "-1)/(q^" + std::to_string(k) +
               "-1) * " + qty_str(repeats, q_, n - 1, k - 1, t - 1, lambda) +
               ") = " + e.value.str() + " johnson1"};
    e.trace.insert(e.trace.end(), inner.trace.begin(), inner.trace.end());
    cand.push_back(std::move(e));
  }
  if (BigInt(lambda) <= gaussian_binomial(n - 1 - t, k - t, q_)) {
    BoundEntry inner = upper_rec(n - 1, k, t, lambda, repeats, depth + 1);
    BoundEntry e;
    e.rule = "johnson2";
    e.value = johnson_bound_2(n, k, t, lambda, q_, inner.value);
    e.trace = {self + " <= floor((q^" + std::to_string(n) + "-1)/(q^" + std::to_string(n - k) +
               "-1) * " + qty_str(repeats, q_, n - 1, k, t, lambda) + ") = " + e.value.str() +
               " johnson2"};
    e.trace.insert(e.trace.end(), inner.trace.begin(), inner.trace.end());
    cand.push_back(std::move(e));
  }

  size_t best = 0;
  for (size_t i = 1; i < cand.size(); ++i)
    if (cand[i].value < cand[best].value) best = i;
  return finish(cand[best]);
}

BoundEntry BoundEngine::upper_multiple(int n, int k, int t, long long lambda, bool repeats) {
  return upper_rec(n, k, t, lambda, repeats, 0);
}

BoundEntry BoundEngine::upper_covering(int n, int k, int delta, long long alpha, bool repeats) {
  if (!(1 <= delta && delta <= n - k) || !(1 <= k && k < n))
    throw InvalidArgs("covering bound needs 0 < k < n and 1 <= delta <= n-k");
  if (alpha < 2) throw InvalidArgs("covering bound needs alpha >= 2 (alpha = 1 is degenerate)");
  if (store_) {
    StoreKey sk{repeats ? Quantity::Brep : Quantity::B, q_, n, k, delta, alpha};
    if (auto v = store_->exact(sk)) {
      BoundEntry out;
      out.rule = "exact";
      out.value = *v;
      out.trace = {(repeats ? std::string("B~") : std::string("B")) + "(" + std::to_string(q_) +
                   ";" + std::to_string(n) + "," + std::to_string(k) + "," +
                   std::to_string(delta) + ";" + std::to_string(alpha) + ") = " + v->str() +
                   " exact [" + store_->get(sk)->provenance + "]"};
      return out;
    }
  }
  BoundEntry inner = upper_rec(n, n - k, n - k - delta + 1, alpha - 1, repeats, 0);
  BoundEntry out;
  out.rule = "dual-" + inner.rule;
  out.value = inner.value;
  out.trace = {(repeats ? std::string("B~") : std::string("B")) + "(" + std::to_string(q_) + ";" +
               std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(delta) + ";" +
               std::to_string(alpha) + ") = " +
               qty_str(repeats, q_, n, n - k, n - k - delta + 1, alpha - 1) +
               " by orthogonal-complement duality"};
  out.trace.insert(out.trace.end(), inner.trace.begin(), inner.trace.end());
  return out;
}

std::optional<BoundEntry> BoundEngine::lower_multiple(int n, int k, int t, long long lambda,
                                                      bool repeats) {
  if (!(0 <= t && t <= k && k <= n)) throw InvalidArgs("bound range");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  const std::string self = qty_str(repeats, q_, n, k, t, lambda);
  std::optional<BoundEntry> best;
  auto offer = [&](BoundEntry e) {
    if (!best || e.value > best->value) best = std::move(e);
  };

  {
    BoundEntry e;
    e.rule = "trivial";
    e.value = 1;
    e.trace = {self + " >= 1 (a single codeword is always valid)"};
    offer(std::move(e));
  }
  if (store_) {
    StoreKey sk{repeats ? Quantity::Arep : Quantity::A, q_, n, k, t, lambda};
    if (auto entry = store_->get(sk); entry && entry->lower) {
      BoundEntry e;
      e.rule = "store";
      e.value = *entry->lower;
      e.trace = {self + " >= " + entry->lower->str() + " [" + entry->provenance + "]"};
      offer(std::move(e));
    }
    if (repeats) {
      // A simple code is in particular a multiset code.
      StoreKey sks{Quantity::A, q_, n, k, t, lambda};
      if (auto entry = store_->get(sks); entry && entry->lower) {
        BoundEntry e;
        e.rule = "store-simple";
        e.value = *entry->lower;
        e.trace = {self + " >= " + entry->lower->str() + " (simple-code record) [" +
                   entry->provenance + "]"};
        offer(std::move(e));
      }
    }
  }
  BigInt lc = lambda_complete(n, k, t, q_);
  if (!repeats && BigInt(lambda) >= lc) {
    BoundEntry e;
    e.rule = "complete";
    e.value = gaussian_binomial(n, k, q_);
    e.trace = {self + " = " + e.value.str() + " (whole Grassmannian valid at lambda >= " +
               lc.str() + ")"};
    offer(std::move(e));
  }
  if (repeats && lc <= lambda) {
    long long copies = lambda / static_cast<long long>(lc);
    if (copies >= 1) {
      BoundEntry e;
      e.rule = "complete";
      e.value = BigInt(copies) * gaussian_binomial(n, k, q_);
      e.trace = {self + " >= " + e.value.str() + " (" + std::to_string(copies) +
                 " copies of the whole Grassmannian)"};
      offer(std::move(e));
    }
  }
  if (repeats) {
    // Repeat scaling: gluing d copies of a valid lambda/d code multiplies both
    // the size and every t-subspace load by d.
    for (long long d = 2; d <= lambda; ++d) {
      if (lambda % d != 0) continue;
      auto inner_rep = lower_multiple(n, k, t, lambda / d, true);
      auto inner_simple = lower_multiple(n, k, t, lambda / d, false);
      for (const auto* inner : {&inner_rep, &inner_simple}) {
        if (!*inner) continue;
        BoundEntry e;
        e.rule = "scaling";
        e.value = BigInt(d) * (*inner)->value;
        e.trace = {self + " >= " + std::to_string(d) + " * " +
                   qty_str(false, q_, n, k, t, lambda / d) + " = " + e.value.str() +
                   " repeat scaling"};
        e.trace.insert(e.trace.end(), (*inner)->trace.begin(), (*inner)->trace.end());
        offer(std::move(e));
      }
    }
  }
  return best;
}

BoundTable BoundEngine::bound_table(int n, int k, int t, long long lambda_lo,
                                    long long lambda_hi, bool repeats) {
  if (lambda_lo < 1 || lambda_hi < lambda_lo) throw InvalidArgs("bad lambda range");
  if (!(1 <= t && t <= k && k <= n)) throw InvalidArgs("bound table range");
  BigInt lc = (t <= k) ? lambda_complete(n, k, t, q_) : BigInt(0);
  if (!repeats && BigInt(lambda_hi) > lc)
    throw InvalidArgs("lambda beyond the complete-Grassmannian point " + lc.str() +
                      " (simple codes)");
  BoundTable table;
  table.q = q_;
  table.n = n;
  table.k = k;
  table.t = t;
  table.repeats = repeats;
  for (long long l = lambda_lo; l <= lambda_hi; ++l) {
    BoundRow row;
    row.lambda = l;
    // Collect every applicable top-level rule, then let the engine pick the
    // chain for each inner value.
    if (store_) {
      StoreKey sk{repeats ? Quantity::Arep : Quantity::A, q_, n, k, t, l};
      if (auto v = store_->exact(sk)) {
        BoundEntry e;
        e.rule = "exact";
        e.value = *v;
        e.trace = {qty_str(repeats, q_, n, k, t, l) + " = " + v->str() + " exact [" +
                   store_->get(sk)->provenance + "]"};
        row.uppers.push_back(std::move(e));
      }
    }
    bool base = (t == 0 || t == k || k == n);
    if (!base && (repeats || BigInt(l) < lc)) {
      BoundEntry e;
      e.rule = "packing";
      e.value = packing_bound_multiple(n, k, t, l, q_, repeats);
      e.trace = {qty_str(repeats, q_, n, k, t, l) + " <= " + e.value.str() + " packing"};
      row.uppers.push_back(std::move(e));
      BoundEntry j1 = upper_rec(n - 1, k - 1, t - 1, l, repeats, 0);
      BoundEntry e1;
      e1.rule = "johnson1";
      e1.value = johnson_bound_1(n, k, t, l, q_, j1.value);
      e1.trace = {qty_str(repeats, q_, n, k, t, l) + " <= " + e1.value.str() + " johnson1"};
      e1.trace.insert(e1.trace.end(), j1.trace.begin(), j1.trace.end());
      row.uppers.push_back(std::move(e1));
      if (BigInt(l) <= gaussian_binomial(n - 1 - t, k - t, q_)) {
        BoundEntry j2 = upper_rec(n - 1, k, t, l, repeats, 0);
        BoundEntry e2;
        e2.rule = "johnson2";
        e2.value = johnson_bound_2(n, k, t, l, q_, j2.value);
        e2.trace = {qty_str(repeats, q_, n, k, t, l) + " <= " + e2.value.str() + " johnson2"};
        e2.trace.insert(e2.trace.end(), j2.trace.begin(), j2.trace.end());
        row.uppers.push_back(std::move(e2));
      }
    }
    if (row.uppers.empty()) {
      BoundEntry e = upper_rec(n, k, t, l, repeats, 0);
      row.uppers.push_back(std::move(e));
    }
    size_t bi = 0;
    for (size_t i = 1; i < row.uppers.size(); ++i)
      if (row.uppers[i].value < row.uppers[bi].value) bi = i;
    row.best_upper = row.uppers[bi].value;

    if (auto low = lower_multiple(n, k, t, l, repeats)) {
      row.lowers.push_back(*low);
      row.best_lower = low->value;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

IdentityReport identity_checks(int q, int n, int k, int t, long long lambda,
                               const ResultsStore& store) {
  if (!(1 <= t && t <= k && k <= n)) throw InvalidArgs("identity check range");
  if (lambda < 1) throw InvalidArgs("lambda must be >= 1");
  IdentityReport rep;
  rep.q = q;
  rep.n = n;
  rep.k = k;
  rep.t = t;
  rep.lambda = lambda;

  auto need = [&](Quantity qty, int nn, int kk, int tt, long long ll) {
    auto v = store.certified_exact(StoreKey{qty, q, nn, kk, tt, ll});
    if (!v)
      throw MissingExactValue("no certified exact value for " + quantity_name(qty) + "(" +
                              std::to_string(q) + ";" + std::to_string(nn) + "," +
                              std::to_string(kk) + "," + std::to_string(tt) + ";" +
                              std::to_string(ll) + ")");
    return *v;
  };

  // Self-duality of lambda = 1 packings under orthogonal complements.
  {
    IdentityOutcome oc;
    oc.name = "dual-lambda1";
    int td = n - 2 * k + t;
    if (lambda != 1) {
      oc.status = "skipped";
      oc.detail = "applies at lambda = 1 only";
    } else if (td < 1 || td > n - k) {
      oc.status = "skipped";
      oc.detail = "dual parameters out of range";
    } else {
      BigInt a = need(Quantity::A, n, k, t, 1);
      BigInt b = need(Quantity::A, n, n - k, td, 1);
      oc.status = (a == b) ? "holds" : "fails";
      oc.detail = a.str() + " vs " + b.str();
    }
    rep.outcomes.push_back(std::move(oc));
  }
  // Complement closure: packing at lambda and covering at lmax - lambda tile
  // the Grassmannian.
  {
    IdentityOutcome oc;
    oc.name = "complement-sum";
    BigInt lmax = lambda_complete(n, k, t, q);
    if (BigInt(lambda) > lmax) {
      oc.status = "skipped";
      oc.detail = "lambda beyond complete point";
    } else if (lmax - lambda > BigInt(std::numeric_limits<long long>::max())) {
      oc.status = "skipped";
      oc.detail = "complementary multiplicity too large to look up";
    } else {
      BigInt a = need(Quantity::A, n, k, t, lambda);
      BigInt rest = lmax - lambda;
      BigInt c = 0;
      if (rest > 0) c = need(Quantity::C, n, k, t, static_cast<long long>(rest));
      BigInt whole = gaussian_binomial(n, k, q);
      oc.status = (a + c == whole) ? "holds" : "fails";
      oc.detail = a.str() + " + " + c.str() + " vs [n k]_q = " + whole.str();
    }
    rep.outcomes.push_back(std::move(oc));
  }
  // Packing never beats covering at the same multiplicity; equality detects a
  // design.
  {
    IdentityOutcome oc;
    oc.name = "packing-vs-cover";
    BigInt a = need(Quantity::A, n, k, t, lambda);
    BigInt c = need(Quantity::C, n, k, t, lambda);
    oc.status = (a <= c) ? "holds" : "fails";
    oc.detail = a.str() + " <= " + c.str();
    if (a == c) rep.design_detected = true;
    rep.outcomes.push_back(std::move(oc));
  }
  // Complement inequality for 2k <= n.
  {
    IdentityOutcome oc;
    oc.name = "complement-ineq";
    int td = n - 2 * k + t;
    if (2 * k > n || td < 1) {
      oc.status = "skipped";
      oc.detail = "needs 2k <= n and positive dual t";
    } else {
      BigInt a = need(Quantity::A, n, k, t, lambda);
      BigInt b = need(Quantity::A, n, n - k, td, lambda);
      oc.status = (a <= b) ? "holds" : "fails";
      oc.detail = a.str() + " <= " + b.str();
    }
    rep.outcomes.push_back(std::move(oc));
  }
  return rep;
}

}  // namespace grasscov
