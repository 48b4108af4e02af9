#include "grasscov/gfq.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <utility>

namespace grasscov {

namespace detail {

struct FieldTables {
  int q = 0, p = 0, m = 0;
  std::vector<Fq> modulus;           // c0..cm, empty for prime fields
  std::vector<Fq> add_tab, mul_tab;  // q*q, row-major [a*q + b]
  std::vector<Fq> neg_tab, inv_tab;  // inv_tab[0] unused
  std::vector<int> log_tab;          // log_tab[0] = -1
  std::vector<Fq> exp_tab;           // size q-1, exp_tab[i] = gen^i
  Fq gen = 1;
};

namespace {

// Plain integer polynomial helpers over F_p, coefficients low to high.
using Poly = std::vector<int>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  poly_trim(r);
  return r;
}

// Remainder of a modulo monic b.
Poly poly_rem(Poly a, const Poly& b, int p) {
  poly_trim(a);
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    int c = a.back();
    for (int i = 0; i <= db; ++i) {
      int& t = a[shift + i];
      t = ((t - c * b[i]) % p + p) % p;
    }
    poly_trim(a);
  }
  return a;
}

bool poly_irreducible(const Poly& f, int p) {
  int m = static_cast<int>(f.size()) - 1;
  if (m < 1) return false;
  // Trial division by every monic polynomial of degree 1..m/2.
  for (int d = 1; 2 * d <= m; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long tail = 0; tail < count; ++tail) {
      Poly g(d + 1, 0);
      long long t = tail;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Fixed modulus per p^m: the monic irreducible of degree m over F_p whose
// coefficient encoding sum c_i p^i is smallest. This is part of the file
// format contract; do not change it.
Poly smallest_irreducible(int p, int m) {
  long long count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (long long tail = 0; tail < count; ++tail) {
    Poly f(m + 1, 0);
    long long t = tail;
    for (int i = 0; i < m; ++i) {
      f[i] = static_cast<int>(t % p);
      t /= p;
    }
    f[m] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found (unreachable)");
}

void digits_of(int e, int p, int m, Poly& out) {
  out.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    out[i] = e % p;
    e /= p;
  }
}

int encode(const Poly& a, int p, int m) {
  int e = 0, w = 1;
  for (int i = 0; i < m; ++i) {
    if (i < static_cast<int>(a.size())) e += a[i] * w;
    w *= p;
  }
  return e;
}

std::shared_ptr<const FieldTables> build_tables(int q) {
  if (q < 2 || q > 256) throw Unsupported("field size out of range [2,256]: " + std::to_string(q));
  int p = 0, m = 0;
  {
    int rest = q;
    for (int d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = rest;  // q prime
    m = 0;
    while (rest % p == 0) {
      rest /= p;
      ++m;
    }
    if (rest != 1)
      throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  }

  auto t = std::make_shared<FieldTables>();
  t->q = q;
  t->p = p;
  t->m = m;

  Poly mod;
  if (m > 1) {
    mod = smallest_irreducible(p, m);
    if (!poly_irreducible(mod, p))
      throw Error("modulus failed irreducibility check (unreachable)");
    t->modulus.assign(mod.begin(), mod.end());
  }

  t->add_tab.resize(static_cast<size_t>(q) * q);
  t->mul_tab.resize(static_cast<size_t>(q) * q);
  t->neg_tab.resize(q);
  t->inv_tab.assign(q, 0);

  if (m == 1) {
    for (int a = 0; a < q; ++a) {
      t->neg_tab[a] = static_cast<Fq>((q - a) % q);
      for (int b = 0; b < q; ++b) {
        t->add_tab[static_cast<size_t>(a) * q + b] = static_cast<Fq>((a + b) % q);
        t->mul_tab[static_cast<size_t>(a) * q + b] = static_cast<Fq>((a * b) % q);
      }
    }
  } else {
    Poly da, db;
    for (int a = 0; a < q; ++a) {
      digits_of(a, p, m, da);
      Poly na(m);
      for (int i = 0; i < m; ++i) na[i] = (p - da[i]) % p;
      t->neg_tab[a] = static_cast<Fq>(encode(na, p, m));
      for (int b = 0; b < q; ++b) {
        digits_of(b, p, m, db);
        Poly s(m);
        for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
        t->add_tab[static_cast<size_t>(a) * q + b] = static_cast<Fq>(encode(s, p, m));
        Poly prod = poly_rem(poly_mul(da, db, p), mod, p);
        t->mul_tab[static_cast<size_t>(a) * q + b] = static_cast<Fq>(encode(prod, p, m));
      }
    }
  }

  // Find the smallest multiplicative generator and lay out log/antilog.
  auto mul = [&](int a, int b) { return t->mul_tab[static_cast<size_t>(a) * q + b]; };
  int gen = 1;
  if (q > 2) {
    for (int g = 2; g < q; ++g) {
      int x = g, order = 1;
      while (x != 1) {
        x = mul(x, g);
        ++order;
      }
      if (order == q - 1) {
        gen = g;
        break;
      }
    }
    if (gen == 1) throw Error("no generator found (unreachable)");
  }
  t->gen = static_cast<Fq>(gen);
  t->exp_tab.resize(q - 1);
  t->log_tab.assign(q, -1);
  {
    int x = 1;
    for (int i = 0; i < q - 1; ++i) {
      t->exp_tab[i] = static_cast<Fq>(x);
      t->log_tab[x] = i;
      x = mul(x, gen);
    }
  }
  for (int a = 1; a < q; ++a) {
    int la = t->log_tab[a];
    t->inv_tab[a] = t->exp_tab[(q - 1 - la) % (q - 1)];
  }
  return t;
}

}  // namespace
}  // namespace detail

FieldCtx make_field(int q) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const detail::FieldTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, detail::build_tables(q)).first;
  return FieldCtx(it->second);
}

const detail::FieldTables& FieldCtx::tab() const {
  if (!t_) throw Error("use of default-constructed FieldCtx");
  return *t_;
}

int FieldCtx::q() const { return tab().q; }
int FieldCtx::p() const { return tab().p; }
int FieldCtx::m() const { return tab().m; }
const std::vector<Fq>& FieldCtx::modulus() const { return tab().modulus; }

Fq FieldCtx::add(Fq a, Fq b) const {
  const auto& t = tab();
  return t.add_tab[static_cast<size_t>(a) * t.q + b];
}
Fq FieldCtx::neg(Fq a) const { return tab().neg_tab[a]; }
Fq FieldCtx::sub(Fq a, Fq b) const { return add(a, neg(b)); }
Fq FieldCtx::mul(Fq a, Fq b) const {
  const auto& t = tab();
  return t.mul_tab[static_cast<size_t>(a) * t.q + b];
}
Fq FieldCtx::inv(Fq a) const {
  if (a == 0) throw InvalidArgs("inverse of zero");
  return tab().inv_tab[a];
}
Fq FieldCtx::div(Fq a, Fq b) const { return mul(a, inv(b)); }

Fq FieldCtx::pow(Fq a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw InvalidArgs("negative power of zero");
    return 0;
  }
  const auto& t = tab();
  long long ord = t.q - 1;
  long long r = ((e % ord) + ord) % ord;
  long long le = (static_cast<long long>(t.log_tab[a]) * r) % ord;
  return t.exp_tab[le];
}

Fq FieldCtx::generator() const { return tab().gen; }
int FieldCtx::log(Fq a) const {
  if (a == 0) throw InvalidArgs("log of zero");
  return tab().log_tab[a];
}
Fq FieldCtx::antilog(long long e) const {
  const auto& t = tab();
  long long ord = t.q - 1;
  return t.exp_tab[((e % ord) + ord) % ord];
}

bool FieldCtx::operator==(const FieldCtx& other) const {
  if (!t_ || !other.t_) return t_ == other.t_;
  return t_->q == other.t_->q;
}

MatrixFq::MatrixFq(FieldCtx ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix shape");
}

MatrixFq::MatrixFq(FieldCtx ctx, int rows, int cols, std::vector<Fq> entries)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix shape");
  if (e_.size() != static_cast<size_t>(rows) * cols)
    throw DimensionMismatch("entry count does not match shape");
  for (Fq v : e_)
    if (!ctx_.valid_element(v)) throw InvalidArgs("matrix entry out of field range");
}

MatrixFq MatrixFq::identity(FieldCtx ctx, int n) {
  MatrixFq m(std::move(ctx), n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool MatrixFq::operator==(const MatrixFq& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && e_ == other.e_ &&
         (rows_ == 0 || cols_ == 0 || ctx_ == other.ctx_);
}

RrefResult rref(const MatrixFq& m) {
  const FieldCtx& f = m.ctx();
  MatrixFq a = m;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < a.rows(); ++i) {
      if (a.at(i, c) != 0) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < a.cols(); ++j) {
        Fq t = a.at(r, j);
        a.set(r, j, a.at(pr, j));
        a.set(pr, j, t);
      }
    Fq s = f.inv(a.at(r, c));
    if (s != 1)
      for (int j = c; j < a.cols(); ++j) a.set(r, j, f.mul(a.at(r, j), s));
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      Fq v = a.at(i, c);
      if (v == 0) continue;
      for (int j = c; j < a.cols(); ++j)
        a.set(i, j, f.sub(a.at(i, j), f.mul(v, a.at(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

int rank_of(const MatrixFq& m) { return rref(m).rank; }

MatrixFq transpose(const MatrixFq& m) {
  MatrixFq t(m.ctx(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.set(j, i, m.at(i, j));
  return t;
}

MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul shape mismatch");
  const FieldCtx& f = a.ctx();
  if (b.rows() > 0 && b.cols() > 0 && a.rows() > 0 && f != b.ctx())
    throw DimensionMismatch("mat_mul field mismatch");
  MatrixFq c(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      Fq v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        c.set(i, j, f.add(c.at(i, j), f.mul(v, b.at(k, j))));
    }
  return c;
}

MatrixFq stack_rows(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("stack_rows width mismatch");
  std::vector<Fq> e;
  e.reserve(a.entries().size() + b.entries().size());
  e.insert(e.end(), a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return MatrixFq(a.rows() > 0 ? a.ctx() : b.ctx(), a.rows() + b.rows(), a.cols(), std::move(e));
}

MatrixFq sum_space(const MatrixFq& a, const MatrixFq& b) {
  RrefResult r = rref(stack_rows(a, b));
  std::vector<Fq> e(r.mat.entries().begin(),
                    r.mat.entries().begin() + static_cast<size_t>(r.rank) * r.mat.cols());
  return MatrixFq(r.mat.ctx(), r.rank, r.mat.cols(), std::move(e));
}

int intersect_dim(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("intersect_dim width mismatch");
  int ra = rank_of(a), rb = rank_of(b);
  int rs = rank_of(stack_rows(a, b));
  return ra + rb - rs;
}

MatrixFq null_space(const MatrixFq& m) {
  RrefResult r = rref(m);
  const FieldCtx& f = m.ctx();
  int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivots) is_pivot[c] = true;
  MatrixFq basis(f, n - r.rank, n);
  int row = 0;
  for (int fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    basis.set(row, fc, 1);
    for (int i = 0; i < r.rank; ++i)
      basis.set(row, r.pivots[i], f.neg(r.mat.at(i, fc)));
    ++row;
  }
  // Canonicalize: the free-column basis is a basis, but not RREF in general.
  RrefResult canon = rref(basis);
  return canon.mat;
}

PackedMatF2::PackedMatF2(int rows_, int cols_) : rows(rows_), cols(cols_), bits(rows_, 0) {
  if (cols_ < 0 || cols_ > 64) throw DimensionMismatch("packed matrix needs 0 <= cols <= 64");
  if (rows_ < 0) throw DimensionMismatch("negative row count");
}

PackedMatF2 PackedMatF2::from_matrix(const MatrixFq& m) {
  if (m.rows() > 0 && m.cols() > 0 && m.ctx().q() != 2)
    throw InvalidArgs("packed matrices are F_2 only");
  PackedMatF2 p(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) p.bits[i] |= (std::uint64_t{1} << j);
  return p;
}

MatrixFq PackedMatF2::to_matrix(FieldCtx f2) const {
  MatrixFq m(std::move(f2), rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (bits[i] >> j & 1) m.set(i, j, 1);
  return m;
}

PackedRrefResult rref(const PackedMatF2& m) {
  PackedMatF2 a = m;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    std::uint64_t mask = std::uint64_t{1} << c;
    int pr = -1;
    for (int i = r; i < a.rows; ++i) {
      if (a.bits[i] & mask) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(a.bits[r], a.bits[pr]);
    for (int i = 0; i < a.rows; ++i)
      if (i != r && (a.bits[i] & mask)) a.bits[i] ^= a.bits[r];
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

SpanAcc::SpanAcc(FieldCtx ctx, int cols) : ctx_(std::move(ctx)), cols_(cols) {
  packed_ = (ctx_.q() == 2 && cols <= 64);
  if (packed_) basis_bits_.assign(static_cast<size_t>(cols), 0);
}

bool SpanAcc::add_row(std::span<const Fq> row) {
  if (static_cast<int>(row.size()) != cols_) throw DimensionMismatch("span row width mismatch");
  if (packed_) {
    std::uint64_t w = 0;
    for (int j = 0; j < cols_; ++j)
      if (row[j]) w |= (std::uint64_t{1} << j);
    while (w) {
      int c = std::countr_zero(w);
      if (basis_bits_[c]) {
        w ^= basis_bits_[c];
      } else {
        basis_bits_[c] = w;
        ++rank_;
        return true;
      }
    }
    return false;
  }
  std::vector<Fq> t(row.begin(), row.end());
  for (size_t i = 0; i < basis_rows_.size(); ++i) {
    Fq v = t[basis_pivots_[i]];
    if (v == 0) continue;
    const auto& br = basis_rows_[i];
    for (int j = 0; j < cols_; ++j) t[j] = ctx_.sub(t[j], ctx_.mul(v, br[j]));
  }
  int c = -1;
  for (int j = 0; j < cols_; ++j) {
    if (t[j] != 0) {
      c = j;
      break;
    }
  }
  if (c < 0) return false;
  Fq s = ctx_.inv(t[c]);
  if (s != 1)
    for (int j = 0; j < cols_; ++j) t[j] = ctx_.mul(t[j], s);
  auto pos = std::lower_bound(basis_pivots_.begin(), basis_pivots_.end(), c);
  size_t idx = static_cast<size_t>(pos - basis_pivots_.begin());
  basis_pivots_.insert(pos, c);
  basis_rows_.insert(basis_rows_.begin() + idx, std::move(t));
  ++rank_;
  return true;
}

void SpanAcc::add_matrix(const MatrixFq& m) {
  for (int i = 0; i < m.rows(); ++i) add_row(m.row(i));
}

}  // namespace grasscov
