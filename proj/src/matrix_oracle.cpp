#include "strata_kit/matrix_oracle.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace sk {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

TameElement one(const FieldPtr& base, long long prec) { return TameElement::monomial(base, 1, 0, prec); }

void axpy(Vec* h, const TameElement& m, const Vec& g) {
  for (std::size_t r = 0; r < h->size(); ++r)
    if (!g[r].is_zero()) (*h)[r] = (*h)[r] - m * g[r];
}

bool vec_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const TameElement& x) { return x.is_zero(); });
}

// coordinates of k_E over k_F in the basis zeta^a
using CoordTable = std::vector<std::vector<std::uint32_t>>;

const CoordTable& coord_table(const FieldPtr& e) {
  static std::mutex mu;
  static std::unordered_map<const TameField*, std::pair<FieldPtr, std::unique_ptr<CoordTable>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(e.get());
  if (it != cache.end()) return *it->second.second;
  FieldPtr root = root_field(e);
  const FqField& kf = root->k();
  const FqField& ke = e->k();
  int f = e->f_abs();
  if (ke.size() > (1u << 20)) throw Error("residue_field_too_large", "matrix_oracle.field_coords");
  auto tab = std::make_unique<CoordTable>(ke.size());
  std::vector<std::uint32_t> zeta(static_cast<std::size_t>(f));
  for (int a = 0; a < f; ++a) zeta[static_cast<std::size_t>(a)] = ke.pow(ke.generator(), a);
  std::vector<std::uint32_t> tuple(static_cast<std::size_t>(f), 0);
  std::uint32_t q = kf.size();
  while (true) {
    std::uint32_t x = 0;
    for (int a = 0; a < f; ++a)
      x = ke.add(x, ke.mul(e->embed_from(*root, tuple[static_cast<std::size_t>(a)]), zeta[static_cast<std::size_t>(a)]));
    (*tab)[x] = tuple;
    int a = 0;
    while (a < f && ++tuple[static_cast<std::size_t>(a)] == q) tuple[static_cast<std::size_t>(a++)] = 0;
    if (a == f) break;
  }
  const CoordTable& ref = *tab;
  cache.emplace(e.get(), std::make_pair(e, std::move(tab)));
  return ref;
}

bool integral(const Mat& x) {
  for (const auto& v : x.a) {
    if (v.is_zero()) {
      if (v.prec() <= 0) throw PrecisionError("integrality_undecided", "matrix_oracle");
      continue;
    }
    if (v.val() < 0) return false;
  }
  return true;
}

}  // namespace

FieldPtr root_field(const FieldPtr& e) {
  FieldPtr f = e;
  while (f->parent()) f = f->parent();
  return f;
}

Mat mat_zero(const FieldPtr& base, int n, long long prec) {
  Mat m;
  m.n = n;
  m.base = base;
  m.a.assign(static_cast<std::size_t>(n * n), TameElement(base, prec));
  return m;
}

Mat mat_identity(const FieldPtr& base, int n, long long prec) {
  Mat m = mat_zero(base, n, prec);
  for (int i = 0; i < n; ++i) m.at(i, i) = one(base, prec);
  return m;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
  return m;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw Error("size_mismatch", "matrix_oracle.mul");
  long long prec = kOraclePrec;
  if (!x.a.empty()) prec = x.a[0].prec();
  Mat m = mat_zero(x.base, x.n, prec);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      TameElement acc;
      bool first = true;
      for (int k = 0; k < x.n; ++k) {
        TameElement p = x.at(i, k) * y.at(k, j);
        acc = first ? p : acc + p;
        first = false;
      }
      m.at(i, j) = acc;
    }
  return m;
}

Mat mat_inverse(const Mat& x) {
  int n = x.n;
  Mat a = x;
  Mat inv = mat_identity(x.base, n, x.a.empty() ? kOraclePrec : x.a[0].prec());
  for (int col = 0; col < n; ++col) {
    int best = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero() && (best < 0 || a.at(r, col).val() < a.at(best, col).val())) best = r;
    if (best < 0) throw PrecisionError("singular_to_precision", "matrix_oracle.inverse");
    if (best != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(best, j), a.at(col, j));
        std::swap(inv.at(best, j), inv.at(col, j));
      }
    TameElement pinv = a.at(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) * pinv;
      inv.at(col, j) = inv.at(col, j) * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      TameElement m = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = a.at(r, j) - m * a.at(col, j);
        inv.at(r, j) = inv.at(r, j) - m * inv.at(col, j);
      }
    }
  }
  return inv;
}

TameElement trace(const Mat& x) {
  TameElement acc = x.at(0, 0);
  for (int i = 1; i < x.n; ++i) acc = acc + x.at(i, i);
  return acc;
}

bool mat_equal(const Mat& x, const Mat& y) {
  if (x.n != y.n) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!x.a[i].same_digits(y.a[i])) return false;
  return true;
}

Vec mat_to_vec(const Mat& x) { return x.a; }

Mat vec_to_mat(const Vec& v, int n) {
  Mat m;
  m.n = n;
  m.base = v.front().field();
  m.a = v;
  return m;
}

Vec field_coords(const TameElement& x, long long prec) {
  const FieldPtr& e = x.field();
  FieldPtr root = root_field(e);
  int f = e->f_abs(), ee = e->e_abs();
  const FqField& ke = e->k();
  const CoordTable& tab = coord_table(e);
  std::vector<std::map<long long, std::uint32_t>> digits(static_cast<std::size_t>(f * ee));
  std::uint32_t zinv = ke.inv(e->z_const());
  for (const auto& [w, a] : x.digits()) {
    long long m = floor_div(w, ee);
    long long b = w - m * ee;
    std::uint32_t y = ke.mul(a, m >= 0 ? ke.pow(zinv, m) : ke.pow(e->z_const(), -m));
    const auto& c = tab[y];
    for (int i = 0; i < f; ++i)
      if (c[static_cast<std::size_t>(i)] != 0) digits[static_cast<std::size_t>(b * f + i)][m] = c[static_cast<std::size_t>(i)];
  }
  Vec out;
  for (int b = 0; b < ee; ++b)
    for (int i = 0; i < f; ++i) {
      long long p = std::min(prec, ceil_div(x.prec() - b, ee));
      out.push_back(TameElement::from_digits(root, digits[static_cast<std::size_t>(b * f + i)], p));
    }
  return out;
}

Mat regular_rep(const TameElement& beta, long long prec) {
  const FieldPtr& e = beta.field();
  int f = e->f_abs(), ee = e->e_abs(), n = f * ee;
  FieldPtr root = root_field(e);
  std::uint32_t g = e->k().generator();
  Mat m = mat_zero(root, n, prec);
  for (int b = 0; b < ee; ++b)
    for (int a = 0; a < f; ++a) {
      TameElement basis = TameElement::monomial(e, e->k().pow(g, a), b, beta.prec() + b);
      Vec col = field_coords(beta * basis, prec);
      for (int r = 0; r < n; ++r) m.at(r, b * f + a) = col[static_cast<std::size_t>(r)];
    }
  return m;
}

Lattice make_lattice(const FieldPtr& base, int dim, std::vector<Vec> gens) {
  Lattice l;
  l.dim = dim;
  l.base = base;
  gens.erase(std::remove_if(gens.begin(), gens.end(), vec_zero), gens.end());
  for (int i = 0; i < dim && !gens.empty(); ++i) {
    std::size_t ri = static_cast<std::size_t>(i);
    int best = -1;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (!gens[k][ri].is_zero() && (best < 0 || gens[k][ri].val() < gens[static_cast<std::size_t>(best)][ri].val()))
        best = static_cast<int>(k);
    if (best < 0) continue;
    Vec g = gens[static_cast<std::size_t>(best)];
    gens.erase(gens.begin() + best);
    for (auto& h : gens)
      if (!h[ri].is_zero()) axpy(&h, h[ri] / g[ri], g);
    gens.erase(std::remove_if(gens.begin(), gens.end(), vec_zero), gens.end());
    long long k = g[ri].val();
    TameElement u = g[ri].shift(-k).inverse();
    for (auto& x : g) x = x * u;
    g[ri] = TameElement::monomial(base, 1, k, g[ri].prec());
    l.basis.push_back(g);
    l.pivot_rows.push_back(i);
    l.pivots.push_back(k);
  }
  // reduce entries below each pivot modulo the later pivots
  for (std::size_t c = 0; c < l.basis.size(); ++c)
    for (std::size_t d = c + 1; d < l.basis.size(); ++d) {
      std::size_t rj = static_cast<std::size_t>(l.pivot_rows[d]);
      long long kj = l.pivots[d];
      TameElement& x = l.basis[c][rj];
      if (x.is_zero()) continue;
      if (x.prec() < kj) throw PrecisionError("lattice_precision", "matrix_oracle.make_lattice");
      std::map<long long, std::uint32_t> high;
      for (const auto& [v, a] : x.digits())
        if (v >= kj) high[v - kj] = a;
      if (high.empty()) continue;
      TameElement qv = TameElement::from_digits(base, high, x.prec() - kj);
      axpy(&l.basis[c], qv, l.basis[d]);
    }
  return l;
}

bool lattice_contains(const Lattice& l, const Vec& v0) {
  Vec v = v0;
  for (std::size_t i = 0; i < l.basis.size(); ++i) {
    std::size_t r = static_cast<std::size_t>(l.pivot_rows[i]);
    const TameElement& x = v[r];
    if (x.is_zero()) {
      if (x.prec() < l.pivots[i]) throw PrecisionError("membership_undecided", "matrix_oracle.lattice_contains");
      continue;
    }
    if (x.val() < l.pivots[i]) return false;
    axpy(&v, x.shift(-l.pivots[i]), l.basis[i]);
  }
  return vec_zero(v);
}

bool lattice_subset(const Lattice& a, const Lattice& b) {
  return std::all_of(a.basis.begin(), a.basis.end(), [&](const Vec& v) { return lattice_contains(b, v); });
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
  return a.dim == b.dim && a.pivot_rows == b.pivot_rows && a.pivots == b.pivots && lattice_subset(a, b) &&
         lattice_subset(b, a);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  std::vector<Vec> g = a.basis;
  g.insert(g.end(), b.basis.begin(), b.basis.end());
  return make_lattice(a.base, a.dim, g);
}

namespace {

Lattice dual(const Lattice& l) {
  if (l.rank() != l.dim) throw Error("lattice_not_full_rank", "matrix_oracle.dual");
  Mat b;
  b.n = l.dim;
  b.base = l.base;
  b.a.resize(static_cast<std::size_t>(l.dim * l.dim));
  for (int j = 0; j < l.dim; ++j)
    for (int i = 0; i < l.dim; ++i) b.at(i, j) = l.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  Mat inv = mat_inverse(b);
  std::vector<Vec> gens;
  for (int i = 0; i < l.dim; ++i) {
    Vec row;
    for (int j = 0; j < l.dim; ++j) row.push_back(inv.at(i, j));
    gens.push_back(row);
  }
  return make_lattice(l.base, l.dim, gens);
}

}  // namespace

Lattice lattice_intersect(const Lattice& a, const Lattice& b) { return dual(lattice_sum(dual(a), dual(b))); }

long long lattice_index(const Lattice& l1, const Lattice& l2) {
  if (l1.dim != l2.dim || l1.pivot_rows != l2.pivot_rows) throw Error("infinite_index", "matrix_oracle.lattice_index");
  if (!lattice_subset(l2, l1)) throw Error("non_inclusion", "matrix_oracle.lattice_index");
  long long k = 0;
  for (std::size_t i = 0; i < l1.pivots.size(); ++i) k += l2.pivots[i] - l1.pivots[i];
  return k;
}

std::string dump(const Lattice& l) {
  std::ostringstream os;
  os << "rank " << l.rank() << " dim " << l.dim << "\n";
  for (std::size_t i = 0; i < l.basis.size(); ++i) {
    os << "  [" << l.pivot_rows[i] << ": t^" << l.pivots[i] << "]";
    for (const auto& x : l.basis[i]) {
      os << " {";
      bool first = true;
      for (const auto& [v, a] : x.digits()) {
        os << (first ? "" : ",") << v << ":" << a;
        first = false;
      }
      os << "}";
    }
    os << "\n";
  }
  return os.str();
}

Mat LatticeChain::basis(long long j) const {
  long long pw = static_cast<long long>(e) * prec + std::max(0LL, j) + e;
  return regular_rep(TameElement::monomial(field, 1, j, pw), prec + std::max(0LL, floor_div(j, e)));
}

LatticeChain chain_from_field(const FieldPtr& e, long long prec, int cap) {
  if (e->degree() > cap) throw Error("cap_exceeded", "matrix_oracle.chain_from_field");
  LatticeChain ch;
  ch.field = e;
  ch.e = e->e_abs();
  ch.n = e->degree();
  ch.prec = prec;
  FieldPtr root = root_field(e);
  auto lat = [&](long long j) {
    Mat m = ch.basis(j);
    std::vector<Vec> cols;
    for (int c = 0; c < m.n; ++c) {
      Vec v;
      for (int r = 0; r < m.n; ++r) v.push_back(m.at(r, c));
      cols.push_back(v);
    }
    return make_lattice(root, m.n, cols);
  };
  for (int j = 0; j <= ch.e; ++j) {
    Lattice l = lat(j);
    if (j > 0) {
      const Lattice& prev = ch.period.back();
      if (!lattice_subset(l, prev) || lattice_equal(l, prev)) throw Error("chain_not_strict", "matrix_oracle.chain_from_field");
    }
    if (j < ch.e) ch.period.push_back(l);
    else {
      std::vector<Vec> shifted;
      for (const auto& v : ch.period.front().basis) {
        Vec w;
        for (const auto& x : v) w.push_back(x.shift(1));
        shifted.push_back(w);
      }
      if (!lattice_equal(l, make_lattice(root, ch.n, shifted))) throw Error("chain_not_periodic", "matrix_oracle.chain_from_field");
    }
  }
  return ch;
}

Lattice hom_lattice(const LatticeChain& chain, long long j, long long k) {
  Mat mj = chain.basis(j), mk = chain.basis(k);
  Mat inv = mat_inverse(mj);
  int n = chain.n;
  std::vector<Vec> gens;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Vec g;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g.push_back(mk.at(r, u) * inv.at(v, c));
      gens.push_back(g);
    }
  return make_lattice(root_field(chain.field), n * n, gens);
}

Lattice filt_lattice(const LatticeChain& chain, long long n) {
  Lattice acc = hom_lattice(chain, 0, n);
  for (int j = 1; j < chain.e; ++j) acc = lattice_intersect(acc, hom_lattice(chain, j, j + n));
  return acc;
}

Lattice depth_lattice(const LatticeChain& chain, const FiltDepth& d) {
  if (d.normalizer) throw Error("normalizer_not_a_lattice", "matrix_oracle.depth_lattice");
  auto target = [&](long long j) {
    Rational x = Rational(j) + d.value * static_cast<long long>(chain.e);
    long long fl = floor_div(x.numerator(), x.denominator());
    if (d.plus) return fl + 1;
    return x.denominator() == 1 ? fl : fl + 1;
  };
  Lattice acc = hom_lattice(chain, 0, target(0));
  for (int j = 1; j < chain.e; ++j) acc = lattice_intersect(acc, hom_lattice(chain, j, target(j)));
  return acc;
}

long long v_A_direct(const Mat& a, const LatticeChain& chain) {
  long long m = 0;
  bool any = false;
  for (const auto& x : a.a)
    if (!x.is_zero()) {
      m = any ? std::min(m, x.val()) : x.val();
      any = true;
    }
  if (!any) throw Error("zero_matrix", "matrix_oracle.v_A_direct");
  auto ok = [&](long long n) {
    for (int j = 0; j < chain.e; ++j)
      if (!integral(mat_inverse(chain.basis(j + n)) * a * chain.basis(j))) return false;
    return true;
  };
  long long n = static_cast<long long>(chain.e) * (m - 1);
  if (!ok(n)) throw Error("scan_start_failed", "matrix_oracle.v_A_direct");
  long long limit = n + 3LL * chain.e + 1;
  while (n < limit && ok(n + 1)) ++n;
  if (n == limit) throw PrecisionError("scan_unbounded", "matrix_oracle.v_A_direct");
  return n;
}

bool in_order(const Mat& a, const LatticeChain& chain) {
  bool zero = std::all_of(a.a.begin(), a.a.end(), [](const TameElement& x) { return x.is_zero(); });
  return zero || v_A_direct(a, chain) >= 0;
}

Lattice intersect_with_centralizer(const Lattice& lat, const Subfield& e_prime, long long prec) {
  if (e_prime.degree == 1) return lat;
  int n = static_cast<int>(e_prime.ambient->degree());
  if (lat.dim != n * n) throw Error("size_mismatch", "matrix_oracle.intersect_with_centralizer");
  std::vector<Mat> reps;
  for (const auto& g : e_prime.generators) reps.push_back(regular_rep(g, prec));
  std::size_t k = lat.basis.size();
  std::vector<Vec> cols(k);
  for (std::size_t i = 0; i < k; ++i) {
    Mat a = vec_to_mat(lat.basis[i], n);
    for (const auto& r : reps) {
      Mat c = a * r - r * a;
      cols[i].insert(cols[i].end(), c.a.begin(), c.a.end());
    }
  }
  std::vector<Vec> u(k, Vec(k, TameElement(lat.base, prec)));
  for (std::size_t i = 0; i < k; ++i) u[i][i] = one(lat.base, prec);
  std::vector<bool> active(k, true);
  std::size_t rows = cols.empty() ? 0 : cols[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    int best = -1;
    for (std::size_t c = 0; c < k; ++c)
      if (active[c] && !cols[c][r].is_zero() &&
          (best < 0 || cols[c][r].val() < cols[static_cast<std::size_t>(best)][r].val()))
        best = static_cast<int>(c);
    if (best < 0) continue;
    std::size_t b = static_cast<std::size_t>(best);
    for (std::size_t c = 0; c < k; ++c) {
      if (c == b || !active[c] || cols[c][r].is_zero()) continue;
      TameElement m = cols[c][r] / cols[b][r];
      axpy(&cols[c], m, cols[b]);
      axpy(&u[c], m, u[b]);
    }
    active[b] = false;
  }
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < k; ++c) {
    if (!active[c]) continue;
    if (!vec_zero(cols[c])) throw PrecisionError("kernel_residue", "matrix_oracle.intersect_with_centralizer");
    Vec v(static_cast<std::size_t>(lat.dim), TameElement(lat.base, prec));
    for (std::size_t i = 0; i < k; ++i)
      if (!u[c][i].is_zero()) axpy(&v, -u[c][i], lat.basis[i]);
    gens.push_back(v);
  }
  return make_lattice(lat.base, lat.dim, gens);
}

Lattice presentation_lattice(const LatticeChain& chain, const GroupPresentation& g, const std::vector<Subfield>& levels) {
  const char* where = "matrix_oracle.presentation_lattice";
  if (g.N != chain.n || g.e_A != chain.e) throw Error("oracle_shape", where);
  if (levels.size() != g.level_degrees.size()) throw Error("level_count", where);
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i].degree != g.level_degrees[i] || levels[i].ambient != chain.field) throw Error("level_field", where);
  std::optional<Lattice> acc;
  for (const auto& [lvl, d] : g.normal_form) {
    if (d.normalizer) continue;
    Lattice l = intersect_with_centralizer(depth_lattice(chain, d), levels[static_cast<std::size_t>(lvl)], chain.prec);
    acc = acc ? lattice_sum(*acc, l) : l;
  }
  if (!acc) throw Error("empty_presentation", where);
  return *acc;
}

long long eval_psi_c(const Mat& c, const Mat& y) {
  TameElement tr = trace(c * y);
  if (tr.prec() <= 0) throw PrecisionError("psi_undecided", "matrix_oracle.eval_psi_c");
  const FqField& k = c.base->k();
  std::uint32_t a = tr.digit(0);
  std::uint32_t s = 0;
  for (int i = 0; i < k.f(); ++i) s = k.add(s, k.frobenius(a, i));
  return static_cast<long long>(s);
}

std::optional<Mat> psi_witness(const Mat& c, const Mat& c2, const Lattice& window) {
  Mat diff = c - c2;
  const FqField& k = c.base->k();
  int n = c.n;
  for (const auto& b : window.basis) {
    Mat bm = vec_to_mat(b, n);
    TameElement w = trace(diff * bm);
    if (w.prec() <= 0) throw PrecisionError("psi_undecided", "matrix_oracle.psi_witness");
    for (const auto& [v, a] : w.digits()) {
      if (v > 0) break;
      for (int i = 0; i < k.f(); ++i) {
        std::uint32_t s = k.pow(k.generator(), i);
        std::uint32_t tr = 0;
        std::uint32_t sa = k.mul(s, a);
        for (int j = 0; j < k.f(); ++j) tr = k.add(tr, k.frobenius(sa, j));
        if (tr == 0) continue;
        TameElement scal = TameElement::monomial(c.base, s, -v, kOraclePrec - v);
        Mat y = bm;
        for (auto& x : y.a) x = x * scal;
        if (eval_psi_c(c, y) != eval_psi_c(c2, y)) return y;
      }
    }
  }
  return std::nullopt;
}

}  // namespace sk
