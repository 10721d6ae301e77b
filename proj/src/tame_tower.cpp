#include "strata_kit/tame_tower.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>

#include "strata_kit/errors.hpp"

namespace sk {

namespace {

// Residue fields are shared between towers; the registry only grows.
FqFieldPtr residue_field(int p, int f) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FqFieldPtr> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto it = reg.find({p, f});
  if (it != reg.end()) return it->second;
  FqFieldPtr k = FqField::make(p, f);
  reg.emplace(std::make_pair(p, f), k);
  return k;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

FieldPtr TameField::base(int q) {
  int p = 0;
  int f0 = 0;
  for (int c = 2; c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      break;
    }
  }
  if (q < 2 || !is_prime(p)) throw Error("invalid_q", "tame_tower.base_field");
  long long v = q;
  while (v % p == 0) {
    v /= p;
    ++f0;
  }
  if (v != 1) throw Error("invalid_q", "tame_tower.base_field");
  std::shared_ptr<TameField> n(new TameField());
  n->p_ = p;
  n->q_ = q;
  n->f0_ = f0;
  n->residue_ = residue_field(p, f0);
  return n;
}

FieldPtr TameField::extend(const FieldPtr& parent, int f_rel, int e_rel, std::uint32_t twist) {
  if (!parent) throw Error("missing_parent", "tame_tower.extend");
  if (f_rel < 1 || e_rel < 1) throw Error("degree_below_one", "tame_tower.extend");
  if (e_rel % parent->p_ == 0) throw Error("wild_ramification", "tame_tower.extend");
  std::shared_ptr<TameField> n(new TameField());
  n->parent_ = parent;
  n->level_ = parent->level_ + 1;
  n->f_rel_ = f_rel;
  n->e_rel_ = e_rel;
  n->p_ = parent->p_;
  n->q_ = parent->q_;
  n->f0_ = parent->f0_;
  n->f_abs_ = parent->f_abs_ * f_rel;
  n->e_abs_ = parent->e_abs_ * e_rel;
  long long size = ipow(n->p_, n->f0_ * n->f_abs_);
  if (size > static_cast<long long>(kFieldCap)) throw Error("size_cap_exceeded", "tame_tower.extend");
  n->residue_ = residue_field(n->p_, n->f0_ * n->f_abs_);
  if (twist == 0 || twist >= n->residue_->size()) throw Error("twist_not_in_residue_field", "tame_tower.extend");
  n->twist_ = twist;
  n->parent_exp_ = parent->residue_->embedding_exponent(*n->residue_);
  const FqField& k = *n->residue_;
  std::uint32_t zp = parent->residue_->embed_with(parent->z_, n->parent_exp_, k);
  n->z_ = k.mul(zp, k.pow(twist, parent->e_abs_));
  return n;
}

std::vector<const TameField*> TameField::path() const {
  std::vector<const TameField*> out;
  for (const TameField* n = this; n; n = n->parent_.get()) out.push_back(n);
  std::reverse(out.begin(), out.end());
  return out;
}

bool TameField::is_ancestor_of(const TameField& other) const {
  for (const TameField* n = &other; n; n = n->parent_.get())
    if (n == this) return true;
  return false;
}

std::uint32_t TameField::embed_from(const TameField& ancestor, std::uint32_t a) const {
  if (&ancestor == this) return a;
  if (!parent_) throw Error("not_a_descendant", "tame_tower.embed_from");
  std::uint32_t up = parent_->embed_from(ancestor, a);
  return parent_->residue_->embed_with(up, parent_exp_, *residue_);
}

namespace {

// all x in k with x^e = c, ascending packed order
std::vector<std::uint32_t> roots_of(const FqField& k, int e, std::uint32_t c) {
  std::vector<std::uint32_t> out;
  if (c == 0) return out;
  long long n = k.order();
  long long g = std::gcd(static_cast<long long>(e), n);
  long long lc = k.log(c);
  if (lc % g != 0) return out;
  // e x = lc mod n
  long long ng = n / g;
  long long eg = (e / g) % ng;
  long long inv = 1;
  if (ng > 1) {
    // extended Euclid
    long long a = eg, b = ng, x0 = 1, x1 = 0;
    while (b) {
      long long qq = a / b;
      std::tie(a, b) = std::make_pair(b, a - qq * b);
      std::tie(x0, x1) = std::make_pair(x1, x0 - qq * x1);
    }
    inv = ((x0 % ng) + ng) % ng;
  }
  long long x = ng > 1 ? ((lc / g) % ng) * inv % ng : 0;
  for (long long i = 0; i < g; ++i) out.push_back(k.exp(x + i * ng));
  std::sort(out.begin(), out.end());
  return out;
}

// enumerate embeddings of src into a node whose residue field is kl
bool enumerate(const TameField& src, const FieldPtr& target, std::vector<Embedding>* out) {
  const FqField& kl = target->k();
  std::vector<const TameField*> lv = src.path();
  long long q = src.q();
  for (int j = 0; j < src.f_abs(); ++j) {
    long long qj = ipow(q, j);
    // depth-first over per-level root choices
    std::vector<std::uint32_t> xi = {1};
    std::vector<int> choice;
    bool ok = true;
    std::function<void(std::size_t)> rec = [&](std::size_t lvl) {
      if (!ok) return;
      if (lvl == lv.size()) {
        Embedding e;
        e.frob_exp = j;
        e.root_choice = choice;
        e.xi = xi;
        out->push_back(e);
        return;
      }
      const TameField* node = lv[lvl];
      std::uint32_t z = target->embed_from(*node, node->twist());
      std::uint32_t c = kl.mul(xi.back(), kl.div(z, kl.pow(z, qj)));
      std::vector<std::uint32_t> r = roots_of(kl, node->e_rel(), c);
      if (static_cast<int>(r.size()) != node->e_rel()) {
        ok = false;
        return;
      }
      for (std::size_t i = 0; i < r.size(); ++i) {
        xi.push_back(r[i]);
        choice.push_back(static_cast<int>(i));
        rec(lvl + 1);
        xi.pop_back();
        choice.pop_back();
      }
    };
    rec(1);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

FieldPtr TameField::splitting_field() const {
  std::call_once(split_once_, [&] {
    FieldPtr self = shared_from_this();
    for (int m = 1;; ++m) {
      long long size = ipow(p_, f0_ * f_abs_ * m);
      if (size > static_cast<long long>(kFieldCap)) break;
      FieldPtr cand = m == 1 ? self : TameField::extend(self, m, 1, 1);
      std::vector<Embedding> tmp;
      if (enumerate(*this, cand, &tmp)) {
        split_ = cand;
        return;
      }
    }
  });
  if (!split_) throw Error("size_cap_exceeded", "tame_tower.splitting_field");
  return split_;
}

const std::vector<Embedding>& TameField::embeddings() const {
  std::call_once(emb_once_, [&] {
    FieldPtr l = splitting_field();
    std::vector<Embedding> tmp;
    enumerate(*this, l, &tmp);
    FieldPtr self = shared_from_this();
    for (Embedding& e : tmp) {
      e.source = self;
      e.target = l;
    }
    embs_ = std::move(tmp);
  });
  return embs_;
}

// ---------------------------------------------------------------- elements

TameElement::TameElement(FieldPtr field, long long prec) : field_(std::move(field)), prec_(prec) {}

TameElement TameElement::monomial(FieldPtr field, std::uint32_t a, long long v, long long prec) {
  TameElement x(std::move(field), prec);
  if (a != 0 && v < prec) {
    x.start_ = v;
    x.coeffs_ = {a};
  }
  return x;
}

TameElement TameElement::from_digits(FieldPtr field, const std::map<long long, std::uint32_t>& d,
                                     long long prec) {
  TameElement x(std::move(field), prec);
  if (d.empty()) return x;
  long long lo = d.begin()->first;
  long long hi = std::min(prec, d.rbegin()->first + 1);
  if (hi <= lo) return x;
  x.start_ = lo;
  x.coeffs_.assign(static_cast<std::size_t>(hi - lo), 0);
  for (const auto& [v, a] : d) {
    if (a >= x.field_->k().size()) throw Error("digit_not_in_residue_field", "tame_tower.element");
    if (v < prec) x.coeffs_[static_cast<std::size_t>(v - lo)] = a;
  }
  x.normalize();
  return x;
}

TameElement TameElement::base_monomial(FieldPtr field, std::uint32_t a, long long v, long long prec) {
  const TameField& base = *field->path().front();
  const FqField& k = field->k();
  std::uint32_t b = k.mul(field->embed_from(base, a), k.pow(field->z_const(), v));
  long long w = v * field->e_abs();
  return monomial(std::move(field), b, w, prec);
}

void TameElement::normalize() {
  long long end = start_ + static_cast<long long>(coeffs_.size());
  if (end > prec_) coeffs_.resize(static_cast<std::size_t>(std::max(0LL, prec_ - start_)));
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    start_ = 0;
    return;
  }
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    start_ += static_cast<long long>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational TameElement::ord() const { return Rational(val(), field_->e_abs()); }

std::uint32_t TameElement::digit(long long v) const {
  if (v < start_ || v >= start_ + static_cast<long long>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(v - start_)];
}

std::map<long long, std::uint32_t> TameElement::digits() const {
  std::map<long long, std::uint32_t> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i]) out[start_ + static_cast<long long>(i)] = coeffs_[i];
  return out;
}

std::size_t TameElement::digit_count() const {
  return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](auto a) { return a != 0; }));
}

TameElement TameElement::with_prec(long long prec) const {
  TameElement x = *this;
  x.prec_ = prec;
  x.normalize();
  return x;
}

TameElement TameElement::operator-() const {
  TameElement x = *this;
  for (auto& a : x.coeffs_) a = field_->k().neg(a);
  return x;
}

TameElement TameElement::scale(std::uint32_t a) const {
  TameElement x = *this;
  for (auto& c : x.coeffs_) c = field_->k().mul(c, a);
  x.normalize();
  return x;
}

TameElement TameElement::shift(long long k) const {
  TameElement x = *this;
  x.start_ += k;
  x.prec_ += k;
  return x;
}

bool TameElement::same_digits(const TameElement& o) const {
  return start_ == o.start_ && coeffs_ == o.coeffs_;
}

bool TameElement::equals(const TameElement& o) const { return same_digits(o) && prec_ == o.prec_; }

static void check_owner(const TameElement& a, const TameElement& b, const char* where) {
  if (a.field() != b.field()) throw Error("owner_mismatch", where);
}

TameElement operator+(const TameElement& a, const TameElement& b) {
  check_owner(a, b, "tame_tower.arith");
  const FqField& k = a.field_->k();
  TameElement r(a.field_, std::min(a.prec_, b.prec_));
  if (a.coeffs_.empty() && b.coeffs_.empty()) return r;
  long long lo = std::min(a.coeffs_.empty() ? b.start_ : a.start_, b.coeffs_.empty() ? a.start_ : b.start_);
  long long hi = r.prec_;
  if (hi <= lo) return r;
  r.start_ = lo;
  r.coeffs_.assign(static_cast<std::size_t>(hi - lo), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    long long v = a.start_ + static_cast<long long>(i);
    if (v < hi) r.coeffs_[static_cast<std::size_t>(v - lo)] = a.coeffs_[i];
  }
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    long long v = b.start_ + static_cast<long long>(i);
    if (v < hi) {
      auto& c = r.coeffs_[static_cast<std::size_t>(v - lo)];
      c = k.add(c, b.coeffs_[i]);
    }
  }
  r.normalize();
  return r;
}

TameElement operator-(const TameElement& a, const TameElement& b) { return a + (-b); }

TameElement operator*(const TameElement& a, const TameElement& b) {
  check_owner(a, b, "tame_tower.arith");
  const FqField& k = a.field_->k();
  long long prec = std::min(a.prec_ + b.val(), b.prec_ + a.val());
  TameElement r(a.field_, prec);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
  long long lo = a.start_ + b.start_;
  if (prec <= lo) return r;
  std::size_t len = static_cast<std::size_t>(prec - lo);
  r.start_ = lo;
  r.coeffs_.assign(len, 0);
  for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i) {
    if (!a.coeffs_[i]) continue;
    std::size_t lim = std::min(b.coeffs_.size(), len - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (!b.coeffs_[j]) continue;
      auto& c = r.coeffs_[i + j];
      c = k.add(c, k.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  r.normalize();
  return r;
}

TameElement TameElement::inverse() const {
  if (coeffs_.empty()) throw PrecisionError("division_by_zero_to_precision", "tame_tower.arith");
  const FqField& k = field_->k();
  long long rel = prec_ - start_;
  std::vector<std::uint32_t> u(static_cast<std::size_t>(rel), 0);
  std::uint32_t a0inv = k.inv(coeffs_[0]);
  // normalized unit 1 + ... ; invert by recurrence
  std::vector<std::uint32_t> w(static_cast<std::size_t>(rel), 0);
  for (std::size_t i = 0; i < coeffs_.size() && i < w.size(); ++i) w[i] = k.mul(coeffs_[i], a0inv);
  u[0] = 1;
  for (std::size_t n = 1; n < u.size(); ++n) {
    std::uint32_t s = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (w[i] && u[n - i]) s = k.add(s, k.mul(w[i], u[n - i]));
    u[n] = k.neg(s);
  }
  TameElement r(field_, -start_ + rel);
  r.start_ = -start_;
  r.coeffs_.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r.coeffs_[i] = k.mul(u[i], a0inv);
  r.normalize();
  return r;
}

TameElement operator/(const TameElement& a, const TameElement& b) {
  check_owner(a, b, "tame_tower.arith");
  if (b.is_zero()) throw PrecisionError("division_by_zero_to_precision", "tame_tower.arith");
  return a * b.inverse();
}

TameElement arith(const TameElement& x, const TameElement& y, TowerOp op) {
  switch (op) {
    case TowerOp::Add: return x + y;
    case TowerOp::Sub: return x - y;
    case TowerOp::Mul: return x * y;
    case TowerOp::Div: return x / y;
  }
  return x;
}

namespace {

// one step down the tower: a varpi_P^v -> emb(a) zeta^v varpi_C^{e v}
TameElement coerce_step(const TameElement& x, const FieldPtr& child) {
  const FqField& kc = child->k();
  const FqField& kp = child->parent()->k();
  std::uint32_t ex = child->parent_embed_exp();
  long long e = child->e_rel();
  std::map<long long, std::uint32_t> d;
  for (const auto& [v, a] : x.digits()) {
    std::uint32_t b = kp.embed_with(a, ex, kc);
    d[v * e] = kc.mul(b, kc.pow(child->twist(), v));
  }
  return TameElement::from_digits(child, d, x.prec() * e);
}

}  // namespace

TameElement coerce(const TameElement& x, const FieldPtr& target) {
  if (x.field() == target) return x;
  if (!x.field()->is_ancestor_of(*target)) throw Error("target_not_descendant", "tame_tower.coerce");
  std::vector<FieldPtr> chain;
  for (FieldPtr n = target; n != x.field(); n = n->parent()) chain.push_back(n);
  TameElement cur = x;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) cur = coerce_step(cur, *it);
  return cur;
}

TameElement sr(const TameElement& c) {
  if (c.is_zero()) throw Error("zero_input", "tame_tower.sr");
  return TameElement::monomial(c.field(), c.lead(), c.val(), c.prec());
}

TameElement apply_embedding(const Embedding& s, const TameElement& x) {
  if (x.field() != s.source) throw Error("owner_mismatch", "tame_tower.apply_embedding");
  const TameField& l = *s.target;
  const FqField& kl = l.k();
  long long qj = ipow(x.field()->q(), s.frob_exp);
  std::uint32_t xi = s.xi.back();
  // the splitting field is unramified over the source
  std::map<long long, std::uint32_t> d;
  for (const auto& [v, a] : x.digits()) {
    std::uint32_t b = l.embed_from(*x.field(), a);
    d[v] = kl.mul(kl.pow(b, qj), kl.pow(xi, v));
  }
  return TameElement::from_digits(s.target, d, x.prec());
}

// ---------------------------------------------------------------- subfields

namespace {

using Key = std::vector<std::pair<long long, std::uint32_t>>;

Key key_of(const TameElement& x) {
  Key k;
  for (const auto& [v, a] : x.digits()) k.emplace_back(v, a);
  k.emplace_back(x.prec(), 0u);
  return k;
}

}  // namespace

Subfield subfield_generated(const std::vector<TameElement>& s, const FieldPtr& ambient) {
  Subfield out;
  out.ambient = ambient;
  out.generators.reserve(s.size());
  for (const TameElement& x : s) {
    TameElement y = x.field() == ambient ? x : coerce(x, ambient);
    if (y.is_zero() && y.prec() <= 0)
      throw PrecisionError("insufficient_precision_to_separate", "tame_tower.subfield_generated");
    out.generators.push_back(y);
  }
  const auto& embs = ambient->embeddings();
  std::vector<std::vector<Key>> tuples(embs.size());
  for (std::size_t i = 0; i < embs.size(); ++i)
    for (const TameElement& g : out.generators) tuples[i].push_back(key_of(apply_embedding(embs[i], g)));
  std::vector<std::vector<Key>> distinct = tuples;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  out.degree = static_cast<int>(distinct.size());
  std::vector<int> frobs;
  for (std::size_t i = 0; i < embs.size(); ++i) {
    if (tuples[i] == tuples[0]) {
      out.stabilizer.push_back(static_cast<int>(i));
      frobs.push_back(embs[i].frob_exp);
    }
  }
  std::sort(frobs.begin(), frobs.end());
  frobs.erase(std::unique(frobs.begin(), frobs.end()), frobs.end());
  int f_rel_above = static_cast<int>(frobs.size());
  out.f = ambient->f_abs() / f_rel_above;
  out.e = out.degree / out.f;
  if (out.e * out.f != out.degree || static_cast<int>(embs.size()) != out.degree * static_cast<int>(out.stabilizer.size()))
    throw PrecisionError("inconsistent_embedding_classes", "tame_tower.subfield_generated");
  return out;
}

Subfield base_subfield(const FieldPtr& ambient) { return subfield_generated({}, ambient); }

Subfield adjoin(const Subfield& k, const TameElement& x) {
  std::vector<TameElement> g = k.generators;
  g.push_back(x);
  return subfield_generated(g, k.ambient);
}

bool contains(const Subfield& k, const TameElement& x) {
  TameElement y = x.field() == k.ambient ? x : coerce(x, k.ambient);
  const auto& embs = k.ambient->embeddings();
  Key id = key_of(apply_embedding(embs[0], y));
  for (int i : k.stabilizer)
    if (key_of(apply_embedding(embs[static_cast<std::size_t>(i)], y)) != id) return false;
  return true;
}

bool same_subfield(const Subfield& a, const Subfield& b) {
  return a.ambient == b.ambient && a.stabilizer == b.stabilizer;
}

}  // namespace sk
