#include "strata_kit/residue_arith.hpp"

#include <numeric>
#include <string>

#include "strata_kit/errors.hpp"

namespace sk {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace poly {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

static int inv_mod(int a, int p) {
  int r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<int>(1LL * r * b % p);
    b = static_cast<int>(1LL * b * b % p);
    e >>= 1;
  }
  return r;
}

Poly mod(const Poly& a, const Poly& m, int p) {
  Poly r = trim(a);
  Poly mm = trim(m);
  int lead_inv = inv_mod(mm.back(), p);
  while (r.size() >= mm.size()) {
    int c = static_cast<int>(1LL * r.back() * lead_inv % p);
    std::size_t shift = r.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i)
      r[shift + i] = static_cast<int>(((r[shift + i] - 1LL * c * mm[i]) % p + p) % p);
    r = trim(r);
  }
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % p);
  return mod(r, m, p);
}

Poly gcd(Poly a, Poly b, int p) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    int li = inv_mod(a.back(), p);
    for (int& c : a) c = static_cast<int>(1LL * c * li % p);
  }
  return a;
}

bool is_irreducible(const Poly& m, int p) {
  int f = static_cast<int>(trim(m).size()) - 1;
  if (f < 1) return false;
  if (f == 1) return true;
  // x^{p^k} - x shares no factor with m for k <= f/2
  Poly xp = {0, 1};
  for (int k = 1; 2 * k <= f; ++k) {
    Poly base = xp;
    Poly acc = {1};
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mulmod(acc, base, m, p);
      base = mulmod(base, base, m, p);
    }
    xp = acc;
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] - 1 + p) % p;
    Poly g = gcd(diff, m, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace poly

namespace {

std::vector<int> prime_factors(std::uint32_t n) {
  std::vector<int> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

}  // namespace

FqFieldPtr FqField::make(int p, int f, std::uint32_t cap) {
  if (!is_prime(p)) throw Error("non_prime_characteristic", "residue_arith.make_field");
  if (f < 1) throw Error("degree_below_one", "residue_arith.make_field");
  unsigned long long q = 1;
  for (int i = 0; i < f; ++i) {
    q *= static_cast<unsigned long long>(p);
    if (q > cap) throw Error("size_cap_exceeded", "residue_arith.make_field");
  }
  std::shared_ptr<FqField> fld(new FqField());
  fld->p_ = p;
  fld->f_ = f;
  fld->q_ = static_cast<std::uint32_t>(q);
  fld->pw_.resize(f + 1);
  fld->pw_[0] = 1;
  for (int i = 1; i <= f; ++i) fld->pw_[i] = fld->pw_[i - 1] * p;

  // lex-least monic irreducible: scan the packed value of the lower coefficients
  for (std::uint32_t low = 0; low < fld->q_; ++low) {
    poly::Poly m(f + 1, 0);
    std::uint32_t v = low;
    for (int i = 0; i < f; ++i) {
      m[i] = static_cast<int>(v % p);
      v /= p;
    }
    m[f] = 1;
    if (poly::is_irreducible(m, p)) {
      fld->modulus_ = m;
      break;
    }
  }

  // multiplication by x on packed elements
  auto mul_x = [&](std::uint32_t a) {
    std::vector<int> c(f + 1, 0);
    for (int i = 0; i < f; ++i) {
      c[i + 1] = static_cast<int>(a % p);
      a /= p;
    }
    int top = c[f];
    std::uint32_t out = 0;
    for (int i = f - 1; i >= 0; --i) {
      int ci = ((c[i] - top * fld->modulus_[i]) % p + p) % p;
      out = out * p + ci;
    }
    return out;
  };
  auto add_packed = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t out = 0;
    for (int i = 0; i < f; ++i) {
      out += ((a % p + b % p) % p) * fld->pw_[i];
      a /= p;
      b /= p;
    }
    return out;
  };
  auto scal = [&](std::uint32_t a, int s) {
    std::uint32_t out = 0;
    for (int i = 0; i < f; ++i) {
      out += ((a % p) * s % p) * fld->pw_[i];
      a /= p;
    }
    return out;
  };
  // schoolbook product of packed polynomials mod modulus
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t acc = 0;
    std::uint32_t shifted = a;
    for (int i = 0; i < f; ++i) {
      int bi = static_cast<int>(b % p);
      b /= p;
      if (bi) acc = add_packed(acc, scal(shifted, bi));
      shifted = mul_x(shifted);
    }
    return acc;
  };

  std::uint32_t n = fld->q_ - 1;
  std::vector<int> factors = prime_factors(n);
  auto slow_pow = [&](std::uint32_t a, std::uint32_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  for (std::uint32_t g = 1; g < fld->q_; ++g) {
    bool full = true;
    for (int r : factors)
      if (slow_pow(g, n / r) == 1) {
        full = false;
        break;
      }
    if (full) {
      fld->gen_ = g;
      break;
    }
  }

  fld->exp_.resize(n);
  fld->log_.assign(fld->q_, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    fld->exp_[i] = cur;
    fld->log_[cur] = i;
    cur = slow_mul(cur, fld->gen_);
  }
  if (fld->q_ <= 256) {
    fld->add_table_.resize(static_cast<std::size_t>(fld->q_) * fld->q_);
    for (std::uint32_t a = 0; a < fld->q_; ++a)
      for (std::uint32_t b = 0; b < fld->q_; ++b)
        fld->add_table_[a * fld->q_ + b] = add_packed(a, b);
  }
  return fld;
}

FqField::Elem FqField::from_int(long long v) const {
  return static_cast<Elem>(((v % p_) + p_) % p_);
}

FqField::Elem FqField::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[a * q_ + b];
  if (p_ == 2) return a ^ b;
  Elem out = 0;
  for (int i = 0; i < f_; ++i) {
    out += ((a % p_ + b % p_) % p_) * pw_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

FqField::Elem FqField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem out = 0;
  for (int i = 0; i < f_; ++i) {
    out += ((p_ - a % p_) % p_) * pw_[i];
    a /= p_;
  }
  return out;
}

FqField::Elem FqField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FqField::Elem FqField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  std::uint32_t n = q_ - 1;
  if (s >= n) s -= n;
  return exp_[s];
}

FqField::Elem FqField::inv(Elem a) const {
  if (a == 0) throw Error("division_by_zero", "residue_arith.arith");
  std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

FqField::Elem FqField::div(Elem a, Elem b) const { return mul(a, inv(b)); }

FqField::Elem FqField::pow(Elem a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error("division_by_zero", "residue_arith.pow");
    return 0;
  }
  long long n = q_ - 1;
  long long k = (static_cast<long long>(log_[a]) * (((e % n) + n) % n)) % n;
  return exp_[k];
}

FqField::Elem FqField::frobenius(Elem a, long long k) const {
  k %= f_;
  if (k < 0) k += f_;
  long long e = 1;
  for (long long i = 0; i < k; ++i) e *= p_;
  return pow(a, e);
}

std::uint32_t FqField::log(Elem a) const {
  if (a == 0) throw Error("log_of_zero", "residue_arith.log");
  return log_[a];
}

FqField::Elem FqField::exp(long long k) const {
  long long n = q_ - 1;
  return exp_[((k % n) + n) % n];
}

int FqField::degree_of(Elem a) const {
  for (int d = 1; d <= f_; ++d)
    if (f_ % d == 0 && frobenius(a, d) == a) return d;
  return f_;
}

std::vector<int> FqField::coords(Elem a) const {
  std::vector<int> c(f_);
  for (int i = 0; i < f_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

FqField::Elem FqField::pack(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != f_) throw Error("coords_length_mismatch", "residue_arith.pack");
  Elem out = 0;
  for (int i = f_ - 1; i >= 0; --i) out = out * p_ + static_cast<Elem>(((c[i] % p_) + p_) % p_);
  return out;
}

std::uint32_t FqField::embedding_exponent(const FqField& target) const {
  if (target.p_ != p_ || target.f_ % f_ != 0)
    throw Error("non_divisible_degrees", "residue_arith.embed");
  std::uint32_t nt = target.q_ - 1;
  std::uint32_t ns = q_ - 1;
  std::uint32_t k = nt / ns;
  // minimal polynomial of the generator; its coefficients lie in F_p
  std::vector<Elem> mp = {1};
  for (int i = 0; i < f_; ++i) {
    Elem root = frobenius(gen_, i);
    std::vector<Elem> next(mp.size() + 1, 0);
    for (std::size_t j = 0; j < mp.size(); ++j) {
      next[j + 1] = add(next[j + 1], mp[j]);
      next[j] = sub(next[j], mul(mp[j], root));
    }
    mp = next;
  }
  auto eval = [&](Elem x) {
    Elem acc = 0;
    for (std::size_t j = mp.size(); j-- > 0;) acc = target.add(target.mul(acc, x), target.from_int(mp[j]));
    return acc;
  };
  // the norm-index image if it is a root, else the least conjugate exponent
  for (std::uint32_t u = 1; u < ns || u == 1; ++u) {
    if (std::gcd(u, ns == 0 ? 1 : ns) != 1) continue;
    std::uint32_t e = static_cast<std::uint32_t>((1ULL * k * u) % (nt == 0 ? 1 : nt));
    if (eval(target.exp(e)) == 0) return e;
    if (ns <= 1) break;
  }
  throw Error("embedding_not_found", "residue_arith.embed");
}

FqField::Elem FqField::embed_with(Elem a, std::uint32_t exponent, const FqField& target) const {
  if (a == 0) return 0;
  return target.exp(1LL * log_[a] * exponent);
}

FqField::Elem FqField::embed(Elem a, const FqField& target) const {
  return embed_with(a, embedding_exponent(target), target);
}

FqElem arith(const FqElem& a, const FqElem& b, FqOp op) {
  if (!a.owner->same_as(*b.owner) || a.owner->modulus() != b.owner->modulus())
    throw Error("owner_mismatch", "residue_arith.arith");
  const FqField& k = *a.owner;
  switch (op) {
    case FqOp::Add: return {a.owner, k.add(a.value, b.value)};
    case FqOp::Sub: return {a.owner, k.sub(a.value, b.value)};
    case FqOp::Mul: return {a.owner, k.mul(a.value, b.value)};
    case FqOp::Div: return {a.owner, k.div(a.value, b.value)};
  }
  return {};
}

FqElem frobenius(const FqElem& a, long long k) { return {a.owner, a.owner->frobenius(a.value, k)}; }

FqElem embed(const FqElem& a, const FqFieldPtr& target) {
  return {target, a.owner->embed(a.value, *target)};
}

}  // namespace sk
