#include "strata_kit/minimal_factor.hpp"

#include <algorithm>
#include <numeric>

#include "strata_kit/errors.hpp"

namespace sk {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

// Intersect x = x0 (mod m) with a*x = b (mod n); false when empty.
bool congruence(long long* x0, long long* m, long long a, long long b, long long n) {
  // x = x0 + m*k ; a*m*k = b - a*x0 (mod n)
  long long am = mod(a * *m, n);
  long long rhs = mod(b - a * *x0, n);
  long long g = std::gcd(am, n);
  if (g == 0) g = n;
  if (rhs % g != 0) return false;
  long long ng = n / g;
  long long k = 0;
  if (ng > 1) {
    long long aa = (am / g) % ng, bb = ng, s0 = 1, s1 = 0;
    while (bb) {
      long long qq = aa / bb;
      long long t = aa - qq * bb;
      aa = bb;
      bb = t;
      t = s0 - qq * s1;
      s0 = s1;
      s1 = t;
    }
    k = mod((rhs / g) % ng * mod(s0, ng), ng);
  }
  *x0 = *x0 + *m * k;
  *m = *m * ng;
  *x0 = mod(*x0, *m);
  return true;
}

}  // namespace

bool minimal_classical(const TameElement& c0, const Subfield& base) {
  TameElement c = c0.field() == base.ambient ? c0 : coerce(c0, base.ambient);
  if (contains(base, c)) return true;
  const FieldPtr& amb = base.ambient;
  Subfield m = adjoin(base, c);
  int e_rel = m.e / base.e;
  long long num = c.val() * m.e;
  if (num % amb->e_abs() != 0) throw Error("valuation_not_in_subfield", "minimal_factor.is_minimal");
  long long v = num / amb->e_abs();
  if (std::gcd(std::abs(v), static_cast<long long>(e_rel)) != 1) return false;

  // leading digit w of a uniformizer of the base subfield, solved in k_L
  const auto& embs = amb->embeddings();
  const TameField& l = *embs[0].target;
  const FqField& kl = l.k();
  long long n = kl.order();
  long long mexp = amb->e_abs() / base.e;
  long long x0 = 0, md = 1;
  long long qe = ipow(amb->p(), amb->f0() * amb->f_abs());
  if (!congruence(&x0, &md, qe - 1, 0, n)) throw Error("no_uniformizer_digit", "minimal_factor.is_minimal");
  for (int i : base.stabilizer) {
    const Embedding& s = embs[static_cast<std::size_t>(i)];
    long long qj = 1;
    for (int t = 0; t < s.frob_exp; ++t) qj = mod(qj * amb->q(), n);
    long long lx = kl.log(s.xi.back());
    if (!congruence(&x0, &md, qj - 1, mod(-mexp * lx, n), n))
      throw Error("no_uniformizer_digit", "minimal_factor.is_minimal");
  }
  std::uint32_t w = kl.exp(x0);
  std::uint32_t a = l.embed_from(*amb, c.lead());
  std::uint32_t y = kl.div(kl.pow(a, e_rel), kl.pow(w, v));
  int dy = kl.degree_of(y);
  int fk = amb->f0() * base.f;
  int fm = amb->f0() * m.f;
  return std::lcm(dy, fk) == fm;
}

bool minimal_sr_generates(const TameElement& c0, const Subfield& base) {
  TameElement c = c0.field() == base.ambient ? c0 : coerce(c0, base.ambient);
  if (contains(base, c)) return true;
  return same_subfield(adjoin(base, sr(c)), adjoin(base, c));
}

bool minimal_embedding_ord(const TameElement& c, const Subfield& base, int* wa, int* wb) {
  const auto& embs = base.ambient->embeddings();
  TameElement cc = c.field() == base.ambient ? c : coerce(c, base.ambient);
  std::vector<TameElement> img;
  for (int i : base.stabilizer) img.push_back(apply_embedding(embs[static_cast<std::size_t>(i)], cc));
  for (std::size_t i = 0; i < img.size(); ++i)
    for (std::size_t j = i + 1; j < img.size(); ++j) {
      TameElement d = img[i] - img[j];
      if (d.is_zero()) continue;
      if (d.val() != cc.val()) {
        if (wa) *wa = base.stabilizer[i];
        if (wb) *wb = base.stabilizer[j];
        return false;
      }
    }
  return true;
}

MinimalityReport is_minimal(const TameElement& c, const Subfield& base) {
  if (c.is_zero()) throw PrecisionError("zero_to_precision", "minimal_factor.is_minimal");
  MinimalityReport r;
  r.element = c;
  r.base = base;
  r.crit1_classical = minimal_classical(c, base);
  r.crit2_sr_generates = minimal_sr_generates(c, base);
  r.crit3_embedding_ord = minimal_embedding_ord(c, base, &r.witness_first, &r.witness_second);
  if (r.crit1_classical != r.crit2_sr_generates || r.crit2_sr_generates != r.crit3_embedding_ord)
    throw Error("criteria_disagree", "minimal_factor.is_minimal");
  r.minimal = r.crit1_classical;
  return r;
}

MinimalityReport is_minimal(const TameElement& c) { return is_minimal(c, base_subfield(c.field())); }

TameElement tail_sum(const Factorization& fac, int i) {
  TameElement acc(fac.beta.field(), fac.beta.prec());
  for (std::size_t j = static_cast<std::size_t>(i); j < fac.chunks.size(); ++j) acc = acc + fac.chunks[j].c;
  return acc;
}

Factorization howe_factorize(const TameElement& beta) {
  if (beta.is_zero()) throw Error("beta_zero", "minimal_factor.howe_factorize");
  const FieldPtr& amb = beta.field();
  Subfield k = base_subfield(amb);
  std::vector<std::map<long long, std::uint32_t>> lead_first;
  for (const auto& [v, a] : beta.digits()) {
    TameElement m = TameElement::monomial(amb, a, v, beta.prec());
    bool grows = !contains(k, m);
    if (grows) k = adjoin(k, m);
    if (grows || lead_first.empty()) lead_first.emplace_back();
    lead_first.back()[v] = a;
  }
  Factorization fac;
  fac.beta = beta;
  for (auto it = lead_first.rbegin(); it != lead_first.rend(); ++it) {
    Chunk ch;
    ch.c = TameElement::from_digits(amb, *it, beta.prec());
    ch.ord = ch.c.ord();
    fac.chunks.push_back(ch);
  }
  fac.s = static_cast<int>(fac.chunks.size()) - 1;
  for (int i = 0; i <= fac.s; ++i)
    fac.chunks[static_cast<std::size_t>(i)].field_degree = subfield_generated({tail_sum(fac, i)}, amb).degree;
  fac.degenerate = fac.s == 0 && fac.chunks[0].field_degree == 1;
  FactorizationCheck chk = check_factorization(fac);
  if (!chk.valid) throw Error(chk.clause, "minimal_factor.howe_factorize");
  return fac;
}

std::optional<long long> embedding_jump(const TameElement& x) {
  const auto& embs = x.field()->embeddings();
  std::vector<TameElement> img;
  for (const auto& s : embs) img.push_back(apply_embedding(s, x));
  std::optional<long long> best;
  for (std::size_t i = 0; i < img.size(); ++i)
    for (std::size_t j = i + 1; j < img.size(); ++j) {
      TameElement d = img[i] - img[j];
      if (d.is_zero()) continue;
      if (!best || d.val() > *best) best = d.val();
    }
  return best;
}

FactorizationCheck check_factorization(const Factorization& fac) {
  auto fail = [](const char* clause, int i) { return FactorizationCheck{false, clause, i}; };
  if (fac.chunks.empty()) return fail("nonempty", -1);
  int s = static_cast<int>(fac.chunks.size()) - 1;
  if (fac.s != s) return fail("s_index", fac.s);
  const FieldPtr& amb = fac.beta.field();
  for (int i = 0; i <= s; ++i) {
    const TameElement& c = fac.chunks[static_cast<std::size_t>(i)].c;
    if (c.field() != amb) return fail("owner", i);
    if (c.is_zero()) return fail("nonzero_chunk", i);
  }
  if (!tail_sum(fac, 0).same_digits(fac.beta)) return fail("sum", -1);
  for (int i = 0; i < s; ++i)
    if (!(fac.chunks[static_cast<std::size_t>(i)].c.val() > fac.chunks[static_cast<std::size_t>(i + 1)].c.val()))
      return fail("ord_decrease", i);
  for (int i = 0; i <= s; ++i)
    if (fac.chunks[static_cast<std::size_t>(i)].ord != fac.chunks[static_cast<std::size_t>(i)].c.ord())
      return fail("declared_ord", i);

  std::vector<Subfield> e(static_cast<std::size_t>(s + 2));
  e[static_cast<std::size_t>(s + 1)] = base_subfield(amb);
  for (int i = 0; i <= s; ++i) e[static_cast<std::size_t>(i)] = subfield_generated({tail_sum(fac, i)}, amb);
  for (int i = 0; i <= s; ++i) {
    const Subfield& ei = e[static_cast<std::size_t>(i)];
    const Subfield& next = e[static_cast<std::size_t>(i + 1)];
    const TameElement& c = fac.chunks[static_cast<std::size_t>(i)].c;
    if (!same_subfield(ei, adjoin(next, c))) return fail("field_growth", i);
    bool central_lead = i == s && ei.degree == 1;
    if (!central_lead && !(next.degree < ei.degree)) return fail("field_growth", i);
  }
  for (int i = 0; i <= s; ++i)
    if (fac.chunks[static_cast<std::size_t>(i)].field_degree != e[static_cast<std::size_t>(i)].degree)
      return fail("declared_degree", i);
  for (int i = 0; i <= s; ++i)
    if (!is_minimal(fac.chunks[static_cast<std::size_t>(i)].c, e[static_cast<std::size_t>(i + 1)]).minimal)
      return fail("minimality", i);
  for (int i = 0; i <= s; ++i) {
    if (e[static_cast<std::size_t>(i)].degree == 1) continue;
    std::optional<long long> j = embedding_jump(tail_sum(fac, i));
    if (!j || *j != fac.chunks[static_cast<std::size_t>(i)].c.val()) return fail("k0_jump", i);
  }
  return {};
}

GenericityReport is_generic(const TameElement& c, const Subfield& e_prime, const Subfield& e) {
  if (c.is_zero()) throw PrecisionError("zero_to_precision", "minimal_factor.is_generic");
  if (e_prime.ambient != e.ambient) throw Error("ambient_mismatch", "minimal_factor.is_generic");
  if (!contains(e_prime, c)) throw Error("c_not_in_E_prime", "minimal_factor.is_generic");
  const auto& embs = e.ambient->embeddings();
  TameElement cc = c.field() == e.ambient ? c : coerce(c, e.ambient);
  GenericityReport r;
  r.c = c;
  r.depth = -cc.ord();
  r.verdict = true;
  auto restrict_key = [&](int i) {
    std::vector<std::map<long long, std::uint32_t>> k;
    for (const auto& g : e_prime.generators) k.push_back(apply_embedding(embs[static_cast<std::size_t>(i)], g).digits());
    return k;
  };
  for (std::size_t a = 0; a < e.stabilizer.size(); ++a)
    for (std::size_t b = a + 1; b < e.stabilizer.size(); ++b) {
      int i = e.stabilizer[a], j = e.stabilizer[b];
      if (restrict_key(i) == restrict_key(j)) continue;
      TameElement d = apply_embedding(embs[static_cast<std::size_t>(i)], cc) -
                      apply_embedding(embs[static_cast<std::size_t>(j)], cc);
      GenericPair gp{i, j, {}};
      if (!d.is_zero()) gp.ord = d.ord();
      if (!gp.ord || *gp.ord != -r.depth) r.verdict = false;
      r.table.push_back(gp);
    }
  r.minimal_verdict = is_minimal(cc, e).minimal && same_subfield(adjoin(e, cc), e_prime);
  return r;
}

}  // namespace sk
