#include "strata_kit/fuzz.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "strata_kit/errors.hpp"

namespace sk {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

Tower build_tower(const TowerSpec& spec) {
  Tower t;
  t.levels.push_back(TameField::base(spec.q));
  for (const auto& s : spec.steps) t.levels.push_back(TameField::extend(t.levels.back(), s.f, s.e, s.twist));
  return t;
}

namespace {

int prime_of(int q) {
  for (int p = 2; p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

TowerSpec random_spec(Rng& rng, const FuzzCaps& caps) {
  static const int qs[] = {3, 5, 7, 9};
  TowerSpec spec;
  spec.q = qs[rng.below(4)];
  int p = prime_of(spec.q);
  int steps = static_cast<int>(rng.range(1, 3));
  int deg = 1, fabs = 1;
  for (int i = 0; i < steps; ++i) {
    for (int attempt = 0; attempt < 12; ++attempt) {
      int f = static_cast<int>(rng.range(1, 3));
      int e = static_cast<int>(rng.range(1, 4));
      if (e % p == 0 || (f == 1 && e == 1) || deg * f * e > caps.max_degree) continue;
      if (ipow(spec.q, fabs * f) > 4096) continue;
      std::uint32_t size = static_cast<std::uint32_t>(ipow(spec.q, fabs * f));
      std::uint32_t twist = rng.coin() ? 1 : static_cast<std::uint32_t>(1 + rng.below(size - 1));
      spec.steps.push_back({f, e, twist});
      deg *= f * e;
      fabs *= f;
      break;
    }
  }
  return spec;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) { return seed * 0x9E3779B97F4A7C15ULL + i * 0xBF58476D1CE4E5B9ULL + 1; }

}  // namespace

std::vector<TowerSpec> fuzz_towers(std::uint64_t seed, const FuzzCaps& caps) {
  std::vector<TowerSpec> out;
  Rng rng(mix(seed, 0xA11CE));
  while (static_cast<int>(out.size()) < caps.tower_pool) {
    TowerSpec spec = random_spec(rng, caps);
    if (spec.steps.empty()) continue;
    try {
      Tower t = build_tower(spec);
      t.top()->embeddings();
    } catch (const Error&) {
      continue;
    }
    out.push_back(spec);
  }
  return out;
}

OrderSkeleton ambient_order(const TameElement& beta) {
  const FieldPtr& e = beta.field();
  OrderSkeleton o;
  o.m = e->degree();
  o.d = 1;
  o.e_A = e->e_abs();
  o.pure_over = subfield_generated({beta}, e);
  o.b_maximal = o.pure_over.e == e->e_abs();
  return o;
}

std::vector<FuzzInstance> fuzz_corpus(std::uint64_t seed, int count, const FuzzCaps& caps) {
  std::vector<TowerSpec> specs = fuzz_towers(seed, caps);
  std::vector<Tower> towers;
  for (const auto& s : specs) towers.push_back(build_tower(s));
  std::vector<FuzzInstance> out;
  const long long prec = kDefaultPrec;
  for (int i = 0; i < count; ++i) {
    Rng rng(mix(seed, static_cast<std::uint64_t>(i) + 1));
    std::size_t ti = static_cast<std::size_t>(rng.below(towers.size()));
    const Tower& t = towers[ti];
    const FieldPtr& top = t.top();
    int top_level = static_cast<int>(t.levels.size()) - 1;
    int digits = static_cast<int>(rng.range(1, caps.max_digits));
    int jumps = static_cast<int>(std::min<long long>(rng.range(1, caps.max_jumps), digits));
    std::set<int> chosen{top_level};
    while (static_cast<int>(chosen.size()) < std::min(jumps, top_level + 1)) chosen.insert(static_cast<int>(rng.range(0, top_level)));
    std::vector<int> lv(chosen.begin(), chosen.end());
    while (static_cast<int>(lv.size()) < digits) lv.push_back(lv[rng.below(lv.size())]);
    std::sort(lv.begin(), lv.end());

    // valuations from the finest digit down
    std::vector<long long> val(lv.size());
    val.back() = -rng.range(1, 3);
    for (int k = static_cast<int>(lv.size()) - 2; k >= 0; --k) {
      long long m = top->e_abs() / t.levels[static_cast<std::size_t>(lv[static_cast<std::size_t>(k)])]->e_abs();
      long long below = val[static_cast<std::size_t>(k + 1)] - 1;
      long long fl = below >= 0 ? below / m : -((-below + m - 1) / m);
      val[static_cast<std::size_t>(k)] = (fl - rng.range(0, 1)) * m;
    }
    TameElement beta(top, prec);
    for (std::size_t k = 0; k < lv.size(); ++k) {
      const FieldPtr& K = t.levels[static_cast<std::size_t>(lv[k])];
      long long m = top->e_abs() / K->e_abs();
      TameElement x;
      int tries = k + 1 == lv.size() ? 16 : 1;
      for (int a = 0; a < tries; ++a) {
        std::uint32_t digit = static_cast<std::uint32_t>(1 + rng.below(K->k().size() - 1));
        x = coerce(TameElement::monomial(K, digit, val[k] / m, prec / m + 2), top).with_prec(prec);
        if (tries == 1 || subfield_generated({x}, top).degree == top->degree()) break;
      }
      beta = beta + x;
    }
    if (beta.is_zero()) beta = TameElement::monomial(top, 1, -1, prec);
    FuzzInstance inst;
    inst.index = i;
    inst.spec = specs[ti];
    inst.tower = t;
    inst.beta = beta;
    inst.order = ambient_order(beta);
    out.push_back(inst);
  }
  return out;
}

namespace {

void refresh(Factorization* fac) {
  fac->s = static_cast<int>(fac->chunks.size()) - 1;
  for (int i = 0; i <= fac->s; ++i) {
    Chunk& ch = fac->chunks[static_cast<std::size_t>(i)];
    if (ch.c.is_zero()) continue;
    ch.ord = ch.c.ord();
    ch.field_degree = subfield_generated({tail_sum(*fac, i)}, fac->beta.field()).degree;
  }
}

TameElement lead_term(const TameElement& c) { return TameElement::monomial(c.field(), c.lead(), c.val(), c.prec()); }

}  // namespace

std::vector<Mutation> mutate_factorization(const Factorization& fac) {
  std::vector<Mutation> out;
  const FieldPtr& amb = fac.beta.field();
  int s = fac.s;
  auto add = [&](const char* name, const char* clause, Factorization f) { out.push_back({name, clause, std::move(f)}); };

  if (s >= 1) {
    Factorization f = fac;
    f.chunks.erase(f.chunks.begin() + s);
    f.s = s - 1;
    add("drop_chunk", "sum", f);
  }
  {
    Factorization f = fac;
    TameElement& c = f.chunks[0].c;
    c = c + TameElement::monomial(amb, 1, c.val() + 1, c.prec());
    add("perturb_digit", "sum", f);
  }
  if (s >= 1) {
    Factorization f = fac;
    std::reverse(f.chunks.begin(), f.chunks.end());
    refresh(&f);
    add("reverse_chunks", "ord_decrease", f);
  }
  if (s >= 1) {
    Factorization f = fac;
    f.chunks[0].c = f.chunks[0].c + f.chunks[1].c;
    f.chunks.erase(f.chunks.begin() + 1);
    refresh(&f);
    add("merge_leading", "minimality", f);
  }
  for (int j = 0; j <= s; ++j) {
    const TameElement& c = fac.chunks[static_cast<std::size_t>(j)].c;
    if (c.digit_count() < 2) continue;
    TameElement lead = lead_term(c);
    TameElement rest = c - lead;
    TameElement above = j + 1 <= s ? tail_sum(fac, j + 1) + lead : lead;
    if (!contains(subfield_generated({above}, amb), rest)) continue;
    Factorization f = fac;
    f.chunks[static_cast<std::size_t>(j)].c = rest;
    f.chunks.insert(f.chunks.begin() + j + 1, Chunk{lead, 1, Rational(0)});
    refresh(&f);
    add("split_chunk", "field_growth", f);
    break;
  }
  {
    Factorization f = fac;
    f.chunks.insert(f.chunks.begin(), Chunk{TameElement(amb, fac.beta.prec()), 1, Rational(0)});
    f.s = static_cast<int>(f.chunks.size()) - 1;
    add("insert_zero", "nonzero_chunk", f);
  }
  {
    Factorization f = fac;
    f.s = s + 1;
    add("wrong_s", "s_index", f);
  }
  {
    Factorization f = fac;
    f.chunks[0].ord += 1;
    add("wrong_ord", "declared_ord", f);
  }
  {
    Factorization f = fac;
    f.chunks[0].field_degree += 1;
    add("wrong_degree", "declared_degree", f);
  }
  if (s >= 1 && fac.chunks[0].c.digit_count() >= 2) {
    TameElement lead = lead_term(fac.chunks[0].c);
    TameElement rest = fac.chunks[0].c - lead;
    if (contains(subfield_generated({tail_sum(fac, 1) + lead}, amb), rest)) {
      Factorization f = fac;
      f.chunks[0].c = rest;
      f.chunks[1].c = f.chunks[1].c + lead;
      refresh(&f);
      add("move_lead", "field_growth", f);
    }
  }
  return out;
}

}  // namespace sk
