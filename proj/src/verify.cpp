#include "strata_kit/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "strata_kit/datum_translate.hpp"
#include "strata_kit/errors.hpp"
#include "strata_kit/fuzz.hpp"
#include "strata_kit/matrix_oracle.hpp"

namespace sk {

namespace {

constexpr std::size_t kDetailCap = 12;

struct Recorder {
  SuiteResult* r;
  std::map<std::string, long long> counts;

  void pass(const std::string& key) {
    ++r->cases;
    ++counts[key];
  }
  void fail(const std::string& key, const std::string& detail) {
    ++r->cases;
    ++r->failures;
    ++counts[key + ".fail"];
    if (r->failure_detail.size() < kDetailCap) r->failure_detail.push_back(key + ": " + detail);
  }
  void check(bool ok, const std::string& key, const std::string& detail) {
    if (ok) pass(key);
    else fail(key, detail);
  }
  // runs fn, turning exceptions into failures
  void guarded(const std::string& key, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      fail(key, e.clause() + " @ " + e.location());
    } catch (const std::exception& e) {
      fail(key, e.what());
    }
  }
  void finish() {
    for (const auto& kv : counts) r->counts.push_back(kv);
  }
};

std::string show(const TameElement& x) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, a] : x.digits()) {
    os << (first ? "" : " + ") << a << "*w^" << v;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// reruns at doubled precision when the chain is undecided
LatticeChain oracle_chain(const FieldPtr& f, long long prec) {
  return with_precision_retry<LatticeChain>([&](long long p) { return chain_from_field(f, p); }, prec);
}

// ---------------------------------------------------------------- sr corpus

std::vector<TowerSpec> sr_towers() {
  return {
      {3, {{1, 2, 1}}},
      {3, {{2, 1, 1}}},
      {3, {{2, 2, 1}}},
      {3, {{1, 4, 1}}},
      {3, {{2, 1, 1}, {1, 2, 2}}},
      {3, {{2, 2, 1}, {1, 2, 1}}},
      {5, {{1, 3, 1}}},
      {5, {{1, 4, 1}}},
      {5, {{2, 1, 1}, {1, 3, 2}}},
      {5, {{2, 4, 1}}},
      {9, {{1, 2, 1}}},
      {9, {{2, 1, 1}}},
      {9, {{1, 4, 1}}},
  };
}

std::vector<std::uint32_t> residue_sample(const FqField& k) {
  std::vector<std::uint32_t> out;
  if (k.size() <= 9) {
    for (std::uint32_t a = 1; a < k.size(); ++a) out.push_back(a);
    return out;
  }
  for (std::uint32_t j = 0; j < 8; ++j) out.push_back(k.exp(static_cast<long long>(j) * (k.order() / 8)));
  return out;
}

// exhaustive 1-3 digit elements at consecutive valuations
std::vector<TameElement> sr_elements(const FieldPtr& e, long long prec) {
  std::vector<std::uint32_t> nz = residue_sample(e->k());
  std::vector<std::uint32_t> all = nz;
  all.insert(all.begin(), 0);
  std::vector<TameElement> out;
  for (long long v0 : {-5LL, -2LL, 0LL, 3LL}) {
    for (auto d0 : nz) {
      out.push_back(TameElement::from_digits(e, {{v0, d0}}, prec));
      for (auto d1 : nz) out.push_back(TameElement::from_digits(e, {{v0, d0}, {v0 + 1, d1}}, prec));
      for (auto d1 : all)
        for (auto d2 : nz) out.push_back(TameElement::from_digits(e, {{v0, d0}, {v0 + 1, d1}, {v0 + 2, d2}}, prec));
    }
  }
  return out;
}

SuiteResult suite_sr(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "sr";
  Recorder rec{&res, {}};
  for (const auto& spec : sr_towers()) {
    Tower t = build_tower(spec);
    const FieldPtr& e = t.top();
    const auto& embs = e->embeddings();
    std::set<std::pair<long long, std::uint32_t>> seen;
    for (const TameElement& c : sr_elements(e, opts.prec)) {
      rec.guarded("sr", [&] {
        TameElement s = sr(c);
        // (1) sr(c) in C_E and c sr(c)^{-1} in 1 + p_E
        bool single = s.digit_count() == 1 && s.val() == c.val();
        TameElement u = c / s - TameElement::monomial(e, 1, 0, c.prec());
        rec.check(single && (u.is_zero() || u.val() > 0), "prop1", show(c));
        // uniqueness against other single digits of the same ord
        for (std::uint32_t lam : residue_sample(e->k())) {
          if (lam == 1) continue;
          TameElement other = s.scale(lam);
          TameElement w = c / other - TameElement::monomial(e, 1, 0, c.prec());
          rec.check(!w.is_zero() && w.val() == 0, "prop1_unique", show(c));
          break;
        }
        // (2) ord(sr(c) - c) > ord(c)
        TameElement d = s - c;
        rec.check(d.is_zero() || d.ord() > c.ord(), "prop2", show(c));
        // (4) on the single digit sr(c)
        if (seen.insert({s.val(), s.lead()}).second) {
          std::vector<TameElement> img;
          for (const auto& em : embs) img.push_back(apply_embedding(em, s));
          for (std::size_t i = 0; i < img.size(); ++i)
            for (std::size_t j = i + 1; j < img.size(); ++j) {
              TameElement diff = img[i] - img[j];
              if (diff.is_zero()) continue;
              rec.check(diff.ord() == s.ord(), "prop4", show(s));
            }
        }
      });
    }
  }
  rec.finish();
  return res;
}

SuiteResult suite_minimal(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "minimal";
  Recorder rec{&res, {}};
  Rng rng(opts.seed * 7919 + 17);
  for (const auto& spec : sr_towers()) {
    Tower t = build_tower(spec);
    const FieldPtr& e = t.top();
    int perturbed = 0, stride = 0;
    for (const TameElement& c : sr_elements(e, opts.prec)) {
      bool minimal = false;
      bool generates = false;
      rec.guarded("criteria", [&] {
        MinimalityReport m = is_minimal(c);
        rec.pass("criteria");
        minimal = m.minimal;
        generates = subfield_generated({c}, e).degree == e->degree();
      });
      // the lemma is relative to E/F, so c must generate E
      if (!minimal || !generates || e->degree() == 1 || perturbed >= 16 || stride++ % 7 != 0) continue;
      ++perturbed;
      // Lemma preservemin: c (1 + x), x in p_E
      for (int k = 0; k < 1000; ++k) {
        std::map<long long, std::uint32_t> dg;
        int nd = static_cast<int>(rng.range(1, 3));
        for (int i = 0; i < nd; ++i) dg[rng.range(1, 5)] = static_cast<std::uint32_t>(rng.below(e->k().size()));
        dg[0] = 1;
        TameElement u = TameElement::from_digits(e, dg, c.prec() - c.val());
        TameElement cu = c * u;
        rec.guarded("preservemin", [&] { rec.check(is_minimal(cu).minimal, "preservemin", show(cu)); });
      }
    }
  }
  rec.finish();
  return res;
}

// ---------------------------------------------------------------- factorization

SuiteResult suite_factorize(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "factorize";
  Recorder rec{&res, {}};
  std::set<std::string> classes;
  for (const FuzzInstance& inst : fuzz_corpus(opts.seed, 1000)) {
    rec.guarded("factorization", [&] {
      Factorization fac = howe_factorize(inst.beta);
      FactorizationCheck chk = check_factorization(fac);
      rec.check(chk.valid, "factorization", "#" + std::to_string(inst.index) + " " + chk.clause);
      if (!chk.valid || fac.degenerate) return;
      for (const Mutation& m : mutate_factorization(fac)) {
        FactorizationCheck mc = check_factorization(m.fac);
        bool ok = !mc.valid && mc.clause == m.expected_clause;
        rec.check(ok, "mutation." + m.name,
                  "#" + std::to_string(inst.index) + " got " + (mc.valid ? std::string("accepted") : mc.clause));
        if (ok) classes.insert(m.name);
      }
    });
  }
  rec.check(static_cast<int>(classes.size()) == kMutationClasses, "mutation_classes",
            std::to_string(classes.size()) + " of " + std::to_string(kMutationClasses) + " exercised");
  rec.finish();
  return res;
}

// ---------------------------------------------------------------- valuation and k0 oracle

struct ChainCache {
  long long prec;
  std::map<const TameField*, LatticeChain> chains;
  const LatticeChain& get(const FieldPtr& f) {
    auto it = chains.find(f.get());
    if (it == chains.end()) it = chains.emplace(f.get(), oracle_chain(f, prec)).first;
    return it->second;
  }
};

SuiteResult suite_oracle(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "oracle";
  Recorder rec{&res, {}};
  ChainCache cache{opts.prec, {}};
  for (const FuzzInstance& inst : fuzz_corpus(opts.seed, 1000)) {
    const FieldPtr& e = inst.tower.top();
    if (e->degree() > 4) continue;
    std::string tag = "#" + std::to_string(inst.index);
    rec.guarded("valval", [&] {
      const LatticeChain& ch = cache.get(e);
      rec.check(ch.e == e->e_abs(), "period", tag);
      Factorization fac = howe_factorize(inst.beta);
      // v_A(x) e(E|F) = e_A v_E(x), v_E normalized on E
      std::vector<TameElement> probes{inst.beta};
      for (const Chunk& c : fac.chunks) probes.push_back(c.c);
      for (const TameElement& x : probes) {
        if (x.is_zero()) continue;
        long long direct = v_A_direct(regular_rep(x, opts.prec), ch);
        Rational lhs = Rational(direct) * Rational(e->e_abs());
        Rational rhs = Rational(inst.order.e_A) * Rational(x.val());
        rec.check(lhs == rhs, "valval", tag + " " + show(x));
        if (contains(inst.order.pure_over, x)) rec.check(direct == v_order(x, inst.order), "v_order", tag + " " + show(x));
      }
      ExtInt k = k0(inst.beta, inst.order);
      ExtInt kf = k_F(inst.beta);
      if (!k) {
        rec.check(!kf && contains(base_subfield(e), inst.beta), "k0_central", tag);
        return;
      }
      // k0 = v_A(beta - beta_1) by the matrix oracle
      TameElement gamma = fac.s >= 1 ? tail_sum(fac, 1) : TameElement(e, inst.beta.prec());
      long long direct = v_A_direct(regular_rep(inst.beta - gamma, opts.prec), ch);
      rec.check(direct == *k, "k0", tag + " k0=" + std::to_string(*k) + " oracle=" + std::to_string(direct));
      // relofk0: k0 = e_A e(E/F)^{-1} k_F with E = F[beta]
      Rational scaled = Rational(inst.order.e_A) / Rational(inst.order.pure_over.e) * Rational(*kf);
      rec.check(scaled == Rational(direct), "relofk0", tag);
      ExtInt own = k0_scaled(kf, inst.order.pure_over.e, inst.order.pure_over.e);
      rec.check(own && *own * inst.order.e_A == direct * inst.order.pure_over.e, "compofk0", tag);
    });
  }
  rec.finish();
  return res;
}

// ---------------------------------------------------------------- filtrations

struct ChainShape {
  std::string name;
  FieldPtr field;
};

std::vector<ChainShape> filtration_chains() {
  FieldPtr f3 = TameField::base(3);
  FieldPtr f5 = TameField::base(5);
  return {{"unramified_q3_N2", TameField::extend(f3, 2, 1, 1)},
          {"ramified_q3_N2", TameField::extend(f3, 1, 2, 1)},
          {"ramified_q5_N4", TameField::extend(f5, 1, 4, 1)}};
}

// subfields of degree <= 2 from monomial generators
std::vector<Subfield> small_subfields(const FieldPtr& e) {
  std::vector<Subfield> out{base_subfield(e)};
  std::vector<TameElement> cands;
  std::uint32_t g = e->k().generator();
  for (long long k = 0; k <= e->e_abs(); ++k) {
    if (k > 0) cands.push_back(TameElement::monomial(e, 1, k, kDefaultPrec));
    cands.push_back(TameElement::monomial(e, g, k, kDefaultPrec));
  }
  for (const auto& x : cands) {
    Subfield s = subfield_generated({x}, e);
    if (s.degree > 2) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || same_subfield(o, s);
    if (!dup) out.push_back(s);
  }
  return out;
}

SuiteResult suite_filtration(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "filtration";
  Recorder rec{&res, {}};
  const IndexMode modes[] = {IndexMode::Plain, IndexMode::Plus, IndexMode::Half, IndexMode::HalfPlus};
  const char* mode_names[] = {"plain", "plus", "half", "half_plus"};
  for (const ChainShape& shape : filtration_chains()) {
    rec.guarded("chain", [&] {
      LatticeChain ch = oracle_chain(shape.field, kOraclePrec);
      std::map<long long, Lattice> filt;
      auto P = [&](long long k) -> const Lattice& {
        auto it = filt.find(k);
        if (it == filt.end()) it = filt.emplace(k, filt_lattice(ch, k)).first;
        return it->second;
      };
      for (long long n = 0; n <= 12; ++n)
        for (int m = 0; m < 4; ++m) {
          FiltDepth d = depth_of_index(n, ch.e, modes[m]);
          const Lattice& direct = P(mode_exponent(n, modes[m]));
          Lattice via_depth = depth_lattice(ch, d);
          std::string tag = shape.name + " n=" + std::to_string(n) + " " + mode_names[m];
          rec.check(lattice_equal(via_depth, direct), std::string("compoffiltS.") + mode_names[m], tag);
          rec.check(index_of_depth(d, ch.e, modes[m]) == n, "dictionary_inverse", tag);
          if (opts.dump) *opts.dump << tag << " depth " << to_string(d) << "\n" << dump(direct) << "\n";
        }
      for (const Subfield& sub : small_subfields(shape.field)) {
        std::string sname = shape.name + " [E':F]=" + std::to_string(sub.degree);
        GroupPresentation one;
        one.level_degrees = {sub.degree};
        one.e_A = ch.e;
        one.N = ch.n;
        for (long long n = 0; n <= 12; ++n) {
          Lattice b_n = intersect_with_centralizer(P(n), sub);
          Lattice b_d = intersect_with_centralizer(depth_lattice(ch, FiltDepth::at(Rational(n, static_cast<long long>(ch.e)))), sub);
          rec.check(lattice_equal(b_n, b_d), "compoffiltC", sname + " n=" + std::to_string(n));
          Lattice b_next = intersect_with_centralizer(P(n + 1), sub);
          GroupPresentation g0 = one, g1 = one;
          g0.factors = {{0, ExponentRule::Power, n, {}}};
          g1.factors = {{0, ExponentRule::Power, n + 1, {}}};
          normalize(&g0);
          normalize(&g1);
          rec.check(lattice_index(b_n, b_next) == index_card(g0, g1), "compoffiltC.index", sname + " n=" + std::to_string(n));
          if (opts.dump) *opts.dump << sname << " B cap P^" << n << "\n" << dump(b_n) << "\n";
        }
      }
    });
  }
  rec.finish();
  return res;
}

// ---------------------------------------------------------------- strata corpus

struct TameStratum {
  std::string tag;
  FieldPtr field;
  StratumSkeleton st;
};

Subfield full_subfield(const FieldPtr& e) {
  return subfield_generated({TameElement::monomial(e, 1, 1, kDefaultPrec), TameElement::monomial(e, e->k().generator(), 0, kDefaultPrec)}, e);
}

// fuzzed simple strata with B maximal, then depth-zero strata
std::vector<TameStratum> tame_strata(std::uint64_t seed, int count, bool depth_zero) {
  std::vector<TameStratum> out;
  int batch = 4 * count;
  for (const FuzzInstance& inst : fuzz_corpus(seed, batch)) {
    if (static_cast<int>(out.size()) >= count) break;
    if (!inst.order.b_maximal) continue;
    StratumSkeleton st = make_stratum(inst.beta, inst.order, 0);
    if (st.kind != StratumKind::Simple) continue;
    out.push_back({"#" + std::to_string(inst.index), inst.tower.top(), st});
  }
  if (depth_zero) {
    for (const TowerSpec& spec : {TowerSpec{3, {{1, 2, 1}}}, TowerSpec{5, {{2, 1, 1}}}, TowerSpec{5, {{1, 4, 1}}}}) {
      FieldPtr e = build_tower(spec).top();
      StratumSkeleton st = make_stratum(TameElement::base_monomial(e, 1, 0, kDefaultPrec), order_for(full_subfield(e)), 0);
      out.push_back({"depth_zero q=" + std::to_string(spec.q) + " [E:F]=" + std::to_string(e->degree()), e, st});
    }
  }
  return out;
}

bool closed_under_product(const Lattice& l) {
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(l.dim))));
  for (const auto& x : l.basis)
    for (const auto& y : l.basis)
      if (!lattice_contains(l, mat_to_vec(vec_to_mat(x, n) * vec_to_mat(y, n)))) return false;
  return true;
}

SuiteResult suite_presentations(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "presentations";
  Recorder rec{&res, {}};
  for (const TameStratum& ts : tame_strata(opts.seed, 200, false)) {
    rec.guarded("presentation", [&] {
      SecherreGroups sg = presentation_secherre(ts.st);
      YuSkeleton yu = secherre_to_yu(ts.st);
      YuGroups yg = presentation_yu(yu);
      const std::pair<const GroupPresentation*, const GroupPresentation*> pairs[] = {
          {&sg.H1, &yg.Kplus}, {&sg.J, &yg.K0circ}, {&sg.Jhat, &yg.K}};
      const char* names[] = {"H1=K+", "J=K0", "Jhat=K"};
      for (int i = 0; i < 3; ++i) {
        PresentationDiff d = compare_presentations(*pairs[i].first, *pairs[i].second);
        rec.check(d.equal, std::string("symbolic.") + names[i], ts.tag + " " + d.detail);
      }
      if (ts.st.order.N() > 4) return;
      const LatticeChain ch = oracle_chain(ts.field, kOraclePrec);
      for (int i = 0; i < 3; ++i) {
        Lattice a = presentation_lattice(ch, *pairs[i].first, yu.tower);
        Lattice b = presentation_lattice(ch, *pairs[i].second, yu.tower);
        rec.check(lattice_equal(a, b), std::string("lattice.") + names[i], ts.tag);
        rec.check(closed_under_product(a), "lattice.closure", ts.tag + " " + names[i]);
        if (opts.dump) *opts.dump << ts.tag << " " << names[i] << "\n" << dump(a) << "\n";
      }
    });
  }
  rec.finish();
  return res;
}

SuiteResult suite_roundtrip(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "roundtrip";
  Recorder rec{&res, {}};
  for (const TameStratum& ts : tame_strata(opts.seed, 200, true)) {
    rec.guarded("roundtrip", [&] {
      YuSkeleton yu = secherre_to_yu(ts.st);
      RoundtripReport a = roundtrip_check(ts.st);
      rec.check(a.equal, "secherre_yu_secherre", ts.tag + (a.mismatches.empty() ? "" : " " + a.mismatches.front()));
      RoundtripReport b = roundtrip_check(yu);
      rec.check(b.equal, "yu_secherre_yu", ts.tag + (b.mismatches.empty() ? "" : " " + b.mismatches.front()));
      for (std::size_t i = 0; i < yu.realizers.size() && i + 1 < yu.tower.size(); ++i) {
        GenericityReport g = is_generic(yu.realizers[i], yu.tower[i], yu.tower[i + 1]);
        rec.check(g.verdict && g.minimal_verdict, "genericity", ts.tag + " level " + std::to_string(i));
      }
      if (yu.s < 0) rec.pass("depth_zero");
    });
  }
  rec.finish();
  return res;
}

SuiteResult suite_index(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "index";
  Recorder rec{&res, {}};
  for (const TameStratum& ts : tame_strata(opts.seed, 200, true)) {
    if (ts.st.order.N() > 4) continue;
    rec.guarded("index", [&] {
      SecherreGroups sg = presentation_secherre(ts.st);
      YuSkeleton yu = secherre_to_yu(ts.st);
      const LatticeChain ch = oracle_chain(ts.field, kOraclePrec);
      Lattice j1 = presentation_lattice(ch, sg.J1, yu.tower);
      Lattice h1 = presentation_lattice(ch, sg.H1, yu.tower);
      long long direct = lattice_index(j1, h1);
      long long product = yu_index_product(yu, ts.st.order.N());
      rec.check(direct == product, "J1:H1", ts.tag + " lattice " + std::to_string(direct) + " product " + std::to_string(product));
      rec.check(index_card(sg.J1, sg.H1) == product, "index_card", ts.tag);
    });
  }
  rec.finish();
  return res;
}

// ---------------------------------------------------------------- psi criterion

Mat random_in(const Lattice& l, Rng& rng, int n, int shift_max) {
  const FieldPtr& f = l.base;
  Mat acc = mat_zero(f, n, kOraclePrec);
  for (const auto& b : l.basis) {
    auto a = static_cast<std::uint32_t>(rng.below(f->k().size()));
    if (a == 0) continue;
    TameElement k = TameElement::monomial(f, a, rng.range(0, shift_max), kOraclePrec);
    Mat bm = vec_to_mat(b, n);
    for (auto& x : bm.a) x = x * k;
    acc = acc + bm;
  }
  return acc;
}

SuiteResult suite_psi(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "psi";
  Recorder rec{&res, {}};
  Rng rng(opts.seed * 104729 + 3);
  std::vector<LatticeChain> chains;
  for (const ChainShape& s : filtration_chains()) chains.push_back(oracle_chain(s.field, kOraclePrec));
  for (int trial = 0; trial < 100; ++trial) {
    const LatticeChain& ch = chains[static_cast<std::size_t>(trial) % chains.size()];
    long long i = rng.range(0, 5);
    std::string tag = "trial " + std::to_string(trial) + " i=" + std::to_string(i);
    rec.guarded("psi", [&] {
      int n = ch.n;
      Lattice window = filt_lattice(ch, i + 1);
      Lattice near = filt_lattice(ch, -i);
      Lattice far = filt_lattice(ch, -i - 1);
      Mat c = random_in(filt_lattice(ch, -2 * i - 2), rng, n, 1);
      Mat c_eq = c + random_in(near, rng, n, 2);
      for (int k = 0; k < 100; ++k) {
        Mat y = random_in(window, rng, n, 2);
        rec.check(eval_psi_c(c, y) == eval_psi_c(c_eq, y), "agree", tag);
      }
      rec.check(!psi_witness(c, c_eq, window).has_value(), "no_witness", tag);
      Mat delta;
      do {
        delta = random_in(far, rng, n, 0);
      } while (lattice_contains(near, mat_to_vec(delta)));
      Mat c_ne = c + delta;
      std::optional<Mat> w = psi_witness(c, c_ne, window);
      rec.check(w && eval_psi_c(c, *w) != eval_psi_c(c_ne, *w), "disagree", tag);
    });
  }
  rec.finish();
  return res;
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"sr", suite_sr},
      {"minimal", suite_minimal},
      {"factorize", suite_factorize},
      {"oracle", suite_oracle},
      {"filtration", suite_filtration},
      {"presentations", suite_presentations},
      {"roundtrip", suite_roundtrip},
      {"index", suite_index},
      {"psi", suite_psi},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& kv : registry()) v.push_back(kv.first);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = fn(opts);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw SchemaError("unknown_suite: " + name, "verify.run_suite");
}

}  // namespace sk
