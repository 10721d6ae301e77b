#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace sk {

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

// Default cap on p^f.
inline constexpr std::uint32_t kFieldCap = 1u << 16;

// F_{p^f} in the polynomial basis. Elements are packed as sum c_i p^i, which
// is also the lex order used to pick the modulus and the generator.
class FqField {
 public:
  using Elem = std::uint32_t;

  static FqFieldPtr make(int p, int f, std::uint32_t cap = kFieldCap);

  int p() const { return p_; }
  int f() const { return f_; }
  std::uint32_t size() const { return q_; }
  std::uint32_t order() const { return q_ - 1; }
  const std::vector<int>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, long long e) const;

  // a^{p^k}
  Elem frobenius(Elem a, long long k) const;

  // discrete log to the generator; a must be nonzero
  std::uint32_t log(Elem a) const;
  Elem exp(long long k) const;

  // least d >= 1 with a in F_{p^d}
  int degree_of(Elem a) const;

  std::vector<int> coords(Elem a) const;
  Elem pack(const std::vector<int>& c) const;

  // Exponent E with generator -> target.generator^E for the fixed embedding.
  std::uint32_t embedding_exponent(const FqField& target) const;
  Elem embed(Elem a, const FqField& target) const;
  Elem embed_with(Elem a, std::uint32_t exponent, const FqField& target) const;

  bool same_as(const FqField& o) const { return p_ == o.p_ && f_ == o.f_; }

 private:
  FqField() = default;

  int p_ = 0;
  int f_ = 0;
  std::uint32_t q_ = 0;
  std::vector<int> modulus_;
  Elem gen_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<std::uint32_t> pw_;
};

// A field element bundled with its owner, used at API boundaries.
struct FqElem {
  FqFieldPtr owner;
  FqField::Elem value = 0;

  std::vector<int> coords() const { return owner->coords(value); }
};

enum class FqOp { Add, Sub, Mul, Div };

FqElem arith(const FqElem& a, const FqElem& b, FqOp op);
FqElem frobenius(const FqElem& a, long long k);
FqElem embed(const FqElem& a, const FqFieldPtr& target);

bool is_prime(long long n);

namespace poly {
// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
using Poly = std::vector<int>;
Poly trim(Poly a);
Poly mod(const Poly& a, const Poly& m, int p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int p);
Poly gcd(Poly a, Poly b, int p);
bool is_irreducible(const Poly& m, int p);
}  // namespace poly

}  // namespace sk
