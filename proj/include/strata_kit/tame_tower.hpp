#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "strata_kit/residue_arith.hpp"

namespace sk {

using Rational = boost::rational<long long>;

inline constexpr long long kDefaultPrec = 64;

class TameField;
using FieldPtr = std::shared_ptr<const TameField>;

// F-embedding of source into target (a splitting field of source).
// sigma(a) = a^{q^frob_exp} on residues, sigma(varpi_k) = xi[k] * varpi_k.
struct Embedding {
  FieldPtr source;
  FieldPtr target;
  int frob_exp = 0;
  std::vector<int> root_choice;     // per level, index into the sorted roots
  std::vector<std::uint32_t> xi;    // per level (level 0 is the base, xi = 1)
};

// Node of a tame tower over F_q((t)); varpi^{e_rel} * twist = varpi_parent.
class TameField : public std::enable_shared_from_this<TameField> {
 public:
  static FieldPtr base(int q);
  static FieldPtr extend(const FieldPtr& parent, int f_rel, int e_rel, std::uint32_t twist);

  const FieldPtr& parent() const { return parent_; }
  int level() const { return level_; }
  int f_rel() const { return f_rel_; }
  int e_rel() const { return e_rel_; }
  std::uint32_t twist() const { return twist_; }
  int f_abs() const { return f_abs_; }
  int e_abs() const { return e_abs_; }
  int degree() const { return f_abs_ * e_abs_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int f0() const { return f0_; }
  const FqFieldPtr& residue() const { return residue_; }
  const FqField& k() const { return *residue_; }

  // t = varpi^{e_abs} * z_const()
  std::uint32_t z_const() const { return z_; }

  // path from the base to this node
  std::vector<const TameField*> path() const;
  bool is_ancestor_of(const TameField& other) const;

  // exponent for the residue embedding parent -> this
  std::uint32_t parent_embed_exp() const { return parent_exp_; }
  // residue embedding of ancestor residues into this node
  std::uint32_t embed_from(const TameField& ancestor, std::uint32_t a) const;

  FieldPtr splitting_field() const;
  const std::vector<Embedding>& embeddings() const;

 private:
  TameField() = default;

  FieldPtr parent_;
  int level_ = 0;
  int f_rel_ = 1;
  int e_rel_ = 1;
  std::uint32_t twist_ = 1;
  int f_abs_ = 1;
  int e_abs_ = 1;
  int p_ = 0;
  int q_ = 0;
  int f0_ = 1;
  FqFieldPtr residue_;
  std::uint32_t parent_exp_ = 1;
  std::uint32_t z_ = 1;

  mutable std::once_flag split_once_;
  mutable FieldPtr split_;
  mutable std::once_flag emb_once_;
  mutable std::vector<Embedding> embs_;
};

// Finite-precision expansion sum a_v varpi^v, v < prec, in the owner field.
class TameElement {
 public:
  TameElement() = default;
  TameElement(FieldPtr field, long long prec);

  static TameElement monomial(FieldPtr field, std::uint32_t a, long long v, long long prec);
  static TameElement from_digits(FieldPtr field, const std::map<long long, std::uint32_t>& d,
                                 long long prec);
  // element of the base coerced into field: a t^v
  static TameElement base_monomial(FieldPtr field, std::uint32_t a, long long v, long long prec);

  const FieldPtr& field() const { return field_; }
  long long prec() const { return prec_; }
  bool is_zero() const { return coeffs_.empty(); }
  // valuation in the owner's normalization; prec when zero to precision
  long long val() const { return coeffs_.empty() ? prec_ : start_; }
  Rational ord() const;
  std::uint32_t digit(long long v) const;
  std::uint32_t lead() const { return coeffs_.empty() ? 0 : coeffs_.front(); }
  std::map<long long, std::uint32_t> digits() const;
  std::size_t digit_count() const;

  TameElement with_prec(long long prec) const;
  TameElement operator-() const;
  TameElement scale(std::uint32_t a) const;
  TameElement shift(long long k) const;  // times varpi^k

  bool equals(const TameElement& o) const;  // digits and precision
  bool same_digits(const TameElement& o) const;

  friend TameElement operator+(const TameElement& a, const TameElement& b);
  friend TameElement operator-(const TameElement& a, const TameElement& b);
  friend TameElement operator*(const TameElement& a, const TameElement& b);
  friend TameElement operator/(const TameElement& a, const TameElement& b);

  TameElement inverse() const;

 private:
  void normalize();

  FieldPtr field_;
  long long start_ = 0;
  std::vector<std::uint32_t> coeffs_;
  long long prec_ = kDefaultPrec;
};

enum class TowerOp { Add, Sub, Mul, Div };
TameElement arith(const TameElement& x, const TameElement& y, TowerOp op);

TameElement coerce(const TameElement& x, const FieldPtr& target);
TameElement sr(const TameElement& c);
TameElement apply_embedding(const Embedding& s, const TameElement& x);

struct Subfield {
  FieldPtr ambient;
  std::vector<TameElement> generators;
  int degree = 1;
  int e = 1;
  int f = 1;
  std::vector<int> stabilizer;  // indices into ambient->embeddings()
};

Subfield subfield_generated(const std::vector<TameElement>& s, const FieldPtr& ambient);
Subfield base_subfield(const FieldPtr& ambient);
Subfield adjoin(const Subfield& k, const TameElement& x);
bool contains(const Subfield& k, const TameElement& x);
bool same_subfield(const Subfield& a, const Subfield& b);

// Explicit tower: levels[0] is the base, levels[i] extends levels[i-1].
struct Tower {
  std::vector<FieldPtr> levels;
  const FieldPtr& top() const { return levels.back(); }
};

}  // namespace sk
