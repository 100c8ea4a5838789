#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qaff/scalar.hpp"

namespace qaff {

// Generator symbols for the Drinfeld alphabet plus opaque符 symbols for the
// identity layer. Layered order: Qd < Gamma < K < A(neg) < X < A(pos); Sym
// sorts after everything.
enum class GK : uint8_t { Qd = 0, Gamma = 1, K = 2, A = 3, X = 4, Sym = 5 };

struct GenSym {
  GK kind;
  int8_t se;     // X: sign +1/-1; K/Gamma/Qd: exponent +1/-1; else 0
  int16_t index;
  int32_t mode;

  int order_class() const {
    switch (kind) {
      case GK::Qd: return 0;
      case GK::Gamma: return 1;
      case GK::K: return 2;
      case GK::A: return mode < 0 ? 3 : 6;
      case GK::X: return 4;
      case GK::Sym: return 7;
    }
    return 7;
  }
  bool operator==(const GenSym& o) const {
    return kind == o.kind && se == o.se && index == o.index && mode == o.mode;
  }
  bool operator<(const GenSym& o) const;
  std::string str() const;
};

GenSym sym(int index, int mode = 0);
GenSym gen_x(int sign, int index, int mode);
GenSym gen_a(int index, int mode);
GenSym gen_K(int index, int exp = 1);
GenSym gen_gamma(int exp = 1);  // gamma^{1/2 * exp}
GenSym gen_qd(int exp = 1);

using Word = std::vector<GenSym>;

// Session-global hash consing; equal words share one address.
const Word* intern(const Word& w);
const Word* intern_empty();

struct WordPtrLess {
  bool operator()(const Word* a, const Word* b) const;
};

class Element {
 public:
  Element() = default;
  explicit Element(const Scalar& c);  // c * empty word
  static Element word(const Word& w, const Scalar& c = Scalar(1));
  static Element gen(const GenSym& g, const Scalar& c = Scalar(1));

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<const Word*, Scalar, WordPtrLess>& terms() const {
    return terms_;
  }
  Scalar coeff(const Word& w) const;

  Element operator-() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;  // concatenation product
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  void add_term(const Word* w, const Scalar& c);

  friend Element operator*(const Scalar& c, const Element& e);
  Element operator*(const Scalar& c) const { return c * *this; }

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  // Coefficientwise bar (q -> q^-1) without touching words.
  Element bar_coeffs() const;

  std::string str() const;

 private:
  std::map<const Word*, Scalar, WordPtrLess> terms_;
};

// [a, b]_v = ab - v ba
Element bracket(const Element& a, const Element& b, const Scalar& v);
// Right-nested [b_1,...,b_n]_{v_1...v_{n-1}}; v[0] is the innermost
// parameter, attached to [b_{n-1}, b_n].
Element nested_bracket(const std::vector<Element>& items,
                       const std::vector<Scalar>& vs);
// Left-nested variant; v[0] attaches to [b_1, b_2].
Element nested_bracket_primed(const std::vector<Element>& items,
                              const std::vector<Scalar>& vs);

// Anti-algebra involution: reverses words, maps each generator through
// `images`, and applies bar to every coefficient. Throws when a generator
// has no image.
using GenImages = std::function<Element(const GenSym&)>;
Element omega(const Element& e, const GenImages& images);

enum class IdentityKind {
  Id213,          // [a,[b,c]_u]_v expansion, x != 0
  Id214,          // [[a,b]_u,c]_v expansion, x != 0
  ProductRule1,   // [a,bc]_v = [a,b]_x c + x b [a,c]_{v/x}
  ProductRule2,   // [ab,c]_v = a[b,c]_x + x [a,c]_{v/x} b
  LeibnizSum,     // [a,[b_1..b_n]_v] = sum_i [b_1..[a,b_i]..b_n]_v
  Sym215,         // [a,a,b]_{uv} = [a,a,b]_{vu} = a^2 b - (u+v) aba + uv ba^2
  Antimorphism,   // reversal with v -> v^-1, sign (-1)^{n-1}
};

struct IdentityBindings {
  Element a, b, c;
  std::vector<Element> items;
  Scalar u, v, x;
  std::vector<Scalar> vs;
};

// Expands LHS - RHS; empty result means the identity instance holds.
Element check_identity(IdentityKind id, const IdentityBindings& bind);

// Canonical text form and its parser. Words print as generator tokens
// joined by '·' with an explicit leading coefficient.
std::string element_str(const Element& e);
Element parse_element(const std::string& text);

}  // namespace qaff
