#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qaff/freealg.hpp"

using namespace qaff;

namespace {

Scalar rand_mono(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> exp(-4, 4);
  int c = 0;
  while (c == 0) c = coef(rng);
  return Scalar(c) * Scalar::t_pow(exp(rng));
}

Scalar rand_pm_mono(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sgn(0, 1);
  std::uniform_int_distribution<int> exp(-4, 4);
  return Scalar(sgn(rng) ? 1 : -1) * Scalar::t_pow(exp(rng));
}

Element rand_elem(std::mt19937_64& rng, int maxterms = 2, int maxlen = 3) {
  std::uniform_int_distribution<int> nterms(1, maxterms);
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<int> idx(1, 3);
  Element e;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word w;
    int l = len(rng);
    for (int i = 0; i < l; ++i) w.push_back(sym(idx(rng)));
    e += Element::word(w, rand_mono(rng));
  }
  return e;
}

}  // namespace

TEST_CASE("bracket basics") {
  Element x = Element::gen(sym(1));
  Element a = Element::gen(sym(1)), b = Element::gen(sym(2));
  CHECK(bracket(x, x, Scalar(1)).is_zero());
  CHECK(bracket(a, b, Scalar(0)) == a * b);
  // (2.15): [a,[a,b]_u]_v = a^2 b - (u+v) aba + uv ba^2
  Scalar u = Scalar::q(), v = Scalar::q_pow(-2);
  Element lhs = bracket(a, bracket(a, b, u), v);
  Element rhs = a * a * b - (u + v) * (a * b * a) + (u * v) * (b * a * a);
  CHECK(lhs == rhs);
}

TEST_CASE("nested brackets") {
  Element a = Element::gen(sym(1)), b = Element::gen(sym(2)),
          c = Element::gen(sym(3));
  Scalar u = Scalar::q(), v = Scalar::q_pow(-1);
  // n=2: both variants equal the plain bracket
  CHECK(nested_bracket({a, b}, {u}) == bracket(a, b, u));
  CHECK(nested_bracket_primed({a, b}, {u}) == bracket(a, b, u));
  // inductive definition: [a,b,c]_{u v} = [a,[b,c]_u]_v
  CHECK(nested_bracket({a, b, c}, {u, v}) == bracket(a, bracket(b, c, u), v));
  CHECK(nested_bracket_primed({a, b, c}, {u, v}) ==
        bracket(bracket(a, b, u), c, v));
  // (2.15) symmetry
  CHECK(nested_bracket({a, a, b}, {u, v}) == nested_bracket({a, a, b}, {v, u}));
  CHECK_THROWS_AS(nested_bracket({a, b}, {u, v}), std::invalid_argument);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 60; ++i) {
    Element a = rand_elem(rng, 3), b = rand_elem(rng, 3), c = rand_elem(rng, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("omega") {
  GenImages ident = [](const GenSym& g) { return Element::gen(g); };
  // constants: Omega(c(q)) = c(q^-1)
  Element cq(Scalar::q() + Scalar(2));
  CHECK(omega(cq, ident) == Element(Scalar::q_pow(-1) + Scalar(2)));

  // involution for involutive images
  std::mt19937_64 rng(55);
  for (int i = 0; i < 30; ++i) {
    Element e = rand_elem(rng);
    CHECK(omega(omega(e, ident), ident) == e);
  }

  // Omega([a,b]_v) = [Omega(b), Omega(a)]_{bar v}, 50 random instances
  for (int i = 0; i < 50; ++i) {
    Element a = rand_elem(rng), b = rand_elem(rng);
    Scalar v = rand_mono(rng);
    Element lhs = omega(bracket(a, b, v), ident);
    Element rhs = bracket(omega(b, ident), omega(a, ident), v.bar());
    CHECK(lhs == rhs);
  }

  // missing image throws
  GenImages partial = [](const GenSym& g) -> Element {
    if (g.kind == GK::Sym && g.index == 1) return Element::gen(g);
    throw std::invalid_argument("no image");
  };
  Element bad = Element::gen(sym(2));
  CHECK_THROWS(omega(bad, partial));
}

TEST_CASE("identities hold on 100 random instances each") {
  std::mt19937_64 rng(20260810);
  for (int i = 0; i < 100; ++i) {
    IdentityBindings b;
    b.a = rand_elem(rng);
    b.b = rand_elem(rng);
    b.c = rand_elem(rng);
    b.u = rand_mono(rng);
    b.v = rand_mono(rng);
    b.x = rand_mono(rng);
    CHECK(check_identity(IdentityKind::Id213, b).is_zero());
    CHECK(check_identity(IdentityKind::Id214, b).is_zero());
    CHECK(check_identity(IdentityKind::ProductRule1, b).is_zero());
    CHECK(check_identity(IdentityKind::ProductRule2, b).is_zero());
    CHECK(check_identity(IdentityKind::Sym215, b).is_zero());

    IdentityBindings lb;
    lb.a = rand_elem(rng);
    std::uniform_int_distribution<int> nd(2, 4);
    int n = nd(rng);
    for (int k = 0; k < n; ++k) lb.items.push_back(rand_elem(rng));
    for (int k = 0; k + 1 < n; ++k) lb.vs.push_back(rand_mono(rng));
    CHECK(check_identity(IdentityKind::LeibnizSum, lb).is_zero());

    IdentityBindings ab;
    for (int k = 0; k < n; ++k)
      ab.items.push_back(Element::gen(sym(1 + (k % 3))));
    for (int k = 0; k + 1 < n; ++k) ab.vs.push_back(rand_pm_mono(rng));
    CHECK(check_identity(IdentityKind::Antimorphism, ab).is_zero());
  }
}

TEST_CASE("misprinted (2.13) variant is not an identity") {
  // The paper prints u/x as v/x in the outer parameter of the second term;
  // that reading fails already on single generators.
  Element a = Element::gen(sym(1)), b = Element::gen(sym(2)),
          c = Element::gen(sym(3));
  Scalar u = Scalar::q_pow(2), v = Scalar::q_pow(-1), x = Scalar::q();
  Element lhs = bracket(a, bracket(b, c, u), v);
  Element wrong = bracket(bracket(a, b, x), c, u * v / x) +
                  x * bracket(b, bracket(a, c, v / x), v / x);
  CHECK(lhs != wrong);
}

TEST_CASE("antimorphism law needs the alternating sign") {
  // At n = 2 the unsigned reading fails: B([b1,b2]_v) = -v^-1 [B b1, B b2]_v.
  GenImages ident = [](const GenSym& g) { return Element::gen(g); };
  Element b1 = Element::gen(sym(1)), b2 = Element::gen(sym(2));
  Scalar v = Scalar::q_pow(3);
  Element lhs = omega(bracket(b1, b2, v), ident);
  Element unsigned_rhs = v.inverse() * bracket(b1, b2, v);
  CHECK(lhs != unsigned_rhs);
  CHECK(lhs == -(v.inverse() * bracket(b1, b2, v)));
}

TEST_CASE("x = 0 bindings are precondition errors") {
  IdentityBindings b;
  b.a = Element::gen(sym(1));
  b.b = Element::gen(sym(2));
  b.c = Element::gen(sym(3));
  b.u = Scalar::q();
  b.v = Scalar::q();
  b.x = Scalar(0);
  CHECK_THROWS_AS(check_identity(IdentityKind::Id213, b),
                  std::invalid_argument);
}

TEST_CASE("canonical text form round trips") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Element e = rand_elem(rng, 3, 4);
    CHECK(parse_element(element_str(e)) == e);
  }
  Element mixed;
  mixed += Element::word({gen_x(1, 1, 0), gen_x(-1, 2, -3)}, Scalar::q());
  mixed += Element::word({gen_K(1, -1), gen_gamma(-1), gen_qd(1)},
                         Scalar(1) / (Scalar::q() - Scalar::q_pow(-1)));
  mixed += Element::word({gen_a(2, 5)}, omega_scalar(3));
  CHECK(parse_element(element_str(mixed)) == mixed);
  CHECK(parse_element("0").is_zero());
  CHECK(parse_element("x1+(0)·x1-(2)") ==
        Element::word({gen_x(1, 1, 0), gen_x(-1, 1, 2)}));
}

TEST_CASE("interned words compare by identity") {
  Word w1{sym(1), sym(2)};
  Word w2{sym(1), sym(2)};
  CHECK(intern(w1) == intern(w2));
}
