#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaff/reduce.hpp"

using namespace qaff;

namespace {
Element el_x(int s, int i, int k) { return Element::gen(gen_x(s, i, k)); }
Element el_a(int i, int l) { return Element::gen(gen_a(i, l)); }
Element el_K(int i, int e) { return Element::gen(gen_K(i, e)); }
Element el_g(int e) { return Element::gen(gen_gamma(e)); }

ReductionConfig checked() {
  ReductionConfig cfg;
  cfg.check_measure = true;
  return cfg;
}
}  // namespace

TEST_CASE("gamma inverse pair cancels to the empty word") {
  auto a1 = affine_cartan("A1^1");
  auto out = reduce(a1, el_g(1) * el_g(-1), checked());
  CHECK(out.status == ReduceStatus::NormalForm);
  CHECK(out.result == Element(Scalar(1)));
  CHECK(trace_sum(a1, out.trace) == el_g(1) * el_g(-1) - out.result);
}

TEST_CASE("K conjugates x with the bilinear exponent") {
  auto a2 = affine_cartan("A2^1");
  // K_1 x_1+(0) K_1^-1 -> q^{(a1|a1)} x_1+(0)
  Element in = el_K(1, 1) * el_x(1, 1, 0) * el_K(1, -1);
  auto out = reduce(a2, in, checked());
  CHECK(out.status == ReduceStatus::NormalForm);
  CHECK(out.result == Scalar::q_pow(2) * el_x(1, 1, 0));
  CHECK(trace_sum(a2, out.trace) == in - out.result);
}

TEST_CASE("R4 with psi expansion: step-2 generation formula") {
  auto a2 = affine_cartan("A2^1");
  // x+(0) x-(1) - x-(1) x+(0) -> gamma^{-1/2} K a(1)
  Element in = el_x(1, 1, 0) * el_x(-1, 1, 1) - el_x(-1, 1, 1) * el_x(1, 1, 0);
  auto out = reduce(a2, in, checked());
  CHECK(out.status == ReduceStatus::NormalForm);
  CHECK(out.result == el_g(-1) * el_K(1, 1) * el_a(1, 1));
  CHECK(trace_sum(a2, out.trace) == in - out.result);
}

TEST_CASE("aa relation instance certifies zero") {
  auto a1 = affine_cartan("A1^1");
  auto inst = relation(a1, RelationKind::AA, {1, 1, 1, -1});
  auto zc = certify_zero(a1, inst.el, checked());
  CHECK(zc.certified);
  // explicitly: [a(1), a(-1)] - [2](gamma - gamma^-1)/(q - q^-1)
  Scalar c = q_int(2, 1) / (Scalar::q() - Scalar::q_pow(-1));
  Element gam2 = Element::word(Word(2, gen_gamma(1)));
  Element gamm2 = Element::word(Word(2, gen_gamma(-1)));
  Element e = el_a(1, 1) * el_a(1, -1) - el_a(1, -1) * el_a(1, 1) -
              c * (gam2 - gamm2);
  CHECK(certify_zero(a1, e, checked()).certified);
}

TEST_CASE("every untwisted relation instance reduces to zero (A2, C2)") {
  for (std::string t : {"A2^1", "C2^1"}) {
    auto data = affine_cartan(t);
    std::vector<RelationInstance> insts;
    insts.push_back(relation(data, RelationKind::KK, {1, 1, 2, -1}));
    insts.push_back(relation(data, RelationKind::KInv, {2, 1}));
    insts.push_back(relation(data, RelationKind::AA, {1, 2, 2, -2}));
    insts.push_back(relation(data, RelationKind::AA, {1, 1, 2, 2}));
    insts.push_back(relation(data, RelationKind::AK, {1, -1, 2, 1}));
    insts.push_back(relation(data, RelationKind::DX, {1, 1, 1, -3}));
    insts.push_back(relation(data, RelationKind::DA, {-1, 2, 2}));
    insts.push_back(relation(data, RelationKind::KX, {1, 1, 2, -1, 1}));
    insts.push_back(relation(data, RelationKind::AX, {1, 2, 2, 1, -1}));
    insts.push_back(relation(data, RelationKind::AX, {2, -1, 1, -1, 0}));
    insts.push_back(relation(data, RelationKind::XXMixed, {1, 1, 1, -1}));
    insts.push_back(relation(data, RelationKind::XXMixed, {1, 0, 2, 2}));
    for (const auto& inst : insts) {
      auto zc = certify_zero(data, inst.el, checked());
      CHECK_MESSAGE(zc.certified, t, " ", inst.label());
      CHECK(trace_sum(data, zc.outcome.trace) == inst.el);
    }
  }
}

TEST_CASE("same-sign pair alone is definitively not in the ideal") {
  auto a1 = affine_cartan("A1^1");
  Element in = el_x(1, 1, 0) * el_x(1, 1, 1);
  auto zc = certify_zero(a1, in, checked());
  CHECK(!zc.certified);
  CHECK(zc.outcome.status == ReduceStatus::NormalForm);
  CHECK(!zc.outcome.definitive);  // contains a same-sign equal-index pair

  Element single = el_x(1, 1, 0) * el_x(1, 2, 0);
  auto a2 = affine_cartan("A2^1");
  auto out2 = reduce(a2, single, checked());
  CHECK(out2.status == ReduceStatus::NormalForm);
  CHECK(out2.definitive);
}

TEST_CASE("R5 sorts adjacent-mode same-index pairs") {
  auto a1 = affine_cartan("A1^1");
  ReductionConfig cfg = checked();
  cfg.enable_r5 = true;
  Element in = el_x(-1, 1, 1) * el_x(-1, 1, 0);
  auto out = reduce(a1, in, cfg);
  CHECK(out.status == ReduceStatus::NormalForm);
  // x-(1) x-(0) = q^-2 x-(0) x-(1)
  CHECK(out.result == Scalar::q_pow(-2) * (el_x(-1, 1, 0) * el_x(-1, 1, 1)));
  CHECK(trace_sum(a1, out.trace) == in - out.result);
}

TEST_CASE("R5 distant-index swap via the m=1 Serre relation") {
  auto a3 = affine_cartan("A3^1");
  ReductionConfig cfg = checked();
  cfg.enable_r5 = true;
  Element in = el_x(-1, 3, 2) * el_x(-1, 1, 0);
  auto out = reduce(a3, in, cfg);
  CHECK(out.result == el_x(-1, 1, 0) * el_x(-1, 3, 2));
  CHECK(trace_sum(a3, out.trace) == in - out.result);
}

TEST_CASE("idempotence on normal forms") {
  auto a2 = affine_cartan("A2^1");
  Element in = el_x(1, 1, 0) * el_x(-1, 2, 1) * el_K(1, 1) +
               el_a(1, -1) * el_x(-1, 1, 3) * el_g(1);
  auto out = reduce(a2, in, checked());
  REQUIRE(out.status == ReduceStatus::NormalForm);
  auto again = reduce(a2, out.result, checked());
  CHECK(again.steps == 0);
  CHECK(again.result == out.result);
}

TEST_CASE("budget exhaustion reports honestly") {
  auto a2 = affine_cartan("A2^1");
  ReductionConfig cfg;
  cfg.max_steps = 1;
  Element in = el_K(1, 1) * el_x(1, 1, 0) * el_K(1, -1);
  auto out = reduce(a2, in, cfg);
  CHECK(out.status == ReduceStatus::BudgetExhausted);
}

TEST_CASE("foreign symbols are rejected") {
  auto a1 = affine_cartan("A1^1");
  CHECK_THROWS_AS(reduce(a1, Element::gen(sym(1)), {}), std::invalid_argument);
}

TEST_CASE("layered normal order is reached") {
  auto a2 = affine_cartan("A2^1");
  // scrambled word: x a(2) K gamma qd a(-1)
  Element in = el_x(1, 1, 0) * el_a(2, 2) * el_K(1, 1) * el_g(-1) *
               Element::gen(gen_qd(1)) * el_a(2, -1);
  auto out = reduce(a2, in, checked());
  REQUIRE(out.status == ReduceStatus::NormalForm);
  for (const auto& [w, c] : out.result.terms()) {
    for (size_t p = 0; p + 1 < w->size(); ++p)
      CHECK((*w)[p].order_class() <= (*w)[p + 1].order_class());
  }
  CHECK(trace_sum(a2, out.trace) == in - out.result);
}
