#include "qaff/reduce.hpp"

#include <array>
#include <stdexcept>

namespace qaff {

namespace {

struct Redex {
  int rule = 0;
  RelationKind kind;
  std::vector<long> params;
  Scalar orient;  // subtract (orient * term-coeff) * L * inst * R
};

bool k_order_le(const GenSym& a, const GenSym& b) {
  if (a.index != b.index) return a.index < b.index;
  return a.se <= b.se;
}

// Finds the rewrite for an adjacent pair, or rule = 0.
Redex classify(const CartanData& data, const GenSym& g1, const GenSym& g2,
               bool enable_r5) {
  Redex r;
  auto set = [&](int rule, RelationKind k, std::vector<long> p, Scalar o) {
    r.rule = rule;
    r.kind = k;
    r.params = std::move(p);
    r.orient = std::move(o);
  };
  const Scalar one(1);
  // ---- R1: central moves, Cartan moves, cancellations
  if (g1.kind == GK::Qd && g2.kind == GK::Qd) {
    if (g1.se == -g2.se) {
      set(1, RelationKind::QdInv, {g1.se}, one);
      return r;
    }
    return r;
  }
  if (g2.kind == GK::Qd) {  // move q^{+-d} left
    long e = g2.se;
    switch (g1.kind) {
      case GK::X:
        set(1, RelationKind::DX, {e, g1.index, g1.se, g1.mode},
            -Scalar::q_pow(Rat(-e * g1.mode)));
        return r;
      case GK::A:
        set(1, RelationKind::DA, {e, g1.index, g1.mode},
            -Scalar::q_pow(Rat(-e * g1.mode)));
        return r;
      case GK::K:
        set(1, RelationKind::DK, {e, g1.index, g1.se}, -one);
        return r;
      case GK::Gamma:
        set(1, RelationKind::GammaCentral,
            {g1.se, static_cast<long>(GK::Qd), e, 0, 0}, one);
        return r;
      default:
        return r;
    }
  }
  if (g1.kind == GK::Gamma && g2.kind == GK::Gamma) {
    if (g1.se == -g2.se) {
      set(1, RelationKind::GammaInv, {g1.se}, one);
      return r;
    }
    return r;
  }
  if (g2.kind == GK::Gamma && g1.kind != GK::Gamma && g1.kind != GK::Qd) {
    set(1, RelationKind::GammaCentral,
        {g2.se, static_cast<long>(g1.kind), g1.se, g1.index, g1.mode}, -one);
    return r;
  }
  if (g1.kind == GK::K && g2.kind == GK::K) {
    if (g1.index == g2.index && g1.se == -g2.se) {
      set(1, RelationKind::KInv, {g1.index, g1.se}, one);
      return r;
    }
    if (!k_order_le(g1, g2)) {
      set(1, RelationKind::KK, {g1.index, g1.se, g2.index, g2.se}, one);
      return r;
    }
    return r;
  }
  if (g2.kind == GK::K && (g1.kind == GK::A || g1.kind == GK::X)) {
    if (g1.kind == GK::A) {
      set(1, RelationKind::AK, {g1.index, g1.mode, g2.index, g2.se}, one);
    } else {
      Scalar q = Scalar::q_pow(Rat(g1.se) * Rat(g2.se) *
                               data.bilinear(g2.index, g1.index));
      set(1, RelationKind::KX, {g2.index, g2.se, g1.index, g1.se, g1.mode},
          -q.inverse());
    }
    return r;
  }
  // ---- R2: a-a ordering
  if (g1.kind == GK::A && g2.kind == GK::A) {
    if (std::pair(g1.mode, g1.index) > std::pair(g2.mode, g2.index)) {
      set(2, RelationKind::AA, {g1.index, g1.mode, g2.index, g2.mode}, one);
    }
    return r;
  }
  // ---- R3: a past x
  if (g1.kind == GK::A && g2.kind == GK::X && g1.mode > 0) {
    set(3, RelationKind::AX, {g1.index, g1.mode, g2.index, g2.se, g2.mode},
        one);
    return r;
  }
  if (g1.kind == GK::X && g2.kind == GK::A && g2.mode < 0) {
    set(3, RelationKind::AX, {g2.index, g2.mode, g1.index, g1.se, g1.mode},
        -one);
    return r;
  }
  // ---- R4: x+ x- mixed
  if (g1.kind == GK::X && g2.kind == GK::X && g1.se == 1 && g2.se == -1) {
    set(4, RelationKind::XXMixed, {g1.index, g1.mode, g2.index, g2.mode}, one);
    return r;
  }
  // ---- R5: same-sign ordering (budget-guarded)
  if (enable_r5 && g1.kind == GK::X && g2.kind == GK::X && g1.se == g2.se &&
      std::pair(g1.mode, g1.index) > std::pair(g2.mode, g2.index)) {
    if (data.bilinear(g1.index, g2.index) == 0) {
      set(5, RelationKind::Serre,
          {g1.index, g2.index, g1.se, g2.mode, g1.mode}, -one);
      return r;
    }
    if (g1.index == g2.index && g1.mode == g2.mode + 1) {
      set(5, RelationKind::XXSame,
          {g1.index, g2.index, g1.se, g2.mode, g2.mode}, Scalar(Rat(1, 2)));
      return r;
    }
    set(5, RelationKind::XXSame,
        {g1.index, g2.index, g1.se, g1.mode - 1, g2.mode}, one);
    return r;
  }
  return r;
}

// (x count, a count, inter-class inversions, sign inversions,
//  intra-class inversions, length)
std::array<long, 6> measure(const Word& w) {
  std::array<long, 6> m{};
  m[5] = static_cast<long>(w.size());
  for (const auto& g : w) {
    if (g.kind == GK::X) ++m[0];
    if (g.kind == GK::A) ++m[1];
  }
  for (size_t p = 0; p < w.size(); ++p)
    for (size_t q = p + 1; q < w.size(); ++q) {
      int cp = w[p].order_class(), cq = w[q].order_class();
      if (cp > cq) ++m[2];
      if (w[p].kind == GK::X && w[q].kind == GK::X && w[p].se == 1 &&
          w[q].se == -1)
        ++m[3];
      if (cp == cq && w[q] < w[p]) ++m[4];
    }
  return m;
}

}  // namespace

ReductionOutcome reduce(const CartanData& data, const Element& e,
                        const ReductionConfig& cfg) {
  for (const auto& [w, c] : e.terms())
    for (const auto& g : *w)
      if (g.kind == GK::Sym)
        throw std::invalid_argument("reduce: foreign symbol in element");

  ReductionOutcome out;
  out.result = e;
  long r5_used = 0;

  for (;;) {
    if (out.steps >= cfg.max_steps) {
      out.status = ReduceStatus::BudgetExhausted;
      return out;
    }
    // lowest rule class first, then first word in canonical order, then
    // leftmost position
    const Word* best_w = nullptr;
    size_t best_pos = 0;
    Redex best;
    for (const auto& [w, c] : out.result.terms()) {
      for (size_t p = 0; p + 1 < w->size(); ++p) {
        Redex r = classify(data, (*w)[p], (*w)[p + 1],
                           cfg.enable_r5 && r5_used < cfg.r5_budget);
        if (r.rule == 0) continue;
        if (best.rule == 0 || r.rule < best.rule) {
          best = r;
          best_w = w;
          best_pos = p;
        }
      }
      if (best.rule == 1) break;  // nothing can beat R1
    }
    if (best.rule == 0) break;

    Scalar c = out.result.terms().at(best_w);
    Word left(best_w->begin(), best_w->begin() + best_pos);
    Word right(best_w->begin() + best_pos + 2, best_w->end());
    RelationInstance inst = relation(data, best.kind, best.params);
    Scalar coeff = best.orient * c;
    Element lw = Element::word(left), rw = Element::word(right);
    Element delta = coeff * (lw * inst.el * rw);
    if (cfg.check_measure) {
      auto m0 = measure(*best_w);
      for (const auto& [nw, nc] : delta.terms()) {
        if (*nw == *best_w) continue;
        if (best.rule <= 4 && !(measure(*nw) < m0))
          throw std::logic_error("termination measure did not decrease");
      }
    }
    out.result -= delta;
    out.trace.push_back({best.rule, best.kind, best.params, coeff,
                         intern(left), intern(right)});
    ++out.steps;
    if (best.rule == 5) ++r5_used;
  }

  if (out.result.is_zero()) {
    out.status = ReduceStatus::ReducedToZero;
    out.definitive = true;
    return out;
  }
  // R5 redexes may remain when the budget ran out
  bool r5_left = false;
  if (cfg.enable_r5 && r5_used >= cfg.r5_budget) {
    for (const auto& [w, c] : out.result.terms())
      for (size_t p = 0; p + 1 < w->size(); ++p)
        if (classify(data, (*w)[p], (*w)[p + 1], true).rule == 5) r5_left = true;
  }
  out.status = r5_left ? ReduceStatus::BudgetExhausted : ReduceStatus::NormalForm;
  // definitive nonzero: no same-sign pair of equal index anywhere
  out.definitive = true;
  for (const auto& [w, c] : out.result.terms())
    for (size_t p = 0; p < w->size() && out.definitive; ++p)
      for (size_t q = p + 1; q < w->size(); ++q) {
        const GenSym &a = (*w)[p], &b = (*w)[q];
        if (a.kind == GK::X && b.kind == GK::X && a.se == b.se &&
            a.index == b.index) {
          out.definitive = false;
          break;
        }
      }
  return out;
}

ZeroCertificate certify_zero(const CartanData& data, const Element& e,
                             const ReductionConfig& cfg) {
  ZeroCertificate zc;
  zc.outcome = reduce(data, e, cfg);
  zc.certified = zc.outcome.status == ReduceStatus::ReducedToZero;
  return zc;
}

Element trace_sum(const CartanData& data, const std::vector<TraceStep>& trace) {
  Element total;
  for (const auto& st : trace) {
    RelationInstance inst = relation(data, st.kind, st.params);
    total += st.coeff * (Element::word(*st.left) * inst.el * Element::word(*st.right));
  }
  return total;
}

}  // namespace qaff
