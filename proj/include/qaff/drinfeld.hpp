#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaff/cartan.hpp"
#include "qaff/epsseq.hpp"
#include "qaff/freealg.hpp"

namespace qaff {

// psi_i(m) for m >= 0 as K_i times the z^{-m} coefficient of
// exp((q_i - q_i^{-1}) sum_k a_i(k) z^{-k}); zero Element outside range.
Element psi_mode(const CartanData& data, int i, int m);
// phi_i(m) for m <= 0.
Element phi_mode(const CartanData& data, int i, int m);

enum class RelationKind {
  KK,        // (i, ei, j, ej)
  KInv,      // (i, e)
  GammaInv,  // (e)
  QdInv,     // (e)
  GammaCentral,  // (e, kind2, se2, idx2, mode2)
  AA,        // (i, k, j, l)
  AK,        // (i, k, j, ej)
  DK,        // (e, j, ej)
  DX,        // (e, i, s, k)
  DA,        // (e, i, l)
  KX,        // (i, ei, j, s, k)
  AX,        // (i, k, j, s, l)
  XXSame,    // (i, j, s, k, l): modes (k+1, l) vs (k, l+1)
  XXMixed,   // (i, k, j, l)
  Serre,     // (i, j, s, n, l_1..l_m), m = 1 - a_ij
  TwSigmaX,  // (i, s, k) on source indices
  TwSigmaA,  // (i, l)
  TwAA,      // (i, k, j, l) on twisted nodes
  TwAX,      // (i, k, j, s, l)
  TwKX,      // (i, ei, j, s, k)
  TwXXMixed, // (i, k, j, l)
  TwXXProd,  // (i, j, s, k, l): z^{-k} w^{-l} coefficient
  TwSerre,   // (i, j, s, k1, k2, n)
  TwCubic,   // (i, s, k1, k2, k3)
};

struct RelationInstance {
  RelationKind kind;
  std::vector<long> p;
  Element el;  // literal LHS - RHS, zero in the algebra
  std::string label() const;
};

// Instantiates one defining relation of (2.11) over `data`.
RelationInstance relation(const CartanData& data, RelationKind kind,
                          const std::vector<long>& params);
// Instantiates one Theorem 3.1 relation over the twisted data.
RelationInstance twisted_relation(const CartanData& twisted, RelationKind kind,
                                  const std::vector<long>& params);
// All coefficient instances of a series relation within the mode window
// |k|,|l| <= window.
std::vector<RelationInstance> twisted_relation_window(const CartanData& twisted,
                                                      RelationKind kind,
                                                      const std::vector<long>& params,
                                                      int window);

// ---------------------------------------------------------------- folding

// Value carrying a formal (sqrt r)^pow unit; (sqrt r)^2 = r is folded into
// the element so pow is normalized to {0, 1}.
struct Folded {
  Element el;
  int sqrt_pow = 0;

  void normalize(int r);
  bool operator==(const Folded& o) const {
    return sqrt_pow == o.sqrt_pow && el == o.el;
  }
};

Folded folded_mul(const Folded& a, const Folded& b, int r);
Folded folded_scale(const Scalar& c, const Folded& a);
Folded folded_sub(const Folded& a, const Folded& b, int r);

// (3.1) on any source index; the public twisted surface restricts to orbit
// representatives.
Folded fold_x_any(const CartanData& twisted, int sign, int src_index, int mode);
Folded fold_a_any(const CartanData& twisted, int src_index, int mode);
// Spec surface: folds a twisted generator given by an orbit representative.
Folded fold_x(const CartanData& twisted, int sign, int rep_index, int mode);
Folded fold_a(const CartanData& twisted, int rep_index, int mode);
Element fold_K(const CartanData& twisted, int rep_index, int exp);

// Commutator values granted by the untwisted relations, used to evaluate
// folded expressions without the rewrite engine.
Element aa_commutator(const CartanData& data, int i, int k, int j, int l);
Element ax_commutator(const CartanData& data, int i, int k, int sign, int j,
                      int l);

struct FoldCheck {
  bool ok = true;
  std::string detail;
  // per-line normalization factor as (sqrt r)^pow, recorded when nontrivial
  int extra_sqrt_pow = 0;
};

// Criterion-level folding checks for one twisted type.
FoldCheck check_fold_sigma_eigen(const CartanData& twisted, int mode_bound);
FoldCheck check_fold_aa(const CartanData& twisted, int i, int j, int k);
FoldCheck check_fold_ax(const CartanData& twisted, int i, int k, int j,
                        int sign, int l);

// Standard Omega images on the Drinfeld alphabet:
// x_i^{+-}(k) -> x_i^{-+}(-k), a_i(l) -> a_i(-l), K -> K^-1,
// gamma^{1/2} -> gamma^{-1/2}, q^d -> q^{-d}.
GenImages omega_images();

}  // namespace qaff
