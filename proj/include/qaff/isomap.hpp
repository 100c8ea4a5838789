#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaff/epsseq.hpp"
#include "qaff/reduce.hpp"

namespace qaff {

struct ChevalleyImage {
  AffineType type;
  EpsilonSequence seq;
  std::vector<Element> E, F, t;  // indexed 0..n
  Element qd_im;
  Element e0_bracket, f0_bracket;  // x-only bracket parts
  Scalar a{1};
  bool a_unspecified = false;
  Scalar f0_prefactor{1};          // a (-q)^{-eps}
  std::vector<Scalar> p;           // p_i, 1-indexed at [i-1]
  std::vector<Discrepancy> discrepancies;
};

// Images of (2.16); the sequence must validate.
ChevalleyImage chevalley_images(const EpsilonSequence& seq,
                                const CartanData& data);
// Theorem 3.2 images with Table 3.1 constants and p_i solved from the
// twisted mixed relation (p_i = r for sigma-fixed i, 1 otherwise).
ChevalleyImage twisted_images(const EpsilonSequence& seq,
                              const CartanData& twisted);

struct Goal {
  std::string name;
  Element el;  // expected zero in U
};

// The (2.5) relations with E/F/t substituted, as LHS - RHS elements.
// Serre goals with nonintegral affine Cartan entries are skipped.
std::vector<Goal> goal_relations(const ChevalleyImage& img,
                                 const CartanData& data);

struct InverseFormula {
  std::string name;
  Element target;           // the generator to regenerate
  Element expression;       // Chevalley-side expression, before the constant
  std::optional<Scalar> solved;  // constant with target = solved * expression
  std::string status;       // "resolved" | "exact" | "inconclusive"
};

// Step-2 regeneration formulas with constants solved by coefficient
// matching on the reduced normal form.
std::vector<InverseFormula> inverse_generators(const ChevalleyImage& img,
                                               const CartanData& data);

// K_theta as a sorted K-word with the given exponent sign.
Element k_theta_word(const CartanData& data, const EpsilonSequence& seq,
                     int exp);
Element gamma_word(int halves);

}  // namespace qaff
