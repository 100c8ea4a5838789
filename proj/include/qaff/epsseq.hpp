#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaff/cartan.hpp"

namespace qaff {

struct Discrepancy {
  std::string where;
  std::string printed;
  std::string computed;
  std::string citation;
};

struct EpsilonSequence {
  AffineType type;
  std::vector<int> indices;        // i_1 .. i_{h-1}
  std::vector<Rat> labels;         // computed via (2.12)
  Rat eps_total;                   // sum of labels
  std::vector<int> theta;          // sum of alpha_{i_j}
  std::optional<Scalar> a;         // constant a; nullopt = unspecified
  bool reconstructed = false;
  bool valid = true;               // false when no valid row exists
  std::vector<Discrepancy> discrepancies;
};

struct ValidationOutcome {
  bool ok = false;
  std::vector<Rat> labels;
  int fail_pos = -1;  // 1-based position k of the first bad pairing
  std::string message;
};

// Computes the (2.12) pairings (alpha_{i_1}+...+alpha_{i_k} | alpha_{i_{k+1}})
// and checks they are all <= 0; with expect_labels, exact equality too.
ValidationOutcome validate_sequence(const std::vector<int>& indices,
                                    const CartanData& data,
                                    const std::vector<Rat>* expect_labels = nullptr);

struct SeqConstraints {
  std::optional<int> length;               // default h-1
  std::optional<std::vector<int>> theta;   // target partial-sum endpoint
  std::optional<Rat> eps_total;
  std::optional<int> first_index;
  int cap = 1;                             // max sequences returned
  bool prune_to_roots = true;
};

// Depth-first lexicographic search maintaining (2.12) nonpositivity and
// root-system membership of partial sums.
std::vector<EpsilonSequence> search_sequence(const CartanData& data,
                                             const SeqConstraints& cons);

// The Table 2.1 / 3.1 row, verbatim where it is unambiguous, reconstructed
// by constrained search where it is not; printed-versus-computed label and
// total mismatches are attached as discrepancy records.
EpsilonSequence builtin_sequence(const CartanData& data);

// Constant a of Theorem 2.2 / Table 3.1; nullopt where no value is given
// (E6^(2), F4^(1), G2^(1)).
std::optional<Scalar> a_constant(const CartanData& data,
                                 const EpsilonSequence& seq);

Rat theta_pairing(const CartanData& data, const std::vector<int>& theta, int j);

}  // namespace qaff
