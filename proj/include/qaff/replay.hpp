#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qaff/isomap.hpp"

namespace qaff {

// Verification checkpoint: the R1-R4 normal form of `expr` must equal the
// current state exactly.
struct StepCheckpoint {
  Element expr;
  std::string note;
};

// Verifies that the cited bracket identity instance expands to zero in the
// free algebra; documents the manipulation, state unchanged.
struct StepIdentity {
  IdentityKind id;
  IdentityBindings bind;
  std::string note;
};

// state -= coeff * left * instance * right, then renormalize.
struct StepAddRelation {
  RelationKind kind;
  std::vector<long> params;
  Scalar coeff;
  Element left, right;
};

// Same with a previously certified goal of this run.
struct StepUsePrior {
  std::string goal;
  Scalar coeff;
  Element left, right;
};

// Renormalize by R1-R4 (recording every rewrite).
struct StepReduce {};

using Step = std::variant<StepCheckpoint, StepIdentity, StepAddRelation,
                          StepUsePrior, StepReduce>;

struct Derivation {
  std::string name;
  AffineType type;
  Element start;
  std::vector<Step> steps;
  Element expect;
  std::vector<Discrepancy> discrepancies;  // endpoint-constant reports etc.
};

// One relation multiple consumed by a replay; summing them reconstructs
// start - end exactly.
struct CertEntry {
  bool is_prior = false;
  RelationKind kind = RelationKind::KK;
  std::vector<long> params;
  std::string prior;
  Scalar coeff;
  const Word* left;
  const Word* right;
};

struct Certificate {
  std::string name;
  bool ok = false;
  int failed_step = -1;  // 0-based step index, -2 for final mismatch
  std::string message;
  Element start, end;
  std::vector<CertEntry> entries;
};

struct ReplayContext {
  // goal name -> element certified zero in U
  std::map<std::string, Element> priors;
};

Certificate replay(const CartanData& data, const Derivation& d,
                   ReplayContext& ctx);

// Independent re-summation of the certificate's relation multiples.
Element certificate_sum(const CartanData& data, const ReplayContext& ctx,
                        const Certificate& cert);

// Canonical serialization of a certificate (byte-stable across runs).
std::string certificate_text(const Certificate& cert);

// ------------------------------------------------------- authoring solver

struct PoolItem {
  bool is_prior = false;
  RelationKind kind = RelationKind::KK;
  std::vector<long> params;
  std::string prior;
  Element el;  // the relation instance / certified-zero element
};

// Eliminates every x-bearing word of `state` (already R1-R4 normal) by
// certified multiples from the pool: greedy leading-word elimination with an
// exact linear-algebra fallback. Returns the steps, or nullopt.
std::optional<std::vector<Step>> eliminate_x_words(
    const CartanData& data, const Element& state,
    const std::vector<PoolItem>& pool, int max_iters = 400);

// Pool generators.
std::vector<PoolItem> serre_pool(const CartanData& data, int sign,
                                 int mode_lo, int mode_hi);
std::vector<PoolItem> xxsame_pool(const CartanData& data, int sign,
                                  int mode_lo, int mode_hi);

// JSON (de)serialization of derivations per the documented schema.
std::string derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const std::string& text);

}  // namespace qaff
