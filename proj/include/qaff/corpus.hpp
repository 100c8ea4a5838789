#pragma once

#include "qaff/replay.hpp"

namespace qaff {

struct CorpusEntry {
  Derivation derivation;
  std::string certifies;  // goal name from goal_relations, or ""
};

// Derivations bundled for one algebra, in replay (dependency) order.
// Authored mechanically: the elimination steps are produced by the solver
// and frozen into the derivation; replay re-verifies every one of them.
const std::vector<CorpusEntry>& bundled_corpus(const AffineType& type);

// Types with a bundled corpus.
std::vector<AffineType> corpus_types();

// Replays every derivation for `type` in order, threading priors.
struct CorpusRun {
  bool ok = true;
  std::vector<Certificate> certificates;
  ReplayContext ctx;
  std::vector<Discrepancy> discrepancies;
};
CorpusRun run_corpus(const AffineType& type);

}  // namespace qaff
