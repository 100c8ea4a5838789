#pragma once

#include <string>
#include <vector>

#include "qaff/drinfeld.hpp"

namespace qaff {

struct ReductionConfig {
  long max_steps = 500000;
  bool enable_r5 = false;
  long r5_budget = 4000;
  bool check_measure = false;  // assert the termination measure per step
};

enum class ReduceStatus { ReducedToZero, NormalForm, BudgetExhausted };

// One certified rewrite: the engine subtracted coeff * left * inst * right,
// where inst is the relation instance rebuilt from (kind, params).
struct TraceStep {
  int rule = 0;  // 1..5
  RelationKind kind;
  std::vector<long> params;
  Scalar coeff;
  const Word* left;
  const Word* right;
};

struct ReductionOutcome {
  ReduceStatus status = ReduceStatus::NormalForm;
  Element result;
  std::vector<TraceStep> trace;
  long steps = 0;
  // normal form free of same-sign equal-index x pairs: nonzero is then
  // definitive in the layered basis
  bool definitive = false;
};

// Applies the (2.11) rules toward the layered order Qd < gamma < K < A(neg)
// < X < A(pos), class priority R1 > R2 > R3 > R4 > R5, leftmost first.
ReductionOutcome reduce(const CartanData& data, const Element& e,
                        const ReductionConfig& cfg = {});

struct ZeroCertificate {
  bool certified = false;
  ReductionOutcome outcome;
};

ZeroCertificate certify_zero(const CartanData& data, const Element& e,
                             const ReductionConfig& cfg = {});

// Recomputes sum coeff * left * instance * right; replaying a sound trace
// satisfies start - end == trace_sum.
Element trace_sum(const CartanData& data, const std::vector<TraceStep>& trace);

}  // namespace qaff
