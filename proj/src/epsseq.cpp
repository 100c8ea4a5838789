#include "qaff/epsseq.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qaff {

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string seq_str(const std::vector<int>& idx) {
  std::ostringstream os;
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? " " : "") << idx[i];
  return os.str();
}

struct PrintedRow {
  std::vector<int> indices;
  std::vector<Rat> labels;  // may be shorter/absent for garbled rows
  Rat eps;
  bool ambiguous = false;   // reconstruct via search
  std::string note;
};

PrintedRow printed_row(const AffineType& t, const CartanData& data) {
  PrintedRow row;
  int n = data.n;
  auto run = [&](int from, int to) {  // inclusive, either direction
    int step = from <= to ? 1 : -1;
    for (int i = from;; i += step) {
      row.indices.push_back(i);
      if (i == to) break;
    }
  };
  if (t.twist == 1) {
    switch (t.series) {
      case Series::A:
        run(1, n);
        row.labels.assign(n - 1, Rat(-1));
        row.eps = Rat(-n + 1);
        break;
      case Series::B:
        // printed row has length h-2; reconstructed by search
        run(1, n);
        if (n >= 3) run(n - 1, 2);
        row.eps = Rat(-2 * n + 4);
        row.ambiguous = true;
        row.note = "B_n row prints h-2 entries (duplicate alpha_n question)";
        break;
      case Series::C:
        run(1, n);
        if (n >= 3) run(n - 1, 2);
        row.indices.push_back(1);
        for (int k = 1; k <= 2 * n - 2; ++k) {
          if (k == n - 1)
            row.labels.push_back(Rat(-1));       // arrow into alpha_n
          else if (k == 2 * n - 2)
            row.labels.push_back(Rat(0));        // final arrow into alpha_1
          else
            row.labels.push_back(Rat(-1, 2));
        }
        row.eps = Rat(-n + 1);
        break;
      case Series::D:
        run(1, n);
        if (n >= 4) run(n - 2, 2);  // degenerate at n = 3
        row.labels.assign(row.indices.size() - 1, Rat(-1));
        row.eps = Rat(-2 * n + 4);
        break;
      case Series::E:
        if (n == 6) row.indices = {1, 2, 3, 4, 5, 6, 3, 2, 4, 3, 6};
        if (n == 7) row.indices = {1, 2, 3, 4, 5, 6, 7, 3, 2, 4, 5, 3, 4, 7, 3, 2, 1};
        if (n == 8)
          row.indices = {1, 2, 3, 4, 5, 6, 7, 8, 5, 4, 3, 2, 6, 5, 8,
                         4, 3, 5, 6, 7, 4, 5, 8, 6, 5, 4, 3, 2, 1};
        row.labels.assign(row.indices.size() - 1, Rat(-1));
        row.eps = n == 6 ? Rat(-10) : Rat(-16);  // E8 prints -16
        break;
      case Series::F:
        row.indices = {1, 2, 3, 4, 3, 2, 3, 4, 3, 2, 1};
        row.labels = {Rat(-1),     Rat(-1), Rat(-1, 2), Rat(-1, 2), Rat(-1),
                      Rat(-1),     Rat(-1), Rat(0),     Rat(-1),    Rat(-1)};
        row.eps = Rat(-7);
        break;
      case Series::G:
        row.indices = {1, 2, 2, 1, 2};
        row.labels = {Rat(-1), Rat(-1, 3), Rat(0), Rat(-2, 3)};
        row.eps = Rat(-2);
        break;
    }
    return row;
  }
  // twisted rows, on the folded index set
  if (t.series == Series::A && t.rank % 2 == 1) {  // A_{2n-1}^{(2)}
    run(1, n);
    if (n >= 3) run(n - 1, 2);
    for (size_t k = 1; k < row.indices.size(); ++k)
      row.labels.push_back(static_cast<int>(k) == n - 1 ? Rat(-2) : Rat(-1));
    row.eps = Rat(-2 * n + 2);
  } else if (t.series == Series::A) {  // A_{2n}^{(2)}: garbled at small n
    row.eps = Rat(-2 * n + 3);
    row.ambiguous = true;
    row.note = "A_2n^(2) row is ambiguous at the printed degeneracies";
  } else if (t.series == Series::D && t.twist == 2) {  // D_{n+1}^{(2)}
    run(n, 1);
    row.labels.assign(n - 1, Rat(-2));
    row.eps = Rat(-2 * n + 2);
  } else if (t.series == Series::D && t.twist == 3) {  // D_4^{(3)}
    row.indices = {1, 2, 1};
    row.labels = {Rat(-3), Rat(-1)};
    row.eps = Rat(-4);
  } else if (t.series == Series::E) {  // E_6^{(2)}: printed on unfolded nodes
    row.eps = Rat(-10);
    row.ambiguous = true;
    row.note = "E_6^(2) row reuses the unfolded E_6 indices";
  }
  return row;
}

}  // namespace

Rat theta_pairing(const CartanData& data, const std::vector<int>& theta, int j) {
  Rat v(0);
  for (int i = 1; i <= data.n; ++i)
    if (theta[i - 1]) v += Rat(theta[i - 1]) * data.bilinear(i, j);
  return v;
}

ValidationOutcome validate_sequence(const std::vector<int>& indices,
                                    const CartanData& data,
                                    const std::vector<Rat>* expect_labels) {
  ValidationOutcome out;
  if (indices.empty()) {
    out.message = "empty sequence";
    return out;
  }
  for (int i : indices)
    if (i < 1 || i > data.n) {
      out.message = "index out of range";
      return out;
    }
  std::vector<int> sum(data.n, 0);
  sum[indices[0] - 1] = 1;
  for (size_t k = 1; k < indices.size(); ++k) {
    int nxt = indices[k];
    Rat eps(0);
    for (int i = 1; i <= data.n; ++i)
      if (sum[i - 1]) eps += Rat(sum[i - 1]) * data.bilinear(i, nxt);
    out.labels.push_back(eps);
    if (eps > 0) {
      out.fail_pos = static_cast<int>(k);
      std::ostringstream os;
      os << "positive pairing " << rat_str(eps) << " at position " << k;
      out.message = os.str();
      return out;
    }
    sum[nxt - 1] += 1;
  }
  if (expect_labels) {
    if (*expect_labels != out.labels) {
      for (size_t k = 0; k < out.labels.size(); ++k) {
        if (k >= expect_labels->size() || (*expect_labels)[k] != out.labels[k]) {
          out.fail_pos = static_cast<int>(k + 1);
          out.message = "label mismatch at position " + std::to_string(k + 1);
          return out;
        }
      }
      out.fail_pos = 0;
      out.message = "label list length mismatch";
      return out;
    }
  }
  out.ok = true;
  return out;
}

std::vector<EpsilonSequence> search_sequence(const CartanData& data,
                                             const SeqConstraints& cons) {
  int length = cons.length.value_or(data.h - 1);
  std::set<std::vector<int>> roots;
  for (auto& r : positive_roots(data)) roots.insert(r);

  std::vector<EpsilonSequence> found;
  std::vector<int> idx;
  std::vector<Rat> labels;
  std::vector<int> sum(data.n, 0);

  std::function<void()> dfs = [&]() {
    if (static_cast<int>(found.size()) >= cons.cap) return;
    if (static_cast<int>(idx.size()) == length) {
      if (cons.theta && sum != *cons.theta) return;
      Rat tot(0);
      for (const auto& l : labels) tot += l;
      if (cons.eps_total && tot != *cons.eps_total) return;
      EpsilonSequence seq;
      seq.type = data.type;
      seq.indices = idx;
      seq.labels = labels;
      seq.eps_total = tot;
      seq.theta = sum;
      seq.reconstructed = true;
      found.push_back(std::move(seq));
      return;
    }
    for (int next = 1; next <= data.n; ++next) {
      if (idx.empty() && cons.first_index && next != *cons.first_index)
        continue;
      Rat eps(0);
      if (!idx.empty()) {
        for (int i = 1; i <= data.n; ++i)
          if (sum[i - 1]) eps += Rat(sum[i - 1]) * data.bilinear(i, next);
        if (eps > 0) continue;
      }
      sum[next - 1] += 1;
      bool keep = !cons.prune_to_roots || roots.count(sum) > 0;
      if (keep) {
        idx.push_back(next);
        if (!idx.empty() && idx.size() > 1) labels.push_back(eps);
        dfs();
        if (idx.size() > 1) labels.pop_back();
        idx.pop_back();
      }
      sum[next - 1] -= 1;
      if (static_cast<int>(found.size()) >= cons.cap) return;
    }
  };
  dfs();
  return found;
}

EpsilonSequence builtin_sequence(const CartanData& data) {
  const AffineType& t = data.type;
  PrintedRow row = printed_row(t, data);
  EpsilonSequence seq;
  seq.type = t;

  auto attach_label_checks = [&](EpsilonSequence& s, const PrintedRow& r) {
    if (!r.labels.empty() && r.indices == s.indices) {
      for (size_t k = 0; k < s.labels.size() && k < r.labels.size(); ++k) {
        if (s.labels[k] != r.labels[k]) {
          s.discrepancies.push_back(
              {"label " + std::to_string(k + 1) + " of " + t.str(),
               rat_str(r.labels[k]), rat_str(s.labels[k]),
               "Table 2.1/3.1 arrow label vs (2.12) pairing"});
        }
      }
    }
    if (s.eps_total != r.eps) {
      s.discrepancies.push_back({"epsilon total of " + t.str(),
                                 rat_str(r.eps), rat_str(s.eps_total),
                                 t.series == Series::E && t.rank == 8
                                     ? "Table 2.1 E8 prints -16; Remark gives "
                                       "eps = -h+2"
                                     : "table epsilon column"});
    }
  };

  if (!row.ambiguous) {
    auto val = validate_sequence(row.indices, data);
    if (!val.ok) {
      seq.indices = row.indices;
      seq.labels = val.labels;
      seq.valid = false;
      seq.discrepancies.push_back({"row of " + t.str(), seq_str(row.indices),
                                   "fails (2.12): " + val.message,
                                   "Table 2.1/3.1 row as printed"});
      return seq;
    }
    seq.indices = row.indices;
    seq.labels = val.labels;
    Rat tot(0);
    for (const auto& l : val.labels) tot += l;
    seq.eps_total = tot;
    seq.theta.assign(data.n, 0);
    for (int i : row.indices) seq.theta[i - 1] += 1;
    attach_label_checks(seq, row);
    seq.a = a_constant(data, seq);
    return seq;
  }

  // Reconstruction: constrain to the printed epsilon total and the type's
  // theta; relax the total if the constrained search is empty.
  SeqConstraints cons;
  cons.theta = data.theta;
  cons.eps_total = row.eps;
  if (t.twist == 1 && t.series == Series::B) cons.first_index = 1;
  auto hits = search_sequence(data, cons);
  if (hits.empty()) {
    cons.eps_total.reset();
    hits = search_sequence(data, cons);
  }
  if (hits.empty()) {
    cons.first_index.reset();
    hits = search_sequence(data, cons);
  }
  if (hits.empty()) {
    seq.indices = row.indices;
    seq.valid = false;
    seq.reconstructed = true;
    seq.discrepancies.push_back(
        {"row of " + t.str(), row.note,
         "search exhausted: no (2.12)-valid sequence reaches theta",
         "Lemma 2.1 existence claim"});
    return seq;
  }
  seq = hits.front();
  seq.discrepancies.push_back({"row of " + t.str(), row.note,
                               "reconstructed: " + seq_str(seq.indices),
                               "Table 2.1/3.1 row as printed"});
  if (seq.eps_total != row.eps)
    seq.discrepancies.push_back({"epsilon total of " + t.str(),
                                 rat_str(row.eps), rat_str(seq.eps_total),
                                 "table epsilon column"});
  seq.a = a_constant(data, seq);
  return seq;
}

std::optional<Scalar> a_constant(const CartanData& data,
                                 const EpsilonSequence& seq) {
  const AffineType& t = data.type;
  int n = t.rank;
  if (t.twist == 1) {
    switch (t.series) {
      case Series::A:
      case Series::D:
      case Series::E:
        return Scalar(1);
      case Series::C:
        return q_int(2, data.d[1]);  // [2]_1
      case Series::B: {
        // a = [2]^{1 - delta_{1, i_1}}
        if (seq.indices.empty()) return std::nullopt;
        return seq.indices.front() == 1 ? Scalar(1) : q_int(2, Rat(1));
      }
      default:
        return std::nullopt;  // F4, G2: no printed value
    }
  }
  if (t.series == Series::A && n % 2 == 1) return Scalar(-2);
  if (t.series == Series::D && t.twist == 2) {
    // (-2)^{n+1} with folded rank n
    Scalar r(1);
    for (int k = 0; k < data.n + 1; ++k) r *= Scalar(-2);
    return r;
  }
  if (t.series == Series::A) {
    // -[2]^{2n-2} with folded rank n
    Scalar r(-1);
    for (int k = 0; k < 2 * data.n - 2; ++k) r *= q_int(2, Rat(1));
    return r;
  }
  if (t.series == Series::D && t.twist == 3) return Scalar(3);
  return std::nullopt;  // E6^(2) blank
}

}  // namespace qaff
