#include "qaff/replay.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <sstream>

#include <json.hpp>

namespace qaff {

namespace {

// graded word order used for leading-word elimination:
// (x count, length, lexicographic)
struct GradedLess {
  bool operator()(const Word* a, const Word* b) const {
    long xa = 0, xb = 0;
    for (const auto& g : *a) xa += g.kind == GK::X;
    for (const auto& g : *b) xb += g.kind == GK::X;
    if (xa != xb) return xa < xb;
    if (a->size() != b->size()) return a->size() < b->size();
    return std::lexicographical_compare(a->begin(), a->end(), b->begin(),
                                        b->end());
  }
};

long x_count(const Word& w) {
  long c = 0;
  for (const auto& g : w) c += g.kind == GK::X;
  return c;
}

const Word* leading_word(const Element& e) {
  const Word* best = nullptr;
  GradedLess less;
  for (const auto& [w, c] : e.terms())
    if (!best || less(best, w)) best = w;
  return best;
}

const Word* leading_x_word(const Element& e) {
  const Word* best = nullptr;
  GradedLess less;
  for (const auto& [w, c] : e.terms()) {
    if (x_count(*w) == 0) continue;
    if (!best || less(best, w)) best = w;
  }
  return best;
}

void merge_trace(const CartanData& data, Certificate& cert,
                 const std::vector<TraceStep>& trace) {
  for (const auto& st : trace) {
    CertEntry e;
    e.kind = st.kind;
    e.params = st.params;
    e.coeff = st.coeff;
    e.left = st.left;
    e.right = st.right;
    cert.entries.push_back(std::move(e));
  }
  (void)data;
}

Element normalize(const CartanData& data, const Element& e,
                  std::vector<TraceStep>* trace_out) {
  ReductionConfig cfg;
  auto out = reduce(data, e, cfg);
  if (out.status == ReduceStatus::BudgetExhausted)
    throw std::runtime_error("replay: reduction budget exhausted");
  if (trace_out)
    trace_out->insert(trace_out->end(), out.trace.begin(), out.trace.end());
  return out.result;
}

}  // namespace

Certificate replay(const CartanData& data, const Derivation& d,
                   ReplayContext& ctx) {
  Certificate cert;
  cert.name = d.name;
  cert.start = d.start;

  std::vector<TraceStep> trace;
  Element state = normalize(data, d.start, &trace);
  merge_trace(data, cert, trace);

  int index = 0;
  for (const auto& step : d.steps) {
    trace.clear();
    bool ok = true;
    std::string msg;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, StepCheckpoint>) {
            Element want = normalize(data, s.expr, nullptr);
            if (!(want == state)) {
              ok = false;
              msg = "checkpoint mismatch; difference = " +
                    (state - want).str();
            }
          } else if constexpr (std::is_same_v<T, StepIdentity>) {
            Element diff = check_identity(s.id, s.bind);
            if (!diff.is_zero()) {
              ok = false;
              msg = "identity instance failed: " + diff.str();
            }
          } else if constexpr (std::is_same_v<T, StepAddRelation>) {
            RelationInstance inst =
                data.twisted() ? twisted_relation(data, s.kind, s.params)
                               : relation(data, s.kind, s.params);
            Element delta = s.coeff * (s.left * inst.el * s.right);
            for (const auto& [lw, lc] : s.left.terms())
              for (const auto& [rw, rc] : s.right.terms()) {
                CertEntry e;
                e.kind = s.kind;
                e.params = s.params;
                e.coeff = s.coeff * lc * rc;
                e.left = lw;
                e.right = rw;
                cert.entries.push_back(std::move(e));
              }
            state = normalize(data, state - delta, &trace);
            merge_trace(data, cert, trace);
          } else if constexpr (std::is_same_v<T, StepUsePrior>) {
            auto it = ctx.priors.find(s.goal);
            if (it == ctx.priors.end()) {
              ok = false;
              msg = "prior goal not certified in this run: " + s.goal;
              return;
            }
            Element delta = s.coeff * (s.left * it->second * s.right);
            for (const auto& [lw, lc] : s.left.terms())
              for (const auto& [rw, rc] : s.right.terms()) {
                CertEntry e;
                e.is_prior = true;
                e.prior = s.goal;
                e.coeff = s.coeff * lc * rc;
                e.left = lw;
                e.right = rw;
                cert.entries.push_back(std::move(e));
              }
            state = normalize(data, state - delta, &trace);
            merge_trace(data, cert, trace);
          } else if constexpr (std::is_same_v<T, StepReduce>) {
            state = normalize(data, state, &trace);
            merge_trace(data, cert, trace);
          }
        },
        step);
    if (!ok) {
      cert.failed_step = index;
      cert.message = msg;
      cert.end = state;
      return cert;
    }
    ++index;
  }

  Element want = normalize(data, d.expect, nullptr);
  cert.end = state;
  if (!(want == state)) {
    cert.failed_step = -2;
    cert.message = "final state differs from expected; difference = " +
                   (state - want).str();
    return cert;
  }
  cert.ok = true;
  return cert;
}

Element certificate_sum(const CartanData& data, const ReplayContext& ctx,
                        const Certificate& cert) {
  Element total;
  for (const auto& e : cert.entries) {
    Element inst;
    if (e.is_prior) {
      inst = ctx.priors.at(e.prior);
    } else {
      inst = data.twisted() ? twisted_relation(data, e.kind, e.params).el
                            : relation(data, e.kind, e.params).el;
    }
    total += e.coeff * (Element::word(*e.left) * inst * Element::word(*e.right));
  }
  return total;
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream os;
  os << "certificate " << cert.name << " ok=" << cert.ok << "\n";
  os << "start " << cert.start.str() << "\n";
  os << "end " << cert.end.str() << "\n";
  for (const auto& e : cert.entries) {
    if (e.is_prior) {
      os << "prior:" << e.prior;
    } else {
      RelationInstance inst;
      inst.kind = e.kind;
      inst.p = e.params;
      os << inst.label();
    }
    os << " coeff " << e.coeff.str() << " left "
       << Element::word(*e.left).str() << " right "
       << Element::word(*e.right).str() << "\n";
  }
  return os.str();
}

// ----------------------------------------------------------------- solver

namespace {

struct Candidate {
  size_t pool_index;
  Word left, right;
  std::map<const Word*, Scalar, WordPtrLess> col;  // x-words of the multiple
  Element full;
};

// Exact sparse row-reduction solving sum_i c_i cand_i = target over the
// x-bearing words; free variables are set to zero.
std::optional<std::vector<std::pair<size_t, Scalar>>> linear_solve(
    const std::vector<Candidate>& cands,
    const std::map<const Word*, Scalar, WordPtrLess>& target) {
  // rows indexed by word: sparse map candidate-index -> coeff, plus rhs
  struct Row {
    std::map<size_t, Scalar> a;
    Scalar b{0};
  };
  std::map<const Word*, Row, WordPtrLess> rows;
  for (size_t i = 0; i < cands.size(); ++i)
    for (const auto& [w, v] : cands[i].col) rows[w].a[i] = v;
  for (const auto& [w, v] : target) rows[w].b = v;

  std::vector<Row> mat;
  mat.reserve(rows.size());
  for (auto& [w, r] : rows) mat.push_back(std::move(r));

  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
  std::vector<char> col_used(cands.size(), 0);
  for (size_t r = 0; r < mat.size(); ++r) {
    // pivot on the sparsest available column of this row
    size_t pc = SIZE_MAX, best_nnz = SIZE_MAX;
    for (const auto& [c, v] : mat[r].a) {
      if (col_used[c] || v.is_zero()) continue;
      size_t nnz = 0;
      for (const auto& m : mat)
        if (m.a.count(c)) ++nnz;
      if (nnz < best_nnz) {
        best_nnz = nnz;
        pc = c;
      }
    }
    if (pc == SIZE_MAX) {
      if (!mat[r].b.is_zero()) return std::nullopt;  // inconsistent
      continue;
    }
    col_used[pc] = 1;
    Scalar inv = mat[r].a.at(pc).inverse();
    for (auto& [c, v] : mat[r].a) v = v * inv;
    mat[r].b = mat[r].b * inv;
    for (size_t r2 = 0; r2 < mat.size(); ++r2) {
      if (r2 == r) continue;
      auto it = mat[r2].a.find(pc);
      if (it == mat[r2].a.end() || it->second.is_zero()) continue;
      Scalar f = it->second;
      for (const auto& [c, v] : mat[r].a) {
        auto jt = mat[r2].a.find(c);
        Scalar nv = (jt == mat[r2].a.end() ? Scalar(0) : jt->second) - f * v;
        if (nv.is_zero()) {
          if (jt != mat[r2].a.end()) mat[r2].a.erase(jt);
        } else {
          mat[r2].a[c] = nv;
        }
      }
      mat[r2].b = mat[r2].b - f * mat[r].b;
    }
    pivots.push_back({r, pc});
  }
  std::vector<std::pair<size_t, Scalar>> out;
  for (auto& [r, c] : pivots)
    if (!mat[r].b.is_zero()) out.push_back({c, mat[r].b});
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// Linear-algebra closure: candidates are reduced multiples L * G * R whose
// factor word occurs in the current word set; the closure is iterated a few
// rounds so chains through intermediate words are found.
std::optional<std::vector<Step>> gaussian_close(
    const CartanData& data, const Element& state,
    const std::vector<PoolItem>& pool) {
  ReductionConfig cfg;
  std::set<const Word*> words;
  std::map<const Word*, Scalar, WordPtrLess> target;
  for (const auto& [w, c] : state.terms())
    if (x_count(*w)) {
      words.insert(w);
      target[w] = c;
    }
  if (target.empty()) return std::vector<Step>{};

  std::vector<Candidate> cands;
  std::set<std::tuple<size_t, const Word*, const Word*>> seen;
  std::set<const Word*> expanded;

  for (int round = 0; round < 3; ++round) {
    std::vector<const Word*> frontier;
    for (const Word* w : words)
      if (!expanded.count(w)) frontier.push_back(w);
    if (frontier.empty()) break;
    for (const Word* w : frontier) {
      expanded.insert(w);
      for (size_t gi = 0; gi < pool.size(); ++gi) {
        for (const auto& [mw, mc] : pool[gi].el.terms()) {
          if (!x_count(*mw)) continue;
          const Word& m = *mw;
          if (m.empty() || m.size() > w->size()) continue;
          for (size_t pos = 0; pos + m.size() <= w->size(); ++pos) {
            if (!std::equal(m.begin(), m.end(), w->begin() + pos)) continue;
            Word L(w->begin(), w->begin() + pos);
            Word R(w->begin() + pos + m.size(), w->end());
            auto key = std::make_tuple(gi, intern(L), intern(R));
            if (!seen.insert(key).second) continue;
            Candidate c;
            c.pool_index = gi;
            c.left = L;
            c.right = R;
            c.full = reduce(data,
                            Element::word(L) * pool[gi].el * Element::word(R),
                            cfg)
                         .result;
            for (const auto& [fw, fc] : c.full.terms())
              if (x_count(*fw)) c.col[fw] = fc;
            if (c.col.empty()) continue;
            cands.push_back(std::move(c));
            if (cands.size() > 8000) break;
          }
          if (cands.size() > 8000) break;
        }
        if (cands.size() > 8000) break;
      }
      if (cands.size() > 8000) break;
    }
    for (const auto& c : cands)
      for (const auto& [fw, fc] : c.col) words.insert(fw);

    auto sol = linear_solve(cands, target);
    if (sol) {
      std::vector<Step> steps;
      for (const auto& [idx, coeff] : *sol) {
        const Candidate& c = cands[idx];
        if (pool[c.pool_index].is_prior)
          steps.push_back(StepUsePrior{pool[c.pool_index].prior, coeff,
                                       Element::word(c.left),
                                       Element::word(c.right)});
        else
          steps.push_back(StepAddRelation{
              pool[c.pool_index].kind, pool[c.pool_index].params, coeff,
              Element::word(c.left), Element::word(c.right)});
      }
      return steps;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Step>> eliminate_x_words(
    const CartanData& data, const Element& start,
    const std::vector<PoolItem>& pool, int max_iters) {
  std::vector<Step> steps;
  Element state = start;
  GradedLess less;

  struct Lead {
    const Word* w;
    Scalar c;
  };
  std::vector<Lead> leads;
  for (const auto& item : pool) {
    const Word* lw = leading_word(item.el);
    if (!lw) throw std::invalid_argument("solver: zero pool element");
    leads.push_back({lw, item.el.coeff(*lw)});
  }

  auto push_step = [&](size_t gi, const Scalar& coeff, const Word& L,
                       const Word& R) {
    if (pool[gi].is_prior)
      steps.push_back(StepUsePrior{pool[gi].prior, coeff, Element::word(L),
                                   Element::word(R)});
    else
      steps.push_back(StepAddRelation{pool[gi].kind, pool[gi].params, coeff,
                                      Element::word(L), Element::word(R)});
  };

  ReductionConfig cfg;
  for (int iter = 0; iter < max_iters; ++iter) {
    const Word* w = leading_x_word(state);
    if (!w) return steps;  // every x word eliminated
    Scalar cw = state.terms().at(w);
    bool applied = false;
    // phase 0 matches pool leading words only; phase 1 admits any word of a
    // pool element, still requiring strict progress on the leading x word
    for (int phase = 0; phase < 2 && !applied; ++phase) {
      for (size_t gi = 0; gi < pool.size() && !applied; ++gi) {
        std::vector<std::pair<const Word*, Scalar>> factors;
        if (phase == 0) {
          factors.push_back({leads[gi].w, leads[gi].c});
        } else {
          for (const auto& [mw, mc] : pool[gi].el.terms())
            if (mw != leads[gi].w && x_count(*mw) > 0)
              factors.push_back({mw, mc});
        }
        for (const auto& [mptr, mcoeff] : factors) {
          const Word& m = *mptr;
          if (m.empty() || m.size() > w->size()) continue;
          for (size_t pos = 0; pos + m.size() <= w->size() && !applied;
               ++pos) {
            if (!std::equal(m.begin(), m.end(), w->begin() + pos)) continue;
            Word L(w->begin(), w->begin() + pos);
            Word R(w->begin() + pos + m.size(), w->end());
            Scalar coeff = cw / mcoeff;
            Element delta =
                coeff * (Element::word(L) * pool[gi].el * Element::word(R));
            Element next = reduce(data, state - delta, cfg).result;
            const Word* nw = leading_x_word(next);
            if (nw && !less(nw, w)) continue;  // no progress with this factor
            push_step(gi, coeff, L, R);
            state = next;
            applied = true;
          }
        }
      }
    }
    if (!applied) {
      auto rest = gaussian_close(data, state, pool);
      if (!rest) return std::nullopt;
      for (auto& s : *rest) steps.push_back(std::move(s));
      return steps;
    }
  }
  return std::nullopt;
}

std::vector<PoolItem> serre_pool(const CartanData& data, int sign, int mode_lo,
                                 int mode_hi) {
  std::vector<PoolItem> pool;
  for (int i = 1; i <= data.n; ++i)
    for (int j = 1; j <= data.n; ++j) {
      if (i == j) continue;
      Rat aij = data.cartan_entry(i, j);
      long m = 1 - static_cast<long>(numerator(aij).convert_to<long long>());
      if (m == 1) {
        if (i > j) continue;  // one orientation suffices for commuting pairs
        for (int l = mode_lo; l <= mode_hi; ++l)
          for (int n = mode_lo; n <= mode_hi; ++n) {
            PoolItem it;
            it.kind = RelationKind::Serre;
            it.params = {i, j, sign, n, l};
            it.el = relation(data, it.kind, it.params).el;
            pool.push_back(std::move(it));
          }
        continue;
      }
      // mode tuples l_1 <= ... <= l_m over the window
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      std::function<void(int)> gen = [&](int from) {
        if (static_cast<long>(cur.size()) == m) {
          tuples.push_back(cur);
          return;
        }
        for (int v = from; v <= mode_hi; ++v) {
          cur.push_back(v);
          gen(v);
          cur.pop_back();
        }
      };
      gen(mode_lo);
      for (const auto& tup : tuples)
        for (int n = mode_lo; n <= mode_hi; ++n) {
          PoolItem it;
          it.kind = RelationKind::Serre;
          it.params = {i, j, sign, n};
          for (int v : tup) it.params.push_back(v);
          it.el = relation(data, it.kind, it.params).el;
          pool.push_back(std::move(it));
        }
    }
  return pool;
}

std::vector<PoolItem> xxsame_pool(const CartanData& data, int sign,
                                  int mode_lo, int mode_hi) {
  std::vector<PoolItem> pool;
  for (int i = 1; i <= data.n; ++i)
    for (int j = 1; j <= data.n; ++j) {
      if (data.bilinear(i, j) == 0 && i != j) continue;
      for (int k = mode_lo; k <= mode_hi; ++k)
        for (int l = mode_lo; l <= mode_hi; ++l) {
          PoolItem it;
          it.kind = RelationKind::XXSame;
          it.params = {i, j, sign, k, l};
          it.el = relation(data, it.kind, it.params).el;
          pool.push_back(std::move(it));
        }
    }
  return pool;
}

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json step_to_json(const Step& step) {
  nlohmann::json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StepCheckpoint>) {
          j["kind"] = "checkpoint";
          j["params"] = {{"expr", element_str(s.expr)}, {"note", s.note}};
        } else if constexpr (std::is_same_v<T, StepIdentity>) {
          j["kind"] = "bracket_identity";
          nlohmann::json p;
          switch (s.id) {
            case IdentityKind::Id213: p["id"] = "2.13"; break;
            case IdentityKind::Id214: p["id"] = "2.14"; break;
            case IdentityKind::ProductRule1: p["id"] = "product1"; break;
            case IdentityKind::ProductRule2: p["id"] = "product2"; break;
            case IdentityKind::LeibnizSum: p["id"] = "leibniz"; break;
            case IdentityKind::Sym215: p["id"] = "2.15sym"; break;
            case IdentityKind::Antimorphism: p["id"] = "antimorphism"; break;
          }
          p["a"] = element_str(s.bind.a);
          p["b"] = element_str(s.bind.b);
          p["c"] = element_str(s.bind.c);
          p["u"] = s.bind.u.str();
          p["v"] = s.bind.v.str();
          p["x"] = s.bind.x.str();
          p["note"] = s.note;
          j["params"] = p;
        } else if constexpr (std::is_same_v<T, StepAddRelation>) {
          j["kind"] = "add_relation";
          RelationInstance inst;
          inst.kind = s.kind;
          inst.p = s.params;
          j["params"] = {{"relation", inst.label()},
                         {"coeff", s.coeff.str()}};
          j["position"] = {{"left", element_str(s.left)},
                           {"right", element_str(s.right)}};
        } else if constexpr (std::is_same_v<T, StepUsePrior>) {
          j["kind"] = "use_prior";
          j["params"] = {{"goal", s.goal}, {"coeff", s.coeff.str()}};
          j["position"] = {{"left", element_str(s.left)},
                           {"right", element_str(s.right)}};
        } else if constexpr (std::is_same_v<T, StepReduce>) {
          j["kind"] = "reduce";
          j["params"] = nlohmann::json::object();
        }
      },
      step);
  return j;
}

RelationKind kind_from_label(const std::string& name) {
  static const std::map<std::string, RelationKind> table = {
      {"KK", RelationKind::KK},       {"KInv", RelationKind::KInv},
      {"GammaInv", RelationKind::GammaInv},
      {"QdInv", RelationKind::QdInv},
      {"GammaCentral", RelationKind::GammaCentral},
      {"AA", RelationKind::AA},       {"AK", RelationKind::AK},
      {"DK", RelationKind::DK},       {"DX", RelationKind::DX},
      {"DA", RelationKind::DA},       {"KX", RelationKind::KX},
      {"AX", RelationKind::AX},       {"XXSame", RelationKind::XXSame},
      {"XXMixed", RelationKind::XXMixed},
      {"Serre", RelationKind::Serre}};
  auto it = table.find(name);
  if (it == table.end())
    throw std::invalid_argument("unknown relation kind: " + name);
  return it->second;
}

Step step_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind");
  if (kind == "checkpoint") {
    StepCheckpoint s;
    s.expr = parse_element(j.at("params").at("expr"));
    s.note = j.at("params").value("note", "");
    return s;
  }
  if (kind == "bracket_identity") {
    StepIdentity s;
    auto p = j.at("params");
    std::string id = p.at("id");
    if (id == "2.13") s.id = IdentityKind::Id213;
    else if (id == "2.14") s.id = IdentityKind::Id214;
    else if (id == "product1") s.id = IdentityKind::ProductRule1;
    else if (id == "product2") s.id = IdentityKind::ProductRule2;
    else if (id == "leibniz") s.id = IdentityKind::LeibnizSum;
    else if (id == "2.15sym") s.id = IdentityKind::Sym215;
    else if (id == "antimorphism") s.id = IdentityKind::Antimorphism;
    else throw std::invalid_argument("unknown identity id: " + id);
    s.bind.a = parse_element(p.value("a", "0"));
    s.bind.b = parse_element(p.value("b", "0"));
    s.bind.c = parse_element(p.value("c", "0"));
    s.bind.u = parse_scalar(p.value("u", "0"));
    s.bind.v = parse_scalar(p.value("v", "0"));
    s.bind.x = parse_scalar(p.value("x", "1"));
    s.note = p.value("note", "");
    return s;
  }
  if (kind == "add_relation") {
    StepAddRelation s;
    std::string rel = j.at("params").at("relation");
    size_t lp = rel.find('(');
    s.kind = kind_from_label(rel.substr(0, lp));
    std::string args = rel.substr(lp + 1, rel.size() - lp - 2);
    std::istringstream is(args);
    std::string tok;
    while (std::getline(is, tok, ',')) s.params.push_back(std::stol(tok));
    s.coeff = parse_scalar(j.at("params").at("coeff"));
    s.left = parse_element(j.at("position").at("left"));
    s.right = parse_element(j.at("position").at("right"));
    return s;
  }
  if (kind == "use_prior") {
    StepUsePrior s;
    s.goal = j.at("params").at("goal");
    s.coeff = parse_scalar(j.at("params").at("coeff"));
    s.left = parse_element(j.at("position").at("left"));
    s.right = parse_element(j.at("position").at("right"));
    return s;
  }
  if (kind == "reduce") return StepReduce{};
  throw std::invalid_argument("unknown step kind: " + kind);
}

}  // namespace

std::string derivation_to_json(const Derivation& d) {
  nlohmann::json j;
  j["name"] = d.name;
  j["type"] = d.type.str();
  j["start"] = {{"expr", element_str(d.start)}};
  j["steps"] = nlohmann::json::array();
  for (const auto& s : d.steps) j["steps"].push_back(step_to_json(s));
  j["expect"] = element_str(d.expect);
  return j.dump(2);
}

Derivation derivation_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Derivation d;
  d.name = j.at("name");
  d.type = parse_type(j.at("type"));
  d.start = parse_element(j.at("start").at("expr"));
  for (const auto& js : j.at("steps")) d.steps.push_back(step_from_json(js));
  d.expect = parse_element(j.at("expect"));
  return d;
}

}  // namespace qaff
