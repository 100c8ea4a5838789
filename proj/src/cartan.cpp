#include "qaff/cartan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qaff {

namespace {

struct Diagram {
  int n;
  std::vector<std::pair<int, int>> edges;  // 1-based
  std::vector<Rat> d;                      // 1-based at [i-1]
};

bool valid_untwisted(Series s, int n) {
  switch (s) {
    case Series::A: return n >= 1;
    case Series::B: return n >= 2;
    case Series::C: return n >= 2;
    case Series::D: return n >= 3;
    case Series::E: return n >= 6 && n <= 8;
    case Series::F: return n == 4;
    case Series::G: return n == 2;
  }
  return false;
}

Diagram finite_diagram(Series s, int n) {
  Diagram g;
  g.n = n;
  auto chain = [&](int upto) {
    for (int i = 1; i < upto; ++i) g.edges.push_back({i, i + 1});
  };
  g.d.assign(n, Rat(1));
  switch (s) {
    case Series::A:
      chain(n);
      break;
    case Series::B:  // d_n = 1/2 (paper's B_n^{(1)} list)
      chain(n);
      g.d[n - 1] = Rat(1, 2);
      break;
    case Series::C:  // middle nodes short, alpha_n long
      chain(n);
      for (int i = 1; i < n; ++i) g.d[i - 1] = Rat(1, 2);
      break;
    case Series::D:
      if (n == 3) {  // center node 1, so that sigma fixes 1 and swaps 2,3
        g.edges = {{1, 2}, {1, 3}};
      } else {
        chain(n - 1);
        g.edges.push_back({n - 2, n});
      }
      break;
    case Series::E:
      chain(n - 1);
      g.edges.push_back({n == 6 ? 3 : (n == 7 ? 3 : 5), n});
      break;
    case Series::F:
      chain(4);
      g.d[2] = g.d[3] = Rat(1, 2);
      break;
    case Series::G:
      g.edges = {{1, 2}};
      g.d[1] = Rat(1, 3);
      break;
  }
  return g;
}

// (alpha_i|alpha_j) on an edge is -max(d_i, d_j) for every diagram above.
std::vector<std::vector<Rat>> finite_bilinear(const Diagram& g) {
  std::vector<std::vector<Rat>> b(g.n, std::vector<Rat>(g.n, Rat(0)));
  for (int i = 0; i < g.n; ++i) b[i][i] = 2 * g.d[i];
  for (auto [i, j] : g.edges) {
    Rat v = -std::max(g.d[i - 1], g.d[j - 1]);
    b[i - 1][j - 1] = v;
    b[j - 1][i - 1] = v;
  }
  return b;
}

std::vector<std::vector<int>> enumerate_positive(
    const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    work.push_back(e);
  }
  while (!work.empty()) {
    auto beta = work.back();
    work.pop_back();
    for (int i = 0; i < n; ++i) {
      // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
      int pair = 0;
      for (int j = 0; j < n; ++j) pair += a[i][j] * beta[j];
      auto im = beta;
      im[i] -= pair;
      bool pos = true, neg = true;
      for (int c : im) {
        if (c > 0) neg = false;
        if (c < 0) pos = false;
      }
      if (!pos && neg) continue;  // negative root, mirror of a known one
      if (!pos) throw std::logic_error("reflection left the root lattice cone");
      if (seen.insert(im).second) work.push_back(im);
    }
  }
  return {seen.begin(), seen.end()};
}

int checked_int(const Rat& v, const char* what) {
  if (denominator(v) != 1)
    throw std::logic_error(std::string("expected integer in ") + what);
  return static_cast<int>(numerator(v).convert_to<long long>());
}

}  // namespace

std::string AffineType::str() const {
  std::ostringstream os;
  os << static_cast<char>(series) << rank << "^" << twist;
  return os.str();
}

AffineType parse_type(const std::string& text) {
  if (text.size() < 4) throw std::invalid_argument("bad type string: " + text);
  char s = text[0];
  if (s < 'A' || s > 'G')
    throw std::invalid_argument("bad series letter in: " + text);
  size_t caret = text.find('^');
  if (caret == std::string::npos || caret < 2)
    throw std::invalid_argument("type string needs RANK^TWIST: " + text);
  int rank = std::stoi(text.substr(1, caret - 1));
  int twist = std::stoi(text.substr(caret + 1));
  AffineType t{static_cast<Series>(s), rank, twist};
  affine_cartan(t);  // validates
  return t;
}

Rat CartanData::bilinear(int i, int j) const {
  if (i < 0 || j < 0 || i > n || j > n)
    throw std::invalid_argument("bilinear index out of range");
  return bil[i][j];
}

Rat CartanData::bilinear_vec(const std::vector<Rat>& x,
                             const std::vector<Rat>& y) const {
  Rat r(0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) r += x[i] * y[j] * bil[i][j];
  return r;
}

Rat CartanData::pair_fin(const std::vector<int>& x,
                         const std::vector<int>& y) const {
  Rat r(0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (x[i - 1] && y[j - 1]) r += Rat(x[i - 1]) * y[j - 1] * bil[i][j];
  return r;
}

Rat CartanData::cartan_entry(int i, int j) const { return bil[i][j] / d[i]; }

std::vector<Rat> CartanData::delta_coeffs() const {
  // delta = alpha_0 + theta_attach for untwisted types.
  std::vector<Rat> c(n + 1, Rat(0));
  c[0] = Rat(1);
  for (int i = 1; i <= n; ++i) c[i] = Rat(theta[i - 1]);
  return c;
}

std::vector<int> diagram_automorphism(const AffineType& t, int r) {
  if (t.twist != 1)
    throw std::invalid_argument("automorphism wants a simply-laced X_N^{(1)}");
  int N = t.rank;
  std::vector<int> s(N + 1, 0);
  bool ok = false;
  if (t.series == Series::A && r == 2 && N >= 2) {
    for (int i = 1; i <= N; ++i) s[i] = N + 1 - i;
    ok = true;
  } else if (t.series == Series::D && r == 2 && N >= 3) {
    for (int i = 1; i <= N - 2; ++i) s[i] = i;
    s[N - 1] = N;
    s[N] = N - 1;
    ok = true;
  } else if (t.series == Series::E && N == 6 && r == 2) {
    for (int i = 1; i <= 5; ++i) s[i] = 6 - i;
    s[6] = 6;
    ok = true;
  } else if (t.series == Series::D && N == 4 && r == 3) {
    s[1] = 3;
    s[2] = 2;
    s[3] = 4;
    s[4] = 1;
    ok = true;
  }
  if (!ok)
    throw std::invalid_argument("no order-" + std::to_string(r) +
                                " folding of " + t.str());
  // sigma^r = id and Cartan preservation.
  Diagram g = finite_diagram(t.series, N);
  auto b = finite_bilinear(g);
  for (int i = 1; i <= N; ++i) {
    int p = i;
    for (int k = 0; k < r; ++k) p = s[p];
    if (p != i) throw std::logic_error("sigma^r != id");
    for (int j = 1; j <= N; ++j)
      if (b[i - 1][j - 1] != b[s[i] - 1][s[j] - 1])
        throw std::logic_error("sigma does not preserve the Cartan matrix");
  }
  return s;
}

namespace {

CartanData untwisted_data(const AffineType& t) {
  Diagram g = finite_diagram(t.series, t.rank);
  auto bfin = finite_bilinear(g);
  CartanData data;
  data.type = t;
  data.n = t.rank;
  data.d.assign(t.rank + 1, Rat(0));
  for (int i = 1; i <= t.rank; ++i) data.d[i] = g.d[i - 1];

  data.bil.assign(t.rank + 1, std::vector<Rat>(t.rank + 1, Rat(0)));
  for (int i = 1; i <= t.rank; ++i)
    for (int j = 1; j <= t.rank; ++j) data.bil[i][j] = bfin[i - 1][j - 1];
  data.theta.assign(t.rank, 0);
  data.theta = highest_root_max(data);

  // alpha_0 attaches through -theta; d_0 = (theta|theta)/2.
  std::vector<Rat> trow(t.rank + 1, Rat(0));
  for (int j = 1; j <= t.rank; ++j) {
    Rat v(0);
    for (int i = 1; i <= t.rank; ++i) v += Rat(data.theta[i - 1]) * data.bil[i][j];
    trow[j] = v;
  }
  Rat tnorm(0);
  for (int i = 1; i <= t.rank; ++i) tnorm += Rat(data.theta[i - 1]) * trow[i];
  data.bil[0][0] = tnorm;
  data.d[0] = tnorm / 2;
  for (int j = 1; j <= t.rank; ++j) {
    data.bil[0][j] = -trow[j];
    data.bil[j][0] = -trow[j];
  }
  data.h = coxeter_number(data);
  return data;
}

struct FoldPlan {
  AffineType source;
  int r;
  Rat d0;
};

FoldPlan fold_plan(const AffineType& t) {
  if (t.series == Series::A && t.twist == 2 && t.rank >= 2)
    return {{Series::A, t.rank, 1}, 2, t.rank % 2 == 0 ? Rat(2) : Rat(1)};
  if (t.series == Series::D && t.twist == 2 && t.rank >= 3)
    return {{Series::D, t.rank, 1}, 2, Rat(1)};
  if (t.series == Series::E && t.rank == 6 && t.twist == 2)
    return {{Series::E, 6, 1}, 2, Rat(1)};
  if (t.series == Series::D && t.rank == 4 && t.twist == 3)
    return {{Series::D, 4, 1}, 3, Rat(1)};
  throw std::invalid_argument("unsupported twisted type " + t.str());
}

CartanData twisted_data(const AffineType& t) {
  FoldPlan plan = fold_plan(t);
  int N = plan.source.rank;
  auto sigma = diagram_automorphism(plan.source, plan.r);
  Diagram g = finite_diagram(plan.source.series, N);
  auto bsrc = finite_bilinear(g);

  FoldInfo fi;
  fi.r = plan.r;
  fi.source = plan.source;
  fi.sigma = sigma;
  fi.node_of_source.assign(N + 1, 0);

  // Orbits in the paper's node order per family.
  std::vector<std::vector<int>> orbits;
  std::vector<bool> used(N + 1, false);
  auto orbit_of = [&](int i) {
    std::vector<int> o{i};
    int p = sigma[i];
    while (p != i) {
      o.push_back(p);
      p = sigma[p];
    }
    std::sort(o.begin(), o.end());
    return o;
  };
  if (t.series == Series::D && t.twist == 2) {
    // fixed nodes first, the swapped pair last
    for (int i = 1; i <= N - 2; ++i) orbits.push_back(orbit_of(i));
    orbits.push_back(orbit_of(N - 1));
  } else {
    // pair orbits by minimal element, fixed nodes after
    std::vector<std::vector<int>> pairs, fixed;
    for (int i = 1; i <= N; ++i) {
      if (used[i]) continue;
      auto o = orbit_of(i);
      for (int m : o) used[m] = true;
      (o.size() > 1 ? pairs : fixed).push_back(o);
    }
    orbits = pairs;
    orbits.insert(orbits.end(), fixed.begin(), fixed.end());
  }
  fi.orbits = orbits;
  int n = static_cast<int>(orbits.size());
  fi.rep.assign(n, 0);
  for (int k = 0; k < n; ++k) {
    fi.rep[k] = orbits[k].front();
    for (int m : orbits[k]) fi.node_of_source[m] = k + 1;
  }

  CartanData data;
  data.type = t;
  data.n = n;
  data.fold = fi;
  data.bil.assign(n + 1, std::vector<Rat>(n + 1, Rat(0)));
  data.d.assign(n + 1, Rat(0));
  // B(i,j) = (sum_{s=0}^{r-1} sigma^s alpha'_rep(i) | alpha'_rep(j)) in the
  // standard source normalization; fixed nodes are counted r times.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Rat v(0);
      int m = fi.rep[i - 1];
      for (int s = 0; s < plan.r; ++s) {
        v += bsrc[m - 1][fi.rep[j - 1] - 1];
        m = sigma[m];
      }
      data.bil[i][j] = v;
    }
  for (int i = 1; i <= n; ++i) data.d[i] = data.bil[i][i] / 2;

  data.theta.assign(n, 0);
  data.theta = theta_root(data);

  data.d[0] = plan.d0;
  data.bil[0][0] = 2 * plan.d0;
  // attach via a0 * theta_s for A_2n^(2) (a0 = 2), theta otherwise
  bool a2even = t.series == Series::A && t.rank % 2 == 0;
  Rat mark = a2even ? Rat(2) : Rat(1);
  std::vector<int> att = a2even ? highest_short_root(data) : data.theta;
  for (int j = 1; j <= n; ++j) {
    Rat v(0);
    for (int i = 1; i <= n; ++i) v += Rat(att[i - 1]) * data.bil[i][j];
    data.bil[0][j] = -mark * v;
    data.bil[j][0] = data.bil[0][j];
  }
  int height = 0;
  for (int c : data.theta) height += c;
  data.h = height + 1;
  return data;
}

}  // namespace

CartanData affine_cartan(const AffineType& t) {
  if (t.twist == 1) {
    if (!valid_untwisted(t.series, t.rank))
      throw std::invalid_argument("unsupported type " + t.str());
    return untwisted_data(t);
  }
  return twisted_data(t);
}

CartanData affine_cartan(const std::string& type) {
  return affine_cartan(parse_type(type));
}

std::vector<std::vector<int>> positive_roots(const CartanData& data) {
  if (data.n > 8) throw std::invalid_argument("root enumeration wants rank <= 8");
  std::vector<std::vector<int>> a(data.n, std::vector<int>(data.n, 0));
  for (int i = 1; i <= data.n; ++i)
    for (int j = 1; j <= data.n; ++j)
      a[i - 1][j - 1] = checked_int(data.cartan_entry(i, j), "finite Cartan");
  return enumerate_positive(a);
}

std::vector<int> highest_root_max(const CartanData& data) {
  auto roots = positive_roots(data);
  auto leq = [](const std::vector<int>& x, const std::vector<int>& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  for (const auto& cand : roots) {
    bool maximal = true;
    for (const auto& o : roots)
      if (!leq(o, cand)) {
        maximal = false;
        break;
      }
    if (maximal) return cand;
  }
  throw std::logic_error("no coefficient-maximal root found");
}

std::vector<int> highest_short_root(const CartanData& data) {
  auto roots = positive_roots(data);
  Rat minnorm;
  bool first = true;
  for (const auto& r : roots) {
    Rat nn = data.pair_fin(r, r);
    if (first || nn < minnorm) {
      minnorm = nn;
      first = false;
    }
  }
  std::vector<std::vector<int>> shorts;
  for (const auto& r : roots)
    if (data.pair_fin(r, r) == minnorm) shorts.push_back(r);
  auto leq = [](const std::vector<int>& x, const std::vector<int>& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  for (const auto& cand : shorts) {
    bool maximal = true;
    for (const auto& o : shorts)
      if (!leq(o, cand)) {
        maximal = false;
        break;
      }
    if (maximal) return cand;
  }
  throw std::logic_error("no maximal short root found");
}

std::vector<int> theta_root(const CartanData& data) {
  if (data.type.twist == 1) return highest_root_max(data);
  if (data.type.series == Series::A && data.type.rank % 2 == 0)
    return highest_root_max(data);
  return highest_short_root(data);
}

int coxeter_number(const CartanData& data) {
  int height = 0;
  for (int c : data.theta) height += c;
  int h = height + 1;
  if (data.type.twist == 1) {
    int expect = 0;
    Series s = data.type.series;
    int n = data.type.rank;
    switch (s) {
      case Series::A: expect = n + 1; break;
      case Series::B: expect = 2 * n; break;
      case Series::C: expect = 2 * n; break;
      case Series::D: expect = 2 * n - 2; break;
      case Series::E: expect = n == 6 ? 12 : (n == 7 ? 18 : 30); break;
      case Series::F: expect = 12; break;
      case Series::G: expect = 6; break;
    }
    if (h != expect)
      throw std::logic_error("Coxeter number mismatch for " + data.type.str());
  }
  return h;
}

Rat source_bilinear_scaled(const CartanData& tw, int i, int j) {
  if (!tw.fold) throw std::invalid_argument("not a twisted type");
  Diagram g = finite_diagram(tw.fold->source.series, tw.fold->source.rank);
  auto b = finite_bilinear(g);
  return Rat(tw.fold->r) * b[i - 1][j - 1];
}

Rat folded_pairing(const CartanData& tw, int i, int j) {
  if (!tw.fold) throw std::invalid_argument("not a twisted type");
  return tw.bil[i][j];
}

}  // namespace qaff
