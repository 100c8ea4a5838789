#include "qaff/drinfeld.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qaff {

namespace {

Element one() { return Element(Scalar(1)); }

Element gamma_halves(int halves) {
  if (halves == 0) return one();
  Word w(static_cast<size_t>(halves > 0 ? halves : -halves),
         gen_gamma(halves > 0 ? 1 : -1));
  return Element::word(w);
}

Element x_el(int sign, int i, int k) { return Element::gen(gen_x(sign, i, k)); }
Element a_el(int i, int l) { return Element::gen(gen_a(i, l)); }
Element k_el(int i, int e) { return Element::gen(gen_K(i, e)); }

// truncated exp of sum_{k=1}^{deg} arg[k] z^{-k} (arg entries commute)
std::vector<Element> exp_series(const std::vector<Element>& arg, int deg) {
  std::vector<Element> out(static_cast<size_t>(deg) + 1);
  out[0] = one();
  std::vector<Element> power = out;  // arg^j truncated, starts at j = 0
  Rat fact(1);
  for (int j = 1; j <= deg; ++j) {
    std::vector<Element> next(static_cast<size_t>(deg) + 1);
    for (int d = 0; d <= deg; ++d) {
      if (power[d].is_zero()) continue;
      for (int k = 1; k + d <= deg; ++k) {
        if (arg[k].is_zero()) continue;
        next[d + k] += power[d] * arg[k];
      }
    }
    power = next;
    fact *= j;
    Scalar inv_fact = Scalar(fact).inverse();
    for (int d = 0; d <= deg; ++d)
      if (!power[d].is_zero()) out[d] += inv_fact * power[d];
  }
  return out;
}

std::vector<std::pair<std::vector<int>, int>> multiset_perms(
    std::vector<int> l) {
  std::sort(l.begin(), l.end());
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    out.push_back({l, 1});
  } while (std::next_permutation(l.begin(), l.end()));
  return out;
}

}  // namespace

namespace {

// positive (resp. negative) a-modes commute; fix ascending monomial order
Element sort_commuting(const Element& e) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Word sorted = *w;
    std::sort(sorted.begin(), sorted.end());
    out += Element::word(sorted, c);
  }
  return out;
}

}  // namespace

Element psi_mode(const CartanData& data, int i, int m) {
  if (m < 0) return Element();
  Rat di = data.d[i];
  Scalar coef = Scalar::q_pow(di) - Scalar::q_pow(-di);
  std::vector<Element> arg(static_cast<size_t>(m) + 1);
  for (int k = 1; k <= m; ++k) arg[k] = coef * a_el(i, k);
  auto ser = exp_series(arg, m);
  return k_el(i, 1) * sort_commuting(ser[m]);
}

Element phi_mode(const CartanData& data, int i, int m) {
  if (m > 0) return Element();
  int deg = -m;
  Rat di = data.d[i];
  Scalar coef = -(Scalar::q_pow(di) - Scalar::q_pow(-di));
  std::vector<Element> arg(static_cast<size_t>(deg) + 1);
  for (int k = 1; k <= deg; ++k) arg[k] = coef * a_el(i, -k);
  auto ser = exp_series(arg, deg);
  return k_el(i, -1) * sort_commuting(ser[deg]);
}

namespace {
Element psi_node(const CartanData& tw, int node, int m) {
  return psi_mode(tw, node, m);
}
Element phi_node(const CartanData& tw, int node, int m) {
  return phi_mode(tw, node, m);
}
}  // namespace

std::string RelationInstance::label() const {
  static const char* names[] = {
      "KK",      "KInv",     "GammaInv", "QdInv",   "GammaCentral",
      "AA",      "AK",       "DK",       "DX",      "DA",
      "KX",      "AX",       "XXSame",   "XXMixed", "Serre",
      "TwSigmaX", "TwSigmaA", "TwAA",    "TwAX",    "TwKX",
      "TwXXMixed", "TwXXProd", "TwSerre", "TwCubic"};
  std::ostringstream os;
  os << names[static_cast<int>(kind)] << "(";
  for (size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
  os << ")";
  return os.str();
}

RelationInstance relation(const CartanData& data, RelationKind kind,
                          const std::vector<long>& p) {
  auto need = [&](size_t n) {
    if (p.size() != n)
      throw std::invalid_argument("relation: wrong parameter count");
  };
  auto idx = [&](long i) {
    if (i < 1 || i > data.n)
      throw std::invalid_argument("relation: index out of range");
    return static_cast<int>(i);
  };
  auto sgn = [&](long s) {
    if (s != 1 && s != -1) throw std::invalid_argument("relation: bad sign");
    return static_cast<int>(s);
  };
  RelationInstance out;
  out.kind = kind;
  out.p = p;
  switch (kind) {
    case RelationKind::KK: {
      need(4);
      Element a = k_el(idx(p[0]), sgn(p[1])), b = k_el(idx(p[2]), sgn(p[3]));
      out.el = a * b - b * a;
      break;
    }
    case RelationKind::KInv: {
      need(2);
      out.el = k_el(idx(p[0]), sgn(p[1])) * k_el(idx(p[0]), -sgn(p[1])) - one();
      break;
    }
    case RelationKind::GammaInv: {
      need(1);
      out.el = Element::gen(gen_gamma(sgn(p[0]))) *
                   Element::gen(gen_gamma(-sgn(p[0]))) -
               one();
      break;
    }
    case RelationKind::QdInv: {
      need(1);
      out.el = Element::gen(gen_qd(sgn(p[0]))) *
                   Element::gen(gen_qd(-sgn(p[0]))) -
               one();
      break;
    }
    case RelationKind::GammaCentral: {
      need(5);
      Element g = Element::gen(gen_gamma(sgn(p[0])));
      GenSym u{static_cast<GK>(p[1]), static_cast<int8_t>(p[2]),
               static_cast<int16_t>(p[3]), static_cast<int32_t>(p[4])};
      Element ue = Element::gen(u);
      out.el = g * ue - ue * g;
      break;
    }
    case RelationKind::AA: {
      need(4);
      int i = idx(p[0]), j = idx(p[2]);
      int k = static_cast<int>(p[1]), l = static_cast<int>(p[3]);
      if (k == 0 || l == 0) throw std::invalid_argument("a(0) mode");
      Element lhs = a_el(i, k) * a_el(j, l) - a_el(j, l) * a_el(i, k);
      Element rhs;
      if (k + l == 0) {
        Rat aij = data.cartan_entry(i, j);
        long arg = static_cast<long>(numerator(Rat(aij * k)).convert_to<long long>());
        if (denominator(Rat(aij * k)) != 1)
          throw std::logic_error("nonintegral a_ij k");
        Scalar c = q_int(arg, data.d[i]) / Scalar(Rat(k));
        Scalar den = Scalar::q_pow(data.d[j]) - Scalar::q_pow(-data.d[j]);
        rhs = (c / den) * (gamma_halves(2 * k) - gamma_halves(-2 * k));
      }
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::AK: {
      need(4);
      Element a = a_el(idx(p[0]), static_cast<int>(p[1]));
      Element kk = k_el(idx(p[2]), sgn(p[3]));
      out.el = a * kk - kk * a;
      break;
    }
    case RelationKind::DK: {
      need(3);
      Element d = Element::gen(gen_qd(sgn(p[0])));
      Element kk = k_el(idx(p[1]), sgn(p[2]));
      out.el = d * kk - kk * d;
      break;
    }
    case RelationKind::DX: {
      need(4);
      int e = sgn(p[0]), i = idx(p[1]), s = sgn(p[2]), k = static_cast<int>(p[3]);
      Element d = Element::gen(gen_qd(e));
      out.el = d * x_el(s, i, k) - Scalar::q_pow(Rat(e * k)) * (x_el(s, i, k) * d);
      break;
    }
    case RelationKind::DA: {
      need(3);
      int e = sgn(p[0]), i = idx(p[1]), l = static_cast<int>(p[2]);
      Element d = Element::gen(gen_qd(e));
      out.el = d * a_el(i, l) - Scalar::q_pow(Rat(e * l)) * (a_el(i, l) * d);
      break;
    }
    case RelationKind::KX: {
      need(5);
      int i = idx(p[0]), ei = sgn(p[1]), j = idx(p[2]), s = sgn(p[3]),
          k = static_cast<int>(p[4]);
      Scalar c = Scalar::q_pow(Rat(s) * Rat(ei) * data.bilinear(i, j));
      out.el = k_el(i, ei) * x_el(s, j, k) - c * (x_el(s, j, k) * k_el(i, ei));
      break;
    }
    case RelationKind::AX: {
      need(5);
      int i = idx(p[0]), k = static_cast<int>(p[1]), j = idx(p[2]),
          s = sgn(p[3]), l = static_cast<int>(p[4]);
      if (k == 0) throw std::invalid_argument("a(0) mode");
      Element lhs = a_el(i, k) * x_el(s, j, l) - x_el(s, j, l) * a_el(i, k);
      Rat aij = data.cartan_entry(i, j);
      if (denominator(Rat(aij * k)) != 1)
        throw std::logic_error("nonintegral a_ij k");
      long arg = static_cast<long>(numerator(Rat(aij * k)).convert_to<long long>());
      Scalar c = Scalar(Rat(s)) * q_int(arg, data.d[i]) / Scalar(Rat(k));
      Element rhs = c * (gamma_halves(-s * std::abs(k)) * x_el(s, j, k + l));
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::XXSame: {
      need(5);
      int i = idx(p[0]), j = idx(p[1]), s = sgn(p[2]), k = static_cast<int>(p[3]),
          l = static_cast<int>(p[4]);
      Scalar c = Scalar::q_pow(Rat(s) * data.bilinear(i, j));
      out.el = x_el(s, i, k + 1) * x_el(s, j, l) -
               c * (x_el(s, j, l) * x_el(s, i, k + 1)) -
               c * (x_el(s, i, k) * x_el(s, j, l + 1)) +
               x_el(s, j, l + 1) * x_el(s, i, k);
      break;
    }
    case RelationKind::XXMixed: {
      need(4);
      int i = idx(p[0]), k = static_cast<int>(p[1]), j = idx(p[2]),
          l = static_cast<int>(p[3]);
      Element lhs = x_el(1, i, k) * x_el(-1, j, l) - x_el(-1, j, l) * x_el(1, i, k);
      Element rhs;
      if (i == j) {
        Scalar den = Scalar::q_pow(data.d[i]) - Scalar::q_pow(-data.d[i]);
        rhs = Scalar(1) / den *
              (gamma_halves(k - l) * psi_mode(data, i, k + l) -
               gamma_halves(l - k) * phi_mode(data, i, k + l));
      }
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::Serre: {
      if (p.size() < 4) throw std::invalid_argument("Serre: params");
      int i = idx(p[0]), j = idx(p[1]), s = sgn(p[2]), nmode = static_cast<int>(p[3]);
      if (i == j) throw std::invalid_argument("Serre wants i != j");
      Rat aij = data.cartan_entry(i, j);
      long m = 1 - static_cast<long>(numerator(aij).convert_to<long long>());
      if (denominator(aij) != 1) throw std::logic_error("nonintegral a_ij");
      if (p.size() != 4 + static_cast<size_t>(m))
        throw std::invalid_argument("Serre: needs 1 - a_ij modes");
      std::vector<int> modes(p.begin() + 4, p.end());
      Element total;
      for (auto& [perm, mult] : multiset_perms(modes)) {
        (void)mult;
        for (long t = 0; t <= m; ++t) {
          Element word = one();
          for (long u = 0; u < t; ++u) word = word * x_el(s, i, perm[u]);
          word = word * x_el(s, j, nmode);
          for (long u = t; u < m; ++u) word = word * x_el(s, i, perm[u]);
          Scalar c = q_binomial(m, t, data.d[i]);
          if (t % 2 == 1) c = -c;
          total += c * word;
        }
      }
      out.el = total;
      break;
    }
    default:
      throw std::invalid_argument("relation: twisted kind passed to relation()");
  }
  return out;
}

// ---------------------------------------------------------------- folding

void Folded::normalize(int r) {
  while (sqrt_pow >= 2) {
    el = Scalar(Rat(r)) * el;
    sqrt_pow -= 2;
  }
  while (sqrt_pow < 0) {
    el = Scalar(Rat(1, r)) * el;
    sqrt_pow += 2;
  }
  if (el.is_zero()) sqrt_pow = 0;
}

Folded folded_mul(const Folded& a, const Folded& b, int r) {
  Folded out{a.el * b.el, a.sqrt_pow + b.sqrt_pow};
  out.normalize(r);
  return out;
}

Folded folded_scale(const Scalar& c, const Folded& a) {
  return {c * a.el, a.el.is_zero() || c.is_zero() ? 0 : a.sqrt_pow};
}

Folded folded_sub(const Folded& a, const Folded& b, int r) {
  Folded x = a, y = b;
  x.normalize(r);
  y.normalize(r);
  if (x.el.is_zero()) return {y.el.is_zero() ? Element() : -y.el, y.sqrt_pow};
  if (y.el.is_zero()) return x;
  if (x.sqrt_pow != y.sqrt_pow)
    throw std::invalid_argument("folded_sub: mixed sqrt r parity");
  Folded out{x.el - y.el, x.sqrt_pow};
  out.normalize(r);
  return out;
}

namespace {

const FoldInfo& fold_info(const CartanData& tw) {
  if (!tw.fold) throw std::invalid_argument("fold wants a twisted type");
  return *tw.fold;
}

Scalar omega_pow(int r, long e) {
  Scalar w = omega_scalar(r);
  long m = ((e % r) + r) % r;
  Scalar out(1);
  for (long t = 0; t < m; ++t) out *= w;
  return out;
}

Folded fold_gen_any(const CartanData& tw, bool is_x, int sign, int src_index,
                    int mode) {
  const FoldInfo& fi = fold_info(tw);
  int N = fi.source.rank;
  if (src_index < 1 || src_index > N)
    throw std::invalid_argument("fold: source index out of range");
  int node = fi.node_of_source[src_index];
  Rat dnode = tw.d[node];
  if (denominator(dnode) != 1)
    throw std::invalid_argument("fold: fractional d_i (A_2n^(2) x-fold) not supported here");
  Scalar pref =
      Scalar(1) / q_int(static_cast<long>(numerator(dnode).convert_to<long long>()), Rat(1));
  Element sum;
  int m = src_index;
  for (int s = 0; s < fi.r; ++s) {
    Scalar w = omega_pow(fi.r, -static_cast<long>(mode) * s);
    sum += w * (is_x ? Element::gen(gen_x(sign, m, mode))
                     : Element::gen(gen_a(m, mode)));
    m = fi.sigma[m];
  }
  Folded out{pref * sum, -1};
  out.normalize(fi.r);
  return out;
}

}  // namespace

Folded fold_x_any(const CartanData& tw, int sign, int src_index, int mode) {
  return fold_gen_any(tw, true, sign, src_index, mode);
}

Folded fold_a_any(const CartanData& tw, int src_index, int mode) {
  if (mode == 0) throw std::invalid_argument("a(0) mode");
  return fold_gen_any(tw, false, 0, src_index, mode);
}

Folded fold_x(const CartanData& tw, int sign, int rep_index, int mode) {
  const FoldInfo& fi = fold_info(tw);
  bool is_rep = false;
  for (int r : fi.rep) is_rep = is_rep || r == rep_index;
  if (!is_rep)
    throw std::invalid_argument("fold: index is not an orbit representative");
  return fold_x_any(tw, sign, rep_index, mode);
}

Folded fold_a(const CartanData& tw, int rep_index, int mode) {
  const FoldInfo& fi = fold_info(tw);
  bool is_rep = false;
  for (int r : fi.rep) is_rep = is_rep || r == rep_index;
  if (!is_rep)
    throw std::invalid_argument("fold: index is not an orbit representative");
  return fold_a_any(tw, rep_index, mode);
}

Element fold_K(const CartanData& tw, int rep_index, int exp) {
  const FoldInfo& fi = fold_info(tw);
  bool is_rep = false;
  for (int r : fi.rep) is_rep = is_rep || r == rep_index;
  if (!is_rep)
    throw std::invalid_argument("fold: index is not an orbit representative");
  Word w;
  int m = rep_index;
  for (int s = 0; s < fi.r; ++s) {
    w.push_back(gen_K(m, exp));
    m = fi.sigma[m];
  }
  std::sort(w.begin(), w.end());
  return Element::word(w);
}

Element aa_commutator(const CartanData& data, int i, int k, int j, int l) {
  if (k + l != 0) return Element();
  Rat aij = data.cartan_entry(i, j);
  if (denominator(Rat(aij * k)) != 1) throw std::logic_error("a_ij k");
  long arg = static_cast<long>(numerator(Rat(aij * k)).convert_to<long long>());
  Scalar c = q_int(arg, data.d[i]) / Scalar(Rat(k));
  Scalar den = Scalar::q_pow(data.d[j]) - Scalar::q_pow(-data.d[j]);
  return (c / den) * (gamma_halves(2 * k) - gamma_halves(-2 * k));
}

Element ax_commutator(const CartanData& data, int i, int k, int sign, int j,
                      int l) {
  Rat aij = data.cartan_entry(i, j);
  if (denominator(Rat(aij * k)) != 1) throw std::logic_error("a_ij k");
  long arg = static_cast<long>(numerator(Rat(aij * k)).convert_to<long long>());
  Scalar c = Scalar(Rat(sign)) * q_int(arg, data.d[i]) / Scalar(Rat(k));
  return c * (gamma_halves(-sign * std::abs(k)) * x_el(sign, j, k + l));
}

FoldCheck check_fold_sigma_eigen(const CartanData& tw, int mode_bound) {
  const FoldInfo& fi = fold_info(tw);
  FoldCheck out;
  for (int i = 1; i <= fi.source.rank; ++i) {
    for (int k = -mode_bound; k <= mode_bound; ++k) {
      for (int sign : {1, -1}) {
        Folded lhs = fold_x_any(tw, sign, fi.sigma[i], k);
        Folded rhs = folded_scale(omega_pow(fi.r, k), fold_x_any(tw, sign, i, k));
        if (!(folded_sub(lhs, rhs, fi.r).el.is_zero())) {
          out.ok = false;
          out.detail = "sigma eigenvalue fails at i=" + std::to_string(i) +
                       " k=" + std::to_string(k);
          return out;
        }
      }
      if (k != 0) {
        Folded lhs = fold_a_any(tw, fi.sigma[i], k);
        Folded rhs = folded_scale(omega_pow(fi.r, k), fold_a_any(tw, i, k));
        if (!(folded_sub(lhs, rhs, fi.r).el.is_zero())) {
          out.ok = false;
          out.detail = "sigma eigenvalue fails for a at i=" + std::to_string(i);
          return out;
        }
      }
    }
  }
  return out;
}

namespace {

// Pairwise commutator of two generator combinations, valid because the
// untwisted relations give [a'_u(k), a'_v(l)] and [a'_u(k), x'_v(l)]
// directly as central / single-generator values.
Element fold_commutator_value(const CartanData& src, const Element& A,
                              const Element& B, bool b_is_x) {
  Element out;
  for (const auto& [wa, ca] : A.terms()) {
    if (wa->size() != 1 || (*wa)[0].kind != GK::A)
      throw std::logic_error("fold check: expected a-generator combination");
    const GenSym& ga = (*wa)[0];
    for (const auto& [wb, cb] : B.terms()) {
      const GenSym& gb = (*wb)[0];
      if (b_is_x) {
        out += (ca * cb) * ax_commutator(src, ga.index, ga.mode, gb.se,
                                         gb.index, gb.mode);
      } else {
        out += (ca * cb) * aa_commutator(src, ga.index, ga.mode, gb.index,
                                         gb.mode);
      }
    }
  }
  return out;
}

// sum_s [k (a'_i | sigma^s a'_j) / (r d_i)]_i / k * omega^{ks} with i, j
// source indices and d_i the folded d of i's orbit.
Scalar tw_sum_coeff(const CartanData& tw, int si, int sj, int k) {
  const FoldInfo& fi = fold_info(tw);
  Rat di = tw.d[fi.node_of_source[si]];
  Scalar total(0);
  int m = sj;
  for (int s = 0; s < fi.r; ++s) {
    Rat scaled = source_bilinear_scaled(tw, si, m);  // 2r-normalized pairing
    Rat arg = Rat(k) * scaled / (Rat(fi.r) * di);
    if (denominator(arg) != 1)
      throw std::logic_error("twisted relation: nonintegral q-integer argument");
    Scalar term =
        q_int(static_cast<long>(numerator(arg).convert_to<long long>()), di) /
        Scalar(Rat(k));
    total += term * omega_pow(fi.r, static_cast<long>(k) * s);
    m = fi.sigma[m];
  }
  return total;
}

}  // namespace

// Modes survive folding only when (r / orbit size) divides them.
static bool fold_supported_mode(const CartanData& tw, int src_index, int mode) {
  const FoldInfo& fi = *tw.fold;
  int o = 1, m = fi.sigma[src_index];
  while (m != src_index) {
    ++o;
    m = fi.sigma[m];
  }
  int step = fi.r / o;
  return mode % step == 0;
}

FoldCheck check_fold_aa(const CartanData& tw, int i, int j, int k) {
  const FoldInfo& fi = fold_info(tw);
  CartanData src = affine_cartan(fi.source);
  FoldCheck out;
  Folded A = fold_a(tw, fi.rep[i - 1], k);
  Folded B = fold_a(tw, fi.rep[j - 1], -k);
  if (!fold_supported_mode(tw, fi.rep[i - 1], k) ||
      !fold_supported_mode(tw, fi.rep[j - 1], -k)) {
    // the generator itself folds to zero; both sides vanish
    out.ok = A.el.is_zero() || B.el.is_zero();
    out.detail = "mode vanishes under fold";
    return out;
  }
  Element lhs_raw = fold_commutator_value(src, A.el, B.el, false);
  Folded lhs{lhs_raw, A.sqrt_pow + B.sqrt_pow};
  lhs.normalize(fi.r);

  Scalar c = tw_sum_coeff(tw, fi.rep[i - 1], fi.rep[j - 1], k);
  Scalar den = Scalar::q_pow(tw.d[j]) - Scalar::q_pow(-tw.d[j]);
  Element rhs = (c / den) * (gamma_halves(2 * k) - gamma_halves(-2 * k));
  Folded diff = folded_sub(lhs, Folded{rhs, 0}, fi.r);
  if (!diff.el.is_zero()) {
    out.ok = false;
    out.detail = "aa fold mismatch at i=" + std::to_string(i) +
                 " j=" + std::to_string(j) + " k=" + std::to_string(k);
  }
  return out;
}

FoldCheck check_fold_ax(const CartanData& tw, int i, int k, int j, int sign,
                        int l) {
  const FoldInfo& fi = fold_info(tw);
  CartanData src = affine_cartan(fi.source);
  FoldCheck out;
  Folded A = fold_a(tw, fi.rep[i - 1], k);
  Folded X = fold_x(tw, sign, fi.rep[j - 1], l);
  if (!fold_supported_mode(tw, fi.rep[i - 1], k) ||
      !fold_supported_mode(tw, fi.rep[j - 1], l)) {
    out.ok = A.el.is_zero() || X.el.is_zero();
    out.detail = "mode vanishes under fold";
    return out;
  }
  Element lhs_raw = fold_commutator_value(src, A.el, X.el, true);
  Folded lhs{lhs_raw, A.sqrt_pow + X.sqrt_pow};
  lhs.normalize(fi.r);

  Scalar c = Scalar(Rat(sign)) * tw_sum_coeff(tw, fi.rep[i - 1], fi.rep[j - 1], k);
  Folded xout = fold_x(tw, sign, fi.rep[j - 1], k + l);
  Folded rhs = folded_scale(c, {gamma_halves(-sign * std::abs(k)) * xout.el,
                                xout.sqrt_pow});
  // The printed line and (3.1) differ by one unit of sqrt r; record it.
  rhs.sqrt_pow -= 1;
  rhs.normalize(fi.r);
  out.extra_sqrt_pow = -1;
  Folded diff = folded_sub(lhs, rhs, fi.r);
  if (!diff.el.is_zero()) {
    out.ok = false;
    out.detail = "ax fold mismatch at i=" + std::to_string(i) +
                 " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                 " l=" + std::to_string(l);
  }
  return out;
}

GenImages omega_images() {
  return [](const GenSym& g) -> Element {
    switch (g.kind) {
      case GK::X:
        return Element::gen(gen_x(-g.se, g.index, -g.mode));
      case GK::A:
        return Element::gen(gen_a(g.index, -g.mode));
      case GK::K:
        return Element::gen(gen_K(g.index, -g.se));
      case GK::Gamma:
        return Element::gen(gen_gamma(-g.se));
      case GK::Qd:
        return Element::gen(gen_qd(-g.se));
      case GK::Sym:
        return Element::gen(g);
    }
    throw std::invalid_argument("omega image: unknown generator");
  };
}

// ---------------------------------------------------- twisted instances

namespace {

// product polynomial as monomial list {(zpow, wpow, coeff)}
struct Poly2 {
  std::vector<std::tuple<int, int, Scalar>> mono;
  Poly2 operator*(const Poly2& o) const {
    std::map<std::pair<int, int>, Scalar> acc;
    for (auto& [a, b, c] : mono)
      for (auto& [a2, b2, c2] : o.mono) {
        auto key = std::make_pair(a + a2, b + b2);
        auto it = acc.find(key);
        if (it == acc.end())
          acc[key] = c * c2;
        else
          it->second += c * c2;
      }
    Poly2 out;
    for (auto& [k, c] : acc)
      if (!c.is_zero()) out.mono.push_back({k.first, k.second, c});
    return out;
  }
};

}  // namespace

RelationInstance twisted_relation(const CartanData& tw, RelationKind kind,
                                  const std::vector<long>& p) {
  const FoldInfo& fi = fold_info(tw);
  auto sgn = [&](long s) {
    if (s != 1 && s != -1) throw std::invalid_argument("bad sign");
    return static_cast<int>(s);
  };
  RelationInstance out;
  out.kind = kind;
  out.p = p;
  switch (kind) {
    case RelationKind::TwSigmaX: {
      int i = static_cast<int>(p[0]), s = sgn(p[1]), k = static_cast<int>(p[2]);
      out.el = x_el(s, fi.sigma[i], k) - omega_pow(fi.r, k) * x_el(s, i, k);
      break;
    }
    case RelationKind::TwSigmaA: {
      int i = static_cast<int>(p[0]), l = static_cast<int>(p[1]);
      out.el = a_el(fi.sigma[i], l) - omega_pow(fi.r, l) * a_el(i, l);
      break;
    }
    case RelationKind::TwAA: {
      // source-level indices; d_j is the folded d of j's orbit
      int i = static_cast<int>(p[0]), k = static_cast<int>(p[1]),
          j = static_cast<int>(p[2]), l = static_cast<int>(p[3]);
      Element lhs = a_el(i, k) * a_el(j, l) - a_el(j, l) * a_el(i, k);
      Element rhs;
      if (k + l == 0) {
        Scalar c = tw_sum_coeff(tw, i, j, k);
        Rat dj = tw.d[fi.node_of_source[j]];
        Scalar den = Scalar::q_pow(dj) - Scalar::q_pow(-dj);
        rhs = (c / den) * (gamma_halves(2 * k) - gamma_halves(-2 * k));
      }
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::TwAX: {
      int i = static_cast<int>(p[0]), k = static_cast<int>(p[1]),
          j = static_cast<int>(p[2]), s = sgn(p[3]), l = static_cast<int>(p[4]);
      Element lhs = a_el(i, k) * x_el(s, j, l) - x_el(s, j, l) * a_el(i, k);
      Scalar c = Scalar(Rat(s)) * tw_sum_coeff(tw, i, j, k);
      Element rhs = c * (gamma_halves(-s * std::abs(k)) * x_el(s, j, k + l));
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::TwKX: {
      int i = static_cast<int>(p[0]), ei = sgn(p[1]), j = static_cast<int>(p[2]),
          s = sgn(p[3]), k = static_cast<int>(p[4]);
      Scalar c = Scalar::q_pow(Rat(s) * Rat(ei) * tw.bilinear(i, j));
      out.el = k_el(i, ei) * x_el(s, j, k) - c * (x_el(s, j, k) * k_el(i, ei));
      break;
    }
    case RelationKind::TwXXMixed: {
      // delta_{sigma^s(i), j} omega^{sl} on source indices, psi/phi over the
      // folded d of i's orbit
      int i = static_cast<int>(p[0]), k = static_cast<int>(p[1]),
          j = static_cast<int>(p[2]), l = static_cast<int>(p[3]);
      Element lhs = x_el(1, i, k) * x_el(-1, j, l) - x_el(-1, j, l) * x_el(1, i, k);
      Element rhs;
      int node = fi.node_of_source[i];
      int m = i;
      for (int s = 0; s < fi.r; ++s) {
        if (m == j) {
          Rat di = tw.d[node];
          Scalar den = Scalar::q_pow(di) - Scalar::q_pow(-di);
          rhs += omega_pow(fi.r, static_cast<long>(s) * l) / den *
                 (gamma_halves(k - l) * psi_node(tw, node, k + l) -
                  gamma_halves(l - k) * phi_node(tw, node, k + l));
        }
        m = fi.sigma[m];
      }
      out.el = lhs - rhs;
      break;
    }
    case RelationKind::TwXXProd: {
      // z^{-k} w^{-l} coefficient of
      //   prod_s (z - w^s q^{+-(a'_i|sigma^s a'_j)/r} w) x_i(z) x_j(w)
      // - prod_s (z q^{+-(...)} - w^s w) x_j(w) x_i(z), on source indices.
      int i = static_cast<int>(p[0]), j = static_cast<int>(p[1]), s = sgn(p[2]),
          k = static_cast<int>(p[3]), l = static_cast<int>(p[4]);
      Poly2 left{{{0, 0, Scalar(1)}}}, right{{{0, 0, Scalar(1)}}};
      int m = j;
      for (int t = 0; t < fi.r; ++t) {
        Rat pairing = source_bilinear_scaled(tw, i, m) / Rat(fi.r);
        Scalar qp = Scalar::q_pow(Rat(s) * pairing);
        Scalar w = omega_pow(fi.r, t);
        Poly2 lf, rf;
        lf.mono = {{1, 0, Scalar(1)}, {0, 1, -(w * qp)}};
        rf.mono = {{1, 0, qp}, {0, 1, -w}};
        left = left * lf;
        right = right * rf;
        m = fi.sigma[m];
      }
      Element el;
      for (auto& [zu, wv, c] : left.mono)
        el += c * (x_el(s, i, k + zu) * x_el(s, j, l + wv));
      for (auto& [zu, wv, c] : right.mono)
        el -= c * (x_el(s, j, l + wv) * x_el(s, i, k + zu));
      out.el = el;
      break;
    }
    case RelationKind::TwSerre: {
      // Sym_{z1,z2} P_ij(z1, z2) sum_t (-1)^t [2 t]_{q^{d_ij}}
      //   x_i(z1..zt) x_j(w) x_i(z_{t+1}..z2), j-leg at w fixed mode n.
      int i = static_cast<int>(p[0]), j = static_cast<int>(p[1]), s = sgn(p[2]);
      int k1 = static_cast<int>(p[3]), k2 = static_cast<int>(p[4]),
          n = static_cast<int>(p[5]);
      // P and d_ij per the table in Theorem 3.1
      int isig = fi.sigma[i];
      Rat a_i_sig = source_bilinear_scaled(tw, i, isig) / Rat(fi.r);
      Rat dij;
      Poly2 P{{{0, 0, Scalar(1)}}};
      if (isig == i) {
        dij = Rat(fi.r);
      } else if (a_i_sig == 0 && fi.sigma[j] == j) {
        dij = Rat(fi.r);
        // (z^r q^{+-2r} - w^r)/(z q^{+-2} - w) = sum_{t} (z q^{+-2})^{r-1-t} w^t
        Poly2 sum;
        for (int t = 0; t < fi.r; ++t) {
          Scalar c = Scalar::q_pow(Rat(s) * Rat(2) * (fi.r - 1 - t));
          sum.mono.push_back({fi.r - 1 - t, t, c});
        }
        P = sum;
      } else if (a_i_sig == 0) {
        dij = Rat(1, 2);
      } else {
        dij = Rat(fi.r, 4);
        P.mono = {{1, 0, Scalar::q_pow(Rat(s) * Rat(fi.r) / 2)}, {0, 1, Scalar(1)}};
      }
      Element total;
      std::vector<std::pair<int, int>> zpairs = {{k1, k2}};
      if (k1 != k2) zpairs.push_back({k2, k1});
      for (auto& [z1, z2] : zpairs) {
        for (auto& [u1, u2, c] : P.mono) {
          int m1 = z1 + u1, m2 = z2 + u2;
          for (int t = 0; t <= 2; ++t) {
            Scalar coef = c * q_binomial(2, t, dij);
            if (t % 2 == 1) coef = -coef;
            Element word = one();
            std::vector<int> zm = {m1, m2};
            for (int u = 0; u < t; ++u) word = word * x_el(s, i, zm[u]);
            word = word * x_el(s, j, n);
            for (int u = t; u < 2; ++u) word = word * x_el(s, i, zm[u]);
            total += coef * word;
          }
        }
      }
      out.el = total;
      break;
    }
    case RelationKind::TwCubic: {
      // Sym_{z1,z2,z3} (q^{-+3r/4} z1 - (q^{r/4}+q^{-r/4}) z2 + q^{+-3r/4} z3)
      //   x_i(z1) x_i(z2) x_i(z3), for A_{i,sigma(i)} = -1.
      int i = static_cast<int>(p[0]), s = sgn(p[1]);
      int k1 = static_cast<int>(p[2]), k2 = static_cast<int>(p[3]),
          k3 = static_cast<int>(p[4]);
      Rat r4 = Rat(fi.r, 4);
      Scalar c1 = Scalar::q_pow(-Rat(s) * 3 * r4);
      Scalar c2 = -(Scalar::q_pow(r4) + Scalar::q_pow(-r4));
      Scalar c3 = Scalar::q_pow(Rat(s) * 3 * r4);
      Element total;
      std::vector<int> ks = {k1, k2, k3};
      std::sort(ks.begin(), ks.end());
      do {
        Element t1 = c1 * (x_el(s, i, ks[0] + 1) * x_el(s, i, ks[1]) * x_el(s, i, ks[2]));
        Element t2 = c2 * (x_el(s, i, ks[0]) * x_el(s, i, ks[1] + 1) * x_el(s, i, ks[2]));
        Element t3 = c3 * (x_el(s, i, ks[0]) * x_el(s, i, ks[1]) * x_el(s, i, ks[2] + 1));
        total += t1 + t2 + t3;
      } while (std::next_permutation(ks.begin(), ks.end()));
      out.el = total;
      break;
    }
    default:
      throw std::invalid_argument("twisted_relation: untwisted kind");
  }
  return out;
}

std::vector<RelationInstance> twisted_relation_window(
    const CartanData& tw, RelationKind kind, const std::vector<long>& params,
    int window) {
  if (window <= 0) throw std::invalid_argument("window must be positive");
  std::vector<RelationInstance> out;
  for (int k = -window; k <= window; ++k)
    for (int l = -window; l <= window; ++l) {
      auto p = params;
      p.push_back(k);
      p.push_back(l);
      out.push_back(twisted_relation(tw, kind, p));
    }
  return out;
}

}  // namespace qaff
