#include "qaff/freealg.hpp"

#include <cctype>
#include <cstring>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace qaff {

bool GenSym::operator<(const GenSym& o) const {
  int ca = order_class(), cb = o.order_class();
  if (ca != cb) return ca < cb;
  switch (kind) {
    case GK::X:
      if (se != o.se) return se < o.se;  // minus before plus
      if (mode != o.mode) return mode < o.mode;
      return index < o.index;
    case GK::A:
      if (mode != o.mode) return mode < o.mode;
      return index < o.index;
    case GK::K:
      if (index != o.index) return index < o.index;
      return se < o.se;
    case GK::Qd:
    case GK::Gamma:
      return se < o.se;
    case GK::Sym:
      if (index != o.index) return index < o.index;
      return mode < o.mode;
  }
  return false;
}

std::string GenSym::str() const {
  std::ostringstream os;
  switch (kind) {
    case GK::X:
      os << "x" << index << (se > 0 ? "+" : "-") << "(" << mode << ")";
      break;
    case GK::A:
      os << "a" << index << "(" << mode << ")";
      break;
    case GK::K:
      os << "K" << index;
      if (se < 0) os << "^-1";
      break;
    case GK::Gamma:
      os << "g";
      if (se < 0) os << "^-1";
      break;
    case GK::Qd:
      os << "qd";
      if (se < 0) os << "^-1";
      break;
    case GK::Sym:
      os << "s" << index;
      if (mode != 0) os << "(" << mode << ")";
      break;
  }
  return os.str();
}

GenSym sym(int index, int mode) {
  return {GK::Sym, 0, static_cast<int16_t>(index), mode};
}
GenSym gen_x(int sign, int index, int mode) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("x sign");
  return {GK::X, static_cast<int8_t>(sign), static_cast<int16_t>(index), mode};
}
GenSym gen_a(int index, int mode) {
  if (mode == 0) throw std::invalid_argument("a(0) is not a generator");
  return {GK::A, 0, static_cast<int16_t>(index), mode};
}
GenSym gen_K(int index, int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("K exponent");
  return {GK::K, static_cast<int8_t>(exp), static_cast<int16_t>(index), 0};
}
GenSym gen_gamma(int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("gamma exponent");
  return {GK::Gamma, static_cast<int8_t>(exp), 0, 0};
}
GenSym gen_qd(int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("qd exponent");
  return {GK::Qd, static_cast<int8_t>(exp), 0, 0};
}

namespace {

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (const auto& g : w) {
      uint64_t v = (static_cast<uint64_t>(g.kind) << 56) ^
                   (static_cast<uint64_t>(static_cast<uint8_t>(g.se)) << 48) ^
                   (static_cast<uint64_t>(static_cast<uint16_t>(g.index))
                    << 32) ^
                   static_cast<uint32_t>(g.mode);
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::unordered_set<Word, WordHash>& word_table() {
  static std::unordered_set<Word, WordHash> table;
  return table;
}
std::mutex& word_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const Word* intern(const Word& w) {
  std::lock_guard<std::mutex> lock(word_mutex());
  return &*word_table().insert(w).first;
}

const Word* intern_empty() {
  static const Word* e = intern(Word{});
  return e;
}

bool WordPtrLess::operator()(const Word* a, const Word* b) const {
  if (a == b) return false;
  return std::lexicographical_compare(a->begin(), a->end(), b->begin(),
                                      b->end());
}

Element::Element(const Scalar& c) {
  if (!c.is_zero()) terms_[intern_empty()] = c;
}

Element Element::word(const Word& w, const Scalar& c) {
  Element e;
  if (!c.is_zero()) e.terms_[intern(w)] = c;
  return e;
}

Element Element::gen(const GenSym& g, const Scalar& c) {
  return word(Word{g}, c);
}

Scalar Element::coeff(const Word& w) const {
  auto it = terms_.find(intern(w));
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Element::add_term(const Word* w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_[w] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::operator-() const {
  Element r;
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r -= o;
  return r;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Element Element::operator*(const Element& o) const {
  Element r;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) {
      Word w = *w1;
      w.insert(w.end(), w2->begin(), w2->end());
      r.add_term(intern(w), c1 * c2);
    }
  return r;
}

Element operator*(const Scalar& c, const Element& e) {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [w, k] : e.terms_) r.terms_[w] = c * k;
  return r;
}

bool Element::operator==(const Element& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

Element Element::bar_coeffs() const {
  Element r;
  for (const auto& [w, c] : terms_) r.terms_[w] = c.bar();
  return r;
}

std::string Element::str() const { return element_str(*this); }

Element bracket(const Element& a, const Element& b, const Scalar& v) {
  return a * b - v * (b * a);
}

Element nested_bracket(const std::vector<Element>& items,
                       const std::vector<Scalar>& vs) {
  if (items.empty()) throw std::invalid_argument("nested_bracket: no items");
  if (vs.size() + 1 != items.size())
    throw std::invalid_argument("nested_bracket: need n-1 parameters");
  Element acc = items.back();
  for (size_t k = 0; k < vs.size(); ++k) {
    const Element& left = items[items.size() - 2 - k];
    acc = bracket(left, acc, vs[k]);
  }
  return acc;
}

Element nested_bracket_primed(const std::vector<Element>& items,
                              const std::vector<Scalar>& vs) {
  if (items.empty()) throw std::invalid_argument("nested_bracket: no items");
  if (vs.size() + 1 != items.size())
    throw std::invalid_argument("nested_bracket: need n-1 parameters");
  Element acc = items.front();
  for (size_t k = 0; k < vs.size(); ++k) acc = bracket(acc, items[k + 1], vs[k]);
  return acc;
}

Element omega(const Element& e, const GenImages& images) {
  Element r;
  for (const auto& [w, c] : e.terms()) {
    Element prod(c.bar());
    for (auto it = w->rbegin(); it != w->rend(); ++it) prod = prod * images(*it);
    r += prod;
  }
  return r;
}

Element check_identity(IdentityKind id, const IdentityBindings& bind) {
  const Element &a = bind.a, &b = bind.b, &c = bind.c;
  const Scalar &u = bind.u, &v = bind.v, &x = bind.x;
  switch (id) {
    case IdentityKind::Id213: {
      if (x.is_zero()) throw std::invalid_argument("identity (2.13) needs x != 0");
      Element lhs = bracket(a, bracket(b, c, u), v);
      Element rhs = bracket(bracket(a, b, x), c, u * v / x) +
                    x * bracket(b, bracket(a, c, v / x), u / x);
      return lhs - rhs;
    }
    case IdentityKind::Id214: {
      if (x.is_zero()) throw std::invalid_argument("identity (2.14) needs x != 0");
      Element lhs = bracket(bracket(a, b, u), c, v);
      Element rhs = bracket(a, bracket(b, c, x), u * v / x) +
                    x * bracket(bracket(a, c, v / x), b, u / x);
      return lhs - rhs;
    }
    case IdentityKind::ProductRule1: {
      if (x.is_zero()) throw std::invalid_argument("product rule needs x != 0");
      Element lhs = bracket(a, b * c, v);
      Element rhs = bracket(a, b, x) * c + x * (b * bracket(a, c, v / x));
      return lhs - rhs;
    }
    case IdentityKind::ProductRule2: {
      if (x.is_zero()) throw std::invalid_argument("product rule needs x != 0");
      Element lhs = bracket(a * b, c, v);
      Element rhs = a * bracket(b, c, x) + x * (bracket(a, c, v / x) * b);
      return lhs - rhs;
    }
    case IdentityKind::LeibnizSum: {
      Element lhs = bracket(a, nested_bracket(bind.items, bind.vs), Scalar(1));
      Element rhs;
      for (size_t i = 0; i < bind.items.size(); ++i) {
        auto items = bind.items;
        items[i] = bracket(a, bind.items[i], Scalar(1));
        rhs += nested_bracket(items, bind.vs);
      }
      return lhs - rhs;
    }
    case IdentityKind::Sym215: {
      Element e1 = nested_bracket({a, a, b}, {u, v});
      Element e2 = nested_bracket({a, a, b}, {v, u});
      Element diff = e1 - e2;
      if (!diff.is_zero()) return diff;
      Element expand = a * a * b - (u + v) * (a * b * a) + (u * v) * (b * a * a);
      return e1 - expand;
    }
    case IdentityKind::Antimorphism: {
      for (const auto& vi : bind.vs) {
        if (vi.is_zero())
          throw std::invalid_argument("antimorphism law needs invertible v_i");
        if (!(vi.bar() == vi.inverse()))
          throw std::invalid_argument(
              "antimorphism law instance needs bar(v) = v^-1");
      }
      GenImages identity = [](const GenSym& g) { return Element::gen(g); };
      Element lhs = omega(nested_bracket(bind.items, bind.vs), identity);
      std::vector<Element> bi;
      for (const auto& it : bind.items) bi.push_back(omega(it, identity));
      Scalar pref(1);
      for (const auto& vi : bind.vs) pref *= vi.inverse();
      if (bind.vs.size() % 2 == 1) pref = -pref;  // (-1)^{n-1}
      Element rhs = pref * nested_bracket(bi, bind.vs);
      return lhs - rhs;
    }
  }
  throw std::invalid_argument("unknown identity kind");
}

// ------------------------------------------------------------ text form

std::string element_str(const Element& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    os << " * ";
    if (w->empty()) {
      os << "1";
    } else {
      bool fg = true;
      for (const auto& g : *w) {
        if (!fg) os << "·";
        fg = false;
        os << g.str();
      }
    }
  }
  return os.str();
}

namespace {

struct ElemParser {
  const std::string& s;
  size_t p = 0;
  explicit ElemParser(const std::string& str) : s(str) {}

  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool lit(const char* t) {
    ws();
    size_t n = std::strlen(t);
    if (s.compare(p, n, t) == 0) {
      p += n;
      return true;
    }
    return false;
  }
  char peek() {
    ws();
    return p < s.size() ? s[p] : '\0';
  }

  long integer() {
    ws();
    size_t start = p;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (start == p) throw std::invalid_argument("element parse: int expected");
    return std::stol(s.substr(start, p - start));
  }

  long paren_int() {
    if (!lit("(")) throw std::invalid_argument("element parse: '(' expected");
    long v = integer();
    if (!lit(")")) throw std::invalid_argument("element parse: ')' expected");
    return v;
  }

  GenSym token() {
    ws();
    if (lit("qd")) return gen_qd(lit("^-1") ? -1 : 1);
    char c = peek();
    if (c == 'x') {
      ++p;
      long i = integer();
      char sg = peek();
      if (sg != '+' && sg != '-')
        throw std::invalid_argument("element parse: x needs a sign");
      ++p;
      long k = paren_int();
      return gen_x(sg == '+' ? 1 : -1, static_cast<int>(i),
                   static_cast<int>(k));
    }
    if (c == 'a') {
      ++p;
      long i = integer();
      long k = paren_int();
      return gen_a(static_cast<int>(i), static_cast<int>(k));
    }
    if (c == 'K') {
      ++p;
      long i = integer();
      return gen_K(static_cast<int>(i), lit("^-1") ? -1 : 1);
    }
    if (c == 'g') {
      ++p;
      return gen_gamma(lit("^-1") ? -1 : 1);
    }
    if (c == 's') {
      ++p;
      long i = integer();
      long m = peek() == '(' ? paren_int() : 0;
      return sym(static_cast<int>(i), static_cast<int>(m));
    }
    throw std::invalid_argument(std::string("element parse: bad token at '") +
                                c + "'");
  }

  Word word() {
    Word w;
    if (lit("1")) return w;
    w.push_back(token());
    for (;;) {
      ws();
      if (lit("·") || lit(".")) {
        w.push_back(token());
      } else {
        break;
      }
    }
    return w;
  }

  // balanced-paren scalar expression
  Scalar coefficient() {
    ws();
    if (peek() != '(')
      throw std::invalid_argument("element parse: coefficient '(' expected");
    size_t start = p;
    int depth = 0;
    while (p < s.size()) {
      if (s[p] == '(') ++depth;
      if (s[p] == ')') {
        --depth;
        if (depth == 0) {
          ++p;
          return parse_scalar(s.substr(start + 1, p - start - 2));
        }
      }
      ++p;
    }
    throw std::invalid_argument("element parse: unbalanced coefficient");
  }

  Element run() {
    Element r;
    bool first = true;
    for (;;) {
      ws();
      if (p >= s.size()) break;
      Scalar sign(1);
      if (lit("+")) {
      } else if (lit("-")) {
        sign = Scalar(-1);
      } else if (!first) {
        throw std::invalid_argument("element parse: '+'/'-' expected");
      }
      first = false;
      ws();
      Scalar c(1);
      bool have_coeff = false;
      if (peek() == '(') {
        c = coefficient();
        have_coeff = true;
      }
      ws();
      Word w;
      if (have_coeff) {
        if (lit("*")) w = word();
      } else {
        w = word();
      }
      r += Element::word(w, sign * c);
      ws();
      if (p >= s.size()) break;
    }
    return r;
  }
};

}  // namespace

Element parse_element(const std::string& text) {
  if (text == "0") return Element();
  ElemParser pr(text);
  return pr.run();
}

}  // namespace qaff
