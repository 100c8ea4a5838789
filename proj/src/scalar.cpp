#include "qaff/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qaff {

namespace {

Rat rat_of(long n, long d) { return Rat(Int(n), Int(d)); }

bool is_integral(const Rat& r) { return denominator(r) == 1; }

long to_long(const Rat& r) {
  if (!is_integral(r)) throw std::invalid_argument("expected integer");
  return static_cast<long>(numerator(r).convert_to<long long>());
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Cyc

Cyc Cyc::omega(int order) {
  switch (order) {
    case 1: return Cyc(1);
    case 2: return Cyc(-1);
    case 3: return Cyc(Rat(0), Rat(1));
    default: throw std::invalid_argument("cyclotomic order must be 1, 2 or 3");
  }
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc r;
  r.a_ = a_ + o.a_;
  r.b_ = b_ + o.b_;
  r.cubic_ = true;
  r.normal();
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  // (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w.
  Cyc r;
  r.a_ = a_ * o.a_ - b_ * o.b_;
  r.b_ = a_ * o.b_ + b_ * o.a_ - b_ * o.b_;
  r.cubic_ = true;
  r.normal();
  return r;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(w)");
  if (!cubic_) {
    Cyc r;
    r.a_ = Rat(1) / a_;
    return r;
  }
  Rat n = a_ * a_ - a_ * b_ + b_ * b_;
  return Cyc((a_ - b_) / n, -b_ / n);
}

std::string Cyc::str() const {
  if (!cubic_) return rat_str(a_);
  std::ostringstream os;
  os << "(" << rat_str(a_);
  if (b_ > 0)
    os << "+" << rat_str(b_) << "*w";
  else
    os << "-" << rat_str(-b_) << "*w";
  os << ")";
  return os.str();
}

// ------------------------------------------------------------- Laurent

Laurent Laurent::monomial(const Cyc& c, long exp) {
  Laurent r;
  if (c.is_zero()) return r;
  r.lo_ = exp;
  r.coeff_.push_back(c);
  return r;
}

Cyc Laurent::at(long exp) const {
  if (exp < lo_ || exp > hi()) return Cyc();
  return coeff_[static_cast<size_t>(exp - lo_)];
}

const Cyc& Laurent::lead() const {
  if (is_zero()) throw std::domain_error("lead of zero polynomial");
  return coeff_.back();
}

void Laurent::trim() {
  while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
  size_t drop = 0;
  while (drop < coeff_.size() && coeff_[drop].is_zero()) ++drop;
  if (drop) {
    coeff_.erase(coeff_.begin(), coeff_.begin() + static_cast<long>(drop));
    lo_ += static_cast<long>(drop);
  }
  if (coeff_.empty()) lo_ = 0;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.coeff_) c = -c;
  return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long nlo = std::min(lo_, o.lo_);
  long nhi = std::max(hi(), o.hi());
  Laurent r;
  r.lo_ = nlo;
  r.coeff_.assign(static_cast<size_t>(nhi - nlo + 1), Cyc());
  for (size_t i = 0; i < coeff_.size(); ++i)
    r.coeff_[static_cast<size_t>(lo_ - nlo) + i] = coeff_[i];
  for (size_t i = 0; i < o.coeff_.size(); ++i) {
    auto& slot = r.coeff_[static_cast<size_t>(o.lo_ - nlo) + i];
    slot = slot + o.coeff_[i];
  }
  r.trim();
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  if (is_zero() || o.is_zero()) return r;
  r.lo_ = lo_ + o.lo_;
  r.coeff_.assign(coeff_.size() + o.coeff_.size() - 1, Cyc());
  for (size_t i = 0; i < coeff_.size(); ++i)
    for (size_t j = 0; j < o.coeff_.size(); ++j)
      r.coeff_[i + j] = r.coeff_[i + j] + coeff_[i] * o.coeff_[j];
  r.trim();
  return r;
}

Laurent Laurent::shifted(long e) const {
  Laurent r = *this;
  if (!r.is_zero()) r.lo_ += e;
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  if (is_zero()) return r;
  r.coeff_.assign(coeff_.rbegin(), coeff_.rend());
  r.lo_ = -hi();
  r.trim();
  return r;
}

void Laurent::divmod(const Laurent& a, const Laurent& b, Laurent& q,
                     Laurent& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  q = Laurent();
  r = a;
  Cyc binv = b.lead().inverse();
  while (!r.is_zero() && r.hi() >= b.hi()) {
    Cyc c = r.lead() * binv;
    long e = r.hi() - b.hi();
    Laurent m = Laurent::monomial(c, e);
    q = q + m;
    r = r - m * b;
  }
}

Laurent Laurent::gcd(Laurent a, Laurent b) {
  // Anchor both at exponent 0; t-units are irrelevant for gcd.
  if (!a.is_zero()) a.lo_ = 0;
  if (!b.is_zero()) b.lo_ = 0;
  while (!b.is_zero()) {
    Laurent q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
    if (!b.is_zero()) b.lo_ = 0;
  }
  if (a.is_zero()) return a;
  // Monic normalization.
  Cyc inv = a.lead().inverse();
  for (auto& c : a.coeff_) c = c * inv;
  return a;
}

std::string Laurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(coeff_.size()) - 1; i >= 0; --i) {
    const Cyc& c = coeff_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    long e = lo_ + i;  // power of t
    bool neg = !c.cubic() && c.re() < 0;
    Cyc mag = neg ? -c : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag.str();
    } else {
      Rat qe = rat_of(e, 12);
      std::string pw = is_integral(qe) ? rat_str(qe) : "(" + rat_str(qe) + ")";
      if (mag.is_one())
        os << "q^" << pw;
      else
        os << mag.str() << "*q^" << pw;
    }
  }
  return os.str();
}

// -------------------------------------------------------------- Scalar

Scalar::Scalar(const Laurent& n, const Laurent& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("scalar with zero denominator");
  normal();
}

Scalar Scalar::t_pow(long e) {
  Scalar r;
  r.num_ = Laurent::monomial(Cyc(1), e);
  r.den_ = Laurent(Cyc(1));
  return r;
}

Scalar Scalar::q_pow(const Rat& e) {
  Rat te = e * 12;
  if (!is_integral(te))
    throw std::invalid_argument("q-power outside the t = q^(1/12) lattice");
  return t_pow(to_long(te));
}

bool Scalar::is_one() const {
  return num_.size() == 1 && num_.lo() == 0 && num_.lead().is_one() &&
         den_.size() == 1 && den_.lead().is_one();
}

bool Scalar::is_laurent() const {
  return den_.size() == 1 && den_.lo() == 0 && den_.lead().is_one();
}

void Scalar::normal() {
  if (num_.is_zero()) {
    num_ = Laurent();
    den_ = Laurent(Cyc(1));
    return;
  }
  // Pull t-units so den is ordinary with nonzero constant term.
  long shift = den_.lo();
  den_ = den_.shifted(-shift);
  num_ = num_.shifted(-shift);
  Laurent g = Laurent::gcd(num_, den_);
  if (!(g.size() == 1 && g.lead().is_one())) {
    long nlo = num_.lo(), dlo = den_.lo();
    Laurent n0 = num_.shifted(-nlo), d0 = den_.shifted(-dlo);
    Laurent q, r;
    Laurent::divmod(n0, g, q, r);
    num_ = q.shifted(nlo);
    Laurent q2, r2;
    Laurent::divmod(d0, g, q2, r2);
    den_ = q2.shifted(dlo);
  }
  Cyc lead_inv = den_.lead().inverse();
  for (auto& c : num_.coeff_) c = c * lead_inv;
  for (auto& c : den_.coeff_) c = c * lead_inv;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::bar() const { return Scalar(num_.bar(), den_.bar()); }

std::string Scalar::str() const {
  if (is_zero()) return "0";
  if (is_laurent()) {
    if (num_.size() == 1) return num_.str();
    return "(" + num_.str() + ")";
  }
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ------------------------------------------------------------ q-values

Scalar q_int(long k, const Rat& d) {
  if (!is_integral(d * 12) || !is_integral(d * 12 * k))
    throw std::invalid_argument("q_int exponents leave the t lattice");
  if (k == 0) return Scalar(0);
  if (k < 0) return -q_int(-k, d);
  // Geometric form sum_{j=0}^{k-1} q^{d(k-1-2j)}.
  Scalar r(0);
  for (long j = 0; j < k; ++j) r += Scalar::q_pow(d * (k - 1 - 2 * j));
  return r;
}

Scalar q_factorial(long m, const Rat& d) {
  Scalar r(1);
  for (long k = 1; k <= m; ++k) r *= q_int(k, d);
  return r;
}

Scalar q_binomial(long m, long s, const Rat& d) {
  if (s < 0 || s > m) throw std::invalid_argument("q_binomial out of range");
  Scalar r = q_factorial(m, d) / (q_factorial(s, d) * q_factorial(m - s, d));
  if (!r.is_laurent())
    throw std::logic_error("q_binomial failed to normalize to a polynomial");
  return r;
}

Scalar q_int_printed(long k, const Rat& d) {
  Scalar num = Scalar::q_pow(d * k) - Scalar::q_pow(-d * k);
  Scalar den = Scalar::q() - Scalar::q_pow(-1);
  return num / den;
}

Scalar minus_q_pow(long e) {
  Scalar r = Scalar::q_pow(Rat(e));
  if (e % 2 != 0) r = -r;
  return r;
}

Scalar omega_scalar(int order) { return Scalar(Cyc::omega(order)); }

// -------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  size_t p = 0;

  explicit Parser(const std::string& str) : s(str) {}

  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(char c) {
    ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  char peek() {
    ws();
    return p < s.size() ? s[p] : '\0';
  }

  Rat rational() {
    ws();
    size_t start = p;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (start == p) throw std::invalid_argument("scalar parse: number expected");
    Int num(s.substr(start, p - start));
    ws();
    if (p < s.size() && s[p] == '/') {
      size_t save = p;
      ++p;
      ws();
      size_t ds = p;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        ++p;
      if (ds == p) {
        p = save;  // '/' belongs to scalar division
        return Rat(num);
      }
      Int den(s.substr(ds, p - ds));
      return Rat(num, den);
    }
    return Rat(num);
  }

  Rat exponent() {
    if (eat('(')) {
      Rat r = rational();
      if (!eat(')')) throw std::invalid_argument("scalar parse: ')' expected");
      return r;
    }
    return rational();
  }

  Scalar factor() {
    ws();
    if (p >= s.size()) throw std::invalid_argument("scalar parse: eof");
    char c = s[p];
    if (c == '(') {
      ++p;
      Scalar r = expr();
      if (!eat(')')) throw std::invalid_argument("scalar parse: ')' expected");
      return r;
    }
    if (c == 'q') {
      ++p;
      if (eat('^')) return Scalar::q_pow(exponent());
      return Scalar::q();
    }
    if (c == 'w') {
      ++p;
      Scalar w = omega_scalar(3);
      if (eat('^')) {
        long e = to_long(exponent());
        Scalar r(1);
        long m = ((e % 3) + 3) % 3;
        for (long i = 0; i < m; ++i) r *= w;
        return r;
      }
      return w;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')
      return Scalar(rational());
    throw std::invalid_argument(std::string("scalar parse: unexpected '") + c +
                                "'");
  }

  Scalar term() {
    Scalar r = factor();
    for (;;) {
      ws();
      if (eat('*')) {
        r *= factor();
      } else if (peek() == '/') {
        ++p;
        r = r / factor();
      } else {
        break;
      }
    }
    return r;
  }

  Scalar expr() {
    ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Scalar r = term();
    if (neg) r = -r;
    for (;;) {
      ws();
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        break;
    }
    return r;
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
  Parser pr(text);
  Scalar r = pr.expr();
  pr.ws();
  if (pr.p != text.size())
    throw std::invalid_argument("scalar parse: trailing input");
  return r;
}

}  // namespace qaff
