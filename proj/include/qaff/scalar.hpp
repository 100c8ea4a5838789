#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qaff {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Element of Q(w_r) for r in {1,2,3}. Orders 1 and 2 live on the rational
// line (w_2 = -1); order 3 uses the power basis {1, w} of Q[x]/(x^2+x+1).
class Cyc {
 public:
  Cyc() : a_(0), b_(0), cubic_(false) {}
  Cyc(long v) : a_(v), b_(0), cubic_(false) {}
  Cyc(const Rat& v) : a_(v), b_(0), cubic_(false) {}
  Cyc(const Rat& a, const Rat& b) : a_(a), b_(b), cubic_(true) { normal(); }

  static Cyc omega(int order);

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return !cubic_ && a_ == 1; }
  bool cubic() const { return cubic_; }
  const Rat& re() const { return a_; }
  const Rat& wc() const { return b_; }

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc inverse() const;
  Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }

  bool operator==(const Cyc& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normal() {
    if (b_ == 0) cubic_ = false;
  }
  Rat a_, b_;
  bool cubic_;
};

// Laurent polynomial in t with Cyc coefficients; coeff_[i] multiplies
// t^(lo_+i). Zero is the empty vector with lo_ = 0.
class Laurent {
 public:
  Laurent() : lo_(0) {}
  explicit Laurent(const Cyc& c) : lo_(0) {
    if (!c.is_zero()) coeff_.push_back(c);
  }
  static Laurent monomial(const Cyc& c, long exp);

  bool is_zero() const { return coeff_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(coeff_.size()) - 1; }
  size_t size() const { return coeff_.size(); }
  Cyc at(long exp) const;
  const Cyc& lead() const;
  const Cyc& trail() const { return coeff_.front(); }

  Laurent operator-() const;
  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent shifted(long e) const;  // times t^e
  Laurent bar() const;            // t -> t^-1

  bool operator==(const Laurent& o) const {
    return lo_ == o.lo_ && coeff_ == o.coeff_;
  }

  // Treats both operands as ordinary polynomials anchored at their lo.
  static void divmod(const Laurent& a, const Laurent& b, Laurent& q,
                     Laurent& r);
  static Laurent gcd(Laurent a, Laurent b);

  std::string str() const;

 private:
  void trim();
  long lo_;
  std::vector<Cyc> coeff_;
  friend class Scalar;
};

// Rational function in t = q^(1/12) over Q(w_r). Normal form: num/den
// coprime, den an ordinary polynomial with nonzero constant term and
// leading coefficient 1; zero is 0/1.
class Scalar {
 public:
  Scalar() : num_(), den_(Cyc(1)) {}
  Scalar(long v) : num_(Cyc(v)), den_(Cyc(1)) {}
  Scalar(const Rat& v) : num_(Cyc(v)), den_(Cyc(1)) {}
  Scalar(const Cyc& v) : num_(v), den_(Cyc(1)) {}
  Scalar(const Laurent& n, const Laurent& d);

  static Scalar t_pow(long e);           // t^e
  static Scalar q_pow(const Rat& e);     // q^e, 12e must be integral
  static Scalar q() { return q_pow(1); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_laurent() const;  // denominator == 1
  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar bar() const;  // q -> q^-1

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normal();
  Laurent num_, den_;
};

// q-integer [k]_{q^d} = (q^{dk} - q^{-dk})/(q^d - q^{-d}); requires 12d
// and 12dk integral so every power of q is an integral power of t.
Scalar q_int(long k, const Rat& d);
Scalar q_factorial(long m, const Rat& d);
// [m choose s]_{q^d}; a Laurent polynomial.
Scalar q_binomial(long m, long s, const Rat& d);
// Value of the paper's printed (2.5) denominator convention
// (q_i^k - q_i^{-k})/(q - q^{-1}); kept computable for the regression test.
Scalar q_int_printed(long k, const Rat& d);
// (-q)^e for integral e.
Scalar minus_q_pow(long e);
Scalar omega_scalar(int order);

Scalar parse_scalar(const std::string& text);

}  // namespace qaff
