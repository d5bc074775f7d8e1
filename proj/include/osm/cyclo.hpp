#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace osm {

using Integer = mpz_class;
using Rational = mpq_class;

struct NotRational : std::domain_error {
  using std::domain_error::domain_error;
};

// Element of Q(zeta_N).
//
// Values are stored in the basis obtained by tensoring the power bases of
// Q(zeta_{p^e}) over the prime powers p^e || N, written as exponents of
// zeta_N, and always at the smallest N containing the value. Equality is
// therefore structural.
class Cyclotomic {
 public:
  struct Term {
    std::uint64_t exponent;
    Rational coeff;
  };

  Cyclotomic() = default;
  Cyclotomic(long v);
  Cyclotomic(const Integer& v);
  Cyclotomic(const Rational& v);

  static Cyclotomic root(std::uint64_t n, std::int64_t k);

  std::uint64_t order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return order_ == 1; }
  Rational to_rational() const;
  std::complex<double> to_complex() const;

  Cyclotomic conj() const;
  // zeta -> zeta^k for k coprime to the order
  Cyclotomic galois(std::int64_t k) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  Cyclotomic& operator/=(const Rational& r);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // "c0 + c1*z^1 + ... (mod N)"; rationals print bare
  std::string to_string() const;

  // canonical value of sum c_k zeta_n^k for an arbitrary coefficient map
  static Cyclotomic reduce(std::uint64_t n, std::unordered_map<std::uint64_t, Rational>& coeffs);

 private:
  void minimize();

  std::uint64_t order_ = 1;
  std::vector<Term> terms_;
};

// Unreduced sum of c_k zeta_n^k; cheap to build and multiply, reduced on demand.
struct RootSum {
  std::uint64_t order = 1;
  std::vector<Cyclotomic::Term> terms;

  RootSum() = default;
  RootSum(const Cyclotomic& v) : order(v.order()), terms(v.terms()) {}
  explicit RootSum(std::uint64_t n) : order(n) {}

  RootSum& add_root(std::int64_t k, const Rational& c = 1);
  Cyclotomic value() const;
  std::complex<double> to_complex() const;
};

// Accumulates sums of products without intermediate reduction; values are
// kept in the group ring Q[Z/n] per order and reduced once at the end.
class CyclotomicAccumulator {
 public:
  void add(const Cyclotomic& a, const Rational& scale = 1);
  // += scale * a * b, or scale * a * conj(b)
  void add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& scale = 1,
                   bool conjugate_b = false);
  void add_product(const RootSum& a, const RootSum& b, const Rational& scale = 1, bool conjugate_b = false);
  Cyclotomic value() const;

 private:
  std::map<std::uint64_t, std::unordered_map<std::uint64_t, Rational>> buckets_;
};

// sum_{a=1}^{p-1} (a/p) zeta_p^a, whose square is (-1)^((p-1)/2) p
Cyclotomic gauss_sum(std::uint64_t p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

}  // namespace osm
