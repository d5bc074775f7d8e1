#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "osm/cyclo.hpp"

using namespace osm;

namespace {

using cd = std::complex<double>;

cd eval(const Cyclotomic& x) {
  cd s = 0;
  for (const auto& t : x.terms())
    s += t.coeff.get_d() * std::polar(1.0, 2 * M_PI * double(t.exponent) / double(x.order()));
  return s;
}

Cyclotomic random_value(std::mt19937_64& rng) {
  static const std::uint64_t orders[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24};
  std::uniform_int_distribution<int> pick(0, 10), coeff(-5, 5), den(1, 3), count(1, 4);
  Cyclotomic x;
  int terms = count(rng);
  for (int i = 0; i < terms; ++i) {
    std::uint64_t n = orders[pick(rng)];
    std::uniform_int_distribution<std::int64_t> k(0, std::int64_t(n) - 1);
    Rational c(coeff(rng), den(rng));
    c.canonicalize();
    x += Cyclotomic::root(n, k(rng)) * c;
  }
  return x;
}

}  // namespace

TEST_CASE("sum of primitive fifth roots is -1") {
  Cyclotomic s;
  for (int k = 1; k <= 4; ++k) s += Cyclotomic::root(5, k);
  CHECK(s == Cyclotomic(-1));
  CHECK(s.to_rational() == -1);
}

TEST_CASE("conjugation of a seventh root") {
  CHECK(Cyclotomic::root(7, 3).conj() == Cyclotomic::root(7, 4));
}

TEST_CASE("square of zeta3 - zeta3^2") {
  Cyclotomic d = Cyclotomic::root(3, 1) - Cyclotomic::root(3, 2);
  CHECK((d * d).to_rational() == -3);
}

TEST_CASE("rescaled roots reduce to the same value") {
  CHECK(Cyclotomic::root(14, 6) == Cyclotomic::root(7, 3));
  CHECK(Cyclotomic::root(60, 45) == Cyclotomic::root(4, 3));
  CHECK(Cyclotomic::root(2, 1) == Cyclotomic(-1));
  CHECK(Cyclotomic::root(6, 1).order() == 3);
  CHECK(Cyclotomic::root(12, 4).order() == 3);
}

TEST_CASE("root times inverse root is one") {
  for (std::uint64_t n : {1, 2, 3, 8, 12, 30, 45, 63})
    for (std::uint64_t k = 0; k < n; ++k)
      CHECK(Cyclotomic::root(n, k) * Cyclotomic::root(n, n - k) == Cyclotomic(1));
}

TEST_CASE("to_rational rejects irrational values") {
  CHECK_THROWS_AS(Cyclotomic::root(5, 1).to_rational(), NotRational);
  CHECK_THROWS_AS(gauss_sum(5).to_rational(), NotRational);
}

TEST_CASE("gauss sums square to signed primes") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 83}) {
    Cyclotomic g = gauss_sum(p);
    long sign = (p % 4 == 1) ? 1 : -1;
    CHECK((g * g).to_rational() == Rational(sign * long(p)));
  }
}

TEST_CASE("canonical form matches numerical evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Cyclotomic a = random_value(rng), b = random_value(rng);
    cd direct = eval(a) * eval(b) + eval(a);
    CHECK(std::abs(eval(a * b + a) - direct) < 1e-9);
    CHECK(std::abs(eval(a.conj()) - std::conj(eval(a))) < 1e-9);
  }
}

TEST_CASE("ring axioms on random values") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    Cyclotomic a = random_value(rng), b = random_value(rng), c = random_value(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
  }
}

TEST_CASE("zero is detected exactly") {
  Cyclotomic s;
  for (int k = 0; k < 12; ++k) s += Cyclotomic::root(12, k);
  CHECK(s.is_zero());
  CHECK(s.order() == 1);
}

TEST_CASE("accumulator agrees with direct arithmetic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    CyclotomicAccumulator acc;
    Cyclotomic direct;
    for (int i = 0; i < 6; ++i) {
      Cyclotomic a = random_value(rng), b = random_value(rng);
      Rational s(int(rng() % 7) - 3, 2);
      s.canonicalize();
      acc.add_product(a, b, s, i % 2 == 1);
      direct += (i % 2 == 1 ? a * b.conj() : a * b) * s;
      acc.add(a, 3);
      direct += a * Rational(3);
    }
    CHECK(acc.value() == direct);
  }
}

TEST_CASE("text form") {
  CHECK(Cyclotomic(Rational(3, 2)).to_string() == "3/2");
  CHECK(Cyclotomic().to_string() == "0");
  CHECK(Cyclotomic::root(5, 2).to_string() == "z^2 (mod 5)");
  CHECK((Cyclotomic(1) - Cyclotomic::root(7, 3) * Rational(2)).to_string() == "1 - 2*z^3 (mod 7)");
}
