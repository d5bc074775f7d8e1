#include <set>

#include "doctest.h"
#include "osm/gf.hpp"

using namespace osm;

TEST_CASE("GF(4) generator has order 3") {
  auto f = gf_make(2, 2);
  auto nu = f->generator();
  CHECK(nu != f->one());
  CHECK(f->pow(nu, 3) == f->one());
}

TEST_CASE("GF(8) theta squares to the Frobenius square") {
  auto f = gf_make(2, 3);
  for (FieldSpec::Code x = 0; x < 8; ++x) {
    CHECK(f->theta(x) == f->pow(x, 4));
    CHECK(f->theta(f->theta(x)) == f->mul(x, x));
  }
}

TEST_CASE("GF(9) generator") {
  auto f = gf_make(3, 2);
  auto nu = f->generator();
  CHECK(f->pow(nu, 8) == f->one());
  CHECK(f->pow(nu, 4) == f->neg(f->one()));
}

TEST_CASE("theta rejects unsupported fields") {
  CHECK_THROWS(gf_make(2, 2)->theta(1));
  CHECK_THROWS(gf_make(3, 3)->theta(1));
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 1u}, {3u, 3u}, {2u, 4u}, {7u, 1u}}) {
    auto f = gf_make(p, n);
    const auto q = f->q();
    for (FieldSpec::Code a = 0; a < q; ++a) {
      CHECK(f->add(a, f->neg(a)) == 0);
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
      for (FieldSpec::Code b = 0; b < q; ++b) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        for (FieldSpec::Code c = 0; c < q; c += 3)
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      }
    }
  }
}

TEST_CASE("Frobenius is an automorphism fixing the prime field") {
  for (auto [p, n] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}}) {
    auto f = gf_make(p, n);
    std::set<FieldSpec::Code> image, fixed;
    for (FieldSpec::Code a = 0; a < f->q(); ++a) {
      image.insert(f->frobenius(a));
      if (f->frobenius(a) == a) fixed.insert(a);
      for (FieldSpec::Code b = 0; b < f->q(); ++b) {
        CHECK(f->frobenius(f->mul(a, b)) == f->mul(f->frobenius(a), f->frobenius(b)));
        CHECK(f->frobenius(f->add(a, b)) == f->add(f->frobenius(a), f->frobenius(b)));
      }
    }
    CHECK(image.size() == f->q());
    CHECK(fixed.size() == p);
    for (std::uint32_t k = 0; k < p; ++k) CHECK(fixed.count(f->from_int(k)) == 1);
  }
}

TEST_CASE("modulus is the lowest irreducible") {
  CHECK(gf_make(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(gf_make(2, 3)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(gf_make(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(gf_make(2, 4)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
}

TEST_CASE("generator order is q-1 on larger fields") {
  for (std::uint64_t q : {83u, 128u, 243u, 8192u}) {
    auto f = gf_make_q(q);
    auto nu = f->generator();
    std::uint64_t order = 1;
    auto x = nu;
    while (x != 1) {
      x = f->mul(x, nu);
      ++order;
    }
    CHECK(order == q - 1);
  }
}

TEST_CASE("invalid orders") {
  CHECK_THROWS(gf_make_q(6));
  CHECK_THROWS(gf_make(4, 1));
  CHECK_THROWS(gf_make(2, 20));
}
