#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace osm {

// GF(p^n). Elements are codes 0..q-1 whose base-p digits are polynomial
// coefficients (lowest degree first) modulo the stored modulus.
class FieldSpec {
 public:
  using Code = std::uint32_t;

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  // monic modulus coefficients c_0..c_n
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Code generator() const { return generator_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code from_int(std::int64_t v) const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::int64_t e) const;
  // nu^k
  Code gen_pow(std::int64_t k) const;
  // k with nu^k = a; a != 0
  std::uint32_t log(Code a) const;
  bool is_square(Code a) const;
  Code frobenius(Code a) const { return pow(a, p_); }
  // x -> x^(2^((n+1)/2)); requires p = 2 and odd n
  Code theta(Code a) const;

  std::string to_string(Code a) const;

 private:
  friend std::shared_ptr<const FieldSpec> gf_make(std::uint32_t p, std::uint32_t n);
  std::uint32_t p_ = 0, n_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Code generator_ = 0;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Code> add_;  // q*q table, or empty when q is large
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Lowest-lexicographic monic irreducible modulus and first primitive element.
FieldPtr gf_make(std::uint32_t p, std::uint32_t n);
// q must be a prime power
FieldPtr gf_make_q(std::uint64_t q);
bool is_prime_power(std::uint64_t q, std::uint32_t* p = nullptr, std::uint32_t* n = nullptr);

// Value wrapper for arithmetic with operators; the FieldSpec must outlive it.
struct FieldElement {
  const FieldSpec* field = nullptr;
  FieldSpec::Code code = 0;

  friend FieldElement operator+(FieldElement a, FieldElement b) { return {a.field, a.field->add(a.code, b.code)}; }
  friend FieldElement operator-(FieldElement a, FieldElement b) { return {a.field, a.field->sub(a.code, b.code)}; }
  friend FieldElement operator*(FieldElement a, FieldElement b) { return {a.field, a.field->mul(a.code, b.code)}; }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return {a.field, a.field->div(a.code, b.code)}; }
  FieldElement operator-() const { return {field, field->neg(code)}; }
  FieldElement inv() const { return {field, field->inv(code)}; }
  FieldElement pow(std::int64_t e) const { return {field, field->pow(code, e)}; }
  friend bool operator==(FieldElement a, FieldElement b) { return a.code == b.code; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.code != b.code; }
};

}  // namespace osm
