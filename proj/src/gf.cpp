#include "osm/gf.hpp"

#include <sstream>

#include "osm/cyclo.hpp"

namespace osm {

namespace {

using Poly = std::vector<std::uint32_t>;

constexpr std::uint64_t kMaxOrder = 1u << 16;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1, e = p - 2;
  std::uint64_t b = a;
  while (e) {
    if (e & 1) r = static_cast<std::uint32_t>(r * b % p);
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// remainder of a modulo monic-or-not b
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(a.back()) * lead_inv % p);
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t(p - f) * b[i]) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

Poly code_to_poly(std::uint64_t code, std::uint32_t p) {
  Poly out;
  while (code) {
    out.push_back(static_cast<std::uint32_t>(code % p));
    code /= p;
  }
  return out;
}

std::uint32_t poly_to_code(const Poly& a, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return static_cast<std::uint32_t>(code);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = code_to_poly(low, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_power(std::uint64_t q, std::uint32_t* p, std::uint32_t* n) {
  if (q < 2) return false;
  auto f = factorize(q);
  if (f.size() != 1) return false;
  if (p) *p = static_cast<std::uint32_t>(f.front().first);
  if (n) *n = f.front().second;
  return true;
}

FieldPtr gf_make(std::uint32_t p, std::uint32_t n) {
  if (n == 0 || p < 2 || factorize(p).size() != 1 || factorize(p).front().second != 1)
    throw std::invalid_argument("gf_make: need a prime p and n >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::out_of_range("gf_make: field order exceeds the supported bound");
  }
  auto spec = std::make_shared<FieldSpec>();
  spec->p_ = p;
  spec->n_ = n;
  spec->q_ = static_cast<std::uint32_t>(q);

  std::uint64_t low_count = q;
  bool found = false;
  for (std::uint64_t low = 0; low < low_count && !found; ++low) {
    Poly f = code_to_poly(low, p);
    f.resize(n + 1, 0);
    f[n] = 1;
    if (is_irreducible(f, p)) {
      spec->modulus_ = f;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("gf_make: no irreducible modulus found");

  const Poly& m = spec->modulus_;
  auto pow_poly = [&](Poly base, std::uint64_t e) {
    Poly r{1};
    while (e) {
      if (e & 1) r = poly_mulmod(r, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    return r;
  };
  const auto primes = factorize(q - 1);
  for (std::uint64_t c = 1; c < q; ++c) {
    Poly g = code_to_poly(c, p);
    bool primitive = true;
    for (auto [r, e] : primes) {
      (void)e;
      if (pow_poly(g, (q - 1) / r) == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      spec->generator_ = static_cast<FieldSpec::Code>(c);
      break;
    }
  }
  if (q == 2) spec->generator_ = 1;
  if (spec->generator_ == 0) throw std::runtime_error("gf_make: no primitive element found");

  spec->exp_.resize(q - 1);
  spec->log_.assign(q, 0);
  Poly g = code_to_poly(spec->generator_, p);
  Poly cur{1};
  for (std::uint64_t i = 0; i + 1 < q; ++i) {
    FieldSpec::Code code = poly_to_code(cur, p);
    spec->exp_[i] = code;
    spec->log_[code] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, g, m, p);
  }
  if (p != 2 && q <= 1024) {
    spec->add_.resize(q * q);
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) {
        std::uint64_t x = a, y = b, r = 0, place = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
          r += ((x % p + y % p) % p) * place;
          x /= p;
          y /= p;
          place *= p;
        }
        spec->add_[a * q + b] = static_cast<FieldSpec::Code>(r);
      }
  }
  return spec;
}

FieldPtr gf_make_q(std::uint64_t q) {
  std::uint32_t p = 0, n = 0;
  if (!is_prime_power(q, &p, &n)) throw std::invalid_argument("gf_make_q: " + std::to_string(q) + " is not a prime power");
  return gf_make(p, n);
}

FieldSpec::Code FieldSpec::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<Code>(r < 0 ? r + p_ : r);
}

FieldSpec::Code FieldSpec::add(Code a, Code b) const {
  if (p_ == 2) return a ^ b;
  if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
  Code r = 0, place = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

FieldSpec::Code FieldSpec::neg(Code a) const {
  if (p_ == 2) return a;
  Code r = 0, place = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

FieldSpec::Code FieldSpec::sub(Code a, Code b) const { return add(a, neg(b)); }

FieldSpec::Code FieldSpec::mul(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t k = log_[a] + log_[b];
  if (k >= q_ - 1) k -= q_ - 1;
  return exp_[k];
}

FieldSpec::Code FieldSpec::inv(Code a) const {
  if (a == 0) throw std::domain_error("FieldSpec::inv: zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldSpec::Code FieldSpec::pow(Code a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("FieldSpec::pow: zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  return gen_pow(static_cast<std::int64_t>(log_[a]) * (e % static_cast<std::int64_t>(q_ - 1)));
}

FieldSpec::Code FieldSpec::gen_pow(std::int64_t k) const {
  std::int64_t m = static_cast<std::int64_t>(q_ - 1);
  std::int64_t r = k % m;
  return exp_[static_cast<std::size_t>(r < 0 ? r + m : r)];
}

std::uint32_t FieldSpec::log(Code a) const {
  if (a == 0) throw std::domain_error("FieldSpec::log: zero");
  return log_[a];
}

bool FieldSpec::is_square(Code a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }

FieldSpec::Code FieldSpec::theta(Code a) const {
  if (p_ != 2 || n_ % 2 == 0) throw std::domain_error("FieldSpec::theta: requires p = 2 and odd n");
  std::int64_t e = std::int64_t(1) << ((n_ + 1) / 2);
  return pow(a, e);
}

std::string FieldSpec::to_string(Code a) const {
  if (n_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  std::ostringstream os;
  bool first = true;
  Poly c = code_to_poly(a, p_);
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace osm
