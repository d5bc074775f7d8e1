#include "osm/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace osm {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

struct PrimePart {
  std::uint64_t p, pe, alpha, bound;
};

struct OrderInfo {
  std::vector<PrimePart> parts;
};

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::logic_error("inverse_mod: not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

const OrderInfo& order_info(std::uint64_t n) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::unique_ptr<OrderInfo>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto info = std::make_unique<OrderInfo>();
  for (auto [p, e] : factorize(n)) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    PrimePart part{p, pe, pe == 1 ? 0 : inverse_mod((n / pe) % pe, pe), pe / p * (p - 1)};
    info->parts.push_back(part);
  }
  return *cache.emplace(n, std::move(info)).first->second;
}

bool is_basis_digit(const PrimePart& part, std::uint64_t k) {
  return (k % part.pe) * part.alpha % part.pe < part.bound;
}

std::uint64_t mod_signed(std::int64_t k, std::uint64_t n) {
  std::int64_t r = k % static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(n) : r);
}

}  // namespace

Cyclotomic::Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

Cyclotomic::Cyclotomic(const Integer& v) : Cyclotomic(Rational(v)) {}

Cyclotomic::Cyclotomic(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  if (c != 0) terms_.push_back({0, std::move(c)});
}

Cyclotomic Cyclotomic::root(std::uint64_t n, std::int64_t k) {
  if (n == 0) throw std::invalid_argument("Cyclotomic::root: order must be positive");
  std::unordered_map<std::uint64_t, Rational> c;
  c[mod_signed(k, n)] = 1;
  return reduce(n, c);
}

Cyclotomic Cyclotomic::reduce(std::uint64_t n, std::unordered_map<std::uint64_t, Rational>& c) {
  const OrderInfo& info = order_info(n);
  std::vector<std::pair<std::uint64_t, Rational>> moved;
  for (const PrimePart& part : info.parts) {
    const std::uint64_t step = n / part.p;
    moved.clear();
    for (auto it = c.begin(); it != c.end();) {
      if (!is_basis_digit(part, it->first)) {
        moved.emplace_back(it->first, std::move(it->second));
        it = c.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& [k, v] : moved) {
      if (v == 0) continue;
      for (std::uint64_t j = 1; j < part.p; ++j) c[(k + j * step) % n] -= v;
    }
  }
  Cyclotomic out;
  out.order_ = n;
  out.terms_.reserve(c.size());
  for (auto& [k, v] : c)
    if (v != 0) out.terms_.push_back({k, std::move(v)});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  out.minimize();
  return out;
}

void Cyclotomic::minimize() {
  if (terms_.empty()) {
    order_ = 1;
    return;
  }
  bool changed = true;
  while (changed && order_ > 1) {
    changed = false;
    for (const PrimePart& part : order_info(order_).parts) {
      const std::uint64_t p = part.p;
      bool all = std::all_of(terms_.begin(), terms_.end(),
                             [p](const Term& t) { return t.exponent % p == 0; });
      if (!all) continue;
      order_ /= p;
      for (Term& t : terms_) t.exponent /= p;
      changed = true;
      break;
    }
  }
}

Rational Cyclotomic::to_rational() const {
  if (order_ != 1) throw NotRational("value " + to_string() + " is not rational");
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (order_ == 1) return *this;
  std::uint64_t t = mod_signed(k, order_);
  if (gcd_u64(t, order_) != 1) throw std::invalid_argument("Cyclotomic::galois: exponent not coprime to order");
  std::unordered_map<std::uint64_t, Rational> c;
  for (const Term& term : terms_) c[term.exponent * t % order_] = term.coeff;
  return reduce(order_, c);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (&o == this) return *this *= Rational(2);
  const std::uint64_t n = lcm_u64(order_, o.order_);
  const std::uint64_t sa = n / order_, sb = n / o.order_;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    std::uint64_t ka = a != terms_.end() ? a->exponent * sa : UINT64_MAX;
    std::uint64_t kb = b != o.terms_.end() ? b->exponent * sb : UINT64_MAX;
    if (ka < kb) {
      merged.push_back({ka, std::move(a->coeff)});
      ++a;
    } else if (kb < ka) {
      merged.push_back({kb, b->coeff});
      ++b;
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) merged.push_back({ka, std::move(s)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  order_ = n;
  minimize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero() || b.is_zero()) return Cyclotomic();
  if (a.order_ == 1) return b * a.terms_.front().coeff;
  if (b.order_ == 1) return a * b.terms_.front().coeff;
  const std::uint64_t n = lcm_u64(a.order_, b.order_);
  const std::uint64_t sa = n / a.order_, sb = n / b.order_;
  std::unordered_map<std::uint64_t, Rational> c;
  c.reserve(a.terms_.size() * b.terms_.size());
  Rational tmp;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      mpq_mul(tmp.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      c[(ta.exponent * sa + tb.exponent * sb) % n] += tmp;
    }
  return Cyclotomic::reduce(n, c);
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c == 0) return *this = Cyclotomic();
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c == 0) throw std::domain_error("Cyclotomic: division by zero");
  for (Term& t : terms_) t.coeff /= c;
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::string Cyclotomic::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.exponent == 0) {
      os << c.get_str();
    } else {
      if (c == -1) os << "-";
      else if (c != 1) os << c.get_str() << "*";
      os << "z^" << t.exponent;
    }
  }
  if (order_ != 1) os << " (mod " << order_ << ")";
  return os.str();
}

void CyclotomicAccumulator::add(const Cyclotomic& a, const Rational& scale) {
  if (a.is_zero() || scale == 0) return;
  auto& bucket = buckets_[a.order()];
  Rational tmp;
  for (const auto& t : a.terms()) {
    mpq_mul(tmp.get_mpq_t(), t.coeff.get_mpq_t(), scale.get_mpq_t());
    bucket[t.exponent] += tmp;
  }
}

void CyclotomicAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& scale,
                                        bool conjugate_b) {
  add_product(RootSum(a), RootSum(b), scale, conjugate_b);
}

void CyclotomicAccumulator::add_product(const RootSum& a, const RootSum& b, const Rational& scale, bool conjugate_b) {
  if (a.terms.empty() || b.terms.empty() || scale == 0) return;
  const std::uint64_t n = lcm_u64(a.order, b.order);
  const std::uint64_t sa = n / a.order, sb = n / b.order;
  auto& bucket = buckets_[n];
  Rational tmp;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      mpq_mul(tmp.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      mpq_mul(tmp.get_mpq_t(), tmp.get_mpq_t(), scale.get_mpq_t());
      std::uint64_t kb = tb.exponent * sb % n;
      if (conjugate_b && kb) kb = n - kb;
      bucket[(ta.exponent * sa + kb) % n] += tmp;
    }
  }
}

Cyclotomic CyclotomicAccumulator::value() const {
  Cyclotomic out;
  for (const auto& [n, bucket] : buckets_) {
    auto copy = bucket;
    out += Cyclotomic::reduce(n, copy);
  }
  return out;
}

RootSum& RootSum::add_root(std::int64_t k, const Rational& c) {
  terms.push_back({mod_signed(k, order), c});
  return *this;
}

Cyclotomic RootSum::value() const {
  std::unordered_map<std::uint64_t, Rational> c;
  for (const auto& t : terms) c[t.exponent] += t.coeff;
  return Cyclotomic::reduce(order, c);
}

std::complex<double> RootSum::to_complex() const {
  std::complex<double> s = 0;
  for (const auto& t : terms)
    s += t.coeff.get_d() * std::polar(1.0, 2 * M_PI * double(t.exponent) / double(order));
  return s;
}

std::complex<double> Cyclotomic::to_complex() const { return RootSum(*this).to_complex(); }

Cyclotomic gauss_sum(std::uint64_t p) {
  if (p < 3 || factorize(p).size() != 1 || factorize(p).front().second != 1)
    throw std::invalid_argument("gauss_sum: p must be an odd prime");
  std::unordered_map<std::uint64_t, Rational> c;
  for (std::uint64_t a = 1; a < p; ++a) {
    std::uint64_t r = 1, base = a, e = (p - 1) / 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    c[a] = (r == 1) ? 1 : -1;
  }
  return Cyclotomic::reduce(p, c);
}

}  // namespace osm
