#include "osm/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace osm {

namespace {

std::uint64_t order_of_power(std::uint64_t n, std::uint64_t k) { return n / std::gcd(n, k % n == 0 ? n : k % n); }

Integer mpz(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

using K = ClassLabel::Kind;

ClassLabel L(K k, std::uint32_t i = 0) { return ClassLabel{k, i}; }

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

Element FiniteGroup::power(Element g, std::int64_t k) const {
  if (k < 0) {
    g = inverse(g);
    k = -k;
  }
  Element r = identity();
  while (k) {
    if (k & 1) r = multiply(r, g);
    g = multiply(g, g);
    k >>= 1;
  }
  return r;
}

Element FiniteGroup::conjugate(Element g, Element by) const { return multiply(multiply(inverse(by), g), by); }

std::uint64_t FiniteGroup::element_order(Element g) const {
  const Element e = identity();
  std::uint64_t k = 1;
  Element x = g;
  while (x != e) {
    x = multiply(x, g);
    ++k;
  }
  return k;
}

std::vector<Element> FiniteGroup::closure(const std::vector<Element>& gens) const {
  std::vector<char> seen(size(), 0);
  std::vector<Element> out{identity()};
  seen[identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Element s : gens) {
      Element y = multiply(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

CayleyGroup::CayleyGroup(std::vector<std::vector<Element>> table) : table_(std::move(table)) {
  const std::size_t n = table_.size();
  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("CayleyGroup: no identity");
  inverse_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    auto it = std::find(table_[x].begin(), table_[x].end(), identity_);
    if (it == table_[x].end()) throw std::invalid_argument("CayleyGroup: element without inverse");
    inverse_[x] = static_cast<Element>(it - table_[x].begin());
  }
}

CayleyGroup cyclic_group(std::uint32_t n) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return CayleyGroup(std::move(t));
}

CayleyGroup dihedral_group(std::uint32_t n) {
  std::vector<std::vector<Element>> t(2 * n, std::vector<Element>(2 * n));
  for (Element x = 0; x < 2 * n; ++x)
    for (Element y = 0; y < 2 * n; ++y) {
      std::uint32_t a = x / n, i = x % n, b = y / n, j = y % n;
      std::uint32_t k = ((b ? n - i : i) + j) % n;
      t[x][y] = ((a + b) % 2) * n + k;
    }
  return CayleyGroup(std::move(t));
}

// ---------------------------------------------------------------- labels

std::string family_name(Family f) {
  switch (f) {
    case Family::SL2: return "SL2";
    case Family::PSL2: return "PSL2";
    case Family::Suzuki: return "Sz";
    case Family::Dihedral: return "D";
    case Family::Cyclic: return "C";
  }
  return "?";
}

std::string ClassLabel::to_string() const {
  const std::string i = std::to_string(index);
  switch (kind) {
    case K::Id: return "1";
    case K::Z: return "z";
    case K::C: return "c";
    case K::D: return "d";
    case K::ZC: return "zc";
    case K::ZD: return "zd";
    case K::A: return "a^" + i;
    case K::B: return "b^" + i;
    case K::BQuarter: return "b^((q+1)/4)";
    case K::Sigma: return "sigma";
    case K::Rho: return "rho";
    case K::RhoInv: return "rho^-1";
    case K::Pi0: return "pi0^" + i;
    case K::Pi1: return "pi1^" + i;
    case K::Pi2: return "pi2^" + i;
    case K::Rot: return "r^" + i;
    case K::Refl: return "s";
    case K::Pow: return "g^" + i;
  }
  return "?";
}

// ---------------------------------------------------------------- GroupModel

std::shared_ptr<const GroupModel> GroupModel::from_classes(Family family, std::uint64_t q, std::vector<ClassInfo> classes) {
  auto m = std::make_shared<GroupModel>();
  m->family_ = family;
  m->q_ = q;
  m->order_ = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    m->order_ += classes[i].size;
    if (!m->index_.emplace(classes[i].label, i).second) throw std::invalid_argument("GroupModel: duplicate class label");
  }
  m->classes_ = std::move(classes);
  return m;
}

std::size_t GroupModel::class_index(const ClassLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw NotFound("GroupModel: no class " + label.to_string() + " in " + name());
  return it->second;
}

std::string GroupModel::name() const {
  switch (family_) {
    case Family::Dihedral: return "D" + std::to_string(2 * q_);
    case Family::Cyclic: return "C" + std::to_string(q_);
    default: return family_name(family_) + "(" + std::to_string(q_) + ")";
  }
}

Mat2 GroupModel::mat_mul(const Mat2& x, const Mat2& y) const {
  const FieldSpec& f = *field_;
  return Mat2{f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
              f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Mat2 GroupModel::canonical(const Mat2& m) const {
  if (!projective_) return m;
  const FieldSpec& f = *field_;
  Mat2 n{f.neg(m.a), f.neg(m.b), f.neg(m.c), f.neg(m.d)};
  return std::min(m, n);
}

std::uint32_t GroupModel::pack(const Mat2& m) const {
  const std::uint32_t q = static_cast<std::uint32_t>(q_);
  return ((m.a * q + m.b) * q + m.c) * q + m.d;
}

Element GroupModel::find(const Mat2& m) const {
  auto it = lookup_.find(pack(canonical(m)));
  if (it == lookup_.end()) throw NotFound("GroupModel::find: matrix not in " + name());
  return it->second;
}

Element GroupModel::multiply(Element g, Element h) const { return find(mat_mul(elements_[g], elements_[h])); }

Element GroupModel::inverse(Element g) const { return inverse_[g]; }

std::size_t GroupModel::classify_matrix(const Mat2& m) const {
  const FieldSpec& f = *field_;
  const FieldSpec::Code tr = f.add(m.a, m.d);
  const Mat2 id{1, 0, 0, 1};
  auto semisimple = [&](FieldSpec::Code t) -> ClassLabel {
    if (auto it = trace_a_.find(t); it != trace_a_.end()) return L(K::A, it->second);
    auto jt = trace_b_.find(t);
    if (jt == trace_b_.end()) throw std::logic_error("classify: trace not found");
    return L(K::B, jt->second);
  };
  if (f.p() == 2) {
    if (m == id) return class_index(L(K::Id));
    if (tr == 0) return class_index(L(K::C));
    return class_index(semisimple(tr));
  }
  const FieldSpec::Code two = f.from_int(2), mtwo = f.neg(two);
  const Mat2 mid{f.neg(1), 0, 0, f.neg(1)};
  auto unipotent_square = [&](const Mat2& u) {
    FieldSpec::Code s = u.c != 0 ? u.c : f.neg(u.b);
    return f.is_square(s);
  };
  ClassLabel label;
  if (m == id)
    label = L(K::Id);
  else if (m == mid)
    label = L(K::Z);
  else if (tr == two)
    label = L(unipotent_square(m) ? K::C : K::D);
  else if (tr == mtwo)
    label = L(unipotent_square(Mat2{f.neg(m.a), f.neg(m.b), f.neg(m.c), f.neg(m.d)}) ? K::ZC : K::ZD);
  else
    label = semisimple(tr);
  if (!projective_) return class_index(label);

  const std::uint32_t q = static_cast<std::uint32_t>(q_);
  switch (label.kind) {
    case K::Z: label = L(K::Id); break;
    case K::ZC: label = L(K::C); break;
    case K::ZD: label = L(K::D); break;
    case K::A:
      if (label.index > (q - 3) / 4) label.index = (q - 1) / 2 - label.index;
      break;
    case K::B:
      if (label.index == (q + 1) / 4)
        label = L(K::BQuarter);
      else if (label.index > (q + 1) / 4)
        label.index = (q + 1) / 2 - label.index;
      break;
    default: break;
  }
  return class_index(label);
}

std::shared_ptr<const GroupModel> build_linear_model(FieldPtr field, bool projective, bool enumerate) {
  auto m = std::make_shared<GroupModel>();
  const FieldSpec& f = *field;
  const std::uint64_t q = f.q();
  const bool odd = f.p() != 2;
  if (q < 4 && !(odd && !projective)) throw std::invalid_argument("linear group: q too small");
  if (odd && projective && q % 4 != 3) throw std::invalid_argument("PSL2: odd q must be 3 mod 4");
  m->family_ = projective ? Family::PSL2 : Family::SL2;
  m->q_ = q;
  m->field_ = field;
  m->projective_ = odd && projective;

  const Integer qq = mpz(q);
  const std::uint64_t p = f.p();
  std::vector<ClassInfo> cl;
  auto add = [&](ClassLabel l, Integer size, std::uint64_t ord) { cl.push_back(ClassInfo{l, std::move(size), ord}); };
  if (!odd) {
    add(L(K::Id), 1, 1);
    add(L(K::C), qq * qq - 1, 2);
    for (std::uint32_t l = 1; l <= (q - 2) / 2; ++l) add(L(K::A, l), qq * (qq + 1), order_of_power(q - 1, l));
    for (std::uint32_t k = 1; k <= q / 2; ++k) add(L(K::B, k), qq * (qq - 1), order_of_power(q + 1, k));
  } else if (!projective) {
    const Integer half = (qq * qq - 1) / 2;
    add(L(K::Id), 1, 1);
    add(L(K::Z), 1, 2);
    add(L(K::C), half, p);
    add(L(K::D), half, p);
    add(L(K::ZC), half, 2 * p);
    add(L(K::ZD), half, 2 * p);
    for (std::uint32_t l = 1; l <= (q - 3) / 2; ++l) add(L(K::A, l), qq * (qq + 1), order_of_power(q - 1, l));
    for (std::uint32_t k = 1; k <= (q - 1) / 2; ++k) add(L(K::B, k), qq * (qq - 1), order_of_power(q + 1, k));
  } else {
    const Integer half = (qq * qq - 1) / 2;
    add(L(K::Id), 1, 1);
    add(L(K::C), half, p);
    add(L(K::D), half, p);
    for (std::uint32_t l = 1; l <= (q - 3) / 4; ++l) add(L(K::A, l), qq * (qq + 1), order_of_power((q - 1) / 2, l));
    for (std::uint32_t k = 1; k <= (q - 3) / 4; ++k) add(L(K::B, k), qq * (qq - 1), order_of_power((q + 1) / 2, k));
    add(L(K::BQuarter), qq * (qq - 1) / 2, 2);
  }
  m->order_ = 0;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    m->order_ += cl[i].size;
    m->index_.emplace(cl[i].label, i);
  }
  m->classes_ = std::move(cl);

  // traces of a^l and b^m
  const FieldSpec::Code nu = f.generator();
  const std::uint32_t la = odd ? static_cast<std::uint32_t>((q - 3) / 2) : static_cast<std::uint32_t>((q - 2) / 2);
  for (std::uint32_t l = 1; l <= la; ++l) m->trace_a_.emplace(f.add(f.pow(nu, l), f.pow(nu, -std::int64_t(l))), l);
  const Mat2 id{1, 0, 0, 1};
  bool found = false;
  for (FieldSpec::Code t = 0; t < q && !found; ++t) {
    const Mat2 b{0, f.neg(1), 1, t};
    Mat2 x = b;
    std::uint64_t ord = 1;
    while (x != id && ord <= q + 1) {
      x = m->mat_mul(x, b);
      ++ord;
    }
    if (ord != q + 1) continue;
    found = true;
    const std::uint32_t lb = odd ? static_cast<std::uint32_t>((q - 1) / 2) : static_cast<std::uint32_t>(q / 2);
    x = b;
    for (std::uint32_t k = 1; k <= lb; ++k) {
      m->trace_b_.emplace(f.add(x.a, x.d), k);
      x = m->mat_mul(x, b);
    }
  }
  if (!found) throw NotFound("linear group: no element of order q+1");

  if (!enumerate) return m;
  if (q > kMaxEnumerationQ) throw SizeBoundExceeded("enumeration requires q <= " + std::to_string(kMaxEnumerationQ));
  const std::uint32_t qn = static_cast<std::uint32_t>(q);
  auto emit = [&](const Mat2& x) {
    if (m->canonical(x) != x) return;
    m->lookup_.emplace(m->pack(x), static_cast<Element>(m->elements_.size()));
    m->elements_.push_back(x);
  };
  for (FieldSpec::Code a = 0; a < qn; ++a)
    for (FieldSpec::Code b = 0; b < qn; ++b)
      for (FieldSpec::Code c = 0; c < qn; ++c) {
        if (a != 0) {
          emit(Mat2{a, b, c, f.div(f.add(1, f.mul(b, c)), a)});
        } else if (b != 0 && c == f.neg(f.inv(b))) {
          for (FieldSpec::Code d = 0; d < qn; ++d) emit(Mat2{a, b, c, d});
        }
      }
  if (Integer(static_cast<unsigned long>(m->elements_.size())) != m->order_)
    throw std::logic_error("linear group: enumeration size mismatch");
  m->identity_ = m->find(id);
  m->inverse_.resize(m->elements_.size());
  m->class_of_.resize(m->elements_.size());
  for (Element g = 0; g < m->elements_.size(); ++g) {
    const Mat2& x = m->elements_[g];
    m->inverse_[g] = m->find(Mat2{x.d, f.neg(x.b), f.neg(x.c), x.a});
    m->class_of_[g] = static_cast<std::uint16_t>(m->classify_matrix(x));
  }
  return m;
}

GroupPtr enumerate_sl2(FieldPtr field) { return build_linear_model(std::move(field), false, true); }
GroupPtr enumerate_psl2(FieldPtr field) { return build_linear_model(std::move(field), true, true); }
GroupPtr sl2_class_model(std::uint64_t q) { return build_linear_model(gf_make_q(q), false, false); }
GroupPtr psl2_class_model(std::uint64_t q) { return build_linear_model(gf_make_q(q), true, false); }

GroupPtr dihedral_class_model(std::uint64_t n) {
  if (n % 2 == 0) throw std::invalid_argument("dihedral_class_model: n must be odd");
  std::vector<ClassInfo> cl{{L(K::Id), 1, 1}};
  for (std::uint32_t k = 1; k <= (n - 1) / 2; ++k) cl.push_back({L(K::Rot, k), 2, order_of_power(n, k)});
  cl.push_back({L(K::Refl), mpz(n), 2});
  return GroupModel::from_classes(Family::Dihedral, n, std::move(cl));
}

GroupPtr cyclic_class_model(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclic_class_model: n must be positive");
  std::vector<ClassInfo> cl{{L(K::Id), 1, 1}};
  for (std::uint32_t k = 1; k < n; ++k) cl.push_back({L(K::Pow, k), 1, order_of_power(n, k)});
  return GroupModel::from_classes(Family::Cyclic, n, std::move(cl));
}

std::uint64_t suzuki_r(std::uint64_t q) {
  if (!suzuki_q_in_scope(q)) throw std::invalid_argument("Suzuki: q must be an odd power of 2, q >= 8");
  std::uint64_t r = 1;
  while (r * r < 2 * q) r *= 2;
  return r;
}

bool suzuki_q_in_scope(std::uint64_t q) {
  std::uint32_t p = 0, n = 0;
  return is_prime_power(q, &p, &n) && p == 2 && n % 2 == 1 && n >= 3;
}

bool psl2_q_in_scope(std::uint64_t q) {
  std::uint32_t p = 0, n = 0;
  if (!is_prime_power(q, &p, &n)) return false;
  if (p == 2) return n >= 2;
  return q % 8 == 3 && q > 3;
}

std::vector<std::uint32_t> suzuki_orbit_reps(std::uint64_t n, std::uint64_t q) {
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint64_t x = 1; x < n; ++x) {
    if (seen[x]) continue;
    reps.push_back(static_cast<std::uint32_t>(x));
    std::uint64_t y = x;
    for (int i = 0; i < 4; ++i) {
      seen[y] = 1;
      seen[(n - y) % n] = 1;
      y = y * (q % n) % n;
    }
  }
  return reps;
}

std::vector<ClassLabel> suzuki_class_labels(std::uint64_t q) {
  const std::uint64_t r = suzuki_r(q);
  std::vector<ClassLabel> out{L(K::Id), L(K::Sigma), L(K::Rho), L(K::RhoInv)};
  for (std::uint32_t a = 1; a <= (q - 2) / 2; ++a) out.push_back(L(K::Pi0, a));
  for (auto b : suzuki_orbit_reps(q + r + 1, q)) out.push_back(L(K::Pi1, b));
  for (auto c : suzuki_orbit_reps(q - r + 1, q)) out.push_back(L(K::Pi2, c));
  return out;
}

// ---------------------------------------------------------------- orbits

std::vector<std::uint32_t> conjugacy_orbits(const FiniteGroup& g, const std::vector<Element>& generators) {
  constexpr std::uint32_t kNone = ~0u;
  std::vector<std::uint32_t> orbit(g.size(), kNone);
  std::uint32_t next = 0;
  std::vector<Element> queue;
  for (Element x = 0; x < g.size(); ++x) {
    if (orbit[x] != kNone) continue;
    queue.assign(1, x);
    orbit[x] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Element s : generators) {
        Element y = g.conjugate(queue[i], s);
        if (orbit[y] == kNone) {
          orbit[y] = next;
          queue.push_back(y);
        }
      }
    ++next;
  }
  return orbit;
}

std::vector<Element> transvection_generators(const GroupModel& g) {
  const FieldSpec& f = g.field();
  std::vector<Element> out;
  for (std::uint32_t i = 0; i < f.n(); ++i) {
    FieldSpec::Code x = f.gen_pow(i);
    out.push_back(g.find(Mat2{1, x, 0, 1}));
    out.push_back(g.find(Mat2{1, 0, x, 1}));
  }
  return out;
}

// ---------------------------------------------------------------- subgroups

std::string SubgroupSpec::name(const GroupModel& g) const {
  switch (kind) {
    case Kind::Trivial: return "1";
    case Kind::Whole: return g.name();
    case Kind::Borel: return "B";
    case Kind::DihedralSplit:
    case Kind::DihedralNonsplit: return "D" + theoretical_order(g, *this).get_str();
    case Kind::A4: return "A4";
    case Kind::Cyclic: return "C" + std::to_string(param);
    case Kind::Klein4: return "C2xC2";
    case Kind::SzTorusNormalizerPlus: return "C+";
    case Kind::SzTorusNormalizerMinus: return "C-";
  }
  return "?";
}

bool SubgroupSpec::contains(Element x) const { return std::binary_search(elements.begin(), elements.end(), x); }

Integer theoretical_order(const GroupModel& g, const SubgroupSpec& s) {
  using SK = SubgroupSpec::Kind;
  const Integer q = mpz(g.q());
  switch (s.kind) {
    case SK::Trivial: return 1;
    case SK::Whole: return g.order();
    case SK::Cyclic: return mpz(s.param);
    case SK::Klein4: return 4;
    case SK::A4: return 12;
    default: break;
  }
  if (g.family() == Family::Suzuki) {
    const Integer r = mpz(suzuki_r(g.q()));
    switch (s.kind) {
      case SK::Borel: return q * q * (q - 1);
      case SK::DihedralSplit: return 2 * (q - 1);
      case SK::SzTorusNormalizerPlus: return 4 * (q + r + 1);
      case SK::SzTorusNormalizerMinus: return 4 * (q - r + 1);
      default: break;
    }
  } else if (g.family() == Family::SL2 || g.family() == Family::PSL2) {
    const long d = (g.q() % 2 == 1 && g.family() == Family::PSL2) ? 2 : 1;
    switch (s.kind) {
      case SK::Borel: return q * (q - 1) / d;
      case SK::DihedralSplit: return 2 * (q - 1) / d;
      case SK::DihedralNonsplit: return 2 * (q + 1) / d;
      default: break;
    }
  }
  throw std::invalid_argument("theoretical_order: subgroup " + s.name(g) + " not defined for " + g.name());
}

namespace {

void require_psl2_enumerated(const GroupModel& g) {
  if (!g.enumerated()) throw std::invalid_argument(g.name() + " is not enumerated");
  if (g.family() != Family::PSL2 && !(g.family() == Family::SL2 && g.q() % 2 == 0))
    throw std::invalid_argument("subgroups are built in PSL2(q) only");
}

}  // namespace

Psl2Landmarks psl2_landmarks(const GroupModel& g) {
  require_psl2_enumerated(g);
  const FieldSpec& f = g.field();
  const std::uint64_t q = g.q();
  const bool odd = q % 2 == 1;
  Psl2Landmarks lm;
  const FieldSpec::Code nu = f.generator();
  lm.a = g.find(Mat2{nu, 0, 0, f.inv(nu)});
  lm.t = odd ? g.find(Mat2{0, 1, f.neg(1), 0}) : g.find(Mat2{0, 1, 1, 0});
  const std::uint64_t nb = odd ? (q + 1) / 2 : q + 1;
  bool found = false;
  for (Element e = 0; e < g.size() && !found; ++e) {
    if (g.classes()[g.class_of(e)].element_order != nb) continue;
    if (g.conjugate(e, lm.t) == g.inverse(e)) {
      lm.b = e;
      found = true;
    }
  }
  if (!found) throw NotFound("landmarks: no element of order (q+1)/gcd(2,q-1) inverted by t");
  if (!odd) return lm;
  lm.z0 = g.power(lm.b, static_cast<std::int64_t>((q + 1) / 4));
  const std::vector<Element> v{g.identity(), lm.z0, lm.t, g.multiply(lm.z0, lm.t)};
  auto in_v = [&](Element x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  found = false;
  for (Element e = 0; e < g.size() && !found; ++e) {
    if (g.classes()[g.class_of(e)].element_order != 3) continue;
    if (in_v(g.conjugate(lm.z0, e)) && in_v(g.conjugate(lm.t, e))) {
      lm.u3 = e;
      found = true;
    }
  }
  if (!found) throw NotFound("landmarks: no order-3 element normalizing the Klein four-group");
  return lm;
}

SubgroupSpec subgroup_from_generators(const GroupModel& g, SubgroupSpec::Kind kind, const std::vector<Element>& gens) {
  SubgroupSpec s;
  s.kind = kind;
  s.generators = gens;
  s.elements = g.closure(gens);
  if (kind == SubgroupSpec::Kind::Cyclic) s.param = s.elements.size();
  return s;
}

SubgroupSpec build_subgroup(const GroupModel& g, const SubgroupSpec& spec) {
  using SK = SubgroupSpec::Kind;
  require_psl2_enumerated(g);
  const bool odd = g.q() % 2 == 1;
  const Psl2Landmarks lm = psl2_landmarks(g);
  SubgroupSpec out = spec;
  out.elements.clear();
  out.generators.clear();
  switch (spec.kind) {
    case SK::Trivial: out.elements = {g.identity()}; break;
    case SK::Whole:
      out.elements.resize(g.size());
      std::iota(out.elements.begin(), out.elements.end(), Element{0});
      break;
    case SK::Borel:
      out.generators = {lm.a, g.find(Mat2{1, 0, 1, 1})};
      for (Element e = 0; e < g.size(); ++e)
        if (g.matrix(e).b == 0) out.elements.push_back(e);
      break;
    case SK::DihedralSplit: out.generators = {lm.a, lm.t}; break;
    case SK::DihedralNonsplit: out.generators = {lm.b, lm.t}; break;
    case SK::Klein4:
      if (!odd) throw std::invalid_argument("Klein4 stabilizer is used for odd q only");
      out.generators = {lm.z0, lm.t};
      break;
    case SK::A4:
      if (!odd) throw std::invalid_argument("A4 stabilizer is used for odd q only");
      out.generators = {lm.z0, lm.t, lm.u3};
      break;
    case SK::Cyclic: {
      const std::uint64_t k = spec.param;
      if (k == 1) {
        out.elements = {g.identity()};
        out.generators = {g.identity()};
      } else if (k == 2) {
        out.generators = {lm.t};
      } else if (k == g.element_order(lm.a)) {
        out.generators = {lm.a};
      } else if (odd && k == 3) {
        out.generators = {lm.u3};
      } else if (k == g.element_order(lm.b)) {
        out.generators = {lm.b};
      } else {
        for (Element e = 0; e < g.size() && out.generators.empty(); ++e)
          if (g.classes()[g.class_of(e)].element_order == k) out.generators = {e};
        if (out.generators.empty()) throw NotFound("build_subgroup: no element of order " + std::to_string(k));
      }
      break;
    }
    default: throw std::invalid_argument("build_subgroup: " + spec.name(g) + " is not a subgroup of " + g.name());
  }
  if (out.elements.empty()) out.elements = g.closure(out.generators);
  if (Integer(static_cast<unsigned long>(out.elements.size())) != theoretical_order(g, spec))
    throw std::logic_error("build_subgroup: order mismatch for " + spec.name(g));
  return out;
}

// ---------------------------------------------------------------- fusion

std::map<ClassLabel, Integer> ClassFusion::counts(const GroupModel& g) const {
  std::map<ClassLabel, Integer> out;
  for (const auto& c : g.classes()) out[c.label] = 0;
  for (const auto& p : parts) out[g.classes()[p.ambient_class].label] += p.size;
  return out;
}

ClassFusion fusion_table(const GroupModel& g, const SubgroupSpec& sub) {
  using SK = SubgroupSpec::Kind;
  if (sub.elements.empty()) throw std::invalid_argument("fusion_table: subgroup has no element list");
  ClassFusion out;
  out.order = Integer(static_cast<unsigned long>(sub.elements.size()));
  std::vector<std::size_t> classes;
  classes.reserve(sub.elements.size());
  for (Element e : sub.elements) classes.push_back(g.class_of(e));
  auto cls = [&](Element e) {
    auto it = std::lower_bound(sub.elements.begin(), sub.elements.end(), e);
    if (it == sub.elements.end() || *it != e) throw std::logic_error("fusion_table: element outside subgroup");
    return classes[static_cast<std::size_t>(it - sub.elements.begin())];
  };

  const std::size_t n = sub.elements.size();
  if ((sub.kind == SK::Cyclic || sub.kind == SK::Trivial) && sub.generators.size() <= 1) {
    const Element gen = sub.generators.empty() ? g.identity() : sub.generators.front();
    out.shape = ClassFusion::Shape::CyclicPowers;
    Element x = g.identity();
    for (std::size_t k = 0; k < n; ++k) {
      out.parts.push_back({1, cls(x)});
      x = g.multiply(x, gen);
    }
    if (x != g.identity()) throw std::logic_error("fusion_table: generator order mismatch");
    return out;
  }
  if ((sub.kind == SK::DihedralSplit || sub.kind == SK::DihedralNonsplit) && sub.generators.size() == 2) {
    const Element r = sub.generators[0], s = sub.generators[1];
    const std::uint64_t m = g.element_order(r);
    if (m % 2 == 1 && 2 * m == n) {
      out.shape = ClassFusion::Shape::DihedralOdd;
      out.parts.push_back({1, cls(g.identity())});
      for (std::uint64_t k = 1; k <= (m - 1) / 2; ++k) {
        std::size_t c1 = cls(g.power(r, k)), c2 = cls(g.power(r, -std::int64_t(k)));
        if (c1 != c2) throw std::logic_error("fusion_table: r^k and r^-k in different classes");
        out.parts.push_back({2, c1});
      }
      const std::size_t cs = cls(s);
      for (Element e : sub.elements)
        if (g.element_order(e) == 2 && cls(e) != cs) throw std::logic_error("fusion_table: reflections in different classes");
      out.parts.push_back({Integer(static_cast<unsigned long>(m)), cs});
      return out;
    }
  }
  out.shape = ClassFusion::Shape::Aggregated;
  std::vector<Integer> count(g.classes().size(), 0);
  for (std::size_t c : classes) count[c] += 1;
  for (std::size_t c = 0; c < count.size(); ++c)
    if (count[c] != 0) out.parts.push_back({count[c], c});
  return out;
}

ClassFusion paper_fusion(const GroupModel& g, const SubgroupSpec& sub) {
  using SK = SubgroupSpec::Kind;
  using Shape = ClassFusion::Shape;
  ClassFusion out;
  out.order = theoretical_order(g, sub);
  const std::uint64_t q = g.q();
  const Integer Q = mpz(q);
  auto idx = [&](ClassLabel l) { return g.class_index(l); };
  auto part = [&](Integer size, ClassLabel l) { out.parts.push_back({std::move(size), idx(l)}); };
  auto cyclic = [&](const std::vector<ClassLabel>& powers) {
    out.shape = Shape::CyclicPowers;
    for (const auto& l : powers) part(1, l);
  };

  if (sub.kind == SK::Trivial) {
    cyclic({L(K::Id)});
    return out;
  }
  if (sub.kind == SK::Whole) {
    for (std::size_t i = 0; i < g.classes().size(); ++i) out.parts.push_back({g.classes()[i].size, i});
    return out;
  }

  const Family fam = g.family();
  const bool even_linear = (fam == Family::PSL2 || fam == Family::SL2) && q % 2 == 0;
  const bool odd_psl = fam == Family::PSL2 && q % 2 == 1;

  if (even_linear) {
    switch (sub.kind) {
      case SK::Borel:
        part(1, L(K::Id));
        part(Q - 1, L(K::C));
        for (std::uint32_t l = 1; l <= (q - 2) / 2; ++l) part(2 * Q, L(K::A, l));
        return out;
      case SK::DihedralSplit:
        out.shape = Shape::DihedralOdd;
        part(1, L(K::Id));
        for (std::uint32_t l = 1; l <= (q - 2) / 2; ++l) part(2, L(K::A, l));
        part(Q - 1, L(K::C));
        return out;
      case SK::DihedralNonsplit:
        out.shape = Shape::DihedralOdd;
        part(1, L(K::Id));
        for (std::uint32_t m = 1; m <= q / 2; ++m) part(2, L(K::B, m));
        part(Q + 1, L(K::C));
        return out;
      case SK::Cyclic:
        if (sub.param == 2) {
          cyclic({L(K::Id), L(K::C)});
          return out;
        }
        if (sub.param == q - 1) {
          std::vector<ClassLabel> pw{L(K::Id)};
          for (std::uint32_t k = 1; k < q - 1; ++k) pw.push_back(L(K::A, std::min<std::uint32_t>(k, q - 1 - k)));
          cyclic(pw);
          return out;
        }
        break;
      default: break;
    }
  } else if (odd_psl) {
    const std::uint32_t quarter = static_cast<std::uint32_t>((q - 3) / 4);
    switch (sub.kind) {
      case SK::Borel:
        part(1, L(K::Id));
        part((Q - 1) / 2, L(K::C));
        part((Q - 1) / 2, L(K::D));
        for (std::uint32_t l = 1; l <= quarter; ++l) part(2 * Q, L(K::A, l));
        return out;
      case SK::A4:
        part(1, L(K::Id));
        if (q % 3 == 0) {
          part(4, L(K::C));
          part(4, L(K::D));
        } else if (q % 3 == 1) {
          part(8, L(K::A, static_cast<std::uint32_t>((q - 1) / 6)));
        } else {
          part(8, L(K::B, static_cast<std::uint32_t>((q + 1) / 6)));
        }
        part(3, L(K::BQuarter));
        return out;
      case SK::DihedralSplit:
        out.shape = Shape::DihedralOdd;
        part(1, L(K::Id));
        for (std::uint32_t l = 1; l <= quarter; ++l) part(2, L(K::A, l));
        part((Q - 1) / 2, L(K::BQuarter));
        return out;
      case SK::DihedralNonsplit:
        part(1, L(K::Id));
        for (std::uint32_t m = 1; m <= quarter; ++m) part(2, L(K::B, m));
        part((Q + 3) / 2, L(K::BQuarter));
        return out;
      case SK::Klein4:
        part(1, L(K::Id));
        part(3, L(K::BQuarter));
        return out;
      case SK::Cyclic:
        if (sub.param == 2) {
          cyclic({L(K::Id), L(K::BQuarter)});
          return out;
        }
        if (sub.param == 3) {
          if (q % 3 == 0)
            cyclic({L(K::Id), L(K::C), L(K::D)});
          else if (q % 3 == 1)
            cyclic({L(K::Id), L(K::A, static_cast<std::uint32_t>((q - 1) / 6)), L(K::A, static_cast<std::uint32_t>((q - 1) / 6))});
          else
            cyclic({L(K::Id), L(K::B, static_cast<std::uint32_t>((q + 1) / 6)), L(K::B, static_cast<std::uint32_t>((q + 1) / 6))});
          return out;
        }
        if (sub.param == (q - 1) / 2) {
          const std::uint32_t h = static_cast<std::uint32_t>((q - 1) / 2);
          std::vector<ClassLabel> pw{L(K::Id)};
          for (std::uint32_t k = 1; k < h; ++k) pw.push_back(L(K::A, k <= quarter ? k : h - k));
          cyclic(pw);
          return out;
        }
        break;
      default: break;
    }
  } else if (fam == Family::Suzuki) {
    const std::uint64_t r = suzuki_r(q);
    const Integer R = mpz(r);
    switch (sub.kind) {
      case SK::Borel:
        part(1, L(K::Id));
        part(Q - 1, L(K::Sigma));
        part(Q * (Q - 1) / 2, L(K::Rho));
        part(Q * (Q - 1) / 2, L(K::RhoInv));
        for (std::uint32_t a = 1; a <= (q - 2) / 2; ++a) part(2 * Q * Q, L(K::Pi0, a));
        return out;
      case SK::DihedralSplit:
        out.shape = Shape::DihedralOdd;
        part(1, L(K::Id));
        for (std::uint32_t a = 1; a <= (q - 2) / 2; ++a) part(2, L(K::Pi0, a));
        part(Q - 1, L(K::Sigma));
        return out;
      case SK::SzTorusNormalizerPlus:
      case SK::SzTorusNormalizerMinus: {
        const bool plus = sub.kind == SK::SzTorusNormalizerPlus;
        const Integer n = plus ? Integer(Q + R + 1) : Integer(Q - R + 1);
        part(1, L(K::Id));
        part(n, L(K::Sigma));
        part(n, L(K::Rho));
        part(n, L(K::RhoInv));
        for (auto b : suzuki_orbit_reps(plus ? q + r + 1 : q - r + 1, q)) part(4, L(plus ? K::Pi1 : K::Pi2, b));
        return out;
      }
      case SK::Cyclic:
        if (sub.param == 2) {
          cyclic({L(K::Id), L(K::Sigma)});
          return out;
        }
        if (sub.param == 4) {
          cyclic({L(K::Id), L(K::Rho), L(K::Sigma), L(K::RhoInv)});
          return out;
        }
        if (sub.param == q - 1) {
          std::vector<ClassLabel> pw{L(K::Id)};
          for (std::uint32_t k = 1; k < q - 1; ++k) pw.push_back(L(K::Pi0, std::min<std::uint32_t>(k, q - 1 - k)));
          cyclic(pw);
          return out;
        }
        break;
      default: break;
    }
  }
  throw std::invalid_argument("paper_fusion: no tabulated row for " + sub.name(g) + " in " + g.name());
}

ClassFusion stabilizer_fusion(const GroupModel& g, const SubgroupSpec& sub) {
  return sub.elements.empty() ? paper_fusion(g, sub) : fusion_table(g, sub);
}

}  // namespace osm
