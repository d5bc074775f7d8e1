#include "osm/chars.hpp"

#include <functional>
#include <numeric>
#include <map>

#include "json.hpp"

namespace osm {

namespace {

using K = ClassLabel::Kind;

Integer mpz(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

RootSum cst(const Rational& v) { return RootSum(Cyclotomic(v)); }

RootSum scaled(RootSum r, const Rational& s) {
  for (auto& t : r.terms) t.coeff *= s;
  return r;
}

// sum over k in ks of c * zeta_n^k
RootSum roots(std::uint64_t n, std::initializer_list<std::int64_t> ks, long c = 1) {
  RootSum r(n);
  for (auto k : ks) r.add_root(k, c);
  return r;
}

long sign_pow(std::uint64_t k) { return k % 2 == 0 ? 1 : -1; }

using ValueFn = std::function<RootSum(const ClassLabel&)>;

Character make(const std::string& name, const GroupModel& g, const ValueFn& f) {
  std::vector<RootSum> raw;
  raw.reserve(g.classes().size());
  for (const auto& c : g.classes()) raw.push_back(f(c.label));
  return Character(name, std::move(raw));
}

GroupPtr check_model(GroupPtr model, GroupPtr reference) {
  if (!model) return reference;
  if (model->family() != reference->family() || model->q() != reference->q() ||
      model->classes().size() != reference->classes().size())
    throw std::invalid_argument("character table: model does not match " + reference->name());
  for (std::size_t i = 0; i < model->classes().size(); ++i)
    if (model->classes()[i].label != reference->classes()[i].label)
      throw std::invalid_argument("character table: class order differs for " + reference->name());
  return model;
}

void require_odd_prime_power(std::uint64_t q) {
  std::uint32_t p = 0;
  if (!is_prime_power(q, &p) || p == 2) throw std::invalid_argument("q must be an odd prime power");
}

// rows of the SL2(q) table for odd q, evaluated on SL2 labels
struct Sl2Row {
  std::string name;
  Integer degree;
  long zsign;
  Cyclotomic c, d;
  std::function<RootSum(std::uint32_t)> a, b;

  RootSum value(const ClassLabel& l) const {
    switch (l.kind) {
      case K::Id: return cst(degree);
      case K::Z: return cst(Integer(zsign * degree));
      case K::C: return RootSum(c);
      case K::D: return RootSum(d);
      case K::ZC: return RootSum(c * Rational(zsign));
      case K::ZD: return RootSum(d * Rational(zsign));
      case K::A: return a(l.index);
      case K::B: return b(l.index);
      default: throw std::logic_error("SL2 row: unexpected class");
    }
  }
};

std::vector<Sl2Row> sl2_odd_rows(std::uint64_t q) {
  const Integer Q = mpz(q);
  const long eps = (q % 4 == 1) ? 1 : -1;
  const Cyclotomic s = sqrt_eps_q(q);
  const Rational half(1, 2);
  std::vector<Sl2Row> rows;
  auto zero = [](std::uint32_t) { return RootSum(); };
  rows.push_back({"1", 1, 1, 1, 1, [](std::uint32_t) { return cst(1); }, [](std::uint32_t) { return cst(1); }});
  rows.push_back({"psi", Q, 1, 0, 0, [](std::uint32_t) { return cst(1); }, [](std::uint32_t) { return cst(-1); }});
  for (std::uint32_t i = 1; i <= (q - 3) / 2; ++i)
    rows.push_back({"chi_" + std::to_string(i), Q + 1, sign_pow(i), 1, 1,
                    [q, i](std::uint32_t l) {
                      std::int64_t k = std::int64_t(i) * l;
                      return roots(q - 1, {k, -k});
                    },
                    zero});
  for (std::uint32_t j = 1; j <= (q - 1) / 2; ++j)
    rows.push_back({"theta_" + std::to_string(j), Q - 1, sign_pow(j), -1, -1, zero, [q, j](std::uint32_t m) {
                      std::int64_t k = std::int64_t(j) * m;
                      return roots(q + 1, {k, -k}, -1);
                    }});
  const Cyclotomic plus = (Cyclotomic(1) + s) * half, minus = (Cyclotomic(1) - s) * half;
  const Cyclotomic nplus = (Cyclotomic(-1) + s) * half, nminus = (Cyclotomic(-1) - s) * half;
  auto alt_a = [](std::uint32_t l) { return cst(sign_pow(l)); };
  auto alt_b = [](std::uint32_t m) { return cst(-sign_pow(m)); };
  rows.push_back({"xi_1", (Q + 1) / 2, eps, plus, minus, alt_a, zero});
  rows.push_back({"xi_2", (Q + 1) / 2, eps, minus, plus, alt_a, zero});
  rows.push_back({"eta_1", (Q - 1) / 2, -eps, nplus, nminus, zero, alt_b});
  rows.push_back({"eta_2", (Q - 1) / 2, -eps, nminus, nplus, zero, alt_b});
  return rows;
}

std::uint64_t order_of_power(std::uint64_t n, std::uint64_t k) { return n / std::gcd(n, k % n == 0 ? n : k % n); }

}  // namespace

Character::Character(std::string n, std::vector<RootSum> r) : name(std::move(n)), raw(std::move(r)) {
  values.reserve(raw.size());
  for (const auto& v : raw) values.push_back(v.value());
}

Integer Character::degree() const {
  Rational d = values.at(0).to_rational();
  if (d.get_den() != 1) throw std::logic_error("Character::degree: not an integer");
  return d.get_num();
}

CharacterTable::CharacterTable(GroupPtr group, std::vector<Character> irreducibles)
    : group_(std::move(group)), irr_(std::move(irreducibles)) {
  for (const auto& c : irr_)
    if (c.values.size() != group_->classes().size())
      throw std::invalid_argument("CharacterTable: character " + c.name + " has the wrong number of values");
}

const Character& CharacterTable::get(const std::string& name) const {
  for (const auto& c : irr_)
    if (c.name == name) return c;
  throw NotFound("CharacterTable: no character " + name + " for " + group_->name());
}

Rational CharacterTable::inner_product(const Character& a, const Character& b) const {
  CyclotomicAccumulator acc;
  const auto& cl = group_->classes();
  for (std::size_t i = 0; i < cl.size(); ++i) acc.add_product(a.raw[i], b.raw[i], Rational(cl[i].size), true);
  Rational r = acc.value().to_rational() / Rational(group_->order());
  r.canonicalize();
  return r;
}

Integer CharacterTable::centralizer_order(std::size_t cls) const {
  CyclotomicAccumulator acc;
  for (const auto& c : irr_) acc.add_product(c.raw[cls], c.raw[cls], 1, true);
  Rational r = acc.value().to_rational();
  if (r.get_den() != 1) throw std::logic_error("centralizer_order: not an integer");
  return r.get_num();
}

bool CharacterTable::rows_orthonormal() const {
  if (irr_.size() != class_count()) return false;
  for (std::size_t i = 0; i < irr_.size(); ++i)
    for (std::size_t j = i; j < irr_.size(); ++j)
      if (inner_product(irr_[i], irr_[j]) != (i == j ? 1 : 0)) return false;
  return true;
}

bool CharacterTable::columns_orthogonal() const {
  const auto& cl = group_->classes();
  for (std::size_t x = 0; x < cl.size(); ++x)
    for (std::size_t y = x; y < cl.size(); ++y) {
      CyclotomicAccumulator acc;
      for (const auto& c : irr_) acc.add_product(c.raw[x], c.raw[y], 1, true);
      Cyclotomic v = acc.value();
      if (x == y) {
        if (v != Cyclotomic(Rational(group_->order()) / Rational(cl[x].size))) return false;
      } else if (!v.is_zero()) {
        return false;
      }
    }
  return true;
}

Cyclotomic sqrt_eps_q(std::uint64_t q) {
  std::uint32_t p = 0, n = 0;
  require_odd_prime_power(q);
  is_prime_power(q, &p, &n);
  Integer scale = 1;
  for (std::uint32_t i = 0; i < n / 2; ++i) scale *= p;
  if (n % 2 == 0) return Cyclotomic(scale);
  return gauss_sum(p) * Rational(scale);
}

TablePtr table_psl2_even(std::uint64_t q, GroupPtr model) {
  std::uint32_t p = 0;
  if (!is_prime_power(q, &p) || p != 2 || q < 4) throw std::invalid_argument("table_psl2_even: q must be 2^n with n >= 2");
  GroupPtr g = model ? model : psl2_class_model(q);
  if (g->family() != Family::PSL2 && g->family() != Family::SL2) throw std::invalid_argument("table_psl2_even: wrong family");
  g = check_model(g, g->family() == Family::SL2 ? sl2_class_model(q) : psl2_class_model(q));
  const Integer Q = mpz(q);
  std::vector<Character> irr;
  irr.push_back(make("1", *g, [](const ClassLabel&) { return cst(1); }));
  irr.push_back(make("psi", *g, [&](const ClassLabel& l) -> RootSum {
    switch (l.kind) {
      case K::Id: return cst(Q);
      case K::A: return cst(1);
      case K::B: return cst(-1);
      default: return RootSum();
    }
  }));
  for (std::uint32_t i = 1; i <= (q - 2) / 2; ++i)
    irr.push_back(make("chi_" + std::to_string(i), *g, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst(Q + 1);
        case K::C: return cst(1);
        case K::A: {
          std::int64_t k = std::int64_t(i) * l.index;
          return roots(q - 1, {k, -k});
        }
        default: return RootSum();
      }
    }));
  for (std::uint32_t j = 1; j <= q / 2; ++j)
    irr.push_back(make("theta_" + std::to_string(j), *g, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst(Q - 1);
        case K::C: return cst(-1);
        case K::B: {
          std::int64_t k = std::int64_t(j) * l.index;
          return roots(q + 1, {k, -k}, -1);
        }
        default: return RootSum();
      }
    }));
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_sl2_odd(std::uint64_t q, GroupPtr model) {
  require_odd_prime_power(q);
  GroupPtr g = check_model(model, sl2_class_model(q));
  std::vector<Character> irr;
  for (const auto& row : sl2_odd_rows(q))
    irr.push_back(make(row.name, *g, [&](const ClassLabel& l) { return row.value(l); }));
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_psl2_odd(std::uint64_t q, GroupPtr model) {
  require_odd_prime_power(q);
  if (q % 4 != 3) throw std::invalid_argument("table_psl2_odd: q must be 3 mod 4");
  GroupPtr g = check_model(model, psl2_class_model(q));
  const std::uint32_t quarter = static_cast<std::uint32_t>((q + 1) / 4);
  auto lift = [&](const ClassLabel& l) { return l.kind == K::BQuarter ? ClassLabel{K::B, quarter} : l; };
  std::vector<Character> irr;
  for (const auto& row : sl2_odd_rows(q)) {
    if (row.zsign != 1) continue;
    irr.push_back(make(row.name, *g, [&](const ClassLabel& l) { return row.value(lift(l)); }));
  }
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_suzuki(std::uint64_t q) {
  const std::uint64_t r = suzuki_r(q);
  const Integer Q = mpz(q), R = mpz(r);
  const std::vector<ClassLabel> labels = suzuki_class_labels(q);
  const auto reps1 = suzuki_orbit_reps(q + r + 1, q), reps2 = suzuki_orbit_reps(q - r + 1, q);

  std::vector<ClassInfo> provisional;
  for (const auto& l : labels) provisional.push_back({l, 1, 1});
  GroupPtr shape = GroupModel::from_classes(Family::Suzuki, q, provisional);

  auto four = [q](std::uint64_t n, std::uint64_t j, std::uint64_t b) {
    std::int64_t k = static_cast<std::int64_t>(j * b % n), kq = static_cast<std::int64_t>(j * b % n * (q % n) % n);
    return roots(n, {k, kq, -k, -kq}, -1);
  };
  std::vector<Character> irr;
  irr.push_back(make("1", *shape, [](const ClassLabel&) { return cst(1); }));
  irr.push_back(make("X", *shape, [&](const ClassLabel& l) -> RootSum {
    switch (l.kind) {
      case K::Id: return cst(Q * Q);
      case K::Pi0: return cst(1);
      case K::Pi1:
      case K::Pi2: return cst(-1);
      default: return RootSum();
    }
  }));
  for (std::uint32_t i = 1; i <= (q - 2) / 2; ++i)
    irr.push_back(make("X_" + std::to_string(i), *shape, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst(Q * Q + 1);
        case K::Sigma:
        case K::Rho:
        case K::RhoInv: return cst(1);
        case K::Pi0: {
          std::int64_t k = std::int64_t(i) * l.index;
          return roots(q - 1, {k, -k});
        }
        default: return RootSum();
      }
    }));
  for (auto j : reps1)
    irr.push_back(make("Y_" + std::to_string(j), *shape, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst((Q - 1) * (Q - R + 1));
        case K::Sigma: return cst(R - 1);
        case K::Rho:
        case K::RhoInv: return cst(-1);
        case K::Pi1: return four(q + r + 1, j, l.index);
        default: return RootSum();
      }
    }));
  for (auto k : reps2)
    irr.push_back(make("Z_" + std::to_string(k), *shape, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst((Q - 1) * (Q + R + 1));
        case K::Sigma: return cst(-R - 1);
        case K::Rho:
        case K::RhoInv: return cst(-1);
        case K::Pi2: return four(q - r + 1, k, l.index);
        default: return RootSum();
      }
    }));
  for (int w = 1; w <= 2; ++w) {
    const long s = w == 1 ? 1 : -1;
    irr.push_back(make("W_" + std::to_string(w), *shape, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst(R * (Q - 1) / 2);
        case K::Sigma: return cst(-R / 2);
        case K::Rho: return scaled(roots(4, {1}), Rational(s * R) / 2);
        case K::RhoInv: return scaled(roots(4, {1}), Rational(-s * R) / 2);
        case K::Pi1: return cst(1);
        case K::Pi2: return cst(-1);
        default: return RootSum();
      }
    }));
  }

  // class sizes from column orthogonality
  CharacterTable probe(shape, irr);
  const Integer order = probe.centralizer_order(0);
  if (order != Q * Q * (Q * Q + 1) * (Q - 1)) throw std::logic_error("table_suzuki: sum of squared degrees is not |Sz(q)|");
  std::vector<ClassInfo> classes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Integer cent = probe.centralizer_order(i);
    if (order % cent != 0) throw std::logic_error("table_suzuki: centralizer order does not divide |G|");
    std::uint64_t ord = 1;
    switch (labels[i].kind) {
      case K::Sigma: ord = 2; break;
      case K::Rho:
      case K::RhoInv: ord = 4; break;
      case K::Pi0: ord = order_of_power(q - 1, labels[i].index); break;
      case K::Pi1: ord = order_of_power(q + r + 1, labels[i].index); break;
      case K::Pi2: ord = order_of_power(q - r + 1, labels[i].index); break;
      default: break;
    }
    classes.push_back({labels[i], Integer(order / cent), ord});
  }
  GroupPtr g = GroupModel::from_classes(Family::Suzuki, q, std::move(classes));
  if (g->order() != order) throw std::logic_error("table_suzuki: class sizes do not sum to |G|");
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_dihedral_odd(std::uint64_t n) {
  GroupPtr g = dihedral_class_model(n);
  std::vector<Character> irr;
  irr.push_back(make("psi_1", *g, [](const ClassLabel&) { return cst(1); }));
  irr.push_back(make("psi_2", *g, [](const ClassLabel& l) { return cst(l.kind == K::Refl ? -1 : 1); }));
  for (std::uint32_t i = 1; i <= (n - 1) / 2; ++i)
    irr.push_back(make("chi_" + std::to_string(i), *g, [&](const ClassLabel& l) -> RootSum {
      switch (l.kind) {
        case K::Id: return cst(2);
        case K::Rot: {
          std::int64_t k = std::int64_t(i) * l.index;
          return roots(n, {k, -k});
        }
        default: return RootSum();
      }
    }));
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_cyclic(std::uint64_t n) {
  GroupPtr g = cyclic_class_model(n);
  std::vector<Character> irr;
  for (std::uint64_t k = 0; k < n; ++k)
    irr.push_back(make("mu_" + std::to_string(k), *g, [&](const ClassLabel& l) {
      return roots(n, {static_cast<std::int64_t>(k * l.index % n)});
    }));
  return std::make_shared<CharacterTable>(g, std::move(irr));
}

TablePtr table_for(const GroupPtr& g) {
  switch (g->family()) {
    case Family::SL2: return g->q() % 2 == 0 ? table_psl2_even(g->q(), g) : table_sl2_odd(g->q(), g);
    case Family::PSL2: return g->q() % 2 == 0 ? table_psl2_even(g->q(), g) : table_psl2_odd(g->q(), g);
    case Family::Suzuki: return table_suzuki(g->q());
    case Family::Dihedral: return table_dihedral_odd(g->q());
    case Family::Cyclic: return table_cyclic(g->q());
  }
  throw std::invalid_argument("table_for: unknown family");
}

const Character& rho0(const CharacterTable& t) {
  const GroupModel& g = t.group();
  if (g.family() == Family::Suzuki) return t.get("W_1");
  if (g.family() == Family::PSL2 || g.family() == Family::SL2) {
    if (g.q() % 2 == 0) return t.get("theta_1");
    if (g.family() == Family::PSL2 && g.q() % 8 == 3) return t.get("eta_1");
  }
  throw std::invalid_argument("rho0: not defined for " + g.name());
}

namespace {

Rational fused_sum(const Character& chi, const Character& psi, const ClassFusion& fusion) {
  std::map<std::size_t, Integer> by_class;
  for (const auto& p : fusion.parts) by_class[p.ambient_class] += p.size;
  CyclotomicAccumulator acc;
  for (const auto& [c, n] : by_class) acc.add_product(chi.raw.at(c), psi.raw.at(c), Rational(n), true);
  Rational r = acc.value().to_rational() / Rational(fusion.order);
  r.canonicalize();
  return r;
}

Integer as_dimension(const Rational& r, const std::string& what) {
  if (r.get_den() != 1 || r < 0)
    throw NonIntegralDimension(what + ": value " + r.get_str() + " is not a non-negative integer");
  return r.get_num();
}

}  // namespace

Rational restricted_inner_product(const Character& chi, const Character& psi, const GroupModel& g, const ClassFusion& fusion) {
  if (chi.raw.size() != g.classes().size() || psi.raw.size() != g.classes().size())
    throw std::invalid_argument("restricted_inner_product: characters do not belong to " + g.name());
  return fused_sum(chi, psi, fusion);
}

Integer centralizer_dim(const Character& chi, const GroupModel& g, const ClassFusion& fusion) {
  return as_dimension(restricted_inner_product(chi, chi, g, fusion), "centralizer_dim(" + chi.name + ")");
}

Integer centralizer_dim(const CharacterTable& t, const Character& chi) {
  return as_dimension(t.inner_product(chi, chi), "centralizer_dim(" + chi.name + ")");
}

TablePtr subgroup_table(const ClassFusion& fusion) {
  switch (fusion.shape) {
    case ClassFusion::Shape::CyclicPowers: return table_cyclic(fusion.parts.size());
    case ClassFusion::Shape::DihedralOdd: return table_dihedral_odd(2 * (fusion.parts.size() - 2) + 1);
    case ClassFusion::Shape::Aggregated: break;
  }
  throw std::invalid_argument("subgroup_table: aggregated fusion has no subgroup class structure");
}

Integer multiplicity_check(const Character& chi, const GroupModel& g, const ClassFusion& fusion, const Character& lambda) {
  if (chi.raw.size() != g.classes().size()) throw std::invalid_argument("multiplicity_check: character does not belong to " + g.name());
  CyclotomicAccumulator acc;
  if (fusion.shape == ClassFusion::Shape::Aggregated) {
    for (const auto& v : lambda.values)
      if (v != Cyclotomic(1)) throw std::invalid_argument("multiplicity_check: aggregated fusion supports the trivial character only");
    for (const auto& p : fusion.parts) acc.add(chi.values[p.ambient_class], Rational(p.size));
  } else {
    if (lambda.raw.size() != fusion.parts.size())
      throw std::invalid_argument("multiplicity_check: character " + lambda.name + " does not match the subgroup classes");
    for (std::size_t i = 0; i < fusion.parts.size(); ++i)
      acc.add_product(chi.raw[fusion.parts[i].ambient_class], lambda.raw[i], Rational(fusion.parts[i].size), true);
  }
  Rational r = acc.value().to_rational() / Rational(fusion.order);
  r.canonicalize();
  return as_dimension(r, "multiplicity_check(" + chi.name + ", " + lambda.name + ")");
}

Integer d_theta(const Character& chi, const GroupModel& g, const ClassFusion& fusion, const std::vector<Character>& theta) {
  if (fusion.shape == ClassFusion::Shape::Aggregated) {
    Integer total = 0;
    for (const auto& t : theta) total += t.degree() * multiplicity_check(chi, g, fusion, t);
    return total;
  }
  if (chi.raw.size() != g.classes().size()) throw std::invalid_argument("d_theta: character does not belong to " + g.name());
  CyclotomicAccumulator acc;
  for (const auto& t : theta) {
    if (t.raw.size() != fusion.parts.size())
      throw std::invalid_argument("d_theta: character " + t.name + " does not match the subgroup classes");
    const Rational deg(t.degree());
    for (std::size_t i = 0; i < fusion.parts.size(); ++i)
      acc.add_product(chi.raw[fusion.parts[i].ambient_class], t.raw[i], Rational(fusion.parts[i].size) * deg, true);
  }
  Rational r = acc.value().to_rational() / Rational(fusion.order);
  r.canonicalize();
  return as_dimension(r, "d_theta(" + chi.name + ")");
}

Rational induced_inner_product(const CharacterTable& t, const Character& chi, const Character& psi, const ClassFusion& fusion) {
  const GroupModel& g = t.group();
  const auto counts = fusion.counts(g);
  const Rational order(g.order());
  CyclotomicAccumulator acc;
  for (std::size_t i = 0; i < g.classes().size(); ++i) {
    const auto& c = g.classes()[i];
    const Integer& hit = counts.at(c.label);
    if (hit == 0) continue;
    Rational alpha = Rational(hit) * order / (Rational(fusion.order) * Rational(c.size));
    alpha.canonicalize();
    Rational scale = Rational(c.size) * alpha / order;
    scale.canonicalize();
    acc.add_product(chi.raw[i], psi.raw[i], scale, true);
  }
  return acc.value().to_rational();
}

std::string table_to_json(const CharacterTable& t) {
  nlohmann::json j;
  const GroupModel& g = t.group();
  j["group"] = g.name();
  j["order"] = g.order().get_str();
  j["classes"] = nlohmann::json::array();
  for (const auto& c : g.classes())
    j["classes"].push_back({{"label", c.label.to_string()}, {"size", c.size.get_str()}, {"order", c.element_order}});
  j["characters"] = nlohmann::json::array();
  for (const auto& c : t.irreducibles()) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : c.values) values.push_back(v.to_string());
    j["characters"].push_back({{"name", c.name}, {"values", values}});
  }
  return j.dump(2);
}

}  // namespace osm
