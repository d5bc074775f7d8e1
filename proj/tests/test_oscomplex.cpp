#include <random>

#include "doctest.h"
#include "osm/oscomplex.hpp"

using namespace osm;
using K = ClassLabel::Kind;

namespace {

std::vector<std::string> vertex_names(const OrbitGraph& g) {
  std::vector<std::string> out;
  for (const auto& v : g.vertices) out.push_back(v.stabilizer_name);
  return out;
}

std::vector<std::string> edge_names(const OrbitGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges) out.push_back(e.stabilizer_name);
  return out;
}

std::vector<long> dims(const std::vector<std::pair<std::string, Integer>>& d) {
  std::vector<long> out;
  for (const auto& [n, x] : d) out.push_back(x.get_si());
  return out;
}

// (1/|H|) sum_{h in H} psi(h), summed directly over the elements
Rational trivial_multiplicity(const Character& psi, const GroupModel& g, const SubgroupSpec& h) {
  Cyclotomic s;
  for (Element x : h.elements) s += psi.values[g.class_of(x)];
  return s.to_rational() / Rational(static_cast<long>(h.elements.size()));
}

}  // namespace

TEST_CASE("OS graph shapes") {
  auto g4 = build_os_graph(Family::PSL2, 4, 0);
  CHECK(vertex_names(g4) == std::vector<std::string>{"B", "D6", "D10"});
  CHECK(edge_names(g4) == std::vector<std::string>{"C3", "C2", "C2"});

  auto g11 = build_os_graph(Family::PSL2, 11, 0);
  CHECK(vertex_names(g11) == std::vector<std::string>{"B", "D10", "D12", "A4"});
  CHECK(g11.edges[3].stabilizer_name == "C3");
  CHECK(g11.edges[3].source == 3);
  CHECK(g11.edges[3].target == 2);
  CHECK(build_os_graph(Family::PSL2, 19, 0).edges[3].target == 0);
  CHECK(build_os_graph(Family::PSL2, 27, 0).edges[3].target == 0);

  auto sz = build_os_graph(Family::Suzuki, 8, 2);
  CHECK(sz.vertices.size() == 4);
  CHECK(sz.edges.size() == 6);
  CHECK(edge_names(sz) == std::vector<std::string>{"C7", "C2", "C4", "C4", "1", "1"});
  CHECK(sz.edges[4].free);
  CHECK(sz.edges[5].free);
  CHECK(sz.edges[4].source == 0);
  CHECK(sz.edges[4].target == 0);

  CHECK(g11.tree_path(0).empty());
  CHECK(g11.tree_path(3) == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(build_os_graph(Family::PSL2, 7, 0), UnsupportedGroup);
  CHECK_THROWS_AS(build_os_graph(Family::Suzuki, 16, 0), UnsupportedGroup);
}

TEST_CASE("enumerated OS graphs satisfy the containments") {
  for (std::uint64_t q : {4, 8, 11, 16, 19, 27}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    for (auto choice : {ConnectorChoice::First, ConnectorChoice::Alternate}) {
      auto g = build_os_graph(Family::PSL2, q, 1, model, choice);
      CHECK(check_containments(g));
      for (const auto& e : g.edges)
        if (e.in_tree || e.free) CHECK(*e.connector == model->identity());
    }
  }
}

TEST_CASE("moduli dimension examples") {
  auto t4 = table_psl2_even(4);
  auto r4 = moduli_dimension_report(build_os_graph(Family::PSL2, 4, 0), *t4, rho0(*t4));
  CHECK(dims(r4.edge_dims) == std::vector<long>{3, 5, 5});
  CHECK(dims(r4.vertex_dims) == std::vector<long>{2, 2});
  CHECK(r4.dim_mbar == 9);
  CHECK(r4.equal);

  auto t11 = table_psl2_odd(11);
  auto r11 = moduli_dimension_report(build_os_graph(Family::PSL2, 11, 0), *t11, rho0(*t11));
  CHECK(dims(r11.edge_dims) == std::vector<long>{5, 13, 7, 9});
  CHECK(dims(r11.vertex_dims) == std::vector<long>{3, 3, 3});
  CHECK(r11.dim_mbar == 25);

  auto sz = table_suzuki(8);
  auto rs = moduli_dimension_report(build_os_graph(Family::Suzuki, 8, 0), *sz, rho0(*sz));
  CHECK(dims(rs.edge_dims) == std::vector<long>{28, 100, 52, 52});
  CHECK(dims(rs.vertex_dims) == std::vector<long>{16, 7, 13});
  CHECK(rs.dim_mbar == 196);
  CHECK(rs.equal);

  auto t8 = table_psl2_even(8);
  CHECK(moduli_dimension_report(build_os_graph(Family::PSL2, 8, 0), *t8, rho0(*t8)).dim_mbar == 49);

  auto j = to_json(r4);
  CHECK(j.find("\"dim_Mbar\":\"9\"") != std::string::npos);
}

TEST_CASE("moduli dimension holds for free edges and enumerated stabilizers") {
  for (std::size_t k = 0; k <= 3; ++k) {
    for (std::uint64_t q : {4, 8, 16, 32}) {
      auto t = table_psl2_even(q);
      auto r = moduli_dimension_report(build_os_graph(Family::PSL2, q, k), *t, rho0(*t));
      CHECK(r.equal);
      CHECK(r.dim_target == Integer(static_cast<unsigned long>(k + 1)) * (q - 1) * (q - 1));
    }
    for (std::uint64_t q : {11, 19, 27, 43}) {
      auto t = table_psl2_odd(q);
      CHECK(moduli_dimension_report(build_os_graph(Family::PSL2, q, k), *t, rho0(*t)).equal);
    }
    auto sz = table_suzuki(32);
    CHECK(moduli_dimension_report(build_os_graph(Family::Suzuki, 32, k), *sz, rho0(*sz)).equal);
  }
  for (std::uint64_t q : {4, 8, 11, 19}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    auto t = table_for(model);
    auto concrete = moduli_dimension_report(build_os_graph(Family::PSL2, q, 1, model), *t, rho0(*t));
    auto tabulated = moduli_dimension_report(build_os_graph(Family::PSL2, q, 1), *t, rho0(*t));
    CHECK(concrete.equal);
    CHECK(dims(concrete.edge_dims) == dims(tabulated.edge_dims));
    CHECK(dims(concrete.vertex_dims) == dims(tabulated.vertex_dims));
  }
}

TEST_CASE("Piterman identity examples") {
  auto model = enumerate_psl2(gf_make_q(4));
  auto t = table_for(model);
  auto graph = build_os_graph(Family::PSL2, 4, 0, model);
  const auto& one = t->get("1");
  const auto& rho = rho0(*t);

  auto triv = piterman_identity(graph, *t, one, one);
  CHECK(triv.lhs == 4);
  CHECK(triv.rhs == 4);

  auto r = piterman_identity(graph, *t, rho, rho);
  CHECK(r.lhs == 14);
  CHECK(r.rhs == 14);
  CHECK(r.equal);

  Rational lhs = trivial_multiplicity(rho, *model, build_subgroup(*model, SubgroupSpec::of(SubgroupSpec::Kind::Whole)));
  Rational rhs = 0;
  for (const auto& e : graph.edges) lhs += trivial_multiplicity(rho, *model, e.stabilizer);
  for (const auto& v : graph.vertices) rhs += trivial_multiplicity(rho, *model, v.stabilizer);
  rhs += rho.degree();
  auto mixed = piterman_identity(graph, *t, one, rho);
  CHECK(mixed.lhs == lhs);
  CHECK(mixed.rhs == rhs);
  CHECK(mixed.equal);
}

TEST_CASE("Piterman identity over all pairs") {
  for (std::uint64_t q : {4, 8, 11}) {
    auto model = enumerate_psl2(gf_make_q(q));
    auto t = table_for(model);
    auto graph = build_os_graph(Family::PSL2, q, 0, model);
    auto fusion = graph_fusion(graph, *model);
    for (const auto& a : t->irreducibles())
      for (const auto& b : t->irreducibles()) CHECK(piterman_identity(graph, *t, a, b, fusion).equal);
  }
  auto sz = table_suzuki(8);
  auto graph = build_os_graph(Family::Suzuki, 8, 2);
  auto fusion = graph_fusion(graph, sz->group());
  for (const auto& a : sz->irreducibles())
    for (const auto& b : sz->irreducibles()) CHECK(piterman_identity(graph, *sz, a, b, fusion).equal);
}

TEST_CASE("Brown presentation") {
  for (std::uint64_t q : {4, 11}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    for (auto choice : {ConnectorChoice::First, ConnectorChoice::Alternate}) {
      auto graph = build_os_graph(Family::PSL2, q, 2, model, choice);
      auto p = brown_presentation(graph);
      CHECK(p.verify());
      std::size_t tree = 0, conj = 0;
      for (const auto& r : p.relations) {
        if (r.type == Relation::Type::TreeEdge) {
          ++tree;
          CHECK(graph.edges[r.edge].in_tree);
          CHECK(p.phi({edge_letter(r.edge)}) == model->identity());
        } else {
          ++conj;
          CHECK_FALSE(graph.edges[r.edge].free);
          const Element ge = *graph.edges[r.edge].connector;
          CHECK(p.phi(r.lhs) == model->conjugate(r.g, ge));
          CHECK(p.phi(r.relator()) == model->identity());
        }
      }
      std::size_t expected = 0;
      for (const auto& e : graph.edges)
        if (!e.free) expected += e.stabilizer.elements.size();
      CHECK(tree == (q % 2 == 0 ? 2 : 3));
      CHECK(conj == expected);
    }
  }
}

TEST_CASE("Brown presentation rejects a bad connector") {
  auto model = enumerate_psl2(gf_make_q(4));
  auto graph = build_os_graph(Family::PSL2, 4, 0, model);
  auto& e = graph.edges[2];
  for (Element x = 0; x < model->size(); ++x) {
    bool ok = true;
    for (Element h : e.stabilizer.elements) ok = ok && graph.vertices[0].stabilizer.contains(model->conjugate(h, x));
    if (!ok) {
      e.connector = x;
      break;
    }
  }
  CHECK_FALSE(check_containments(graph));
  CHECK_THROWS_AS(brown_presentation(graph), InconsistentConnector);
}

TEST_CASE("Smith normal form") {
  auto rp2 = IntChainComplex(IntMatrix(1, 1), IntMatrix::from_rows({{2}}));
  auto h = homology(rp2);
  CHECK(h.betti == std::array<std::size_t, 3>{1, 0, 0});
  CHECK(h.torsion[1] == std::vector<Integer>{2});
  CHECK(h.torsion[0].empty());

  auto z = smith_normal_form(IntMatrix(3, 4));
  CHECK(z.S.is_zero());
  CHECK(z.rank() == 0);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> pick(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m(5, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j) m(i, j) = pick(rng) * (trial % 3 == 0 ? 6 : 1);
    auto s = smith_normal_form(m);
    CHECK(s.U * s.S * s.V == m);
    CHECK(s.P * m * s.Q == s.S);
    CHECK(s.U * s.P == IntMatrix::identity(5));
    CHECK(s.V * s.Q == IntMatrix::identity(7));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j)
        if (i != j) CHECK(s.S(i, j) == 0);
    for (std::size_t i = 0; i + 1 < s.rank(); ++i) CHECK(s.invariants[i + 1] % s.invariants[i] == 0);
  }

  auto d = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(d.invariants == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("chain complexes") {
  CHECK_THROWS_AS(IntChainComplex(IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})), NotAChainComplex);
  CHECK_THROWS_AS(IntChainComplex(IntMatrix(1, 2), IntMatrix(3, 1)), NotAChainComplex);
  // circle: one vertex, one loop
  auto s1 = homology(IntChainComplex(IntMatrix(1, 1), IntMatrix(1, 0)));
  CHECK(s1.betti == std::array<std::size_t, 3>{1, 1, 0});
  // torus: d2 = 0 on two loops
  auto t2 = homology(IntChainComplex(IntMatrix(1, 2), IntMatrix(2, 1)));
  CHECK(t2.betti == std::array<std::size_t, 3>{1, 2, 1});
}

TEST_CASE("the G-graph is connected with first Betti number (k+1)|G|") {
  for (std::uint64_t q : {4, 8, 11}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    for (std::size_t k : {0, 1}) {
      auto graph = build_os_graph(Family::PSL2, q, k, model, k == 0 ? ConnectorChoice::First : ConnectorChoice::Alternate);
      auto h = homology(equivariant_graph_chains(graph));
      CHECK(h.betti[0] == 1);
      CHECK(h.betti[1] == (k + 1) * model->size());
      CHECK(h.torsion[0].empty());
    }
  }
}

TEST_CASE("connector choice does not change the identities") {
  auto model = enumerate_psl2(gf_make_q(11));
  auto t = table_for(model);
  auto a = build_os_graph(Family::PSL2, 11, 1, model, ConnectorChoice::First);
  auto b = build_os_graph(Family::PSL2, 11, 1, model, ConnectorChoice::Alternate);
  CHECK(*a.edges[3].connector != *b.edges[3].connector);
  CHECK(to_json(moduli_dimension_report(a, *t, rho0(*t))) == to_json(moduli_dimension_report(b, *t, rho0(*t))));
  for (const auto& x : t->irreducibles())
    CHECK(to_json(piterman_identity(a, *t, x, rho0(*t))) == to_json(piterman_identity(b, *t, x, rho0(*t))));
  CHECK(brown_presentation(a).verify());
  CHECK(brown_presentation(b).verify());
}

TEST_CASE("group ring examples") {
  auto c2 = cyclic_group(2);
  auto one = GroupRingElement::one(c2);
  auto n2 = GroupRingElement::norm(c2, {0, 1});
  CHECK(n2.augmentation() == 2);
  CHECK(n2.bar() == n2);
  CHECK(n2 * n2 == Integer(2) * n2);

  auto x = solve_group_ring(c2, {{one, {0}}});
  REQUIRE(x);
  CHECK((*x)[0] == one);

  CHECK_FALSE(solve_group_ring(c2, {{one, {0, 1}}}));
  CHECK_FALSE(solve_group_ring(c2, {{n2, {0}}}));

  auto y = solve_group_ring(c2, {{one, {0}}, {one, {0, 1}}});
  REQUIRE(y);
  CHECK((*y)[0] * one + n2 * (*y)[1] == one);

  // both norms vanish under a faithful character of C6
  auto c6 = cyclic_group(6);
  auto e6 = GroupRingElement::one(c6);
  CHECK_FALSE(solve_group_ring(c6, {{e6, {0, 3}}, {e6, {0, 2, 4}}}));
  auto w = solve_group_ring(c6, {{e6, {0, 3}}, {e6, {0, 2, 4}}, {GroupRingElement::of(c6, 1), {0}}});
  REQUIRE(w);
  CHECK(GroupRingElement::norm(c6, {0, 3}) * (*w)[0] + GroupRingElement::norm(c6, {0, 2, 4}) * (*w)[1] +
            GroupRingElement::of(c6, 1) * (*w)[2] ==
        e6);
}

TEST_CASE("bar is an anti-automorphism") {
  auto d = dihedral_group(5);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Element> el(0, 9);
  std::uniform_int_distribution<long> co(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    GroupRingElement a(d), b(d);
    for (int i = 0; i < 4; ++i) {
      a.add(el(rng), co(rng));
      b.add(el(rng), co(rng));
    }
    CHECK((a * b).bar() == b.bar() * a.bar());
    CHECK(a.bar().bar() == a);
  }
}

TEST_CASE("group ring size bound") {
  auto model = enumerate_psl2(gf_make_q(19));
  auto triv = GroupRingElement::one(*model);
  CHECK_THROWS_AS(solve_group_ring(*model, {{triv, {model->identity()}}}), SizeBoundExceeded);
}
