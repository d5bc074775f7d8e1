#include <numeric>
#include <random>

#include "doctest.h"
#include "osm/numerics.hpp"

using namespace osm;

namespace {

struct Setup {
  GroupPtr model;
  TablePtr table;
  Realization rho;
};

Setup setup(std::uint64_t q) {
  auto model = enumerate_psl2(gf_make_q(q));
  auto table = table_for(model);
  auto r = realize_irreducible(model, rho0(*table), 7);
  return {model, table, std::move(r)};
}

std::map<std::uint64_t, std::size_t> each_once(std::uint64_t n) {
  std::map<std::uint64_t, std::size_t> out;
  for (std::uint64_t j = 0; j < n; ++j) out[j] = 1;
  return out;
}

double max_error(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, max_abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("realized irreducibles match their characters") {
  for (std::uint64_t q : {4, 8, 11, 19}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    auto table = table_for(model);
    for (const auto& chi : table->irreducibles()) {
      CAPTURE(chi.name);
      auto r = realize_irreducible(model, chi, 3);
      CHECK(Integer(static_cast<unsigned long>(r.rep.degree())) == chi.degree());
      CHECK(r.hom_defect <= 1e-8);
      CHECK(r.unitarity <= 1e-8);
      CHECK(r.character <= 1e-6);
      std::mt19937_64 rng(11);
      CHECK(homomorphism_defect(r.rep, rng, 500) <= 1e-8);
      CHECK(character_defect(r.rep, *model, chi) <= 1e-6);
    }
    auto triv = realize_irreducible(model, table->get("1"), 1);
    for (const auto& m : triv.rep.matrices) CHECK(max_abs(m - CMatrix::Identity(1, 1)) <= 1e-12);
  }
}

TEST_CASE("rho0 degrees and traces") {
  auto s4 = setup(4);
  CHECK(s4.rho.rep.degree() == 3);
  auto s11 = setup(11);
  CHECK(s11.rho.rep.degree() == 5);
  // trace at a unipotent element of PSL2(4) is theta_1 there, which is -1
  const auto lm = psl2_landmarks(*s4.model);
  CHECK(std::abs(s4.rho.rep(lm.t).trace() - std::complex<double>(-1.0, 0.0)) <= 1e-9);
}

TEST_CASE("unitarize, intertwiner and commutant") {
  auto s = setup(11);
  const auto& r = s.rho.rep;
  std::mt19937_64 rng(5);
  CMatrix a = random_complex(r.degree(), rng);
  auto skew = conjugate_rep(r, a);
  CHECK(unitarity_defect(skew) > 1e-3);
  auto fixed = unitarize(skew);
  CHECK(unitarity_defect(fixed) <= 1e-8);
  CHECK(character_defect(fixed, *s.model, rho0(*s.table)) <= 1e-6);

  CMatrix v = random_unitary(r.degree(), rng);
  auto rv = conjugate_rep(r, v);
  CMatrix u = intertwiner(r, rv, 9);
  for (Element x = 0; x < s.model->size(); ++x) CHECK(max_abs(u * r(x) * u.adjoint() - rv(x)) <= 1e-7);

  CMatrix self = intertwiner(r, r, 9);
  const std::complex<double> lambda = self(0, 0);
  CHECK(std::abs(std::abs(lambda) - 1.0) <= 1e-8);
  CHECK(max_abs(self - lambda * CMatrix::Identity(5, 5)) <= 1e-8);

  std::vector<Element> all(s.model->size());
  std::iota(all.begin(), all.end(), Element{0});
  CHECK(commutant_dim(r, all) == 1);
  CHECK(commutant_dim(direct_sum(r, r), all) == 4);
  CHECK(commutant_dim(r, {s.model->identity()}) == 25);

  auto other = realize_irreducible(s.model, s.table->get("eta_2"), 3);
  CHECK_THROWS_AS(intertwiner(r, other.rep, 1), NotIsomorphic);
  auto big = realize_irreducible(s.model, s.table->get("psi"), 3);
  CHECK_THROWS_AS(intertwiner(r, big.rep, 1), NotIsomorphic);
}

TEST_CASE("commutant dimensions agree with character inner products") {
  for (std::uint64_t q : {4, 11}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    auto table = table_for(model);
    auto graph = build_os_graph(Family::PSL2, q, 1, model);
    auto fusion = graph_fusion(graph, *model);
    for (const auto& chi : table->irreducibles()) {
      CAPTURE(chi.name);
      auto r = realize_irreducible(model, chi, 2);
      for (std::size_t v = 0; v < graph.vertices.size(); ++v)
        CHECK(Integer(static_cast<unsigned long>(commutant_dim(r.rep, graph.vertices[v].stabilizer.elements))) ==
              centralizer_dim(chi, *model, fusion.vertices[v]));
      for (std::size_t e = 0; e < graph.edges.size(); ++e)
        CHECK(Integer(static_cast<unsigned long>(commutant_dim(r.rep, graph.edges[e].stabilizer.elements))) ==
              centralizer_dim(chi, *model, fusion.edges[e]));
    }
  }
}

TEST_CASE("spectral splitting of rho0") {
  // PSL2(4): m' = 1, m'' = 2; PSL2(11): m' = 3, m'' = 2
  const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> at_t{{4, {1, 2}}, {11, {3, 2}}, {8, {3, 4}}};
  for (auto [q, mm] : at_t) {
    CAPTURE(q);
    auto s = setup(q);
    const auto& r = s.rho.rep;
    auto graph = build_os_graph(Family::PSL2, q, 0, s.model);
    const auto& torus = graph.edges[0].stabilizer;
    const std::uint64_t n = torus.elements.size();
    CHECK(n == r.degree());
    for (Element x : torus.elements) {
      if (s.model->element_order(x) != n) continue;
      auto sp = spectral_split(r, x);
      CHECK(sp.multiplicities == each_once(n));
      CHECK(sp.residual <= 1e-6);
    }
    const auto lm = psl2_landmarks(*s.model);
    auto st = spectral_split(r, lm.t);
    CHECK(st.order == 2);
    std::map<std::uint64_t, std::size_t> expected{{0, mm.first}, {1, mm.second}};
    CHECK(st.multiplicities == expected);
    auto id = spectral_split(r, s.model->identity());
    CHECK(id.multiplicities == std::map<std::uint64_t, std::size_t>{{0, r.degree()}});
  }
}

TEST_CASE("closed paths and kernel words") {
  for (std::uint64_t q : {4, 11}) {
    CAPTURE(q);
    auto model = enumerate_psl2(gf_make_q(q));
    auto p = brown_presentation(build_os_graph(Family::PSL2, q, 1, model));
    std::mt19937_64 rng(q);
    for (int i = 0; i < 30; ++i) {
      auto path = random_closed_path(p, rng, 1 + static_cast<std::size_t>(i % 7));
      CHECK(p.well_formed(path.word));
      CHECK(p.phi(path.word) == model->identity());
      CHECK(path.a.size() == path.steps.size());
      auto rebuilt = closed_path(p, path.steps);
      CHECK(rebuilt.word == path.word);
      auto w = random_kernel_word(p, rng);
      CHECK(p.well_formed(w));
      CHECK(p.phi(w) == model->identity());
    }
    CHECK_THROWS_AS(closed_path(p, {PathStep{0, 1, model->identity()}}), std::invalid_argument);
  }
}

TEST_CASE("moduli points and the H action") {
  for (std::uint64_t q : {4, 11}) {
    CAPTURE(q);
    auto s = setup(q);
    const auto& rho = s.rho.rep;
    auto p = brown_presentation(build_os_graph(Family::PSL2, q, 1, s.model));
    std::mt19937_64 rng(100 + q);
    const auto one = identity_point(p, rho.degree());

    for (int i = 0; i < 20; ++i) {
      auto w = random_word(p, rng, 12);
      CHECK(max_abs(rho_tau_eval(p, rho, one, w) - rho(p.phi(w))) <= 1e-9);
    }

    auto tau = random_moduli_point(p, rho, rng);
    CHECK(membership_defect(p, rho, tau) <= 1e-9);
    const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(rho.degree()), static_cast<Eigen::Index>(rho.degree()));
    for (std::size_t e = 0; e < p.graph.edges.size(); ++e)
      if (p.graph.edges[e].in_tree) CHECK(max_abs(rho_tau_eval(p, rho, tau, {edge_letter(e)}) - id) <= 1e-9);
    for (const auto& r : p.relations)
      CHECK(max_abs(rho_tau_eval(p, rho, tau, r.lhs) - rho_tau_eval(p, rho, tau, r.rhs)) <= 1e-9);
    for (int i = 0; i < 10; ++i) {
      auto u = random_word(p, rng, 6), v = random_word(p, rng, 6);
      CHECK(max_abs(rho_tau_eval(p, rho, tau, concat(u, v)) -
                    rho_tau_eval(p, rho, tau, u) * rho_tau_eval(p, rho, tau, v)) <= 1e-9);
    }

    auto alpha = random_h_point(p, rho, rng);
    auto beta = random_h_point(p, rho, rng);
    CHECK(membership_defect(p, rho, alpha) <= 1e-9);
    auto moved = h_action(p, rho, tau, alpha);
    CHECK(membership_defect(p, rho, moved) <= 1e-9);
    CHECK(max_error(h_action(p, rho, tau, identity_h_point(p, rho.degree())).tau, tau.tau) <= 1e-12);
    for (int i = 0; i < 20; ++i) {
      auto w = random_word(p, rng, 10);
      CHECK(max_abs(rho_tau_eval(p, rho, moved, w) - rho_tau_eval(p, rho, tau, w)) <= 1e-8);
    }
    auto tv = vertex_values(p, tau), mv = vertex_values(p, moved);
    for (std::size_t v = 0; v < tv.size(); ++v) CHECK(max_abs(mv[v] - alpha.alpha[v].adjoint() * tv[v]) <= 1e-9);

    auto twice = h_action(p, rho, moved, beta);
    auto once = h_action(p, rho, tau, multiply(alpha, beta));
    CHECK(max_error(twice.tau, once.tau) <= 1e-9);
    CHECK(max_error(h_between(p, tau, moved).alpha, alpha.alpha) <= 1e-9);

    HPoint bad = identity_h_point(p, rho.degree());
    bad.alpha[1] = random_unitary(rho.degree(), rng);
    CHECK_THROWS_AS(h_action(p, rho, tau, bad), std::invalid_argument);
  }
}

TEST_CASE("differentials of closed path words") {
  for (std::uint64_t q : {4, 11}) {
    CAPTURE(q);
    auto s = setup(q);
    const auto& rho = s.rho.rep;
    auto p = brown_presentation(build_os_graph(Family::PSL2, q, 1, s.model));
    std::mt19937_64 rng(300 + q);
    for (int i = 0; i < 10; ++i) {
      auto path = random_closed_path(p, rng, 2 + static_cast<std::size_t>(i));
      auto check = word_differential_check(p, rho, path, rng);
      CHECK(check.pass);
      CHECK(check.max_error <= 1e-6 * (1.0 + check.formula_norm));
    }

    const Element one = s.model->identity();
    auto back = closed_path(p, {PathStep{0, 1, one}, PathStep{0, -1, one}});
    auto dirs = tangent_directions(p, rho, rng);
    for (const auto& m : formula_jacobian(p, rho, back, dirs)) CHECK(max_abs(m) <= 1e-12);
    for (const auto& m : fd_jacobian(p, rho, back.word, dirs)) CHECK(max_abs(m) <= 1e-8);

    auto u = random_closed_path(p, rng, 4), v = random_closed_path(p, rng, 5);
    auto fu = formula_jacobian(p, rho, u, dirs), fv = formula_jacobian(p, rho, v, dirs);
    auto prod = fd_jacobian(p, rho, concat(u.word, v.word), dirs);
    for (std::size_t e = 0; e < dirs.size(); ++e) CHECK(max_abs(prod[e] - fu[e] - fv[e]) <= 1e-6);
    auto comm = concat(concat(u.word, v.word), concat(inverse(u.word), inverse(v.word)));
    for (const auto& m : fd_jacobian(p, rho, comm, dirs)) CHECK(max_abs(m) <= 1e-6);

    auto broken = u;
    for (Element x : p.graph.vertices[0].stabilizer.elements)
      if (x != one) {
        broken.word.push_back(vertex_letter(0, x));
        break;
      }
    CHECK_THROWS_AS(word_differential_check(p, rho, broken, rng), WordNotInKernel);
  }
}
