#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "osm/groups.hpp"

using namespace osm;
using K = ClassLabel::Kind;
using SK = SubgroupSpec::Kind;

namespace {

// class partition equals the conjugation orbit partition
void check_against_orbits(const GroupModel& g) {
  auto orbit = conjugacy_orbits(g, transvection_generators(g));
  std::map<std::uint32_t, std::size_t> orbit_class;
  std::map<std::size_t, std::set<std::uint32_t>> class_orbits;
  std::vector<Integer> count(g.classes().size(), 0);
  for (Element e = 0; e < g.size(); ++e) {
    auto [it, fresh] = orbit_class.emplace(orbit[e], g.class_of(e));
    CHECK(it->second == g.class_of(e));
    class_orbits[g.class_of(e)].insert(orbit[e]);
    count[g.class_of(e)] += 1;
  }
  CHECK(class_orbits.size() == g.classes().size());
  for (auto& [c, orbits] : class_orbits) CHECK(orbits.size() == 1);
  for (std::size_t c = 0; c < count.size(); ++c) CHECK(count[c] == g.classes()[c].size);
  for (Element e = 0; e < g.size(); ++e) CHECK(g.element_order(e) == g.classes()[g.class_of(e)].element_order);
}

bool closed(const GroupModel& g, const SubgroupSpec& s) {
  for (Element x : s.elements) {
    if (!s.contains(g.inverse(x))) return false;
    for (Element y : s.elements)
      if (!s.contains(g.multiply(x, y))) return false;
  }
  return true;
}

std::vector<SubgroupSpec> stabilizer_specs(std::uint64_t q) {
  if (q % 2 == 0)
    return {SubgroupSpec::of(SK::Trivial), SubgroupSpec::of(SK::Borel), SubgroupSpec::of(SK::DihedralSplit),
            SubgroupSpec::of(SK::DihedralNonsplit), SubgroupSpec::of(SK::Cyclic, q - 1), SubgroupSpec::of(SK::Cyclic, 2)};
  return {SubgroupSpec::of(SK::Trivial), SubgroupSpec::of(SK::Borel), SubgroupSpec::of(SK::A4),
          SubgroupSpec::of(SK::DihedralSplit), SubgroupSpec::of(SK::DihedralNonsplit), SubgroupSpec::of(SK::Cyclic, 2),
          SubgroupSpec::of(SK::Klein4), SubgroupSpec::of(SK::Cyclic, (q - 1) / 2), SubgroupSpec::of(SK::Cyclic, 3)};
}

}  // namespace

TEST_CASE("PSL2(4) has order 60 and 5 classes") {
  auto g = enumerate_psl2(gf_make_q(4));
  CHECK(g->size() == 60);
  CHECK(g->classes().size() == 5);
  CHECK(g->order() == 60);
}

TEST_CASE("PSL2(11) class of c has size 60") {
  auto g = enumerate_psl2(gf_make_q(11));
  CHECK(g->size() == 660);
  CHECK(g->classes()[g->class_index({K::C, 0})].size == 60);
  CHECK(g->classes().size() == (11 + 5) / 2);
}

TEST_CASE("SL2(5) has order 120") {
  auto g = enumerate_sl2(gf_make_q(5));
  CHECK(g->size() == 120);
  CHECK(g->classes().size() == 5 + 4);
}

TEST_CASE("classify examples") {
  auto g4 = enumerate_psl2(gf_make_q(4));
  CHECK(g4->classes()[g4->class_of(g4->identity())].label == ClassLabel{K::Id, 0});
  auto c = g4->find(Mat2{1, 0, 1, 1});
  CHECK(g4->classes()[g4->class_of(c)].label == ClassLabel{K::C, 0});
  CHECK(g4->classes()[g4->class_of(c)].size == 15);

  auto g11 = enumerate_psl2(gf_make_q(11));
  int involutions = 0;
  for (Element e = 0; e < g11->size(); ++e)
    if (g11->element_order(e) == 2) {
      ++involutions;
      CHECK(g11->classes()[g11->class_of(e)].label == ClassLabel{K::BQuarter, 0});
    }
  CHECK(involutions == 55);
}

TEST_CASE("classes match brute-force conjugation orbits") {
  for (std::uint64_t q : {3, 5, 7, 9, 4, 8}) {
    CAPTURE(q);
    check_against_orbits(*enumerate_sl2(gf_make_q(q)));
  }
  for (std::uint64_t q : {4, 7, 8, 11, 16, 19}) {
    CAPTURE(q);
    check_against_orbits(*enumerate_psl2(gf_make_q(q)));
  }
}

TEST_CASE("classify is constant under random conjugation") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {11, 27, 32}) {
    auto g = enumerate_psl2(gf_make_q(q));
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g->size() - 1));
    for (int i = 0; i < 2000; ++i) {
      Element x = pick(rng), h = pick(rng);
      CHECK(g->class_of(g->conjugate(x, h)) == g->class_of(x));
    }
  }
}

TEST_CASE("class sizes sum to the group order") {
  for (std::uint64_t q : {4, 8, 11, 19, 27, 43, 83}) {
    auto g = psl2_class_model(q);
    Integer s = 0;
    for (auto& c : g->classes()) s += c.size;
    CHECK(s == g->order());
  }
  for (std::uint64_t q : {3, 5, 9, 25}) {
    auto g = sl2_class_model(q);
    CHECK(g->classes().size() == q + 4);
    Integer s = 0;
    for (auto& c : g->classes()) s += c.size;
    CHECK(s == Integer(static_cast<unsigned long>(q * (q * q - 1))));
  }
}

TEST_CASE("subgroup examples") {
  auto g4 = enumerate_psl2(gf_make_q(4));
  CHECK(build_subgroup(*g4, SubgroupSpec::of(SK::Borel)).elements.size() == 12);
  auto g11 = enumerate_psl2(gf_make_q(11));
  CHECK(build_subgroup(*g11, SubgroupSpec::of(SK::DihedralSplit)).elements.size() == 10);
  CHECK(build_subgroup(*g11, SubgroupSpec::of(SK::A4)).elements.size() == 12);
}

TEST_CASE("fusion examples") {
  auto g4 = enumerate_psl2(gf_make_q(4));
  auto d6 = build_subgroup(*g4, SubgroupSpec::of(SK::DihedralSplit));
  CHECK(fusion_table(*g4, d6).counts(*g4).at({K::C, 0}) == 3);

  auto g11 = enumerate_psl2(gf_make_q(11));
  auto c3 = build_subgroup(*g11, SubgroupSpec::of(SK::Cyclic, 3));
  auto counts = fusion_table(*g11, c3).counts(*g11);
  CHECK(counts.at({K::B, 2}) == 2);
  CHECK(counts.at({K::B, 1}) == 0);

  auto triv = build_subgroup(*g11, SubgroupSpec::of(SK::Trivial));
  for (auto& [label, n] : fusion_table(*g11, triv).counts(*g11)) CHECK(n == (label.kind == K::Id ? 1 : 0));
}

TEST_CASE("subgroups are closed and enumerated fusion matches the tables") {
  for (std::uint64_t q : {4, 8, 11, 16, 27}) {
    CAPTURE(q);
    auto g = enumerate_psl2(gf_make_q(q));
    for (const auto& spec : stabilizer_specs(q)) {
      CAPTURE(spec.name(*g));
      auto sub = build_subgroup(*g, spec);
      CHECK(closed(*g, sub));
      auto got = fusion_table(*g, sub);
      auto want = paper_fusion(*g, spec);
      CHECK(got.counts(*g) == want.counts(*g));
      CHECK(got.shape == want.shape);
      Integer total = 0;
      for (auto& p : got.parts) total += p.size;
      CHECK(total == got.order);
    }
  }
}

TEST_CASE("dihedral and cyclic fusion shapes align with the tables") {
  auto g = enumerate_psl2(gf_make_q(8));
  for (const auto& spec : {SubgroupSpec::of(SK::DihedralSplit), SubgroupSpec::of(SK::DihedralNonsplit), SubgroupSpec::of(SK::Cyclic, 7)}) {
    auto got = fusion_table(*g, build_subgroup(*g, spec));
    auto want = paper_fusion(*g, spec);
    REQUIRE(got.parts.size() == want.parts.size());
    for (std::size_t i = 0; i < got.parts.size(); ++i) {
      CHECK(got.parts[i].size == want.parts[i].size);
      CHECK(got.parts[i].ambient_class == want.parts[i].ambient_class);
    }
  }
}

TEST_CASE("Suzuki class labels") {
  CHECK(suzuki_r(8) == 4);
  CHECK(suzuki_r(32) == 8);
  CHECK(suzuki_orbit_reps(13, 8) == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(suzuki_orbit_reps(5, 8) == std::vector<std::uint32_t>{1});
  for (std::uint64_t q : {8, 32, 128}) CHECK(suzuki_class_labels(q).size() == q + 3);
  CHECK_THROWS(suzuki_r(16));
}

TEST_CASE("scope predicates") {
  CHECK(psl2_q_in_scope(4));
  CHECK(psl2_q_in_scope(11));
  CHECK(psl2_q_in_scope(27));
  CHECK_FALSE(psl2_q_in_scope(3));
  CHECK_FALSE(psl2_q_in_scope(6));
  CHECK_FALSE(psl2_q_in_scope(7));
  CHECK_FALSE(psl2_q_in_scope(2));
  CHECK(suzuki_q_in_scope(8));
  CHECK_FALSE(suzuki_q_in_scope(2));
}

TEST_CASE("enumeration bound") {
  CHECK_THROWS_AS(enumerate_psl2(gf_make_q(107)), SizeBoundExceeded);
  CHECK(psl2_class_model(107)->classes().size() == (107 + 5) / 2);
}

TEST_CASE("Cayley groups") {
  auto c = cyclic_group(6);
  CHECK(c.element_order(1) == 6);
  CHECK(c.closure({2}).size() == 3);
  auto d = dihedral_group(5);
  CHECK(d.size() == 10);
  CHECK(d.element_order(1) == 5);
  CHECK(d.element_order(5) == 2);
  CHECK(d.conjugate(1, 5) == 4);
  auto orbits = conjugacy_orbits(d, {1, 5});
  std::set<std::uint32_t> distinct(orbits.begin(), orbits.end());
  CHECK(distinct.size() == 4);
}
