#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "osm/chars.hpp"
#include "osm/groups.hpp"

namespace osm {

struct UnsupportedGroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InconsistentConnector : std::logic_error {
  using std::logic_error::logic_error;
};
struct NotAChainComplex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- orbit graphs

struct GraphVertex {
  std::string name;
  std::string stabilizer_name;
  SubgroupSpec stabilizer;
};

// v_s --e--> g_e v_w
struct GraphEdge {
  std::string name;
  std::string stabilizer_name;
  SubgroupSpec stabilizer;
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<Element> connector;  // g_e, known when the model is enumerated
  bool in_tree = false;
  bool free = false;
};

enum class ConnectorChoice { First, Alternate };

struct OrbitGraph {
  Family family = Family::PSL2;
  std::uint64_t q = 0;
  std::size_t k = 0;
  GroupPtr model;  // enumerated model or null
  std::vector<GraphVertex> vertices;  // vertices[0] is the root v_0
  std::vector<GraphEdge> edges;

  // tree edges from v_0 to v, in order
  std::vector<std::size_t> tree_path(std::size_t v) const;
  std::string group_name() const;
};

// PSL2(q) for q in scope, Sz(q). A given model must be an enumerated PSL2(q); its
// stabilizers and connectors are then concrete.
OrbitGraph build_os_graph(Family family, std::uint64_t q, std::size_t k, GroupPtr model = nullptr,
                          ConnectorChoice choice = ConnectorChoice::First);

// G_e inside G_s and g_e^-1 G_e g_e inside G_w, on enumerated models
bool check_containments(const OrbitGraph& graph);

// fusion data of every stabilizer relative to the classes of g
struct GraphFusion {
  std::vector<ClassFusion> vertices;
  std::vector<ClassFusion> edges;
};
GraphFusion graph_fusion(const OrbitGraph& graph, const GroupModel& g);

// ---------------------------------------------------------------- identities

struct ModuliDimensionReport {
  std::string group;
  std::string character;
  std::size_t k = 0;
  Integer degree;
  std::vector<std::pair<std::string, Integer>> edge_dims;
  std::vector<std::pair<std::string, Integer>> vertex_dims;  // v_0 excluded
  Integer dim_m;     // sum over edges
  Integer dim_h;     // sum over v != v_0
  Integer dim_mbar;  // dim_m - dim_h
  Integer dim_target;  // (k + 1) m^2
  bool equal = false;
};

ModuliDimensionReport moduli_dimension_report(const OrbitGraph& graph, const CharacterTable& table, const Character& rho);
ModuliDimensionReport moduli_dimension_report(const OrbitGraph& graph, const CharacterTable& table, const Character& rho,
                                              const GraphFusion& fusion);

struct PitermanReport {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// <phi,psi>_G + sum_e <Res,Res> = sum_v <Res,Res> + free_faces phi(1) psi(1); free_faces defaults to k + 1
PitermanReport piterman_identity(const OrbitGraph& graph, const CharacterTable& table, const Character& phi,
                                 const Character& psi, std::optional<std::size_t> free_faces = std::nullopt);
PitermanReport piterman_identity(const OrbitGraph& graph, const CharacterTable& table, const Character& phi,
                                 const Character& psi, const GraphFusion& fusion,
                                 std::optional<std::size_t> free_faces = std::nullopt);

std::string to_json(const ModuliDimensionReport& r);
std::string to_json(const PitermanReport& r);

// ---------------------------------------------------------------- Brown presentation

// x_e^(+-1) or i_v(g)^(+-1)
struct Letter {
  enum class Kind { Edge, Vertex };
  Kind kind = Kind::Edge;
  std::size_t index = 0;
  Element g = 0;
  int exponent = 1;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

Letter edge_letter(std::size_t e, int exponent = 1);
Letter vertex_letter(std::size_t v, Element g, int exponent = 1);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

struct Relation {
  enum class Type { TreeEdge, Conjugation };
  Type type = Type::TreeEdge;
  std::size_t edge = 0;
  Element g = 0;  // element of G_e for conjugation relations
  Word lhs;
  Word rhs;
  Word relator() const { return concat(lhs, inverse(rhs)); }
};

struct BrownPresentation {
  OrbitGraph graph;
  std::vector<Relation> relations;

  // x_e -> g_e, i_v(g) -> g
  Element phi(const Word& w) const;
  // every relation evaluates equal on both sides; vertex letters lie in their stabilizers
  bool verify() const;
  bool well_formed(const Word& w) const;
};

// requires an enumerated model; throws InconsistentConnector when g_e^-1 g g_e leaves G_w
BrownPresentation brown_presentation(const OrbitGraph& graph);

// Closed edge path (a_1 e_1^eps_1, ..., a_n e_n^eps_n) at v_0. Step i leaves its vertex
// through h_i, giving the word i_v0(h_1) x_e1^eps1 ... i_v(h_n) x_en^epsn i_v0(g_1...g_n)^-1.
struct PathStep {
  std::size_t edge = 0;
  int epsilon = 1;
  Element h = 0;  // in the stabilizer of the vertex left
};
struct ClosedPath {
  std::vector<PathStep> steps;
  std::vector<Element> a;
  Word word;
};
ClosedPath closed_path(const BrownPresentation& p, const std::vector<PathStep>& steps);
// random walk of the given length, closed by a shortest return to v_0
ClosedPath random_closed_path(const BrownPresentation& p, std::mt19937_64& rng, std::size_t walk_steps);
Word random_word(const BrownPresentation& p, std::mt19937_64& rng, std::size_t length);
// conjugated relators, closed path words and commutators of these
Word random_kernel_word(const BrownPresentation& p, std::mt19937_64& rng);

// ---------------------------------------------------------------- integer linear algebra

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  bool is_zero() const;
  bool operator==(const IntMatrix& o) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

// M = U S V and P M Q = S with P = U^-1, Q = V^-1
struct SmithForm {
  IntMatrix S, U, V, P, Q;
  std::vector<Integer> invariants;  // nonzero diagonal, each dividing the next
  std::size_t rank() const { return invariants.size(); }
};
// without transforms only S and the invariants are filled
SmithForm smith_normal_form(const IntMatrix& m, bool transforms = true);

// C_2 -> C_1 -> C_0
class IntChainComplex {
 public:
  IntChainComplex(IntMatrix d1, IntMatrix d2);
  const IntMatrix& d1() const { return d1_; }
  const IntMatrix& d2() const { return d2_; }
  std::array<std::size_t, 3> ranks() const { return {d1_.rows(), d1_.cols(), d2_.cols()}; }

 private:
  IntMatrix d1_, d2_;
};

struct Homology {
  std::array<std::size_t, 3> betti{};
  std::array<std::vector<Integer>, 3> torsion;  // invariant factors > 1
};
Homology homology(const IntChainComplex& c);

// cellular chains of the G-graph: vertices g G_v, edges g G_e from g v_s to g g_e v_w
IntChainComplex equivariant_graph_chains(const OrbitGraph& graph);

// ---------------------------------------------------------------- group ring

class GroupRingElement {
 public:
  explicit GroupRingElement(const FiniteGroup& g) : group_(&g) {}
  static GroupRingElement one(const FiniteGroup& g);
  static GroupRingElement of(const FiniteGroup& g, Element x, const Integer& c = 1);
  // N(H) = sum of the elements of H
  static GroupRingElement norm(const FiniteGroup& g, const std::vector<Element>& h);

  const FiniteGroup& group() const { return *group_; }
  const std::map<Element, Integer>& terms() const { return terms_; }
  Integer coefficient(Element x) const;
  void add(Element x, const Integer& c);

  GroupRingElement bar() const;
  Integer augmentation() const;

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const Integer& c, GroupRingElement a);
  bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }

 private:
  const FiniteGroup* group_;
  std::map<Element, Integer> terms_;  // nonzero coefficients only
};

struct GroupRingTarget {
  GroupRingElement s;
  std::vector<Element> subgroup;
};

constexpr std::size_t kMaxGroupRingEntries = 100000;

// x_e with sum_e s_e N(G_e) x_e = rhs (default 1), or nullopt if infeasible over Z
std::optional<std::vector<GroupRingElement>> solve_group_ring(const FiniteGroup& g,
                                                              const std::vector<GroupRingTarget>& targets,
                                                              std::optional<GroupRingElement> rhs = std::nullopt);

}  // namespace osm
