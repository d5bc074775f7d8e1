#include "osm/oscomplex.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>

#include "json.hpp"

namespace osm {

namespace {

using SK = SubgroupSpec::Kind;

std::string str(std::uint64_t n) { return std::to_string(n); }

bool odd_psl2_in_scope(std::uint64_t q) { return q % 2 == 1 && psl2_q_in_scope(q); }

SubgroupSpec make_stabilizer(const GroupPtr& model, SubgroupSpec spec) {
  return model ? build_subgroup(*model, spec) : spec;
}

// g with g^-1 G_e g inside G_w
std::optional<Element> find_connector(const GroupModel& g, const SubgroupSpec& edge, const SubgroupSpec& target,
                                      ConnectorChoice choice) {
  std::optional<Element> first, last;
  for (Element x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (Element h : edge.generators)
      if (!target.contains(g.conjugate(h, x))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (!first) first = x;
    last = x;
  }
  return choice == ConnectorChoice::First ? first : last;
}

}  // namespace

// ---------------------------------------------------------------- orbit graphs

std::string OrbitGraph::group_name() const {
  return (family == Family::Suzuki ? "Sz(" : "PSL2(") + str(q) + ")";
}

std::vector<std::size_t> OrbitGraph::tree_path(std::size_t v) const {
  if (v >= vertices.size()) throw std::out_of_range("tree_path: no vertex " + str(v));
  std::vector<std::optional<std::size_t>> via(vertices.size());
  std::vector<bool> seen(vertices.size(), false);
  seen[0] = true;
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    std::size_t u = todo.front();
    todo.pop();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& ed = edges[e];
      if (!ed.in_tree || ed.source != u || seen[ed.target]) continue;
      seen[ed.target] = true;
      via[ed.target] = e;
      todo.push(ed.target);
    }
  }
  if (!seen[v]) throw std::logic_error("tree_path: vertex not reached by the tree");
  std::vector<std::size_t> path;
  for (std::size_t u = v; u != 0; u = edges[*via[u]].source) path.push_back(*via[u]);
  std::reverse(path.begin(), path.end());
  return path;
}

OrbitGraph build_os_graph(Family family, std::uint64_t q, std::size_t k, GroupPtr model, ConnectorChoice choice) {
  OrbitGraph out;
  out.family = family;
  out.q = q;
  out.k = k;
  if (model) {
    if (!model->enumerated() || model->family() != Family::PSL2 || model->q() != q)
      throw std::invalid_argument("build_os_graph: model must be an enumerated PSL2(" + str(q) + ")");
    out.model = model;
  }

  auto vertex = [&](std::string label, SubgroupSpec spec) {
    out.vertices.push_back({"v_" + str(out.vertices.size()), std::move(label), make_stabilizer(model, spec)});
  };
  auto edge = [&](std::string label, SubgroupSpec spec, std::size_t s, std::size_t w, bool tree) {
    GraphEdge e;
    e.name = "eta_" + str(out.edges.size());
    e.stabilizer_name = std::move(label);
    e.stabilizer = spec;
    e.source = s;
    e.target = w;
    e.in_tree = tree;
    out.edges.push_back(std::move(e));
  };

  if (family == Family::PSL2 && psl2_q_in_scope(q) && q % 2 == 0) {
    vertex("B", SubgroupSpec::of(SK::Borel));
    vertex("D" + str(2 * (q - 1)), SubgroupSpec::of(SK::DihedralSplit));
    vertex("D" + str(2 * (q + 1)), SubgroupSpec::of(SK::DihedralNonsplit));
    edge("C" + str(q - 1), make_stabilizer(model, SubgroupSpec::of(SK::Cyclic, q - 1)), 0, 1, true);
    edge("C2", make_stabilizer(model, SubgroupSpec::of(SK::Cyclic, 2)), 1, 2, true);
    SubgroupSpec c2 = SubgroupSpec::of(SK::Cyclic, 2);
    if (model) {
      const auto lm = psl2_landmarks(*model);
      c2 = subgroup_from_generators(*model, SK::Cyclic, {model->multiply(lm.t, lm.b)});
    }
    edge("C2", c2, 2, 0, false);
  } else if (family == Family::PSL2 && odd_psl2_in_scope(q)) {
    vertex("B", SubgroupSpec::of(SK::Borel));
    vertex("D" + str(q - 1), SubgroupSpec::of(SK::DihedralSplit));
    vertex("D" + str(q + 1), SubgroupSpec::of(SK::DihedralNonsplit));
    vertex("A4", SubgroupSpec::of(SK::A4));
    edge("C" + str((q - 1) / 2), make_stabilizer(model, SubgroupSpec::of(SK::Cyclic, (q - 1) / 2)), 0, 1, true);
    edge("C2", make_stabilizer(model, SubgroupSpec::of(SK::Cyclic, 2)), 1, 2, true);
    edge("C2xC2", make_stabilizer(model, SubgroupSpec::of(SK::Klein4)), 2, 3, true);
    edge("C3", make_stabilizer(model, SubgroupSpec::of(SK::Cyclic, 3)), 3, q % 24 == 11 ? 2 : 0, false);
  } else if (family == Family::Suzuki && suzuki_q_in_scope(q)) {
    if (model) throw std::invalid_argument("build_os_graph: Suzuki groups have no enumerated model");
    const std::uint64_t r = suzuki_r(q);
    vertex("B", SubgroupSpec::of(SK::Borel));
    vertex("D" + str(2 * (q - 1)), SubgroupSpec::of(SK::DihedralSplit));
    vertex("C" + str(q + r + 1) + ":C4", SubgroupSpec::of(SK::SzTorusNormalizerPlus));
    vertex("C" + str(q - r + 1) + ":C4", SubgroupSpec::of(SK::SzTorusNormalizerMinus));
    edge("C" + str(q - 1), SubgroupSpec::of(SK::Cyclic, q - 1), 0, 1, true);
    edge("C2", SubgroupSpec::of(SK::Cyclic, 2), 1, 2, true);
    edge("C4", SubgroupSpec::of(SK::Cyclic, 4), 2, 3, true);
    edge("C4", SubgroupSpec::of(SK::Cyclic, 4), 3, 0, false);
  } else {
    throw UnsupportedGroup("build_os_graph: " + family_name(family) + "(" + str(q) + ") is not covered");
  }

  for (std::size_t i = 1; i <= k; ++i) {
    GraphEdge e;
    e.name = "eta'_" + str(i);
    e.stabilizer_name = "1";
    e.stabilizer = make_stabilizer(model, SubgroupSpec::of(SK::Trivial));
    e.free = true;
    out.edges.push_back(std::move(e));
  }

  if (model) {
    for (auto& e : out.edges) {
      if (e.in_tree || e.free) {
        e.connector = model->identity();
        continue;
      }
      e.connector = find_connector(*model, e.stabilizer, out.vertices[e.target].stabilizer, choice);
      if (!e.connector) throw InconsistentConnector("build_os_graph: no connector for " + e.name);
    }
  }
  return out;
}

bool check_containments(const OrbitGraph& graph) {
  if (!graph.model) throw std::invalid_argument("check_containments: graph has no enumerated model");
  const GroupModel& g = *graph.model;
  for (const auto& e : graph.edges) {
    const auto& src = graph.vertices[e.source].stabilizer;
    const auto& dst = graph.vertices[e.target].stabilizer;
    if (!e.connector) return false;
    for (Element x : e.stabilizer.elements)
      if (!src.contains(x) || !dst.contains(g.conjugate(x, *e.connector))) return false;
  }
  return true;
}

GraphFusion graph_fusion(const OrbitGraph& graph, const GroupModel& g) {
  const bool concrete = graph.model.get() == &g;
  auto fuse = [&](const SubgroupSpec& s) {
    return concrete && !s.elements.empty() ? fusion_table(g, s) : paper_fusion(g, s);
  };
  if (g.family() != graph.family || g.q() != graph.q)
    throw std::invalid_argument("graph_fusion: " + g.name() + " does not match " + graph.group_name());
  GraphFusion out;
  for (const auto& v : graph.vertices) out.vertices.push_back(fuse(v.stabilizer));
  for (const auto& e : graph.edges) out.edges.push_back(fuse(e.stabilizer));
  return out;
}

// ---------------------------------------------------------------- identities

ModuliDimensionReport moduli_dimension_report(const OrbitGraph& graph, const CharacterTable& table, const Character& rho) {
  return moduli_dimension_report(graph, table, rho, graph_fusion(graph, table.group()));
}

ModuliDimensionReport moduli_dimension_report(const OrbitGraph& graph, const CharacterTable& table, const Character& rho,
                                              const GraphFusion& fusion) {
  const GroupModel& g = table.group();
  ModuliDimensionReport r;
  r.group = graph.group_name();
  r.character = rho.name;
  r.k = graph.k;
  r.degree = rho.degree();
  r.dim_m = 0;
  r.dim_h = 0;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    Integer d = centralizer_dim(rho, g, fusion.edges[e]);
    r.dim_m += d;
    r.edge_dims.emplace_back(graph.edges[e].name, d);
  }
  for (std::size_t v = 1; v < graph.vertices.size(); ++v) {
    Integer d = centralizer_dim(rho, g, fusion.vertices[v]);
    r.dim_h += d;
    r.vertex_dims.emplace_back(graph.vertices[v].name, d);
  }
  r.dim_mbar = r.dim_m - r.dim_h;
  r.dim_target = Integer(static_cast<unsigned long>(graph.k + 1)) * r.degree * r.degree;
  r.equal = r.dim_mbar == r.dim_target;
  return r;
}

PitermanReport piterman_identity(const OrbitGraph& graph, const CharacterTable& table, const Character& phi,
                                 const Character& psi, std::optional<std::size_t> free_faces) {
  return piterman_identity(graph, table, phi, psi, graph_fusion(graph, table.group()), free_faces);
}

PitermanReport piterman_identity(const OrbitGraph& graph, const CharacterTable& table, const Character& phi,
                                 const Character& psi, const GraphFusion& fusion, std::optional<std::size_t> free_faces) {
  const GroupModel& g = table.group();
  PitermanReport r;
  r.lhs = table.inner_product(phi, psi);
  for (const auto& f : fusion.edges) r.lhs += restricted_inner_product(phi, psi, g, f);
  r.rhs = 0;
  for (const auto& f : fusion.vertices) r.rhs += restricted_inner_product(phi, psi, g, f);
  const std::size_t faces = free_faces.value_or(graph.k + 1);
  r.rhs += Rational(Integer(static_cast<unsigned long>(faces)) * phi.degree() * psi.degree());
  r.equal = r.lhs == r.rhs;
  return r;
}

std::string to_json(const ModuliDimensionReport& r) {
  nlohmann::ordered_json j;
  j["group"] = r.group;
  j["character"] = r.character;
  j["k"] = r.k;
  j["degree"] = r.degree.get_str();
  for (const auto& [n, d] : r.edge_dims) j["edges"][n] = d.get_str();
  for (const auto& [n, d] : r.vertex_dims) j["vertices"][n] = d.get_str();
  j["dim_M"] = r.dim_m.get_str();
  j["dim_H"] = r.dim_h.get_str();
  j["dim_Mbar"] = r.dim_mbar.get_str();
  j["dim_G^(k+1)"] = r.dim_target.get_str();
  j["equal"] = r.equal;
  return j.dump();
}

std::string to_json(const PitermanReport& r) {
  nlohmann::ordered_json j;
  j["lhs"] = r.lhs.get_str();
  j["rhs"] = r.rhs.get_str();
  j["equal"] = r.equal;
  return j.dump();
}

// ---------------------------------------------------------------- Brown presentation

Letter edge_letter(std::size_t e, int exponent) { return Letter{Letter::Kind::Edge, e, 0, exponent}; }
Letter vertex_letter(std::size_t v, Element g, int exponent) { return Letter{Letter::Kind::Vertex, v, g, exponent}; }

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool BrownPresentation::well_formed(const Word& w) const {
  for (const auto& l : w) {
    if (l.exponent != 1 && l.exponent != -1) return false;
    if (l.kind == Letter::Kind::Edge) {
      if (l.index >= graph.edges.size()) return false;
    } else if (l.index >= graph.vertices.size() || !graph.vertices[l.index].stabilizer.contains(l.g)) {
      return false;
    }
  }
  return true;
}

Element BrownPresentation::phi(const Word& w) const {
  if (!well_formed(w)) throw std::invalid_argument("phi: word uses unknown symbols");
  const GroupModel& g = *graph.model;
  Element x = g.identity();
  for (const auto& l : w) {
    Element y = l.kind == Letter::Kind::Edge ? *graph.edges[l.index].connector : l.g;
    if (l.exponent < 0) y = g.inverse(y);
    x = g.multiply(x, y);
  }
  return x;
}

bool BrownPresentation::verify() const {
  for (const auto& r : relations)
    if (!well_formed(r.lhs) || !well_formed(r.rhs) || phi(r.lhs) != phi(r.rhs)) return false;
  return true;
}

BrownPresentation brown_presentation(const OrbitGraph& graph) {
  if (!graph.model) throw std::invalid_argument("brown_presentation: needs an enumerated model");
  const GroupModel& g = *graph.model;
  BrownPresentation p{graph, {}};
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& ed = graph.edges[e];
    if (!ed.connector) throw InconsistentConnector("brown_presentation: " + ed.name + " has no connector");
    const Element ge = *ed.connector;
    if (ed.in_tree) {
      if (ge != g.identity()) throw InconsistentConnector("brown_presentation: tree edge " + ed.name + " has g_e != 1");
      p.relations.push_back({Relation::Type::TreeEdge, e, g.identity(), {edge_letter(e)}, {}});
    }
    if (ed.free) continue;
    const auto& src = graph.vertices[ed.source].stabilizer;
    const auto& dst = graph.vertices[ed.target].stabilizer;
    for (Element x : ed.stabilizer.elements) {
      const Element y = g.conjugate(x, ge);
      if (!src.contains(x) || !dst.contains(y))
        throw InconsistentConnector("brown_presentation: " + ed.name + " violates the stabilizer containments");
      p.relations.push_back({Relation::Type::Conjugation, e, x,
                             {edge_letter(e, -1), vertex_letter(ed.source, x), edge_letter(e)},
                             {vertex_letter(ed.target, y)}});
    }
  }
  return p;
}

namespace {

Element coset_key(const GroupModel& g, Element x, const SubgroupSpec& h) {
  Element m = x;
  for (Element y : h.elements) m = std::min(m, g.multiply(x, y));
  return m;
}

struct Move {
  std::size_t edge;
  int epsilon;
  std::size_t from, to;
};

std::vector<Move> moves_from(const OrbitGraph& graph, std::size_t v) {
  std::vector<Move> out;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& ed = graph.edges[e];
    if (ed.source == v) out.push_back({e, 1, v, ed.target});
    if (ed.target == v) out.push_back({e, -1, v, ed.source});
  }
  return out;
}

template <class T>
const T& pick(const std::vector<T>& xs, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
  return xs[d(rng)];
}

}  // namespace

ClosedPath closed_path(const BrownPresentation& p, const std::vector<PathStep>& steps) {
  const OrbitGraph& graph = p.graph;
  const GroupModel& g = *graph.model;
  ClosedPath out;
  out.steps = steps;
  std::size_t v = 0;
  Element prod = g.identity();
  for (const auto& st : steps) {
    if (st.edge >= graph.edges.size() || (st.epsilon != 1 && st.epsilon != -1))
      throw std::invalid_argument("closed_path: bad step");
    const auto& ed = graph.edges[st.edge];
    if ((st.epsilon == 1 ? ed.source : ed.target) != v) throw std::invalid_argument("closed_path: step does not start at the current vertex");
    if (!graph.vertices[v].stabilizer.contains(st.h)) throw std::invalid_argument("closed_path: h outside the vertex stabilizer");
    const Element ge = *ed.connector;
    Element a = g.multiply(prod, st.h);
    if (st.epsilon == -1) a = g.multiply(a, g.inverse(ge));
    out.a.push_back(a);
    out.word.push_back(vertex_letter(v, st.h));
    out.word.push_back(edge_letter(st.edge, st.epsilon));
    prod = g.multiply(prod, g.multiply(st.h, st.epsilon == 1 ? ge : g.inverse(ge)));
    v = st.epsilon == 1 ? ed.target : ed.source;
  }
  if (v != 0 || !graph.vertices[0].stabilizer.contains(prod)) throw std::invalid_argument("closed_path: path is not closed");
  out.word.push_back(vertex_letter(0, prod, -1));
  return out;
}

ClosedPath random_closed_path(const BrownPresentation& p, std::mt19937_64& rng, std::size_t walk_steps) {
  const OrbitGraph& graph = p.graph;
  const GroupModel& g = *graph.model;
  auto advance = [&](Element prod, const Move& m, Element h) {
    const Element ge = *graph.edges[m.edge].connector;
    return g.multiply(prod, g.multiply(h, m.epsilon == 1 ? ge : g.inverse(ge)));
  };
  std::vector<PathStep> steps;
  std::size_t v = 0;
  Element prod = g.identity();
  for (std::size_t i = 0; i < walk_steps; ++i) {
    const Move m = pick(moves_from(graph, v), rng);
    const Element h = pick(graph.vertices[v].stabilizer.elements, rng);
    steps.push_back({m.edge, m.epsilon, h});
    prod = advance(prod, m, h);
    v = m.to;
  }
  // breadth-first search over the vertices of the G-graph back to v_0
  struct State {
    std::size_t v;
    Element prod;
    std::optional<std::size_t> parent;
    PathStep step;
  };
  const Element home = coset_key(g, g.identity(), graph.vertices[0].stabilizer);
  std::vector<State> states{{v, prod, std::nullopt, {}}};
  std::set<std::pair<std::size_t, Element>> seen{{v, coset_key(g, prod, graph.vertices[v].stabilizer)}};
  std::optional<std::size_t> goal;
  if (v == 0 && seen.begin()->second == home) goal = 0;
  for (std::size_t i = 0; i < states.size() && !goal; ++i) {
    const State cur = states[i];
    for (const Move& m : moves_from(graph, cur.v)) {
      for (Element h : graph.vertices[cur.v].stabilizer.elements) {
        const Element next = advance(cur.prod, m, h);
        const Element key = coset_key(g, next, graph.vertices[m.to].stabilizer);
        if (!seen.insert({m.to, key}).second) continue;
        states.push_back({m.to, next, i, {m.edge, m.epsilon, h}});
        if (m.to == 0 && key == home) {
          goal = states.size() - 1;
          break;
        }
      }
      if (goal) break;
    }
  }
  if (!goal) throw std::logic_error("random_closed_path: G-graph is not connected");
  std::vector<PathStep> back;
  for (std::size_t i = *goal; states[i].parent; i = *states[i].parent) back.push_back(states[i].step);
  steps.insert(steps.end(), back.rbegin(), back.rend());
  return closed_path(p, steps);
}

Word random_word(const BrownPresentation& p, std::mt19937_64& rng, std::size_t length) {
  const OrbitGraph& graph = p.graph;
  std::uniform_int_distribution<std::size_t> kind(0, graph.edges.size() + graph.vertices.size() - 1);
  std::bernoulli_distribution sign(0.5);
  Word w;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t k = kind(rng);
    if (k < graph.edges.size()) {
      w.push_back(edge_letter(k, sign(rng) ? 1 : -1));
    } else {
      const std::size_t v = k - graph.edges.size();
      w.push_back(vertex_letter(v, pick(graph.vertices[v].stabilizer.elements, rng), sign(rng) ? 1 : -1));
    }
  }
  return w;
}

Word random_kernel_word(const BrownPresentation& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2), len(2, 6);
  auto basic = [&]() {
    if (kind(rng) == 0) return random_closed_path(p, rng, static_cast<std::size_t>(len(rng))).word;
    const Word u = random_word(p, rng, static_cast<std::size_t>(len(rng)));
    return concat(concat(u, pick(p.relations, rng).relator()), inverse(u));
  };
  switch (kind(rng)) {
    case 0: return basic();
    case 1: return concat(basic(), basic());
    default: {
      const Word a = basic(), b = basic();
      return concat(concat(a, b), concat(inverse(a), inverse(b)));
    }
  }
}

// ---------------------------------------------------------------- integer matrices

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Integer& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(l, j) != 0) c(i, j) += x * b(l, j);
    }
  return c;
}

namespace {

class SmithReducer {
 public:
  SmithReducer(const IntMatrix& m, bool transforms) : S(m), track(transforms) {
    if (track) {
      U = P = IntMatrix::identity(m.rows());
      V = Q = IntMatrix::identity(m.cols());
    }
  }

  void run() {
    const std::size_t m = S.rows(), n = S.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      auto pivot = smallest(t, m, t, n);
      if (!pivot) break;
      move_to(t, pivot->first, pivot->second);
      for (;;) {
        clear_column(t);
        clear_row(t);
        auto p = smallest_in_cross(t);
        if (p) {
          move_to(t, p->first, p->second);
          continue;
        }
        if (abs(S(t, t)) == 1) break;
        auto bad = non_multiple(t);
        if (!bad) break;
        add_row(t, *bad, 1);
      }
      if (S(t, t) < 0) negate_row(t);
    }
  }

  IntMatrix S, U, V, P, Q;

 private:
  bool track;

  std::optional<std::pair<std::size_t, std::size_t>> smallest(std::size_t r0, std::size_t r1, std::size_t c0,
                                                              std::size_t c1) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = S(i, j);
        if (x == 0) continue;
        Integer a = abs(x);
        if (!best || a < best_abs) {
          best = {i, j};
          best_abs = a;
          if (a == 1) return best;
        }
      }
    return best;
  }

  // nonzero entries left in row t or column t after division steps
  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_cross(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs = abs(S(t, t));
    for (std::size_t i = t + 1; i < S.rows(); ++i)
      if (S(i, t) != 0 && abs(S(i, t)) < best_abs) {
        best = {i, t};
        best_abs = abs(S(i, t));
      }
    for (std::size_t j = t + 1; j < S.cols(); ++j)
      if (S(t, j) != 0 && abs(S(t, j)) < best_abs) {
        best = {t, j};
        best_abs = abs(S(t, j));
      }
    return best;
  }

  std::optional<std::size_t> non_multiple(std::size_t t) const {
    const Integer& p = S(t, t);
    for (std::size_t i = t + 1; i < S.rows(); ++i)
      for (std::size_t j = t + 1; j < S.cols(); ++j)
        if (S(i, j) != 0 && S(i, j) % p != 0) return i;
    return std::nullopt;
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) swap_rows(t, i);
    if (j != t) swap_cols(t, j);
  }

  void clear_column(std::size_t t) {
    for (std::size_t i = t + 1; i < S.rows(); ++i) {
      if (S(i, t) == 0) continue;
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
      if (c != 0) add_row(i, t, -c);
    }
  }

  void clear_row(std::size_t t) {
    for (std::size_t j = t + 1; j < S.cols(); ++j) {
      if (S(t, j) == 0) continue;
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
      if (c != 0) add_col(j, t, -c);
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S(i, c), S(j, c));
    if (!track) return;
    for (std::size_t c = 0; c < P.cols(); ++c) std::swap(P(i, c), P(j, c));
    for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S(r, i), S(r, j));
    if (!track) return;
    for (std::size_t r = 0; r < Q.rows(); ++r) std::swap(Q(r, i), Q(r, j));
    for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
  }

  // row i += c row j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < S.cols(); ++k)
      if (S(j, k) != 0) S(i, k) += c * S(j, k);
    if (!track) return;
    for (std::size_t k = 0; k < P.cols(); ++k)
      if (P(j, k) != 0) P(i, k) += c * P(j, k);
    for (std::size_t r = 0; r < U.rows(); ++r)
      if (U(r, i) != 0) U(r, j) -= c * U(r, i);
  }

  // col i += c col j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t r = 0; r < S.rows(); ++r)
      if (S(r, j) != 0) S(r, i) += c * S(r, j);
    if (!track) return;
    for (std::size_t r = 0; r < Q.rows(); ++r)
      if (Q(r, j) != 0) Q(r, i) += c * Q(r, j);
    for (std::size_t k = 0; k < V.cols(); ++k)
      if (V(i, k) != 0) V(j, k) -= c * V(i, k);
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < S.cols(); ++k) S(i, k) = -S(i, k);
    if (!track) return;
    for (std::size_t k = 0; k < P.cols(); ++k) P(i, k) = -P(i, k);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, bool transforms) {
  SmithReducer red(m, transforms);
  red.run();
  SmithForm out;
  out.S = std::move(red.S);
  out.U = std::move(red.U);
  out.V = std::move(red.V);
  out.P = std::move(red.P);
  out.Q = std::move(red.Q);
  for (std::size_t t = 0; t < std::min(out.S.rows(), out.S.cols()) && out.S(t, t) != 0; ++t)
    out.invariants.push_back(out.S(t, t));
  return out;
}

// ---------------------------------------------------------------- chain complexes

IntChainComplex::IntChainComplex(IntMatrix d1, IntMatrix d2) : d1_(std::move(d1)), d2_(std::move(d2)) {
  if (d1_.cols() != d2_.rows()) throw NotAChainComplex("chain complex: d1 and d2 have incompatible shapes");
  if (!(d1_ * d2_).is_zero()) throw NotAChainComplex("chain complex: d1 d2 != 0");
}

Homology homology(const IntChainComplex& c) {
  const auto n = c.ranks();
  const auto s1 = smith_normal_form(c.d1(), false);
  const auto s2 = smith_normal_form(c.d2(), false);
  Homology h;
  h.betti[0] = n[0] - s1.rank();
  h.betti[1] = n[1] - s1.rank() - s2.rank();
  h.betti[2] = n[2] - s2.rank();
  for (const auto& x : s1.invariants)
    if (x > 1) h.torsion[0].push_back(x);
  for (const auto& x : s2.invariants)
    if (x > 1) h.torsion[1].push_back(x);
  return h;
}

IntChainComplex equivariant_graph_chains(const OrbitGraph& graph) {
  if (!graph.model) throw std::invalid_argument("equivariant_graph_chains: needs an enumerated model");
  const GroupModel& g = *graph.model;
  const std::size_t n = g.size();
  // cell id of the coset x H within one orbit
  auto coset_ids = [&](const SubgroupSpec& h, std::size_t& count) {
    std::vector<std::size_t> key(n), id(n);
    for (Element x = 0; x < n; ++x) {
      Element m = x;
      for (Element y : h.elements) m = std::min(m, g.multiply(x, y));
      key[x] = m;
    }
    std::map<Element, std::size_t> seen;
    for (Element x = 0; x < n; ++x) {
      auto [it, fresh] = seen.emplace(key[x], count);
      if (fresh) ++count;
      id[x] = it->second;
    }
    return id;
  };
  std::size_t nv = 0, ne = 0;
  std::vector<std::vector<std::size_t>> vid, eid;
  for (const auto& v : graph.vertices) vid.push_back(coset_ids(v.stabilizer, nv));
  for (const auto& e : graph.edges) eid.push_back(coset_ids(e.stabilizer, ne));
  IntMatrix d1(nv, ne);
  std::vector<bool> done(ne, false);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& ed = graph.edges[e];
    for (Element x = 0; x < n; ++x) {
      const std::size_t cell = eid[e][x];
      if (done[cell]) continue;
      done[cell] = true;
      d1(vid[ed.target][g.multiply(x, *ed.connector)], cell) += 1;
      d1(vid[ed.source][x], cell) -= 1;
    }
  }
  return IntChainComplex(std::move(d1), IntMatrix(ne, 0));
}

// ---------------------------------------------------------------- group ring

GroupRingElement GroupRingElement::one(const FiniteGroup& g) { return of(g, g.identity()); }

GroupRingElement GroupRingElement::of(const FiniteGroup& g, Element x, const Integer& c) {
  GroupRingElement r(g);
  r.add(x, c);
  return r;
}

GroupRingElement GroupRingElement::norm(const FiniteGroup& g, const std::vector<Element>& h) {
  GroupRingElement r(g);
  for (Element x : h) r.add(x, 1);
  return r;
}

Integer GroupRingElement::coefficient(Element x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? Integer(0) : it->second;
}

void GroupRingElement::add(Element x, const Integer& c) {
  if (x >= group_->size()) throw std::out_of_range("group ring: element out of range");
  if (c == 0) return;
  auto& v = terms_[x];
  v += c;
  if (v == 0) terms_.erase(x);
}

GroupRingElement GroupRingElement::bar() const {
  GroupRingElement r(*group_);
  for (const auto& [x, c] : terms_) r.add(group_->inverse(x), c);
  return r;
}

Integer GroupRingElement::augmentation() const {
  Integer s = 0;
  for (const auto& [x, c] : terms_) s += c;
  return s;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [x, c] : o.terms_) add(x, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  for (const auto& [x, c] : o.terms_) add(x, -c);
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.group_ != b.group_) throw std::invalid_argument("group ring: elements of different groups");
  GroupRingElement r(*a.group_);
  for (const auto& [x, c] : a.terms_)
    for (const auto& [y, d] : b.terms_) r.add(a.group_->multiply(x, y), c * d);
  return r;
}

GroupRingElement operator*(const Integer& c, GroupRingElement a) {
  GroupRingElement r(*a.group_);
  for (const auto& [x, d] : a.terms_) r.add(x, c * d);
  return r;
}

std::optional<std::vector<GroupRingElement>> solve_group_ring(const FiniteGroup& g,
                                                              const std::vector<GroupRingTarget>& targets,
                                                              std::optional<GroupRingElement> rhs) {
  const std::size_t n = g.size();
  const GroupRingElement b = rhs.value_or(GroupRingElement::one(g));
  // unknowns: one coefficient per right coset H c, since N(H) h c = N(H) c
  struct Column {
    std::size_t target;
    Element rep;
  };
  std::vector<Column> cols;
  std::vector<GroupRingElement> norms;
  for (std::size_t e = 0; e < targets.size(); ++e) {
    const auto& t = targets[e];
    if (&t.s.group() != &g) throw std::invalid_argument("solve_group_ring: coefficient from another group");
    std::vector<bool> covered(n, false);
    for (Element c = 0; c < n; ++c) {
      if (covered[c]) continue;
      for (Element h : t.subgroup) covered[g.multiply(h, c)] = true;
      cols.push_back({e, c});
    }
    norms.push_back(t.s * GroupRingElement::norm(g, t.subgroup));
  }
  if (n * cols.size() > kMaxGroupRingEntries)
    throw SizeBoundExceeded("solve_group_ring: " + std::to_string(n * cols.size()) + " matrix entries");

  IntMatrix a(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto col = norms[cols[j].target] * GroupRingElement::of(g, cols[j].rep);
    for (const auto& [x, c] : col.terms()) a(x, j) = c;
  }
  const SmithForm snf = smith_normal_form(a);
  // S z = P b, y = Q z
  std::vector<Integer> pb(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [x, c] : b.terms()) pb[i] += snf.P(i, x) * c;
  std::vector<Integer> z(cols.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < snf.rank()) {
      if (pb[i] % snf.invariants[i] != 0) return std::nullopt;
      z[i] = pb[i] / snf.invariants[i];
    } else if (pb[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<GroupRingElement> xs(targets.size(), GroupRingElement(g));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Integer y = 0;
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (z[l] != 0) y += snf.Q(j, l) * z[l];
    xs[cols[j].target].add(cols[j].rep, y);
  }
  GroupRingElement check(g);
  for (std::size_t e = 0; e < targets.size(); ++e) check += norms[e] * xs[e];
  if (!(check == b)) throw std::logic_error("solve_group_ring: solution failed verification");
  return xs;
}

}  // namespace osm
