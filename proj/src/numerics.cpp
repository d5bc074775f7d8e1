#include "osm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace osm {

namespace {

using cd = std::complex<double>;

cd root_of_unity(std::uint64_t n, std::uint64_t k) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

std::vector<cd> class_values(const Character& chi) {
  std::vector<cd> out;
  for (const auto& v : chi.values) out.push_back(v.to_complex());
  return out;
}

std::vector<Element> all_elements(const FiniteGroup& g) {
  std::vector<Element> out(g.size());
  for (Element x = 0; x < g.size(); ++x) out[x] = x;
  return out;
}

// orthonormal eigenvectors of a Hermitian matrix with eigenvalue above the threshold
CMatrix range_of_projector(const CMatrix& p, double threshold = 0.5) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((p + p.adjoint()) / 2.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > threshold) keep.push_back(i);
  CMatrix b(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return b;
}

// module induced from mu_lambda of <c>: g e_i = zeta^(lambda k) e_perm(i)
struct MonomialRep {
  std::size_t dim = 0;
  std::vector<std::vector<std::uint32_t>> perm;
  std::vector<std::vector<cd>> phase;
};

MonomialRep induced_monomial(const GroupModel& g, Element c, std::size_t lambda) {
  const std::size_t n = g.size();
  const auto cyc = g.closure({c});
  const std::uint64_t order = cyc.size();
  std::vector<std::int64_t> power(n, -1);
  Element x = g.identity();
  for (std::uint64_t k = 0; k < order; ++k) {
    power[x] = static_cast<std::int64_t>(k);
    x = g.multiply(x, c);
  }
  std::vector<std::int64_t> coset(n, -1);
  std::vector<Element> reps;
  for (Element y = 0; y < n; ++y) {
    if (coset[y] >= 0) continue;
    for (Element z : cyc) coset[g.multiply(y, z)] = static_cast<std::int64_t>(reps.size());
    reps.push_back(y);
  }
  MonomialRep m;
  m.dim = reps.size();
  m.perm.assign(n, std::vector<std::uint32_t>(m.dim));
  m.phase.assign(n, std::vector<cd>(m.dim));
  for (Element h = 0; h < n; ++h)
    for (std::size_t i = 0; i < m.dim; ++i) {
      const Element y = g.multiply(h, reps[i]);
      const auto j = static_cast<std::size_t>(coset[y]);
      const std::int64_t k = power[g.multiply(g.inverse(reps[j]), y)];
      if (k < 0) throw std::logic_error("induced_monomial: coset bookkeeping failed");
      m.perm[h][i] = static_cast<std::uint32_t>(j);
      m.phase[h][i] = root_of_unity(order, lambda * static_cast<std::uint64_t>(k));
    }
  return m;
}

}  // namespace

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double homomorphism_defect(const UnitaryRep& r, std::mt19937_64& rng, std::size_t samples) {
  const auto& g = *r.group;
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.size() - 1));
  double worst = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Element a = pick(rng), b = pick(rng);
    worst = std::max(worst, max_abs(r(a) * r(b) - r(g.multiply(a, b))));
  }
  return worst;
}

double unitarity_defect(const UnitaryRep& r) {
  double worst = 0;
  for (const auto& m : r.matrices)
    worst = std::max(worst, max_abs(m * m.adjoint() - CMatrix::Identity(m.rows(), m.cols())));
  return worst;
}

double character_defect(const UnitaryRep& r, const GroupModel& g, const Character& chi) {
  const auto vals = class_values(chi);
  double worst = 0;
  for (Element x = 0; x < g.size(); ++x) worst = std::max(worst, std::abs(r(x).trace() - vals[g.class_of(x)]));
  return worst;
}

Realization realize_irreducible(const GroupPtr& model, const Character& target, std::uint64_t seed,
                                const Tolerances& tol) {
  if (!model || !model->enumerated()) throw std::invalid_argument("realize_irreducible: needs an enumerated model");
  const GroupModel& g = *model;
  const std::size_t m = target.degree().get_ui();
  std::mt19937_64 rng(seed);

  // largest cyclic subgroup carrying a constituent, decided exactly
  std::vector<std::optional<Element>> first(g.classes().size());
  for (Element x = 0; x < g.size(); ++x)
    if (!first[g.class_of(x)]) first[g.class_of(x)] = x;
  std::vector<std::size_t> order(g.classes().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.classes()[a].element_order > g.classes()[b].element_order;
  });
  Realization out;
  bool found = false;
  for (std::size_t cls : order) {
    const Element c = *first[cls];
    const auto fusion = fusion_table(g, subgroup_from_generators(g, SubgroupSpec::Kind::Cyclic, {c}));
    const auto sub = subgroup_table(fusion);
    for (std::size_t j = 0; j < sub->irreducibles().size(); ++j) {
      Integer mult = multiplicity_check(target, g, fusion, sub->get("mu_" + std::to_string(j)));
      if (mult > 0) {
        out.cyclic_generator = c;
        out.lambda = j;
        out.multiplicity = mult;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) throw ProjectionRankMismatch("realize_irreducible: no cyclic subgroup carries the target");

  const MonomialRep ind = induced_monomial(g, out.cyclic_generator, out.lambda);
  const std::size_t d = ind.dim;
  out.module_dim = d;
  const auto vals = class_values(target);
  CMatrix proj = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double scale = static_cast<double>(m) / static_cast<double>(g.size());
  for (Element x = 0; x < g.size(); ++x) {
    const cd coef = scale * std::conj(vals[g.class_of(x)]);
    for (std::size_t i = 0; i < d; ++i) proj(ind.perm[x][i], static_cast<Eigen::Index>(i)) += coef * ind.phase[x][i];
  }
  const CMatrix basis = range_of_projector(proj);
  const std::size_t r = static_cast<std::size_t>(basis.cols());
  if (Integer(static_cast<unsigned long>(r)) != out.multiplicity * static_cast<unsigned long>(m))
    throw ProjectionRankMismatch("realize_irreducible: projector rank " + std::to_string(r) + ", expected " +
                                 Integer(out.multiplicity * static_cast<unsigned long>(m)).get_str());

  // B* M(s) B on generators, then products along a BFS of the Cayley graph
  const auto gens = transvection_generators(g);
  std::vector<CMatrix> gen_mats;
  for (Element s : gens) {
    CMatrix mb(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < d; ++i) mb.row(ind.perm[s][i]) = ind.phase[s][i] * basis.row(static_cast<Eigen::Index>(i));
    gen_mats.push_back(basis.adjoint() * mb);
  }
  std::vector<CMatrix> iso(g.size());
  std::vector<bool> seen(g.size(), false);
  std::vector<Element> frontier{g.identity()};
  iso[g.identity()] = CMatrix::Identity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  seen[g.identity()] = true;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const Element x = frontier[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Element y = g.multiply(x, gens[i]);
      if (seen[y]) continue;
      seen[y] = true;
      iso[y] = iso[x] * gen_mats[i];
      frontier.push_back(y);
    }
  }
  if (frontier.size() != g.size()) throw std::logic_error("realize_irreducible: generators do not span the group");

  CMatrix pick = CMatrix::Identity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
  if (r > m) {
    bool split = false;
    for (int attempt = 0; attempt < 8 && !split; ++attempt) {
      const CMatrix h = random_hermitian(r, rng);
      CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      for (const auto& y : iso) a += y * h * y.adjoint();
      a /= static_cast<double>(g.size());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
      const auto& ev = es.eigenvalues();
      const double spread = ev(static_cast<Eigen::Index>(m) - 1) - ev(0);
      const double gap = ev(static_cast<Eigen::Index>(m)) - ev(static_cast<Eigen::Index>(m) - 1);
      const double size = std::max(1.0, ev.cwiseAbs().maxCoeff());
      if (spread <= 1e-8 * size && gap >= 1e-4 * size) {
        pick = es.eigenvectors().leftCols(static_cast<Eigen::Index>(m));
        split = true;
      }
    }
    if (!split) throw SingularAveraging("realize_irreducible: could not split the isotypic component");
  }

  out.rep.group = model;
  out.rep.matrices.resize(g.size());
  for (Element x = 0; x < g.size(); ++x) out.rep.matrices[x] = pick.adjoint() * iso[x] * pick;

  out.hom_defect = homomorphism_defect(out.rep, rng);
  out.unitarity = unitarity_defect(out.rep);
  out.character = character_defect(out.rep, g, target);
  if (out.hom_defect > tol.hom || out.unitarity > tol.hom || out.character > tol.character)
    throw ToleranceExceeded("realize_irreducible: defects " + std::to_string(out.hom_defect) + ", " +
                            std::to_string(out.unitarity) + ", " + std::to_string(out.character));
  return out;
}

UnitaryRep unitarize(const UnitaryRep& r) {
  const auto n = static_cast<Eigen::Index>(r.degree());
  CMatrix h = CMatrix::Zero(n, n);
  for (const auto& m : r.matrices) h += m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CMatrix s = es.operatorSqrt(), si = es.operatorInverseSqrt();
  UnitaryRep out{r.group, {}};
  for (const auto& m : r.matrices) out.matrices.push_back(s * m * si);
  return out;
}

UnitaryRep conjugate_rep(const UnitaryRep& r, const CMatrix& a) {
  const CMatrix ai = a.inverse();
  UnitaryRep out{r.group, {}};
  for (const auto& m : r.matrices) out.matrices.push_back(a * m * ai);
  return out;
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  if (a.group != b.group) throw std::invalid_argument("direct_sum: different groups");
  const auto p = static_cast<Eigen::Index>(a.degree()), q = static_cast<Eigen::Index>(b.degree());
  UnitaryRep out{a.group, {}};
  for (std::size_t i = 0; i < a.matrices.size(); ++i) {
    CMatrix m = CMatrix::Zero(p + q, p + q);
    m.topLeftCorner(p, p) = a.matrices[i];
    m.bottomRightCorner(q, q) = b.matrices[i];
    out.matrices.push_back(std::move(m));
  }
  return out;
}

CMatrix random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  const auto k = static_cast<Eigen::Index>(n);
  CMatrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = cd(d(rng), d(rng));
  return m;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMatrix x = random_complex(n, rng);
  return (x + x.adjoint()) / 2.0;
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) { return exp_i_hermitian(random_hermitian(n, rng)); }

CMatrix exp_i_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(cd(0.0, es.eigenvalues()(i)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix average(const UnitaryRep& r, const std::vector<Element>& h, const CMatrix& x) {
  CMatrix s = CMatrix::Zero(x.rows(), x.cols());
  for (Element e : h) s += r(e) * x * r(e).adjoint();
  return s / static_cast<double>(h.size());
}

CMatrix intertwiner(const UnitaryRep& r1, const UnitaryRep& r2, std::uint64_t seed, const std::vector<Element>& over,
                    const Tolerances& tol) {
  if (r1.degree() != r2.degree()) throw NotIsomorphic("intertwiner: degrees differ");
  const std::vector<Element> h = over.empty() ? all_elements(*r1.group) : over;
  for (Element e : h)
    if (std::abs(r1(e).trace() - r2(e).trace()) > tol.character) throw NotIsomorphic("intertwiner: characters differ");
  std::mt19937_64 rng(seed);
  const std::size_t n = r1.degree();
  for (int attempt = 0; attempt < 8; ++attempt) {
    const CMatrix x = random_complex(n, rng);
    CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Element e : h) t += r2(e) * x * r1(e).adjoint();
    t /= static_cast<double>(h.size());
    Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-8 * std::max(1.0, sv(0))) continue;
    const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    double worst = 0;
    for (Element e : h) worst = std::max(worst, max_abs(u * r1(e) * u.adjoint() - r2(e)));
    if (worst > 10 * tol.hom) throw ToleranceExceeded("intertwiner: residual " + std::to_string(worst));
    return u;
  }
  throw SingularAveraging("intertwiner: averaged operator singular after 8 attempts");
}

std::size_t commutant_dim(const UnitaryRep& r, const std::vector<Element>& h, const Tolerances& tol) {
  const auto m = static_cast<Eigen::Index>(r.degree());
  // vec(A X B) = (B^T kron A) vec(X) with B = A^-1 = A*
  CMatrix k = CMatrix::Zero(m * m, m * m);
  for (Element e : h) {
    const CMatrix& a = r(e);
    const CMatrix bt = a.conjugate();
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q) {
        const cd c = bt(p, q);
        if (std::abs(c) < 1e-15) continue;
        k.block(p * m, q * m, m, m) += c * a;
      }
  }
  k /= static_cast<double>(h.size());
  // the average over a group is an orthogonal projection
  Eigen::SelfAdjointEigenSolver<CMatrix> es((k + k.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > tol.rank) ++rank;
  return rank;
}

SpectralSplit spectral_split(const UnitaryRep& r, Element g, const Tolerances& tol) {
  SpectralSplit out;
  out.order = r.group->element_order(g);
  const auto m = static_cast<Eigen::Index>(r.degree());
  std::vector<CMatrix> powers{CMatrix::Identity(m, m)};
  for (std::uint64_t k = 1; k < out.order; ++k) powers.push_back(powers.back() * r(g));
  CMatrix v(m, 0);
  std::vector<cd> diag;
  for (std::uint64_t j = 0; j < out.order; ++j) {
    CMatrix p = CMatrix::Zero(m, m);
    for (std::uint64_t k = 0; k < out.order; ++k) p += root_of_unity(out.order, (out.order - j) * k) * powers[k];
    p /= static_cast<double>(out.order);
    const double tr = p.trace().real();
    const auto mult = static_cast<std::size_t>(std::llround(tr));
    if (std::abs(tr - static_cast<double>(mult)) > tol.character)
      throw ToleranceExceeded("spectral_split: projector trace is not an integer");
    if (mult == 0) continue;
    const CMatrix b = range_of_projector(p);
    if (static_cast<std::size_t>(b.cols()) != mult) throw ToleranceExceeded("spectral_split: eigenspace rank mismatch");
    out.multiplicities[j] = mult;
    CMatrix nv(m, v.cols() + b.cols());
    nv << v, b;
    v = nv;
    for (std::size_t i = 0; i < mult; ++i) diag.push_back(root_of_unity(out.order, j));
  }
  if (v.cols() != m) throw ToleranceExceeded("spectral_split: eigenspaces do not fill the space");
  out.a = v.adjoint();
  Eigen::VectorXcd d(m);
  for (Eigen::Index i = 0; i < m; ++i) d(i) = diag[static_cast<std::size_t>(i)];
  out.residual = std::max(max_abs(out.a * r(g) * out.a.adjoint() - CMatrix(d.asDiagonal())),
                          max_abs(out.a * out.a.adjoint() - CMatrix::Identity(m, m)));
  if (out.residual > tol.character) throw ToleranceExceeded("spectral_split: residual " + std::to_string(out.residual));
  return out;
}

// ---------------------------------------------------------------- moduli points

namespace {

CMatrix random_commuting_hermitian(const UnitaryRep& rho, const SubgroupSpec& s, std::mt19937_64& rng) {
  return average(rho, s.elements, random_hermitian(rho.degree(), rng));
}

double commutation_defect(const UnitaryRep& rho, const SubgroupSpec& s, const CMatrix& x) {
  double worst = 0;
  for (Element e : s.elements) worst = std::max(worst, max_abs(x * rho(e) - rho(e) * x));
  return worst;
}

}  // namespace

ModuliPoint identity_point(const BrownPresentation& p, std::size_t m) {
  const auto k = static_cast<Eigen::Index>(m);
  return ModuliPoint{std::vector<CMatrix>(p.graph.edges.size(), CMatrix::Identity(k, k))};
}

HPoint identity_h_point(const BrownPresentation& p, std::size_t m) {
  const auto k = static_cast<Eigen::Index>(m);
  return HPoint{std::vector<CMatrix>(p.graph.vertices.size(), CMatrix::Identity(k, k))};
}

ModuliPoint random_moduli_point(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng) {
  ModuliPoint t;
  for (const auto& e : p.graph.edges) t.tau.push_back(exp_i_hermitian(random_commuting_hermitian(rho, e.stabilizer, rng)));
  return t;
}

HPoint random_h_point(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng) {
  HPoint a = identity_h_point(p, rho.degree());
  for (std::size_t v = 1; v < p.graph.vertices.size(); ++v)
    a.alpha[v] = exp_i_hermitian(random_commuting_hermitian(rho, p.graph.vertices[v].stabilizer, rng));
  return a;
}

double membership_defect(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau) {
  double worst = 0;
  for (std::size_t e = 0; e < p.graph.edges.size(); ++e)
    worst = std::max(worst, commutation_defect(rho, p.graph.edges[e].stabilizer, tau.tau[e]));
  return worst;
}

double membership_defect(const BrownPresentation& p, const UnitaryRep& rho, const HPoint& alpha) {
  const auto m = static_cast<Eigen::Index>(rho.degree());
  double worst = max_abs(alpha.alpha[0] - CMatrix::Identity(m, m));
  for (std::size_t v = 0; v < p.graph.vertices.size(); ++v)
    worst = std::max(worst, commutation_defect(rho, p.graph.vertices[v].stabilizer, alpha.alpha[v]));
  return worst;
}

std::vector<CMatrix> vertex_values(const BrownPresentation& p, const ModuliPoint& tau) {
  if (tau.tau.size() != p.graph.edges.size()) throw std::invalid_argument("vertex_values: wrong number of edges");
  const auto m = tau.tau.empty() ? 0 : tau.tau[0].rows();
  std::vector<CMatrix> out;
  for (std::size_t v = 0; v < p.graph.vertices.size(); ++v) {
    CMatrix t = CMatrix::Identity(m, m);
    for (std::size_t e : p.graph.tree_path(v)) t = tau.tau[e] * t;
    out.push_back(std::move(t));
  }
  return out;
}

CMatrix rho_tau_eval(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau, const Word& w) {
  if (!p.well_formed(w)) throw std::invalid_argument("rho_tau_eval: word uses unknown symbols");
  const auto tv = vertex_values(p, tau);
  const auto m = static_cast<Eigen::Index>(rho.degree());
  CMatrix out = CMatrix::Identity(m, m);
  for (const auto& l : w) {
    CMatrix x;
    if (l.kind == Letter::Kind::Vertex) {
      x = tv[l.index].adjoint() * rho(l.g) * tv[l.index];
    } else {
      const auto& e = p.graph.edges[l.index];
      x = tv[e.source].adjoint() * tau.tau[l.index].adjoint() * rho(*e.connector) * tv[e.target];
    }
    out = out * (l.exponent < 0 ? CMatrix(x.adjoint()) : x);
  }
  return out;
}

ModuliPoint h_action(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau, const HPoint& alpha,
                     const Tolerances& tol) {
  if (alpha.alpha.size() != p.graph.vertices.size()) throw std::invalid_argument("h_action: wrong number of vertices");
  if (membership_defect(p, rho, alpha) > tol.hom) throw std::invalid_argument("h_action: alpha is not in H");
  ModuliPoint out;
  for (std::size_t e = 0; e < p.graph.edges.size(); ++e) {
    const auto& ed = p.graph.edges[e];
    const CMatrix& ge = rho(*ed.connector);
    out.tau.push_back(ge * alpha.alpha[ed.target].adjoint() * ge.adjoint() * tau.tau[e] * alpha.alpha[ed.source]);
  }
  return out;
}

HPoint multiply(const HPoint& a, const HPoint& b) {
  HPoint out;
  for (std::size_t v = 0; v < a.alpha.size(); ++v) out.alpha.push_back(a.alpha[v] * b.alpha[v]);
  return out;
}

HPoint h_between(const BrownPresentation& p, const ModuliPoint& tau, const ModuliPoint& tau2) {
  const auto a = vertex_values(p, tau), b = vertex_values(p, tau2);
  HPoint out;
  for (std::size_t v = 0; v < a.size(); ++v) out.alpha.push_back(a[v] * b[v].adjoint());
  return out;
}

std::vector<CMatrix> tangent_directions(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng) {
  std::vector<CMatrix> out;
  for (const auto& e : p.graph.edges) out.push_back(random_commuting_hermitian(rho, e.stabilizer, rng));
  return out;
}

std::vector<CMatrix> formula_jacobian(const BrownPresentation& p, const UnitaryRep& rho, const ClosedPath& path,
                                      const std::vector<CMatrix>& directions) {
  const auto m = static_cast<Eigen::Index>(rho.degree());
  std::vector<CMatrix> out(p.graph.edges.size(), CMatrix::Zero(m, m));
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const std::size_t e = path.steps[i].edge;
    const CMatrix& a = rho(path.a[i]);
    out[e] -= static_cast<double>(path.steps[i].epsilon) * (a * (cd(0.0, 1.0) * directions[e]) * a.adjoint());
  }
  return out;
}

std::vector<CMatrix> fd_jacobian(const BrownPresentation& p, const UnitaryRep& rho, const Word& w,
                                 const std::vector<CMatrix>& directions, double step) {
  const std::size_t m = rho.degree();
  std::vector<CMatrix> out;
  for (std::size_t e = 0; e < p.graph.edges.size(); ++e) {
    ModuliPoint plus = identity_point(p, m), minus = identity_point(p, m);
    plus.tau[e] = exp_i_hermitian(step * directions[e]);
    minus.tau[e] = exp_i_hermitian(-step * directions[e]);
    out.push_back((rho_tau_eval(p, rho, plus, w) - rho_tau_eval(p, rho, minus, w)) / (2 * step));
  }
  return out;
}

DifferentialCheck word_differential_check(const BrownPresentation& p, const UnitaryRep& rho, const ClosedPath& path,
                                          std::mt19937_64& rng, double step, const Tolerances& tol) {
  if (p.phi(path.word) != p.graph.model->identity()) throw WordNotInKernel("word_differential_check: phi(w) != 1");
  const auto dirs = tangent_directions(p, rho, rng);
  DifferentialCheck out;
  out.formula = formula_jacobian(p, rho, path, dirs);
  out.finite_difference = fd_jacobian(p, rho, path.word, dirs, step);
  for (std::size_t e = 0; e < dirs.size(); ++e) {
    out.max_error = std::max(out.max_error, max_abs(out.formula[e] - out.finite_difference[e]));
    out.formula_norm = std::max(out.formula_norm, max_abs(out.formula[e]));
  }
  out.pass = out.max_error <= tol.jacobian * (1.0 + out.formula_norm);
  return out;
}

}  // namespace osm
