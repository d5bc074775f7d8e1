#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "osm/chars.hpp"
#include "osm/oscomplex.hpp"

namespace osm {

using CMatrix = Eigen::MatrixXcd;

struct ProjectionRankMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ToleranceExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularAveraging : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotIsomorphic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WordNotInKernel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Tolerances {
  double hom = 1e-8;
  double character = 1e-6;
  double jacobian = 1e-6;
  double rank = 1e-6;
  double action = 1e-7;
};

// g -> matrix for every element of the group
struct UnitaryRep {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<CMatrix> matrices;

  std::size_t degree() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices[0].rows()); }
  const CMatrix& operator()(Element g) const { return matrices[g]; }
};

// max |rho(g) rho(h) - rho(gh)| over sampled pairs
double homomorphism_defect(const UnitaryRep& r, std::mt19937_64& rng, std::size_t samples = 2000);
// max |rho(g) rho(g)* - I|
double unitarity_defect(const UnitaryRep& r);
// max |tr rho(g) - chi(g)|
double character_defect(const UnitaryRep& r, const GroupModel& g, const Character& chi);

struct Realization {
  UnitaryRep rep;
  Element cyclic_generator = 0;  // the induced module comes from <c>
  std::size_t lambda = 0;        // mu_lambda of <c>
  std::size_t module_dim = 0;
  Integer multiplicity;
  double hom_defect = 0, unitarity = 0, character = 0;
};

// Isotypic projection inside a module induced from a linear character of a cyclic subgroup.
Realization realize_irreducible(const GroupPtr& model, const Character& target, std::uint64_t seed,
                                const Tolerances& tol = {});

// r' with r'(g) = H^(1/2) r(g) H^(-1/2), H = sum r(g)* r(g)
UnitaryRep unitarize(const UnitaryRep& r);
UnitaryRep conjugate_rep(const UnitaryRep& r, const CMatrix& a);  // a r(g) a^-1
UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);

// U with U r1(h) U* = r2(h) for h in `over` (all elements when empty)
CMatrix intertwiner(const UnitaryRep& r1, const UnitaryRep& r2, std::uint64_t seed, const std::vector<Element>& over = {},
                    const Tolerances& tol = {});

// dimension of { X : r(h) X = X r(h), h in H } from the rank of the averaging projection
std::size_t commutant_dim(const UnitaryRep& r, const std::vector<Element>& h, const Tolerances& tol = {});
// average of r(h) x r(h)^-1 over h
CMatrix average(const UnitaryRep& r, const std::vector<Element>& h, const CMatrix& x);
CMatrix random_complex(std::size_t n, std::mt19937_64& rng);
CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);
// exp(i h) for Hermitian h
CMatrix exp_i_hermitian(const CMatrix& h);

struct SpectralSplit {
  std::uint64_t order = 1;
  CMatrix a;  // a r(g) a^-1 is diagonal, eigenvalues grouped by exponent
  std::map<std::uint64_t, std::size_t> multiplicities;  // exponent j of zeta_order^j -> multiplicity
  double residual = 0;
};
SpectralSplit spectral_split(const UnitaryRep& r, Element g, const Tolerances& tol = {});

// ---------------------------------------------------------------- moduli points

struct ModuliPoint {
  std::vector<CMatrix> tau;  // one per edge orbit
};
struct HPoint {
  std::vector<CMatrix> alpha;  // one per vertex orbit, alpha[0] = I
};

ModuliPoint identity_point(const BrownPresentation& p, std::size_t m);
// exp(i H) with H Hermitian in the commutant of rho(G_e)
ModuliPoint random_moduli_point(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng);
HPoint random_h_point(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng);
HPoint identity_h_point(const BrownPresentation& p, std::size_t m);
double membership_defect(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau);
double membership_defect(const BrownPresentation& p, const UnitaryRep& rho, const HPoint& alpha);

// tau_v along the tree path from v_0
std::vector<CMatrix> vertex_values(const BrownPresentation& p, const ModuliPoint& tau);
CMatrix rho_tau_eval(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau, const Word& w);
// (tau alpha)_e = rho(g_e) alpha_w^-1 rho(g_e)^-1 tau_e alpha_s; alpha must lie in H
ModuliPoint h_action(const BrownPresentation& p, const UnitaryRep& rho, const ModuliPoint& tau, const HPoint& alpha,
                     const Tolerances& tol = {});
HPoint multiply(const HPoint& a, const HPoint& b);
// alpha_v = tau_v tau'_v^-1, the element carrying tau to tau' when they share an orbit
HPoint h_between(const BrownPresentation& p, const ModuliPoint& tau, const ModuliPoint& tau2);

struct DifferentialCheck {
  std::vector<CMatrix> formula;  // one column per tangent direction
  std::vector<CMatrix> finite_difference;
  double max_error = 0;
  double formula_norm = 0;
  bool pass = false;
};

// one Hermitian H_e per edge commuting with rho(G_e); the tangent direction is xi_e = i H_e
std::vector<CMatrix> tangent_directions(const BrownPresentation& p, const UnitaryRep& rho, std::mt19937_64& rng);
// -sum_{i: e_i = e} eps_i rho(a_i) xi_e rho(a_i)^-1 for each edge e
std::vector<CMatrix> formula_jacobian(const BrownPresentation& p, const UnitaryRep& rho, const ClosedPath& path,
                                      const std::vector<CMatrix>& directions);
// central differences of W along tau_e(t) = exp(t xi_e)
std::vector<CMatrix> fd_jacobian(const BrownPresentation& p, const UnitaryRep& rho, const Word& w,
                                 const std::vector<CMatrix>& directions, double step = 1e-5);
DifferentialCheck word_differential_check(const BrownPresentation& p, const UnitaryRep& rho, const ClosedPath& path,
                                          std::mt19937_64& rng, double step = 1e-5, const Tolerances& tol = {});

double max_abs(const CMatrix& m);

}  // namespace osm
