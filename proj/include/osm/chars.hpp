#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "osm/cyclo.hpp"
#include "osm/groups.hpp"

namespace osm {

struct NonIntegralDimension : std::domain_error {
  using std::domain_error::domain_error;
};

// Class function; values[i] belongs to class i of the owning table.
struct Character {
  std::string name;
  std::vector<Cyclotomic> values;
  std::vector<RootSum> raw;  // same values, unreduced

  Character() = default;
  Character(std::string name, std::vector<RootSum> raw);
  Integer degree() const;
};

class CharacterTable {
 public:
  CharacterTable(GroupPtr group, std::vector<Character> irreducibles);

  const GroupModel& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<Character>& irreducibles() const { return irr_; }
  const Character& get(const std::string& name) const;
  std::size_t class_count() const { return group_->classes().size(); }

  // (1/|G|) sum |(x)| a(x) conj(b(x))
  Rational inner_product(const Character& a, const Character& b) const;
  // sum over irreducibles of |chi(x)|^2
  Integer centralizer_order(std::size_t cls) const;
  // <chi_i, chi_j> = delta_ij over all pairs
  bool rows_orthonormal() const;
  // sum_chi chi(x) conj(chi(y)) = delta |C(x)| with |C(x)| = |G|/|(x)|
  bool columns_orthogonal() const;

 private:
  GroupPtr group_;
  std::vector<Character> irr_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

// model may be an enumerated group of the same family and q
TablePtr table_psl2_even(std::uint64_t q, GroupPtr model = nullptr);
TablePtr table_sl2_odd(std::uint64_t q, GroupPtr model = nullptr);
TablePtr table_psl2_odd(std::uint64_t q, GroupPtr model = nullptr);
TablePtr table_suzuki(std::uint64_t q);
TablePtr table_dihedral_odd(std::uint64_t n);  // D_2n
TablePtr table_cyclic(std::uint64_t n);        // mu_0..mu_{n-1}, mu_k(g^i) = zeta_n^(ki)
// dispatch on family
TablePtr table_for(const GroupPtr& g);
// theta_1, eta_1 or W_1
const Character& rho0(const CharacterTable& t);

// square root of (-1)^((q-1)/2) q for odd q
Cyclotomic sqrt_eps_q(std::uint64_t q);

// (1/|L|) sum |(x) cap L| chi(x) conj(psi(x))
Rational restricted_inner_product(const Character& chi, const Character& psi, const GroupModel& g, const ClassFusion& fusion);
// <Res chi, Res chi>, required to be an integer
Integer centralizer_dim(const Character& chi, const GroupModel& g, const ClassFusion& fusion);
Integer centralizer_dim(const CharacterTable& t, const Character& chi);
// the table of the subgroup whose classes align with the fusion parts
TablePtr subgroup_table(const ClassFusion& fusion);
// <Res chi, lambda>_L, lambda from subgroup_table(fusion) (or the trivial character for aggregated fusion)
Integer multiplicity_check(const Character& chi, const GroupModel& g, const ClassFusion& fusion, const Character& lambda);
// <Res chi, sum theta(1) theta>_L
Integer d_theta(const Character& chi, const GroupModel& g, const ClassFusion& fusion, const std::vector<Character>& theta);
// <chi, alpha_L psi>_G with alpha_L the permutation character of G/L
Rational induced_inner_product(const CharacterTable& t, const Character& chi, const Character& psi, const ClassFusion& fusion);

// {"group", "order", "classes":[{"label","size","order"}], "characters":[{"name","values":[...]}]}
std::string table_to_json(const CharacterTable& t);

}  // namespace osm
