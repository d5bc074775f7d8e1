#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "osm/cyclo.hpp"
#include "osm/gf.hpp"

namespace osm {

using Element = std::uint32_t;

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeBoundExceeded : std::length_error {
  using std::length_error::length_error;
};

// Group given by an explicit multiplication.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual std::size_t size() const = 0;
  virtual Element multiply(Element g, Element h) const = 0;
  virtual Element inverse(Element g) const = 0;
  virtual Element identity() const = 0;

  Element power(Element g, std::int64_t k) const;
  Element conjugate(Element g, Element by) const;  // by^-1 g by
  std::uint64_t element_order(Element g) const;
  // subgroup generated by gens, sorted
  std::vector<Element> closure(const std::vector<Element>& gens) const;
};

// Multiplication-table group, mainly for small test groups.
class CayleyGroup : public FiniteGroup {
 public:
  explicit CayleyGroup(std::vector<std::vector<Element>> table);
  std::size_t size() const override { return table_.size(); }
  Element multiply(Element g, Element h) const override { return table_[g][h]; }
  Element inverse(Element g) const override { return inverse_[g]; }
  Element identity() const override { return identity_; }

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
};

// element k is g^k
CayleyGroup cyclic_group(std::uint32_t n);
// elements r^k (k < n) then s r^k
CayleyGroup dihedral_group(std::uint32_t n);

struct Mat2 {
  FieldSpec::Code a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const Mat2&) const = default;
};

enum class Family { SL2, PSL2, Suzuki, Dihedral, Cyclic };

std::string family_name(Family f);

struct ClassLabel {
  enum class Kind : std::uint8_t {
    Id, Z, C, D, ZC, ZD, A, B, BQuarter,
    Sigma, Rho, RhoInv, Pi0, Pi1, Pi2,
    Rot, Refl, Pow
  };
  Kind kind = Kind::Id;
  std::uint32_t index = 0;

  std::string to_string() const;
  auto operator<=>(const ClassLabel&) const = default;
};

struct ClassInfo {
  ClassLabel label;
  Integer size;
  std::uint64_t element_order = 1;
};

// Either an enumerated matrix group (SL2/PSL2) or class data only.
class GroupModel : public FiniteGroup {
 public:
  static std::shared_ptr<const GroupModel> from_classes(Family family, std::uint64_t q, std::vector<ClassInfo> classes);

  Family family() const { return family_; }
  std::uint64_t q() const { return q_; }
  const Integer& order() const { return order_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  std::size_t class_index(const ClassLabel& label) const;
  bool enumerated() const { return !elements_.empty(); }
  std::string name() const;

  std::size_t size() const override { return elements_.size(); }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Element identity() const override { return identity_; }

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Mat2& matrix(Element g) const { return elements_[g]; }
  // element with the given matrix (any sign for PSL2 with odd q)
  Element find(const Mat2& m) const;
  std::size_t class_of(Element g) const { return class_of_[g]; }
  // class of an arbitrary matrix of SL2(q)
  std::size_t classify_matrix(const Mat2& m) const;

  Mat2 mat_mul(const Mat2& x, const Mat2& y) const;
  Mat2 canonical(const Mat2& m) const;
  bool projective() const { return projective_; }

 private:
  friend std::shared_ptr<const GroupModel> build_linear_model(FieldPtr field, bool projective, bool enumerate);
  std::uint32_t pack(const Mat2& m) const;

  Family family_ = Family::PSL2;
  std::uint64_t q_ = 0;
  Integer order_;
  std::vector<ClassInfo> classes_;
  std::map<ClassLabel, std::size_t> index_;

  FieldPtr field_;
  bool projective_ = false;
  std::vector<Mat2> elements_;
  std::vector<std::uint16_t> class_of_;
  std::unordered_map<std::uint32_t, Element> lookup_;
  std::vector<Element> inverse_;
  Element identity_ = 0;

  // classification data
  std::unordered_map<FieldSpec::Code, std::uint32_t> trace_a_, trace_b_;
};

using GroupPtr = std::shared_ptr<const GroupModel>;

constexpr std::uint64_t kMaxEnumerationQ = 83;

GroupPtr enumerate_sl2(FieldPtr field);
GroupPtr enumerate_psl2(FieldPtr field);
// class data only, no elements
GroupPtr sl2_class_model(std::uint64_t q);
GroupPtr psl2_class_model(std::uint64_t q);
GroupPtr dihedral_class_model(std::uint64_t n);  // D_2n, n odd
GroupPtr cyclic_class_model(std::uint64_t n);
// Suzuki labels with the given sizes, in table order
std::vector<ClassLabel> suzuki_class_labels(std::uint64_t q);
std::uint64_t suzuki_r(std::uint64_t q);
// representatives of the orbits of <-1, q> on (Z/n) \ 0, ascending
std::vector<std::uint32_t> suzuki_orbit_reps(std::uint64_t n, std::uint64_t q);

// q = 2^n with n >= 2, or q = p^n with q = 3 mod 8 and q > 3
bool psl2_q_in_scope(std::uint64_t q);
bool suzuki_q_in_scope(std::uint64_t q);

// Conjugation orbits computed by BFS over the given generators.
std::vector<std::uint32_t> conjugacy_orbits(const FiniteGroup& g, const std::vector<Element>& generators);
// transvections generating SL2(q) or its image in PSL2(q)
std::vector<Element> transvection_generators(const GroupModel& g);

struct SubgroupSpec {
  enum class Kind {
    Trivial, Whole, Borel, DihedralSplit, DihedralNonsplit, A4, Cyclic, Klein4,
    SzTorusNormalizerPlus, SzTorusNormalizerMinus
  };
  Kind kind = Kind::Trivial;
  std::uint64_t param = 0;  // order for Cyclic
  std::vector<Element> elements;    // sorted; empty when the ambient group is not enumerated
  std::vector<Element> generators;  // for dihedral: rotation then reflection

  static SubgroupSpec of(Kind k, std::uint64_t param = 0) { return SubgroupSpec{k, param, {}, {}}; }
  std::string name(const GroupModel& g) const;
  bool contains(Element x) const;
};

// order predicted by the structure of G
Integer theoretical_order(const GroupModel& g, const SubgroupSpec& s);

// Landmark elements used to build the subgroups of PSL2(q).
struct Psl2Landmarks {
  Element a = 0;   // split torus generator
  Element t = 0;   // involution inverting a and b
  Element b = 0;   // nonsplit torus generator
  Element z0 = 0;  // central involution of the nonsplit dihedral group (odd q)
  Element u3 = 0;  // order-3 element normalizing <z0, t> (odd q)
};
Psl2Landmarks psl2_landmarks(const GroupModel& g);

SubgroupSpec build_subgroup(const GroupModel& g, const SubgroupSpec& spec);
// subgroup generated by explicit elements, kind Cyclic when one generator is given
SubgroupSpec subgroup_from_generators(const GroupModel& g, SubgroupSpec::Kind kind, const std::vector<Element>& gens);

// |(x) cap L| data. Parts are subgroup classes for the CyclicPowers (g^k,
// k = 0..n-1) and DihedralOdd ([1, r^1..r^((n-1)/2), s]) shapes, otherwise
// one bucket per ambient class.
struct ClassFusion {
  enum class Shape { Aggregated, CyclicPowers, DihedralOdd };
  struct Part {
    Integer size;
    std::size_t ambient_class;
  };
  Shape shape = Shape::Aggregated;
  Integer order;
  std::vector<Part> parts;

  std::map<ClassLabel, Integer> counts(const GroupModel& g) const;
};

// computed by classifying every element of the subgroup
ClassFusion fusion_table(const GroupModel& g, const SubgroupSpec& sub);
// the tabulated intersection sizes
ClassFusion paper_fusion(const GroupModel& g, const SubgroupSpec& sub);
// enumerated when elements are present, else tabulated
ClassFusion stabilizer_fusion(const GroupModel& g, const SubgroupSpec& sub);

}  // namespace osm
