#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "osm/numerics.hpp"

namespace osm {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Check { Tables, Fusion, Centralizers, ModuliDim, Piterman, Brown, Numerics, Theta };

std::string check_name(Check c);
Check parse_check(const std::string& s);
Family parse_family(const std::string& s);

constexpr const char* kVersion = "0.1.0";
// numerics run on enumerated groups up to this order
constexpr std::uint64_t kMaxNumericsOrder = 4000;

struct VerificationConfig {
  Family family = Family::PSL2;
  std::vector<std::uint64_t> qs;
  std::set<Check> checks;
  std::size_t k = 0;
  std::uint64_t seed = 1;
  Tolerances tol;
  bool timing = true;
};

// throws ConfigError
void validate(const VerificationConfig& c);
// "hom=1e-8,character=1e-6"
Tolerances parse_tolerances(const std::string& s, Tolerances base = {});

struct CheckRecord {
  std::string name;
  std::string anchor;
  std::string inputs;
  std::string expected;
  std::string computed;
  bool pass = false;
  bool skipped = false;
  double millis = 0;
};

struct VerificationReport {
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::vector<CheckRecord> records;

  bool pass() const;
  std::string to_json() const;
  std::string to_text() const;
};

VerificationReport run(const VerificationConfig& c);

// ---------------------------------------------------------------- rho0 claims

// one exact statement about rho0 restricted to an OS stabilizer
struct Rho0Claim {
  enum class Kind { CentralizerDim, Irreducible, Absent, Eigenvalues };
  Kind kind = Kind::CentralizerDim;
  std::string label;
  bool on_edge = false;
  std::size_t index = 0;
  Integer expected;
  std::string character;  // subgroup character for Absent
  std::vector<Integer> multiplicities;  // exponent j -> multiplicity for Eigenvalues
};

// closed formulas for rho0 on the stabilizers of the k = 0 OS graph
std::vector<Rho0Claim> rho0_claims(Family family, std::uint64_t q);

struct ClaimResult {
  Rho0Claim claim;
  std::string computed;
  bool pass = false;
};
std::vector<ClaimResult> check_rho0_claims(const OrbitGraph& graph, const CharacterTable& table, const GraphFusion& fusion);

// subgroups whose fusion is tabulated for PSL2(q)
std::vector<SubgroupSpec> tabulated_subgroups(std::uint64_t q);

}  // namespace osm
