#include "osm/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <chrono>
#include <ctime>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace osm {

namespace {

using SK = SubgroupSpec::Kind;
using K = ClassLabel::Kind;

std::string str(std::uint64_t x) { return std::to_string(x); }

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

Integer exact(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  if (c.get_den() != 1) throw std::logic_error("closed formula is not an integer: " + c.get_str());
  return c.get_num();
}

Integer isqrt_exact(std::uint64_t x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), Integer(static_cast<unsigned long>(x)).get_mpz_t());
  if (r * r != static_cast<unsigned long>(x)) throw std::logic_error("not a square: " + str(x));
  return r;
}

std::string join(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

Rho0Claim dim_claim(const std::string& label, bool edge, std::size_t i, const Integer& value) {
  Rho0Claim c;
  c.label = label;
  c.on_edge = edge;
  c.index = i;
  c.expected = value;
  return c;
}

Rho0Claim irreducible_claim(std::size_t v) {
  Rho0Claim c = dim_claim("Borel restriction irreducible", false, v, 1);
  c.kind = Rho0Claim::Kind::Irreducible;
  return c;
}

Rho0Claim absent_claim(const std::string& label, std::size_t v, const std::string& character) {
  Rho0Claim c = dim_claim(label, false, v, 0);
  c.kind = Rho0Claim::Kind::Absent;
  c.character = character;
  return c;
}

Rho0Claim eigen_claim(const std::string& label, std::size_t e, std::vector<Integer> mult) {
  Rho0Claim c = dim_claim(label, true, e, 0);
  c.kind = Rho0Claim::Kind::Eigenvalues;
  c.multiplicities = std::move(mult);
  return c;
}

// C_n and C_2 inside D_2n as fusion data
ClassFusion rotations_in_dihedral(const GroupModel& d, std::uint64_t n) {
  ClassFusion f;
  f.shape = ClassFusion::Shape::CyclicPowers;
  f.order = Integer(static_cast<unsigned long>(n));
  for (std::uint64_t k = 0; k < n; ++k) {
    auto j = static_cast<std::uint32_t>(std::min(k, n - k));
    f.parts.push_back({1, d.class_index(k == 0 ? ClassLabel{K::Id, 0} : ClassLabel{K::Rot, j})});
  }
  return f;
}

ClassFusion reflection_in_dihedral(const GroupModel& d) {
  ClassFusion f;
  f.shape = ClassFusion::Shape::CyclicPowers;
  f.order = 2;
  f.parts = {{1, d.class_index({K::Id, 0})}, {1, d.class_index({K::Refl, 0})}};
  return f;
}

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

class Runner {
 public:
  explicit Runner(const VerificationConfig& c) : c_(c) {}

  void record(CheckRecord r) { out_.push_back(std::move(r)); }

  // time f, which fills expected, computed and pass
  void timed(const std::string& name, const std::string& anchor, const std::string& inputs,
             const std::function<void(CheckRecord&)>& f) {
    CheckRecord r{name, anchor, inputs, "", "", false, false, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      f(r);
    } catch (const std::exception& e) {
      r.computed = std::string("error: ") + e.what();
      r.pass = false;
    }
    if (c_.timing) r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    record(std::move(r));
  }

  void skip(const std::string& name, const std::string& anchor, const std::string& inputs, const std::string& why) {
    record(CheckRecord{name, anchor, inputs, "", "skipped: " + why, true, true, 0});
  }

  std::vector<CheckRecord> take() { return std::move(out_); }

 private:
  const VerificationConfig& c_;
  std::vector<CheckRecord> out_;
};

GroupPtr enumerated_or_null(Family f, std::uint64_t q) {
  if (f != Family::PSL2 || q > kMaxEnumerationQ) return nullptr;
  return enumerate_psl2(gf_make_q(q));
}

TablePtr exact_table(Family f, std::uint64_t q) {
  switch (f) {
    case Family::PSL2: return q % 2 == 0 ? table_psl2_even(q) : table_psl2_odd(q);
    case Family::Suzuki: return table_suzuki(q);
    case Family::Dihedral: return table_dihedral_odd(q);
    case Family::Cyclic: return table_cyclic(q);
    default: throw ConfigError("unsupported family");
  }
}

void run_numerics(Runner& run, const VerificationConfig& c, std::uint64_t q, const GroupPtr& model,
                  const std::string& prefix, const std::string& inputs) {
  const Tolerances& tol = c.tol;
  auto table = table_for(model);
  const Character& chi = rho0(*table);
  Realization real;
  bool realized = false;
  run.timed(prefix + "/realize", "unitary realization of rho0", inputs, [&](CheckRecord& r) {
    real = realize_irreducible(model, chi, c.seed, tol);
    realized = true;
    r.expected = "degree " + chi.degree().get_str() + ", hom <= " + sci(tol.hom) + ", character <= " + sci(tol.character);
    r.computed = "degree " + str(real.rep.degree()) + ", hom " + sci(real.hom_defect) + ", unitarity " +
                 sci(real.unitarity) + ", character " + sci(real.character);
    r.pass = Integer(static_cast<unsigned long>(real.rep.degree())) == chi.degree();
  });
  if (!realized) return;
  const UnitaryRep& rho = real.rep;
  auto graph = build_os_graph(Family::PSL2, q, c.k, model);
  auto fusion = graph_fusion(graph, *model);

  run.timed(prefix + "/commutant", "commutant rank equals centralizer dimension", inputs, [&](CheckRecord& r) {
    std::vector<Integer> want, got;
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
      want.push_back(centralizer_dim(chi, *model, fusion.vertices[v]));
      got.emplace_back(static_cast<unsigned long>(commutant_dim(rho, graph.vertices[v].stabilizer.elements, tol)));
    }
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      want.push_back(centralizer_dim(chi, *model, fusion.edges[e]));
      got.emplace_back(static_cast<unsigned long>(commutant_dim(rho, graph.edges[e].stabilizer.elements, tol)));
    }
    r.expected = join(want);
    r.computed = join(got);
    r.pass = want == got;
  });

  run.timed(prefix + "/spectral", "eigenvalue multiplicities on the edge generators", inputs, [&](CheckRecord& r) {
    std::vector<Integer> want, got;
    for (const auto& claim : rho0_claims(Family::PSL2, q)) {
      if (claim.kind != Rho0Claim::Kind::Eigenvalues) continue;
      const auto& s = graph.edges[claim.index].stabilizer;
      Element gen = model->identity();
      for (Element x : s.elements)
        if (model->element_order(x) == s.elements.size()) gen = x;
      auto split = spectral_split(rho, gen, tol);
      for (std::size_t j = 0; j < claim.multiplicities.size(); ++j) {
        want.push_back(claim.multiplicities[j]);
        auto it = split.multiplicities.find(j);
        got.emplace_back(static_cast<unsigned long>(it == split.multiplicities.end() ? 0 : it->second));
      }
    }
    r.expected = join(want);
    r.computed = join(got);
    r.pass = want == got;
  });

  auto pres = brown_presentation(graph);
  std::mt19937_64 rng(c.seed);
  run.timed(prefix + "/action", "rho_{tau alpha} = rho_tau", inputs + ", 20 pairs x 50 words", [&](CheckRecord& r) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      auto tau = random_moduli_point(pres, rho, rng);
      auto moved = h_action(pres, rho, tau, random_h_point(pres, rho, rng), tol);
      for (int j = 0; j < 50; ++j) {
        auto w = random_word(pres, rng, 12);
        worst = std::max(worst, max_abs(rho_tau_eval(pres, rho, moved, w) - rho_tau_eval(pres, rho, tau, w)));
      }
    }
    r.expected = "<= " + sci(tol.action);
    r.computed = sci(worst);
    r.pass = worst <= tol.action;
  });

  run.timed(prefix + "/universal", "rho at the identity point is rho0 o phi", inputs + ", 100 kernel words",
            [&](CheckRecord& r) {
              const auto one = identity_point(pres, rho.degree());
              const auto m = static_cast<Eigen::Index>(rho.degree());
              double worst = 0;
              for (int i = 0; i < 100; ++i) {
                auto w = random_kernel_word(pres, rng);
                if (pres.phi(w) != model->identity()) throw WordNotInKernel("generated word leaves the kernel");
                worst = std::max(worst, max_abs(rho_tau_eval(pres, rho, one, w) - CMatrix::Identity(m, m)));
              }
              r.expected = "<= " + sci(tol.hom);
              r.computed = sci(worst);
              r.pass = worst <= tol.hom;
            });

  run.timed(prefix + "/jacobian", "word differential along closed edge paths", inputs + ", 10 paths",
            [&](CheckRecord& r) {
              double worst = 0;
              bool ok = true;
              for (std::size_t i = 0; i < 10; ++i) {
                auto path = random_closed_path(pres, rng, 3 + i % 6);
                auto d = word_differential_check(pres, rho, path, rng, 1e-5, tol);
                worst = std::max(worst, d.max_error / (1.0 + d.formula_norm));
                ok = ok && d.pass;
              }
              r.expected = "relative <= " + sci(tol.jacobian);
              r.computed = sci(worst);
              r.pass = ok;
            });
}

void run_one(Runner& run, const VerificationConfig& c, std::uint64_t q) {
  const Family f = c.family;
  const bool linear = f == Family::PSL2 || f == Family::Suzuki;
  TablePtr table = exact_table(f, q);
  const std::string group = table->group().name();
  const std::string inputs = group + (linear ? ", k=" + str(c.k) : "");
  GroupPtr model;
  bool tried = false;
  auto enumerated = [&]() {
    if (!tried) {
      model = enumerated_or_null(f, q);
      tried = true;
    }
    return model;
  };
  const std::string why_not = f == Family::Suzuki ? "class-data model" : "above enumeration bound";

  for (Check ch : c.checks) {
    const std::string name = check_name(ch) + "/" + group;
    const bool applicable = ch == Check::Tables || (ch == Check::Theta && f == Family::Dihedral) ||
                            (linear && ch != Check::Theta);
    if (!applicable) {
      run.skip(name, "", inputs, "not applicable to " + family_name(f));
      continue;
    }
    switch (ch) {
      case Check::Tables:
        run.timed(name, "character table orthogonality", group, [&](CheckRecord& r) {
          r.expected = "rows orthonormal, columns orthogonal";
          const bool rows = table->rows_orthonormal(), cols = table->columns_orthogonal();
          r.computed = std::string(rows ? "rows orthonormal" : "rows not orthonormal") + ", " +
                       (cols ? "columns orthogonal" : "columns not orthogonal");
          r.pass = rows && cols;
        });
        break;
      case Check::Theta:
        run.timed(name, "Theta balance on dihedral groups", group, [&](CheckRecord& r) {
          const auto& d = table->group();
          auto h1 = rotations_in_dihedral(d, q), h2 = reflection_in_dihedral(d);
          auto cn = table_cyclic(q), c2 = table_cyclic(2);
          std::vector<Character> theta1, theta1b{cn->get("mu_0")}, theta2{c2->get("mu_0")};
          for (std::uint64_t j = 1; j <= (q - 1) / 2; ++j) {
            theta1.push_back(cn->get("mu_" + str(j)));
            theta1b.push_back(cn->get("mu_" + str(j)));
          }
          std::size_t bad = 0, total = 0;
          for (const auto& chi : table->irreducibles()) {
            const Integer b = d_theta(chi, d, h2, theta2);
            if (chi.name != "psi_1") {
              bad += d_theta(chi, d, h1, theta1) != b;
              ++total;
            }
            if (chi.name != "psi_2") {
              bad += d_theta(chi, d, h1, theta1b) != b;
              ++total;
            }
          }
          r.expected = str(total) + " balanced";
          r.computed = str(total - bad) + " balanced";
          r.pass = bad == 0;
        });
        break;
      case Check::Fusion:
        if (f == Family::Suzuki) {
          run.timed(name, "tabulated fusion sums to the subgroup order", group, [&](CheckRecord& r) {
            auto graph = build_os_graph(f, q, 0);
            std::size_t ok = 0, total = 0;
            auto count = [&](const SubgroupSpec& s) {
              auto fu = paper_fusion(table->group(), s);
              Integer sum = 0;
              for (const auto& p : fu.parts) sum += p.size;
              ok += sum == theoretical_order(table->group(), s) && sum == fu.order;
              ++total;
            };
            for (const auto& v : graph.vertices) count(v.stabilizer);
            for (const auto& e : graph.edges) count(e.stabilizer);
            r.expected = str(total) + " consistent";
            r.computed = str(ok) + " consistent";
            r.pass = ok == total;
          });
        } else if (!enumerated()) {
          run.skip(name, "enumerated fusion equals the tables", inputs, why_not);
        } else {
          run.timed(name, "enumerated fusion equals the tables", group, [&](CheckRecord& r) {
            std::size_t ok = 0, total = 0;
            for (const auto& spec : tabulated_subgroups(q)) {
              auto got = fusion_table(*model, build_subgroup(*model, spec));
              auto want = paper_fusion(*model, spec);
              ok += got.counts(*model) == want.counts(*model);
              ++total;
            }
            r.expected = str(total) + " subgroups match";
            r.computed = str(ok) + " subgroups match";
            r.pass = ok == total;
          });
        }
        break;
      case Check::Centralizers: {
        auto graph = build_os_graph(f, q, 0);
        auto fusion = graph_fusion(graph, table->group());
        std::vector<ClaimResult> results;
        try {
          results = check_rho0_claims(graph, *table, fusion);
        } catch (const std::exception& e) {
          run.record(CheckRecord{name, "rho0 on the stabilizers", inputs, "", std::string("error: ") + e.what(), false});
          break;
        }
        for (const auto& res : results) {
          const auto& cl = res.claim;
          const std::string where = (cl.on_edge ? graph.edges[cl.index].name : graph.vertices[cl.index].name);
          CheckRecord r{name + "/" + where + "/" + cl.label, "rho0 on the stabilizers", group, "", res.computed,
                        res.pass};
          r.expected = cl.kind == Rho0Claim::Kind::Eigenvalues ? join(cl.multiplicities) : cl.expected.get_str();
          run.record(std::move(r));
        }
        break;
      }
      case Check::ModuliDim:
        run.timed(name, "moduli dimension identity", inputs, [&](CheckRecord& r) {
          auto rep = moduli_dimension_report(build_os_graph(f, q, c.k), *table, rho0(*table));
          r.expected = rep.dim_target.get_str();
          r.computed = rep.dim_mbar.get_str() + " = " + rep.dim_m.get_str() + " - " + rep.dim_h.get_str();
          r.pass = rep.equal;
        });
        break;
      case Check::Piterman:
        run.timed(name, "Piterman identity over all pairs", inputs, [&](CheckRecord& r) {
          auto graph = build_os_graph(f, q, c.k);
          auto fusion = graph_fusion(graph, table->group());
          std::size_t ok = 0, total = 0;
          for (const auto& a : table->irreducibles())
            for (const auto& b : table->irreducibles()) {
              ok += piterman_identity(graph, *table, a, b, fusion).equal;
              ++total;
            }
          r.expected = str(total) + " pairs";
          r.computed = str(ok) + " pairs";
          r.pass = ok == total;
        });
        break;
      case Check::Brown:
        if (!enumerated()) {
          run.skip(name, "Brown relations are killed by phi", inputs, why_not);
        } else {
          run.timed(name, "Brown relations are killed by phi", inputs, [&](CheckRecord& r) {
            std::size_t relations = 0;
            bool ok = true;
            for (auto choice : {ConnectorChoice::First, ConnectorChoice::Alternate}) {
              auto p = brown_presentation(build_os_graph(f, q, c.k, model, choice));
              ok = ok && p.verify();
              relations += p.relations.size();
            }
            r.expected = "all relations map to 1";
            r.computed = str(relations) + " relations, " + (ok ? "all map to 1" : "some fail");
            r.pass = ok;
          });
        }
        break;
      case Check::Numerics:
        if (!enumerated()) {
          run.skip(name, "numerical moduli", inputs, why_not);
        } else if (model->size() > kMaxNumericsOrder) {
          run.skip(name, "numerical moduli", inputs, "group order above numerics bound");
        } else {
          run_numerics(run, c, q, model, name, inputs);
        }
        break;
    }
  }
}

}  // namespace

std::string check_name(Check c) {
  switch (c) {
    case Check::Tables: return "tables";
    case Check::Fusion: return "fusion";
    case Check::Centralizers: return "centralizers";
    case Check::ModuliDim: return "moduli-dim";
    case Check::Piterman: return "piterman";
    case Check::Brown: return "brown";
    case Check::Numerics: return "numerics";
    case Check::Theta: return "theta";
  }
  return "";
}

Check parse_check(const std::string& s) {
  for (Check c : {Check::Tables, Check::Fusion, Check::Centralizers, Check::ModuliDim, Check::Piterman, Check::Brown,
                  Check::Numerics, Check::Theta})
    if (check_name(c) == s) return c;
  throw ConfigError("unknown check: " + s);
}

Family parse_family(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (l == "psl2") return Family::PSL2;
  if (l == "sz" || l == "suzuki") return Family::Suzuki;
  if (l == "dihedral") return Family::Dihedral;
  if (l == "cyclic") return Family::Cyclic;
  throw ConfigError("unknown family: " + s);
}

Tolerances parse_tolerances(const std::string& s, Tolerances base) {
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance needs key=value: " + item);
    const std::string key = item.substr(0, eq);
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance value: " + item);
    }
    if (!(v > 0)) throw ConfigError("tolerances must be positive: " + item);
    if (key == "hom") base.hom = v;
    else if (key == "character") base.character = v;
    else if (key == "jacobian") base.jacobian = v;
    else if (key == "rank") base.rank = v;
    else if (key == "action") base.action = v;
    else throw ConfigError("unknown tolerance: " + key);
  }
  return base;
}

void validate(const VerificationConfig& c) {
  if (c.qs.empty()) throw ConfigError("no q given");
  for (std::uint64_t q : c.qs) {
    bool ok = false;
    switch (c.family) {
      case Family::PSL2: ok = psl2_q_in_scope(q); break;
      case Family::Suzuki: ok = suzuki_q_in_scope(q); break;
      case Family::Dihedral: ok = q >= 3 && q % 2 == 1; break;
      case Family::Cyclic: ok = q >= 1; break;
      default: break;
    }
    if (!ok) throw ConfigError("q=" + str(q) + " is not in scope for " + family_name(c.family));
  }
  for (double t : {c.tol.hom, c.tol.character, c.tol.jacobian, c.tol.rank, c.tol.action})
    if (!(t > 0)) throw ConfigError("tolerances must be positive");
  if (c.checks.empty()) throw ConfigError("no checks selected");
}

bool VerificationReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["header"] = {{"version", version}, {"seed", seed}, {"timestamp", timestamp}};
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    j["records"].push_back({{"name", r.name},
                            {"anchor", r.anchor},
                            {"inputs", r.inputs},
                            {"expected", r.expected},
                            {"computed", r.computed},
                            {"pass", r.pass},
                            {"millis", std::round(r.millis * 1000.0) / 1000.0}});
  }
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "osverify " << version << " seed " << seed << " at " << timestamp << "\n";
  std::size_t failed = 0;
  for (const auto& r : records) {
    os << (r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL") << "  " << r.name << "  computed: " << r.computed;
    if (!r.expected.empty()) os << "  expected: " << r.expected;
    if (r.millis > 0) os << "  (" << std::fixed << std::setprecision(1) << r.millis << " ms)";
    os << "\n";
    failed += !r.pass;
  }
  os << (failed ? "FAILED " + str(failed) + " of " + str(records.size()) : "all " + str(records.size()) + " passed")
     << "\n";
  return os.str();
}

VerificationReport run(const VerificationConfig& c) {
  validate(c);
  VerificationReport rep;
  rep.seed = c.seed;
  rep.timestamp = timestamp_now();
  std::vector<std::future<std::vector<CheckRecord>>> jobs;
  for (std::uint64_t q : c.qs)
    jobs.push_back(std::async(std::launch::async, [&c, q] {
      Runner runner(c);
      run_one(runner, c, q);
      return runner.take();
    }));
  for (auto& j : jobs)
    for (auto& r : j.get()) rep.records.push_back(std::move(r));
  return rep;
}

// ---------------------------------------------------------------- rho0 claims

std::vector<Rho0Claim> rho0_claims(Family family, std::uint64_t q) {
  using R = Rational;
  std::vector<Rho0Claim> out;
  const Integer Q(static_cast<unsigned long>(q));
  if (family == Family::PSL2 && q % 2 == 0) {
    const Integer h = Q / 2;
    out.push_back(dim_claim("centralizer dim", true, 0, Q - 1));
    out.push_back(dim_claim("centralizer dim", true, 1, (h - 1) * (h - 1) + h * h));
    out.push_back(dim_claim("centralizer dim", true, 2, (h - 1) * (h - 1) + h * h));
    out.push_back(irreducible_claim(0));
    out.push_back(dim_claim("centralizer dim", false, 1, h));
    out.push_back(dim_claim("centralizer dim", false, 2, h));
    out.push_back(absent_claim("trivial absent", 1, "psi_1"));
    out.push_back(eigen_claim("eigenvalues", 0, std::vector<Integer>(q - 1, 1)));
    out.push_back(eigen_claim("eigenvalues", 1, {h - 1, h}));
    return out;
  }
  if (family == Family::PSL2) {
    const Integer m = (Q - 1) / 2;
    const Integer a = (Q + 1) / 4, b = (Q - 3) / 4;
    out.push_back(dim_claim("centralizer dim", true, 0, m));
    out.push_back(dim_claim("centralizer dim", true, 1, a * a + b * b));
    out.push_back(dim_claim("centralizer dim", true, 2, exact(R(Q + 5, 8) * R(Q + 5, 8) + 3 * R(Q - 3, 8) * R(Q - 3, 8))));
    Integer c3, a4;
    if (q % 3 == 0) {
      const Integer r = isqrt_exact(q / 3);
      c3 = exact(R(Q - 3, 6) * R(Q - 3, 6) + R(Q + 3 * r, 6) * R(Q + 3 * r, 6) + R(Q - 3 * r, 6) * R(Q - 3 * r, 6));
      a4 = exact(R(Q * Q + 6 * Q + 21, 48));
    } else if (q % 3 == 1) {
      c3 = exact(3 * R(Q - 1, 6) * R(Q - 1, 6));
      a4 = exact(R(Q * Q - 2 * Q + 13, 48));
    } else {
      c3 = exact(R(Q - 5, 6) * R(Q - 5, 6) + 2 * R(Q + 1, 6) * R(Q + 1, 6));
      a4 = exact(R(Q * Q - 2 * Q + 45, 48));
    }
    out.push_back(dim_claim("centralizer dim", true, 3, c3));
    out.push_back(irreducible_claim(0));
    out.push_back(dim_claim("centralizer dim", false, 1, a));
    out.push_back(dim_claim("centralizer dim", false, 2, a));
    out.push_back(dim_claim("centralizer dim", false, 3, a4));
    out.push_back(absent_claim("sign character absent", 1, "psi_2"));
    out.push_back(eigen_claim("eigenvalues", 0, std::vector<Integer>((q - 1) / 2, 1)));
    out.push_back(eigen_claim("eigenvalues", 1, {a, b}));
    return out;
  }
  if (family == Family::Suzuki) {
    const Integer r(static_cast<unsigned long>(suzuki_r(q)));
    out.push_back(dim_claim("centralizer dim", true, 0, Q * (Q - 1) / 2));
    out.push_back(dim_claim("centralizer dim", true, 1, exact(R(Q * (Q * Q - 2 * Q + 2), 4))));
    out.push_back(dim_claim("centralizer dim", true, 2, exact(R(Q * (Q * Q - 2 * Q + 4), 8))));
    out.push_back(dim_claim("centralizer dim", true, 3, exact(R(Q * (Q * Q - 2 * Q + 4), 8))));
    out.push_back(irreducible_claim(0));
    out.push_back(dim_claim("centralizer dim", false, 1, Q * Q / 4));
    out.push_back(dim_claim("centralizer dim", false, 2, exact(R(Q * Q - Q * r + 2 * Q + 2 * r, 8))));
    out.push_back(dim_claim("centralizer dim", false, 3, exact(R(Q * Q + Q * r + 2 * Q - 2 * r, 8))));
    out.push_back(absent_claim("trivial absent", 1, "psi_1"));
    out.push_back(eigen_claim("eigenvalues", 0, std::vector<Integer>(q - 1, r / 2)));
    out.push_back(eigen_claim("eigenvalues", 1, {r * (Q - 2) / 4, r * Q / 4}));
    return out;
  }
  throw UnsupportedGroup("rho0_claims: PSL2 or Sz only");
}

std::vector<ClaimResult> check_rho0_claims(const OrbitGraph& graph, const CharacterTable& table, const GraphFusion& fusion) {
  const GroupModel& g = table.group();
  const Character& chi = rho0(table);
  std::vector<ClaimResult> out;
  for (const auto& cl : rho0_claims(graph.family, graph.q)) {
    const ClassFusion& f = cl.on_edge ? fusion.edges.at(cl.index) : fusion.vertices.at(cl.index);
    ClaimResult res{cl, "", false};
    switch (cl.kind) {
      case Rho0Claim::Kind::CentralizerDim: {
        const Integer d = centralizer_dim(chi, g, f);
        res.computed = d.get_str();
        res.pass = d == cl.expected;
        break;
      }
      case Rho0Claim::Kind::Irreducible: {
        const Rational n = restricted_inner_product(chi, chi, g, f);
        res.computed = n.get_str();
        res.pass = n == 1;
        break;
      }
      case Rho0Claim::Kind::Absent: {
        const Integer n = multiplicity_check(chi, g, f, subgroup_table(f)->get(cl.character));
        res.computed = n.get_str();
        res.pass = n == 0;
        break;
      }
      case Rho0Claim::Kind::Eigenvalues: {
        auto sub = subgroup_table(f);
        std::vector<Integer> mult;
        for (std::size_t j = 0; j < cl.multiplicities.size(); ++j)
          mult.push_back(multiplicity_check(chi, g, f, sub->get("mu_" + std::to_string(j))));
        res.computed = join(mult);
        res.pass = mult == cl.multiplicities;
        break;
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<SubgroupSpec> tabulated_subgroups(std::uint64_t q) {
  if (q % 2 == 0)
    return {SubgroupSpec::of(SK::Trivial), SubgroupSpec::of(SK::Borel), SubgroupSpec::of(SK::DihedralSplit),
            SubgroupSpec::of(SK::DihedralNonsplit), SubgroupSpec::of(SK::Cyclic, q - 1), SubgroupSpec::of(SK::Cyclic, 2)};
  return {SubgroupSpec::of(SK::Trivial), SubgroupSpec::of(SK::Borel), SubgroupSpec::of(SK::A4),
          SubgroupSpec::of(SK::DihedralSplit), SubgroupSpec::of(SK::DihedralNonsplit), SubgroupSpec::of(SK::Cyclic, 2),
          SubgroupSpec::of(SK::Klein4), SubgroupSpec::of(SK::Cyclic, (q - 1) / 2), SubgroupSpec::of(SK::Cyclic, 3)};
}

}  // namespace osm
