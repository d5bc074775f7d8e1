#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "osm/verify.hpp"

namespace py = pybind11;

namespace {

py::object to_int(const osm::Integer& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const osm::Rational& x) {
  return py::module_::import("fractions").attr("Fraction")(to_int(x.get_num()), to_int(x.get_den()));
}

osm::TablePtr table_of(osm::Family f, std::uint64_t q) {
  switch (f) {
    case osm::Family::PSL2: return q % 2 == 0 ? osm::table_psl2_even(q) : osm::table_psl2_odd(q);
    case osm::Family::Suzuki: return osm::table_suzuki(q);
    case osm::Family::Dihedral: return osm::table_dihedral_odd(q);
    case osm::Family::Cyclic: return osm::table_cyclic(q);
    default: throw osm::ConfigError("unsupported family");
  }
}

osm::OrbitGraph graph_of(const std::string& family, std::uint64_t q, std::size_t k) {
  return osm::build_os_graph(osm::parse_family(family), q, k);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = osm::kVersion;

  py::register_exception<osm::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<osm::UnsupportedGroup>(m, "UnsupportedGroup", PyExc_ValueError);

  m.def(
      "verify",
      [](const std::string& family, const std::vector<std::uint64_t>& qs, const std::vector<std::string>& checks,
         std::size_t k, std::uint64_t seed, bool timing) {
        osm::VerificationConfig c;
        c.family = osm::parse_family(family);
        c.qs = qs;
        for (const auto& s : checks) c.checks.insert(osm::parse_check(s));
        c.k = k;
        c.seed = seed;
        c.timing = timing;
        py::gil_scoped_release release;
        return osm::run(c).to_json();
      },
      py::arg("family"), py::arg("qs"), py::arg("checks"), py::arg("k") = 0, py::arg("seed") = 1,
      py::arg("timing") = true, "Run verification checks and return the JSON report.");

  m.def(
      "character_table",
      [](const std::string& family, std::uint64_t q) { return osm::table_to_json(*table_of(osm::parse_family(family), q)); },
      py::arg("family"), py::arg("q"), "Character table as JSON.");

  m.def(
      "moduli_dimension",
      [](const std::string& family, std::uint64_t q, std::size_t k) {
        auto g = graph_of(family, q, k);
        auto t = table_of(g.family, q);
        auto r = osm::moduli_dimension_report(g, *t, osm::rho0(*t));
        py::dict d;
        d["group"] = r.group;
        d["character"] = r.character;
        d["degree"] = to_int(r.degree);
        d["dim_M"] = to_int(r.dim_m);
        d["dim_H"] = to_int(r.dim_h);
        d["dim_Mbar"] = to_int(r.dim_mbar);
        d["target"] = to_int(r.dim_target);
        d["equal"] = r.equal;
        return d;
      },
      py::arg("family"), py::arg("q"), py::arg("k") = 0, "Moduli dimension identity for rho0.");

  m.def(
      "piterman",
      [](const std::string& family, std::uint64_t q, const std::string& phi, const std::string& psi, std::size_t k) {
        auto g = graph_of(family, q, k);
        auto t = table_of(g.family, q);
        auto r = osm::piterman_identity(g, *t, t->get(phi), t->get(psi));
        return py::make_tuple(to_fraction(r.lhs), to_fraction(r.rhs), r.equal);
      },
      py::arg("family"), py::arg("q"), py::arg("phi"), py::arg("psi"), py::arg("k") = 0,
      "Both sides of the Piterman identity and whether they agree.");

  m.def(
      "rho0_claims",
      [](const std::string& family, std::uint64_t q) {
        auto g = graph_of(family, q, 0);
        auto t = table_of(g.family, q);
        py::list out;
        for (const auto& r : osm::check_rho0_claims(g, *t, osm::graph_fusion(g, t->group()))) {
          py::dict d;
          d["stabilizer"] = r.claim.on_edge ? g.edges[r.claim.index].name : g.vertices[r.claim.index].name;
          d["label"] = r.claim.label;
          d["computed"] = r.computed;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("family"), py::arg("q"), "Closed-formula statements about rho0 and their exact checks.");

  m.def(
      "realize_rho0",
      [](std::uint64_t q, std::uint64_t seed) {
        auto model = osm::enumerate_psl2(osm::gf_make_q(q));
        auto t = osm::table_for(model);
        auto r = osm::realize_irreducible(model, osm::rho0(*t), seed);
        py::dict d;
        d["degree"] = r.rep.degree();
        d["hom_defect"] = r.hom_defect;
        d["character_defect"] = r.character;
        d["matrices"] = r.rep.matrices;
        return d;
      },
      py::arg("q"), py::arg("seed") = 1, "Unitary matrices realizing rho0 on every element of PSL2(q).");

  m.def(
      "smith_invariants",
      [](const std::vector<std::vector<long>>& rows) {
        py::list out;
        for (const auto& x : osm::smith_normal_form(osm::IntMatrix::from_rows(rows), false).invariants)
          out.append(to_int(x));
        return out;
      },
      py::arg("rows"), "Nonzero invariant factors of an integer matrix.");
}
