#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "osm/verify.hpp"

namespace {

std::vector<std::uint64_t> parse_qs(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw osm::ConfigError("bad q: " + item);
    }
    if (used != item.size()) throw osm::ConfigError("bad q: " + item);
    out.push_back(v);
  }
  return out;
}

std::set<osm::Check> parse_checks(const std::string& s, osm::Family family) {
  using osm::Check;
  std::set<Check> out;
  if (s == "all") {
    switch (family) {
      case osm::Family::Dihedral: return {Check::Tables, Check::Theta};
      case osm::Family::Cyclic: return {Check::Tables};
      default:
        return {Check::Tables, Check::Fusion, Check::Centralizers, Check::ModuliDim, Check::Piterman, Check::Brown,
                Check::Numerics};
    }
  }
  if (s == "exact") {
    auto all = parse_checks("all", family);
    all.erase(Check::Numerics);
    return all;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(osm::parse_check(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical verification of the moduli construction"};
  std::string family = "psl2", qs, checks = "all", tol, format = "json", out;
  std::size_t k = 0;
  std::uint64_t seed = 1;
  bool no_timing = false;
  app.add_option("--family", family, "psl2, sz, dihedral or cyclic")->envname("OSVERIFY_FAMILY");
  app.add_option("--q", qs, "comma-separated q (or n) values")->required()->envname("OSVERIFY_Q");
  app.add_option("--k", k, "number of free edge orbits")->envname("OSVERIFY_K");
  app.add_option("--checks", checks,
                 "all, exact, or a comma list of tables,fusion,centralizers,moduli-dim,piterman,brown,numerics,theta")
      ->envname("OSVERIFY_CHECKS");
  app.add_option("--seed", seed, "RNG seed")->envname("OSVERIFY_SEED");
  app.add_option("--tol", tol, "overrides such as hom=1e-8,character=1e-6,jacobian=1e-6,rank=1e-6,action=1e-7")
      ->envname("OSVERIFY_TOL");
  app.add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->envname("OSVERIFY_FORMAT");
  app.add_option("--out", out, "report path (stdout when omitted)")->envname("OSVERIFY_OUT");
  app.add_flag("--no-timing", no_timing, "record zero runtimes so reports are reproducible")
      ->envname("OSVERIFY_NO_TIMING");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  osm::VerificationReport report;
  try {
    osm::VerificationConfig config;
    config.family = osm::parse_family(family);
    config.qs = parse_qs(qs);
    config.checks = parse_checks(checks, config.family);
    config.k = k;
    config.seed = seed;
    config.tol = osm::parse_tolerances(tol);
    config.timing = !no_timing;
    osm::validate(config);
    report = osm::run(config);
  } catch (const osm::ConfigError& e) {
    std::cerr << "osverify: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "json" ? report.to_json() : report.to_text();
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "osverify: cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  return report.pass() ? 0 : 1;
}
