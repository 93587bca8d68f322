// Command-line front end: Khovanov tables, certificates and experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "khbound/certify.hpp"
#include "khbound/errors.hpp"
#include "khbound/factory.hpp"
#include "khbound/kh_table.hpp"
#include "khbound/knot_table.hpp"
#include "khbound/parallel.hpp"

namespace {

using namespace khbound;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

struct Settings {
  std::size_t ceiling = kDefaultCeiling;
  int naive_limit = kDefaultAutoNaiveLimit;
  Backend backend = Backend::kAuto;
  unsigned jobs = 1;
};

struct Flags {
  std::string backend;
  std::size_t ceiling = 0;
  int naive_limit = 0;
  unsigned jobs = 0;
  std::string out;
  std::string format = "json";
  std::string table;
  std::string config;
  bool progress = false;
};

long long env_integer(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return -1;
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != std::string(v).size() || x <= 0) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InputError(std::string(name) + " must be a positive integer, got '" + v + "'");
  }
}

// Defaults, then the config file, then the environment, then flags.
Settings resolve_settings(const Flags& f, const CLI::App& app) {
  Settings s;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw InputError("cannot read config file " + f.config);
    json c;
    try {
      c = json::parse(in);
      if (c.contains("ceiling")) s.ceiling = c.at("ceiling").get<std::size_t>();
      if (c.contains("naive_limit")) s.naive_limit = c.at("naive_limit").get<int>();
      if (c.contains("backend")) s.backend = parse_backend(c.at("backend").get<std::string>());
      if (c.contains("jobs")) s.jobs = c.at("jobs").get<unsigned>();
    } catch (const json::exception& e) {
      throw InputError("bad config file " + f.config + ": " + e.what());
    }
  }
  if (long long v = env_integer("KHBOUND_CEILING"); v > 0) s.ceiling = static_cast<std::size_t>(v);
  if (long long v = env_integer("KHBOUND_NAIVE_LIMIT"); v > 0) s.naive_limit = static_cast<int>(v);
  if (app.count("--ceiling") > 0) s.ceiling = f.ceiling;
  if (app.count("--naive-limit") > 0) s.naive_limit = f.naive_limit;
  if (app.count("--backend") > 0) s.backend = parse_backend(f.backend);
  if (app.count("--jobs") > 0) s.jobs = f.jobs;
  if (s.jobs == 0) s.jobs = 1;
  return s;
}

KhOptions kh_options(const Settings& s, bool progress) {
  KhOptions o;
  o.backend = s.backend;
  o.naive_limit = s.naive_limit;
  o.scan.ceiling = s.ceiling;
  if (progress) {
    o.scan.progress = [](const ScanProgress& p) {
      static std::mutex m;
      std::lock_guard lock(m);
      std::cerr << "scan " << p.processed << "/" << p.total << " crossings, " << p.live_generators
                << " generators, boundary " << p.boundary_points << "\n";
    };
  }
  return o;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream o(f.out, std::ios::binary);
  if (!o) throw InputError("cannot write " + f.out);
  o << text;
  if (text.empty() || text.back() != '\n') o << '\n';
}

std::string table_csv(const std::vector<KhTable>& tables) {
  std::ostringstream s;
  s << "name,hash,backend,i,j,rank\n";
  for (const auto& t : tables) {
    for (const auto& [ij, rank] : t.betti) {
      s << t.diagram_name << ',' << t.diagram_hash << ',' << to_string(t.backend) << ',' << ij.first << ','
        << ij.second << ',' << rank << '\n';
    }
  }
  return s.str();
}

std::string certificate_csv(const Certificate& c) {
  std::ostringstream s;
  s << "subject,hash,statement,p,t,i_max,c_plus_bound,verdicts,table_ref\n";
  std::string verdicts;
  for (const auto& v : c.verdicts) verdicts += (verdicts.empty() ? "" : ";") + v;
  s << c.subject_name << ',' << c.subject_hash << ',' << c.statement << ',' << (c.p ? std::to_string(*c.p) : "")
    << ',' << (c.t ? std::to_string(*c.t) : "") << ',' << c.i_max << ',' << c.c_plus_bound << ',' << verdicts << ','
    << c.table_ref << '\n';
  return s.str();
}

void require_json(const Flags& f, const std::string& command) {
  if (f.format != "json") throw InputError("--format csv is not available for " + command);
}

struct TargetArgs {
  std::vector<std::string> names;
  std::string pd;
  std::vector<int> torus;
};

void add_target_options(CLI::App* cmd, TargetArgs& t, bool many) {
  if (many) {
    cmd->add_option("targets", t.names, "Knot names from the table, unknot, T(p,q) or m<name>");
  } else {
    cmd->add_option("target", t.names, "Knot name from the table, unknot, T(p,q) or m<name>")->expected(0, 1);
  }
  cmd->add_option("--pd", t.pd, "PD code text or JSON instead of a name");
  cmd->add_option("--torus", t.torus, "Torus link T(p,q)")->expected(2);
}

std::vector<Diagram> resolve_targets(const TargetArgs& t, const Flags& f) {
  std::vector<Diagram> out;
  std::vector<KnotTableEntry> table;
  if (!t.names.empty()) table = ingest_table(f.table.empty() ? default_table_path() : std::filesystem::path(f.table));
  for (const auto& n : t.names) out.push_back(resolve_target(n, table));
  if (!t.pd.empty()) out.push_back(parse_pd(t.pd, "pd"));
  if (!t.torus.empty()) out.push_back(torus_diagram(t.torus[0], t.torus[1]));
  if (out.empty()) throw InputError("no target given (name, --pd or --torus)");
  return out;
}

Diagram single_target(const TargetArgs& t, const Flags& f) {
  auto ds = resolve_targets(t, f);
  if (ds.size() != 1) throw InputError("exactly one target expected");
  return ds.front();
}

// Quick end-to-end checks; prints one line per check.
int selftest(const KhOptions& base) {
  int failures = 0;
  auto check = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };
  KhOptions naive = base;
  naive.backend = Backend::kNaive;
  KhOptions scanned = base;
  scanned.backend = Backend::kScan;
  const Diagram unknot({}, 1, "unknot");
  check("unknot table", kh_table(unknot, scanned).betti == BettiMap{{{0, -1}, 1}, {{0, 1}, 1}});
  const Diagram trefoil = torus_diagram(2, 3);
  const KhTable t3 = kh_table(trefoil, naive);
  check("trefoil table", t3.betti == BettiMap{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}});
  check("trefoil scan = naive", kh_table(trefoil, scanned).betti == t3.betti);
  check("trefoil Euler characteristic = Jones", graded_euler(t3.betti) == jones_via_kauffman(trefoil));
  const Diagram t44 = torus_diagram(4, 4);
  check("i_max T(4,4) = 8", i_max(kh_table(t44, scanned)) == 8);
  check("mirror duality T(2,5)", kh_table(mirror(torus_diagram(2, 5)), scanned).betti ==
                                     dual_betti(kh_table(torus_diagram(2, 5), naive).betti));
  return failures == 0 ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational Khovanov homology of link diagrams and lower bounds on positive crossing numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--backend", f.backend, "naive, scan or auto")->check(CLI::IsMember({"naive", "scan", "auto"}));
  app.add_option("--ceiling", f.ceiling, "Maximum live generators during a scan")->check(CLI::PositiveNumber);
  app.add_option("--naive-limit", f.naive_limit, "Largest crossing count the auto backend sends to the naive cube")
      ->check(CLI::Range(0, 24));
  app.add_option("--jobs", f.jobs, "Worker threads for batches")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "Write the report here instead of stdout");
  app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--table", f.table, "Knot table (CSV or JSON); defaults to the bundled one");
  app.add_option("--config", f.config, "JSON config with ceiling, naive_limit, backend, jobs");
  app.add_flag("--progress", f.progress, "Report scan progress on stderr");

  TargetArgs compute_t;
  auto* compute = app.add_subcommand("compute", "Khovanov table of one or more diagrams");
  add_target_options(compute, compute_t, true);

  TargetArgs certify_t;
  int cert_p = 2;
  int cert_t = 0;
  std::string cert_kind = "cable";
  auto* certify = app.add_subcommand("certify", "Certify a lower bound on c+ from a cable (or the diagram itself)");
  add_target_options(certify, certify_t, false);
  certify->add_option("--p", cert_p, "Cable strands (>= 2)");
  certify->add_option("--t", cert_t, "Twist parameter; the cable is K(p, pt)");
  certify->add_option("--kind", cert_kind, "cable or diagram")->check(CLI::IsMember({"cable", "diagram"}));

  TargetArgs cable_t;
  int cable_p = 2;
  int cable_tw = 0;
  auto* cable = app.add_subcommand("cable", "Print the PD code of the cable K(p, pt)");
  add_target_options(cable, cable_t, false);
  cable->add_option("--p", cable_p, "Cable strands");
  cable->add_option("--t", cable_tw, "Twist parameter");

  TargetArgs jones_t;
  auto* jones = app.add_subcommand("jones", "Jones polynomial from the Kauffman bracket");
  add_target_options(jones, jones_t, false);

  TargetArgs adequate_t;
  auto* adequate = app.add_subcommand("adequate", "+adequacy and reducedness of a diagram");
  add_target_options(adequate, adequate_t, false);

  int gap_k = 1;
  int gap_t = 1;
  auto* gap = app.add_subcommand("gap", "c+ minus i_max for the torus link T(2k, 2kt)");
  gap->add_option("--k", gap_k, "k >= 1");
  gap->add_option("--t", gap_t, "t >= 1");

  TargetArgs vanish_t;
  int vanish_p = 2;
  int vanish_tw = 0;
  int vanish_c = 0;
  auto* vanish = app.add_subcommand("vanishing", "Check that the cable's homology vanishes above the expected line");
  add_target_options(vanish, vanish_t, false);
  vanish->add_option("--p", vanish_p, "Cable strands");
  vanish->add_option("--t", vanish_tw, "Twist parameter");
  vanish->add_option("--c-plus", vanish_c, "c+ of a diagram of K")->required();

  TargetArgs explore_t;
  int explore_p = 3;
  int explore_tmin = -2;
  int explore_tmax = 0;
  auto* explore = app.add_subcommand("explore-cables", "Search cables K(p, pt) with t <= 2c+ for positive i_max");
  add_target_options(explore, explore_t, false);
  explore->add_option("--p-max", explore_p, "Largest strand count");
  explore->add_option("--t-min", explore_tmin, "Smallest twist");
  explore->add_option("--t-max", explore_tmax, "Largest twist");

  TargetArgs chain_t;
  int chain_p = 2;
  auto* chain = app.add_subcommand("check-chain", "Compare i_max(K) with i_max(K(p, 2p i_max(K))) / p^2 and c+(D)");
  add_target_options(chain, chain_t, false);
  chain->add_option("--p", chain_p, "Cable strands");

  std::string validate_file;
  TargetArgs validate_t;
  auto* validate = app.add_subcommand("validate", "Recompute a certificate and compare");
  validate->add_option("certificate", validate_file, "Certificate JSON file")->required();
  validate->add_option("--target", validate_t.names, "Knot name");
  validate->add_option("--pd", validate_t.pd, "PD code text");

  auto* self = app.add_subcommand("selftest", "Run quick built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    const Settings s = resolve_settings(f, app);
    const KhOptions opts = kh_options(s, f.progress);

    if (*compute) {
      const auto ds = resolve_targets(compute_t, f);
      std::vector<KhTable> tables(ds.size());
      parallel_for(ds.size(), s.jobs, [&](std::size_t i) { tables[i] = kh_table(ds[i], opts); });
      if (f.format == "csv") {
        emit(f, table_csv(tables));
      } else if (tables.size() == 1) {
        emit(f, tables.front().to_json().dump(2));
      } else {
        json arr = json::array();
        for (const auto& t : tables) arr.push_back(t.to_json());
        emit(f, arr.dump(2));
      }
    } else if (*certify) {
      const Diagram d = single_target(certify_t, f);
      const Certificate c = cert_kind == "diagram" ? diagram_bound(kh_table(d, opts))
                                                   : cable_certificate(d, cert_p, cert_t, opts);
      emit(f, f.format == "csv" ? certificate_csv(c) : c.to_json().dump(2));
      std::cerr << c.summary() << "\n";
    } else if (*cable) {
      const Diagram d = single_target(cable_t, f);
      const Diagram c = cable_diagram(d, {cable_p, cable_tw});
      require_json(f, "cable");
      emit(f, json{{"name", c.name()}, {"crossings", c.num_crossings()}, {"pd", c.to_pd_text()}, {"hash", c.hash()}}
                  .dump(2));
    } else if (*jones) {
      require_json(f, "jones");
      const Diagram d = single_target(jones_t, f);
      const Laurent v = jones_via_kauffman(d);
      json terms = json::array();
      for (const auto& [e, c] : v.terms()) terms.push_back({e, c});
      emit(f, json{{"name", d.name()}, {"jones", v.to_string("q")}, {"terms", terms}}.dump(2));
    } else if (*adequate) {
      require_json(f, "adequate");
      const Diagram d = single_target(adequate_t, f);
      const DiagramStats st = stats(d);
      emit(f, json{{"name", d.name()},
                   {"plus_adequate", plus_adequate(d)},
                   {"reduced", is_reduced(d)},
                   {"c_plus", st.c_plus},
                   {"c_minus", st.c_minus}}
                  .dump(2));
    } else if (*gap) {
      require_json(f, "gap");
      emit(f, gap_report(gap_k, gap_t, opts).to_json().dump(2));
    } else if (*vanish) {
      require_json(f, "vanishing");
      const Diagram d = single_target(vanish_t, f);
      const auto r = vanishing_check(kh_table(cable_diagram(d, {vanish_p, vanish_tw}), opts), vanish_p, vanish_tw,
                                     vanish_c);
      emit(f, r.to_json().dump(2));
      if (!r.pass) return kExitInvariant;
    } else if (*explore) {
      require_json(f, "explore-cables");
      const Diagram d = single_target(explore_t, f);
      emit(f, explore_cables(d, explore_p, explore_tmin, explore_tmax, opts, s.jobs).to_json().dump(2));
    } else if (*chain) {
      require_json(f, "check-chain");
      emit(f, check_chain(single_target(chain_t, f), chain_p, opts).to_json().dump(2));
    } else if (*validate) {
      std::ifstream in(validate_file);
      if (!in) throw InputError("cannot read " + validate_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw InputError("invalid certificate JSON: " + std::string(e.what()));
      }
      const Certificate c = Certificate::from_json(j);
      const Diagram d = single_target(validate_t, f);
      const bool ok = revalidate(c, d, opts);
      std::cout << (ok ? "valid" : "INVALID") << ": " << c.summary() << "\n";
      return ok ? 0 : kExitInvariant;
    } else if (*self) {
      return selftest(opts);
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
