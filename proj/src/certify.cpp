#include "khbound/certify.hpp"

#include <algorithm>

#include "khbound/errors.hpp"
#include "khbound/factory.hpp"
#include "khbound/parallel.hpp"

namespace khbound {

namespace {

template <typename T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> opt_get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

void require_knot(const Diagram& d) {
  if (d.num_components() != 1) {
    throw InputError("cable bounds need a knot; '" + d.name() + "' has " + std::to_string(d.num_components()) +
                     " components");
  }
}

}  // namespace

nlohmann::json Certificate::to_json() const {
  return nlohmann::json{{"subject", {{"name", subject_name}, {"hash", subject_hash}}},
                        {"statement", statement},
                        {"p", opt(p)},
                        {"t", opt(t)},
                        {"i_max", i_max},
                        {"i_min", opt(i_min)},
                        {"bound", {{"c_plus", c_plus_bound}, {"c_minus", opt(c_minus_bound)}}},
                        {"knot_i_max", opt(knot_i_max)},
                        {"verdict", verdicts},
                        {"table_ref", table_ref},
                        {"backend", backend},
                        {"engine", engine}};
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  try {
    Certificate c;
    c.subject_name = j.at("subject").at("name").get<std::string>();
    c.subject_hash = j.at("subject").at("hash").get<std::string>();
    c.statement = j.at("statement").get<std::string>();
    if (c.statement != kDiagramBound && c.statement != kCableBound) {
      throw InputError("unknown certificate statement '" + c.statement + "'");
    }
    c.p = opt_get<int>(j, "p");
    c.t = opt_get<int>(j, "t");
    c.i_max = j.at("i_max").get<int>();
    c.i_min = opt_get<int>(j, "i_min");
    c.c_plus_bound = j.at("bound").at("c_plus").get<int>();
    c.c_minus_bound = opt_get<int>(j.at("bound"), "c_minus");
    c.knot_i_max = opt_get<int>(j, "knot_i_max");
    c.verdicts = j.at("verdict").get<std::vector<std::string>>();
    c.table_ref = j.at("table_ref").get<std::string>();
    c.backend = j.at("backend").get<std::string>();
    c.engine = j.at("engine").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
}

std::string Certificate::summary() const {
  std::string s = (subject_name.empty() ? subject_hash : subject_name) + ": c+ >= " + std::to_string(c_plus_bound);
  if (statement == kCableBound) {
    s += " (i_max " + std::to_string(i_max) + " of the (" + std::to_string(*p) + "," + std::to_string(*p * *t) +
         ") cable)";
  } else {
    s += ", c- >= " + std::to_string(c_minus_bound.value_or(0)) + " (i_max " + std::to_string(i_max) + ", i_min " +
         std::to_string(i_min.value_or(0)) + ")";
  }
  if (verdicts.empty()) {
    s += "; no verdict";
  } else {
    for (const auto& v : verdicts) s += v == kNotNegative ? "; not negative" : "; not positive";
  }
  return s;
}

Certificate diagram_bound(const KhTable& t) {
  const auto [lo, hi] = extreme_degrees(t);
  Certificate c;
  c.subject_name = t.diagram_name;
  c.subject_hash = t.diagram_hash;
  c.statement = kDiagramBound;
  c.i_max = hi;
  c.i_min = lo;
  c.c_plus_bound = std::max(hi, 0);
  c.c_minus_bound = std::max(-lo, 0);
  if (hi > 0) c.verdicts.push_back(kNotNegative);
  if (lo < 0) c.verdicts.push_back(kNotPositive);
  std::sort(c.verdicts.begin(), c.verdicts.end());
  c.table_ref = t.hash();
  c.backend = to_string(t.backend);
  return c;
}

Certificate cable_bound(const Diagram& knot, const KhTable& cable, int p, int t, std::optional<int> knot_i_max) {
  require_knot(knot);
  if (p < 2) throw InputError("cable bounds need p >= 2");
  if (t > 0) {
    if (!knot_i_max || t > 2 * *knot_i_max) {
      throw InputError("not certifiable: t = " + std::to_string(t) + " > 0 needs t <= 2 i_max(K)" +
                       (knot_i_max ? " = " + std::to_string(2 * *knot_i_max) : std::string()));
    }
  }
  Certificate c;
  c.subject_name = knot.name();
  c.subject_hash = knot.hash();
  c.statement = kCableBound;
  c.p = p;
  c.t = t;
  c.i_max = i_max(cable);
  c.c_plus_bound = ceil_div(c.i_max, p * p);
  if (t > 0) c.knot_i_max = knot_i_max;
  if (c.i_max > 0) c.verdicts.push_back(kNotNegative);
  c.table_ref = cable.hash();
  c.backend = to_string(cable.backend);
  return c;
}

Certificate cable_certificate(const Diagram& knot, int p, int t, const KhOptions& options) {
  require_knot(knot);
  if (p < 2) throw InputError("cable bounds need p >= 2");
  std::optional<int> knot_i_max;
  if (t > 0) {
    knot_i_max = i_max(kh_table(knot, options));
    if (t > 2 * *knot_i_max) {
      throw InputError("not certifiable: t = " + std::to_string(t) + " exceeds 2 i_max(K) = " +
                       std::to_string(2 * *knot_i_max) + ", the largest twist known to satisfy t <= 2 c+(K)");
    }
  }
  const KhTable cable = kh_table(cable_diagram(knot, {p, t}), options);
  return cable_bound(knot, cable, p, t, knot_i_max);
}

bool revalidate(const Certificate& cert, const Diagram& subject, const KhOptions& options) {
  if (subject.hash() != cert.subject_hash) return false;
  if (cert.statement == kDiagramBound) return diagram_bound(kh_table(subject, options)) == cert;
  if (cert.statement == kCableBound && cert.p && cert.t) return cable_certificate(subject, *cert.p, *cert.t, options) == cert;
  return false;
}

std::string to_string(VanishingRegion r) {
  switch (r) {
    case VanishingRegion::kTwistBounded:
      return "twist-bounded";
    case VanishingRegion::kEvenStrands:
      return "even-strands";
    case VanishingRegion::kOddStrands:
      return "odd-strands";
  }
  return "twist-bounded";
}

nlohmann::json VanishingReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& [i, j] : violations) v.push_back({i, j});
  return nlohmann::json{{"region", to_string(region)}, {"p", p},         {"t", t},
                        {"c_plus", c_plus},            {"limit", limit}, {"i_max", i_max},
                        {"violations", v},             {"pass", pass}};
}

VanishingReport vanishing_check(const KhTable& cable, int p, int t, int c_plus) {
  if (p < 1) throw InputError("vanishing_check needs p >= 1");
  if (c_plus < 0) throw InputError("vanishing_check needs c+ >= 0");
  VanishingReport r;
  r.p = p;
  r.t = t;
  r.c_plus = c_plus;
  r.i_max = i_max(cable);
  const int base = p * p * c_plus;
  if (t <= 2 * c_plus) {
    r.region = VanishingRegion::kTwistBounded;
    r.limit = base;
  } else if (p % 2 == 0) {
    const int k = p / 2;
    r.region = VanishingRegion::kEvenStrands;
    r.limit = 2 * k * k * (t - 2 * c_plus) + base;
  } else {
    const int k = (p - 1) / 2;
    r.region = VanishingRegion::kOddStrands;
    r.limit = 2 * k * (k + 1) * (t - 2 * c_plus) + base;
  }
  for (const auto& [ij, rank] : cable.betti) {
    if (ij.first > r.limit) r.violations.push_back(ij);
  }
  r.pass = r.violations.empty();
  return r;
}

nlohmann::json GapReport::to_json() const {
  return nlohmann::json{{"k", k}, {"t", t}, {"c_plus", c_plus}, {"i_max", i_max}, {"gap", gap}};
}

GapReport gap_report(int k, int t, const KhOptions& options) {
  if (k < 1 || t < 1) throw InputError("gap_report needs k >= 1 and t >= 1");
  GapReport g;
  g.k = k;
  g.t = t;
  g.c_plus = 2 * k * t * (2 * k - 1);
  const Diagram d = torus_diagram(2 * k, 2 * k * t);
  const DiagramStats st = stats(d);
  if (st.c_minus != 0 || st.c_plus != g.c_plus) {
    throw InvariantError("standard torus diagram has " + std::to_string(st.c_plus) + " positive and " +
                         std::to_string(st.c_minus) + " negative crossings, expected " + std::to_string(g.c_plus) +
                         " and 0");
  }
  g.i_max = i_max(kh_table(d, options));
  g.gap = g.c_plus - g.i_max;
  if (g.i_max != 2 * k * k * t) {
    throw InvariantError("i_max(T(" + std::to_string(2 * k) + "," + std::to_string(2 * k * t) + ")) = " +
                         std::to_string(g.i_max) + ", expected " + std::to_string(2 * k * k * t));
  }
  return g;
}

nlohmann::json CableSample::to_json() const {
  return nlohmann::json{{"p", p}, {"t", t}, {"crossings", crossings}, {"i_max", opt(i_max)}, {"status", status}};
}

nlohmann::json CableExploration::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& x : samples) s.push_back(x.to_json());
  return nlohmann::json{
      {"knot", knot}, {"knot_i_max", knot_i_max}, {"samples", s}, {"found_positive", found_positive}};
}

CableExploration explore_cables(const Diagram& knot, int p_max, int t_min, int t_max, const KhOptions& options,
                                unsigned jobs) {
  require_knot(knot);
  if (p_max < 2 || t_min > t_max) throw InputError("explore needs p_max >= 2 and t_min <= t_max");
  CableExploration ex;
  ex.knot = knot.name();
  ex.knot_i_max = i_max(kh_table(knot, options));
  for (int p = 2; p <= p_max; ++p) {
    for (int t = t_min; t <= t_max; ++t) {
      CableSample s;
      s.p = p;
      s.t = t;
      s.status = (t > 0 && t > 2 * ex.knot_i_max) ? "not-certifiable" : "ok";
      ex.samples.push_back(s);
    }
  }
  parallel_for(ex.samples.size(), jobs, [&](std::size_t i) {
    CableSample& s = ex.samples[i];
    const Diagram cable = cable_diagram(knot, {s.p, s.t});
    s.crossings = cable.num_crossings();
    if (s.status != "ok") return;
    try {
      s.i_max = i_max(kh_table(cable, options));
    } catch (const ResourceError&) {
      s.status = "resource-limit";
    }
  });
  for (const auto& s : ex.samples) {
    if (s.i_max && *s.i_max > 0) ex.found_positive = true;
  }
  return ex;
}

nlohmann::json ChainCheck::to_json() const {
  return nlohmann::json{{"knot", knot},
                        {"p", p},
                        {"knot_i_max", knot_i_max},
                        {"t", t},
                        {"cable_i_max", opt(cable_i_max)},
                        {"diagram_c_plus", diagram_c_plus},
                        {"left_holds", opt(left_holds)},
                        {"right_holds", opt(right_holds)},
                        {"status", status}};
}

ChainCheck check_chain(const Diagram& knot, int p, const KhOptions& options) {
  require_knot(knot);
  if (p < 1) throw InputError("check_chain needs p >= 1");
  ChainCheck c;
  c.knot = knot.name();
  c.p = p;
  c.diagram_c_plus = stats(knot).c_plus;
  c.knot_i_max = i_max(kh_table(knot, options));
  c.t = 2 * c.knot_i_max;
  try {
    c.cable_i_max = i_max(kh_table(cable_diagram(knot, {p, c.t}), options));
    c.left_holds = c.knot_i_max * p * p <= *c.cable_i_max;
    c.right_holds = *c.cable_i_max <= c.diagram_c_plus * p * p;
    c.status = "ok";
  } catch (const ResourceError&) {
    c.status = "resource-limit";
  }
  return c;
}

}  // namespace khbound
