#pragma once

#include <random>
#include <vector>

#include "khbound/factory.hpp"
#include "khbound/kh_table.hpp"
#include "khbound/knot_table.hpp"

namespace khtest {

/// Closure of a random braid word; both letter signs occur.
inline khbound::Diagram random_braid(std::mt19937& rng, int max_strands, int max_letters) {
  std::uniform_int_distribution<int> strands_dist(1, max_strands);
  const int strands = strands_dist(rng);
  std::vector<khbound::BraidLetter> word;
  if (strands > 1) {
    std::uniform_int_distribution<int> len_dist(0, max_letters);
    std::uniform_int_distribution<int> pos_dist(0, strands - 2);
    std::bernoulli_distribution positive(0.6);
    const int len = len_dist(rng);
    for (int k = 0; k < len; ++k) word.push_back({pos_dist(rng), positive(rng) ? 1 : -1});
  }
  return khbound::braid_closure(strands, word);
}

/// Random braid closures that happen to be knots.
inline khbound::Diagram random_knot(std::mt19937& rng, int max_strands, int max_letters) {
  while (true) {
    khbound::Diagram d = random_braid(rng, max_strands, max_letters);
    if (d.num_components() == 1) return d;
  }
}

inline const std::vector<khbound::KnotTableEntry>& bundled() {
  static const auto table = khbound::ingest_table(khbound::default_table_path());
  return table;
}

inline khbound::Diagram fixture(const std::string& name) { return khbound::resolve_target(name, bundled()); }

inline khbound::KhOptions naive() {
  khbound::KhOptions o;
  o.backend = khbound::Backend::kNaive;
  return o;
}

inline khbound::KhOptions scanned() {
  khbound::KhOptions o;
  o.backend = khbound::Backend::kScan;
  return o;
}

}  // namespace khtest
