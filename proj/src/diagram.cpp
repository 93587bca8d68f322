#include "khbound/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "khbound/errors.hpp"
#include "khbound/hash.hpp"

namespace khbound {

namespace {

bool is_in_slot(const Crossing& x, int slot) { return slot == kUnderIn || slot == over_in_slot(x); }

int partner_slot(int slot) {
  if (slot == 0) return 2;
  if (slot == 2) return 0;
  return slot == 1 ? 3 : 1;
}

}  // namespace

Diagram::Diagram(std::vector<Crossing> crossings, int circles, std::string name)
    : crossings_(std::move(crossings)), circles_(circles), name_(std::move(name)) {
  if (circles_ < 0) throw InputError("negative circle count");
  for (int x = 0; x < num_crossings(); ++x) {
    const Crossing& c = crossings_[x];
    if (c.sign != 1 && c.sign != -1) throw InputError("crossing sign must be +1 or -1");
    for (int s = 0; s < 4; ++s) {
      int label = c.edges[s];
      if (label <= 0) throw InputError("edge labels must be positive integers, got " + std::to_string(label));
      auto& target = is_in_slot(c, s) ? head_ : tail_;
      if (!target.emplace(label, std::pair{x, s}).second) {
        throw InputError("edge " + std::to_string(label) +
                         " enters or leaves crossings twice: inconsistent over/under structure");
      }
    }
  }
  for (const auto& [label, where] : head_) {
    if (!tail_.count(label)) throw InputError("edge " + std::to_string(label) + " must occur exactly twice");
  }
  for (const auto& [label, where] : tail_) {
    if (!head_.count(label)) throw InputError("edge " + std::to_string(label) + " must occur exactly twice");
  }

  std::vector<int> labels = edge_labels();
  for (int start : labels) {
    if (component_of_.count(start)) continue;
    int comp = static_cast<int>(component_edges_.size());
    std::vector<int> cycle;
    int e = start;
    do {
      component_of_[e] = comp;
      cycle.push_back(e);
      e = successor(e);
    } while (e != start);
    component_edges_.push_back(std::move(cycle));
  }
}

Diagram Diagram::with_name(std::string name) const {
  Diagram d = *this;
  d.name_ = std::move(name);
  return d;
}

std::vector<int> Diagram::edge_labels() const {
  std::vector<int> labels;
  labels.reserve(head_.size());
  for (const auto& [label, where] : head_) labels.push_back(label);
  std::sort(labels.begin(), labels.end());
  return labels;
}

int Diagram::max_label() const {
  int m = 0;
  for (const auto& [label, where] : head_) m = std::max(m, label);
  return m;
}

int Diagram::component_of_edge(int label) const {
  auto it = component_of_.find(label);
  if (it == component_of_.end()) throw InputError("unknown edge label " + std::to_string(label));
  return it->second;
}

const std::vector<int>& Diagram::component_edges(int component) const {
  static const std::vector<int> kEmpty;
  if (component < 0 || component >= num_components()) throw InputError("component index out of range");
  if (component >= static_cast<int>(component_edges_.size())) return kEmpty;
  return component_edges_[component];
}

int Diagram::under_component(int crossing) const {
  return component_of_edge(crossings_.at(crossing).edges[kUnderIn]);
}

int Diagram::over_component(int crossing) const { return component_of_edge(crossings_.at(crossing).edges[1]); }

std::pair<int, int> Diagram::head(int label) const {
  auto it = head_.find(label);
  if (it == head_.end()) throw InputError("unknown edge label " + std::to_string(label));
  return it->second;
}

std::pair<int, int> Diagram::tail(int label) const {
  auto it = tail_.find(label);
  if (it == tail_.end()) throw InputError("unknown edge label " + std::to_string(label));
  return it->second;
}

int Diagram::successor(int label) const {
  auto [x, slot] = head(label);
  return crossings_[x].edges[partner_slot(slot)];
}

Diagram Diagram::canonical() const {
  std::unordered_map<int, int> relabel;
  int next = 1;
  for (const auto& cycle : component_edges_) {
    for (int e : cycle) relabel[e] = next++;
  }
  std::vector<Crossing> out = crossings_;
  for (auto& x : out) {
    for (int& e : x.edges) e = relabel.at(e);
  }
  return Diagram(std::move(out), circles_, name_);
}

std::string Diagram::to_pd_text() const {
  std::string s;
  for (const auto& x : crossings_) {
    if (!s.empty()) s += ", ";
    s += "X[" + std::to_string(x.edges[0]) + "," + std::to_string(x.edges[1]) + "," + std::to_string(x.edges[2]) +
         "," + std::to_string(x.edges[3]) + "]";
  }
  if (circles_ > 0) {
    if (!s.empty()) s += ", ";
    s += "U" + std::to_string(circles_);
  }
  return s;
}

std::string Diagram::hash() const {
  Diagram c = canonical();
  std::string key = c.to_pd_text() + "|";
  for (const auto& x : c.crossings_) key += x.sign > 0 ? '+' : '-';
  return fnv1a_hex(key);
}

Diagram diagram_from_pd(const std::vector<std::array<int, 4>>& pd, int circles,
                        const std::optional<std::vector<int>>& signs, std::string name) {
  const int n = static_cast<int>(pd.size());
  std::vector<Crossing> crossings(n);
  std::map<int, std::vector<std::pair<int, int>>> where;
  for (int x = 0; x < n; ++x) {
    crossings[x].edges = pd[x];
    for (int s = 0; s < 4; ++s) where[pd[x][s]].emplace_back(x, s);
  }
  for (const auto& [label, occ] : where) {
    if (label <= 0) throw InputError("edge labels must be positive integers, got " + std::to_string(label));
    if (occ.size() != 2) {
      throw InputError("edge " + std::to_string(label) + " occurs " + std::to_string(occ.size()) +
                       " times; every edge must occur exactly twice");
    }
  }

  if (signs) {
    if (static_cast<int>(signs->size()) != n) throw InputError("sign override length does not match crossing count");
    for (int x = 0; x < n; ++x) crossings[x].sign = (*signs)[x];
    return Diagram(std::move(crossings), circles, std::move(name));
  }

  std::vector<int> sign(n, 0);
  auto other_end = [&](int x, int s) {
    const auto& occ = where.at(pd[x][s]);
    return occ[0] == std::pair{x, s} ? occ[1] : occ[0];
  };
  // 1: the edge at (y, t) is entering y, -1: leaving y, 0: unknown.
  auto direction_at = [&](int y, int t) {
    if (t == kUnderIn) return 1;
    if (t == kUnderOut) return -1;
    if (sign[y] == 0) return 0;
    return t == (sign[y] > 0 ? 3 : 1) ? 1 : -1;
  };
  auto propagate = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        if (sign[x] != 0) continue;
        for (int s : {1, 3}) {
          auto [y, t] = other_end(x, s);
          if (y == x && (t == 1 || t == 3)) continue;
          int dir = direction_at(y, t);
          if (dir == 0) continue;
          // Entering the far end means leaving here through slot s.
          bool leaves_here = dir > 0;
          int over_out = leaves_here ? s : (s == 1 ? 3 : 1);
          sign[x] = over_out == 1 ? 1 : -1;
          changed = true;
          break;
        }
      }
    }
  };
  propagate();
  for (int x = 0; x < n; ++x) {
    if (sign[x] != 0) continue;
    const int b = pd[x][1];
    const int d = pd[x][3];
    sign[x] = (b == d + 1 || d > b + 1) ? 1 : -1;
    propagate();
  }
  for (int x = 0; x < n; ++x) crossings[x].sign = sign[x];
  return Diagram(std::move(crossings), circles, std::move(name));
}

namespace {

Diagram parse_pd_json(std::string_view text, std::string name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed PD JSON: ") + e.what());
  }
  nlohmann::json pd_json;
  int circles = 0;
  std::optional<std::vector<int>> signs;
  if (j.is_array()) {
    pd_json = j;
  } else if (j.is_object()) {
    if (!j.contains("pd")) throw InputError("PD JSON object needs a \"pd\" field");
    pd_json = j.at("pd");
    if (j.contains("circles")) circles = j.at("circles").get<int>();
    if (j.contains("signs")) signs = j.at("signs").get<std::vector<int>>();
    if (name.empty() && j.contains("name")) name = j.at("name").get<std::string>();
  } else {
    throw InputError("PD JSON must be an array of 4-tuples or an object");
  }
  std::vector<std::array<int, 4>> pd;
  for (const auto& entry : pd_json) {
    if (!entry.is_array() || entry.size() != 4) throw InputError("PD JSON entries must be 4-tuples");
    std::array<int, 4> t{};
    for (int s = 0; s < 4; ++s) {
      if (!entry[s].is_number_integer()) throw InputError("PD JSON labels must be integers");
      t[s] = entry[s].get<int>();
    }
    pd.push_back(t);
  }
  return diagram_from_pd(pd, circles, signs, std::move(name));
}

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  void skip_separators() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ',')) ++pos_;
  }
  bool done() {
    skip_separators();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip_spaces();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int number() {
    skip_spaces();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  bool consume_prefix(std::string_view p) {
    skip_spaces();
    if (text_.substr(pos_, p.size()) == p) {
      pos_ += p.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("malformed PD text at offset " + std::to_string(pos_) + ": " + what);
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  void skip_spaces() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Diagram parse_pd(std::string_view text, std::string name) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InputError("empty PD text");
  if (text[first] == '[' || text[first] == '{') return parse_pd_json(text, std::move(name));

  PdLexer lex(text);
  bool wrapped = lex.consume_prefix("PD[");
  std::vector<std::array<int, 4>> pd;
  int circles = 0;
  while (!lex.done()) {
    char c = lex.peek();
    if (wrapped && c == ']') {
      lex.advance();
      if (!lex.done()) lex.fail("trailing text after PD[...]");
      wrapped = false;
      break;
    }
    if (c == 'X') {
      lex.advance();
      lex.expect('[');
      std::array<int, 4> t{};
      for (int s = 0; s < 4; ++s) {
        if (s > 0) lex.expect(',');
        t[s] = lex.number();
      }
      lex.expect(']');
      pd.push_back(t);
    } else if (c == 'U') {
      lex.advance();
      int n = lex.number();
      if (n < 1) lex.fail("U<n> needs n >= 1");
      circles += n;
    } else {
      lex.fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (wrapped) lex.fail("unterminated PD[");
  if (pd.empty() && circles == 0) throw InputError("PD text has no crossings and no circles");
  return diagram_from_pd(pd, circles, std::nullopt, std::move(name));
}

DiagramStats stats(const Diagram& d) {
  DiagramStats s;
  for (const auto& x : d.crossings()) (x.sign > 0 ? s.c_plus : s.c_minus)++;
  s.writhe = s.c_plus - s.c_minus;
  s.n_components = d.num_components();
  return s;
}

int linking_number(const Diagram& d, int a, int b) {
  const int n = d.num_components();
  if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("component index out of range");
  if (a == b) throw InputError("linking number needs two distinct components");
  int total = 0;
  for (int x = 0; x < d.num_crossings(); ++x) {
    int u = d.under_component(x);
    int o = d.over_component(x);
    if ((u == a && o == b) || (u == b && o == a)) total += d.crossings()[x].sign;
  }
  return total / 2;
}

Diagram mirror(const Diagram& d) {
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (const auto& x : d.crossings()) {
    const auto& e = x.edges;
    Crossing m;
    // The old over-strand becomes the under-strand, entered at its incoming end.
    m.edges = x.sign > 0 ? std::array{e[3], e[0], e[1], e[2]} : std::array{e[1], e[2], e[3], e[0]};
    m.sign = -x.sign;
    out.push_back(m);
  }
  std::string name = d.name().empty() ? std::string() : "m" + d.name();
  return Diagram(std::move(out), d.circles(), std::move(name));
}

Diagram reverse_component(const Diagram& d, int k) {
  if (k < 0 || k >= d.num_components()) throw InputError("component index out of range");
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (int i = 0; i < d.num_crossings(); ++i) {
    Crossing x = d.crossings()[i];
    const bool under = d.under_component(i) == k;
    const bool over = d.over_component(i) == k;
    if (under) x.edges = {x.edges[2], x.edges[3], x.edges[0], x.edges[1]};
    if (under != over) x.sign = -x.sign;
    out.push_back(x);
  }
  return Diagram(std::move(out), d.circles(), d.name());
}

}  // namespace khbound
