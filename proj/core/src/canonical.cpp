#include "tfp/canonical.hpp"

#include <algorithm>
#include <charconv>

#include "tfp/errors.hpp"

namespace tfp {

namespace {

struct Traversal {
  std::vector<int> order;  // old label per new label
  std::vector<int> label;  // new label per old label, -1 if unreached
  std::vector<int> degrees;
};

Traversal traverse(const CombMap& m, int root) {
  Traversal t;
  t.label.assign(static_cast<std::size_t>(m.half_edges()), -1);
  auto discover = [&](int h) {
    int v = m.vertex_of(h), j0 = m.position_of(h), d = m.degree(v);
    for (int j = 0; j < d; ++j) {
      int x = m.at(v, j0 + j);
      t.label[static_cast<std::size_t>(x)] = static_cast<int>(t.order.size());
      t.order.push_back(x);
    }
    t.degrees.push_back(d);
  };
  discover(root);
  for (std::size_t l = 0; l < t.order.size(); ++l) {
    int a = m.partner(t.order[l]);
    if (t.label[static_cast<std::size_t>(a)] == -1) discover(a);
  }
  return t;
}

std::vector<int> component_words(const CombMap& m, const Traversal& t) {
  std::vector<int> w;
  w.push_back(static_cast<int>(t.degrees.size()));
  w.insert(w.end(), t.degrees.begin(), t.degrees.end());
  for (int h : t.order) w.push_back(t.label[static_cast<std::size_t>(m.partner(h))]);
  return w;
}

}  // namespace

CanonicalCode canonical_code(const CombMap& m) {
  CanonicalCode code;
  if (m.half_edges() == 0) return code;
  code.words = component_words(m, traverse(m, 0));
  if (m.gamma() == 1) return code;

  const int root_comp = m.vertex_component()[0];
  std::vector<std::vector<int>> best(static_cast<std::size_t>(m.gamma()));
  for (int h = 0; h < m.half_edges(); ++h) {
    int c = m.vertex_component()[static_cast<std::size_t>(m.vertex_of(h))];
    if (c == root_comp) continue;
    auto w = component_words(m, traverse(m, h));
    auto& b = best[static_cast<std::size_t>(c)];
    if (b.empty() || w < b) b = std::move(w);
  }
  best.erase(best.begin() + root_comp);
  std::sort(best.begin(), best.end());
  for (const auto& b : best) code.words.insert(code.words.end(), b.begin(), b.end());
  return code;
}

CombMap canonical_form(const CombMap& m) {
  if (m.gamma() != 1) throw MapError("canonical_form: map must be connected");
  Traversal t = traverse(m, 0);
  std::vector<int> alpha(t.order.size());
  for (std::size_t l = 0; l < t.order.size(); ++l)
    alpha[l] = t.label[static_cast<std::size_t>(m.partner(t.order[l]))];
  return CombMap::from_degrees(t.degrees, std::move(alpha));
}

CombMap map_from_code(const CanonicalCode& c) {
  std::vector<int> degrees, alpha;
  std::size_t i = 0;
  const auto& w = c.words;
  while (i < w.size()) {
    const int nv = w[i++];
    if (nv < 1 || i + static_cast<std::size_t>(nv) > w.size()) throw MapError("map_from_code: truncated code");
    const int base = static_cast<int>(alpha.size());
    int m = 0;
    for (int v = 0; v < nv; ++v) {
      if (w[i] < 1) throw MapError("map_from_code: degrees must be positive");
      m += w[i];
      degrees.push_back(w[i++]);
    }
    if (i + static_cast<std::size_t>(m) > w.size()) throw MapError("map_from_code: truncated code");
    for (int h = 0; h < m; ++h) {
      const int a = w[i++];
      if (a < 0 || a >= m) throw MapError("map_from_code: pairing label out of range");
      alpha.push_back(base + a);
    }
  }
  return CombMap::from_degrees(degrees, std::move(alpha));
}

long long rooted_group_size(int p, int n) {
  long long g = 1;
  for (int i = 2; i < n; ++i) g *= i;
  for (int i = 1; i < n; ++i) g *= p;
  return g;
}

std::string CanonicalCode::str() const {
  std::string s;
  std::size_t i = 0;
  while (i < words.size()) {
    if (!s.empty()) s += '/';
    int nv = words[i++];
    int m = 0;
    for (int v = 0; v < nv; ++v) {
      if (v) s += ',';
      m += words[i];
      s += std::to_string(words[i++]);
    }
    s += ':';
    for (int h = 0; h < m; ++h) {
      if (h) s += ',';
      s += std::to_string(words[i++]);
    }
  }
  return s;
}

CanonicalCode CanonicalCode::parse(std::string_view s) {
  auto ints = [](std::string_view part) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < part.size()) {
      std::size_t j = part.find(',', i);
      if (j == std::string_view::npos) j = part.size();
      int v = 0;
      auto [ptr, ec] = std::from_chars(part.data() + i, part.data() + j, v);
      if (ec != std::errc() || ptr != part.data() + j) throw MapError("bad canonical code");
      out.push_back(v);
      i = j + 1;
    }
    return out;
  };
  CanonicalCode c;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('/', i);
    if (j == std::string_view::npos) j = s.size();
    auto comp = s.substr(i, j - i);
    auto colon = comp.find(':');
    if (colon == std::string_view::npos) throw MapError("bad canonical code");
    auto degs = ints(comp.substr(0, colon));
    auto alpha = ints(comp.substr(colon + 1));
    c.words.push_back(static_cast<int>(degs.size()));
    c.words.insert(c.words.end(), degs.begin(), degs.end());
    c.words.insert(c.words.end(), alpha.begin(), alpha.end());
    i = j + 1;
  }
  return c;
}

}  // namespace tfp
