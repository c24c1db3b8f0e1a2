#include "kmroots/levi.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kmroots {

std::size_t root_count(const DynkinComponent& c) {
  const std::size_t n = c.rank;
  switch (c.family) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

std::size_t FiniteType::total_rank() const {
  std::size_t r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::size_t FiniteType::root_count() const {
  std::size_t r = 0;
  for (const auto& c : components) r += kmroots::root_count(c);
  return r;
}

std::string FiniteType::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (k) out += 'x';
    out += components[k].family;
    out += std::to_string(components[k].rank);
  }
  return out;
}

namespace {

[[noreturn]] void not_finite(const std::string& why) {
  throw Error(ErrorKind::NotFiniteType, why);
}

DynkinComponent classify_component(const IntMatrix& c, const std::vector<std::size_t>& nodes) {
  const std::size_t m = nodes.size();
  if (m == 1) return {'A', 1};

  std::vector<std::vector<std::size_t>> adj(m);
  std::size_t edges = 0, doubles = 0, triples = 0;
  std::pair<std::size_t, std::size_t> double_edge{0, 0};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const Coeff x = c[nodes[a]][nodes[b]], y = c[nodes[b]][nodes[a]];
      if (x == 0) continue;
      const Coeff prod = x * y;
      if (prod > 3) not_finite("edge with label product " + std::to_string(prod));
      adj[a].push_back(b);
      adj[b].push_back(a);
      ++edges;
      if (prod == 2) {
        ++doubles;
        double_edge = {a, b};
      }
      if (prod == 3) ++triples;
    }
  if (edges != m - 1) not_finite("diagram contains a cycle");

  std::size_t max_degree = 0, branch = m;
  for (std::size_t a = 0; a < m; ++a) {
    max_degree = std::max(max_degree, adj[a].size());
    if (adj[a].size() == 3) {
      if (branch != m) not_finite("two branch nodes");
      branch = a;
    }
  }
  if (max_degree > 3) not_finite("node of degree > 3");

  if (triples) {
    if (m == 2) return {'G', 2};
    not_finite("triple edge in a diagram of rank > 2");
  }
  if (doubles) {
    if (doubles > 1 || branch != m) not_finite("multiple edges off a simple chain");
    if (m == 2) return {'B', 2};
    auto [a, b] = double_edge;
    const bool a_leaf = adj[a].size() == 1, b_leaf = adj[b].size() == 1;
    if (!a_leaf && !b_leaf) {
      if (m == 4) return {'F', 4};
      not_finite("interior double edge in rank " + std::to_string(m));
    }
    const std::size_t leaf = a_leaf ? a : b, inner = a_leaf ? b : a;
    // |<s_inner, s_leaf^vee>| = 2 means the leaf is the short root.
    const bool leaf_short = c[nodes[leaf]][nodes[inner]] == -2;
    return {leaf_short ? 'B' : 'C', m};
  }
  if (branch == m) return {'A', m};

  std::vector<std::size_t> arms;
  for (std::size_t start : adj[branch]) {
    std::size_t len = 1, prev = branch, at = start;
    while (adj[at].size() == 2) {
      const std::size_t nxt = adj[at][0] == prev ? adj[at][1] : adj[at][0];
      prev = at;
      at = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', m};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', m};
  not_finite("branched diagram outside D and E");
}

}  // namespace

FiniteType classify_cartan_matrix(const IntMatrix& c) {
  FiniteType out;
  if (c.empty()) return out;
  std::vector<GcmViolation> bad;
  try {
    bad = gcm_violations(c);
  } catch (const Error& e) {
    throw Error(ErrorKind::UnrecognizedDiagram, e.what());
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "Cartan matrix is not a GCM (" << to_string(bad.front().kind) << " at ("
       << bad.front().row + 1 << "," << bad.front().col + 1 << "))";
    throw Error(ErrorKind::UnrecognizedDiagram, os.str());
  }

  const std::size_t k = c.size();
  std::vector<int> comp(k, -1);
  int next = 0;
  for (std::size_t s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> nodes{s}, stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < k; ++v)
        if (v != u && c[u][v] != 0 && comp[v] < 0) {
          comp[v] = next;
          nodes.push_back(v);
          stack.push_back(v);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    out.components.push_back(classify_component(c, nodes));
    ++next;
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

std::size_t rational_rank(const std::vector<std::vector<Coeff>>& rows_in) {
  auto rows = rows_in;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Coeff g = std::gcd(rows[rank][col], rows[r][col]);
      const Coeff fr = rows[rank][col] / g, fo = rows[r][col] / g;
      Coeff content = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        rows[r][c] = detail::checked_sub(detail::checked_mul(rows[r][c], fr),
                                         detail::checked_mul(rows[rank][c], fo));
        content = std::gcd(content, rows[r][c]);
      }
      if (content > 1)
        for (auto& x : rows[r]) x /= content;
    }
    ++rank;
  }
  return rank;
}

std::pair<RootSet, RootSet> split(const RootSet& psi) {
  std::vector<RealRoot> s, n;
  for (const auto& r : psi) (psi.contains(-r.root) ? s : n).push_back(r);
  return {RootSet(std::move(s)), RootSet(std::move(n))};
}

std::vector<RealRoot> simple_system(const RootSet& psi_s, const RootSlice& slice) {
  const GCM& gcm = slice.gcm();
  if (psi_s.empty()) throw Error(ErrorKind::PreconditionViolated, "empty root subsystem");
  for (const auto& r : psi_s)
    if (!psi_s.contains(-r.root))
      throw Error(ErrorKind::PreconditionViolated, "subsystem is not symmetric");
  if (is_closed(psi_s, slice)) throw Error(ErrorKind::PreconditionViolated, "subsystem not closed");

  std::vector<RealRoot> positive;
  for (const auto& r : psi_s)
    if (is_positive(r.root)) positive.push_back(r);  // already in RootOrder

  std::unordered_set<RootVec> pos_keys;
  for (const auto& r : positive) pos_keys.insert(r.root);

  std::vector<RealRoot> simples;
  // Expansion of each positive element over the simples found so far; a
  // decomposable element has both summands at strictly lower height.
  std::unordered_map<RootVec, std::vector<Coeff>> expansion;
  std::vector<std::pair<RootVec, RootVec>> decomposition(positive.size());
  std::vector<bool> is_simple(positive.size(), true);
  for (std::size_t k = 0; k < positive.size(); ++k) {
    for (std::size_t j = 0; j < k && is_simple[k]; ++j) {
      RootVec rest = positive[k].root - positive[j].root;
      if (pos_keys.contains(rest)) {
        is_simple[k] = false;
        decomposition[k] = {positive[j].root, rest};
      }
    }
    if (is_simple[k]) simples.push_back(positive[k]);
  }
  const std::size_t s = simples.size();
  for (std::size_t k = 0, si = 0; k < positive.size(); ++k) {
    std::vector<Coeff> e(s, 0);
    if (is_simple[k]) {
      e[si++] = 1;
    } else {
      const auto& a = expansion.at(decomposition[k].first);
      const auto& b = expansion.at(decomposition[k].second);
      for (std::size_t t = 0; t < s; ++t) e[t] = a[t] + b[t];
    }
    expansion.emplace(positive[k].root, std::move(e));
  }

  // The expansions are nonnegative by construction; check they reproduce
  // each root and that the simples are independent and pair nonpositively.
  for (const auto& p : positive) {
    const auto& e = expansion.at(p.root);
    RootVec sum(gcm.rank());
    for (std::size_t t = 0; t < s; ++t) sum += e[t] * simples[t].root;
    if (sum != p.root) throw std::logic_error("simple expansion mismatch at " + to_string(p.root));
  }
  std::vector<std::vector<Coeff>> rows;
  for (const auto& r : simples) rows.push_back(r.root.coeffs());
  if (rational_rank(rows) != s) throw std::logic_error("simple roots are linearly dependent");
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (i != j && pairing(simples[j].root, simples[i].coroot, gcm) > 0)
        throw std::logic_error("simple roots pair positively");
  return simples;
}

FiniteType cartan_type(const RootSet& psi_s, const RootSlice& slice) {
  const auto simples = simple_system(psi_s, slice);
  const std::size_t k = simples.size();
  IntMatrix c(k, std::vector<Coeff>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      c[i][j] = pairing(simples[j].root, simples[i].coroot, slice.gcm());
  FiniteType t = classify_cartan_matrix(c);
  if (t.root_count() != psi_s.size())
    not_finite("type " + t.to_string() + " has " + std::to_string(t.root_count()) +
               " roots, subsystem has " + std::to_string(psi_s.size()));
  return t;
}

std::size_t coroot_span_rank(const RootSet& psi_s) {
  std::vector<std::vector<Coeff>> rows;
  for (const auto& r : psi_s) rows.push_back(r.coroot.coeffs());
  return rational_rank(rows);
}

LeviReport verify_levi(const RootSet& psi, const RootSlice& slice) {
  if (auto w = is_closed(psi, slice))
    throw Error(ErrorKind::NotClosedInput, to_string(w->a.root) + " + " + to_string(w->b.root) +
                                               " = " + to_string(w->sum) + " is missing");
  LeviReport rep;
  std::tie(rep.psi_s, rep.psi_n) = split(psi);

  if (auto w = is_closed(rep.psi_s, slice))
    rep.symmetric_closed = {false, "sum " + to_string(w->sum) + " missing from Psi_s"};
  else
    rep.symmetric_closed = {true, ""};

  if (auto w = is_ideal(rep.psi_n, psi, slice))
    rep.nilradical_ideal = {false, to_string(w->a.root) + " + " + to_string(w->b.root) +
                                       " leaves Psi_n"};
  else
    rep.nilradical_ideal = {true, ""};

  try {
    const auto levels = pronilpotent_filtration(rep.psi_n, rep.psi_n.max_abs_height(), slice);
    rep.filtration_levels = levels.size();
    rep.nilradical_filtered = {true, ""};
  } catch (const std::exception& e) {
    rep.nilradical_filtered = {false, e.what()};
  }

  rep.coroot_rank = coroot_span_rank(rep.psi_s);
  if (rep.psi_s.empty()) {
    rep.classified = {true, ""};
  } else {
    try {
      rep.type = cartan_type(rep.psi_s, slice);
      if (rep.type.total_rank() != rep.coroot_rank)
        rep.classified = {false, "coroot rank " + std::to_string(rep.coroot_rank) +
                                     " differs from type rank " +
                                     std::to_string(rep.type.total_rank())};
      else
        rep.classified = {true, ""};
    } catch (const std::exception& e) {
      rep.classified = {false, e.what()};
    }
  }
  return rep;
}

}  // namespace kmroots
