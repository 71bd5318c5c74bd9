#include "tfp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include <Eigen/Core>

#include "strided.hpp"
#include "tfp/errors.hpp"

namespace tfp {

namespace {

double ipow(int N, std::size_t e) { return std::pow(static_cast<double>(N), static_cast<double>(e)); }

struct Node {
  std::vector<int> legs;
  int min_vertex;
  int component;
};

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

ContractionPlan plan_contraction(const CombMap& m, int N) {
  if (N < 1) throw DomainError("plan_contraction: N must be positive");
  ContractionPlan plan;
  plan.N = N;
  plan.gamma = m.gamma();
  std::vector<int> edge_of(static_cast<std::size_t>(m.half_edges()));
  {
    int e = 0;
    for (int h = 0; h < m.half_edges(); ++h)
      if (h < m.partner(h)) edge_of[static_cast<std::size_t>(h)] = edge_of[static_cast<std::size_t>(m.partner(h))] = e++;
  }
  std::vector<Node> nodes;
  std::vector<char> alive;
  for (int v = 0; v < m.vertices(); ++v) {
    std::vector<int> legs;
    for (int h : m.cycles()[static_cast<std::size_t>(v)]) legs.push_back(edge_of[static_cast<std::size_t>(h)]);
    plan.vertex_degree.push_back(m.degree(v));
    plan.vertex_legs.push_back(legs);
    nodes.push_back({legs, v, m.vertex_component()[static_cast<std::size_t>(v)]});
    alive.push_back(1);
    plan.peak_entries = std::max(plan.peak_entries, static_cast<std::size_t>(ipow(N, legs.size())));
  }
  auto add = [&](ContractionStep st, Node nd) {
    st.result = static_cast<int>(nodes.size());
    st.result_legs = nd.legs;
    st.result_entries = static_cast<std::size_t>(ipow(N, nd.legs.size()));
    plan.peak_entries = std::max(plan.peak_entries, st.result_entries);
    plan.flops += st.flops;
    plan.steps.push_back(std::move(st));
    nodes.push_back(std::move(nd));
    alive.push_back(1);
    return static_cast<int>(nodes.size()) - 1;
  };

  // self-loops
  for (int v = 0; v < m.vertices(); ++v) {
    const auto& legs = nodes[static_cast<std::size_t>(v)].legs;
    std::vector<int> once;
    std::size_t twice = 0;
    for (int e : legs) {
      auto c = std::count(legs.begin(), legs.end(), e);
      if (c == 1) once.push_back(e);
      else ++twice;
    }
    if (twice == 0) continue;
    ContractionStep st;
    st.kind = ContractionStep::Kind::trace;
    st.a = v;
    st.flops = ipow(N, once.size() + twice / 2);
    alive[static_cast<std::size_t>(v)] = 0;
    add(std::move(st), {once, v, nodes[static_cast<std::size_t>(v)].component});
  }

  for (int comp = 0; comp < m.gamma(); ++comp) {
    while (true) {
      std::vector<int> members;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (alive[i] && nodes[i].component == comp) members.push_back(static_cast<int>(i));
      if (members.size() == 1) {
        plan.scalars.push_back(members[0]);
        break;
      }
      std::tuple<std::size_t, int, int> best{SIZE_MAX, 0, 0};
      int bx = -1, by = -1;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const auto& A = nodes[static_cast<std::size_t>(members[i])];
          const auto& B = nodes[static_cast<std::size_t>(members[j])];
          std::size_t shared = 0;
          for (int e : A.legs) shared += contains(B.legs, e) ? 1 : 0;
          if (shared == 0) continue;
          std::size_t out = A.legs.size() + B.legs.size() - 2 * shared;
          auto key = std::make_tuple(out, std::min(A.min_vertex, B.min_vertex), std::max(A.min_vertex, B.min_vertex));
          if (key < best) {
            best = key;
            bx = members[i];
            by = members[j];
          }
        }
      if (bx < 0) throw MapError("plan_contraction: component without shared legs");
      const auto& A = nodes[static_cast<std::size_t>(bx)];
      const auto& B = nodes[static_cast<std::size_t>(by)];
      std::vector<int> legs;
      std::size_t shared = 0;
      for (int e : A.legs) {
        if (contains(B.legs, e)) ++shared;
        else legs.push_back(e);
      }
      for (int e : B.legs)
        if (!contains(A.legs, e)) legs.push_back(e);
      ContractionStep st;
      st.kind = ContractionStep::Kind::merge;
      st.a = bx;
      st.b = by;
      st.flops = ipow(N, legs.size() + shared);
      Node nd{legs, std::min(A.min_vertex, B.min_vertex), comp};
      alive[static_cast<std::size_t>(bx)] = alive[static_cast<std::size_t>(by)] = 0;
      add(std::move(st), std::move(nd));
    }
  }
  return plan;
}

namespace {

struct Stored {
  std::vector<double> data;
  std::vector<int> legs;
};

// Reorders `s` so its legs read `order`.
std::vector<double> reorder(const Stored& s, const std::vector<int>& order, int N) {
  if (order == s.legs) return s.data;
  auto st = detail::strides(static_cast<int>(s.legs.size()), N);
  std::vector<std::size_t> src;
  for (int e : order) {
    auto pos = std::find(s.legs.begin(), s.legs.end(), e) - s.legs.begin();
    src.push_back(st[static_cast<std::size_t>(pos)]);
  }
  std::vector<double> out(s.data.size());
  detail::gather(s.data, out, static_cast<int>(order.size()), N, src, false);
  return out;
}

}  // namespace

double execute_plan(const ContractionPlan& plan, const std::vector<const DenseTensor*>& tensors,
                    ExecutionTrace* trace) {
  const int N = plan.N;
  const std::size_t nv = plan.vertex_legs.size();
  if (tensors.size() != nv) throw DomainError("eval: one tensor per vertex required");
  std::vector<Stored> store(nv + plan.steps.size());
  std::vector<const double*> vdata(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const DenseTensor* t = tensors[v];
    if (!t || t->order() != plan.vertex_degree[v])
      throw DomainError("eval: tensor order differs from vertex degree at vertex " + std::to_string(v));
    if (t->dim() != N) throw DomainError("eval: tensor dimension differs from plan dimension");
  }
  auto fetch = [&](int id) -> Stored {
    if (static_cast<std::size_t>(id) < nv)
      return {tensors[static_cast<std::size_t>(id)]->data(), plan.vertex_legs[static_cast<std::size_t>(id)]};
    return std::move(store[static_cast<std::size_t>(id)]);
  };
  for (const auto& st : plan.steps) {
    Stored out;
    out.legs = st.result_legs;
    if (st.kind == ContractionStep::Kind::trace) {
      Stored a = fetch(st.a);
      // gather onto (kept legs, one copy of each traced leg), then sum the tail
      std::vector<int> traced;
      for (int e : a.legs)
        if (!contains(st.result_legs, e) && !contains(traced, e)) traced.push_back(e);
      auto strd = detail::strides(static_cast<int>(a.legs.size()), N);
      std::vector<std::size_t> src;
      for (int e : st.result_legs)
        src.push_back(strd[static_cast<std::size_t>(std::find(a.legs.begin(), a.legs.end(), e) - a.legs.begin())]);
      for (int e : traced) {
        std::size_t s = 0;
        for (std::size_t k = 0; k < a.legs.size(); ++k)
          if (a.legs[k] == e) s += strd[k];
        src.push_back(s);
      }
      const int total = static_cast<int>(st.result_legs.size() + traced.size());
      std::vector<double> full(static_cast<std::size_t>(ipow(N, static_cast<std::size_t>(total))));
      detail::gather(a.data, full, total, N, src, false);
      const auto inner = static_cast<std::size_t>(ipow(N, traced.size()));
      out.data.assign(full.size() / inner, 0.0);
      for (std::size_t i = 0; i < out.data.size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < inner; ++j) s += full[i * inner + j];
        out.data[i] = s;
      }
    } else {
      Stored a = fetch(st.a), b = fetch(st.b);
      std::vector<int> fa, sh, fb;
      for (int e : a.legs) (contains(b.legs, e) ? sh : fa).push_back(e);
      for (int e : b.legs)
        if (!contains(a.legs, e)) fb.push_back(e);
      std::vector<int> oa = fa, ob = sh;
      oa.insert(oa.end(), sh.begin(), sh.end());
      ob.insert(ob.end(), fb.begin(), fb.end());
      std::vector<double> da = reorder(a, oa, N), db = reorder(b, ob, N);
      const auto ra = static_cast<Eigen::Index>(ipow(N, fa.size()));
      const auto rs = static_cast<Eigen::Index>(ipow(N, sh.size()));
      const auto rb = static_cast<Eigen::Index>(ipow(N, fb.size()));
      using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      Eigen::Map<const RowMat> Am(da.data(), ra, rs), Bm(db.data(), rs, rb);
      out.data.resize(static_cast<std::size_t>(ra * rb));
      Eigen::Map<RowMat> Cm(out.data.data(), ra, rb);
      Cm.noalias() = Am * Bm;
    }
    if (trace) trace->step_entries.push_back(out.data.size());
    store[static_cast<std::size_t>(st.result)] = std::move(out);
  }
  double r = 1.0;
  for (int id : plan.scalars) {
    Stored s = fetch(id);
    if (s.data.size() != 1) throw DomainError("eval: contraction did not reduce to a scalar");
    r *= s.data[0] / static_cast<double>(N);
  }
  return r;
}

double eval_trace_invariant(const CombMap& m, const std::vector<const DenseTensor*>& tensors) {
  if (tensors.empty()) throw DomainError("eval: no tensors");
  return execute_plan(plan_contraction(m, tensors.front()->dim()), tensors);
}

double eval_trace_invariant(const CombMap& m, const DenseTensor& T) {
  std::vector<const DenseTensor*> ts(static_cast<std::size_t>(m.vertices()), &T);
  return eval_trace_invariant(m, ts);
}

double eval_naive(const CombMap& m, const std::vector<const DenseTensor*>& tensors) {
  if (static_cast<int>(tensors.size()) != m.vertices()) throw DomainError("eval: one tensor per vertex required");
  const int N = tensors.front()->dim();
  for (int v = 0; v < m.vertices(); ++v)
    if (tensors[static_cast<std::size_t>(v)]->order() != m.degree(v) || tensors[static_cast<std::size_t>(v)]->dim() != N)
      throw DomainError("eval: tensor shape differs from vertex degree");
  std::vector<int> edge_of(static_cast<std::size_t>(m.half_edges()));
  int E = 0;
  for (int h = 0; h < m.half_edges(); ++h)
    if (h < m.partner(h)) edge_of[static_cast<std::size_t>(h)] = edge_of[static_cast<std::size_t>(m.partner(h))] = E++;
  if (ipow(N, static_cast<std::size_t>(E)) > 1e8) throw ResourceError("eval_naive: too many index assignments");
  std::vector<int> val(static_cast<std::size_t>(E), 0);
  std::vector<int> idx;
  double total = 0;
  while (true) {
    double prod = 1;
    for (int v = 0; v < m.vertices() && prod != 0; ++v) {
      idx.clear();
      for (int h : m.cycles()[static_cast<std::size_t>(v)]) idx.push_back(val[static_cast<std::size_t>(edge_of[static_cast<std::size_t>(h)])]);
      prod *= tensors[static_cast<std::size_t>(v)]->at(idx);
    }
    total += prod;
    int k = E - 1;
    while (k >= 0 && ++val[static_cast<std::size_t>(k)] == N) val[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return total / std::pow(static_cast<double>(N), m.gamma());
}

const ContractionPlan& PlanCache::get(const CombMap& m, int N) {
  Key key{m.cycles(), m.pairing(), N};
  std::lock_guard lock(mu_);
  auto it = plans_.find(key);
  if (it == plans_.end()) it = plans_.emplace(std::move(key), std::make_unique<ContractionPlan>(plan_contraction(m, N))).first;
  return *it->second;
}

}  // namespace tfp
