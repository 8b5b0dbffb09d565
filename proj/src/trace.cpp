#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "qho/nodal.hpp"

namespace qho {

namespace {

struct Node {
  Point p;
  std::uint64_t edge = 0;
  int nbr[2] = {-1, -1};
  int degree = 0;
};

enum class EndKind { Boundary, Junction };

struct ChainEnd {
  EndKind kind = EndKind::Boundary;
  int vertex = -1;
  // partner end after splicing through the vertex
  int partner_chain = -1;
  int partner_side = -1;
};

struct Chain {
  std::vector<Point> points;
  bool cyclic = false;
  ChainEnd ends[2];
};

class Linker {
 public:
  explicit Linker(const SignGrid& g) : g_(g), horizontal_(static_cast<std::uint64_t>(g.nx - 1) * g.ny) {}

  std::uint64_t h_edge(int i, int j) const { return static_cast<std::uint64_t>(j) * (g_.nx - 1) + i; }
  std::uint64_t v_edge(int i, int j) const { return horizontal_ + static_cast<std::uint64_t>(j) * g_.nx + i; }

  bool on_outer_boundary(std::uint64_t e) const {
    if (e < horizontal_) {
      const auto j = static_cast<int>(e / (g_.nx - 1));
      return j == 0 || j == g_.ny - 1;
    }
    const auto i = static_cast<int>((e - horizontal_) % g_.nx);
    return i == 0 || i == g_.nx - 1;
  }

  Point crossing(std::uint64_t e) const {
    int i0, j0, i1, j1;
    if (e < horizontal_) {
      j0 = j1 = static_cast<int>(e / (g_.nx - 1));
      i0 = static_cast<int>(e % (g_.nx - 1));
      i1 = i0 + 1;
    } else {
      const std::uint64_t k = e - horizontal_;
      j0 = static_cast<int>(k / g_.nx);
      j1 = j0 + 1;
      i0 = i1 = static_cast<int>(k % g_.nx);
    }
    const double a = g_.value(i0, j0);
    const double b = g_.value(i1, j1);
    const double t = (a == b) ? 0.5 : a / (a - b);
    const Point pa = g_.center(i0, j0);
    const Point pb = g_.center(i1, j1);
    return {pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)};
  }

  int node(std::uint64_t e) {
    auto [it, inserted] = index_.try_emplace(e, static_cast<int>(nodes_.size()));
    if (inserted) {
      Node n;
      n.p = crossing(e);
      n.edge = e;
      nodes_.push_back(n);
    }
    return it->second;
  }

  void connect(std::uint64_t a, std::uint64_t b) {
    const int na = node(a);
    const int nb = node(b);
    Node& A = nodes_[static_cast<std::size_t>(na)];
    Node& B = nodes_[static_cast<std::size_t>(nb)];
    if (A.degree >= 2 || B.degree >= 2) throw TopologyError("marching squares produced a branch point");
    A.nbr[A.degree++] = nb;
    B.nbr[B.degree++] = na;
  }

  std::vector<Node>& nodes() { return nodes_; }

 private:
  const SignGrid& g_;
  std::uint64_t horizontal_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<Node> nodes_;
};

// Walk from `start` until a node of degree 1 or back to start.
std::vector<int> walk(const std::vector<Node>& nodes, int start, std::vector<char>& seen) {
  std::vector<int> path{start};
  seen[static_cast<std::size_t>(start)] = 1;
  int prev = -1;
  int cur = start;
  while (true) {
    const Node& n = nodes[static_cast<std::size_t>(cur)];
    int next = -1;
    for (int k = 0; k < n.degree; ++k)
      if (n.nbr[k] != prev && !seen[static_cast<std::size_t>(n.nbr[k])]) {
        next = n.nbr[k];
        break;
      }
    if (next < 0) break;
    path.push_back(next);
    seen[static_cast<std::size_t>(next)] = 1;
    prev = cur;
    cur = next;
  }
  return path;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
      a = parent_[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }
  int components() {
    int c = 0;
    for (int k = 0; k < static_cast<int>(parent_.size()); ++k) c += find(k) == k;
    return c;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

int CurveSet::closed_count() const {
  return static_cast<int>(std::count_if(curves.begin(), curves.end(), [](const NodalCurve& c) { return c.closed; }));
}

int CurveSet::open_count() const { return static_cast<int>(curves.size()) - closed_count(); }

int CurveSet::euler_domain_count() const {
  const int finite_vertices = static_cast<int>(vertices.size());
  const bool has_infinity = open_count() > 0;
  const int infinity = finite_vertices;
  int extra = 0;
  for (const auto& c : curves)
    if (c.closed && c.vertex_visits.empty()) ++extra;
  const int total_vertices = finite_vertices + (has_infinity ? 1 : 0) + extra;

  UnionFind uf(total_vertices);
  int edges = 0;
  int next_extra = finite_vertices + (has_infinity ? 1 : 0);
  for (const auto& c : curves) {
    const auto& v = c.vertex_visits;
    if (c.closed) {
      if (v.empty()) {
        ++edges;
        ++next_extra;
        continue;
      }
      edges += static_cast<int>(v.size());
      for (std::size_t k = 1; k < v.size(); ++k) uf.unite(v[k - 1], v[k]);
    } else {
      edges += static_cast<int>(v.size()) + 1;
      for (int vi : v) uf.unite(vi, infinity);
    }
  }
  return edges - total_vertices + uf.components() + 1;
}

CurveSet trace_nodal_curves(const SignGrid& g, const SeparableField& field,
                            const std::vector<CriticalZero>& critical_zeros) {
  CurveSet out;
  out.extent = {g.center(0, 0).x, g.center(g.nx - 1, 0).x, g.center(0, 0).y, g.center(0, g.ny - 1).y};
  for (const auto& z : critical_zeros) out.vertices.push_back(z.location);
  if (g.exclusions.size() != critical_zeros.size())
    throw std::invalid_argument("trace_nodal_curves: grid exclusions do not match the critical zeros");

  Linker link(g);
  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      const int s0 = g.sign(i, j);
      const int s1 = g.sign(i + 1, j);
      const int s2 = g.sign(i + 1, j + 1);
      const int s3 = g.sign(i, j + 1);
      if (s0 == 0 || s1 == 0 || s2 == 0 || s3 == 0) continue;
      const bool bottom = s0 != s1;
      const bool right = s1 != s2;
      const bool top = s2 != s3;
      const bool left = s3 != s0;
      const int count = bottom + right + top + left;
      if (count == 0) continue;
      const auto eb = link.h_edge(i, j);
      const auto er = link.v_edge(i + 1, j);
      const auto et = link.h_edge(i, j + 1);
      const auto el = link.v_edge(i, j);
      if (count == 2) {
        std::uint64_t pair[2];
        int k = 0;
        if (bottom) pair[k++] = eb;
        if (right) pair[k++] = er;
        if (top) pair[k++] = et;
        if (left) pair[k++] = el;
        link.connect(pair[0], pair[1]);
      } else {
        // Saddle cell: the midpoint decides which diagonal pair is joined.
        const Point a = g.center(i, j);
        const Point b = g.center(i + 1, j + 1);
        const double mid = field(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
        const int ms = mid < 0.0 ? -1 : 1;
        if (ms == s0) {
          link.connect(eb, er);
          link.connect(et, el);
        } else {
          link.connect(eb, el);
          link.connect(er, et);
        }
      }
    }
  }

  auto& nodes = link.nodes();
  std::vector<char> seen(nodes.size(), 0);
  std::vector<Chain> chains;
  auto make_chain = [&](const std::vector<int>& path, bool cyclic) {
    Chain c;
    c.cyclic = cyclic;
    c.points.reserve(path.size());
    for (int k : path) c.points.push_back(nodes[static_cast<std::size_t>(k)].p);
    if (!cyclic) {
      const std::uint64_t edges[2] = {nodes[static_cast<std::size_t>(path.front())].edge,
                                      nodes[static_cast<std::size_t>(path.back())].edge};
      for (int side = 0; side < 2; ++side) {
        if (link.on_outer_boundary(edges[side])) continue;
        const Point p = side == 0 ? c.points.front() : c.points.back();
        int best = -1;
        double best_d = 0.0;
        for (std::size_t v = 0; v < g.exclusions.size(); ++v) {
          const double d = distance(p, g.exclusions[v].center);
          if (d <= g.exclusions[v].radius + 3.0 * g.spacing() && (best < 0 || d < best_d)) {
            best = static_cast<int>(v);
            best_d = d;
          }
        }
        if (best < 0)
          throw TopologyError(fmt::format("nodal polyline ends at ({:.6g}, {:.6g}) away from the boundary", p.x, p.y));
        c.ends[side].kind = EndKind::Junction;
        c.ends[side].vertex = best;
      }
    }
    chains.push_back(std::move(c));
  };
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (!seen[k] && nodes[k].degree == 1) make_chain(walk(nodes, static_cast<int>(k), seen), false);
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (!seen[k]) make_chain(walk(nodes, static_cast<int>(k), seen), true);

  // Splice the four branches at every double crossing: opposite ends in
  // angular order belong to the same smooth branch.
  for (std::size_t v = 0; v < critical_zeros.size(); ++v) {
    struct Arm {
      double angle;
      int chain;
      int side;
    };
    std::vector<Arm> arms;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (chains[c].cyclic) continue;
      for (int side = 0; side < 2; ++side)
        if (chains[c].ends[side].kind == EndKind::Junction && chains[c].ends[side].vertex == static_cast<int>(v)) {
          const Point p = side == 0 ? chains[c].points.front() : chains[c].points.back();
          const Point o = critical_zeros[v].location;
          arms.push_back({std::atan2(p.y - o.y, p.x - o.x), static_cast<int>(c), side});
        }
    }
    if (arms.size() != 4)
      throw TopologyError(fmt::format("double crossing at ({:.6g}, {:.6g}) has {} branches instead of 4",
                                      critical_zeros[v].location.x, critical_zeros[v].location.y, arms.size()));
    std::sort(arms.begin(), arms.end(), [](const Arm& a, const Arm& b) { return a.angle < b.angle; });
    for (int k = 0; k < 4; ++k) {
      const Arm& a = arms[static_cast<std::size_t>(k)];
      const Arm& b = arms[static_cast<std::size_t>((k + 2) % 4)];
      auto& end = chains[static_cast<std::size_t>(a.chain)].ends[a.side];
      end.partner_chain = b.chain;
      end.partner_side = b.side;
    }
  }

  // Assemble curves, entering each chain at one end and leaving at the other.
  std::vector<char> used(chains.size(), 0);
  auto follow = [&](int chain, int side, NodalCurve& curve) {
    const int start_chain = chain;
    const int start_side = side;
    while (true) {
      used[static_cast<std::size_t>(chain)] = 1;
      const Chain& c = chains[static_cast<std::size_t>(chain)];
      if (side == 0)
        curve.points.insert(curve.points.end(), c.points.begin(), c.points.end());
      else
        curve.points.insert(curve.points.end(), c.points.rbegin(), c.points.rend());
      const ChainEnd& exit = c.ends[1 - side];
      if (exit.kind == EndKind::Boundary) {
        curve.closed = false;
        return;
      }
      curve.vertex_visits.push_back(exit.vertex);
      curve.points.push_back(critical_zeros[static_cast<std::size_t>(exit.vertex)].location);
      chain = exit.partner_chain;
      side = exit.partner_side;
      if (chain == start_chain && side == start_side) {
        curve.closed = true;
        return;
      }
      if (used[static_cast<std::size_t>(chain)])
        throw TopologyError("inconsistent splicing at a double crossing");
    }
  };
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (used[c] || chains[c].cyclic) continue;
    for (int side = 0; side < 2; ++side)
      if (!used[c] && chains[c].ends[side].kind == EndKind::Boundary) {
        NodalCurve curve;
        follow(static_cast<int>(c), side, curve);
        out.curves.push_back(std::move(curve));
      }
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (used[c]) continue;
    NodalCurve curve;
    if (chains[c].cyclic) {
      used[c] = 1;
      curve.points = chains[c].points;
      curve.closed = true;
    } else {
      follow(static_cast<int>(c), 0, curve);
    }
    out.curves.push_back(std::move(curve));
  }

  const double tol = 2.0 * g.spacing();
  for (auto& c : out.curves)
    c.on_diagonal = !c.points.empty() && std::all_of(c.points.begin(), c.points.end(),
                                                     [&](Point p) { return std::abs(p.x - p.y) <= tol; });
  return out;
}

int traced_line_crossings(const CurveSet& curves, double a, double b, double c) {
  int count = 0;
  for (const auto& curve : curves.curves) {
    const auto& pts = curve.points;
    if (pts.size() < 2) continue;
    auto side = [&](Point p) { return a * p.x + b * p.y - c < 0.0; };
    for (std::size_t k = 1; k < pts.size(); ++k) count += side(pts[k]) != side(pts[k - 1]);
    if (curve.closed) count += side(pts.front()) != side(pts.back());
  }
  return count;
}

}  // namespace qho
