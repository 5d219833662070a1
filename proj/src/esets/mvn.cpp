#include <numeric>

#include "ekt/error.hpp"
#include "ekt/esets/esets.hpp"
#include "ekt/exact/opnorm.hpp"

namespace ekt::esets {

using cstar::amplify;
using cstar::MatrixElem;
using cstar::StageElem;
using exact::pow2;

namespace {

// Certified strict comparison ||x - y|| + margin < 1 between ball centers:
// Yes / No / Unknown after refinement.
Tri distance_below(const PresPtr& pres, const StarPoly& x, const StarPoly& y, const Rat& margin) {
  StarPoly diff = x - y;
  Element d = pres->eval(diff);
  // cheap exact bounds for matrix-backed elements
  if (const auto* me = d.as<MatrixElem>()) {
    Rat lo = exact::opnorm_lower_cheap(me->matrix());
    if (lo + margin >= 1) return Tri::No;
    Rat hi = exact::opnorm_upper_cheap(me->matrix());
    if (hi + margin < 1) return Tri::Yes;
  } else if (const auto* se = d.as<StageElem>()) {
    Rat lo = exact::opnorm_lower_cheap(se->rep());
    if (lo + margin >= 1) return Tri::No;
    Rat hi = exact::opnorm_upper_cheap(se->rep());
    if (hi + margin < 1) return Tri::Yes;
  }
  for (long k = 4; k <= 16; k += 4) {
    Ival nm = d.norm(k);
    if (nm.hi + margin < 1) return Tri::Yes;
    if (nm.lo + margin >= 1) return Tri::No;
  }
  return Tri::Unknown;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
};

}  // namespace

MvnResult mvn_semidecide(PresPtr a, std::size_t n, const PointHandle& p, const PointHandle& q,
                         Fuel fuel) {
  // Convention: the handles' points are A#-coded for n == 1 and triple-coded
  // M_n points otherwise.
  PresPtr pres_n = n == 1 ? a : amplify(a, n);
  PresPtr pres_4n = amplify(a, 4 * n);

  // Input sanity: certified projection residual must not be large.
  RelationSystem proj = projection_relations();
  StarPoly p_pt = p.approx(3), q_pt = q.approx(3);
  for (const StarPoly* pt : {&p_pt, &q_pt}) {
    Ival res = relation_residual(pres_n, proj, {*pt}, 8);
    if (res.lo > Rat(1, 8))
      throw Error("mvn_semidecide: input fails the projection relations");
  }

  // Padded input balls in M_{4n}.
  const Rat r_in = pow2(-3);
  StarPoly p_pad = pad_point_level(p_pt, n, 4 * n);
  StarPoly q_pad = pad_point_level(q_pt, n, 4 * n);

  CeClosedSet ps = ce_closed_from_relations(pres_4n, proj);

  MvnResult out;
  struct Node {
    RationalBall ball;
    StarPoly center;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // DSU ids
  std::vector<bool> start_adj, end_adj;
  DisjointSet dsu;
  std::size_t start_id = dsu.add(), end_id = dsu.add();

  Fuel spent = 0;
  Nat slot(0);
  while (spent < fuel) {
    ++spent;
    auto ball = ps.balls(slot);
    slot += 1;
    if (!ball) continue;
    ++out.balls_seen;
    Node node{*ball, tuple_points(ball->center, 1)[0]};
    std::size_t id = dsu.add();
    // edge checks against the endpoints and every existing ball
    ++out.edges_checked;
    bool sa = distance_below(pres_4n, p_pad, node.center, r_in + node.ball.radius) == Tri::Yes;
    ++out.edges_checked;
    bool ea = distance_below(pres_4n, node.center, q_pad, node.ball.radius + r_in) == Tri::Yes;
    start_adj.push_back(sa);
    end_adj.push_back(ea);
    if (sa) dsu.unite(start_id, id);
    if (ea) dsu.unite(id, end_id);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (spent >= fuel) break;
      ++spent;
      ++out.edges_checked;
      if (distance_below(pres_4n, nodes[j].center, node.center,
                         nodes[j].ball.radius + node.ball.radius) == Tri::Yes) {
        edges.emplace_back(j + 2, id);
        dsu.unite(j + 2, id);
      }
    }
    nodes.push_back(std::move(node));
    if (dsu.find(start_id) == dsu.find(end_id)) break;
  }
  out.spent = spent;
  if (dsu.find(start_id) != dsu.find(end_id)) return out;

  // Reconstruct a chain by breadth-first search over the recorded edges.
  std::vector<std::vector<std::size_t>> adj(nodes.size() + 2);
  for (auto [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (start_adj[i]) {
      adj[start_id].push_back(i + 2);
      adj[i + 2].push_back(start_id);
    }
    if (end_adj[i]) {
      adj[end_id].push_back(i + 2);
      adj[i + 2].push_back(end_id);
    }
  }
  std::vector<std::size_t> prev(nodes.size() + 2, SIZE_MAX);
  std::vector<std::size_t> queue{start_id};
  prev[start_id] = start_id;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t v = queue[qi];
    if (v == end_id) break;
    for (std::size_t w : adj[v])
      if (prev[w] == SIZE_MAX) {
        prev[w] = v;
        queue.push_back(w);
      }
  }
  if (prev[end_id] == SIZE_MAX) return out;  // connected through DSU but path lost; stay Unknown

  MvnCertificate cert;
  cert.n = n;
  cert.start = RationalBall(cstar::starpoly_encode(p_pad), r_in);
  cert.end = RationalBall(cstar::starpoly_encode(q_pad), r_in);
  for (std::size_t v = prev[end_id]; v != start_id; v = prev[v])
    cert.chain.push_back(nodes[v - 2].ball);
  std::reverse(cert.chain.begin(), cert.chain.end());
  if (!mvn_verify_certificate(a, n, p, q, cert)) return out;
  out.verdict = Tri::Yes;
  out.certificate = std::move(cert);
  return out;
}

bool mvn_verify_certificate(PresPtr a, std::size_t n, const PointHandle& p, const PointHandle& q,
                            const MvnCertificate& cert) {
  if (cert.n != n || cert.chain.empty()) return false;
  PresPtr pres_4n = amplify(a, 4 * n);
  const Rat r_in = pow2(-3);
  StarPoly p_pad = pad_point_level(p.approx(3), n, 4 * n);
  StarPoly q_pad = pad_point_level(q.approx(3), n, 4 * n);

  RelationSystem proj = projection_relations();
  auto meets_projections = [&](const RationalBall& b) {
    // re-derive the S_0 membership at the ball's own scale
    Rat r = b.radius;
    long k = 2;
    while (pow2(-k) > r) ++k;
    long g = proj.modulus(k);
    Ival res = relation_residual(pres_4n, proj, tuple_points(b.center, 1), g + 2);
    return res.hi < pow2(-g);
  };

  for (const RationalBall& b : cert.chain)
    if (!meets_projections(b)) return false;
  StarPoly first = tuple_points(cert.chain.front().center, 1)[0];
  StarPoly last = tuple_points(cert.chain.back().center, 1)[0];
  if (distance_below(pres_4n, p_pad, first, r_in + cert.chain.front().radius) != Tri::Yes)
    return false;
  if (distance_below(pres_4n, last, q_pad, cert.chain.back().radius + r_in) != Tri::Yes)
    return false;
  for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i) {
    StarPoly x = tuple_points(cert.chain[i].center, 1)[0];
    StarPoly y = tuple_points(cert.chain[i + 1].center, 1)[0];
    if (distance_below(pres_4n, x, y, cert.chain[i].radius + cert.chain[i + 1].radius) != Tri::Yes)
      return false;
  }
  return true;
}

}  // namespace ekt::esets
