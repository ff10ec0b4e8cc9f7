#include "valord/transport.hpp"

#include <algorithm>
#include <deque>

namespace valord {

const char* relation_name(TransportRelation r) {
  return r == TransportRelation::leq ? "leq" : "waybelow";
}

const char* mass_rule_name(MassRule r) {
  return r == MassRule::strict_total ? "strict_total" : "strict_per_element";
}

MassRule parse_mass_rule(const std::string& text) {
  if (text == "strict_total") return MassRule::strict_total;
  if (text == "strict_per_element") return MassRule::strict_per_element;
  raise(Errc::ParseError, "unknown mass rule '" + text + "'");
}

namespace {

struct Edge {
  std::size_t from, to;
  Dyadic cap;
  Dyadic flow;
};

// Transport network: node 0 is the source, nodes 1..L the mu-support,
// L+1..L+R the nu-support, L+R+1 the sink. Edges are laid down in
// enumeration order, which fixes the breadth-first search order.
struct Network {
  std::vector<std::size_t> left;   // support(mu), ascending
  std::vector<std::size_t> right;  // support(nu), ascending
  std::vector<Edge> edges;         // even ids forward, odd ids reverse
  std::vector<std::vector<std::size_t>> adj;
  std::size_t sink = 0;

  void add_edge(std::size_t from, std::size_t to, Dyadic cap) {
    adj[from].push_back(edges.size());
    edges.push_back({from, to, std::move(cap), Dyadic()});
    adj[to].push_back(edges.size());
    edges.push_back({to, from, Dyadic(), Dyadic()});
  }

  Dyadic residual(std::size_t id) const {
    return edges[id].cap - edges[id].flow;
  }

  void push(std::size_t id, const Dyadic& amount) {
    edges[id].flow += amount;
    edges[id ^ 1].flow -= amount;
  }
};

Network build_network(const SimpleValuation& mu, const SimpleValuation& nu,
                      TransportRelation relation) {
  Network net;
  for (const auto& [x, r] : mu.weights()) net.left.push_back(x);
  for (const auto& [y, s] : nu.weights()) net.right.push_back(y);
  const std::size_t nodes = 2 + net.left.size() + net.right.size();
  net.sink = nodes - 1;
  net.adj.resize(nodes);

  const auto& poset = *mu.poset();
  for (std::size_t i = 0; i < net.left.size(); ++i)
    net.add_edge(0, 1 + i, mu.weight(net.left[i]));
  for (std::size_t i = 0; i < net.left.size(); ++i)
    for (std::size_t j = 0; j < net.right.size(); ++j) {
      bool related = relation == TransportRelation::leq
                         ? poset.leq(net.left[i], net.right[j])
                         : poset.waybelow(net.left[i], net.right[j]);
      // Inner capacity 1 never binds: total supply is at most 1.
      if (related) net.add_edge(1 + i, 1 + net.left.size() + j, Dyadic::one());
    }
  for (std::size_t j = 0; j < net.right.size(); ++j)
    net.add_edge(1 + net.left.size() + j, net.sink, nu.weight(net.right[j]));
  return net;
}

// Breadth-first augmenting paths with exact dyadic residuals.
Dyadic max_flow(Network& net) {
  Dyadic value;
  for (;;) {
    std::vector<std::size_t> parent_edge(net.adj.size(), SIZE_MAX);
    std::vector<bool> seen(net.adj.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty() && !seen[net.sink]) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t id : net.adj[v]) {
        std::size_t w = net.edges[id].to;
        if (seen[w] || net.residual(id) <= Dyadic()) continue;
        seen[w] = true;
        parent_edge[w] = id;
        queue.push_back(w);
      }
    }
    if (!seen[net.sink]) return value;

    std::optional<Dyadic> bottleneck;
    for (std::size_t v = net.sink; v != 0;) {
      std::size_t id = parent_edge[v];
      Dyadic r = net.residual(id);
      if (!bottleneck || r < *bottleneck) bottleneck = r;
      v = net.edges[id].from;
    }
    for (std::size_t v = net.sink; v != 0;) {
      std::size_t id = parent_edge[v];
      net.push(id, *bottleneck);
      v = net.edges[id].from;
    }
    value += *bottleneck;
  }
}

std::vector<bool> residual_reachable(const Network& net) {
  std::vector<bool> seen(net.adj.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t id : net.adj[v]) {
      std::size_t w = net.edges[id].to;
      if (!seen[w] && net.residual(id) > Dyadic()) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

TransportPlan extract_plan(const Network& net, const SimpleValuation& nu,
                           TransportRelation relation) {
  TransportPlan plan;
  plan.relation = relation;
  for (const Edge& e : net.edges) {
    if (e.from == 0 || e.to == net.sink || e.from > e.to) continue;
    if (e.flow > Dyadic()) {
      std::size_t x = net.left[e.from - 1];
      std::size_t y = net.right[e.to - 1 - net.left.size()];
      plan.entries[{x, y}] = e.flow;
    }
  }
  for (std::size_t y : net.right) {
    Dyadic column;
    for (const auto& [key, t] : plan.entries)
      if (key.second == y) column += t;
    plan.residuals[y] = nu.weight(y) - column;
  }
  plan.leftover = Dyadic::one() - nu.total_mass();
  if (plan.leftover.is_negative()) plan.leftover = Dyadic();
  return plan;
}

TransportRefusal flow_refusal(const Network& net, const SimpleValuation& mu,
                              const SimpleValuation& nu,
                              TransportRelation relation) {
  std::vector<bool> seen = residual_reachable(net);
  std::vector<std::size_t> stuck;
  for (std::size_t i = 0; i < net.left.size(); ++i)
    if (seen[1 + i]) stuck.push_back(net.left[i]);

  TransportRefusal refusal;
  refusal.reason = "flow-deficit";
  refusal.cut_supply = stuck;
  const auto& poset = *mu.poset();
  if (relation == TransportRelation::leq) {
    refusal.witness = poset.upper_closure(stuck);
    refusal.separating_mu = mu.mass(*refusal.witness);
    refusal.separating_nu = nu.mass(*refusal.witness);
  } else {
    // Way-below closure of the stuck supply; upward closed by absorption.
    std::vector<bool> members(poset.size(), false);
    for (std::size_t x : stuck)
      for (std::size_t z = 0; z < poset.size(); ++z)
        if (poset.waybelow(x, z)) members[z] = true;
    refusal.witness = poset.upper_set(std::move(members));
    for (std::size_t x : stuck) refusal.separating_mu += mu.weight(x);
    refusal.separating_nu = nu.mass(*refusal.witness);
  }
  return refusal;
}

}  // namespace

TransportDecision decide_order_maxflow(const SimpleValuation& mu,
                                       const SimpleValuation& nu) {
  if (mu.poset() != nu.poset())
    raise(Errc::DifferentPosets, "valuations live on different posets");
  Network net = build_network(mu, nu, TransportRelation::leq);
  Dyadic value = max_flow(net);
  if (value == mu.total_mass())
    return extract_plan(net, nu, TransportRelation::leq);
  return flow_refusal(net, mu, nu, TransportRelation::leq);
}

WayBelowDecision decide_way_below(const SimpleValuation& mu,
                                  const SimpleValuation& nu, MassRule rule) {
  if (mu.poset() != nu.poset())
    raise(Errc::DifferentPosets, "valuations live on different posets");

  WayBelowDecision out;
  out.rule = rule;
  Dyadic supply = mu.total_mass();
  out.strict_total_holds = supply < nu.total_mass();
  out.strict_per_element_holds = true;
  for (const auto& [y, s] : nu.weights()) {
    if (!(supply < s)) {
      out.strict_per_element_holds = false;
      out.per_element_violator = y;
      break;
    }
  }

  bool mass_ok = rule == MassRule::strict_total ? out.strict_total_holds
                                                : out.strict_per_element_holds;
  if (!mass_ok) {
    TransportRefusal refusal;
    refusal.reason = "mass-rule";
    refusal.separating_mu = supply;
    if (rule == MassRule::strict_total) {
      refusal.separating_nu = nu.total_mass();
      refusal.detail = "total mass " + supply.str() + " is not strictly below " +
                       nu.total_mass().str();
    } else {
      refusal.separating_nu = nu.weight(*out.per_element_violator);
      refusal.detail = "total mass " + supply.str() +
                       " is not strictly below the weight " +
                       refusal.separating_nu.str() + " at '" +
                       mu.poset()->name(*out.per_element_violator) + "'";
    }
    out.decision = std::move(refusal);
    return out;
  }

  Network net = build_network(mu, nu, TransportRelation::waybelow);
  Dyadic value = max_flow(net);
  if (value == supply)
    out.decision = extract_plan(net, nu, TransportRelation::waybelow);
  else
    out.decision = flow_refusal(net, mu, nu, TransportRelation::waybelow);
  return out;
}

PlanCheck verify_transport_plan(const SimpleValuation& mu,
                                const SimpleValuation& nu,
                                const TransportPlan& plan) {
  if (mu.poset() != nu.poset())
    return {false, "same-poset", "valuations live on different posets"};
  const auto& poset = *mu.poset();

  for (const auto& [key, t] : plan.entries) {
    auto [x, y] = key;
    if (x >= poset.size() || y >= poset.size())
      return {false, "entry-domain", "entry index out of range"};
    if (t.is_negative())
      return {false, "entry-negative",
              "t[" + poset.name(x) + "," + poset.name(y) + "] = " + t.str()};
    bool related = plan.relation == TransportRelation::leq
                       ? poset.leq(x, y)
                       : poset.waybelow(x, y);
    if (!t.is_zero() && !related)
      return {false, "order-support",
              "positive entry on unrelated pair (" + poset.name(x) + "," +
                  poset.name(y) + ")"};
    if (!t.is_zero() && mu.weight(x).is_zero())
      return {false, "row-domain",
              "positive row for '" + poset.name(x) + "' outside support"};
    if (!t.is_zero() && nu.weight(y).is_zero())
      return {false, "column-domain",
              "positive column for '" + poset.name(y) + "' outside support"};
  }

  for (const auto& [x, r] : mu.weights()) {
    Dyadic row;
    for (const auto& [key, t] : plan.entries)
      if (key.first == x) row += t;
    if (row != r)
      return {false, "row-sum",
              "row sum " + row.str() + " != " + r.str() + " at '" +
                  poset.name(x) + "'"};
  }

  for (const auto& [y, s] : nu.weights()) {
    Dyadic column;
    for (const auto& [key, t] : plan.entries)
      if (key.second == y) column += t;
    if (column > s)
      return {false, "column-bound",
              "column sum " + column.str() + " > " + s.str() + " at '" +
                  poset.name(y) + "'"};
    auto it = plan.residuals.find(y);
    if (it == plan.residuals.end() || it->second != s - column)
      return {false, "residual",
              "residual at '" + poset.name(y) + "' is not " +
                  (s - column).str()};
  }
  for (const auto& [y, u] : plan.residuals)
    if (nu.weight(y).is_zero() && !u.is_zero())
      return {false, "residual",
              "residual outside the support at '" + poset.name(y) + "'"};

  Dyadic leftover = Dyadic::one() - nu.total_mass();
  if (leftover.is_negative()) leftover = Dyadic();
  if (plan.leftover != leftover)
    return {false, "leftover",
            "leftover " + plan.leftover.str() + " != " + leftover.str()};
  return {};
}

}  // namespace valord
