#include "valord/chain_quantile.hpp"

#include <algorithm>
#include <set>

namespace valord {

ChainMeasure ChainMeasure::make(
    const std::vector<std::pair<Dyadic, Dyadic>>& mass) {
  std::map<Dyadic, Dyadic> weights;
  Dyadic total;
  for (const auto& [point, w] : mass) {
    if (point.is_negative() || point > Dyadic::one())
      raise(Errc::OutOfRange, "support point " + point.str() + " outside [0,1]");
    if (w.is_negative())
      raise(Errc::InvariantViolation, "negative weight at " + point.str());
    if (w.is_zero()) continue;
    auto [it, inserted] = weights.emplace(point, w);
    if (!inserted) it->second += w;
    total += w;
  }
  if (total > Dyadic::one())
    raise(Errc::InvariantViolation, "total mass " + total.str() + " exceeds 1");
  return ChainMeasure(std::move(weights));
}

Dyadic ChainMeasure::total_mass() const {
  Dyadic total;
  for (const auto& [p, w] : weights_) total += w;
  return total;
}

Dyadic cdf(const ChainMeasure& mu, const Dyadic& x) {
  if (x.is_negative() || x > Dyadic::one())
    raise(Errc::OutOfRange, "cdf argument " + x.str() + " outside [0,1]");
  Dyadic total;
  for (const auto& [p, w] : mu.weights()) {
    if (p > x) break;
    total += w;
  }
  return total;
}

Dyadic quantile(const ChainMeasure& mu, const Dyadic& r) {
  if (r.is_negative() || r > Dyadic::one())
    raise(Errc::OutOfRange, "quantile argument " + r.str() + " outside [0,1]");
  if (r.is_zero()) return Dyadic();  // the bottom of the chain
  Dyadic cumulative;
  for (const auto& [p, w] : mu.weights()) {
    cumulative += w;
    if (cumulative >= r) return p;
  }
  return Dyadic::one();  // empty preimage resolves to the top
}

StepFunction cdf_function(const ChainMeasure& mu) {
  StepFunction f;
  f.side = StepSide::right_continuous;
  f.values.push_back(Dyadic());
  Dyadic cumulative;
  for (const auto& [p, w] : mu.weights()) {
    f.breakpoints.push_back(p);
    cumulative += w;
    f.values.push_back(cumulative);
  }
  return f;
}

StepFunction quantile_function(const ChainMeasure& mu) {
  StepFunction g;
  g.side = StepSide::left_continuous;
  Dyadic cumulative;
  for (const auto& [p, w] : mu.weights()) {
    g.values.push_back(p);
    cumulative += w;
    g.breakpoints.push_back(cumulative);
  }
  // Regions are (breakpoint, next breakpoint]; the final region up to 1
  // maps to the top when mass is missing.
  if (cumulative == Dyadic::one()) {
    if (!g.breakpoints.empty()) g.breakpoints.pop_back();
  } else {
    g.values.push_back(Dyadic::one());
  }
  return g;
}

QuantilePushforward quantile_pushforward(const ChainMeasure& mu) {
  // Region boundaries of the quantile step function: G is constant on
  // (c_{i-1}, c_i], so each value receives exactly that dyadic length.
  std::vector<std::pair<Dyadic, Dyadic>> mass;
  Dyadic previous;
  for (const auto& [p, w] : mu.weights()) {
    Dyadic next = previous + w;
    mass.emplace_back(p, next - previous);
    previous = next;
  }
  Dyadic gap = Dyadic::one() - previous;
  if (!gap.is_zero()) mass.emplace_back(Dyadic::one(), gap);

  QuantilePushforward out;
  out.measure = ChainMeasure::make(mass);
  out.top_deviation = gap;
  return out;
}

namespace {

// The finite sub-chain carrying both measures, with 0 and 1 adjoined.
std::vector<Dyadic> carrier_points(const ChainMeasure& mu,
                                   const ChainMeasure& nu) {
  std::set<Dyadic> points{Dyadic(), Dyadic::one()};
  for (const auto& [p, w] : mu.weights()) points.insert(p);
  for (const auto& [p, w] : nu.weights()) points.insert(p);
  return {points.begin(), points.end()};
}

}  // namespace

ChainIsoReport chain_order_iso_check(const ChainMeasure& mu,
                                     const ChainMeasure& nu,
                                     unsigned resolution) {
  ChainIsoReport report;
  report.equal_mass = mu.total_mass() == nu.total_mass();

  std::vector<Dyadic> points = carrier_points(mu, nu);
  std::vector<std::string> names;
  std::vector<FinitePoset::NamePair> covers;
  for (std::size_t i = 0; i < points.size(); ++i) {
    names.push_back(points[i].str());
    if (i > 0) covers.push_back({names[i - 1], names[i]});
  }
  PosetPtr chain = FinitePoset::build(names, covers, names.front());

  auto induce = [&](const ChainMeasure& m) {
    std::map<std::size_t, Dyadic> weights;
    for (const auto& [p, w] : m.weights()) {
      std::size_t i = static_cast<std::size_t>(
          std::lower_bound(points.begin(), points.end(), p) - points.begin());
      weights.emplace(i, w);
    }
    return SimpleValuation::make_indexed(chain, std::move(weights));
  };
  OrderDecision order = order_oracle(induce(mu), induce(nu));
  report.valuation_holds = order.holds;
  report.upper_witness = order.witness;

  // Dyadic grid scanned by exponent, then numerator; the first violation
  // becomes the witness.
  report.quantile_holds = true;
  for (unsigned e = 0; e <= resolution && report.quantile_holds; ++e) {
    std::uint64_t from = e == 0 ? 0 : 1, step = e == 0 ? 1 : 2;
    for (std::uint64_t k = from; k <= (std::uint64_t(1) << e); k += step) {
      Dyadic r(BigInt(k), e);
      if (quantile(mu, r) > quantile(nu, r)) {
        report.quantile_holds = false;
        report.r_witness = r;
        break;
      }
    }
  }
  return report;
}

}  // namespace valord
