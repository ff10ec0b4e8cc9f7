#include "valord/valuation.hpp"

#include <algorithm>
#include <set>

namespace valord {

SimpleValuation SimpleValuation::make(
    PosetPtr poset, const std::vector<std::pair<std::string, Dyadic>>& mass) {
  std::map<std::size_t, Dyadic> weights;
  for (const auto& [name, w] : mass) {
    std::size_t i = poset->index(name);
    auto [it, inserted] = weights.emplace(i, w);
    if (!inserted) it->second += w;
  }
  return make_indexed(std::move(poset), std::move(weights));
}

SimpleValuation SimpleValuation::make_indexed(
    PosetPtr poset, std::map<std::size_t, Dyadic> weights) {
  Dyadic total;
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->first >= poset->size())
      raise(Errc::OutOfRange, "support index out of range");
    if (it->second.is_negative())
      raise(Errc::InvariantViolation,
            "negative weight at '" + poset->name(it->first) + "'");
    if (it->second.is_zero()) {
      it = weights.erase(it);
      continue;
    }
    total += it->second;
    ++it;
  }
  if (total > Dyadic::one())
    raise(Errc::InvariantViolation,
          "total mass " + total.str() + " exceeds 1");
  return SimpleValuation(std::move(poset), std::move(weights));
}

SimpleValuation SimpleValuation::zero(PosetPtr poset) {
  return SimpleValuation(std::move(poset), {});
}

Dyadic SimpleValuation::weight(std::size_t i) const {
  auto it = weights_.find(i);
  return it == weights_.end() ? Dyadic() : it->second;
}

Dyadic SimpleValuation::total_mass() const {
  Dyadic total;
  for (const auto& [i, w] : weights_) total += w;
  return total;
}

Dyadic SimpleValuation::mass(const UpperSet& upper) const {
  if (upper.poset() != poset_)
    raise(Errc::ForeignUpperSet, "upper set belongs to a different poset");
  Dyadic total;
  for (const auto& [i, w] : weights_)
    if (upper.contains(i)) total += w;
  return total;
}

OrderDecision order_oracle(const SimpleValuation& mu, const SimpleValuation& nu,
                           std::size_t bound) {
  if (mu.poset() != nu.poset())
    raise(Errc::DifferentPosets, "valuations live on different posets");
  for (const UpperSet& upper : mu.poset()->enumerate_upper_sets(bound)) {
    if (mu.mass(upper) > nu.mass(upper)) return {false, upper};
  }
  return {true, std::nullopt};
}

Dyadic integrate_monotone(const SimpleValuation& mu, const MonotoneFunction& f) {
  const auto& poset = *mu.poset();
  for (const auto& [i, v] : f.values) {
    if (i >= poset.size()) raise(Errc::OutOfRange, "function index out of range");
    if (v.is_negative())
      raise(Errc::InvariantViolation,
            "negative value at '" + poset.name(i) + "'");
    for (const auto& [j, w] : f.values)
      if (poset.leq(i, j) && v > w)
        raise(Errc::NotMonotone, "f(" + poset.name(i) + ") > f(" +
                                     poset.name(j) + ") although " +
                                     poset.name(i) + " <= " + poset.name(j));
  }
  Dyadic total;
  for (const auto& [i, w] : mu.weights()) {
    auto it = f.values.find(i);
    if (it == f.values.end())
      raise(Errc::MissingValue,
            "function undefined at support point '" + poset.name(i) + "'");
    total += w * it->second;
  }
  return total;
}

ConvergenceCertificate portmanteau_check(
    std::span<const SimpleValuation> sequence, const SimpleValuation& limit,
    std::size_t horizon, const Dyadic& tolerance, std::size_t bound) {
  for (const auto& v : sequence)
    if (v.poset() != limit.poset())
      raise(Errc::DifferentPosets, "sequence and limit on different posets");
  if (horizon < 1 || horizon > sequence.size())
    raise(Errc::OutOfRange, "horizon must lie within the sequence");
  if (tolerance.is_negative())
    raise(Errc::OutOfRange, "tolerance must be non-negative");

  ConvergenceCertificate cert{horizon, tolerance, {}};
  const auto& poset = limit.poset();

  // Scott-open (= upper) sets: the tail minimum must not undershoot.
  for (const UpperSet& open : poset->enumerate_upper_sets(bound)) {
    std::optional<Dyadic> tail_min;
    for (std::size_t n = horizon - 1; n < sequence.size(); ++n) {
      Dyadic m = sequence[n].mass(open);
      if (!tail_min || m < *tail_min) tail_min = m;
    }
    Dyadic required = limit.mass(open) - tolerance;
    if (*tail_min < required)
      cert.violations.push_back({"liminf-open", open, *tail_min, required});
  }

  // Finitely generated upper sets over the supports: the tail maximum must
  // not overshoot. Distinct generator sets yielding the same upper set are
  // checked once.
  std::vector<std::size_t> carrier;
  {
    std::set<std::size_t> support;
    for (const auto& [i, w] : limit.weights()) support.insert(i);
    for (const auto& v : sequence)
      for (const auto& [i, w] : v.weights()) support.insert(i);
    carrier.assign(support.begin(), support.end());
  }
  if (carrier.size() > bound || carrier.size() > 32)
    raise(Errc::SizeLimit, "support union exceeds the enumeration bound");
  std::set<std::vector<bool>> seen;
  for (std::uint32_t mask = 1; mask < (1u << carrier.size()); ++mask) {
    std::vector<std::size_t> gen;
    for (std::size_t i = 0; i < carrier.size(); ++i)
      if ((mask >> i) & 1u) gen.push_back(carrier[i]);
    UpperSet up = poset->upper_closure(gen);
    if (!seen.insert(up.members()).second) continue;
    std::optional<Dyadic> tail_max;
    for (std::size_t n = horizon - 1; n < sequence.size(); ++n) {
      Dyadic m = sequence[n].mass(up);
      if (!tail_max || m > *tail_max) tail_max = m;
    }
    Dyadic required = limit.mass(up) + tolerance;
    if (*tail_max > required)
      cert.violations.push_back({"limsup-upper", up, *tail_max, required});
  }
  return cert;
}

}  // namespace valord
