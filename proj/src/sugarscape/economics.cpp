#include "mlabm/sugarscape/economics.hpp"

#include <algorithm>
#include <cmath>

#include "mlabm/stats.hpp"

namespace mlabm::sugarscape {

double welfare(const Wealth& w, const Metabolism& m) {
  if (!(w.sugar > 0.0) || !(w.spice > 0.0)) throw EconomicsError("welfare of non-positive wealth");
  const double total = m.sugar + m.spice;
  return std::pow(w.sugar, m.sugar / total) * std::pow(w.spice, m.spice / total);
}

double mrs(const Wealth& w, const Metabolism& m) {
  if (!w.alive()) throw EconomicsError("mrs of a dead agent");
  return (w.spice / m.spice) / (w.sugar / m.sugar);
}

std::vector<Exchange> bargain(Wealth& a, const Metabolism& ma, Wealth& b, const Metabolism& mb,
                              int max_exchanges) {
  std::vector<Exchange> done;
  for (int i = 0; i < max_exchanges; ++i) {
    const double ra = mrs(a, ma);
    const double rb = mrs(b, mb);
    if (ra == rb) break;

    const bool a_buys = ra > rb;
    Wealth& buyer = a_buys ? a : b;
    Wealth& seller = a_buys ? b : a;
    const Metabolism& mbuyer = a_buys ? ma : mb;
    const Metabolism& mseller = a_buys ? mb : ma;

    const double price = std::sqrt(ra * rb);
    const double sugar = price > 1.0 ? 1.0 : 1.0 / price;
    const double spice = price > 1.0 ? price : 1.0;

    const Wealth buyer_next{buyer.sugar + sugar, buyer.spice - spice};
    const Wealth seller_next{seller.sugar - sugar, seller.spice + spice};
    if (!buyer_next.alive() || !seller_next.alive()) break;
    if (!(welfare(buyer_next, mbuyer) > welfare(buyer, mbuyer))) break;
    if (!(welfare(seller_next, mseller) > welfare(seller, mseller))) break;
    if (mrs(buyer_next, mbuyer) < mrs(seller_next, mseller)) break;

    buyer = buyer_next;
    seller = seller_next;
    done.push_back({a_buys, price, sugar, spice});
  }
  return done;
}

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kNone: return "none";
    case PolicyKind::kMinAccumulation: return "min";
    case PolicyKind::kMaxAccumulation: return "max";
    case PolicyKind::kGeoMeanAccumulation: return "geo_mean";
    case PolicyKind::kCommonResource: return "common_resource";
  }
  return "unknown";
}

Wealth perceived_wealth(PolicyKind kind, std::span<const Wealth> members) {
  if (members.empty()) throw EconomicsError("perception over an empty group");
  std::vector<double> sugar;
  std::vector<double> spice;
  for (const auto& w : members) {
    sugar.push_back(w.sugar);
    spice.push_back(w.spice);
  }
  switch (kind) {
    case PolicyKind::kMinAccumulation:
      return {*std::min_element(sugar.begin(), sugar.end()), *std::min_element(spice.begin(), spice.end())};
    case PolicyKind::kMaxAccumulation:
      return {*std::max_element(sugar.begin(), sugar.end()), *std::max_element(spice.begin(), spice.end())};
    case PolicyKind::kGeoMeanAccumulation:
      return {stats::geometric_mean(sugar), stats::geometric_mean(spice)};
    default:
      throw EconomicsError(std::string("not a perception policy: ") + to_string(kind));
  }
}

}  // namespace mlabm::sugarscape
