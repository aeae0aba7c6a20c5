#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace mlabm::sugarscape {

struct Wealth {
  double sugar = 0.0;
  double spice = 0.0;

  bool alive() const noexcept { return sugar > 0.0 && spice > 0.0; }
  friend bool operator==(const Wealth&, const Wealth&) = default;
};

struct Metabolism {
  int sugar = 1;
  int spice = 1;
};

class EconomicsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cobb-Douglas welfare weighted by metabolism:
/// w_s^(m_s/(m_s+m_p)) * w_p^(m_p/(m_s+m_p)).
double welfare(const Wealth& w, const Metabolism& m);

/// Marginal rate of substitution, (w_p/m_p) / (w_s/m_s): spice-time over
/// sugar-time. Above 1 the agent values sugar relatively more.
double mrs(const Wealth& w, const Metabolism& m);

/// One executed unit exchange. The higher-MRS party buys `sugar` units and
/// pays `spice` units; `price` is spice per sugar.
struct Exchange {
  bool first_buys_sugar;
  double price;
  double sugar;
  double spice;
};

/// Bilateral bargaining at the geometric-mean price. Repeats unit exchanges
/// of 1 sugar for p spice (p > 1) or 1/p sugar for 1 spice (p <= 1) while
/// both welfares strictly improve and the MRS ordering does not flip.
/// Updates both wealths in place and returns the executed exchanges.
std::vector<Exchange> bargain(Wealth& a, const Metabolism& ma, Wealth& b, const Metabolism& mb,
                              int max_exchanges = 10000);

enum class PolicyKind { kNone, kMinAccumulation, kMaxAccumulation, kGeoMeanAccumulation, kCommonResource };

const char* to_string(PolicyKind kind);

/// Wealth a group member acts as though it had when choosing where to move.
/// Per-resource minimum, maximum or geometric mean over the members' true
/// wealth. kNone and kCommonResource are not perception policies.
Wealth perceived_wealth(PolicyKind kind, std::span<const Wealth> members);

}  // namespace mlabm::sugarscape
