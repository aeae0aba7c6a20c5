#include "mlabm/experiment/compare.hpp"

#include <cstdio>
#include <sstream>

namespace mlabm::experiment {

std::string CompareReport::verdict() const {
  if (!significant) return "UNDETERMINED";
  return *significant ? "SIGNIFICANT" : "NOT-SIGNIFICANT";
}

std::string CompareReport::to_text() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "survivors mean: A=%.3f B=%.3f\n", survivors_mean_a, survivors_mean_b);
  os << buf;
  if (survivors_test) {
    std::snprintf(buf, sizeof buf, "welch t=%.4f df=%.2f p=%.4g\n", survivors_test->t, survivors_test->df,
                  survivors_test->p);
    os << buf;
  }
  if (price_test) {
    std::snprintf(buf, sizeof buf, "ks final-epoch price D=%.4f p=%.4g\n", price_test->d, price_test->p);
    os << buf;
  }
  for (const auto& n : notes) os << "note: " << n << '\n';
  os << "verdict (alpha=0.05): " << verdict() << '\n';
  return os.str();
}

CompareReport compare(const BatchResult& a, const BatchResult& b) {
  CompareReport r;
  const auto sa = a.survivors();
  const auto sb = b.survivors();
  if (sa.empty() || sb.empty()) {
    r.notes.push_back("empty batch");
    return r;
  }
  r.survivors_mean_a = stats::mean(sa);
  r.survivors_mean_b = stats::mean(sb);
  try {
    r.survivors_test = stats::welch_t(sa, sb);
    r.significant = r.survivors_test->p < kSignificanceLevel;
  } catch (const stats::StatsError& e) {
    r.notes.push_back(std::string("survivor test degenerate: ") + e.what());
    if (sa.size() >= 1 && r.survivors_mean_a == r.survivors_mean_b) {
      r.survivors_test = stats::TTest{0.0, 0.0, 1.0};
      r.significant = false;
    }
  }
  try {
    r.price_test = stats::ks_test(a.final_prices(), b.final_prices());
  } catch (const stats::StatsError& e) {
    r.notes.push_back(std::string("price test degenerate: ") + e.what());
  }
  return r;
}

}  // namespace mlabm::experiment
