#include "mmsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mmsim/errors.hpp"

namespace mmsim {

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw DataError("trials: empty ledger");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == n) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

std::array<RateEstimate, 4> estimate_rates(const TrialLedger& ledger) {
  if (ledger.trials == 0) throw DataError("trials: empty ledger");
  std::array<RateEstimate, 4> out;
  for (JointOutcome o : kAllOutcomes) {
    const auto k = ledger.count(o);
    const Interval ci = wilson_interval(k, ledger.trials);
    out[static_cast<std::size_t>(o)] = {o, k, ledger.trials, static_cast<double>(k) / ledger.trials, ci.low, ci.high};
  }
  return out;
}

Hypothesis make_hypothesis(ModelId model, Phase phase, SeparationRegime regime,
                           const std::optional<EtherConfig>& ether) {
  switch (model) {
    case ModelId::NonlocalQuantum:
      return {"quantum", quantum_joint(phase)};
    case ModelId::LocalDetection:
      return {"local:" + std::string(to_string(regime)), local_joint(phase, regime)};
    case ModelId::Ether:
      if (!ether) throw ConfigError("arm-length: ether hypothesis requires an ether configuration");
      return {"ether", ether_joint(phase, *ether)};
  }
  throw ConfigError("model: unknown");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::FavorsA: return "FavorsA";
    case Verdict::FavorsB: return "FavorsB";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(TestMethod m) {
  return m == TestMethod::ExactCoincidence ? "exact-coincidence" : "likelihood-ratio";
}

namespace {

constexpr std::size_t kBoth = static_cast<std::size_t>(JointOutcome::Both);

bool uses_exact_coincidence_test(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  return (a.p_both == 0.0) != (b.p_both == 0.0);
}

/// p-value of the observed counts under `null`, with `alt` fixing the direction of the exact test.
double p_value_under(const OutcomeCounts& counts, std::uint64_t n, const OutcomeDistribution& null,
                     const OutcomeDistribution& alt) {
  const auto p = null.as_array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (counts[k] > 0 && p[k] == 0.0) return 0.0;
  }
  if (uses_exact_coincidence_test(null, alt)) {
    if (null.p_both == 0.0) return 1.0;  // Both never occurs under the null; zero observed is fully typical
    const boost::math::binomial_distribution<double> binom(static_cast<double>(n), null.p_both);
    const auto k = static_cast<double>(counts[kBoth]);
    if (alt.p_both < null.p_both) return boost::math::cdf(binom, k);
    return k == 0.0 ? 1.0 : boost::math::cdf(boost::math::complement(binom, k - 1.0));
  }
  double g = 0.0;
  int support = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) ++support;
    if (counts[k] > 0) {
      const double c = static_cast<double>(counts[k]);
      g += 2.0 * c * std::log(c / (static_cast<double>(n) * p[k]));
    }
  }
  const int dof = support - 1;
  if (dof <= 0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, std::max(0.0, 0.5 * g));
}

}  // namespace

DiscriminationReport discriminate(const TrialLedger& ledger, const Hypothesis& a, const Hypothesis& b,
                                  double significance) {
  a.dist.validate();
  b.dist.validate();
  if (ledger.trials == 0) throw DataError("trials: empty ledger");
  if (!(significance > 0.0 && significance < 1.0)) throw ConfigError("significance: must lie in (0, 1)");

  const auto pa = a.dist.as_array();
  const auto pb = b.dist.as_array();
  bool a_impossible = false;
  bool b_impossible = false;
  double llr = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    if (ledger.counts[k] == 0) continue;
    if (pa[k] == 0.0 && pb[k] == 0.0) {
      throw DataError(std::string(to_string(static_cast<JointOutcome>(k))) +
                      ": observed but impossible under both hypotheses");
    }
    a_impossible |= pa[k] == 0.0;
    b_impossible |= pb[k] == 0.0;
    if (pa[k] > 0.0 && pb[k] > 0.0) llr += static_cast<double>(ledger.counts[k]) * (std::log(pa[k]) - std::log(pb[k]));
  }
  if (a_impossible && b_impossible) throw DataError("ledger: observed outcomes are impossible under both hypotheses");

  DiscriminationReport r;
  r.model_a = a.label;
  r.model_b = b.label;
  r.significance = significance;
  r.method = uses_exact_coincidence_test(a.dist, b.dist) ? TestMethod::ExactCoincidence : TestMethod::LikelihoodRatio;
  r.p_value = p_value_under(ledger.counts, ledger.trials, b.dist, a.dist);
  r.p_value_reverse = p_value_under(ledger.counts, ledger.trials, a.dist, b.dist);
  r.certain_rejection = a_impossible || b_impossible;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (b_impossible) {
    r.llr = kInf;
    r.verdict = Verdict::FavorsA;
  } else if (a_impossible) {
    r.llr = -kInf;
    r.verdict = Verdict::FavorsB;
  } else {
    r.llr = llr;
    if (llr > 0.0 && r.p_value <= significance) {
      r.verdict = Verdict::FavorsA;
    } else if (llr < 0.0 && r.p_value_reverse <= significance) {
      r.verdict = Verdict::FavorsB;
    }
  }
  return r;
}

DiscriminationReport discriminate(const TrialLedger& ledger, const OutcomeDistribution& a,
                                  const OutcomeDistribution& b, double significance) {
  return discriminate(ledger, Hypothesis{"a", a}, Hypothesis{"b", b}, significance);
}

}  // namespace mmsim
