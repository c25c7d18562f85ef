#include "lpc/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpc/bounds.hpp"
#include "lpc/dataset.hpp"
#include "lpc/prediction.hpp"
#include "lpc/rng.hpp"
#include "lpc/uncertainty.hpp"

namespace lpc {
namespace {

struct RandomInstance {
  PatternTable table;
  UncertaintyInterval interval;
};

// Small random pattern table (m <= 9) with an expectation generated by an
// actual distribution on the table's cells, so the uncertainty set is never
// empty.
RandomInstance random_instance(Rng& rng, bool with_width) {
  static const std::pair<int, int> shapes[] = {{2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}};
  auto [labels, k] = shapes[rng.below(5)];

  auto all = PatternTable::full_enumeration(labels, k);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);
  std::size_t r = 1 + rng.below(std::min<std::size_t>(all.size(), 6));
  std::vector<std::vector<int>> chosen;
  for (std::size_t i = 0; i < r; ++i) chosen.push_back(all.patterns()[order[i]]);
  std::sort(chosen.begin(), chosen.end());
  auto table = PatternTable::from_patterns(labels, k, std::move(chosen));

  auto p0 = random_distribution(table.size() * static_cast<std::size_t>(labels), rng);
  std::vector<double> tau(static_cast<std::size_t>(table.m()), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i)
    for (int y = 0; y < labels; ++y)
      tau[static_cast<std::size_t>(table.column(i, y))] +=
          p0[i * static_cast<std::size_t>(labels) + static_cast<std::size_t>(y)];

  UncertaintyInterval interval = point_interval(tau);
  if (with_width) {
    for (std::size_t j = 0; j < interval.a.size(); ++j) {
      interval.a[j] -= 0.2 * rng.uniform();
      interval.b[j] += 0.2 * rng.uniform();
    }
  }
  return RandomInstance{std::move(table), std::move(interval)};
}

std::vector<double> random_rule(const PatternTable& table, Rng& rng) {
  std::vector<double> h;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto dist = random_distribution(static_cast<std::size_t>(table.num_labels()), rng);
    h.insert(h.end(), dist.begin(), dist.end());
  }
  return h;
}

void record(SelfCheckSuite& suite, bool pass, const std::string& message) {
  suite.checks++;
  if (!pass) {
    suite.failures++;
    if (suite.messages.size() < 10) suite.messages.push_back(message);
  }
}

SelfCheckSuite duality_suite(const SelfCheckOptions& options) {
  SelfCheckSuite suite{"lp-duality", 0, 0, {}};
  Rng rng(options.seed * 2654435761u + 1);
  const int instances = options.fast ? 15 : 40;
  for (int it = 0; it < instances; ++it) {
    auto inst = random_instance(rng, false);
    auto dual = solve_learning(inst.table, inst.interval);
    double dual_value = dual.value + options.value_perturbation;
    double primal_value = primal_minimax_value(inst.table, inst.interval);
    std::ostringstream msg;
    msg << "strong duality violated: dual " << dual_value << " vs primal " << primal_value
        << " (instance " << it << ")";
    record(suite, std::abs(dual_value - primal_value) <= 1e-6, msg.str());
  }
  return suite;
}

SelfCheckSuite sandwich_suite(const SelfCheckOptions& options) {
  SelfCheckSuite suite{"sandwich", 0, 0, {}};
  Rng rng(options.seed * 0x9e3779b9u + 7);
  const int instances = options.fast ? 20 : 60;
  for (int it = 0; it < instances; ++it) {
    auto inst = random_instance(rng, it % 2 == 0);
    const std::size_t cells = inst.table.size() * static_cast<std::size_t>(inst.table.num_labels());

    auto h = random_rule(inst.table, rng);
    std::vector<double> direction(cells);
    for (auto& v : direction) v = rng.uniform(-1.0, 1.0);
    auto p = primal_linear_min(inst.table, inst.interval, direction).distribution;

    std::vector<double> neg_h(cells);
    for (std::size_t i = 0; i < cells; ++i) neg_h[i] = -h[i];
    double upper = 1.0 - kappa(inst.table, inst.interval, h);
    double lower = 1.0 + kappa(inst.table, inst.interval, neg_h);
    double loss = expected_loss(h, p);

    std::ostringstream msg;
    msg << "sandwich violated: lower " << lower << " loss " << loss << " upper " << upper
        << " (instance " << it << ")";
    bool ok = lower >= -1e-8 && loss >= lower - 1e-8 && upper >= loss - 1e-8 &&
              upper <= 1.0 + 1e-8;
    record(suite, ok, msg.str());

    auto dual = solve_learning(inst.table, inst.interval);
    auto model_rule = rule_matrix(dual, inst.table);
    double kappa_h = kappa(inst.table, inst.interval, model_rule) + options.value_perturbation;
    std::ostringstream msg2;
    msg2 << "upper-bound identity violated: kappa(h*) " << kappa_h << " vs 1-R "
         << 1.0 - dual.minimax_risk << " (instance " << it << ")";
    record(suite, std::abs(kappa_h - (1.0 - dual.minimax_risk)) <= 1e-8, msg2.str());
  }
  return suite;
}

SelfCheckSuite coverage_suite(const SelfCheckOptions& options) {
  SelfCheckSuite suite{"interval-coverage", 0, 0, {}};
  const std::size_t fit_n = 150;
  const std::size_t mc_n = options.fast ? 100000 : 200000;
  const int resamples = options.fast ? 60 : 100;
  const std::size_t sample_n = 200;
  const double delta = 0.1;

  auto fit_data = synth_generate(fit_n, options.seed ^ 0xFEEDFACEULL);
  std::vector<BaseClassifier> classifiers;
  for (int k : {3, 5, 7}) classifiers.push_back(BaseClassifier::fit(KnnConfig{k}, fit_data));
  GeneratingFunction gf(fit_data.num_labels(), std::move(classifiers));
  const auto m = static_cast<std::size_t>(gf.m());

  auto mc = synth_generate(mc_n, options.seed ^ 0xABCDEFULL);
  std::vector<double> tau_inf(m, 0.0);
  for (std::size_t i = 0; i < mc.size(); ++i)
    tau_inf[static_cast<std::size_t>(gf.phi_index(mc.row(i), mc.label(i)))] += 1.0;
  for (auto& v : tau_inf) v /= static_cast<double>(mc.size());

  std::vector<double> range(m, 1.0);
  int covered = 0;
  for (int rep = 0; rep < resamples; ++rep) {
    auto sample = synth_generate(sample_n, options.seed * 1000003ULL + static_cast<std::uint64_t>(rep));
    std::vector<double> tau(m, 0.0);
    for (std::size_t i = 0; i < sample.size(); ++i)
      tau[static_cast<std::size_t>(gf.phi_index(sample.row(i), sample.label(i)))] += 1.0;
    for (auto& v : tau) v /= static_cast<double>(sample.size());
    auto interval = hoeffding_interval(tau, static_cast<std::int64_t>(sample_n), delta, range);
    bool contained = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (tau_inf[j] < interval.a[j] - 1e-12 || tau_inf[j] > interval.b[j] + 1e-12) {
        contained = false;
        break;
      }
    }
    if (contained) ++covered;
  }
  double frequency = static_cast<double>(covered) / resamples;
  std::ostringstream msg;
  msg << "coverage " << frequency << " below " << (1.0 - delta - 0.05);
  record(suite, frequency >= 1.0 - delta - 0.05, msg.str());
  return suite;
}

}  // namespace

SelfCheckReport run_selfcheck(const SelfCheckOptions& options) {
  SelfCheckReport report;
  report.suites.push_back(duality_suite(options));
  report.suites.push_back(sandwich_suite(options));
  report.suites.push_back(coverage_suite(options));
  report.ok = true;
  for (const auto& s : report.suites)
    if (s.failures > 0) report.ok = false;
  return report;
}

}  // namespace lpc
