#include <gtest/gtest.h>

#include <set>

#include "qnet/error.hpp"
#include "qnet/experiments.hpp"

namespace qnet {
namespace {

RawCell cell(std::size_t retries, std::size_t attempts, std::size_t failed, std::string label = "") {
  RawCell c;
  c.label = std::move(label);
  c.nodes = 20;
  c.avg_degree = 3.0;
  c.connections = 1;
  c.retries = retries;
  c.replicates = 1;
  c.attempts = attempts;
  c.failed_attempts = failed;
  c.requests = 1;
  c.failed_requests = failed == attempts ? 1 : 0;
  return c;
}

TEST(Summarize, WorkedExamples) {
  const std::vector<RawCell> clean{cell(1, 1, 0), cell(2, 1, 0)};
  for (const auto& row : summarize("x", clean).rows) {
    EXPECT_DOUBLE_EQ(row.failure_rate, 0.0);
    EXPECT_DOUBLE_EQ(row.variance, 0.0);
    EXPECT_DOUBLE_EQ(row.success_rate(), 1.0);
  }
  const std::vector<RawCell> constant{cell(1, 4, 1), cell(2, 8, 2), cell(3, 12, 3)};
  for (const auto& row : summarize("x", constant).rows) {
    EXPECT_DOUBLE_EQ(row.failure_rate, 0.25);
    EXPECT_DOUBLE_EQ(row.variance, 0.0);
  }
  const std::vector<RawCell> split{cell(1, 1, 0), cell(2, 2, 2)};
  const auto t = summarize("x", split);
  EXPECT_DOUBLE_EQ(t.rows[1].failure_rate, 1.0);
  EXPECT_DOUBLE_EQ(t.rows[1].final_failure_fraction, 1.0);
  EXPECT_DOUBLE_EQ(t.rows[0].variance, 0.25);
  EXPECT_DOUBLE_EQ(t.rows[1].variance, 0.25);
}

TEST(Summarize, GroupsDoNotMix) {
  const std::vector<RawCell> cells{cell(1, 1, 0, "a"), cell(2, 1, 1, "a"), cell(1, 1, 0, "b"), cell(2, 1, 0, "b")};
  const auto t = summarize("x", cells);
  EXPECT_DOUBLE_EQ(t.rows[0].variance, 0.25);
  EXPECT_DOUBLE_EQ(t.rows[2].variance, 0.0);
}

TEST(Summarize, EmptyCellsAreZero) {
  RawCell empty;
  const std::vector<RawCell> cells{empty};
  const auto t = summarize("x", cells);
  EXPECT_DOUBLE_EQ(t.rows[0].failure_rate, 0.0);
  EXPECT_DOUBLE_EQ(t.rows[0].final_failure_fraction, 0.0);
}

TEST(Statistics, MeanAndVariance) {
  const std::vector<double> xs{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean(xs), 2.5);
  EXPECT_DOUBLE_EQ(population_variance(xs), 1.25);
  EXPECT_DOUBLE_EQ(population_variance(std::span<const double>{}), 0.0);
}

TEST(Replicate, ZeroConnectionsIsEmpty) {
  ConfigPoint p;
  p.connections = 0;
  EXPECT_TRUE(run_replicate(p, 4).empty());
}

TEST(Replicate, DeterministicAndWellFormed) {
  ConfigPoint p;
  p.connections = 20;
  p.max_retries = 3;
  p.c1 = 1;
  p.c2 = 1;
  const auto a = run_replicate(p, 11);
  const auto b = run_replicate(p, 11);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_EQ(a[i].target, b[i].target);
    EXPECT_EQ(a[i].failures, b[i].failures);
    EXPECT_NE(a[i].source, a[i].target);
    EXPECT_LT(a[i].source, 20u);
    EXPECT_LE(a[i].attempts, 3u);
    EXPECT_EQ(a[i].failures, a[i].success ? a[i].attempts - 1 : a[i].attempts);
  }
}

TEST(Replicate, RetrySweepMatchesIndependentRuns) {
  ConfigPoint p;
  p.connections = 10;
  p.c1 = 1;
  p.c2 = 0;
  const std::vector<std::size_t> retries{1, 2, 5};
  const auto sweep = run_replicate_retry_sweep(p, retries, 3);
  for (std::size_t i = 0; i < retries.size(); ++i) {
    p.max_retries = retries[i];
    const auto solo = run_replicate(p, 3);
    ASSERT_EQ(solo.size(), sweep[i].size());
    for (std::size_t k = 0; k < solo.size(); ++k) {
      EXPECT_EQ(solo[k].attempts, sweep[i][k].attempts);
      EXPECT_EQ(solo[k].success, sweep[i][k].success);
    }
  }
}

TEST(Replicate, RetriesNeverHurtTheFirstRequest) {
  // Same seed, same first request: more retries can only turn a failure into a success.
  ConfigPoint p;
  p.c1 = 0;
  p.c2 = 1;
  std::vector<std::size_t> retries{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sweep = run_replicate_retry_sweep(p, retries, seed);
    for (std::size_t r = 1; r < sweep.size(); ++r) {
      EXPECT_GE(sweep[r][0].success, sweep[r - 1][0].success) << "seed " << seed;
    }
  }
}

TEST(Sweeps, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c;
  c.nodes = {15};
  c.retries = {1, 3};
  c.connections = 5;
  c.replicates = 12;
  c.c1 = 1;
  c.c2 = 1;
  c.threads = 1;
  const auto one = run_multi_connection_sweep(c).to_table().to_string(TableFormat::kCsv);
  c.threads = 4;
  EXPECT_EQ(run_multi_connection_sweep(c).to_table().to_string(TableFormat::kCsv), one);
}

TEST(Sweeps, FirstConnectionMatchesSingleConnectionSweep) {
  ExperimentConfig c;
  c.nodes = {20};
  c.connections = 8;
  c.replicates = 30;
  c.c1 = 1;
  c.c2 = 1;
  const auto multi = run_multi_connection_sweep(c);
  c.connections = 1;
  const auto single = run_single_connection_sweep(c);
  ASSERT_EQ(single.rows.size(), c.retries.size());
  for (std::size_t r = 0; r < c.retries.size(); ++r) {
    const auto& m = multi.rows[r];
    ASSERT_EQ(m.connections, 1u);
    EXPECT_EQ(m.retries, single.rows[r].retries);
    EXPECT_DOUBLE_EQ(m.failure_rate, single.rows[r].failure_rate);
    EXPECT_DOUBLE_EQ(m.final_failure_fraction, single.rows[r].final_failure_fraction);
  }
  EXPECT_EQ(multi.rows.size(), 8 * c.retries.size());
}

TEST(Sweeps, CompleteGraphNeverFails) {
  ExperimentConfig c;
  c.nodes = {8};
  c.avg_degree = 7.0;
  c.retries = {1, 2};
  c.connections = 10;
  c.replicates = 10;
  c.c1 = 0;
  c.c2 = 0;
  for (const auto& row : run_multi_connection_sweep(c).rows) {
    EXPECT_DOUBLE_EQ(row.failure_rate, 0.0);
    EXPECT_DOUBLE_EQ(row.variance, 0.0);
  }
}

TEST(Sweeps, VarianceByConnectionsCollapsesRetryAxis) {
  ExperimentConfig c;
  c.nodes = {12};
  c.retries = {1, 2, 3};
  c.connections = 4;
  c.replicates = 10;
  c.c1 = 1;
  c.c2 = 1;
  const auto multi = run_multi_connection_sweep(c);
  const auto v = variance_by_connections(multi);
  ASSERT_EQ(v.rows.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(v.rows[k].experiment, "fig5");
    EXPECT_EQ(v.rows[k].connections, k + 1);
    EXPECT_EQ(v.rows[k].retries, 3u);
    const double rates[] = {multi.rows[3 * k].failure_rate, multi.rows[3 * k + 1].failure_rate,
                            multi.rows[3 * k + 2].failure_rate};
    EXPECT_DOUBLE_EQ(v.rows[k].variance, population_variance(rates));
    EXPECT_DOUBLE_EQ(v.rows[k].failure_rate, mean(rates));
  }
}

TEST(Sweeps, SparsityArmsHalveTheDegree) {
  ExperimentConfig c;
  c.nodes = {30};
  c.avg_degree = 0.0;
  c.retries = {1};
  c.replicates = 2;
  c.connections = 2;
  EXPECT_THROW(run_sparsity_comparison(c), ValidationError);

  c.avg_degree = 8.0;
  c.c1 = 1;
  c.c2 = 1;
  const auto t = run_sparsity_comparison(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].label, "normal");
  EXPECT_DOUBLE_EQ(t.rows[0].avg_degree, 8.0);
  EXPECT_EQ(t.rows[1].label, "sparse");
  EXPECT_DOUBLE_EQ(t.rows[1].avg_degree, 4.0);
}

TEST(Sweeps, LargerNetworksSpreadMoreFailures) {
  ExperimentConfig c;
  c.nodes = {10, 60};
  c.retries = {1};
  c.replicates = 150;
  c.c1 = 1;
  c.c2 = 1;
  const auto t = run_single_connection_sweep(c);
  EXPECT_LT(t.rows[0].final_failure_fraction, t.rows[1].final_failure_fraction);
}

TEST(Sweeps, SparsityArmsShareSeeds) {
  // The sparse arm at 2d replays the normal arm at d exactly.
  ExperimentConfig c;
  c.nodes = {30};
  c.retries = {1, 2};
  c.replicates = 6;
  c.connections = 5;
  c.c1 = 1;
  c.c2 = 1;
  c.avg_degree = 4.0;
  const auto low = run_sparsity_comparison(c);
  c.avg_degree = 8.0;
  const auto high = run_sparsity_comparison(c);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_DOUBLE_EQ(low.rows[r].avg_degree, high.rows[2 + r].avg_degree);
    EXPECT_DOUBLE_EQ(low.rows[r].failure_rate, high.rows[2 + r].failure_rate);
    EXPECT_DOUBLE_EQ(low.rows[r].final_failure_fraction, high.rows[2 + r].final_failure_fraction);
  }
}

TEST(Sweeps, FailureSurfaceFlattensForLargeNetworksAndManyRetries) {
  ExperimentConfig c;
  c.nodes = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  c.replicates = 50;
  c.c1 = 1;
  c.c2 = 1;
  const auto t = run_single_connection_sweep(c);
  double lo = 1, hi = 0, region_lo = 1, region_hi = 0;
  for (const auto& row : t.rows) {
    lo = std::min(lo, row.failure_rate);
    hi = std::max(hi, row.failure_rate);
    if (row.nodes >= 40 && row.retries >= 5) {
      region_lo = std::min(region_lo, row.failure_rate);
      region_hi = std::max(region_hi, row.failure_rate);
    }
  }
  EXPECT_LT(region_hi - region_lo, hi - lo);
}

TEST(Sweeps, FiftyConnectionsFailLessThanOne) {
  ExperimentConfig c;
  c.nodes = {20};
  c.connections = 50;
  c.replicates = 200;
  c.c1 = 1;
  c.c2 = 1;
  const auto t = run_multi_connection_sweep(c);
  const auto per_retry = c.retries.size();
  for (std::size_t r = 0; r < per_retry; ++r) {
    const auto& one = t.rows[r];
    const auto& fifty = t.rows[49 * per_retry + r];
    ASSERT_EQ(fifty.connections, 50u);
    ASSERT_EQ(one.retries, fifty.retries);
    EXPECT_LT(fifty.failure_rate, one.failure_rate) << "retries " << one.retries;
    EXPECT_LE(fifty.final_failure_fraction, one.final_failure_fraction) << "retries " << one.retries;
  }
}

TEST(Sweeps, ValidationErrors) {
  ExperimentConfig c;
  c.replicates = 0;
  EXPECT_THROW(run_single_connection_sweep(c), ValidationError);
  c.replicates = 1;
  c.retries = {0};
  EXPECT_THROW(run_single_connection_sweep(c), ValidationError);
  c.retries = {1};
  c.nodes = {};
  EXPECT_THROW(run_single_connection_sweep(c), ValidationError);
  c.nodes = {5};
  c.connections = 0;
  EXPECT_THROW(run_multi_connection_sweep(c), ValidationError);
}

TEST(MetricsTable, CsvHeader) {
  MetricsTable t;
  t.rows.push_back({"fig3", "", 10, 3.0, 1, 2, 100, 0.5, 0.25, 0.0});
  EXPECT_EQ(t.to_table().to_string(TableFormat::kCsv),
            "experiment,nodes,avg_degree,connections,retries,replicates,failure_rate,final_failure_fraction,variance\n"
            "fig3,10,3,1,2,100,0.5,0.25,0\n");
}

}  // namespace
}  // namespace qnet
