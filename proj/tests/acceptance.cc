// Copyright 2026 The posterq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances and runtime limits are pinned
// below; a criterion that exceeds its runtime limit fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.h"
#include "cli/synth.h"
#include "fixtures.h"
#include "oracle.h"
#include "posterq/dataset_analysis.h"
#include "posterq/hard_subset.h"
#include "posterq/io.h"
#include "posterq/output_parser.h"
#include "posterq/reward.h"
#include "posterq/stats.h"
#include "posterq/text_metrics.h"

namespace {

using namespace posterq;
namespace fs = std::filesystem;

constexpr double kExactTol = 1e-9;
constexpr double kAlphaSquaringTol = 1e-12;
constexpr double kOracleTol = 1e-9;
constexpr double kPlantedRate = 44.8;
constexpr double kPlantedTol = 1.0;
constexpr double kIndependenceBound = 0.05;

// Collects failed checks; only the first few are printed.
class Checker {
 public:
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      fail(fmt::format("{}: got {:.12g}, want {:.12g} (tol {:g})", what, got, want, tol));
    }
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(std::string msg) {
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(std::move(msg));
  }
  int failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

ModelOutput valid_output(const ScoreVector& v) {
  return parse_output(fixtures::conformant_output(v, "ok"));
}

// ------------------------------------------------------------- criterion 1

void reward_exactness(Checker& c) {
  const ScoreVector gt(4.0, 3.5, 2.0, 4.5, 2.9);
  c.near(accuracy_reward(ScoreVector(4.0, 3.5, 2.0, 4.5, 3.1), gt), 0.94, kExactTol, "R_acc tier cross");
  c.near(accuracy_reward(ScoreVector(4.0, 3.5, 2.3, 4.5, 2.9), gt), 0.8, kExactTol, "R_acc outside tau");
  const ScoreVector three(3, 3, 3, 3, 3);
  c.near(distribution_reward(ScoreVector(3.2, 3.2, 3.2, 3.2, 3), three), std::exp(-0.2), kExactTol,
         "R_dist 0.4");
  c.near(distribution_reward(ScoreVector(3.2, 3.2, 3.2, 3.2, 3), three), 0.818731, 5e-7, "R_dist value");
  c.near(distribution_reward(ScoreVector(4, 3, 3, 3, 3), three), std::exp(-0.5), kExactTol, "R_dist 1.0");
  c.near(distribution_reward(ScoreVector(4, 3, 3, 3, 3), three), 0.606531, 5e-7, "R_dist value");
  const RewardBreakdown mixed = total_reward(valid_output(ScoreVector(3.4, 3, 3, 3, 3)), three);
  c.near(mixed.r_score, 0.65 * 0.8 + 0.35 * std::exp(-0.2), kExactTol, "r_score");
  c.near(mixed.r_score, 0.806556, 5e-7, "r_score value");
  c.near(total_reward(valid_output(three), three).total, 2.0, kExactTol, "total at gt");
}

// ------------------------------------------------------------- criterion 2

void reward_properties(Checker& c) {
  std::mt19937_64 rng(20260101);
  const RewardConfig cfg;
  RewardConfig doubled = cfg;
  doubled.alpha = 2 * cfg.alpha;
  for (int i = 0; i < 10000; ++i) {
    const ScoreVector a = i % 2 ? fixtures::grid_vector(rng) : fixtures::real_vector(rng);
    const ScoreVector b = i % 3 ? fixtures::grid_vector(rng) : fixtures::real_vector(rng);
    const double acc = accuracy_reward(a, b, cfg);
    const double dist = distribution_reward(a, b, cfg);
    c.expect(acc >= 0.0 && acc <= 1.0, "R_acc bounds");
    c.expect(dist > 0.0 && dist <= 1.0, "R_dist bounds");
    c.expect(acc == accuracy_reward(b, a, cfg), "R_acc symmetry");
    c.near(dist, distribution_reward(b, a, cfg), 1e-15, "R_dist symmetry");
    c.near(distribution_reward(a, b, doubled), dist * dist, kAlphaSquaringTol, "alpha squaring");
    const RewardBreakdown t = total_reward(valid_output(a), b, cfg);
    c.expect(t.total >= 0.0 && t.total <= 1.0 + cfg.lambda_fmt, "total bounds");
    c.expect(total_reward(parse_output(format_answer(a)), b, cfg).total == 0.0, "zero on invalid");

    // Moving one sub-dimension of `a` further from `b` never raises R_dist.
    auto v = a.values();
    const std::size_t d = i % kNumSubDimensions;
    const double step = v[d] >= b.values()[d] ? 0.1 : -0.1;
    if (v[d] + step >= 1.0 && v[d] + step <= 5.0) {
      v[d] += step;
      c.expect(distribution_reward(ScoreVector(v), b, cfg) < dist, "R_dist monotone");
    }
  }
  // Tier penalty: within tau, a crossing scales that dimension's term by p.
  const ScoreVector gt(3.0, 3.5, 3.5, 3.5, 3.5);
  const double same = accuracy_reward(ScoreVector(3.1, 3.5, 3.5, 3.5, 3.5), gt, cfg);
  const double cross = accuracy_reward(ScoreVector(2.9, 3.5, 3.5, 3.5, 3.5), gt, cfg);
  c.near(same - cross, (1.0 - cfg.tier_penalty) / 5.0, kExactTol, "tier penalty");
}

// ------------------------------------------------------------- criterion 3

void metric_oracles(Checker& c) {
  std::mt19937_64 rng(7331);
  std::uniform_int_distribution<int> len(2, 20), grid(10, 50), coders(2, 4);
  std::bernoulli_distribution missing(0.2);
  for (int t = 0; t < 1000; ++t) {
    const int n = len(rng);
    std::vector<double> p, g;
    for (int i = 0; i < n; ++i) {
      p.push_back(grid(rng) / 10.0);
      g.push_back(grid(rng) / 10.0);
    }
    const PairedSeries s(p, g);
    for (double k : {0.5, 1.0}) c.near(acc_at_k(s, k), oracle::acc_at_k(p, g, k), kOracleTol, "Acc@k");
    const bool flat = std::ranges::all_of(p, [&](double v) { return v == p[0]; }) ||
                      std::ranges::all_of(g, [&](double v) { return v == g[0]; });
    if (!flat) {
      c.near(plcc(s), oracle::pearson(p, g), kOracleTol, "PLCC");
      c.near(srcc(s), oracle::spearman(p, g), kOracleTol, "SRCC");
    }

    const int m = coders(rng);
    std::vector<ReliabilityMatrix::Row> units;
    for (int u = 0; u < n; ++u) {
      ReliabilityMatrix::Row row;
      for (int k = 0; k < m; ++k) {
        row.push_back(missing(rng) ? std::nullopt : std::optional(grid(rng) / 10.0));
      }
      units.push_back(row);
    }
    const ReliabilityMatrix matrix(units);
    const auto oa = oracle::alpha_interval(units);
    if (oa) {
      c.near(krippendorff_alpha_interval(matrix).alpha, *oa, kOracleTol, "alpha");
      c.near(loose_accuracy(matrix), *oracle::loose_accuracy(units, 0.5), kOracleTol, "loose accuracy");
    } else {
      bool threw = false;
      try {
        krippendorff_alpha_interval(matrix);
      } catch (const Error&) {
        threw = true;
      }
      c.expect(threw, "alpha undefined without pairable units");
    }
  }
  const AlphaResult hand = krippendorff_alpha_interval(
      ReliabilityMatrix(std::vector<ReliabilityMatrix::Row>{{1, 2}, {3, 3}}));
  c.near(hand.alpha, 1.0 - 0.5 / (22.0 / 12.0), kExactTol, "alpha hand fixture");
  c.near(hand.alpha, 0.727273, 5e-7, "alpha hand value");
}

// ------------------------------------------------------------- criterion 4

void selection_equivalence(Checker& c) {
  const std::map<SourceKind, std::uint64_t> train = {
      {kAllSources[0], 4166}, {kAllSources[1], 4166}, {kAllSources[2], 2500},
      {kAllSources[3], 1666}, {kAllSources[4], 1666}, {kAllSources[5], 833}};
  const SelectionPlan plan = plan_quotas(train, 3000);
  const std::array<std::uint64_t, kNumSources> want = {833, 833, 500, 333, 333, 166};
  c.expect(plan.quotas == want, "train-split quotas");
  c.expect(plan.remainder == 2, "train-split remainder");

  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(1, 200), src(0, 5), err(0, 40);
  for (int t = 0; t < 500; ++t) {
    const int n = size(rng);
    std::vector<ErrorRecord> records;
    std::vector<oracle::Item> items;
    std::vector<std::uint64_t> pops(kNumSources, 0);
    for (int i = 0; i < n; ++i) {
      const int s = src(rng);
      const double e = err(rng) / 40.0;  // coarse grid: plenty of ties
      const std::string id = fmt::format("i{:03d}", (i * 7919) % 1000);
      records.push_back({id, kAllSources[static_cast<std::size_t>(s)], e});
      items.push_back({id, s, e});
      ++pops[static_cast<std::size_t>(s)];
    }
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(rng);
    const SelectionPlan p = plan_quotas(count_sources(records), k);
    const auto quotas = oracle::floor_quotas(pops, k);
    c.expect(std::equal(quotas.begin(), quotas.end(), p.quotas.begin()), "quota floors");
    const auto serial = select_hard(records, p);
    c.expect(serial == oracle::stratified_selection(items, quotas), "selection vs oracle");
    for (int run = 0; run < 3; ++run) {
      c.expect(select_hard(records, p, {false, 8}) == serial, "8-way determinism");
    }
  }
}

// ------------------------------------------------------------- criterion 5

void parser_robustness(Checker& c) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    const ScoreVector v = i % 2 ? fixtures::grid_vector(rng) : fixtures::real_vector(rng);
    const ModelOutput out = parse_output(fixtures::conformant_output(v, "reasoning " + std::to_string(i)));
    c.expect(out.valid() && out.scores && *out.scores == v, "conformant round trip");
  }
  for (int i = 0; i < 100; ++i) {
    const auto m = static_cast<fixtures::Mutation>(i % 4);
    const ModelOutput out = parse_output(fixtures::mutate(fixtures::grid_vector(rng), m, rng));
    c.expect(out.verdict == fixtures::expected_verdict(m),
             fmt::format("mutation {} verdict {}", i % 4, verdict_name(out.verdict)));
  }
  std::uniform_int_distribution<int> len(0, 256), byte(0, 255);
  static const std::string kSeeds[] = {"<answer>", "</answer>", "<think>", "{\"object\":", "}"};
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int n = len(rng);
    for (int j = 0; j < n; ++j) {
      if (byte(rng) < 8) {
        s += kSeeds[static_cast<std::size_t>(byte(rng)) % 5];
      } else {
        s.push_back(static_cast<char>(byte(rng)));
      }
    }
    try {
      const ModelOutput out = parse_output(s);
      c.expect(out.valid() == out.scores.has_value(), "verdict consistent with scores");
    } catch (...) {
      c.fail("parse_output threw on random bytes");
    }
  }
}

// ------------------------------------------------------------- criterion 6

std::u32string random_cjk(std::mt19937_64& rng, int max_len, char32_t span) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> ch(0x4E00, 0x4E00 + span);
  std::u32string s;
  for (int i = len(rng); i > 0; --i) s.push_back(static_cast<char32_t>(ch(rng)));
  return s;
}

void text_metrics(Checker& c) {
  c.near(phrase_f1(PhraseSet{"A", "B"}, PhraseSet{"A", "B"}), 1.0, kExactTol, "F1 identical");
  c.near(phrase_f1(PhraseSet{"A", "B"}, PhraseSet{"A", "C"}), 0.5, kExactTol, "F1 half");
  c.near(phrase_f1(PhraseSet{}, PhraseSet{}), 1.0, kExactTol, "F1 both empty");
  c.near(phrase_f1(PhraseSet{"A"}, PhraseSet{}), 0.0, kExactTol, "F1 one empty");
  c.near(bag_of_chars_cosine({"促销活动", "促销活动"}), 1.0, kExactTol, "cosine identical");
  c.near(bag_of_chars_cosine({"促销", "销促"}), 1.0, kExactTol, "cosine permuted");
  c.near(bag_of_chars_cosine({"abc", "abd"}), 2.0 / 3.0, kExactTol, "cosine abc/abd");
  c.near(normalized_levenshtein_sim({"abc", "abd"}), 2.0 / 3.0, kExactTol, "lev abc/abd");
  c.near(normalized_levenshtein_sim({"限时特惠", "限时特惠"}), 1.0, kExactTol, "lev identical");
  c.near(normalized_levenshtein_sim({"", "abcd"}), 0.0, kExactTol, "lev one empty");
  c.expect(levenshtein(U"kitten", U"sitting") == 3, "kitten/sitting");

  std::mt19937_64 rng(66);
  for (int t = 0; t < 1000; ++t) {
    const std::u32string a = random_cjk(rng, 40, 20), b = random_cjk(rng, 40, 20);
    std::u32string shuffled = a;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    c.near(bag_of_chars_cosine({scalars_to_utf8(a), scalars_to_utf8(b)}),
           bag_of_chars_cosine({scalars_to_utf8(shuffled), scalars_to_utf8(b)}), 1e-12,
           "cosine permutation invariance");
  }
  for (int t = 0; t < 1000; ++t) {
    const std::u32string a = random_cjk(rng, 30, 6), b = random_cjk(rng, 30, 6);
    c.expect(levenshtein(a, b) == oracle::levenshtein(a, b), "levenshtein vs oracle");
  }
}

// ------------------------------------------------------------- criterion 7

void analytics_recovery(Checker& c) {
  std::mt19937_64 rng(448);
  // Exactly 4,480 of 10,000 flagged records carry the Text bottleneck, so
  // the check measures recovery rather than sampling noise of the plant.
  const auto planted = fixtures::planted_bottleneck_exact(10000, 4480, rng);
  const WeakestLinkReport r = weakest_link(planted, 3.0);
  c.expect(r.flagged == planted.size(), "all planted records flagged");
  c.expect(r.counts[index_of(Dimension::kText)] == 4480, "planted Text count recovered");
  c.near(r.percentages[index_of(Dimension::kText)], kPlantedRate, kPlantedTol, "Text bottleneck rate");

  std::vector<AnnotationRecord> independent;
  for (int i = 0; i < 10000; ++i) {
    AnnotationRecord rec;
    rec.id = "u" + std::to_string(i);
    rec.scores = fixtures::grid_vector(rng);
    independent.push_back(std::move(rec));
  }
  const CorrelationMatrix m = correlation_matrix(independent);
  for (std::size_t i = 0; i < kNumSubDimensions; ++i) {
    for (std::size_t j = 0; j < kNumSubDimensions; ++j) {
      if (i == j) continue;
      c.expect(m.entries[i][j] && std::fabs(*m.entries[i][j]) < kIndependenceBound,
               fmt::format("off-diagonal rho[{}][{}]", i, j));
    }
  }
}

// ------------------------------------------------------------- criterion 8

std::string snapshot_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    all += fs::relative(f, dir).string() + "\n" + read_file(f) + "\n";
  }
  return all;
}

std::string run_pipeline(const fs::path& in, const fs::path& out, int threads) {
  namespace cli = posterq::cli;
  cli::CommonOptions common;
  common.threads = threads;
  std::ostringstream stdout_text, log;
  cli::cmd_eval(common, {in / "preds.jsonl", in / "gt.jsonl"}, {stdout_text, log});
  common.out = out;
  cli::BenchReportOptions bench;
  bench.human = in / "human.jsonl";
  bench.evaluator = in / "evaluator.jsonl";
  bench.text = in / "text.jsonl";
  bench.fidelity = in / "features.jsonl";
  cli::cmd_bench_report(common, bench, {stdout_text, log});
  return stdout_text.str() + snapshot_dir(out);
}

void end_to_end(Checker& c) {
  namespace cli = posterq::cli;
  const fs::path root = fs::temp_directory_path() / fmt::format("posterq_accept_{}", ::getpid());
  fs::remove_all(root);
  fs::create_directories(root / "in");
  const auto files = cli::synth_fixture({2026, 5, 40});
  for (const auto& [name, text] : files) write_file(root / "in" / name, text);

  std::vector<std::string> outputs;
  for (int run = 0; run < 3; ++run) {
    outputs.push_back(run_pipeline(root / "in", root / fmt::format("serial{}", run), 1));
    outputs.push_back(run_pipeline(root / "in", root / fmt::format("parallel{}", run), 8));
  }
  for (const auto& o : outputs) c.expect(o == outputs.front(), "byte-identical outputs");

  // pred = gt for every model.
  std::string preds;
  const auto gt = parse_annotations(files.at("gt.jsonl"), "gt.jsonl");
  for (int m = 1; m <= 5; ++m) {
    for (const auto& r : gt) {
      preds += OrderedJson({{"id", r.id}, {"model", cli::synth_model_name(m)},
                            {"scores", score_vector_to_json(r.scores)}})
                   .dump() +
               "\n";
    }
  }
  write_file(root / "in" / "identity.jsonl", preds);
  std::ostringstream out, log;
  cli::cmd_eval({}, {root / "in" / "identity.jsonl", root / "in" / "gt.jsonl"}, {out, log});
  const Json report = Json::parse(out.str());
  int cells = 0;
  for (const auto& [model, mj] : report.at("models").items()) {
    for (const auto& [dim, d] : mj.at("dimensions").items()) {
      ++cells;
      c.expect(d.at("plcc").is_number() && d.at("plcc").get<double>() == 1.0,
               model + "/" + dim + " PLCC");
      c.expect(d.at("srcc").is_number() && std::fabs(d.at("srcc").get<double>() - 1.0) <= kExactTol,
               model + "/" + dim + " SRCC");
      c.expect(d.at("acc").at("acc@0.5").get<double>() == 100.0, model + "/" + dim + " Acc@0.5");
    }
  }
  c.expect(cells == 25, fmt::format("expected 25 cells, saw {}", cells));
  fs::remove_all(root);
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "reward exactness", 1.0, reward_exactness},
      {2, "reward properties (10,000 pairs)", 5.0, reward_properties},
      {3, "metric oracle equivalence (1,000 instances)", 30.0, metric_oracles},
      {4, "stratified selection equivalence (500 datasets)", 10.0, selection_equivalence},
      {5, "parser robustness", 10.0, parser_robustness},
      {6, "text metrics", 10.0, text_metrics},
      {7, "analytics recovery", 10.0, analytics_recovery},
      {8, "end-to-end determinism", 5.0, end_to_end},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(checker);
    } catch (const std::exception& e) {
      checker.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) {
      checker.fail(fmt::format("runtime {:.2f} s exceeds {:.0f} s", secs, cr.limit_seconds));
    }
    const bool ok = checker.failures() == 0;
    failed += ok ? 0 : 1;
    fmt::print("{} criterion {}: {} ({:.2f} s, limit {:.0f} s)\n", ok ? "PASS" : "FAIL",
               cr.number, cr.name, secs, cr.limit_seconds);
    for (const auto& msg : checker.messages()) fmt::print("    {}\n", msg);
    if (checker.failures() > static_cast<int>(checker.messages().size())) {
      fmt::print("    ... {} failed checks in total\n", checker.failures());
    }
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
             criteria.size());
  return failed == 0 ? 0 : 1;
}
