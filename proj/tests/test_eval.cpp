#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cctype>
#include <random>
#include <set>
#include <sstream>

#include "conflictqa/error.hpp"
#include "conflictqa/eval.hpp"
#include "conflictqa/report.hpp"

#include "test_util.hpp"

using namespace conflictqa;

namespace {

// Reference normalization, written independently of answer_norm.cpp: regex-free
// but composed differently (erase-remove + stream tokenization).
std::string ref_normalize(const std::string& input) {
  std::string lowered;
  for (unsigned char c : input) {
    lowered.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  std::string no_punct;
  for (unsigned char c : lowered) {
    if (!(c < 0x80 && std::ispunct(c))) no_punct.push_back(static_cast<char>(c));
  }
  std::istringstream in(no_punct);
  std::string token;
  std::string out;
  while (in >> token) {
    if (token == "a" || token == "an" || token == "the") continue;
    if (!out.empty()) out += " ";
    out += token;
  }
  return out;
}

std::set<std::string> ref_set(const std::vector<std::string>& answers) {
  std::set<std::string> out;
  for (const auto& a : answers) {
    auto n = ref_normalize(a);
    if (!n.empty()) out.insert(n);
  }
  return out;
}

// Brute-force scoring reference used by the metric-equivalence property.
double ref_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  auto p = ref_set(pred);
  auto g = ref_set(gold);
  if (p.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& x : p) {
    if (g.count(x)) ++hits;
  }
  if (hits == 0) return 0.0;
  double precision = double(hits) / double(p.size());
  double recall = double(hits) / double(g.size());
  return 2 * precision * recall / (precision + recall);
}

int ref_em(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  return ref_set(pred) == ref_set(gold) ? 1 : 0;
}

AnswerSet as(const std::vector<std::string>& answers) { return AnswerSet::from(answers); }

InstanceResult make_result(const std::string& id, Scenario scenario, Ordering ordering,
                           double f1, int em, const std::string& model = "m") {
  InstanceResult r;
  r.instance_id = id;
  r.question_id = id;
  r.setting = Setting::NonComp;
  r.scenario = scenario;
  r.ordering = ordering;
  r.model = model;
  r.f1 = f1;
  r.em = em;
  return r;
}

}  // namespace

TEST_CASE("normalize_answer applies the documented rules") {
  CHECK(normalize_answer("The Mexico City.") == "mexico city");
  CHECK(normalize_answer("") == "");
  CHECK(normalize_answer("  An   Apple ") == "apple");
  CHECK(normalize_answer("don't-stop") == "dontstop");
}

TEST_CASE("normalize_answer matches the independent reference on fuzzed strings") {
  std::mt19937 rng(99);
  const std::string alphabet = "abcXYZ ,.'-!?()the an a  09";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
    CAPTURE(s);
    CHECK(normalize_answer(s) == ref_normalize(s));
  }
}

TEST_CASE("question_f1 basics") {
  CHECK(question_f1(as({"mexico city"}), as({"mexico city"})) == doctest::Approx(1.0));
  CHECK(question_f1(AnswerSet{}, as({"x"})) == doctest::Approx(0.0));
  CHECK(question_f1(as({"a", "c"}), as({"a", "b"})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(question_f1(as({"a"}), AnswerSet{}), std::invalid_argument);
}

TEST_CASE("exact_match is set equality in both directions") {
  CHECK(exact_match(as({"a", "b"}), as({"b", "a"})) == 1);
  CHECK(exact_match(as({"a", "b", "c"}), as({"a", "b"})) == 0);
  CHECK(exact_match(as({"a"}), as({"a", "b"})) == 0);
}

TEST_CASE("em implies f1 == 1") {
  std::mt19937 rng(5);
  std::vector<std::string> universe{"ada", "babel", "coq", "dart", "elm"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> pred, gold;
    for (const auto& u : universe) {
      if (rng() % 2) pred.push_back(u);
      if (rng() % 2) gold.push_back(u);
    }
    if (gold.empty()) gold.push_back("ada");
    auto p = as(pred);
    auto g = as(gold);
    double f1 = question_f1(p, g);
    int em = exact_match(p, g);
    CHECK(f1 >= 0.0);
    CHECK(f1 <= 1.0);
    if (em == 1) CHECK(f1 == doctest::Approx(1.0));
  }
}

TEST_CASE("macro_f1 is the arithmetic mean") {
  std::vector<double> scores{1.0, 0.0};
  CHECK(macro_f1(scores) == doctest::Approx(0.5));
  std::vector<double> same(17, 0.625);
  CHECK(macro_f1(same) == doctest::Approx(0.625));
  CHECK_THROWS_AS(macro_f1(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("metric oracle equivalence on randomized answer sets") {
  std::mt19937 rng(20250811);
  std::vector<std::string> universe;
  for (int i = 0; i < 12; ++i) universe.push_back("entity " + std::to_string(i));
  universe[3] = "The Entity 3";  // normalization collisions on purpose
  universe[7] = "entity 7.";

  std::vector<double> ours, refs;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> pred, gold;
    for (const auto& u : universe) {
      if (rng() % 3 == 0) pred.push_back(u);
      if (rng() % 3 == 0) gold.push_back(u);
    }
    if (ref_set(gold).empty()) gold.push_back(universe[rng() % universe.size()]);

    auto p = as(pred);
    auto g = as(gold);
    double f1 = question_f1(p, g);
    int em = exact_match(p, g);
    CAPTURE(trial);
    CHECK(f1 == doctest::Approx(ref_f1(pred, gold)).epsilon(1e-12));
    CHECK(em == ref_em(pred, gold));
    ours.push_back(f1);
    refs.push_back(ref_f1(pred, gold));
  }
  CHECK(macro_f1(ours) == doctest::Approx(macro_f1(refs)).epsilon(1e-12));
}

TEST_CASE("degradation reproduces the published cells") {
  auto gpt4o = degradation(88.44, 54.39);
  CHECK(gpt4o.delta == doctest::Approx(34.05));
  REQUIRE(gpt4o.relative_pct.has_value());
  CHECK(*gpt4o.relative_pct == 39);

  auto qwen = degradation(86.01, 21.85);
  CHECK(qwen.delta == doctest::Approx(64.16));
  CHECK(*qwen.relative_pct == 75);

  auto flat = degradation(42.0, 42.0);
  CHECK(flat.delta == doctest::Approx(0.0));
  CHECK(*flat.relative_pct == 0);

  auto zero = degradation(0.0, 0.0);
  CHECK_FALSE(zero.relative_pct.has_value());
}

TEST_CASE("ordering_gap and dual_order_average") {
  std::vector<InstanceResult> first{
      make_result("i1", Scenario::TripleConf, Ordering::ConflictFirst, 0.2, 0),
      make_result("i2", Scenario::TripleConf, Ordering::ConflictFirst, 0.4, 0)};
  std::vector<InstanceResult> last{
      make_result("i1", Scenario::TripleConf, Ordering::ConflictLast, 1.0, 1),
      make_result("i2", Scenario::TripleConf, Ordering::ConflictLast, 0.6, 1)};
  auto agg_first = aggregate_results(first);
  auto agg_last = aggregate_results(last);

  SUBCASE("identical runs gap to zero") {
    auto gap = ordering_gap(agg_first, agg_first);
    CHECK(gap.f1 == doctest::Approx(0.0));
    CHECK(gap.em == doctest::Approx(0.0));
  }
  SUBCASE("signed gap and antisymmetry") {
    auto gap = ordering_gap(agg_first, agg_last);
    CHECK(gap.f1 == doctest::Approx(0.5));
    CHECK(gap.em == doctest::Approx(1.0));
    auto swapped = ordering_gap(agg_last, agg_first);
    CHECK(swapped.f1 == doctest::Approx(-gap.f1));
    CHECK(swapped.em == doctest::Approx(-gap.em));
  }
  SUBCASE("coverage mismatch errors with the difference") {
    auto broken = last;
    broken[1].instance_id = "i9";
    CHECK_THROWS_WITH_AS(ordering_gap(agg_first, aggregate_results(broken)),
                         doctest::Contains("i9"), DataError);
  }
  SUBCASE("dual order average") {
    auto avg = dual_order_average(agg_first, agg_last);
    CHECK(avg.macro_f1 == doctest::Approx((0.3 + 0.8) / 2.0));
    CHECK(avg.em_rate == doctest::Approx(0.5));
    auto idem = dual_order_average(agg_first, agg_first);
    CHECK(idem.macro_f1 == doctest::Approx(agg_first.macro_f1));
  }
}

TEST_CASE("degradation cells join positive counterparts per setting") {
  std::vector<InstanceResult> results;
  // Non-COMP: Positive is the shared baseline.
  results.push_back(make_result("q1#positive", Scenario::Positive, Ordering::ConflictFirst,
                                1.0, 1));
  results.push_back(make_result("q1#triple_conf", Scenario::TripleConf,
                                Ordering::ConflictFirst, 0.5, 0));
  auto cells = degradation_cells(results);
  REQUIRE_FALSE(cells.empty());
  const ReportCell* f1_cell = nullptr;
  for (const auto& c : cells) {
    if (c.conflict == Scenario::TripleConf && c.metric == "F1") f1_cell = &c;
  }
  REQUIRE(f1_cell != nullptr);
  CHECK(f1_cell->cell.pos == doctest::Approx(100.0));
  CHECK(f1_cell->cell.conf == doctest::Approx(50.0));
  CHECK(f1_cell->cell.delta == doctest::Approx(50.0));
  CHECK(*f1_cell->cell.relative_pct == 50);
}

TEST_CASE("paper table cell text matches Table 2 formatting") {
  auto cell = degradation(88.44, 54.39);
  CHECK(format_delta_cell(cell) == "34.05_{39%}");
}

TEST_CASE("csv export reimports to identical aggregates") {
  std::vector<InstanceResult> results;
  results.push_back(make_result("q1#positive", Scenario::Positive, Ordering::ConflictFirst,
                                0.9, 1));
  results.push_back(make_result("q1#triple_conf", Scenario::TripleConf,
                                Ordering::ConflictFirst, 0.3, 0));
  results.push_back(make_result("q1#text_conf", Scenario::TextConf, Ordering::ConflictFirst,
                                0.6, 0));
  auto cells = degradation_cells(results);
  auto csv = cells_to_csv(cells);
  auto reimported = cells_from_csv(csv);
  REQUIRE(reimported.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(reimported[i].model == cells[i].model);
    CHECK(reimported[i].metric == cells[i].metric);
    CHECK(reimported[i].cell.pos == doctest::Approx(cells[i].cell.pos).epsilon(1e-9));
    CHECK(reimported[i].cell.conf == doctest::Approx(cells[i].cell.conf).epsilon(1e-9));
    CHECK(reimported[i].cell.delta == doctest::Approx(cells[i].cell.delta).epsilon(1e-9));
  }
  CHECK(csv.rfind("model,setting,scenario,metric,pos,conf,delta,relative_pct\n", 0) == 0);
}

TEST_CASE("single-model report bolds that model everywhere") {
  std::vector<InstanceResult> results;
  results.push_back(make_result("q1#positive", Scenario::Positive, Ordering::ConflictFirst,
                                0.8, 1, "solo"));
  results.push_back(make_result("q1#triple_conf", Scenario::TripleConf,
                                Ordering::ConflictFirst, 0.4, 0, "solo"));
  auto cells = degradation_cells(results);
  auto rendered = render_report(cells, ReportLayout::PaperTable);
  CHECK(rendered.find("**80.00**") != std::string::npos);
  CHECK(rendered.find("**40.00**") != std::string::npos);
}

TEST_CASE("results JSONL round trip") {
  testutil::TempDir tmp("results");
  std::vector<InstanceResult> results{
      make_result("q1#positive", Scenario::Positive, Ordering::ConflictLast, 0.75, 0)};
  results[0].predicted.insert("Canberra");
  results[0].parse_path = "final_line";
  auto path = tmp.path / "results.jsonl";
  write_results(path, results);
  auto loaded = read_results(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].instance_id == "q1#positive");
  CHECK(loaded[0].ordering == Ordering::ConflictLast);
  CHECK(loaded[0].f1 == doctest::Approx(0.75));
  CHECK(loaded[0].predicted.answers() == results[0].predicted.answers());
}
