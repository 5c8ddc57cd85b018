/**
 * Acceptance gate: exercises every promised behavior end to end and prints
 * one verdict line per criterion:
 *
 *   [k/9] <criterion-name> ... PASS|FAIL
 *
 * Usage: grasp_acceptance <fixtures-dir> <cli-path>
 * Exits nonzero when any criterion fails; failed checks list their details
 * under the verdict line.
 */
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "generators.hpp"
#include "grasp/direction.hpp"
#include "grasp/grading.hpp"
#include "grasp/json_io.hpp"
#include "grasp/mixed_protocol.hpp"

using namespace grasp;
namespace tg = grasp::testgen;

namespace {

std::string g_fixtures;
std::string g_cli;

// --- tiny check harness --------------------------------------------------

struct Criterion {
  std::string name;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& detail) {
    if (!ok) failures.push_back(detail);
  }
  template <typename T, typename U>
  void expect_eq(const T& actual, const U& expected, const std::string& what) {
    if (!(actual == expected)) {
      std::ostringstream msg;
      msg << what << ": expected \"" << expected << "\", got \"" << actual << "\"";
      failures.push_back(msg.str());
    }
  }
};

// --- shared helpers ----------------------------------------------------

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    ok = false;
    return "";
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ok = true;
  return buf.str();
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string command = "'" + g_cli + "' " + args + " 2>/dev/null";
  CmdResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

ToolRecord load_fixture(Criterion& c, const std::string& slug, bool& ok) {
  bool read_ok = false;
  const std::string text = read_file(g_fixtures + "/tools/" + slug + ".json", read_ok);
  if (!read_ok) {
    c.expect(false, "cannot read fixture " + slug);
    ok = false;
    return {};
  }
  const ParseResult parsed = parse_record(text);
  if (!parsed.record) {
    c.expect(false, "fixture " + slug + " failed to parse");
    ok = false;
    return {};
  }
  ok = true;
  return *parsed.record;
}

std::string markers_to_string(const std::map<GradeCell, std::string>& markers) {
  std::ostringstream out;
  for (const auto& [cell, marker] : markers) out << display_name(cell) << "=" << marker << " ";
  return out.str();
}

int grade_rank(const GradingResult& result) {
  if (!result.final_grade) return -1;
  const auto& order = ladder();
  const auto it = std::find(order.begin(), order.end(), *result.final_grade);
  return static_cast<int>(order.end() - it);
}

// --- criteria ------------------------------------------------------------

/// 1: the five reference tools grade to their published cells, with the
/// published marker rows, in under a second.
void check_reference_grading(Criterion& c) {
  using Markers = std::map<GradeCell, std::string>;
  struct Expected {
    const char* slug;
    const char* grade;
    Markers markers;
  };
  const std::vector<Expected> expected{
      {"lace-index", "C1", {{GradeCell::C1, "±+"}, {GradeCell::C3, "+"}}},
      {"centor-score",
       "B1",
       {{GradeCell::A1, "±-"},
        {GradeCell::A2, "-"},
        {GradeCell::B1, "+"},
        {GradeCell::C1, "+"},
        {GradeCell::C3, "+"}}},
      {"wells-criteria",
       "A2",
       {{GradeCell::A2, "+"}, {GradeCell::B1, "+"}, {GradeCell::C1, "+"}, {GradeCell::C3, "+"}}},
      {"mews", "A2", {{GradeCell::A2, "±+"}, {GradeCell::C1, "±+"}, {GradeCell::C3, "+"}}},
      {"ottawa-knee-rule",
       "A1",
       {{GradeCell::A1, "+"}, {GradeCell::C1, "+"}, {GradeCell::C3, "+"}}},
  };

  const auto started = std::chrono::steady_clock::now();
  for (const auto& exp : expected) {
    bool ok = false;
    const ToolRecord record = load_fixture(c, exp.slug, ok);
    if (!ok) continue;
    const GradingResult result = final_grade(record, exp.slug);
    c.expect_eq(result.grade_name(), exp.grade, std::string(exp.slug) + " grade");
    if (result.markers != exp.markers) {
      c.expect(false, std::string(exp.slug) + " markers: expected " +
                          markers_to_string(exp.markers) + "got " +
                          markers_to_string(result.markers));
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  c.expect(ms < 1000, "grading the reference corpus took " + std::to_string(ms) + "ms (>= 1s)");
}

/// 2: the direction calculus agrees with an independent presence-table oracle
/// on every conclusion sequence up to length four.
void check_direction_oracle(Criterion& c) {
  const std::vector<Conclusion> all{Conclusion::Positive, Conclusion::Equivocal,
                                    Conclusion::Negative};
  std::vector<std::vector<Conclusion>> sequences;
  for (Conclusion a : all) {
    sequences.push_back({a});
    for (Conclusion b : all) {
      sequences.push_back({a, b});
      for (Conclusion x : all) {
        sequences.push_back({a, b, x});
        for (Conclusion d : all) sequences.push_back({a, b, x, d});
      }
    }
  }
  c.expect_eq(sequences.size(), std::size_t{120}, "sequence count");

  int mismatches = 0;
  for (const auto& seq : sequences) {
    bool has_positive = false;
    bool has_non_positive = false;
    for (Conclusion conclusion : seq) {
      (conclusion == Conclusion::Positive ? has_positive : has_non_positive) = true;
    }
    const RawDirection expected = has_positive && has_non_positive ? RawDirection::Mixed
                                  : has_positive                   ? RawDirection::Positive
                                                                   : RawDirection::Negative;
    if (resolve_raw_direction(seq) != expected) ++mismatches;
  }
  c.expect(mismatches == 0,
           std::to_string(mismatches) + " of 120 sequences disagree with the oracle");

  try {
    resolve_raw_direction(std::vector<Conclusion>{});
    c.expect(false, "empty pool did not throw");
  } catch (const std::invalid_argument&) {
  }
}

EvidenceItem class_item(std::mt19937& rng, const std::string& id, Conclusion conclusion,
                        EvidenceClass cls) {
  EvidenceItem item;
  item.id = id;
  item.citation = id;
  item.year = tg::rand_int(rng, 1990, 2025);
  item.evaluation_type = EvaluationType::ExternalValidation;
  item.dataset_count = 1;
  item.conclusion = conclusion;
  tg::force_class(rng, cls, item);
  return item;
}

/// 3: once the best class present decides a mixed pool, adding lower-class
/// studies can never change the decision (1000 randomized pools).
void check_class_dominance(Criterion& c) {
  std::mt19937 rng(20260817u);
  for (int round = 0; round < 1000; ++round) {
    const int positives = tg::rand_int(rng, 1, 5);
    int non_positives = tg::rand_int(rng, 1, 5);
    if (non_positives == positives) ++non_positives;

    std::vector<EvidenceItem> pool;
    for (int i = 0; i < positives; ++i) {
      pool.push_back(class_item(rng, "a-pos-" + std::to_string(i), Conclusion::Positive,
                                EvidenceClass::A));
    }
    for (int i = 0; i < non_positives; ++i) {
      pool.push_back(class_item(
          rng, "a-non-" + std::to_string(i),
          tg::chance(rng, 0.5) ? Conclusion::Negative : Conclusion::Equivocal, EvidenceClass::A));
    }
    const Direction expected =
        positives > non_positives ? Direction::MixedPositive : Direction::MixedNegative;
    if (resolve_mixed(pool).value != expected) {
      c.expect(false, "round " + std::to_string(round) + ": class-A pool resolved wrong");
      return;
    }

    const int extras = tg::rand_int(rng, 1, 10);
    for (int i = 0; i < extras; ++i) {
      pool.push_back(class_item(rng, "low-" + std::to_string(i), tg::rand_conclusion(rng),
                                tg::chance(rng, 0.5) ? EvidenceClass::B : EvidenceClass::C));
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    if (resolve_mixed(pool).value != expected) {
      c.expect(false, "round " + std::to_string(round) +
                          ": lower-class studies overturned the class-A decision");
      return;
    }
  }
}

EvidenceItem fresh_class_a(std::mt19937& rng, Conclusion conclusion) {
  EvidenceItem item;
  item.id = "acceptance-extra";
  item.citation = item.id;
  item.year = tg::rand_int(rng, 1990, 2025);
  item.evaluation_type = tg::rand_evaluation_type(rng);
  item.conclusion = conclusion;
  item.matching = tg::matching_all(MatchState::Match);
  item.quality = tg::quality_all(QualityState::Adequate);
  if (item.evaluation_type == EvaluationType::InternalValidation) item.sufficient = true;
  if (item.evaluation_type == EvaluationType::ExternalValidation) item.dataset_count = 1;
  return item;
}

/// 4: appending supporting class-A evidence never lowers a grade, appending
/// opposing class-A evidence never raises one (1000 randomized records), and
/// Ungraded ranks strictly below C0.
void check_monotonicity(Criterion& c) {
  std::mt19937 rng(31337u);
  for (int round = 0; round < 1000; ++round) {
    const ToolRecord record = tg::rand_record(rng, 10, /*allow_overrides=*/false);
    const int before = grade_rank(final_grade(record));

    ToolRecord supported = record;
    supported.evidence.push_back(fresh_class_a(rng, Conclusion::Positive));
    if (grade_rank(final_grade(supported)) < before) {
      c.expect(false, "round " + std::to_string(round) + ": positive evidence lowered the grade");
      return;
    }

    ToolRecord opposed = record;
    opposed.evidence.push_back(fresh_class_a(rng, Conclusion::Negative));
    if (grade_rank(final_grade(opposed)) > before) {
      c.expect(false, "round " + std::to_string(round) + ": negative evidence raised the grade");
      return;
    }
  }

  ToolRecord empty;
  empty.profile.name = "Rank Probe";
  empty.profile.year = 2000;
  const int ungraded_rank = grade_rank(final_grade(empty));
  EvidenceItem weak;
  weak.id = "weak";
  weak.year = 2000;
  weak.evaluation_type = EvaluationType::InternalValidation;
  weak.sufficient = false;
  weak.conclusion = Conclusion::Negative;
  empty.evidence.push_back(weak);
  const int c0_rank = grade_rank(final_grade(empty));
  c.expect(ungraded_rank < c0_rank, "Ungraded does not rank below C0");
}

/// 5: the reference files are byte-stable through parse -> serialize, and 500
/// generated records survive the round trip structurally and byte-wise.
void check_round_trip(Criterion& c) {
  for (const char* slug :
       {"lace-index", "centor-score", "wells-criteria", "mews", "ottawa-knee-rule"}) {
    bool ok = false;
    const std::string original = read_file(g_fixtures + "/tools/" + slug + ".json", ok);
    if (!ok) {
      c.expect(false, std::string("cannot read fixture ") + slug);
      continue;
    }
    const ParseResult parsed = parse_record(original);
    if (!parsed.record) {
      c.expect(false, std::string(slug) + " failed to parse");
      continue;
    }
    c.expect(serialize_record(*parsed.record) == original,
             std::string(slug) + ".json is not byte-stable through parse -> serialize");
  }

  std::mt19937 rng(271828u);
  for (int round = 0; round < 500; ++round) {
    const ToolRecord record = tg::rand_record(rng);
    const std::string text = serialize_record(record);
    const ParseResult parsed = parse_record(text);
    if (!parsed.record) {
      c.expect(false, "round " + std::to_string(round) + ": serialized record failed to parse");
      return;
    }
    if (!(*parsed.record == record)) {
      c.expect(false, "round " + std::to_string(round) + ": structural round trip changed the record");
      return;
    }
    if (serialize_record(*parsed.record) != text) {
      c.expect(false, "round " + std::to_string(round) + ": canonical text is not a fixed point");
      return;
    }
  }
}

/// 6: the CLI honors its exit-code contract: 0 success, 1 usage error,
/// 2 load/validation failure, 3 tool not found.
void check_exit_codes(Criterion& c) {
  c.expect_eq(run_cli("grade '" + g_fixtures + "' lace-index").exit_code, 0, "success exit");
  c.expect_eq(run_cli("grade").exit_code, 1, "usage exit (missing args)");
  c.expect_eq(run_cli("no-such-command").exit_code, 1, "usage exit (unknown command)");
  c.expect_eq(run_cli("grade /no/such/root tool-x").exit_code, 2, "load-failure exit");
  c.expect_eq(run_cli("grade '" + g_fixtures + "' no-such-tool").exit_code, 3, "not-found exit");
  c.expect_eq(run_cli("--help").exit_code, 0, "help exit");
}

/// 7: grade, validate, summary, uplift, and measures print their pinned text.
void check_cli_outputs(Criterion& c) {
  c.expect_eq(run_cli("grade '" + g_fixtures + "' lace-index").out,
              std::string("C1\nmarkers: C1=±+ C3=+\n"), "grade lace-index");
  c.expect_eq(run_cli("grade '" + g_fixtures + "' centor-score").out,
              std::string("B1\nmarkers: A1=±- A2=- B1=+ C1=+ C3=+\n"), "grade centor-score");
  c.expect_eq(run_cli("validate '" + g_fixtures + "'").out, std::string("5 valid, 0 quarantined\n"),
              "validate");

  const std::string summary = run_cli("summary '" + g_fixtures + "'").out;
  const std::vector<std::string> rows{
      "| Tool | Country | Year | Citations | Studies | Grade | A1 | A2 | A3 | B1 | B2 | C1 | C2 | C3 |",
      "| LACE Index for Readmission | Canada | 2010 | 455 | 7 | C1 |  |  |  |  |  | ±+ |  | + |",
      "| Centor Score for Streptococcal Pharyngitis | USA | 1981 | 715 | 15 | B1 | ±- | - |  | + |  | + |  | + |",
      "| Wells' Criteria for Pulmonary Embolism | Canada | 1998 | 1260 | 13 | A2 |  | + |  | + |  | + |  | + |",
      "| Modified Early Warning Score (MEWS) for Clinical Deterioration | UK | 2001 | 1176 | 13 | A2 |  | ±+ |  |  |  | ±+ |  | + |",
      "| Ottawa Knee Rule | Canada | 1995 | 227 | 15 | A1 | + |  |  |  |  | + |  | + |",
  };
  std::size_t cursor = 0;
  for (const std::string& row : rows) {
    const std::size_t at = summary.find(row, cursor);
    if (at == std::string::npos) {
      c.expect(false, "summary row missing or out of order: " + row);
    } else {
      cursor = at;
    }
  }

  c.expect_eq(run_cli("uplift '" + g_fixtures + "' lace-index").out,
              std::string("A1: 1 positive class-A experimental impact item\n"
                          "A2: 1 positive class-A observational impact item\n"
                          "A3: 1 positive class-A subjective impact item\n"
                          "B1: 1 positive class-A usability item\n"
                          "B2: 1 positive class-A potential-effect item\n"),
              "uplift lace-index");
  c.expect_eq(run_cli("uplift '" + g_fixtures + "' centor-score").out,
              std::string("A1: 3 positive class-A experimental impact items\n"
                          "A2: 2 positive class-A observational impact items\n"
                          "A3: 1 positive class-A subjective impact item\n"),
              "uplift centor-score");
  c.expect_eq(run_cli("uplift '" + g_fixtures + "' ottawa-knee-rule").out, std::string(""),
              "uplift ottawa-knee-rule (already at the top)");

  const std::string measures = run_cli("measures '" + g_fixtures + "' lace-index").out;
  c.expect(measures.find("- AUC/c-statistic 0.68 (95% CI 0.68–0.69) — van Walraven et al, 2010") !=
               std::string::npos,
           "measures lace-index is missing the discrimination line");
  c.expect(measures.find("- Hosmer–Lemeshow 14.1 (p=0.59) — van Walraven et al, 2010") !=
               std::string::npos,
           "measures lace-index is missing the calibration line");

  const std::string report = run_cli("report '" + g_fixtures + "' lace-index").out;
  c.expect(report.find("**C1** — external validation multiple times") != std::string::npos,
           "report lace-index is missing the final grade line");
  c.expect(report.find("Final grade C1 — external validation multiple times; the evidence at C1 "
                       "is mixed-positive.") != std::string::npos,
           "report lace-index is missing the justification");
}

/// 8: the three hand-derived what-if scenarios print their exact deltas.
void check_whatif_scenarios(Criterion& c) {
  const std::string hypo_rct = g_fixtures + "/hypotheticals/hypo_rct.json";
  const std::string hypo_neg = g_fixtures + "/hypotheticals/hypo_negative_subjective.json";

  c.expect_eq(run_cli("whatif '" + g_fixtures + "' lace-index --add '" + hypo_rct + "'").out,
              std::string("C1 → A1\n"
                          "A1 — positive (+)\n"
                          "  conclusions: 1 positive, 0 equivocal, 0 negative\n"
                          "  raw direction: positive\n"),
              "whatif lace-index + experimental impact");

  c.expect_eq(
      run_cli("whatif '" + g_fixtures + "' centor-score --add '" + hypo_rct + "'").out,
      std::string(
          "B1 → B1\n"
          "A1 — mixed-negative (±-)\n"
          "  conclusions: 2 positive, 0 equivocal, 3 negative\n"
          "  raw direction: mixed\n"
          "  study classes: mcisaac-goel-1998=A little-2014=A mcisaac-1998=A worrall-2007=A "
          "hypo-rct=A\n"
          "  class A: 2 positive vs 3 equivocal/negative -> negative majority, mixed-negative\n"),
      "whatif centor-score + experimental impact");

  c.expect_eq(run_cli("whatif '" + g_fixtures + "' ottawa-knee-rule --add '" + hypo_neg + "'").out,
              std::string("A1 → A1\n"
                          "A3 — negative (-)\n"
                          "  conclusions: 0 positive, 0 equivocal, 1 negative\n"
                          "  raw direction: negative\n"),
              "whatif ottawa-knee-rule + negative subjective impact");
}

/// 9: every payload command produces byte-identical stdout across two runs.
void check_determinism(Criterion& c) {
  const std::vector<std::string> commands{
      "grade '" + g_fixtures + "' lace-index",
      "grade '" + g_fixtures + "' mews",
      "report '" + g_fixtures + "' centor-score",
      "report '" + g_fixtures + "' centor-score --format json",
      "report '" + g_fixtures + "' wells-criteria --format json",
      "summary '" + g_fixtures + "'",
      "summary '" + g_fixtures + "' --format json",
      "measures '" + g_fixtures + "' mews",
      "measures '" + g_fixtures + "' ottawa-knee-rule --format json",
      "uplift '" + g_fixtures + "' centor-score",
      "whatif '" + g_fixtures + "' lace-index --add '" + g_fixtures +
          "/hypotheticals/hypo_rct.json'",
      "query '" + g_fixtures + "'",
      "query '" + g_fixtures + "' --category prognostic",
      "validate '" + g_fixtures + "'",
  };
  for (const std::string& command : commands) {
    const CmdResult first = run_cli(command);
    const CmdResult second = run_cli(command);
    if (first.exit_code != 0) {
      c.expect(false, "command failed: " + command);
      continue;
    }
    c.expect(first.exit_code == second.exit_code && first.out == second.out,
             "output differs across runs: " + command);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: grasp_acceptance <fixtures-dir> <cli-path>\n";
    return 2;
  }
  g_fixtures = argv[1];
  g_cli = argv[2];

  struct Entry {
    std::string name;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> criteria{
      {"reference-tools-grade-correctly", check_reference_grading},
      {"direction-calculus-matches-oracle", check_direction_oracle},
      {"best-class-dominance-is-stable", check_class_dominance},
      {"grade-monotonicity-under-new-evidence", check_monotonicity},
      {"canonical-round-trip", check_round_trip},
      {"cli-exit-code-contract", check_exit_codes},
      {"cli-pinned-outputs", check_cli_outputs},
      {"what-if-scenarios", check_whatif_scenarios},
      {"cli-byte-determinism", check_determinism},
  };

  bool all_passed = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion criterion;
    criterion.name = criteria[i].name;
    try {
      criteria[i].run(criterion);
    } catch (const std::exception& e) {
      criterion.failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    const bool passed = criterion.failures.empty();
    all_passed = all_passed && passed;
    std::cout << "[" << (i + 1) << "/" << criteria.size() << "] " << criterion.name << " ... "
              << (passed ? "PASS" : "FAIL") << "\n";
    for (const std::string& failure : criterion.failures) {
      std::cout << "      - " << failure << "\n";
    }
  }
  return all_passed ? 0 : 1;
}
