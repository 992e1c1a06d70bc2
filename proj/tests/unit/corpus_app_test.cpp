#include <doctest.h>

#include <json.hpp>

#include "coreeff/error.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_corpus(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

const std::vector<std::string> kConfigs{"none", "scc", "dirt", "type", "all"};

}  // namespace

TEST_CASE("corpus parsing") {
  const auto items = parse_corpus("(item u (term (value unit)))");
  REQUIRE(items.size() == 1);
  CHECK(items[0].name == "u");
  CHECK(items[0].context.empty());
  REQUIRE(items[0].term.has_value());

  CHECK(parse_error("(item u (term unit)") == ErrorCode::ParseError);
  CHECK(parse_error("(item u (context (typaram a (param s))))") == ErrorCode::JudgmentError);
  CHECK(parse_error("(item u (context (skel s) (typaram a (param s)) (typaram b (base bool)) "
                    "(tyco w (param a) (param b))))") == ErrorCode::JudgmentError);
  CHECK(parse_error("(item u (term (castv unit (vrefl-base bool))))") == ErrorCode::JudgmentError);
}

TEST_CASE("printing round trips through the parser") {
  for (const char* file : {"/corpus/worked.ce", "/corpus/synthetic.ce", "/corpus/residual.ce"}) {
    const auto items = parse_corpus(read_file(std::string(COREEFF_SOURCE_DIR) + file));
    for (const auto& it : items) {
      const auto again = parse_corpus(to_sexpr(it));
      REQUIRE(again.size() == 1);
      CHECK(again[0].name == it.name);
      CHECK(again[0].context == it.context);
      CHECK(again[0].gamma == it.gamma);
      CHECK(to_sexpr(again[0]) == to_sexpr(it));
      CHECK(polarity_of(again[0]) == polarity_of(it));
    }
  }
}

TEST_CASE("simplify on the worked examples") {
  const auto items = parse_corpus(read_file(COREEFF_SOURCE_DIR "/corpus/worked.ce"));
  const auto out = cmd_simplify(items.at(0), PipelineConfig::parse("all"));
  const auto j = nlohmann::json::parse(emit_json(out, "all"));
  CHECK(j["constraints"] == nlohmann::json::array({"w4 : a4 <= a5"}));
  CHECK(j["after"]["type_nodes"] == 2);
  CHECK(j["after"]["type_edges"] == 1);
  CHECK(simplified_type_string(out) == "(α →^δ bool) → (α →^δ β) → α →^δ β");

  const auto none = cmd_simplify(items.at(0), PipelineConfig::parse("none"));
  CHECK(none.before == none.after);
  CHECK(none.simplified.context == items.at(0).context);
  CHECK(emit_dot(none).rfind("// apply_if\ndigraph constraints {", 0) == 0);
}

TEST_CASE("metrics report") {
  const auto items = parse_corpus(read_file(COREEFF_SOURCE_DIR "/corpus/synthetic.ce"));
  const MetricsReport r = cmd_report(items, kConfigs);
  CHECK(r.configs == kConfigs);
  CHECK(metrics_lines(r) == golden_lines(COREEFF_SOURCE_DIR "/tests/golden/synthetic_metrics.txt"));
  CHECK(report_from_json(report_to_json(r)) == r);

  // Totals are column sums and rows follow the requested order.
  REQUIRE(r.totals.size() == kConfigs.size());
  for (std::size_t c = 0; c < kConfigs.size(); ++c) {
    CHECK(r.totals[c].config == kConfigs[c]);
    MetricsRecord sum;
    for (const auto& it : r.items) {
      CHECK(it.rows[c].config == kConfigs[c]);
      sum.dirt_nodes += it.rows[c].metrics.dirt_nodes;
      sum.dirt_edges += it.rows[c].metrics.dirt_edges;
      sum.type_nodes += it.rows[c].metrics.type_nodes;
      sum.type_edges += it.rows[c].metrics.type_edges;
    }
    CHECK(r.totals[c].metrics == sum);
  }
  CHECK(r.totals[4].metrics == MetricsRecord{18, 1, 26, 0});
}

TEST_CASE("verify on the worked examples") {
  const auto items = parse_corpus(read_file(COREEFF_SOURCE_DIR "/corpus/worked.ce"));
  VerifyOptions opt;
  opt.samples = 5;
  for (const auto& it : items) {
    const VerifyReport rep = cmd_verify(it, PipelineConfig::parse("all"), opt);
    CHECK(rep.ok());
    CHECK(rep.semantic);
    CHECK(rep.passed == 5);
  }
}
