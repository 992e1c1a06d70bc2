// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "coreeff/coreeff.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Corpus {
  ce_corpus* c = nullptr;
  explicit Corpus(const std::string& text) { REQUIRE(ce_corpus_parse(text.data(), text.size(), &c) == CE_OK); }
  ~Corpus() { ce_corpus_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  ce_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("corpus handles") {
  Corpus w(slurp(COREEFF_SOURCE_DIR "/corpus/worked.ce"));
  CHECK(ce_corpus_size(w.c) == 2);
  CHECK(std::string(ce_corpus_item_name(w.c, 0)) == "apply_if");
  CHECK(ce_corpus_find(w.c, "apply_randomly") == 1);
  CHECK(ce_corpus_find(w.c, "missing") == SIZE_MAX);
  CHECK(ce_version() != nullptr);

  ce_corpus* bad = nullptr;
  const std::string text = "(item u (term unit)";
  CHECK(ce_corpus_parse(text.data(), text.size(), &bad) == CE_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(ce_last_error()).find("1:") != std::string::npos);
  CHECK(ce_corpus_parse(nullptr, 0, &bad) == CE_ERR_ARGUMENT);
}

TEST_CASE("simplify through the C interface") {
  Corpus w(slurp(COREEFF_SOURCE_DIR "/corpus/worked.ce"));
  ce_result* r = nullptr;
  REQUIRE(ce_simplify(w.c, 0, "all", 0, &r) == CE_OK);
  ce_metrics before{}, after{};
  REQUIRE(ce_result_metrics(r, &before, &after) == CE_OK);
  CHECK(before.type_nodes == 5);
  CHECK(before.type_edges == 4);
  CHECK(after.type_nodes == 2);
  CHECK(after.type_edges == 1);
  CHECK(after.dirt_nodes == 1);
  CHECK(after.dirt_edges == 0);

  char* out = nullptr;
  REQUIRE(ce_result_emit(r, "type", &out) == CE_OK);
  CHECK(take(out) == "(α →^δ bool) → (α →^δ β) → α →^δ β");
  REQUIRE(ce_result_emit(r, "dot", &out) == CE_OK);
  CHECK(take(out).find("digraph constraints {") != std::string::npos);
  CHECK(ce_result_emit(r, "yaml", &out) == CE_ERR_ARGUMENT);

  const ce_result* rows[] = {r};
  REQUIRE(ce_results_table(rows, 1, &out) == CE_OK);
  CHECK(take(out).find("apply_if") != std::string::npos);
  ce_result_free(r);

  CHECK(ce_simplify(w.c, 7, "all", 0, &r) == CE_ERR_ARGUMENT);
  CHECK(ce_simplify(w.c, 0, "bogus", 0, &r) == CE_ERR_ARGUMENT);
}

TEST_CASE("verify and report through the C interface") {
  Corpus w(slurp(COREEFF_SOURCE_DIR "/corpus/worked.ce"));
  char* out = nullptr;
  CHECK(ce_verify(w.c, 1, "all", 0, 4, 7, 0, &out) == CE_OK);
  CHECK(take(out).find("\"passed\": 4") != std::string::npos);

  const char* configs[] = {"none", "all"};
  REQUIRE(ce_report(w.c, configs, 2, 0, "json", &out) == CE_OK);
  const std::string json = take(out);
  CHECK(json.find("\"totals\"") != std::string::npos);
  CHECK(ce_report(w.c, configs, 2, 0, "xml", &out) == CE_ERR_ARGUMENT);
}
