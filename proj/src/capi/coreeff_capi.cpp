#include "coreeff/coreeff.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "coreeff/app.hpp"
#include "coreeff/error.hpp"

struct ce_corpus {
  std::vector<coreeff::CorpusItem> items;
};

struct ce_result {
  std::string config;
  coreeff::SimplifyOutcome outcome;
};

namespace {

thread_local std::string last_error;

ce_status status_of(coreeff::ErrorCode code) {
  using coreeff::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError:
      return CE_ERR_PARSE;
    case ErrorCode::InvalidArgument:
      return CE_ERR_ARGUMENT;
    case ErrorCode::DomainTooLarge:
      return CE_ERR_BUDGET;
    case ErrorCode::Unsatisfiable:
      return CE_ERR_UNSATISFIABLE;
    case ErrorCode::CounterexampleFound:
      return CE_ERR_VERIFY_FAILED;
    case ErrorCode::Internal:
      return CE_ERR_INTERNAL;
    default:
      return CE_ERR_JUDGMENT;
  }
}

template <class F>
ce_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CE_OK;
  } catch (const coreeff::Error& e) {
    last_error = std::string(coreeff::error_code_name(e.code())) + ": " + e.detail();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return CE_ERR_INTERNAL;
  }
}

ce_status argument_error(const char* msg) {
  last_error = std::string("InvalidArgument: ") + msg;
  return CE_ERR_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ce_last_error(void) { return last_error.c_str(); }

const char* ce_version(void) { return "0.1.0"; }

ce_status ce_corpus_parse(const char* text, size_t len, ce_corpus** out) {
  if (!text || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<ce_corpus>();
    c->items = coreeff::parse_corpus(std::string(text, len));
    *out = c.release();
  });
}

void ce_corpus_free(ce_corpus* corpus) { delete corpus; }

size_t ce_corpus_size(const ce_corpus* corpus) { return corpus ? corpus->items.size() : 0; }

const char* ce_corpus_item_name(const ce_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->items.size()) return nullptr;
  return corpus->items[index].name.c_str();
}

size_t ce_corpus_find(const ce_corpus* corpus, const char* name) {
  if (!corpus || !name) return SIZE_MAX;
  for (size_t i = 0; i < corpus->items.size(); ++i)
    if (corpus->items[i].name == name) return i;
  return SIZE_MAX;
}

ce_status ce_simplify(const ce_corpus* corpus, size_t index, const char* phases, int full_dirt, ce_result** out) {
  if (!corpus || !phases || !out) return argument_error("null argument");
  if (index >= corpus->items.size()) return argument_error("item index out of range");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<ce_result>();
    r->config = phases;
    r->outcome = coreeff::cmd_simplify(corpus->items[index], coreeff::PipelineConfig::parse(phases, full_dirt != 0));
    *out = r.release();
  });
}

void ce_result_free(ce_result* result) { delete result; }

ce_status ce_result_metrics(const ce_result* result, ce_metrics* before, ce_metrics* after) {
  if (!result) return argument_error("null result");
  auto put = [](ce_metrics* dst, const coreeff::MetricsRecord& m) {
    if (dst) *dst = ce_metrics{m.dirt_nodes, m.dirt_edges, m.type_nodes, m.type_edges};
  };
  put(before, result->outcome.before);
  put(after, result->outcome.after);
  return CE_OK;
}

ce_status ce_result_emit(const ce_result* result, const char* format, char** out) {
  if (!result || !format || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string f = format;
    std::string text;
    if (f == "json")
      text = coreeff::emit_json(result->outcome, result->config);
    else if (f == "dot")
      text = coreeff::emit_dot(result->outcome);
    else if (f == "core")
      text = coreeff::emit_core(result->outcome);
    else if (f == "table")
      text = coreeff::emit_table({{result->config, result->outcome}});
    else if (f == "type")
      text = coreeff::simplified_type_string(result->outcome);
    else
      coreeff::fail(coreeff::ErrorCode::InvalidArgument, "unknown format '" + f + "'");
    *out = dup(text);
  });
}

ce_status ce_results_table(const ce_result* const* results, size_t count, char** out) {
  if ((!results && count) || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::pair<std::string, coreeff::SimplifyOutcome>> rows;
    for (size_t i = 0; i < count; ++i) {
      if (!results[i]) coreeff::fail(coreeff::ErrorCode::InvalidArgument, "null result");
      rows.emplace_back(results[i]->config, results[i]->outcome);
    }
    *out = dup(coreeff::emit_table(rows));
  });
}

ce_status ce_verify(const ce_corpus* corpus, size_t index, const char* phases, int full_dirt, int samples,
                    uint64_t seed, size_t budget, char** out) {
  if (!corpus || !phases || !out) return argument_error("null argument");
  if (index >= corpus->items.size()) return argument_error("item index out of range");
  if (samples < 0) return argument_error("negative sample count");
  *out = nullptr;
  bool failed = false;
  ce_status st = guarded([&] {
    coreeff::VerifyOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    if (budget) opt.budget.max_carrier = budget;
    auto rep = coreeff::cmd_verify(corpus->items[index], coreeff::PipelineConfig::parse(phases, full_dirt != 0), opt);
    failed = !rep.ok();
    *out = dup(coreeff::verify_json({rep}));
  });
  if (st == CE_OK && failed) {
    last_error = "VerifyFailed: some samples failed";
    return CE_ERR_VERIFY_FAILED;
  }
  return st;
}

ce_status ce_report(const ce_corpus* corpus, const char* const* configs, size_t config_count, int full_dirt,
                    const char* format, char** out) {
  if (!corpus || (!configs && config_count) || !format || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> cs;
    for (size_t i = 0; i < config_count; ++i) {
      if (!configs[i]) coreeff::fail(coreeff::ErrorCode::InvalidArgument, "null config");
      coreeff::PipelineConfig::parse(configs[i]);  // validates
      cs.push_back(configs[i]);
    }
    auto rep = coreeff::cmd_report(corpus->items, cs, full_dirt != 0);
    const std::string f = format;
    if (f == "json")
      *out = dup(coreeff::report_to_json(rep));
    else if (f == "table")
      *out = dup(coreeff::report_to_table(rep, false));
    else if (f == "items")
      *out = dup(coreeff::report_to_table(rep, true));
    else
      coreeff::fail(coreeff::ErrorCode::InvalidArgument, "unknown format '" + f + "'");
  });
}

void ce_string_free(char* s) { std::free(s); }

}  // extern "C"
