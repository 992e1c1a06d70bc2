#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coreeff/corpus.hpp"
#include "coreeff/graph.hpp"
#include "coreeff/phases.hpp"
#include "coreeff/semantics.hpp"

namespace coreeff {

struct SimplifyOutcome {
  CorpusItem simplified;  // context, term and type after substitution
  Substitution subst;     // original context -> simplified context
  std::vector<Step> trace;  // the reduction step, then the pipeline steps
  FreeParamSet polarity;    // of the original item
  MetricsRecord before, after;  // before = reduced context, ahead of any phase
};

// Reduces the item's context, runs the pipeline on it and rewrites the
// term and type. The rewritten term is re-typechecked.
SimplifyOutcome cmd_simplify(const CorpusItem& item, const PipelineConfig& config);

std::string simplified_type_string(const SimplifyOutcome& out);  // pretty, Greek-renamed
std::string emit_json(const SimplifyOutcome& out, const std::string& config);
std::string emit_dot(const SimplifyOutcome& out);
std::string emit_core(const SimplifyOutcome& out);
std::string emit_table(const std::vector<std::pair<std::string, SimplifyOutcome>>& rows);

struct VerifyOptions {
  int samples = 20;
  std::uint64_t seed = 1;
  Budget budget;
};

struct VerifyReport {
  std::string item, config;
  int samples = 0, passed = 0;
  bool semantic = false;  // false when the item carries no term
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// For each sampled ground instantiation: witness construction, validity
// and family checks, and, when the item has a term, the commuting square
// and preservation checks of the semantics.
VerifyReport cmd_verify(const CorpusItem& item, const PipelineConfig& config, const VerifyOptions& options);
std::string verify_json(const std::vector<VerifyReport>& reports);

struct MetricsRow {
  std::string config;
  MetricsRecord metrics;
  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct ItemMetrics {
  std::string name;
  std::vector<MetricsRow> rows;  // config order
  friend bool operator==(const ItemMetrics&, const ItemMetrics&) = default;
};

struct MetricsReport {
  std::vector<std::string> configs;
  std::vector<ItemMetrics> items;
  std::vector<MetricsRow> totals;
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport cmd_report(const std::vector<CorpusItem>& corpus, const std::vector<std::string>& configs,
                         bool full_dirt = false);
std::string report_to_json(const MetricsReport& r);
MetricsReport report_from_json(const std::string& text);
std::string report_to_table(const MetricsReport& r, bool per_item = false);

// "scc" -> "scc", "custom:..." -> "custom"; the names used in reports.
std::string config_label(const std::string& spec);

}  // namespace coreeff
