#include "coreeff/app.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/print.hpp"
#include "coreeff/reduce.hpp"
#include "coreeff/sample.hpp"

namespace coreeff {

using ojson = nlohmann::ordered_json;

namespace {

AnyType apply_any(const Substitution& s, const AnyType& t) {
  if (const auto* a = std::get_if<ValueType>(&t)) return apply(s, *a);
  return apply(s, std::get<CompType>(t));
}

Term apply_term(const Substitution& s, const Term& t) {
  if (const auto* v = std::get_if<ValueTerm>(&t)) return apply(s, *v);
  return apply(s, std::get<CompTerm>(t));
}

AnyType typecheck_any(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma, const Term& t) {
  if (const auto* v = std::get_if<ValueTerm>(&t)) return typecheck_value(sig, ctx, gamma, *v);
  return typecheck_comp(sig, ctx, gamma, std::get<CompTerm>(t));
}

ojson metrics_json(const MetricsRecord& m) {
  return ojson{{"dirt_nodes", m.dirt_nodes}, {"dirt_edges", m.dirt_edges}, {"type_nodes", m.type_nodes},
               {"type_edges", m.type_edges}};
}

MetricsRecord metrics_from(const ojson& j) {
  return {j.at("dirt_nodes").get<int>(), j.at("dirt_edges").get<int>(), j.at("type_nodes").get<int>(),
          j.at("type_edges").get<int>()};
}

}  // namespace

std::string config_label(const std::string& spec) { return spec.rfind("custom:", 0) == 0 ? "custom" : spec; }

SimplifyOutcome cmd_simplify(const CorpusItem& item, const PipelineConfig& config) {
  const Signature& sig = item.signature;
  SimplifyOutcome out;
  out.polarity = polarity_of(item);

  NameSupply names(item.context);
  ReductionResult red = reduce_context(sig, item.context, &names);
  Step reduce;
  reduce.kind = StepKind::Reduce;
  reduce.before = item.context;
  reduce.after = red.context;
  reduce.subst = red.subst;
  reduce.polarity = out.polarity;
  out.trace.push_back(std::move(reduce));

  const FreeParamSet f_red = subst_fps(red.subst, out.polarity);
  PhaseResult pr = identity_result(red.context);
  if (config.any()) pr = run_pipeline(sig, red.context, f_red, config, &names);
  out.trace.insert(out.trace.end(), pr.trace.begin(), pr.trace.end());
  out.subst = compose(pr.subst, red.subst);
  out.before = metrics(build_graphs(red.context));
  out.after = metrics(build_graphs(pr.context));

  try {
    check_validity(sig, out.subst, item.context, pr.context);
  } catch (const Error& e) {
    fail(ErrorCode::Internal, "pipeline substitution is invalid: " + std::string(e.what()));
  }

  out.simplified = item;
  out.simplified.context = pr.context;
  out.simplified.gamma = apply(out.subst, item.gamma);
  if (item.declared_type) out.simplified.declared_type = apply_any(out.subst, *item.declared_type);
  if (item.term) {
    out.simplified.term = apply_term(out.subst, *item.term);
    AnyType t;
    try {
      t = typecheck_any(sig, pr.context, out.simplified.gamma, *out.simplified.term);
    } catch (const Error& e) {
      fail(ErrorCode::Internal, "simplified term does not typecheck: " + std::string(e.what()));
    }
    if (out.simplified.declared_type && !(t == *out.simplified.declared_type))
      fail(ErrorCode::Internal, "simplified term changed type");
  }
  return out;
}

std::string simplified_type_string(const SimplifyOutcome& out) {
  if (!out.simplified.declared_type) return "";
  if (const auto* a = std::get_if<ValueType>(&*out.simplified.declared_type)) return pretty_type(*a);
  const auto& c = std::get<CompType>(*out.simplified.declared_type);
  // Shown as the thunk type Unit -> C so one renaming covers both parts.
  return pretty_type(arrow(ValueType::unit(), c.value, c.dirt));
}

std::string emit_json(const SimplifyOutcome& out, const std::string& config) {
  ojson j;
  j["item"] = out.simplified.name;
  j["config"] = config_label(config);
  j["before"] = metrics_json(out.before);
  j["after"] = metrics_json(out.after);
  j["type"] = simplified_type_string(out);
  ojson cons = ojson::array();
  for (const auto& c : out.simplified.context.type_coercions)
    cons.push_back(c.name + " : " + to_string(c.lhs) + " <= " + to_string(c.rhs));
  for (const auto& c : out.simplified.context.dirt_coercions)
    cons.push_back(c.name + " : " + to_string(c.lhs) + " <= " + to_string(c.rhs));
  j["constraints"] = cons;
  ojson steps = ojson::array();
  for (const auto& st : out.trace) steps.push_back(step_kind_name(st.kind));
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

std::string emit_dot(const SimplifyOutcome& out) {
  const FreeParamSet f = subst_fps(out.subst, out.polarity);
  return "// " + out.simplified.name + "\n" + to_dot(build_graphs(out.simplified.context), &f);
}

std::string emit_core(const SimplifyOutcome& out) { return to_sexpr(out.simplified); }

namespace {

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  auto cells = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++n;
    return n;
  };
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = cells(header[i]);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cells(r[i]));
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string pad(width[i] - cells(r[i]), ' ');
      if (i) os << "  ";
      os << (i == 0 ? r[i] + pad : pad + r[i]);
    }
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::vector<std::string> metric_cells(const MetricsRecord& m) {
  return {std::to_string(m.dirt_nodes), std::to_string(m.dirt_edges), std::to_string(m.type_nodes),
          std::to_string(m.type_edges)};
}

}  // namespace

std::string emit_table(const std::vector<std::pair<std::string, SimplifyOutcome>>& rows) {
  std::vector<std::vector<std::string>> body;
  for (const auto& [config, out] : rows) {
    std::vector<std::string> r = {out.simplified.name, config_label(config)};
    for (auto& c : metric_cells(out.before)) r.push_back(c);
    for (auto& c : metric_cells(out.after)) r.push_back(c);
    body.push_back(std::move(r));
  }
  return table({"item", "config", "dn0", "de0", "tn0", "te0", "dirt nodes", "dirt edges", "type nodes", "type edges"},
               body);
}

// ---------------------------------------------------------------- verify

VerifyReport cmd_verify(const CorpusItem& item, const PipelineConfig& config, const VerifyOptions& options) {
  VerifyReport rep;
  rep.item = item.name;
  rep.config = config.name;
  rep.semantic = item.term.has_value();
  const Signature& sig = item.signature;
  const SimplifyOutcome out = cmd_simplify(item, config);
  const FreeParamSet& f = out.polarity;
  std::mt19937_64 rng(options.seed);
  const ParamContext ground;

  for (int i = 0; i < options.samples; ++i) {
    ++rep.samples;
    try {
      const Substitution eta = sample_instantiation(sig, item.context, rng);
      check_validity(sig, eta, item.context, ground);
      const WitnessResult w = build_witness(sig, out.trace, eta, f);
      check_validity(sig, w.eta_prime, out.simplified.context, ground);
      const Substitution eta_sigma = compose(w.eta_prime, out.subst);
      check_family(sig, ground, w.family, eta_sigma, eta, f);
      if (item.term) {
        Semantics sem(sig, {}, options.budget);
        const AnyType& type = *item.declared_type;
        check_square(sem, apply(eta, item.gamma), apply_term(eta, *item.term), apply_any(eta, type));
        check_square(sem, apply(eta_sigma, item.gamma), apply_term(eta_sigma, *item.term), apply_any(eta_sigma, type));
        check_preservation(sem, eta, eta_sigma, w.family, f, item.gamma, *item.term, type);
      }
      ++rep.passed;
    } catch (const Error& e) {
      rep.failures.push_back("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return rep;
}

std::string verify_json(const std::vector<VerifyReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) {
    ojson j;
    j["item"] = r.item;
    j["config"] = config_label(r.config);
    j["samples"] = r.samples;
    j["passed"] = r.passed;
    j["semantic"] = r.semantic;
    j["failures"] = r.failures;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------- report

MetricsReport cmd_report(const std::vector<CorpusItem>& corpus, const std::vector<std::string>& configs,
                         bool full_dirt) {
  MetricsReport r;
  for (const auto& c : configs) r.configs.push_back(config_label(c));
  r.totals.resize(configs.size());
  for (std::size_t k = 0; k < configs.size(); ++k) r.totals[k].config = r.configs[k];
  for (const auto& item : corpus) {
    ItemMetrics im;
    im.name = item.name;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto out = cmd_simplify(item, PipelineConfig::parse(configs[k], full_dirt));
      im.rows.push_back({r.configs[k], out.after});
      auto& t = r.totals[k].metrics;
      t.dirt_nodes += out.after.dirt_nodes;
      t.dirt_edges += out.after.dirt_edges;
      t.type_nodes += out.after.type_nodes;
      t.type_edges += out.after.type_edges;
    }
    r.items.push_back(std::move(im));
  }
  return r;
}

std::string report_to_json(const MetricsReport& r) {
  ojson j;
  j["configs"] = r.configs;
  ojson items = ojson::array();
  for (const auto& im : r.items) {
    ojson rows = ojson::array();
    for (const auto& row : im.rows) {
      ojson x{{"config", row.config}};
      x.update(metrics_json(row.metrics));
      rows.push_back(x);
    }
    items.push_back(ojson{{"name", im.name}, {"rows", rows}});
  }
  j["items"] = items;
  ojson totals = ojson::array();
  for (const auto& row : r.totals) {
    ojson x{{"config", row.config}};
    x.update(metrics_json(row.metrics));
    totals.push_back(x);
  }
  j["totals"] = totals;
  return j.dump(2) + "\n";
}

MetricsReport report_from_json(const std::string& text) {
  MetricsReport r;
  try {
    const ojson j = ojson::parse(text);
    r.configs = j.at("configs").get<std::vector<std::string>>();
    for (const auto& im : j.at("items")) {
      ItemMetrics x;
      x.name = im.at("name").get<std::string>();
      for (const auto& row : im.at("rows")) x.rows.push_back({row.at("config").get<std::string>(), metrics_from(row)});
      r.items.push_back(std::move(x));
    }
    for (const auto& row : j.at("totals")) r.totals.push_back({row.at("config").get<std::string>(), metrics_from(row)});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("metrics report: ") + e.what());
  }
  return r;
}

std::string report_to_table(const MetricsReport& r, bool per_item) {
  std::vector<std::vector<std::string>> body;
  if (per_item) {
    for (const auto& im : r.items)
      for (const auto& row : im.rows) {
        std::vector<std::string> cells = {im.name, row.config};
        for (auto& c : metric_cells(row.metrics)) cells.push_back(c);
        body.push_back(std::move(cells));
      }
    return table({"item", "config", "dirt nodes", "dirt edges", "type nodes", "type edges"}, body);
  }
  for (const auto& row : r.totals) {
    std::vector<std::string> cells = {row.config};
    for (auto& c : metric_cells(row.metrics)) cells.push_back(c);
    body.push_back(std::move(cells));
  }
  return table({"config", "dirt nodes", "dirt edges", "type nodes", "type edges"}, body);
}

}  // namespace coreeff
