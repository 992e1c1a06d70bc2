// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coreeff/app.hpp"
#include "coreeff/error.hpp"
#include "coreeff/graph.hpp"
#include "coreeff/names.hpp"
#include "coreeff/print.hpp"
#include "coreeff/reduce.hpp"
#include "coreeff/sample.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const std::string kRoot = COREEFF_SOURCE_DIR;
const std::vector<std::string> kConfigs{"none", "scc", "dirt", "type", "all"};

// Collects failures; keeps the first few messages for the report.
struct Tally {
  int checks = 0, failures = 0;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
  // Runs f as one check; a thrown error is a failure.
  template <class F>
  void guard(const std::string& what, F&& f) {
    try {
      f();
      expect(true, what);
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }
  std::string summary() const {
    std::string out = std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks";
    for (const auto& n : notes) out += "; " + n;
    return out;
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Tally&)> body;
};

CorpusItem find_item(const std::vector<CorpusItem>& items, const std::string& name) {
  for (const auto& it : items)
    if (it.name == name) return it;
  throw std::runtime_error("no item " + name);
}

ValueType declared_value_type(const CorpusItem& it) {
  if (!it.declared_type || !std::holds_alternative<ValueType>(*it.declared_type))
    throw std::runtime_error(it.name + " has no value type");
  return std::get<ValueType>(*it.declared_type);
}

// ---------------------------------------------------------------- 1, 2

void worked_apply_if(Tally& t) {
  const auto items = parse_corpus(read_file(kRoot + "/corpus/worked.ce"));
  const CorpusItem it = find_item(items, "apply_if");
  const ParamContext& x = it.context;
  t.expect(x.skels.size() == 1 && x.types.size() == 5 && x.type_coercions.size() == 4, "type shape 5/4");
  t.expect(x.dirts.size() == 3 && x.dirt_coercions.size() == 2, "dirt shape 3/2");

  const SimplifyOutcome out = cmd_simplify(it, PipelineConfig::parse("all"));
  const ParamContext& r = out.simplified.context;
  t.expect(r.dirt_coercions.empty(), "no residual dirt constraint");
  t.expect(r.type_coercions.size() == 1, "one residual type constraint");
  if (r.type_coercions.size() == 1) {
    const auto& c = r.type_coercions[0];
    t.expect(c.lhs.is_param() && c.rhs.is_param() && c.lhs != c.rhs, "residual is a <= b");
    t.expect(c.lhs == P("a4") && c.rhs == P("a5"), "residual relates a4 to a5, got " + to_string(c.lhs) + " <= " +
                                                      to_string(c.rhs));
  }
  const ValueType a = P("x"), b = P("y");
  const Dirt d = D("e");
  const ValueType expect = arrow(arrow(a, B(), d), arrow(arrow(a, b, d), arrow(a, b, d), DC()), DC());
  const ValueType got = declared_value_type(out.simplified);
  t.expect(alpha_equivalent(got, expect), "type alpha-equivalent, got " + pretty_type(got));
  t.expect(simplified_type_string(out) == "(α →^δ bool) → (α →^δ β) → α →^δ β",
           "printed type " + simplified_type_string(out));
}

void worked_apply_randomly(Tally& t) {
  const auto items = parse_corpus(read_file(kRoot + "/corpus/worked.ce"));
  const CorpusItem it = find_item(items, "apply_randomly");
  const SimplifyOutcome out = cmd_simplify(it, PipelineConfig::parse("all"));
  const ParamContext& r = out.simplified.context;
  t.expect(r.type_coercions.empty() && r.dirt_coercions.empty(), "no residual constraint");
  const ValueType a = P("x"), b = P("y");
  const Dirt d = DO({"Random"}, "e");
  const ValueType expect = arrow(arrow(a, b, d), arrow(a, b, d), DC());
  const ValueType got = declared_value_type(out.simplified);
  t.expect(alpha_equivalent(got, expect), "type alpha-equivalent, got " + pretty_type(got));
  t.expect(simplified_type_string(out) == "(α →^{{Random}∪δ} β) → α →^{{Random}∪δ} β",
           "printed type " + simplified_type_string(out));
}

// ---------------------------------------------------------------- 3

bool type_params_unipolar(const ParamContext& ctx, const FreeParamSet& f) {
  for (const auto& tp : ctx.types)
    if (f.is_pos(type_ref(tp.name)) && f.is_neg(type_ref(tp.name))) return false;
  return true;
}

bool dominates(const MetricsRecord& a, const MetricsRecord& b) {
  return a.dirt_nodes >= b.dirt_nodes && a.dirt_edges >= b.dirt_edges && a.type_nodes >= b.type_nodes &&
         a.type_edges >= b.type_edges;
}

void synthetic_corpus(Tally& t) {
  const auto synthetic = parse_corpus(read_file(kRoot + "/corpus/synthetic.ce"));
  const auto residual = parse_corpus(read_file(kRoot + "/corpus/residual.ce"));
  t.expect(synthetic.size() >= 30, "at least 30 items");

  int unipolar = 0;
  for (const auto* corpus : {&synthetic, &residual})
    for (const auto& it : *corpus) {
      const SimplifyOutcome out = cmd_simplify(it, PipelineConfig::parse("all"));
      if (out.trace.empty() || out.trace.front().kind != StepKind::Reduce)
        throw std::runtime_error(it.name + ": missing reduction step");
      const Step& red = out.trace.front();
      if (!type_params_unipolar(red.after, subst_fps(red.subst, out.polarity))) continue;
      ++unipolar;
      t.expect(out.after.type_edges == 0, it.name + " keeps " + std::to_string(out.after.type_edges) + " type edges");
    }
  t.expect(unipolar >= 30, "at least 30 unipolar items, got " + std::to_string(unipolar));

  const MetricsReport rep = cmd_report(synthetic, kConfigs);
  t.expect(metrics_lines(rep) == golden_lines(kRoot + "/tests/golden/synthetic_metrics.txt"), "golden metrics");
  const auto& tot = rep.totals;  // none scc dirt type all
  t.expect(dominates(tot[0].metrics, tot[1].metrics), "none >= scc");
  t.expect(dominates(tot[1].metrics, tot[4].metrics), "scc >= all");
  t.expect(dominates(tot[0].metrics, tot[2].metrics) && dominates(tot[0].metrics, tot[3].metrics),
           "none >= dirt, type");
  t.expect(dominates(tot[2].metrics, tot[4].metrics) && dominates(tot[3].metrics, tot[4].metrics),
           "dirt, type >= all");
}

// ---------------------------------------------------------------- 4

void substitution_properties(Tally& t) {
  const Signature sig = small_signature();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const std::string at = "case " + std::to_string(i);
    t.guard(at, [&] {
      const ParamContext x0 = random_context(sig, rng);
      ParamContext x1, x2;
      const Substitution s1 = random_substitution(sig, x0, rng, x1, 1);
      const Substitution s2 = random_substitution(sig, x1, rng, x2, 2);
      check_validity(sig, s1, x0, x1);
      check_validity(sig, s2, x1, x2);
      const Substitution s21 = compose(s2, s1);
      t.guard(at + " composition", [&] { check_validity(sig, s21, x0, x2); });

      const Skeleton k = random_skeleton(x0, rng, 3);
      t.guard(at + " skeleton", [&] { wf_skeleton(x1, apply(s1, k), &sig); });
      const Dirt d = random_dirt(sig, x0, rng);
      t.guard(at + " dirt", [&] { wf_dirt(sig, x1, apply(s1, d)); });

      const ValueType a = random_type(sig, x0, k, rng, 3);
      const ValueType sa = apply(s1, a);
      t.expect(skeleton_of_vtype(sig, x1, sa) == apply(s1, skeleton_of_vtype(sig, x0, a)), at + " type skeleton");
      t.expect(apply(s21, a) == apply(s2, sa), at + " composed application");

      const ValueCoercion g = random_value_coercion(sig, x0, rng);
      const auto [gl, gr] = check_value_coercion(sig, x0, g);
      const auto [sgl, sgr] = check_value_coercion(sig, x1, apply(s1, g));
      t.expect(sgl == apply(s1, gl) && sgr == apply(s1, gr), at + " value coercion endpoints");
      const DirtCoercion p = random_dirt_coercion(sig, x0, rng);
      const auto [pl, pr] = check_dirt_coercion(sig, x0, p);
      const auto [spl, spr] = check_dirt_coercion(sig, x1, apply(s1, p));
      t.expect(spl == apply(s1, pl) && spr == apply(s1, pr), at + " dirt coercion endpoints");

      const TypingContext gamma = variables_for(x0);
      const TypingContext sgamma = apply(s1, gamma);
      const auto [v, va] = random_value_term(sig, x0, gamma, rng);
      t.expect(typecheck_value(sig, x1, sgamma, apply(s1, v)) == apply(s1, va), at + " value term");
      const auto [c, cc] = random_comp_term(sig, x0, gamma, rng);
      t.expect(typecheck_comp(sig, x1, sgamma, apply(s1, c)) == apply(s1, cc), at + " computation term");
      t.expect(typecheck_comp(sig, x2, apply(s21, gamma), apply(s21, c)) == apply(s21, cc), at + " composed term");
    });
  }
}

// ---------------------------------------------------------------- 5

void phase_properties(Tally& t) {
  const Signature sig = small_signature();
  std::mt19937_64 rng(5);
  using Phase = std::function<PhaseResult(const ParamContext&, const FreeParamSet&)>;
  const std::vector<std::pair<std::string, Phase>> phases{
      {"loop_par", [&](auto& c, auto& f) { return phase_loop_par(sig, c, f); }},
      {"scc", [&](auto& c, auto& f) { return phase_scc(sig, c, f); }},
      {"bridge", [&](auto& c, auto& f) { return phase_bridge(sig, c, f); }},
      {"bridge_in", [&](auto& c, auto& f) { return phase_bridge_in(sig, c, f); }},
      {"bridge_out", [&](auto& c, auto& f) { return phase_bridge_out(sig, c, f); }},
      {"empty_dirt", [&](auto& c, auto& f) { return phase_empty_dirt(sig, c, f); }},
      {"full_dirt", [&](auto& c, auto& f) { return phase_full_dirt(sig, c, f); }},
  };
  for (int i = 0; i < 500; ++i) {
    const std::string at = "context " + std::to_string(i);
    t.guard(at, [&] {
      const ParamContext ctx = random_canonical_context(sig, rng);
      const FreeParamSet f = random_polarity(ctx, rng);
      for (const auto& [name, phase] : phases) {
        t.guard(at + " " + name, [&] {
          const PhaseResult r = phase(ctx, f);
          wf_param_context(sig, r.context);
          check_validity(sig, r.subst, ctx, r.context);
          if (name == "loop_par") t.expect(is_simple(build_graphs(r.context)), at + " loop_par not simple");
        });
      }
      for (const auto& cfg : kConfigs) {
        const bool full = i % 3 == 0;
        t.guard(at + " " + cfg, [&] {
          const PipelineConfig pc = PipelineConfig::parse(cfg, full);
          const PhaseResult r = run_pipeline(sig, ctx, f, pc);
          check_validity(sig, r.subst, ctx, r.context);
          const Graphs g = build_graphs(r.context);
          if (cfg == "scc" || cfg == "all")
            t.expect(types_acyclic(g) && empty_dirt_edges_acyclic(g), at + " " + cfg + " output cyclic");
          const PhaseResult again = run_pipeline(sig, r.context, subst_fps(r.subst, f), pc);
          t.expect(again.context == r.context, at + " " + cfg + " not idempotent");
          if (cfg != "all") return;
          for (int k = 0; k < 10; ++k) {
            const Substitution eta = sample_instantiation(sig, ctx, rng);
            const WitnessResult w = build_witness(sig, r.trace, eta, f);
            check_validity(sig, w.eta_prime, r.context, ParamContext{});
            check_family(sig, ParamContext{}, w.family, compose(w.eta_prime, r.subst), eta, f);
          }
        });
      }
    });
  }
}

// ---------------------------------------------------------------- 6

void semantic_preservation(Tally& t) {
  VerifyOptions opt;
  opt.samples = 20;
  opt.seed = 6;
  int semantic = 0;
  for (const char* file : {"/corpus/worked.ce", "/corpus/synthetic.ce", "/corpus/residual.ce"})
    for (const auto& it : parse_corpus(read_file(kRoot + file))) {
      if (!it.term) continue;
      for (const auto& cfg : kConfigs) {
        const VerifyReport rep = cmd_verify(it, PipelineConfig::parse(cfg), opt);
        t.expect(rep.semantic && rep.ok() && rep.passed == opt.samples,
                 it.name + "/" + cfg + (rep.failures.empty() ? "" : ": " + rep.failures.front()));
        semantic += rep.semantic;
      }
    }
  t.expect(semantic > 0, "no semantic checks ran");
}

// ---------------------------------------------------------------- 7

struct DirtCase {
  std::string name;
  std::vector<DirtCoercionDecl> constraints;
  std::vector<Name> dirts;
  bool unsatisfiable = false;
  std::function<bool(const DirtConstraintReduction&)> shape;
};

void dirt_clauses(Tally& t) {
  const Signature sig = small_signature();
  using R = DirtConstraintReduction;
  const std::vector<DirtCase> cases{
      {"closed in closed", {{"p", DC({"Get"}), DC({"Get", "Put"})}}, {}, false,
       [](const R& r) { return r.dirt_coercions.empty() && r.dirts.empty(); }},
      {"closed not in closed", {{"p", DC({"Get"}), DC()}}, {}, true, nullptr},
      {"open in closed", {{"p", DO({"Get"}, "d1"), DC({"Get", "Put"})}}, {"d1"}, false,
       [](const R& r) {
         return r.dirt_coercions.size() == 1 && r.dirt_coercions[0].lhs == D("d1") &&
                r.dirt_coercions[0].rhs == DC({"Get", "Put"});
       }},
      {"open not in closed", {{"p", DO({"Put"}, "d1"), DC({"Get"})}}, {"d1"}, true, nullptr},
      {"closed in open", {{"p", DC({"Get"}), DO({"Get"}, "d2")}}, {"d2"}, false,
       [](const R& r) { return r.dirt_coercions.empty() && r.subst.dirts.empty(); }},
      {"closed not in open", {{"p", DC({"Get"}), D("d2")}}, {"d2"}, false,
       [](const R& r) {
         return r.dirt_coercions.empty() && r.dirts.size() == 1 && r.subst.dirts.at("d2") == DO({"Get"}, r.dirts[0]);
       }},
      {"open in open", {{"p", DO({"Get"}, "d1"), DO({"Get", "Put"}, "d2")}}, {"d1", "d2"}, false,
       [](const R& r) {
         return r.dirt_coercions.size() == 1 && r.dirt_coercions[0].lhs == D("d1") &&
                r.dirt_coercions[0].rhs == DO({"Put"}, "d2");
       }},
      {"open not in open", {{"p", DO({"Get"}, "d1"), D("d2")}}, {"d1", "d2"}, false,
       [](const R& r) {
         if (r.dirts.size() != 2 || r.dirt_coercions.size() != 1) return false;
         const Name fresh = r.dirts[1];
         return r.subst.dirts.at("d2") == DO({"Get"}, fresh) && r.dirt_coercions[0].lhs == D("d1") &&
                r.dirt_coercions[0].rhs == D(fresh);
       }},
      {"restart", {{"q", D("d3"), D("d2")}, {"p", DC({"Get"}), D("d2")}}, {"d2", "d3"}, false,
       [](const R& r) {
         if (r.dirt_coercions.size() != 1 || !r.subst.dirts.count("d2")) return false;
         const auto& tail = r.subst.dirts.at("d2").tail;
         return tail && r.dirt_coercions[0].name == "q" && r.dirt_coercions[0].rhs == DO({"Get"}, *tail);
       }},
  };
  for (const auto& c : cases) {
    ParamContext before;
    before.dirts = c.dirts;
    before.dirt_coercions = c.constraints;
    NameSupply names(before);
    if (c.unsatisfiable) {
      bool rejected = false;
      try {
        reduce_dirt_constraints(c.constraints, c.dirts, Substitution{}, names);
      } catch (const Error& e) {
        rejected = e.code() == ErrorCode::Unsatisfiable;
      }
      t.expect(rejected, c.name + " accepted");
      continue;
    }
    t.guard(c.name, [&] {
      const R r = reduce_dirt_constraints(c.constraints, c.dirts, Substitution{}, names);
      t.expect(c.shape(r), c.name + " residual shape");
      ParamContext after;
      after.dirts = r.dirts;
      after.dirt_coercions = r.dirt_coercions;
      for (const auto& d : c.constraints) {
        const auto [l, rr] = check_dirt_coercion(sig, after, apply(r.subst, DirtCoercion::param(d.name)));
        t.expect(l == apply(r.subst, d.lhs) && rr == apply(r.subst, d.rhs), c.name + " endpoints of " + d.name);
      }
    });
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "apply_if worked example", 1.0, worked_apply_if},
      {2, "apply_randomly worked example", 1.0, worked_apply_randomly},
      {3, "synthetic corpus metrics", 10.0, synthetic_corpus},
      {4, "substitution properties (1000 cases)", 30.0, substitution_properties},
      {5, "phase properties (500 contexts)", 120.0, phase_properties},
      {6, "semantic preservation (20 samples per item and config)", 120.0, semantic_preservation},
      {7, "dirt constraint clauses", 1.0, dirt_clauses},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    t.guard("criterion", [&] { c.body(t); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool ok = t.failures == 0 && in_time;
    all = all && ok;
    std::printf("%s %d %s: %s, %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                t.summary().c_str(), secs, c.limit_s, in_time ? "" : " OVER TIME");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
