#pragma once

#include <set>
#include <string>
#include <vector>

#include "coreeff/graph.hpp"
#include "coreeff/names.hpp"
#include "coreeff/polarity.hpp"
#include "coreeff/subst.hpp"

namespace coreeff {

enum class StepKind { Reduce, LoopPar, Scc, BridgeIn, BridgeOut, EmptyDirt, FullDirt };

const char* step_kind_name(StepKind k);

// One rewrite with everything needed to replay its completeness proof.
struct Step {
  StepKind kind = StepKind::LoopPar;
  ParamContext before, after;
  Substitution subst;
  FreeParamSet polarity;  // polarity of `before`
  // Bridges: `removed` is merged into `kept` along coercion `edge`;
  // `kept` is empty when a dirt parameter is merged into the sink.
  ParamSort sort = ParamSort::Type;
  Name removed, kept, edge;
  std::set<Name> dirt_set;  // EmptyDirt / FullDirt
};

struct PhaseResult {
  ParamContext context;
  Substitution subst;
  std::vector<Step> trace;
};

enum class Target { Types, Dirts, Both };

PhaseResult identity_result(const ParamContext& ctx);

PhaseResult phase_loop_par(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                           Target target = Target::Both, NameSupply* names = nullptr);
PhaseResult phase_scc(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                      Target target = Target::Both);
// Fixpoint of single bridge contractions in context order.
PhaseResult phase_bridge(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                         Target target = Target::Both);
PhaseResult phase_bridge_in(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                            Target target = Target::Both);
PhaseResult phase_bridge_out(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                             Target target = Target::Both);
PhaseResult phase_empty_dirt(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f);
PhaseResult phase_full_dirt(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f);

// r2 runs on the output of r1.
PhaseResult compose_phase_results(const PhaseResult& r2, const PhaseResult& r1);

struct PipelineConfig {
  std::string name = "all";
  bool loop_par = true, scc = true, bridge = true, bridge_in = false, bridge_out = false, empty_dirt = true,
       full_dirt = false;
  Target target = Target::Both;
  std::vector<std::string> custom_order;  // custom:<list> keeps the listed order

  // "none", "scc", "dirt", "type", "all" or "custom:<comma separated phases>".
  static PipelineConfig parse(const std::string& spec, bool full_dirt = false);
  bool any() const;
};

PhaseResult run_pipeline(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                         const PipelineConfig& config, NameSupply* names = nullptr);

struct WitnessResult {
  Substitution eta_prime;
  CoercionFamily family;
};

// eta instantiates the first step's `before` context into `use`; f is the
// polarity of that context.
WitnessResult build_witness(const Signature& sig, const std::vector<Step>& trace, const Substitution& eta,
                            const FreeParamSet& f, const ParamContext& use = {});

}  // namespace coreeff
