// Command-line driver. Talks to the library only through coreeff.h.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "coreeff/coreeff.h"

namespace {

int exit_code(ce_status st) {
  if (st == CE_OK) return 0;
  return st == CE_ERR_INTERNAL ? 2 : 1;
}

int report_error(ce_status st) {
  std::cerr << "error: " << ce_last_error() << "\n";
  return exit_code(st);
}

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

struct Corpus {
  ce_corpus* ptr = nullptr;
  ~Corpus() { ce_corpus_free(ptr); }
};

struct Owned {
  char* ptr = nullptr;
  ~Owned() { ce_string_free(ptr); }
};

// Item indices selected by --item (all items when empty).
bool select(const ce_corpus* corpus, const std::vector<std::string>& names, std::vector<size_t>& out) {
  if (names.empty()) {
    for (size_t i = 0; i < ce_corpus_size(corpus); ++i) out.push_back(i);
    return true;
  }
  for (const auto& n : names) {
    const size_t i = ce_corpus_find(corpus, n.c_str());
    if (i == SIZE_MAX) {
      std::cerr << "error: no item named " << n << "\n";
      return false;
    }
    out.push_back(i);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint simplification for an explicitly coerced effect calculus"};
  app.require_subcommand(1);

  std::string input;
  std::vector<std::string> items;
  std::string phases = "all";
  bool full_dirt = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("corpus", input, "Corpus file, or - for stdin")->required();
    sub->add_option("--item", items, "Restrict to the named items");
    sub->add_flag("--full-dirt", full_dirt, "Also run the full-dirt phase");
  };

  std::string emit = "json", out_dir;
  auto* simplify = app.add_subcommand("simplify", "Simplify item constraints");
  common(simplify);
  simplify->add_option("--phases", phases, "none|scc|dirt|type|all|custom:<list>");
  simplify->add_option("--emit", emit, "json|dot|table|core|type")
      ->check(CLI::IsMember({"json", "dot", "table", "core", "type"}));
  simplify->add_option("--out-dir", out_dir, "Write one DOT file per item here (with --emit dot)");

  int samples = 20;
  std::uint64_t seed = 1;
  std::size_t budget = 0;
  auto* verify = app.add_subcommand("verify", "Check witnesses and semantic preservation on sampled instantiations");
  common(verify);
  verify->add_option("--phases", phases, "none|scc|dirt|type|all|custom:<list>");
  verify->add_option("--samples", samples, "Instantiations per item")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--budget", budget, "Semantic carrier size cap");

  std::vector<std::string> configs = {"none", "scc", "dirt", "type", "all"};
  std::string report_emit = "table";
  auto* report = app.add_subcommand("report", "Graph sizes per configuration, summed over the corpus");
  report->add_option("corpus", input, "Corpus file, or - for stdin")->required();
  report->add_option("--configs", configs, "Configurations, in row order");
  report->add_flag("--full-dirt", full_dirt, "Also run the full-dirt phase");
  report->add_option("--emit", report_emit, "json|table|items")->check(CLI::IsMember({"json", "table", "items"}));

  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "error: cannot read " << input << "\n";
    return 1;
  }
  Corpus corpus;
  if (ce_status st = ce_corpus_parse(text.data(), text.size(), &corpus.ptr); st != CE_OK) return report_error(st);

  if (report->parsed()) {
    std::vector<const char*> cs;
    for (const auto& c : configs) cs.push_back(c.c_str());
    Owned out;
    ce_status st = ce_report(corpus.ptr, cs.data(), cs.size(), full_dirt, report_emit.c_str(), &out.ptr);
    if (st != CE_OK) return report_error(st);
    std::cout << out.ptr;
    return 0;
  }

  std::vector<size_t> selected;
  if (!select(corpus.ptr, items, selected)) return 1;

  if (verify->parsed()) {
    int worst = 0;
    for (size_t i : selected) {
      Owned out;
      ce_status st = ce_verify(corpus.ptr, i, phases.c_str(), full_dirt, samples, seed, budget, &out.ptr);
      if (out.ptr) std::cout << out.ptr;
      if (st != CE_OK) {
        std::cerr << "error: " << ce_corpus_item_name(corpus.ptr, i) << ": " << ce_last_error() << "\n";
        worst = std::max(worst, exit_code(st));
      }
    }
    return worst;
  }

  std::vector<ce_result*> results;
  int worst = 0;
  for (size_t i : selected) {
    ce_result* r = nullptr;
    ce_status st = ce_simplify(corpus.ptr, i, phases.c_str(), full_dirt, &r);
    if (st != CE_OK) {
      std::cerr << "error: " << ce_corpus_item_name(corpus.ptr, i) << ": " << ce_last_error() << "\n";
      worst = std::max(worst, exit_code(st));
      continue;
    }
    results.push_back(r);
  }
  if (emit == "table") {
    Owned out;
    ce_status st = ce_results_table(results.data(), results.size(), &out.ptr);
    if (st != CE_OK) worst = std::max(worst, report_error(st));
    else std::cout << out.ptr;
  } else {
    for (ce_result* r : results) {
      Owned out;
      ce_status st = ce_result_emit(r, emit.c_str(), &out.ptr);
      if (st != CE_OK) {
        worst = std::max(worst, report_error(st));
        continue;
      }
      if (emit == "dot" && !out_dir.empty()) {
        std::string name = "item";
        // First line of the DOT output names the item.
        std::string s = out.ptr;
        if (s.rfind("// ", 0) == 0) name = s.substr(3, s.find('\n') - 3);
        std::ofstream f(out_dir + "/" + name + ".dot");
        if (!f) {
          std::cerr << "error: cannot write " << out_dir << "/" << name << ".dot\n";
          worst = std::max(worst, 1);
          continue;
        }
        f << s;
      } else {
        std::cout << out.ptr;
        if (emit == "type") std::cout << "\n";
      }
    }
  }
  for (ce_result* r : results) ce_result_free(r);
  return worst;
}
