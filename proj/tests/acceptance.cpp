// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any selected criterion fails.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "thetakit/comparison.hpp"
#include "thetakit/monad.hpp"
#include "thetakit/oracles.hpp"
#include "thetakit/sweeps.hpp"

using namespace thetakit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string summary(const SweepReport& r) {
  std::ostringstream os;
  os << r.name << " items=" << r.items << " checked=" << r.checked << " failed=" << r.failed;
  if (!r.failures.empty()) os << " first: " << r.failures.front();
  return os.str();
}

std::vector<GlobularSet> corpus() {
  std::vector<GlobularSet> out;
  for (auto& [name, X] : oracle::globular_corpus()) out.push_back(X);
  return out;
}

// Every graph with 1..3 vertices and 0..3 labelled edges.
std::vector<GlobularSet> all_small_graphs() {
  std::vector<GlobularSet> out;
  for (std::size_t v = 1; v <= 3; ++v)
    for (std::size_t e = 0; e <= 3; ++e) {
      std::size_t choices = 1;
      for (std::size_t i = 0; i < e; ++i) choices *= v * v;
      for (std::size_t code = 0; code < choices; ++code) {
        GlobularData data;
        data.cells.resize(2);
        data.source.resize(2);
        data.target.resize(2);
        for (std::size_t i = 0; i < v; ++i) data.cells[0].push_back("v" + std::to_string(i));
        auto rest = code;
        for (std::size_t i = 0; i < e; ++i) {
          data.cells[1].push_back("e" + std::to_string(i));
          data.source[1].push_back(rest % v);
          rest /= v;
          data.target[1].push_back(rest % v);
          rest /= v;
        }
        out.push_back(make_globular_set(data));
      }
    }
  return out;
}

Verdict factorization() {
  const auto a = factorization_sweep(2, 5);
  const auto b = factorization_sweep(3, 4);
  return {a.ok() && b.ok() && a.checked > 0 && b.checked > 0, summary(a) + "; " + summary(b)};
}

Verdict act_segal() {
  const auto r = act_segal_sweep(2, 7);
  return {r.ok() && r.checked > 0, summary(r)};
}

Verdict cofinality() {
  const auto init = cofinality_initial_sweep(2, 5);
  const auto contr = cofinality_contractible_sweep(2, 5);
  return {init.ok(), summary(init) + "; for comparison " + summary(contr)};
}

Verdict contractibility() {
  const auto r = contractibility_sweep(2, 7);
  return {r.ok() && r.checked > 0, summary(r)};
}

Verdict segal_preservation() {
  auto inputs = corpus();
  inputs.push_back(oracle::one_cell_each(2));
  inputs.push_back(oracle::one_cell_each(1));
  const auto r = segal_preservation_sweep(inputs, 5);
  return {r.ok() && r.checked > 0, summary(r)};
}

Verdict free_category() {
  const auto graphs = all_small_graphs();
  const auto r = free_category_sweep(graphs, 4);
  return {r.ok() && r.items == graphs.size(), summary(r)};
}

Verdict free_2category() {
  auto inputs = corpus();
  inputs.insert(inputs.begin(), oracle::one_cell_each(2));
  const auto r = free_2cat_sweep(inputs, {2, 2});
  const auto thirteen = oracle::free_2cat_rewrite(oracle::one_cell_each(2), {2, 2}).classes().size();
  const auto v = free_value(oracle::one_cell_each(2), 2, enum_theta_objects_window(2, {2, 2})).size();
  std::ostringstream os;
  os << summary(r) << "; one cell per dimension: " << thirteen << " classes vs " << v << " free value elements";
  return {r.ok() && thirteen == 13 && v == 13, os.str()};
}

Verdict unit_comparison_all(unsigned seed) {
  std::vector<GlobularSet> sets;
  std::size_t skipped = 0;
  for (const auto& data : oracle::enumerate_globular_sets({2, 2, 2})) {
    auto X = make_globular_set(data);
    if (beta_transport(X).reduced)
      sets.push_back(std::move(X));
    else
      ++skipped;
  }
  const auto r = unit_comparison_sweep(sets, {0, 1, 2}, 5);

  // Sampled instances one level up, at a smaller bound.
  auto big = oracle::enumerate_globular_sets({1, 2, 2, 1});
  std::mt19937 rng(seed);
  std::shuffle(big.begin(), big.end(), rng);
  std::vector<GlobularSet> sample;
  for (std::size_t i = 0; i < big.size() && sample.size() < 12; ++i) {
    auto X = make_globular_set(big[i]);
    if (beta_transport(X).reduced) sample.push_back(std::move(X));
  }
  const auto s = unit_comparison_sweep(sample, {0, 1, 2, 3}, 4);
  std::ostringstream os;
  os << sets.size() << " sets on G_2 (" << skipped << " not reduced): " << summary(r) << "; " << sample.size()
     << " sampled sets on G_3 at S=4: " << summary(s);
  return {r.ok() && s.ok() && r.checked > 0 && s.checked > 0, os.str()};
}

Verdict roundtrip(const fs::path& out_dir) {
  const auto cat = ThetaCategory::window(2, {2, 1});
  std::vector<std::pair<std::string, ThetaPresheaf>> inputs;
  for (const auto& C : oracle::strict_corpus()) inputs.emplace_back("nerve " + C.name, oracle::nerve(C, cat));
  for (const auto& J : cat.objects()) inputs.emplace_back("representable " + J.to_string(), oracle::representable(cat, J));
  nlohmann::json witnesses = nlohmann::json::object();
  std::size_t failed = 0;
  std::string first;
  for (const auto& [name, F] : inputs) {
    try {
      const auto Y = tau_pullback(F);
      const auto X = reconstruct(Y, 5);
      const auto theta = roundtrip_theta(F, X, 5);
      const auto tau = roundtrip_tau(Y, tau_pullback(X), 5);
      witnesses[name] = {{"theta", theta.witness}, {"tau", tau.witness}};
      if (!theta.ok || !tau.ok || theta.objects == 0 || tau.objects == 0) {
        ++failed;
        if (first.empty())
          first = name + ": " + (theta.failures.empty() ? (tau.failures.empty() ? "empty" : tau.failures.front())
                                                         : theta.failures.front());
      }
    } catch (const Error& e) {
      ++failed;
      if (first.empty()) first = name + ": " + e.what();
    }
  }
  const auto path = out_dir / "roundtrip_witnesses.json";
  std::ofstream(path) << witnesses.dump(1) << "\n";
  std::ostringstream os;
  os << inputs.size() << " presheaves, failed=" << failed << ", witnesses in " << path.string();
  if (!first.empty()) os << "; first: " << first;
  return {failed == 0, os.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict determinism(const std::string& cli, const fs::path& out_dir, unsigned seed) {
  if (cli.empty()) return {false, "no --cli given"};
  const std::vector<std::string> commands = {
      "enumerate objects --level 3 --max-cells 6",
      "check laws --example small_2d --max-cells 5 --sample 40 --seed " + std::to_string(seed),
      "check cofinal --level 2 --max-cells 5",
      "compare --example one_cell_each --window 2,2",
      "free --example interchange --max-cells 5",
  };
  std::size_t differ = 0, errors = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const auto file = out_dir / ("determinism_" + std::to_string(i) + "_" + std::to_string(r) + ".json");
      const auto line = cli + " " + commands[i] + " --output " + file.string() + " 2>/dev/null";
      const int status = std::system(line.c_str());
      if (status == -1 || !fs::exists(file)) ++errors;
      runs[r] = slurp(file);
    }
    if (runs[0] != runs[1] || runs[0].empty()) ++differ;
  }
  std::ostringstream os;
  os << commands.size() << " commands run twice, differing=" << differ << ", errors=" << errors;
  return {differ == 0 && errors == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  std::string cli;
  std::string out = ".";
  unsigned seed = 7;
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 10));
  app.add_option("--cli", cli, "path to the theta binary");
  app.add_option("--out", out, "directory for witness and report files");
  app.add_option("--seed", seed, "seed for sampled instances");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"factorization system", factorization},
      {"Act-Segal bijection", act_segal},
      {"cofinality by initial objects", cofinality},
      {"contractibility of cell categories", contractibility},
      {"Segal preservation", segal_preservation},
      {"free category oracle", free_category},
      {"free 2-category oracle", free_2category},
      {"unit comparison", [&] { return unit_comparison_all(seed); }},
      {"roundtrip", [&] { return roundtrip(out); }},
      {"determinism", [&] { return determinism(cli, out, seed); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-36s %s  (%.1fs) %s\n", id, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL", secs,
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
