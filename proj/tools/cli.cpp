#include "cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "thetakit/comparison.hpp"
#include "thetakit/error.hpp"
#include "thetakit/json_io.hpp"
#include "thetakit/monad.hpp"
#include "thetakit/oracles.hpp"
#include "thetakit/sweeps.hpp"

namespace thetakit::cli {

using nlohmann::json;

namespace {

// Largest object count we enumerate before refusing.
constexpr double kObjectLimit = 2e5;
constexpr double kHomLimit = 1e6;

struct Config {
  std::string command, what;
  int level = 2;
  int max_cells = 5;
  std::string input, example, output;
  unsigned seed = 1;
  std::string format = "json";
  std::string object, target;
  std::optional<int> globe, k;
  std::vector<int> window;
  bool roundtrip = false;
  std::size_t sample = 0;
  std::string method = "initial";
  bool serial = false;
};

struct Outcome {
  json report;
  bool ok = true;
};

class BoundRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Objects of Theta_level with exactly c cells, for c <= max: [m](I_1..I_m)
// has m + 1 vertices plus the cells of its columns.
std::vector<double> object_counts(int level, int max) {
  std::vector<double> cur(static_cast<std::size_t>(max + 1), 0.0);
  if (max >= 1) cur[1] = 1;
  for (int l = 1; l <= level; ++l) {
    std::vector<double> next(cur.size(), 0.0);
    // seq[c]: sequences of columns with c cells in total.
    std::vector<double> seq(cur.size(), 0.0);
    seq[0] = 1;
    for (int m = 0; m + 1 <= max; ++m) {
      for (int c = 0; c + m + 1 <= max; ++c) next[static_cast<std::size_t>(c + m + 1)] += seq[static_cast<std::size_t>(c)];
      std::vector<double> longer(cur.size(), 0.0);
      for (int c = 0; c <= max; ++c)
        for (int d = 1; c + d <= max; ++d)
          longer[static_cast<std::size_t>(c + d)] += seq[static_cast<std::size_t>(c)] * cur[static_cast<std::size_t>(d)];
      seq = std::move(longer);
    }
    cur = std::move(next);
  }
  return cur;
}

void refuse_large(int level, int max_cells) {
  double total = 0;
  for (double c : object_counts(level, max_cells)) total += c;
  if (total > kObjectLimit) {
    std::ostringstream msg;
    msg << "refusing: about " << static_cast<long long>(total) << " objects of Theta_" << level << " with at most "
        << max_cells << " cells (limit " << static_cast<long long>(kObjectLimit) << ")";
    throw BoundRefusal(msg.str());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ThetaObject parse_object(int level, const std::string& text) {
  try {
    return parse_theta_object(level, text);
  } catch (const ParseError& first) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error&) {
      throw first;
    }
    return theta_object_from_json(level, j);
  }
}

GlobularSet input_globular(const Config& c) {
  if (!c.example.empty()) {
    if (c.example == "one_cell_each") return oracle::one_cell_each(c.level);
    for (auto& [name, X] : oracle::globular_corpus())
      if (name == c.example) return X;
    throw ParseError("unknown example " + c.example);
  }
  if (c.input.empty()) throw ParseError("needs --input or --example");
  return make_globular_set(globular_data_from_json(read_json_file(c.input)));
}

ThetaPresheaf input_presheaf(const Config& c, std::optional<GradedPresheaf>* graded = nullptr) {
  if (c.input.empty()) throw ParseError("needs --input");
  const auto j = read_json_file(c.input);
  if (j.contains("shapes")) {
    auto G = graded_from_json(j);
    auto F = G.presheaf;
    if (graded) *graded = std::move(G);
    return F;
  }
  return presheaf_from_json(ThetaCategory::from_tag(j.at("index")), j);
}

ComparisonWindow window_of(const Config& c) {
  return c.window.empty() ? ComparisonWindow::cells(c.max_cells) : ComparisonWindow::window(c.window);
}

std::vector<ThetaObject> shapes_of(const Config& c, int k) {
  if (c.window.empty()) return enum_theta_objects(k, c.max_cells);
  std::vector<int> w(c.window.begin(), c.window.begin() + std::min<std::ptrdiff_t>(k, std::ssize(c.window)));
  if (static_cast<int>(w.size()) < k) throw DomainError("window needs " + std::to_string(k) + " widths");
  return k == 0 ? enum_theta_objects(0, 1) : enum_theta_objects_window(k, w);
}

json counts_json(const std::map<int, std::size_t>& counts) {
  json j = json::object();
  for (const auto& [g, n] : counts) j[std::to_string(g)] = n;
  return j;
}

// ---------------------------------------------------------------------------

Outcome enumerate(const Config& c) {
  json items = json::array();
  if (c.what == "objects") {
    refuse_large(c.level, c.max_cells);
    for (const auto& obj : enum_theta_objects(c.level, c.max_cells))
      items.push_back({{"object", obj.to_string()}, {"json", to_json(obj)}, {"cells", obj.cell_count()}});
  } else if (c.what == "hom") {
    const auto src = parse_object(c.level, c.object);
    const auto tgt = parse_object(c.level, c.target.empty() ? c.object : c.target);
    const auto n = count_theta_hom(src, tgt);
    if (static_cast<double>(n) > kHomLimit)
      throw BoundRefusal("refusing: " + std::to_string(n) + " morphisms " + src.to_string() + " -> " + tgt.to_string());
    for (const auto& f : enum_theta_hom(src, tgt))
      items.push_back({{"map", f.to_string()}, {"active", f.is_active()}, {"inert", f.is_inert()}});
  } else if (c.what == "cells") {
    const auto obj = parse_object(c.level, c.object);
    for (const auto& cell : cells_of(obj).cells()) items.push_back({{"dim", cell.dim}, {"map", cell.map.to_string()}});
  } else {
    const auto src = c.globe ? globe(c.level, *c.globe) : parse_object(c.level, c.object);
    refuse_large(c.level, c.max_cells);
    for (const auto& f : act_out(src, c.max_cells).flat())
      items.push_back({{"map", f.to_string()}, {"target", f.tgt().to_string()}, {"grade", f.tgt().cell_count()}});
  }
  return {{{"items", items}, {"count", items.size()}}, true};
}

json segal_json(const SegalReport& r) {
  return {{"ok", r.ok}, {"objects_checked", r.objects_checked}, {"active_checked", r.active_checked}, {"failures", r.failures}};
}

Outcome check(const Config& c) {
  const Exec exec = c.serial ? Exec::Serial : Exec::Parallel;
  if (c.what == "segal") {
    std::optional<GradedPresheaf> graded;
    const auto F = input_presheaf(c, &graded);
    const auto v = validate(F);
    json j = {{"validation", {{"ok", v.ok}, {"checks", v.checks}, {"violations", v.violations}}}};
    SegalOptions opt;
    if (graded) {
      opt.grade_bound = c.max_cells;
      opt.shape = graded->shape_fn();
    }
    const auto r = is_segal(F, opt);
    j["segal"] = segal_json(r);
    return {j, v.ok && r.ok};
  }
  if (c.what == "reduced") {
    const auto F = input_presheaf(c);
    const auto r = is_reduced(tau_pullback(F));
    const auto t = segal_transfer_check(F);
    json j = {{"reduced", {{"ok", r.ok}, {"maps_checked", r.maps_checked}, {"failures", r.failures}}},
              {"transfer", t.to_json()}};
    return {j, r.ok};
  }
  if (c.what == "cofinal") {
    refuse_large(c.level, c.max_cells);
    const auto init = cofinality_initial_sweep(c.level, c.max_cells, exec);
    const auto contr = cofinality_contractible_sweep(c.level, c.max_cells, exec);
    const bool ok = c.method == "initial" ? init.ok() : contr.ok();
    return {{{"method", c.method}, {"initial", init.to_json()}, {"contractible", contr.to_json()}}, ok};
  }
  if (c.what == "contractible") {
    refuse_large(c.level, c.max_cells);
    const auto r = contractibility_sweep(c.level, c.max_cells, exec);
    return {r.to_json(), r.ok()};
  }
  const auto X = input_globular(c);
  const auto r = check_monad_laws(X, c.max_cells, c.sample, c.seed);
  return {r.to_json(), r.ok};
}

Outcome free(const Config& c) {
  const auto X = input_globular(c);
  const int n = X.index().n;
  json values = json::array();
  for (int k = 0; k <= n; ++k) {
    if (c.k && *c.k != k) continue;
    const auto v = free_value(X, k, shapes_of(c, k));
    values.push_back({{"k", k}, {"size", v.size()}, {"grades", counts_json(v.grade_counts())}, {"elements", to_json(v, X)}});
  }
  return {{{"values", values}}, true};
}

Outcome compare(const Config& c) {
  if (c.roundtrip) {
    const auto F = input_presheaf(c);
    const int S = c.max_cells;
    const auto Y = tau_pullback(F);
    const auto rebuilt = reconstruct(Y, S);
    const auto theta = roundtrip_theta(F, rebuilt, S);
    const auto tau = roundtrip_tau(Y, tau_pullback(rebuilt), S);
    auto rt = [](const RoundTrip& r) {
      return json{{"ok", r.ok},           {"objects", r.objects}, {"morphisms", r.morphisms},
                  {"failures", r.failures}, {"witness", r.witness}};
    };
    return {{{"theta", rt(theta)}, {"tau", rt(tau)}}, theta.ok && tau.ok};
  }
  const auto X = input_globular(c);
  const int n = X.index().n;
  json rows = json::array();
  bool ok = true;
  for (int k = 0; k <= n; ++k) {
    if (c.k && *c.k != k) continue;
    const auto u = unit_comparison(X, k, window_of(c));
    ok = ok && u.ok;
    rows.push_back(u.to_json());
  }
  return {{{"comparisons", rows}}, ok};
}

Outcome build(const Config& c) {
  if (c.what == "extend") return {to_json(segal_extend(input_globular(c), c.max_cells)), true};
  if (c.what == "kan") {
    const auto X = input_globular(c);
    return {to_json(left_kan_inert(segal_extend(X, c.max_cells), c.max_cells)), true};
  }
  const ThetaCategory cat = c.window.empty() ? ThetaCategory(c.level, c.max_cells) : ThetaCategory::window(c.level, c.window);
  if (c.what == "nerve") {
    for (const auto& C : oracle::strict_corpus())
      if (C.name == c.example) return {to_json(oracle::nerve(C, cat)), true};
    throw ParseError("unknown strict 2-category " + c.example);
  }
  return {to_json(oracle::representable(cat, parse_object(c.level, c.object))), true};
}

// Text is a view of the JSON report: scalars and counts, one per line.
void write_text(std::ostream& os, const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const auto name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      if (value.size() <= 16)
        write_text(os, value, name);
      else
        os << name << ": " << value.size() << " entries\n";
    } else if (value.is_array()) {
      if (!value.empty() && value.front().is_string()) {
        os << name << ":\n";
        for (const auto& v : value) os << "  - " << v.get<std::string>() << "\n";
      } else if (!value.empty() && value.size() <= 12 && !value.front().is_structured()) {
        os << name << ":";
        for (const auto& v : value) os << " " << (v.is_string() ? v.get<std::string>() : v.dump());
        os << "\n";
      } else if (!value.empty() && value.front().is_object() && value.size() <= 4) {
        for (std::size_t i = 0; i < value.size(); ++i) write_text(os, value[i], name + "[" + std::to_string(i) + "]");
      } else {
        os << name << ": " << value.size() << " items\n";
      }
    } else {
      os << name << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

void setup_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("theta", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("THETA_KIT_LOG")) logger->set_level(spdlog::level::from_str(env));
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging(err);
  Config c;
  CLI::App app{"Bounded computations on Theta_n, globular sets and the free Segal monads", "theta"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--level", c.level, "Theta level n")->check(CLI::Range(0, 6));
    s->add_option("--max-cells,-S", c.max_cells, "grade bound S (cell count)")->check(CLI::Range(1, 64));
    s->add_option("--output,-o", c.output, "write the report here instead of stdout");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--seed", c.seed, "seed for sampled checks");
  };
  auto inputs = [&](CLI::App* s) {
    s->add_option("--input,-i", c.input, "JSON input file");
    s->add_option("--example", c.example, "built-in globular set (one_cell_each, point, arrow, ...)");
  };

  auto* en = app.add_subcommand("enumerate", "list objects, morphisms, cells or active maps");
  en->add_option("what", c.what)->required()->check(CLI::IsMember({"objects", "hom", "cells", "act"}));
  en->add_option("--object", c.object, "object as text ([2]([1],[0])) or nested JSON arrays");
  en->add_option("--target", c.target, "target object for hom");
  en->add_option("--globe", c.globe, "source globe C_k for act");
  common(en);

  auto* ch = app.add_subcommand("check", "run a property check and report pass/fail");
  ch->add_option("what", c.what)->required()->check(
      CLI::IsMember({"segal", "reduced", "cofinal", "contractible", "laws"}));
  ch->add_option("--method", c.method, "cofinal: initial or contractible")
      ->check(CLI::IsMember({"initial", "contractible"}));
  ch->add_option("--sample", c.sample, "laws: instances per dimension (0 = all)");
  ch->add_flag("--serial", c.serial, "run sweeps on one thread");
  common(ch);
  inputs(ch);

  auto* fr = app.add_subcommand("free", "free monad values T X(C_k)");
  fr->add_option("--k", c.k, "only this dimension");
  fr->add_option("--window", c.window, "per-level length widths instead of a cell bound")->delimiter(',');
  common(fr);
  inputs(fr);

  auto* co = app.add_subcommand("compare", "unit comparison per dimension, or --roundtrip on a presheaf");
  co->add_option("--k", c.k, "only this dimension");
  co->add_option("--window", c.window, "per-level length widths instead of a cell bound")->delimiter(',');
  co->add_flag("--roundtrip", c.roundtrip, "reconstruct from the tau pullback and compare");
  common(co);
  inputs(co);

  auto* bu = app.add_subcommand("build", "emit presheaf JSON (extend, kan, nerve, representable)");
  bu->add_option("what", c.what)->required()->check(CLI::IsMember({"extend", "kan", "nerve", "representable"}));
  bu->add_option("--object", c.object, "representable: the representing object");
  bu->add_option("--window", c.window, "use a window category")->delimiter(',');
  common(bu);
  inputs(bu);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return Usage;
  }
  c.command = app.get_subcommands().front()->get_name();
  spdlog::info("{} {} level={} S={}", c.command, c.what, c.level, c.max_cells);

  Outcome result;
  try {
    if (c.command == "enumerate")
      result = enumerate(c);
    else if (c.command == "check")
      result = check(c);
    else if (c.command == "free")
      result = free(c);
    else if (c.command == "compare")
      result = compare(c);
    else
      result = build(c);
  } catch (const BoundRefusal& e) {
    err << e.what() << "\n";
    return Bound;
  } catch (const BoundError& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return Bound;
  } catch (const InvariantError& e) {
    err << "invariant failed: " << e.what() << "\n";
    return CheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }

  json report = c.command == "build" ? result.report
                                     : json{{"command", c.command},
                                            {"what", c.what},
                                            {"level", c.level},
                                            {"max_cells", c.max_cells},
                                            {"seed", c.seed},
                                            {"ok", result.ok},
                                            {"result", result.report}};
  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "cannot write " << c.output << "\n";
      return Usage;
    }
  }
  std::ostream& sink = c.output.empty() ? out : file;
  if (c.format == "json")
    sink << report.dump(2) << "\n";
  else
    write_text(sink, report);
  if (!result.ok) spdlog::warn("{} {}: check failed", c.command, c.what);
  return result.ok ? Pass : CheckFailed;
}

}  // namespace thetakit::cli
