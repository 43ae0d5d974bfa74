#include "mkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mkit/count.hpp"
#include "mkit/errors.hpp"
#include "mkit/kfold.hpp"
#include "mkit/lattice.hpp"
#include "mkit/spec_io.hpp"

namespace mkit {

namespace {

constexpr const char* kReportVersion = "1.0.0";

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json labels_json(const GroundSet& g, Mask s) {
  return Json(g.labels_of(s));
}

Json parts_json(const GroundSet& g, const std::vector<Mask>& parts) {
  Json out = Json::array();
  for (Mask p : parts) out.push_back(labels_json(g, p));
  return out;
}

Json violation_json(const std::optional<ModularPairWitness>& w) {
  if (!w) return nullptr;
  return Json{{"prefix_parts", w->prefix_parts}, {"part", w->part}};
}

Json balance_json(const Matroid& m, const BalanceReport& br) {
  const GroundSet& g = m.ground();
  Json out;
  out["subset"] = labels_json(g, br.circuit.support);
  out["k"] = br.circuit.k;
  out["ell"] = br.circuit.ell();
  out["parts"] = parts_json(g, br.circuit.parts);
  out["connected"] = br.circuit.connected;
  out["intersection"] = labels_json(g, br.intersection);
  out["intersection_rank"] = br.intersection_rank;
  out["expected_rank"] = br.circuit.ell() - br.circuit.k;
  out["balanced"] = br.balanced;
  out["violation"] = violation_json(br.violation);
  return out;
}

int emit(const Json& report, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    err << "cannot write to " << out_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

int emit_text(const std::string& text, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    err << "cannot write to " << out_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

int run_analyze(const Json& spec, bool subset_given, const std::string& csv,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  BuiltMatroid built = build_matroid(spec);
  const Matroid& m = built.matroid;
  Mask s = subset_given ? m.ground().mask_of(split_csv(csv)) : m.full();

  Json rep;
  rep["version"] = kReportVersion;
  rep["command"] = "analyze";
  rep["input"] = canonical_spec(spec);
  rep["subset"] = labels_json(m.ground(), s);

  Json res;
  std::optional<int> order = kfold_order(m, s);
  res["cyclic"] = order.has_value();
  res["order"] = order ? Json(*order) : Json(nullptr);
  if (order) {
    KFoldCircuit kf;
    if (s != 0) kf = principal_partition(m, s);
    res["ell"] = kf.ell();
    res["connected"] = kf.connected;
    res["trivial"] = is_trivial(kf);
    res["parts"] = parts_json(m.ground(), kf.parts);
    if (s == 0)
      res["ear_count"] = 0;
    else if (kf.connected)
      res["ear_count"] = ear_decomposition(m, s).ear_count();
    else
      res["ear_count"] = nullptr;
    BalanceReport br = balance_report(m, kf);
    res["balanced"] = br.balanced;
    res["intersection"] = labels_json(m.ground(), br.intersection);
    res["intersection_rank"] = br.intersection_rank;
    res["expected_rank"] = kf.ell() - kf.k;
    res["violation"] = violation_json(br.violation);
    if (built.graph && built.count && !kf.parts.empty())
      res["technicolour_vertices"] =
          technicolour_vertices(*built.graph, kf.parts);
  }
  rep["result"] = std::move(res);
  return emit(rep, out_path, out, err);
}

PropertyVerdict sampled_verify(const Matroid& m, int k_max, unsigned seed,
                               long long samples) {
  PropertyVerdict verdict;
  for (int k = 1; k <= k_max; ++k) verdict.checked[k] = 0;
  int n = m.size();
  if (n == 0) return verdict;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_pick(1, n);
  std::vector<int> order(n);
  std::set<Mask> seen;
  for (long long i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    int take = size_pick(rng);
    Mask s = 0;
    for (int j = 0; j < take; ++j) s |= bit(order[j]);
    int k = popcount(s) - m.rank(s);
    if (k < 1 || k > k_max || !m.is_cyclic(s)) continue;
    if (!seen.insert(s).second) continue;
    ++verdict.checked[k];
    BalanceReport rep = balance_report(m, principal_partition(m, s));
    if (!rep.balanced) {
      verdict.pass = false;
      verdict.counterexamples.push_back(std::move(rep));
    }
  }
  return verdict;
}

int run_verify(const Json& spec, int k_max, const std::string& mode,
               unsigned seed, long long samples, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  BuiltMatroid built = build_matroid(spec);
  const Matroid& m = built.matroid;

  Json rep;
  rep["version"] = kReportVersion;
  rep["command"] = "verify";
  rep["input"] = canonical_spec(spec);
  rep["k_max"] = k_max;
  rep["mode"] = mode;
  rep["seed"] = seed;
  if (mode == "sampled") rep["samples"] = samples;

  PropertyVerdict verdict = mode == "exhaustive"
                                ? verify_kfold_property(m, k_max)
                                : sampled_verify(m, k_max, seed, samples);

  Json res;
  res["pass"] = verdict.pass;
  Json checked;
  for (const auto& [k, count] : verdict.checked)
    checked[std::to_string(k)] = count;
  res["checked"] = std::move(checked);
  Json cex = Json::array();
  for (const BalanceReport& br : verdict.counterexamples)
    cex.push_back(balance_json(m, br));
  res["counterexamples"] = std::move(cex);
  rep["result"] = std::move(res);

  int code = emit(rep, out_path, out, err);
  if (code != 0) return code;
  return verdict.pass ? 0 : 1;
}

int run_lattice(const Json& spec, const std::string& which,
                const std::string& check, const std::string& emit_kind,
                unsigned seed, long long samples, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  BuiltMatroid built = build_matroid(spec);
  const Matroid& m = built.matroid;

  FiniteLattice l =
      which == "flats" ? lattice_of_flats(m) : lattice_of_cyclic_sets(m);
  std::string fname = which == "flats" ? "rank" : "rho";

  bool pass = true;
  Json check_json = nullptr;
  if (check == "pseudomodular") {
    PseudomodularReport pr =
        check_pseudomodular(l, fname, ScanMode::auto_scan, seed, samples);
    pass = pr.pseudomodular;
    check_json = Json{{"kind", "pseudomodular"},
                      {"function", fname},
                      {"pass", pr.pseudomodular},
                      {"exhaustive", pr.exhaustive},
                      {"checked", pr.checked},
                      {"witness", pr.witness
                                      ? Json(std::vector<int>(pr.witness->begin(),
                                                              pr.witness->end()))
                                      : Json(nullptr)}};
  } else if (check == "geometric") {
    GeometricReport gr = check_geometric(l, fname);
    pass = gr.geometric();
    check_json = Json{{"kind", "geometric"},
                      {"function", fname},
                      {"pass", gr.geometric()},
                      {"graded", gr.graded},
                      {"atomistic", gr.atomistic},
                      {"semimodular", gr.semimodular}};
  }

  int code;
  if (emit_kind == "dot") {
    code = emit_text(lattice_dot(l, m.ground()), out_path, out, err);
  } else {
    Json rep;
    rep["version"] = kReportVersion;
    rep["command"] = "lattice";
    rep["input"] = canonical_spec(spec);
    rep["which"] = which;
    Json nodes = Json::array();
    for (int i = 0; i < l.size(); ++i) {
      Json node;
      node["set"] = labels_json(m.ground(), l.node(i));
      for (const auto& name : l.function_names())
        node[name] = l.values(name)[static_cast<size_t>(i)];
      nodes.push_back(std::move(node));
    }
    Json covers = Json::array();
    for (const auto& [lo, up] : l.cover_pairs())
      covers.push_back(Json::array({lo, up}));
    rep["result"] = Json{{"node_count", l.size()},
                         {"functions", l.function_names()},
                         {"nodes", std::move(nodes)},
                         {"covers", std::move(covers)},
                         {"check", std::move(check_json)}};
    code = emit(rep, out_path, out, err);
  }
  if (code != 0) return code;
  return pass ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"matroid analysis toolkit"};
  app.require_subcommand(1);

  std::string file, out_path;
  std::string subset_csv;
  int k_max = 2;
  std::string mode = "exhaustive";
  unsigned seed = 0;
  long long samples = 100000;
  std::string which = "flats", check = "none", emit_kind = "json";

  CLI::App* analyze =
      app.add_subcommand("analyze", "analyze a subset as a k-fold circuit");
  analyze->add_option("file", file, "matroid description file")->required();
  CLI::Option* subset_opt = analyze->add_option(
      "--subset", subset_csv, "comma-separated element labels (default: all)");
  analyze->add_option("--out", out_path, "write the report to a file");

  CLI::App* verify = app.add_subcommand(
      "verify", "check balance of every k-fold circuit up to --k-max");
  verify->add_option("file", file, "matroid description file")->required();
  verify->add_option("--k-max", k_max, "largest circuit order checked")
      ->check(CLI::Range(1, 16));
  verify->add_option("--mode", mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--seed", seed, "seed for sampled mode");
  verify->add_option("--samples", samples, "sample count for sampled mode")
      ->check(CLI::Range(1LL, 100000000LL));
  verify->add_option("--out", out_path, "write the report to a file");

  CLI::App* lattice =
      app.add_subcommand("lattice", "build and check a lattice of the matroid");
  lattice->add_option("file", file, "matroid description file")->required();
  lattice->add_option("--which", which, "flats or cyclic")
      ->check(CLI::IsMember({"flats", "cyclic"}));
  lattice->add_option("--check", check, "pseudomodular, geometric, or none")
      ->check(CLI::IsMember({"none", "pseudomodular", "geometric"}));
  lattice->add_option("--emit", emit_kind, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  lattice->add_option("--seed", seed, "seed for sampled scans");
  lattice->add_option("--samples", samples, "sample count for sampled scans")
      ->check(CLI::Range(1LL, 100000000LL));
  lattice->add_option("--out", out_path, "write the output to a file");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Json spec = load_spec_file(file);
    if (analyze->parsed())
      return run_analyze(spec, subset_opt->count() > 0, subset_csv, out_path,
                         out, err);
    if (verify->parsed())
      return run_verify(spec, k_max, mode, seed, samples, out_path, out, err);
    return run_lattice(spec, which, check, emit_kind, seed, samples, out_path,
                       out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace mkit
