#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "critgrass/affine_perm.hpp"
#include "critgrass/errors.hpp"
#include "critgrass/harness.hpp"
#include "critgrass/io.hpp"
#include "critgrass/plabic.hpp"
#include "critgrass/poset.hpp"
#include "critgrass/topcell.hpp"

using namespace critgrass;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3, kResource = 4 };

int exit_code(Errc c) {
  switch (c) {
    case Errc::Parse:
    case Errc::Precondition:
      return kUsage;
    case Errc::TooLarge:
      return kResource;
    case Errc::Internal:
      return kFail;
    default:
      return kDomain;
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      require(used == tok.size(), Errc::Parse, "bad number \"" + tok + "\"");
    } catch (const std::logic_error&) {
      fail(Errc::Parse, "bad number \"" + tok + "\"");
    }
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  std::string text = dump(j) + "\n";
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(out);
  require(f.good(), Errc::Parse, "cannot write " + out);
  f << text;
}

int cmd_measure(const std::string& graph, const std::string& weights, const std::string& out) {
  PlabicGraph g = build_graph(parse_graph(read_json_file(graph)));
  ParsedWeights w = parse_weights(read_json_file(weights), g);
  if (w.exact)
    emit(point_json(boundary_measurement(g, w.q)), out);
  else
    emit(point_json(boundary_measurement(g, w.d)), out);
  return kPass;
}

int cmd_verify(const std::string& suite, const SuiteConfig& cfg, const std::string& out) {
  if (suite == "all") {
    Json all = Json::array();
    bool ok = true;
    for (const auto& name : suite_names()) {
      Report r = run_suite(name, cfg);
      ok = ok && r.pass();
      all.push_back(r.to_json());
    }
    emit({{"suite", "all"}, {"pass", ok}, {"reports", all}}, out);
    return ok ? kPass : kFail;
  }
  Report r = run_suite(suite, cfg);
  emit(r.to_json(), out);
  return r.pass() ? kPass : kFail;
}

int cmd_fvector(const std::string& poset, int n, const std::string& window, const std::string& out) {
  AffinePoset P = total_order(std::max(n, 1));
  if (poset == "topcell") {
    require(n >= 2, Errc::Precondition, "--n must be at least 2");
  } else if (poset == "perm") {
    std::vector<int> w;
    for (double v : parse_list(window)) w.push_back(static_cast<int>(v));
    P = poset_from_perm(make_bap(w));
    n = P.n();
  } else {
    fail(Errc::Precondition, "unknown poset \"" + poset + "\"");
  }
  FaceLattice L = enumerate_proper_tubings(P);
  emit({{"poset", poset}, {"n", n}, {"fvector", L.fvector}, {"tubes", L.tubes.size()}}, out);
  return kPass;
}

int cmd_psi(int k, int n, const std::string& ys, const std::string& ratios, const std::string& out) {
  require(2 <= k && k <= n - 1, Errc::Precondition, "need 2 <= k <= n-1");
  auto y = parse_list(ys);
  require(static_cast<int>(y.size()) == n, Errc::Precondition, "--y needs n coordinates");
  check_hypersimplex(y);
  Seeds seeds;
  if (!ratios.empty()) {
    auto r = parse_list(ratios);
    for (const auto& t : preimage_of(y).tubing)
      if (t.size() == static_cast<int>(r.size()) + 1 && t.size() < n) seeds[t.elems] = r;
    require(!seeds.empty(), Errc::Precondition, "no collided block matches --seed-ratios");
  }
  Json j = point_json(normalized(psi(y, k, seeds)));
  j["y"] = y;
  emit(j, out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical cells of the nonnegative Grassmannian: measurements, compactifications, and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "Write JSON here instead of stdout");

  std::string graph, weights;
  auto* measure = app.add_subcommand("measure", "Boundary measurement of a weighted plabic graph");
  measure->add_option("graph", graph, "Graph JSON")->required();
  measure->add_option("weights", weights, "Weights JSON")->required();

  SuiteConfig cfg;
  std::string suite;
  bool serial = false;
  auto add_cfg = [&](CLI::App* c) {
    c->add_option("--k", cfg.k);
    c->add_option("--n", cfg.n);
    c->add_option("--samples", cfg.samples);
    c->add_option("--seeds", cfg.seeds, "Random infinitesimal seeds per sample");
    c->add_option("--seed", cfg.seed);
    c->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
    c->add_flag("--serial", serial, "Run the serial reference loops");
  };
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "moves | necklace | tubings | iir | psi-injectivity | strata | polygon | all")
      ->required();
  add_cfg(verify);
  auto* iir = app.add_subcommand("verify-iir", "Independence of infinitesimal ratios");
  add_cfg(iir);

  std::string poset = "topcell", window;
  int fn = 0;
  auto* fvec = app.add_subcommand("fvector", "f-vector of an affine poset cyclohedron");
  fvec->add_option("--poset", poset, "topcell | perm");
  fvec->add_option("--n", fn);
  fvec->add_option("--window", window, "Window of a bounded affine permutation, for --poset perm");

  int pk = 2, pn = 4;
  std::string ys, ratios;
  auto* psic = app.add_subcommand("psi", "The map from the second hypersimplex to the critical variety");
  psic->add_option("--k", pk)->required();
  psic->add_option("--n", pn)->required();
  psic->add_option("--y", ys, "Comma-separated coordinates")->required();
  psic->add_option("--seed-ratios", ratios, "Gap ratios inside the collided block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    cfg.exec = serial ? Exec::Serial : Exec::Parallel;
    if (*measure) return cmd_measure(graph, weights, out);
    if (*verify) return cmd_verify(suite, cfg, out);
    if (*iir) return cmd_verify("iir", cfg, out);
    if (*fvec) return cmd_fvector(poset, fn, window, out);
    if (*psic) return cmd_psi(pk, pn, ys, ratios, out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kUsage;
}
