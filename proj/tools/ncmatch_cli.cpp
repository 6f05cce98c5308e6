// Command-line front end over the C interface of libncmatch.
#include "ncmatch/ncmatch.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kPrecondition = 3 };

int exit_code(ncm_status status) {
  switch (status) {
    case NCM_OK: return kOk;
    case NCM_E_PRECONDITION:
    case NCM_E_NOT_CONVEX:
    case NCM_E_DUPLICATE_X: return kPrecondition;
    case NCM_E_ILLEGAL_MATCH:
    case NCM_E_NOT_PERFECT:
    case NCM_E_CROSSING_DETECTED:
    case NCM_E_INTERNAL: return kVerifyFailed;
    default: return kBadInput;
  }
}

int report_failure(ncm_status status) {
  std::cerr << "error (" << ncm_status_name(status) << "): " << ncm_last_error() << "\n";
  return exit_code(status);
}

// Owns a string returned by the library.
struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ncm_string_free(s); }
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online non-crossing matching with advice: generators, simulators and verifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ncm_version()));

  // generate
  auto* gen = app.add_subcommand("generate", "Write an instance file");
  std::string family;
  std::string sigma, subset, kind;
  std::optional<unsigned> n, k, j;
  std::uint64_t seed = 1;
  bool allow_231 = false;
  std::string out_path;
  gen->add_option("--family", family, "bnm-perm, mnm-family, markov, random-convex, random-circle, random-general")
      ->required();
  gen->add_option("--sigma", sigma, "Permutation for bnm-perm, e.g. 2,1,4,3");
  gen->add_flag("--allow-231", allow_231, "Build bnm-perm even for a permutation containing 231");
  gen->add_option("--n", n, "Instance size");
  gen->add_option("--k", k, "Prefix family parameter");
  gen->add_option("--j", j, "Number of interval points (mnm-family)");
  gen->add_option("--subset", subset, "Interval indices for mnm-family, e.g. 1,3");
  gen->add_option("--kind", kind, "MNM or BNM for random families");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out_path, "Output path (stdout if omitted)");

  // run
  auto* run = app.add_subcommand("run", "Simulate an online algorithm on an instance");
  std::string algorithm, instance_path, svg_path;
  run->add_option("--algorithm,-a", algorithm, "bt, asap, asap-unknown-n, asap-largest, sorted, greedy")->required();
  run->add_option("--instance,-i", instance_path, "Instance JSON file")->required();
  run->add_option("--svg", svg_path, "Write an SVG rendering of the result");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  std::string check;
  std::optional<unsigned> v_n, v_k;
  std::optional<std::uint64_t> v_trials, v_seed, v_workers;
  verify->add_option("--check", check, "bnm-lb, mnm-lb, catalan-bijections, coupling, rate-table")->required();
  verify->add_option("--n", v_n, "Size parameter");
  verify->add_option("--k", v_k, "Prefix family parameter");
  verify->add_option("--trials", v_trials, "Number of Monte Carlo traces");
  verify->add_option("--seed", v_seed, "Campaign seed");
  verify->add_option("--workers", v_workers, "Worker threads (default: NCMATCH_WORKERS or all cores)");

  // codec
  auto* codec = app.add_subcommand("codec", "Catalan codecs and Elias delta utilities");
  std::string op;
  std::optional<std::string> c_n, c_m, c_rank, c_tree, c_word, c_perm, c_code;
  codec->add_option("op", op,
                    "catalan, elias-encode, elias-decode, tree-rank, tree-unrank, dyck-rank, dyck-unrank, "
                    "perm-check, perm-to-tree")
      ->required();
  codec->add_option("--n", c_n, "Size");
  codec->add_option("--m", c_m, "Positive integer to encode");
  codec->add_option("--rank", c_rank, "Rank");
  codec->add_option("--tree", c_tree, "Tree in bracket form, e.g. (())()");
  codec->add_option("--word", c_word, "Dyck word, e.g. 0101");
  codec->add_option("--perm", c_perm, "Permutation, e.g. 3,1,5,4,2");
  codec->add_option("--code", c_code, "Bit string to decode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  if (*gen) {
    nlohmann::json params = nlohmann::json::object();
    if (!sigma.empty()) params["sigma"] = sigma;
    if (allow_231) params["allow_231"] = true;
    if (n) params["n"] = *n;
    if (k) params["k"] = *k;
    if (j) params["j"] = *j;
    if (!subset.empty()) params["S"] = subset;
    if (!kind.empty()) params["kind"] = kind;
    ncm_instance* inst = nullptr;
    ncm_status st = ncm_instance_generate(family.c_str(), params.dump().c_str(), seed, &inst);
    if (st != NCM_OK) return report_failure(st);
    if (out_path.empty()) {
      OwnedString text;
      st = ncm_instance_to_json(inst, &text.s);
      if (st == NCM_OK) std::cout << text.s << "\n";
    } else {
      st = ncm_instance_save(inst, out_path.c_str());
    }
    ncm_instance_free(inst);
    return st == NCM_OK ? kOk : report_failure(st);
  }

  if (*run) {
    ncm_instance* inst = nullptr;
    ncm_status st = ncm_instance_load(instance_path.c_str(), &inst);
    if (st != NCM_OK) return report_failure(st);
    ncm_result* res = nullptr;
    st = ncm_run(inst, algorithm.c_str(), &res);
    ncm_instance_free(inst);
    if (st != NCM_OK) return report_failure(st);
    OwnedString report;
    st = ncm_result_report(res, &report.s);
    if (st == NCM_OK && !svg_path.empty()) {
      OwnedString svg;
      st = ncm_result_svg(res, &svg.s);
      if (st == NCM_OK && !write_file(svg_path, svg.s)) {
        ncm_result_free(res);
        std::cerr << "error: cannot write " << svg_path << "\n";
        return kBadInput;
      }
    }
    ncm_result_free(res);
    if (st != NCM_OK) return report_failure(st);
    std::cout << report.s << "\n";
    return kOk;
  }

  if (*verify) {
    nlohmann::json params = nlohmann::json::object();
    if (v_n) params["n"] = *v_n;
    if (v_k) params["k"] = *v_k;
    if (v_trials) params["trials"] = *v_trials;
    if (v_seed) params["seed"] = *v_seed;
    if (v_workers) params["workers"] = *v_workers;
    OwnedString out;
    int passed = 0;
    const ncm_status st = ncm_verify(check.c_str(), params.dump().c_str(), &out.s, &passed);
    if (st != NCM_OK) return report_failure(st);
    std::cout << out.s << "\n";
    return passed ? kOk : kVerifyFailed;
  }

  nlohmann::json args = nlohmann::json::object();
  if (c_n) args["n"] = *c_n;
  if (c_m) args["m"] = *c_m;
  if (c_rank) args["rank"] = *c_rank;
  if (c_tree) args["tree"] = *c_tree;
  if (c_word) args["word"] = *c_word;
  if (c_perm) args["perm"] = *c_perm;
  if (c_code) args["code"] = *c_code;
  OwnedString out;
  const ncm_status st = ncm_codec(op.c_str(), args.dump().c_str(), &out.s);
  if (st != NCM_OK) return report_failure(st);
  std::cout << out.s << "\n";
  return kOk;
}
