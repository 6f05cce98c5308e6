#include "ncmatch/campaigns.hpp"

#include "ncmatch/codecs.hpp"
#include "ncmatch/coupling.hpp"
#include "ncmatch/error.hpp"
#include "ncmatch/online_engine.hpp"
#include "ncmatch/strategy_cover.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace ncm {

namespace {

std::uint64_t param_uint(const Json& params, const char* key, std::uint64_t fallback) {
  auto it = params.find(key);
  if (it == params.end() || it->is_null()) return fallback;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(it->get<std::int64_t>());
  if (it->is_string()) {
    const std::string s = it->get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      return std::stoull(s);
    }
  }
  fail(ErrorCode::bad_input, std::string("parameter '") + key + "' must be a non-negative integer");
}

std::uint64_t require_uint(const Json& params, const char* key) {
  if (!params.contains(key)) fail(ErrorCode::bad_input, std::string("missing parameter '") + key + "'");
  return param_uint(params, key, 0);
}

std::vector<int> int_list(const Json& value, const char* key) {
  std::vector<int> out;
  if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number_integer()) fail(ErrorCode::bad_input, std::string("'") + key + "' must hold integers");
      out.push_back(v.get<int>());
    }
    return out;
  }
  if (value.is_string()) {
    std::stringstream ss(value.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail(ErrorCode::bad_input, std::string("'") + key + "' has a non-integer entry: " + item);
      }
    }
    return out;
  }
  fail(ErrorCode::bad_input, std::string("'") + key + "' must be a list or comma-separated string");
}

ProblemKind param_kind(const Json& params, ProblemKind fallback) {
  auto it = params.find("kind");
  if (it == params.end() || it->is_null()) return fallback;
  const std::string k = it->is_string() ? it->get<std::string>() : "";
  if (k == "MNM" || k == "mnm") return ProblemKind::mnm;
  if (k == "BNM" || k == "bnm") return ProblemKind::bnm;
  fail(ErrorCode::bad_input, "kind must be MNM or BNM");
}

Json check(const std::string& name, const Json& measured, const Json& expected, bool pass) {
  return {{"name", name}, {"measured", measured}, {"expected", expected}, {"pass", pass}};
}

Json finish(const std::string& name, Json checks, Json extra, std::chrono::steady_clock::time_point start) {
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  Json out = std::move(extra);
  out["check"] = name;
  out["checks"] = std::move(checks);
  out["pass"] = pass;
  out["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string big(const BigInt& v) { return v.str(); }

// --- bnm-lb --------------------------------------------------------------------------------

Json bnm_lb(const Json& params) {
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<unsigned>(param_uint(params, "n", 3));
  if (n < 1 || n > 4) fail(ErrorCode::bad_input, "bnm-lb supports 1 <= n <= 4");
  std::vector<Instance> family;
  for (const auto& sigma : enumerate_231_avoiding(n)) family.push_back(bnm_red_instance(sigma).instance);
  const StrategyCover cover = min_strategy_cover(family);
  const BigInt cn = catalan(n);
  Json checks = Json::array();
  checks.push_back(check("strategy cover equals C_n", cover.cover, big(cn), BigInt(cover.cover) == cn));
  std::uint64_t factorial = 1;
  for (unsigned i = 2; i <= n; ++i) factorial *= i;
  if (n >= 3) {
    checks.push_back(check("strategy cover below n!", cover.cover, "< " + std::to_string(factorial),
                           cover.cover < factorial));
  }
  const auto pair = min_strategy_cover({bnm_red_instance({{2, 3, 1}}, false).instance,
                                        bnm_red_instance({{2, 1, 3}}).instance});
  checks.push_back(check("pair {R(2,3,1), R(2,1,3)} cover", pair.cover, 1, pair.cover == 1));
  Json extra{{"n", n}, {"family_size", family.size()}, {"maximal_sets", cover.maximal_sets.size()}};
  if (n <= 3) {
    std::vector<Instance> everything;
    std::vector<int> perm(n);
    for (unsigned i = 0; i < n; ++i) perm[i] = static_cast<int>(i + 1);
    do {
      everything.push_back(bnm_red_instance({perm}, false).instance);
    } while (std::next_permutation(perm.begin(), perm.end()));
    extra["all_permutations_cover"] = min_strategy_cover(everything).cover;
  }
  return finish("bnm-lb", std::move(checks), std::move(extra), start);
}

// --- mnm-lb --------------------------------------------------------------------------------

Json mnm_lb(const Json& params) {
  const auto start = std::chrono::steady_clock::now();
  const auto k = static_cast<unsigned>(param_uint(params, "k", 1));
  if (k < 1 || k > 3) fail(ErrorCode::bad_input, "mnm-lb supports 1 <= k <= 3");
  const auto choices = mnm_family_choices(k);
  std::vector<AnnotatedInstance> family;
  family.reserve(choices.size());
  for (const auto& c : choices) family.push_back(mnm_family_instance(k, c));

  Json checks = Json::array();
  const BigInt expected_size = mnm_family_size(k);
  checks.push_back(check("family size", family.size(), big(expected_size), BigInt(family.size()) == expected_size));
  std::set<std::vector<std::uint8_t>> prints;
  for (const auto& ai : family) prints.insert(parity_fingerprint(ai));
  checks.push_back(check("distinct parity fingerprints", prints.size(), family.size(), prints.size() == family.size()));
  Json extra{{"k", k}, {"family_size", family.size()}};

  if (k <= 2) {
    std::size_t completable = 0;
    for (const auto& ai : family) completable += consistent(Matching{}, ai, CompletionMode::offline).consistent ? 1 : 0;
    checks.push_back(check("members with a perfect non-crossing matching", completable, family.size(),
                           completable == family.size()));
    const auto priors = prefix_priors(family.front());
    std::size_t consistent_pairs = 0, condition_failures = 0, max_per_prior = 0;
    for (const auto& prior : priors) {
      std::size_t hits = 0;
      for (const auto& ai : family) {
        const auto rep = consistent(prior, ai, CompletionMode::online);
        if (!rep.consistent) continue;
        ++hits;
        if (!rep.size_condition || !rep.parity_condition) ++condition_failures;
      }
      consistent_pairs += hits;
      max_per_prior = std::max(max_per_prior, hits);
    }
    checks.push_back(check("consistent priors meeting both necessary conditions", consistent_pairs - condition_failures,
                           consistent_pairs, condition_failures == 0));
    const std::size_t bound = std::size_t{1} << (3 * k);
    checks.push_back(check("members per consistent prior", max_per_prior, "<= " + std::to_string(bound),
                           max_per_prior <= bound));
    extra["priors"] = priors.size();
    extra["consistent_pairs"] = consistent_pairs;
    if (family.size() <= kStrategyCoverCap) {
      std::vector<Instance> plain;
      for (const auto& ai : family) plain.push_back(ai.instance);
      extra["strategy_cover"] = min_strategy_cover(plain).cover;
    }
  }
  return finish("mnm-lb", std::move(checks), std::move(extra), start);
}

// --- catalan-bijections --------------------------------------------------------------------

std::vector<BinaryTree> all_trees(unsigned n) {
  static std::map<unsigned, std::vector<BinaryTree>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<BinaryTree> out;
  if (n == 0) {
    out.emplace_back();
  } else {
    for (unsigned left = 0; left < n; ++left) {
      const auto ls = all_trees(left);
      const auto rs = all_trees(n - 1 - left);
      for (const auto& l : ls) {
        for (const auto& r : rs) out.push_back(BinaryTree::join(l, r));
      }
    }
  }
  memo[n] = out;
  return out;
}

void all_dyck(unsigned n, std::vector<std::uint8_t>& prefix, unsigned ups, unsigned downs, std::size_t& count,
              const std::function<void(const DyckWord&)>& visit) {
  if (ups == n && downs == n) {
    ++count;
    visit(DyckWord{prefix});
    return;
  }
  if (ups < n) {
    prefix.push_back(0);
    all_dyck(n, prefix, ups + 1, downs, count, visit);
    prefix.pop_back();
  }
  if (downs < ups) {
    prefix.push_back(1);
    all_dyck(n, prefix, ups, downs + 1, count, visit);
    prefix.pop_back();
  }
}

Json catalan_bijections(const Json& params) {
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<unsigned>(param_uint(params, "n", 8));
  if (n > 10) fail(ErrorCode::bad_input, "catalan-bijections supports n <= 10");
  Json checks = Json::array();
  Json counts = Json::array();
  for (unsigned m = 1; m <= n; ++m) {
    const BigInt cm = catalan(m);
    const bool roundtrip = m <= 8;
    const auto trees = all_trees(m);
    std::size_t failures = 0;
    std::set<BigInt> ranks;
    if (roundtrip) {
      for (const auto& t : trees) {
        const BigInt r = tree_rank(t);
        ranks.insert(r);
        if (r < 0 || r >= cm || !(tree_unrank(m, r) == t)) ++failures;
        if (!(dyck_to_tree(tree_to_dyck(t)) == t)) ++failures;
        if (!(perm_to_tree(tree_to_perm(t)) == t)) ++failures;
      }
      if (BigInt(ranks.size()) != cm) ++failures;
    }
    std::vector<std::uint8_t> prefix;
    std::size_t dyck_count = 0;
    std::set<BigInt> dyck_ranks;
    all_dyck(m, prefix, 0, 0, dyck_count, [&](const DyckWord& w) {
      if (!roundtrip) return;
      const BigInt r = dyck_rank(w);
      dyck_ranks.insert(r);
      if (!(dyck_unrank(m, r) == w)) ++failures;
    });
    if (roundtrip && BigInt(dyck_ranks.size()) != cm) ++failures;
    std::size_t perm_count = 0;
    for_each_231_avoiding(m, [&](const Permutation& p) {
      ++perm_count;
      if (roundtrip && !(tree_to_perm(perm_to_tree(p)) == p)) ++failures;
    });
    const bool equal = BigInt(trees.size()) == cm && BigInt(dyck_count) == cm && BigInt(perm_count) == cm;
    checks.push_back(check("counts at n=" + std::to_string(m),
                           {{"trees", trees.size()}, {"dyck", dyck_count}, {"perm231", perm_count}}, big(cm), equal));
    if (roundtrip) checks.push_back(check("roundtrips at n=" + std::to_string(m), failures, 0, failures == 0));
    counts.push_back(big(cm));
  }
  return finish("catalan-bijections", std::move(checks), {{"n", n}, {"catalan", counts}}, start);
}

// --- coupling ------------------------------------------------------------------------------

Json coupling(const Json& params) {
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(param_uint(params, "n", 200));
  const auto trials = static_cast<std::size_t>(param_uint(params, "trials", 10000));
  const std::uint64_t seed = param_uint(params, "seed", 11);
  const auto workers = static_cast<std::size_t>(param_uint(params, "workers", 0));
  if (n < 1 || trials < 1) fail(ErrorCode::bad_input, "coupling needs n >= 1 and trials >= 1");
  const CouplingSummary s = coupling_campaign(n, trials, seed, workers);
  constexpr double kTolerance = 0.02;
  Json checks = Json::array();
  checks.push_back(check("steps with Y > X", s.y_above_x, 0, s.y_above_x == 0));
  checks.push_back(check("traces with sum X > U", s.x_sum_above_u, 0, s.x_sum_above_u == 0));
  checks.push_back(check("traces with even-Y sum > U", s.y_even_above_u, 0, s.y_even_above_u == 0));
  checks.push_back(check("traces breaking the parent recurrence", s.recurrence_failures, 0, s.recurrence_failures == 0));
  const double mean = s.y_even_mean();
  checks.push_back(check("mean of Y over even match indices", mean, "0.25 +/- 0.02", std::abs(mean - 0.25) <= kTolerance));
  Json extra{{"n", n},
             {"trials", trials},
             {"seed", seed},
             {"rng", kRngName},
             {"matches", s.steps},
             {"mean_unmatched_fraction", double(s.unmatched_sum) / double(2 * n * s.traces)},
             {"mean_x_sum", double(s.x_sum) / double(s.traces)}};
  return finish("coupling", std::move(checks), std::move(extra), start);
}

// --- rate-table ----------------------------------------------------------------------------

Json rate_table(const Json&) {
  const auto start = std::chrono::steady_clock::now();
  const double alphas[] = {0.95, 0.97, 0.99};
  Json rows = Json::array();
  Json checks = Json::array();
  double prev2 = 0, prev4 = 0;
  bool monotone = true, ordered = true, positive = true;
  for (double a : alphas) {
    const double r2 = approx_lb_rate(a, 2);
    const double r4 = approx_lb_rate(a, 4);
    rows.push_back({{"alpha", a}, {"c2", r2}, {"c4", r4}});
    positive = positive && std::isfinite(r2) && std::isfinite(r4) && r2 > 0 && r4 > 0;
    ordered = ordered && r2 >= r4;
    monotone = monotone && r2 > prev2 && r4 > prev4;
    prev2 = r2;
    prev4 = r4;
  }
  checks.push_back(check("rates finite and positive", positive, true, positive));
  checks.push_back(check("c=2 rate >= c=4 rate", ordered, true, ordered));
  checks.push_back(check("rates increase with alpha", monotone, true, monotone));
  const double d = kl_divergence(0.125, 0.25);
  checks.push_back(check("D(1/8 || 1/4)", d, 0.069593, std::abs(d - 0.069593) < 1e-6));
  return finish("rate-table", std::move(checks), {{"rows", rows}}, start);
}

}  // namespace

// --- public entry points -------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NCMATCH_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CouplingSummary coupling_campaign(std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers) {
  const std::size_t threads = std::min(worker_count(workers), trials);
  std::vector<CouplingSummary> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  const OnlineAlgorithm greedy = greedy_matching();
  auto work = [&](std::size_t w) {
    try {
      CouplingSummary& s = partial[w];
      for (std::size_t t = w; t < trials; t += threads) {
        const AnnotatedInstance ai = markov_instance(n, splitmix64(seed + t));
        const SimulationResult sim = simulate(greedy, ai.instance, {true, false});
        const CouplingDiagnostics d = coupling_diagnostics(ai, sim);
        ++s.traces;
        s.steps += d.x.size();
        for (std::size_t i = 0; i < d.x.size(); ++i) s.y_above_x += d.y[i] > d.x[i] ? 1 : 0;
        if (d.x_sum > d.unmatched) ++s.x_sum_above_u;
        if (d.y_even_sum > d.unmatched) ++s.y_even_above_u;
        if (!parent_recurrence_holds(*ai.markov)) ++s.recurrence_failures;
        s.y_even_sum += d.y_even_sum;
        s.y_even_count += d.y_even_count;
        s.unmatched_sum += d.unmatched;
        s.x_sum += d.x_sum;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  CouplingSummary total;
  for (const auto& s : partial) {
    total.traces += s.traces;
    total.steps += s.steps;
    total.y_above_x += s.y_above_x;
    total.x_sum_above_u += s.x_sum_above_u;
    total.y_even_above_u += s.y_even_above_u;
    total.recurrence_failures += s.recurrence_failures;
    total.y_even_sum += s.y_even_sum;
    total.y_even_count += s.y_even_count;
    total.unmatched_sum += s.unmatched_sum;
    total.x_sum += s.x_sum;
  }
  return total;
}

AnnotatedInstance generate_instance(const std::string& family, const Json& params, std::uint64_t seed) {
  if (!params.is_object()) fail(ErrorCode::bad_input, "parameters must be a JSON object");
  if (family == "bnm-perm") {
    if (!params.contains("sigma")) fail(ErrorCode::bad_input, "bnm-perm needs sigma");
    Permutation sigma{int_list(params["sigma"], "sigma")};
    const bool allow = params.value("allow_231", false);
    return bnm_red_instance(sigma, !allow);
  }
  if (family == "mnm-family") {
    const auto k = static_cast<unsigned>(require_uint(params, "k"));
    FamilyChoice choice;
    if (params.contains("S")) {
      for (int s : int_list(params["S"], "S")) {
        if (s < 0) fail(ErrorCode::bad_subset, "interval indices must be positive");
        choice.intervals.push_back(static_cast<unsigned>(s));
      }
    }
    choice.j = static_cast<unsigned>(param_uint(params, "j", choice.intervals.size()));
    return mnm_family_instance(k, choice);
  }
  const auto n = static_cast<std::size_t>(require_uint(params, "n"));
  if (n == 0) fail(ErrorCode::bad_input, "n must be positive");
  if (family == "markov") return markov_instance(n, seed);
  if (family == "random-convex") return random_convex_instance(param_kind(params, ProblemKind::mnm), n, seed);
  if (family == "random-circle") return random_circle_instance(param_kind(params, ProblemKind::mnm), n, seed);
  if (family == "random-general") return random_general_instance(param_kind(params, ProblemKind::mnm), n, seed);
  fail(ErrorCode::bad_input, "unknown family '" + family + "'");
}

Json run_campaign(const std::string& name, const Json& params) {
  if (!params.is_object()) fail(ErrorCode::bad_input, "parameters must be a JSON object");
  if (name == "bnm-lb") return bnm_lb(params);
  if (name == "mnm-lb") return mnm_lb(params);
  if (name == "catalan-bijections") return catalan_bijections(params);
  if (name == "coupling") return coupling(params);
  if (name == "rate-table") return rate_table(params);
  fail(ErrorCode::bad_input, "unknown check '" + name + "'");
}

BinaryTree parse_tree(const std::string& text) {
  std::size_t pos = 0;
  std::function<BinaryTree()> parse = [&]() -> BinaryTree {
    if (pos >= text.size() || text[pos] == ')') return {};
    if (text[pos] != '(') fail(ErrorCode::bad_input, "unexpected character in tree text");
    ++pos;
    BinaryTree left = parse();
    if (pos >= text.size() || text[pos] != ')') fail(ErrorCode::bad_input, "unbalanced tree text");
    ++pos;
    BinaryTree right = parse();
    return BinaryTree::join(left, right);
  };
  BinaryTree t = parse();
  if (pos != text.size()) fail(ErrorCode::bad_input, "trailing characters in tree text");
  return t;
}

Json run_codec(const std::string& op, const Json& args) {
  if (!args.is_object()) fail(ErrorCode::bad_input, "arguments must be a JSON object");
  auto big_arg = [&](const char* key) {
    if (!args.contains(key)) fail(ErrorCode::bad_input, std::string("missing argument '") + key + "'");
    const Json& v = args[key];
    const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      fail(ErrorCode::bad_input, std::string("argument '") + key + "' must be a non-negative integer");
    }
    return BigInt(s);
  };
  auto string_arg = [&](const char* key) {
    if (!args.contains(key) || !args[key].is_string()) {
      fail(ErrorCode::bad_input, std::string("argument '") + key + "' must be a string");
    }
    return args[key].get<std::string>();
  };
  if (op == "catalan") {
    const auto n = static_cast<unsigned>(require_uint(args, "n"));
    return {{"n", n}, {"catalan", big(catalan(n))}, {"bits", ranked_width(catalan(n))}};
  }
  if (op == "elias-encode") {
    const std::uint64_t m = require_uint(args, "m");
    if (m == 0) fail(ErrorCode::bad_input, "Elias delta encodes positive integers");
    const auto bits = elias_delta_encode(m);
    return {{"m", m}, {"code", bits_to_string(bits)}, {"length", bits.size()}};
  }
  if (op == "elias-decode") {
    const std::string code = string_arg("code");
    AdviceTape tape;
    for (char c : code) {
      if (c != '0' && c != '1') fail(ErrorCode::bad_input, "code must be a bit string");
      tape.write(c == '1');
    }
    const std::uint64_t m = elias_delta_decode(tape);
    return {{"m", m}, {"consumed", tape.cursor()}};
  }
  if (op == "tree-rank") {
    const BinaryTree t = parse_tree(string_arg("tree"));
    return {{"n", t.size()}, {"rank", big(tree_rank(t))}};
  }
  if (op == "tree-unrank") {
    const auto n = static_cast<unsigned>(require_uint(args, "n"));
    const BinaryTree t = tree_unrank(n, big_arg("rank"));
    return {{"n", n}, {"tree", t.str()}, {"dyck", tree_to_dyck(t).str()}, {"perm", tree_to_perm(t).values}};
  }
  if (op == "dyck-rank") {
    const DyckWord w = DyckWord::parse(string_arg("word"));
    return {{"n", w.half_length()}, {"rank", big(dyck_rank(w))}};
  }
  if (op == "dyck-unrank") {
    const auto n = static_cast<unsigned>(require_uint(args, "n"));
    return {{"n", n}, {"word", dyck_unrank(n, big_arg("rank")).str()}};
  }
  if (op == "perm-check" || op == "perm-to-tree") {
    if (!args.contains("perm")) fail(ErrorCode::bad_input, "missing argument 'perm'");
    const Permutation p{int_list(args["perm"], "perm")};
    if (!is_permutation(p)) fail(ErrorCode::bad_input, "not a permutation of 1..n");
    if (op == "perm-check") {
      Json out{{"perm", p.values}, {"avoiding", true}};
      if (const auto w = find_231(p)) {
        out["avoiding"] = false;
        out["witness_positions"] = {w->i + 1, w->j + 1, w->k + 1};
        out["witness_values"] = {p.values[w->i], p.values[w->j], p.values[w->k]};
      }
      return out;
    }
    const BinaryTree t = perm_to_tree(p);
    return {{"perm", p.values}, {"tree", t.str()}, {"dyck", tree_to_dyck(t).str()}, {"rank", big(tree_rank(t))}};
  }
  fail(ErrorCode::bad_input, "unknown codec operation '" + op + "'");
}

}  // namespace ncm
