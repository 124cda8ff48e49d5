// resfront: frontier, selection, verification and audit front end.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget error.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "resfront/cycles.hpp"
#include "resfront/error.hpp"
#include "resfront/generator.hpp"
#include "resfront/io.hpp"
#include "resfront/mechanism.hpp"
#include "resfront/oracle.hpp"
#include "resfront/rha.hpp"
#include "resfront/verify.hpp"

namespace {

using namespace resfront;

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Source {
  std::string path;
  std::string named;
  std::string subset;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("input", src.path, "Instance JSON file");
  cmd->add_option("--named", src.named, "Use a built-in instance instead of a file");
  cmd->add_option("--subset", src.subset, "Keep only these patients, e.g. p1..p5,p7");
}

InstanceDocument restrict_document(const InstanceDocument& doc, const std::vector<int>& keep) {
  InstanceDocument out;
  out.instance = restrict_patients(doc.instance, keep);
  out.beta_star = doc.beta_star;
  out.seed = doc.seed;
  if (doc.priority) {
    std::vector<int> new_index(doc.instance.num_patients(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) new_index[keep[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> lists;
    for (int c = 0; c < doc.instance.num_categories(); ++c) {
      std::vector<int> list;
      for (int p : priority_list(*doc.priority, c)) {
        if (new_index[p] >= 0) list.push_back(new_index[p]);
      }
      lists.push_back(std::move(list));
    }
    out.priority = priority_from_lists(lists);
  }
  return out;
}

InstanceDocument load_source(const Source& src) {
  if (src.path.empty() == src.named.empty()) {
    throw InputError("give exactly one of an input file or --named");
  }
  InstanceDocument doc = src.named.empty() ? load_instance_file(src.path) : gen_named(src.named);
  if (!src.subset.empty()) doc = restrict_document(doc, parse_patient_subset(doc.instance, src.subset));
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string set_str(const Instance& inst, PatientMask mask) {
  std::string s = "{";
  bool first = true;
  for (int p : mask_to_patients(mask)) {
    s += (first ? "" : ",") + inst.patients[p];
    first = false;
  }
  return s + "}";
}

// ---- frontier ----

struct FrontierArgs {
  Source src;
  std::string format = "csv";
  bool witnesses = false;
  std::string out;
  std::string witness_out;
};

int run_frontier(const FrontierArgs& a) {
  const InstanceDocument doc = load_source(a.src);
  const SeatInstance si(doc.instance);
  Frontier f = compute_frontier(si);
  if (a.witnesses) attach_walk_witnesses(si, f);
  if (a.format == "json") {
    write_text(a.out, dump_json(frontier_json(si, f, a.witnesses)));
    return 0;
  }
  if (a.witnesses) {
    std::string sidecar = a.witness_out;
    if (sidecar.empty()) {
      if (a.out.empty() || a.out == "-") {
        throw InputError("--witnesses with csv output needs --out or --witness-out");
      }
      sidecar = a.out + ".witnesses.json";
    }
    write_text(sidecar, dump_json(witnesses_json(si, f)));
  }
  write_text(a.out, frontier_csv(f));
  return 0;
}

// ---- solve ----

struct SolveArgs {
  Source src;
  bool respect_priority = false;
};

int run_solve(const SolveArgs& a) {
  const InstanceDocument doc = load_source(a.src);
  if (!doc.beta_star) throw InputError("solve needs beta_star in the instance");
  const Problem pr{doc.instance, *doc.beta_star};
  const SeatInstance si(doc.instance);
  Selection sel = select_approx_on_frontier(pr);
  std::optional<ProblemWithOrder> pwo;
  if (a.respect_priority) {
    pwo = ProblemWithOrder{pr, doc.priority ? *doc.priority : synthesize_priority(doc.instance)};
    validate_problem_with_order(*pwo);
    sel.matching = repair_priority(*pwo, si, sel.matching);
  }
  std::cout << dump_json(matching_to_json(si, sel.matching));
  const Rational beta = beneficiary_share(sel.point);
  std::cout << "e=" << sel.point.e << " b=" << sel.point.b << " beta=" << beta.to_string()
            << " target=" << doc.beta_star->to_string() << "\n";
  if (pwo) std::cout << "priority_violations=" << respects_priority(*pwo, si, sel.matching).size() << "\n";
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  Source src;
  std::vector<std::string> random;
  std::string suite = "all";
  int jobs = 1;
  bool inject_corruption = false;
};

struct Case {
  std::string label;
  Instance instance;
  std::optional<Rational> beta_star;
};

GenConfig parse_random(const std::vector<std::string>& tokens, int& count) {
  GenConfig cfg;
  count = 1;
  std::vector<std::string> pairs;
  for (const auto& t : tokens) {
    std::istringstream is(t);
    for (std::string w; is >> w;) pairs.push_back(w);
  }
  for (const auto& kv : pairs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--random: expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    auto integer = [&]() -> std::int64_t {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw InputError("--random: " + key + " expects an integer, got '" + value + "'");
      }
    };
    if (key == "patients") {
      cfg.patients = static_cast<int>(integer());
    } else if (key == "categories") {
      cfg.categories = static_cast<int>(integer());
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(integer());
    } else if (key == "count") {
      count = static_cast<int>(integer());
    } else if (key == "quota_lo") {
      cfg.quota_lo = static_cast<int>(integer());
    } else if (key == "quota_hi") {
      cfg.quota_hi = static_cast<int>(integer());
    } else if (key == "eligibility") {
      cfg.eligibility_density = Rational::parse(value);
    } else if (key == "beneficiary") {
      cfg.beneficiary_density = Rational::parse(value);
    } else {
      throw InputError("--random: unknown key '" + key + "'");
    }
  }
  if (count < 1) throw InputError("--random: count must be positive");
  validate_config(cfg);
  return cfg;
}

std::vector<Suite> parse_suites(const std::string& name) {
  if (name == "all") return {Suite::kFrontier, Suite::kCycles, Suite::kLemmas, Suite::kMechanism};
  if (auto s = parse_suite(name)) return {*s};
  throw InputError("--suite: unknown suite '" + name + "'");
}

int run_verify(const VerifyArgs& a) {
  const std::vector<Suite> suites = parse_suites(a.suite);
  VerifyOptions opts;
  opts.budget = default_budget();
  opts.inject_corruption = a.inject_corruption;

  std::vector<Case> cases;
  if (!a.random.empty()) {
    if (!a.src.path.empty() || !a.src.named.empty()) {
      throw InputError("--random cannot be combined with an input instance");
    }
    int count = 0;
    const GenConfig base = parse_random(a.random, count);
    for (int i = 0; i < count; ++i) {
      GenConfig cfg = base;
      cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(i));
      cases.push_back({"random#" + std::to_string(i), gen_random(cfg), std::nullopt});
    }
  } else {
    const InstanceDocument doc = load_source(a.src);
    cases.push_back({a.src.named.empty() ? a.src.path : a.src.named, doc.instance, doc.beta_star});
  }
  for (const auto& c : cases) check_budget(SeatInstance(c.instance), opts.budget);

  std::vector<std::vector<SuiteResult>> results(cases.size());
  std::vector<std::string> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) {
      try {
        results[i] = run_suites(cases[i].instance, cases[i].beta_star, suites, opts);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int workers = std::max(1, std::min<int>(a.jobs, static_cast<int>(cases.size())));
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  int failed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!errors[i].empty()) {
      std::cout << "FAIL " << cases[i].label << ": " << errors[i] << "\n";
      ++failed;
      continue;
    }
    bool ok = true;
    for (const auto& r : results[i]) {
      if (r.passed()) continue;
      ok = false;
      for (const auto& msg : r.failures) {
        std::cout << "FAIL " << cases[i].label << " [" << suite_name(r.suite) << "] " << msg << "\n";
      }
    }
    if (!ok) {
      ++failed;
    } else if (cases.size() == 1) {
      for (const auto& r : results[i]) {
        std::cout << "PASS " << cases[i].label << " [" << suite_name(r.suite) << "]"
                  << (r.sampled ? " (sampled)" : "") << "\n";
      }
    }
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << cases.size() - failed << "/" << cases.size()
            << " instances passed suite " << a.suite << "\n";
  return failed ? kExitVerify : 0;
}

// ---- audit ----

struct AuditArgs {
  Source src;
  std::string check = "both";
  int max_patients = kDefaultAuditCap;
};

int run_audit(const AuditArgs& a) {
  if (a.check != "pi" && a.check != "subs" && a.check != "both") {
    throw InputError("--check must be pi, subs or both");
  }
  const InstanceDocument doc = load_source(a.src);
  const Instance& inst = doc.instance;
  if (inst.num_patients() > a.max_patients) {
    throw BudgetError("audit refused: " + std::to_string(inst.num_patients()) +
                      " patients exceed --max-patients " + std::to_string(a.max_patients));
  }
  const Problem pr{inst, doc.beta_star.value_or(Rational(0))};
  if (!doc.beta_star) std::cout << "note: no beta_star in instance, auditing with 0/1\n";

  if (a.check != "subs") {
    const auto v = audit_path_independence(pr, a.max_patients);
    std::cout << "path-independence: " << v.size() << " violation(s)\n";
    for (const auto& x : v) {
      std::cout << "  X=" << set_str(inst, x.x) << " X'=" << set_str(inst, x.x_prime)
                << " C(X u X')=" << set_str(inst, x.choice_of_union)
                << " C(C(X) u X')=" << set_str(inst, x.choice_of_sequential) << "\n";
    }
  }
  if (a.check != "pi") {
    const auto v = audit_substitutability(pr, a.max_patients);
    std::cout << "substitutability: " << v.size() << " violation(s)\n";
    for (const auto& x : v) {
      std::cout << "  X=" << set_str(inst, x.x) << " X'=" << set_str(inst, x.x_prime)
                << " C(X)=" << set_str(inst, x.choice_of_x)
                << " C(X) n X'=" << set_str(inst, x.choice_of_x & x.x_prime)
                << " C(X')=" << set_str(inst, x.choice_of_x_prime) << "\n";
    }
  }
  return 0;
}

// ---- generate ----

struct GenerateArgs {
  std::string named;
  int tightness = 0;
  std::vector<std::string> random;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const int modes = !a.named.empty() + (a.tightness > 0) + !a.random.empty();
  if (modes != 1) throw InputError("give exactly one of --named, --tightness or --random");
  InstanceDocument doc;
  if (!a.named.empty()) {
    doc = gen_named(a.named);
  } else if (a.tightness > 0) {
    doc.instance = gen_tightness_family(a.tightness);
  } else {
    int count = 0;
    const GenConfig cfg = parse_random(a.random, count);
    doc.instance = gen_random(cfg);
    doc.seed = cfg.seed;
  }
  write_text(a.out, dump_json(instance_to_json(doc)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-domination frontiers for reserve-system matching"};
  app.require_subcommand(1);

  FrontierArgs fa;
  auto* frontier = app.add_subcommand("frontier", "Print the (e, b) frontier");
  add_source(frontier, fa.src);
  frontier->add_option("--format", fa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  frontier->add_flag("--witnesses", fa.witnesses, "Attach a witness matching to every point");
  frontier->add_option("--out", fa.out, "Output file (default stdout)");
  frontier->add_option("--witness-out", fa.witness_out, "Witness sidecar for csv output");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Select a frontier matching for beta_star");
  add_source(solve, sa.src);
  solve->add_flag("--respect-priority", sa.respect_priority,
                  "Repair priority violations (synthesized tiers when no priority block)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check algorithms against exhaustive oracles");
  add_source(verify, va.src);
  verify->add_option("--random", va.random, "Random batch, e.g. patients=6 categories=5 seed=42 count=200");
  verify->add_option("--suite", va.suite, "frontier, cycles, lemmas, mechanism or all")
      ->check(CLI::IsMember({"frontier", "cycles", "lemmas", "mechanism", "all"}));
  verify->add_option("--jobs", va.jobs, "Worker threads across instances")->check(CLI::PositiveNumber);
  verify->add_flag("--inject-corruption", va.inject_corruption)->group("");

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit", "Scan the induced choice rule for violations");
  add_source(audit, aa.src);
  audit->add_option("--check", aa.check, "pi, subs or both")->check(CLI::IsMember({"pi", "subs", "both"}));
  audit->add_option("--max-patients", aa.max_patients, "Refuse larger instances");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write an instance file");
  generate->add_option("--named", ga.named, "Built-in instance name");
  generate->add_option("--tightness", ga.tightness, "Tightness family with parameter K");
  generate->add_option("--random", ga.random, "Random config, e.g. patients=6 categories=5 seed=42");
  generate->add_option("--out", ga.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*frontier) return run_frontier(fa);
    if (*solve) return run_solve(sa);
    if (*verify) return run_verify(va);
    if (*audit) return run_audit(aa);
    if (*generate) return run_generate(ga);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return 0;
}
