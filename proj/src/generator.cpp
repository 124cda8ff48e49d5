#include "resfront/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "resfront/error.hpp"

namespace resfront {

void validate_config(const GenConfig& cfg) {
  if (cfg.patients < 0 || cfg.categories < 0) throw InputError("sizes must be non-negative");
  if (cfg.quota_lo < 1 || cfg.quota_hi < cfg.quota_lo) {
    throw InputError("quota range must satisfy 1 <= lo <= hi");
  }
  if (cfg.eligibility_density <= Rational(0) || cfg.eligibility_density > Rational(1)) {
    throw InputError("eligibility density must lie in (0, 1]");
  }
  if (cfg.beneficiary_density < Rational(0) || cfg.beneficiary_density > Rational(1)) {
    throw InputError("beneficiary density must lie in [0, 1]");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Raw engine output only, so draws do not depend on the standard library's
// distribution implementations.
bool bernoulli(std::mt19937_64& rng, const Rational& p) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.den())) < p.num();
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Instance gen_random(const GenConfig& cfg) {
  validate_config(cfg);
  std::mt19937_64 rng(cfg.seed);
  Instance inst;
  for (int p = 0; p < cfg.patients; ++p) inst.patients.push_back("p" + std::to_string(p + 1));
  for (int c = 0; c < cfg.categories; ++c) {
    inst.categories.push_back({"c" + std::to_string(c + 1), uniform_int(rng, cfg.quota_lo, cfg.quota_hi), {}, {}});
  }
  for (auto& cat : inst.categories) {
    for (int p = 0; p < cfg.patients; ++p) {
      if (!bernoulli(rng, cfg.eligibility_density)) continue;
      cat.eligible.push_back(p);
      if (bernoulli(rng, cfg.beneficiary_density)) cat.beneficiary.push_back(p);
    }
  }
  return inst;
}

GenConfig small_config(std::uint64_t seed, int max_patients, int max_seats) {
  if (max_patients < 1 || max_seats < 1) throw InputError("small_config needs positive caps");
  std::mt19937_64 rng(seed);
  static const Rational kEligibility[] = {{1, 4}, {1, 3}, {1, 2}, {2, 3}};
  static const Rational kBeneficiary[] = {{0, 1}, {1, 5}, {1, 4}, {1, 3}, {1, 2}, {1, 1}};
  GenConfig cfg;
  cfg.patients = uniform_int(rng, std::max(1, max_patients - 3), max_patients);
  cfg.categories = uniform_int(rng, 1, max_seats);
  cfg.quota_lo = 1;
  cfg.quota_hi = uniform_int(rng, 1, max_seats / cfg.categories);
  cfg.eligibility_density = kEligibility[rng() % std::size(kEligibility)];
  cfg.beneficiary_density = kBeneficiary[rng() % std::size(kBeneficiary)];
  cfg.seed = derive_seed(seed, 0);
  return cfg;
}

Instance gen_small(std::uint64_t seed, int max_patients, int max_seats) {
  if (derive_seed(seed, 1) % 2 == 0 && max_patients >= 2 && max_seats >= 2) {
    return gen_contested(derive_seed(seed, 2), max_patients, max_seats);
  }
  return gen_random(small_config(seed, max_patients, max_seats));
}

Instance gen_tightness_family(int k) {
  if (k < 1) throw InputError("tightness family needs K >= 1");
  const int size = k + 2;
  Instance inst;
  for (int i = 1; i <= size; ++i) inst.patients.push_back("p" + std::to_string(i));
  for (int n = 1; n <= size; ++n) {
    Category c{"c" + std::to_string(n), 1, {}, {}};
    if (n == 1) {
      c.eligible = {0, size - 1};
      c.beneficiary = {0};
    } else if (n <= k + 1) {
      c.eligible = {n - 2, n - 1};
      c.beneficiary = {n - 1};
    } else {
      c.eligible = {k};
    }
    inst.categories.push_back(std::move(c));
  }
  return inst;
}

Instance gen_contested(std::uint64_t seed, int max_patients, int max_seats) {
  if (max_patients < 2 || max_seats < 2) throw InputError("gen_contested needs caps of at least 2");
  std::mt19937_64 rng(seed);
  const int cap = std::min(max_patients, max_seats);
  std::vector<Category> cats;
  int np = 0;
  // Chain gadgets: K + 2 patients and seats, one unit of e costs K + 1 units of b.
  for (int left = cap; left >= 2;) {
    const int k = uniform_int(rng, 0, std::min(left - 2, 3));
    const int base = np;
    const int size = k + 2;
    for (int n = 0; n < size; ++n) {
      Category c{"", 1, {}, {}};
      if (n == 0) {
        c.eligible = {base, base + size - 1};
        c.beneficiary = {base};
      } else if (n <= k) {
        c.eligible = {base + n - 1, base + n};
        c.beneficiary = {base + n};
      } else {
        c.eligible = {base + k};
      }
      cats.push_back(std::move(c));
    }
    np += size;
    left -= size;
    if (left == 1 && np < max_patients && uniform_int(rng, 0, 1) == 1) {
      cats.push_back({"", 1, {np}, {np}});
      ++np;
      --left;
    }
  }
  for (auto& c : cats) {
    for (int p = 0; p < np; ++p) {
      if (std::find(c.eligible.begin(), c.eligible.end(), p) != c.eligible.end()) continue;
      if (rng() % 8 != 0) continue;
      c.eligible.push_back(p);
      if (rng() % 3 == 0) c.beneficiary.push_back(p);
    }
  }
  std::vector<int> perm(np);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::shuffle(cats.begin(), cats.end(), rng);
  Instance inst;
  for (int p = 0; p < np; ++p) inst.patients.push_back("p" + std::to_string(p + 1));
  for (std::size_t i = 0; i < cats.size(); ++i) {
    Category c = std::move(cats[i]);
    c.id = "c" + std::to_string(i + 1);
    for (int& p : c.eligible) p = perm[p];
    for (int& p : c.beneficiary) p = perm[p];
    std::sort(c.eligible.begin(), c.eligible.end());
    std::sort(c.beneficiary.begin(), c.beneficiary.end());
    inst.categories.push_back(std::move(c));
  }
  return inst;
}

namespace {

Instance unit_instance(int patients, std::vector<std::pair<std::vector<int>, std::vector<int>>> sets) {
  Instance inst;
  for (int i = 1; i <= patients; ++i) inst.patients.push_back("p" + std::to_string(i));
  int n = 1;
  for (auto& [eligible, beneficiary] : sets) {
    for (int& p : eligible) --p;
    for (int& p : beneficiary) --p;
    inst.categories.push_back({"c" + std::to_string(n++), 1, eligible, beneficiary});
  }
  return inst;
}

}  // namespace

const std::vector<std::string>& named_instances() {
  static const std::vector<std::string> names = {"conflict", "figure1", "beta-threshold",
                                                 "path-independence"};
  return names;
}

// Patient and category numbers below are 1-based, as in the instance ids.
InstanceDocument gen_named(const std::string& name) {
  InstanceDocument doc;
  if (name == "conflict") {
    doc.instance = unit_instance(2, {{{1}, {}}, {{1, 2}, {1}}});
  } else if (name == "figure1") {
    doc.instance = unit_instance(3, {{{1, 2}, {}}, {{2, 3}, {}}, {{1}, {}}});
  } else if (name == "beta-threshold") {
    doc.instance = unit_instance(2, {{{1}, {1}}, {{2}, {}}});
    doc.beta_star = Rational(7, 10);
  } else if (name == "path-independence") {
    doc.instance = unit_instance(
        6, {{{1, 2}, {1}}, {{2, 3}, {}}, {{3, 5}, {}}, {{6, 4}, {6}}, {{1}, {}}});
    doc.beta_star = Rational(1, 5);
  } else {
    throw InputError("unknown named instance '" + name + "'");
  }
  validate_instance(doc.instance);
  return doc;
}

}  // namespace resfront
