// Acceptance suite: one PASS/FAIL line per criterion.
#include "qlie/report.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sys/wait.h>

using namespace qlie;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string at(unsigned n, unsigned k) { return "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")"; }

Outcome smith_suite() {
  Outcome o;
  std::mt19937 rng(2024);
  for (int t = 0; t < 200 && o.ok; ++t) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    Matrix m = testing_support::random_matrix(rng, r, c, -9, 9, t % 2 ? 1.0 : 0.5);
    std::string d = testing_support::smith_defect(m, snf(m));
    o.require(d.empty(), "matrix " + std::to_string(t) + ": " + d);
  }
  return o;
}

std::size_t brute_lyndon(unsigned n, unsigned k) {
  std::size_t count = 0;
  std::vector<int> w(k, 1);
  while (true) {
    bool ok = true;
    for (unsigned r = 1; r < k && ok; ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      ok = w < rot;
    }
    count += ok;
    std::size_t i = k;
    while (i > 0 && w[i - 1] == static_cast<int>(n)) w[--i] = 1;
    if (i == 0) return count;
    ++w[i - 1];
  }
}

Outcome witt_oracle() {
  Outcome o;
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 8; ++k) {
      std::size_t b = brute_lyndon(n, k);
      o.require(witt_dim(n, k) == b && lyndon_words(n, k).size() == b, "mismatch at " + at(n, k));
    }
  const unsigned expected[] = {2, 1, 2, 3, 6, 9};
  for (unsigned k = 1; k <= 6; ++k) o.require(witt_dim(2, k) == expected[k - 1], "dim L_k(2) at k=" + std::to_string(k));
  return o;
}

void require_joints(Outcome& o, const VerificationReport& r) {
  for (const auto& j : r.joints) o.require(j.passed, r.check + " " + at(r.n, r.k) + " " + j.name + ": " + j.witness);
}

Outcome lemma_quasi() {
  Outcome o;
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned k = 1; k <= 5; ++k) {
      VerificationReport r = lemma_quasi_verify(n, k);
      require_joints(o, r);
      const AbelianStructure& K = r.groups.at("K");
      if (k % 2 == 1) {
        o.require(K.trivial(), "K nonzero at " + at(n, k));
      } else {
        o.require(check_exact(square_hom(n, k / 2), gamma_hom(n, k)), "image of squaring != K at " + at(n, k));
        bool two = K.free_rank == 0;
        for (const auto& d : K.torsion) two = two && d == 2;
        o.require(two, "K not killed by 2 at " + at(n, k));
      }
    }
  o.require(group_structure(kernel_gamma(2, 2).group) == AbelianStructure{0, {2, 2}}, "K_2(n=2) != (Z/2)^2");
  return o;
}

Outcome snake() {
  Outcome o;
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned k = 1; k <= 4; ++k) require_joints(o, snake_verify(n, k));
  return o;
}

Outcome tree_maps() {
  Outcome o;
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned k = 1; k <= 4; ++k) {
      require_joints(o, lemma_root_verify(n, k));
      require_joints(o, rho_eta_verify(n, k));
      require_joints(o, thm_tree_verify(n, k));
      require_joints(o, tau_check(n, k));
      AbelianStructure ker = ker_etaprime(n, k);
      for (const auto& d : ker.torsion) {
        o.require((k + 2) % d == 0, "invariant factor of ker eta' does not divide k+2 at " + at(n, k));
        if (k % 2 == 1) o.require(d % 2 == 1, "even invariant factor at odd " + at(n, k));
      }
      if (k % 2 == 0)
        o.require(ker.torsion_order() == group_structure(at_presentation(n, k)).torsion_order(),
                  "torsion orders differ at " + at(n, k));
    }
  return o;
}

Outcome rational_ranks() {
  Outcome o;
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned k = 1; k <= 4; ++k) {
      std::size_t a = group_structure(at_presentation(n, k)).free_rank;
      std::size_t dq = group_structure(dprime_group(n, k).group).free_rank;
      std::size_t d = d_group(n, k).first.free_rank;
      o.require(a == dq && dq == d, "ranks " + std::to_string(a) + "," + std::to_string(dq) + "," +
                                        std::to_string(d) + " at " + at(n, k));
    }
  return o;
}

Outcome conjecture_scans() {
  Outcome o;
  std::size_t verdicts = 0;
  for (const auto& name : conjecture_registry())
    for (unsigned n = 1; n <= 2; ++n) {
      JobSpec s;
      s.command = Command::Conjecture;
      s.name = name;
      s.n = n;
      s.k_min = 1;
      s.k_max = 4;
      Report r = run_job(s);
      o.require(r.exit_code() == 0, name + " scan exit code");
      for (const auto& rec : r.records) {
        o.require(rec.checks.size() == 1, name + " record without a single verdict");
        for (const auto& c : rec.checks) {
          ++verdicts;
          if (c.status == "fails") o.require(!c.witness.empty(), name + " failure without witness at " + at(n, rec.k));
          o.require(c.status == "holds" || c.status == "fails" || c.status == "skipped", "bad verdict " + c.status);
        }
      }
    }
  o.detail = o.ok ? std::to_string(verdicts) + " verdicts" : o.detail;
  return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(QLIE_CLI_PATH) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Outcome determinism() {
  Outcome o;
  for (const std::string job : {"dims --n 2 --kmax 6", "conjecture eta-iso --n 2 --kmax 4",
                                "conjecture square-mono --n 2 --kmax 4", "group At --n 2 --k 3"}) {
    auto a = run_cli(job + " --format json --jobs 1");
    auto b = run_cli(job + " --format json --jobs 8");
    o.require(a.first == 0 && b.first == 0, job + ": nonzero exit");
    o.require(!a.second.empty() && a.second == b.second, job + ": reports differ");
  }
  return o;
}

Outcome oracle_match() {
  using testing_support::show;
  using testing_support::to_oracle;
  Outcome o;
  auto cmp = [&](const char* what, unsigned n, unsigned k, const AbelianStructure& mine, const oracle::Group& ref) {
    o.require(to_oracle(mine) == ref,
              std::string(what) + " at " + at(n, k) + ": " + mine.to_string() + " vs oracle " + show(ref));
  };
  for (auto [n, kmax] : {std::pair{1u, 3u}, {2u, 2u}})
    for (unsigned k = 1; k <= kmax; ++k) {
      cmp("L'", n, k, group_structure(lprime_presentation(n, k)), oracle::structure(oracle::lprime(n, k)));
      cmp("K", n, k, group_structure(kernel_gamma(n, k).group), oracle::k_group(n, k));
      cmp("At", n, k, group_structure(at_presentation(n, k)), oracle::structure(oracle::at_tree(n, k)));
      cmp("D", n, k, d_group(n, k).first, oracle::d_group(n, k));
      cmp("D'", n, k, group_structure(dprime_group(n, k).group), oracle::dprime_group(n, k));
      cmp("ker eta'", n, k, ker_etaprime(n, k), oracle::ker_etaprime(n, k));
    }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Smith normal form on 200 random matrices", smith_suite},
      {"2 Witt dimensions against Lyndon enumeration", witt_oracle},
      {"3 kernel of L' -> L in odd and even degree", lemma_quasi},
      {"4 exact sequences relating D', D and K", snake},
      {"5 tree map eta' onto ker beta', rho o eta' and ker eta'", tree_maps},
      {"6 rational ranks of At, D' and D agree", rational_ranks},
      {"7 conjecture scans complete with verdicts", conjecture_scans},
      {"8 reports identical for --jobs 1 and --jobs 8", determinism},
      {"9 small cases agree with brute-force oracle", oracle_match},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
