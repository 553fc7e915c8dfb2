#include "qlie/cache.hpp"
#include "qlie/report.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace qlie;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(QLIE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("qlie_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

JobSpec spec(Command c, const std::string& name, unsigned n, unsigned k0, unsigned k1, unsigned jobs = 1) {
  JobSpec s;
  s.command = c;
  s.name = name;
  s.n = n;
  s.k_min = k0;
  s.k_max = k1;
  s.jobs = jobs;
  return s;
}

}  // namespace

TEST(Report, DimsRows) {
  Report r = run_job(spec(Command::Dims, "", 2, 1, 4));
  ASSERT_EQ(r.records.size(), 4u);
  std::vector<std::size_t> dims;
  for (const auto& rec : r.records) dims.push_back(rec.groups.at("L").free_rank);
  EXPECT_EQ(dims, (std::vector<std::size_t>{2, 1, 2, 3}));
  Report r1 = run_job(spec(Command::Dims, "", 1, 1, 2));
  EXPECT_EQ(r1.records[1].groups.at("Lq"), (AbelianStructure{0, {2}}));
  Report r0 = run_job(spec(Command::Dims, "", 0, 1, 3));
  for (const auto& rec : r0.records)
    for (const auto& [name, g] : rec.groups) EXPECT_TRUE(g.trivial()) << name;
}

TEST(Report, SizeGuard) {
  JobSpec s = spec(Command::Dims, "", 2, 1, 6);
  s.limit = 100;
  Report r = run_job(s);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_TRUE(r.records[0].checks.empty());
  ASSERT_EQ(r.records[5].checks.size(), 1u);
  EXPECT_EQ(r.records[5].checks[0].status, "skipped");
  JobSpec v = spec(Command::Verify, "thm-tree", 3, 6, 6);
  Report rv = run_job(v);
  EXPECT_TRUE(rv.refused);
  EXPECT_EQ(rv.exit_code(), 3);
}

TEST(Report, UsageErrors) {
  EXPECT_THROW(run_job(spec(Command::Verify, "nope", 2, 1, 1)), UsageError);
  EXPECT_THROW(run_job(spec(Command::Dims, "", 2, 0, 1)), UsageError);
  EXPECT_THROW(run_job(spec(Command::Dims, "", 2, 3, 2)), UsageError);
}

TEST(Report, VerifyExamples) {
  EXPECT_EQ(run_job(spec(Command::Verify, "rho-eta", 2, 3, 3)).exit_code(), 0);
  Report lq = run_job(spec(Command::Verify, "lemma-quasi", 2, 5, 5));
  EXPECT_EQ(lq.exit_code(), 0);
  EXPECT_TRUE(lq.records[0].groups.at("K").trivial());
  Report cd = run_job(spec(Command::Verify, "cor-dd", 2, 2, 2));
  EXPECT_EQ(cd.exit_code(), 0);
  for (const auto& c : cd.records[0].checks) EXPECT_EQ(c.status, "pass");
}

TEST(Report, ConjectureExamples) {
  Report sq = run_job(spec(Command::Conjecture, "square-mono", 2, 1, 2));
  ASSERT_EQ(sq.records.size(), 1u);
  EXPECT_EQ(sq.records[0].checks[0].status, "holds");
  Report ei = run_job(spec(Command::Conjecture, "eta-iso", 1, 1, 1));
  EXPECT_EQ(ei.records[0].checks[0].status, "holds");
  Report scan = run_job(spec(Command::Conjecture, "eta-iso", 2, 1, 4));
  EXPECT_EQ(scan.records.size(), 4u);
  EXPECT_EQ(scan.exit_code(), 0);
  for (const auto& rec : scan.records) {
    ASSERT_EQ(rec.checks.size(), 1u);
    if (rec.checks[0].status == "fails") {
      EXPECT_FALSE(rec.checks[0].witness.empty());
    }
  }
}

TEST(Report, ParallelDeterminism) {
  for (auto c : {spec(Command::Dims, "", 2, 1, 6), spec(Command::Conjecture, "eta-iso", 2, 1, 3)}) {
    JobSpec a = c, b = c;
    b.jobs = 8;
    EXPECT_EQ(report_json(run_job(a)).dump(2), report_json(run_job(b)).dump(2));
  }
}

TEST(Report, CsvRoundTrip) {
  Report r = run_job(spec(Command::Verify, "thm-tree", 2, 2, 2));
  r.records[0].checks.push_back({"odd, \"quoted\"", "fail", "line1\nline2, x"});
  r.records[0].groups["big"] = AbelianStructure{1, {Integer("2"), Integer("100000000000000000000000")}};
  Report back = r;
  back.records = records_from_csv(report_csv(r));
  EXPECT_EQ(report_json(back).dump(), report_json(r).dump());
  EXPECT_EQ(report_csv(r).substr(0, report_csv(r).find('\n')), "n,k,kind,name,status,free_rank,torsion,witness");
}

TEST(Cache, ColdWarmCorruptAndVersion) {
  fs::path dir = fresh_dir("store");
  Presentation p({"a", "b", "c"}, Matrix::from_rows({{2, 0}, {0, 3}, {0, 0}}));
  {
    DiskStore s(dir);
    ASSERT_TRUE(s.enabled());
    EXPECT_FALSE(s.load("x"));
    s.save("x", p);
    auto q = s.load("x");
    ASSERT_TRUE(q);
    EXPECT_TRUE(q->same_as(p));
    EXPECT_EQ(group_structure(*q), (AbelianStructure{1, {6}}));
    // corrupt the body; the digest no longer matches
    {
      std::ofstream f(s.data_path("x"), std::ios::app);
      f << "9 9 9\n";
    }
    EXPECT_FALSE(s.load("x"));
    s.save("x", p);
    EXPECT_TRUE(s.load("x"));
    // garbage with a matching digest is still rejected
    {
      std::ofstream f(s.data_path("y"));
      f << "ZPRES 1\n2\nb\na\n";
    }
    {
      std::ofstream f(s.digest_path("y"));
      f << sha256_hex("ZPRES 1\n2\nb\na\n") << "\n";
    }
    EXPECT_FALSE(s.load("y"));
  }
  DiskStore v2(dir, kCacheFormatVersion + 1);
  EXPECT_FALSE(v2.load("x"));
  fs::remove_all(dir);
}

TEST(Cache, UnwritableDirectoryDisablesStore) {
  fs::path dir = fresh_dir("file");
  { std::ofstream f(dir); f << "not a directory"; }
  DiskStore s(dir / "sub");
  EXPECT_FALSE(s.enabled());
  EXPECT_FALSE(s.warning().empty());
  fs::remove(dir);
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify rho-eta --n 2 --k 3").status, 0);
  EXPECT_EQ(run_cli("verify no-such --n 2 --k 3").status, 2);
  EXPECT_EQ(run_cli("verify rho-eta --k 3").status, 2);
  EXPECT_EQ(run_cli("dims --n 2").status, 2);
  EXPECT_EQ(run_cli("verify thm-tree --n 3 --k 8").status, 3);
  EXPECT_EQ(run_cli("conjecture eta-iso --n 2 --kmax 2").status, 0);
}

TEST(Cli, GenusSetsRank) {
  CliRun a = run_cli("dims --genus 1 --kmax 3 --format json");
  CliRun b = run_cli("dims --n 2 --kmax 3 --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  CliRun c = run_cli("dims --genus 1 --n 1 --kmax 3 --format json");
  EXPECT_EQ(nlohmann::json::parse(c.out)["n"], 1);
}

TEST(Cli, CacheColdWarmIdentical) {
  fs::path dir = fresh_dir("cli");
  std::string args = "verify thm-tree --n 2 --k 3 --format json --cache " + dir.string();
  CliRun cold = run_cli(args);
  CliRun warm = run_cli(args);
  CliRun none = run_cli("verify thm-tree --n 2 --k 3 --format json");
  EXPECT_EQ(cold.status, 0);
  EXPECT_EQ(cold.out, warm.out);
  EXPECT_EQ(cold.out, none.out);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".zpres") {
      std::ofstream f(e.path(), std::ios::trunc);
      f << "ZPRES 1\n0\nZMAT 1 0 0 0\n";
    }
  CliRun repaired = run_cli(args);
  EXPECT_EQ(repaired.out, cold.out);
  CliRun again = run_cli(args);
  EXPECT_EQ(again.out, cold.out);
  fs::remove_all(dir);
}

TEST(Cli, FormatsAgree) {
  CliRun j = run_cli("verify cor-dd --n 2 --k 2 --format json");
  CliRun c = run_cli("verify cor-dd --n 2 --k 2 --format csv");
  Report rep;
  auto parsed = nlohmann::json::parse(j.out);
  rep.command = parsed["command"];
  rep.name = parsed["name"];
  rep.n = parsed["n"];
  rep.records = records_from_csv(c.out);
  EXPECT_EQ(report_json(rep), parsed);
}
