// qlie: tables, verification suites and conjecture scans for free Lie and
// quasi-Lie rings and tree diagram groups.
#include "qlie/cache.hpp"
#include "qlie/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Options {
  std::optional<unsigned> n, genus, k, kmax;
  std::string name;
  std::string format = "text";
  std::optional<std::string> cache;
  unsigned jobs = 1;
  std::uint64_t limit = 50000;
  bool timings = false;
};

void add_common(CLI::App* cmd, Options& o, bool single_degree) {
  cmd->add_option("--n", o.n, "rank of H");
  cmd->add_option("--genus", o.genus, "surface genus g; sets n = 2g");
  if (single_degree)
    cmd->add_option("--k", o.k, "degree")->required();
  else
    cmd->add_option("--kmax", o.kmax, "largest degree")->required();
  cmd->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--cache", o.cache, "presentation cache directory");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--limit", o.limit, "largest generator count to attempt");
  cmd->add_flag("--timings", o.timings, "include per-degree timings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free Lie rings, quasi-Lie rings and tree diagram groups"};
  app.require_subcommand(1);
  Options o;

  auto* dims = app.add_subcommand("dims", "dim L_k, L'_k and K_k for k = 1..kmax");
  add_common(dims, o, false);

  auto* group = app.add_subcommand("group", "structure of one group");
  group->add_option("name", o.name, "L, Lq, K, D, Dq, At or KerEta")
      ->required()
      ->check(CLI::IsMember(qlie::group_registry()));
  add_common(group, o, true);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("name", o.name, "suite name")->required()->check(CLI::IsMember(qlie::verify_registry()));
  add_common(verify, o, true);

  auto* conj = app.add_subcommand("conjecture", "informational conjecture scan");
  conj->add_option("name", o.name, "conjecture name")->required()->check(CLI::IsMember(qlie::conjecture_registry()));
  add_common(conj, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qlie::JobSpec spec;
  if (o.n)
    spec.n = *o.n;
  else if (o.genus)
    spec.n = 2 * *o.genus;
  else {
    std::cerr << "error: one of --n or --genus is required\n";
    return 2;
  }
  if (*app.get_subcommands().begin() == dims)
    spec.command = qlie::Command::Dims;
  else if (*app.get_subcommands().begin() == group)
    spec.command = qlie::Command::Group;
  else if (*app.get_subcommands().begin() == verify)
    spec.command = qlie::Command::Verify;
  else
    spec.command = qlie::Command::Conjecture;
  spec.name = o.name;
  spec.k_min = o.k ? *o.k : 1;
  spec.k_max = o.k ? *o.k : *o.kmax;
  spec.format = o.format;
  spec.cache_dir = o.cache;
  spec.jobs = o.jobs;
  spec.limit = o.limit;
  spec.timings = o.timings;

  if (spec.cache_dir) {
    auto store = std::make_shared<qlie::DiskStore>(*spec.cache_dir);
    if (store->enabled())
      qlie::set_presentation_store(store);
    else
      std::cerr << "warning: " << store->warning() << '\n';
  }

  try {
    qlie::Report rep = qlie::run_job(spec);
    std::cout << qlie::render(rep, spec.format, spec.timings);
    if (rep.refused && spec.format != "text") std::cerr << rep.refusal << '\n';
    return rep.exit_code();
  } catch (const qlie::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
