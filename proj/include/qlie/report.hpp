// Job execution and report rendering shared by the command-line front end
// and the test suites.
#pragma once

#include "qlie/treediag.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <iomanip>
#include <limits>
#include <thread>

namespace qlie {

inline constexpr int kReportFormatVersion = 1;

enum class Command { Dims, Group, Verify, Conjecture };

struct JobSpec {
  Command command = Command::Dims;
  std::string name;  // group / check / conjecture name
  unsigned n = 0;
  unsigned k_min = 1, k_max = 1;
  std::string format = "text";
  std::optional<std::string> cache_dir;
  unsigned jobs = 1;
  std::uint64_t limit = 50000;
  bool timings = false;
};

struct CheckEntry {
  std::string name;
  std::string status;  // pass | fail | holds | fails | skipped
  std::string witness;

  friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct Record {
  unsigned n = 0, k = 0;
  std::map<std::string, AbelianStructure> groups;
  std::vector<CheckEntry> checks;
  double seconds = 0;
};

struct Report {
  std::string command;
  std::string name;
  unsigned n = 0;
  std::vector<Record> records;
  bool refused = false;
  std::string refusal;

  /// 0 all pass, 1 any check fails, 3 resource refusal.
  int exit_code() const {
    if (refused) return 3;
    for (const auto& r : records)
      for (const auto& c : r.checks)
        if (c.status == "fail") return 1;
    return 0;
  }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& verify_registry() {
  static const std::vector<std::string> names{"lemma-quasi", "cor-dd", "lemma-root", "thm-tree", "rho-eta", "tau"};
  return names;
}

inline const std::vector<std::string>& conjecture_registry() {
  static const std::vector<std::string> names{"square-mono", "eta-iso"};
  return names;
}

inline const std::vector<std::string>& group_registry() {
  static const std::vector<std::string> names{"L", "Lq", "K", "D", "Dq", "At", "KerEta"};
  return names;
}

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t tree_count(unsigned n, unsigned leaves) {
  std::uint64_t c = catalan(leaves - 1);
  for (unsigned i = 0; i < leaves; ++i) c = saturating_mul(c, n);
  return c;
}

}  // namespace detail

/// Largest free-cover generator count a job at (n, k) touches.
inline std::uint64_t estimate_generators(Command cmd, const std::string& name, unsigned n, unsigned k) {
  using detail::tree_count;
  auto at = [&] { return detail::saturating_mul(tree_count(n, k + 1), n); };
  switch (cmd) {
    case Command::Dims:
      return tree_count(n, k);
    case Command::Group:
      if (name == "L") return 0;
      if (name == "Lq" || name == "K") return tree_count(n, k);
      if (name == "D") return detail::saturating_mul(n, tree_count(n, k + 1));
      if (name == "Dq") return tree_count(n, k + 2);
      return at();
    case Command::Verify:
      if (name == "lemma-quasi") return tree_count(n, k);
      if (name == "rho-eta" || name == "lemma-root") return std::max(at(), tree_count(n, k + 2));
      return std::max(at(), tree_count(n, k + 2));
    case Command::Conjecture:
      if (name == "square-mono") return tree_count(n, k);
      return std::max(at(), tree_count(n, k + 1));
  }
  return 0;
}

inline AbelianStructure named_group(const std::string& name, unsigned n, unsigned k) {
  if (name == "L") return AbelianStructure{static_cast<std::size_t>(witt_dim(n, k).get_ui()), {}};
  if (name == "Lq") return group_structure(lprime_presentation(n, k));
  if (name == "K") return group_structure(kernel_gamma(n, k).group);
  if (name == "D") return d_group(n, k).first;
  if (name == "Dq") return group_structure(dprime_group(n, k).group);
  if (name == "At") return group_structure(at_presentation(n, k));
  if (name == "KerEta") return ker_etaprime(n, k);
  throw UsageError("unknown group '" + name + "'");
}

inline VerificationReport run_verification(const std::string& name, unsigned n, unsigned k) {
  if (name == "lemma-quasi") return lemma_quasi_verify(n, k);
  if (name == "cor-dd") return snake_verify(n, k);
  if (name == "lemma-root") return lemma_root_verify(n, k);
  if (name == "thm-tree") return thm_tree_verify(n, k);
  if (name == "rho-eta") return rho_eta_verify(n, k);
  if (name == "tau") return tau_check(n, k);
  throw UsageError("unknown check '" + name + "'");
}

/// One conjecture verdict at (n, k). For square-mono, k = 2l.
inline Record conjecture_record(const std::string& name, unsigned n, unsigned k) {
  Record r{n, k, {}, {}, 0};
  if (name == "square-mono") {
    PresentedHom sq = square_hom(n, k / 2);
    KernelResult ker = hom_kernel(sq);
    r.groups["L/2L"] = group_structure(sq.source);
    r.groups["K"] = group_structure(kernel_gamma(n, k).group);
    r.groups["ker"] = group_structure(ker.group);
    if (ker.group.size() == 0)
      r.checks.push_back({"square-mono", "holds", ""});
    else
      r.checks.push_back({"square-mono", "fails", "kernel element " + sq.source.format(ker.embedding.column(0))});
  } else if (name == "eta-iso") {
    KernelResult ker = ker_etaprime_presented(n, k);
    r.groups["At"] = group_structure(at_presentation(n, k));
    r.groups["KerEta"] = group_structure(ker.group);
    if (ker.group.size() == 0)
      r.checks.push_back({"eta-iso", "holds", ""});
    else
      r.checks.push_back(
          {"eta-iso", "fails", "kernel element " + at_presentation(n, k).format(ker.embedding.column(0))});
  } else {
    throw UsageError("unknown conjecture '" + name + "'");
  }
  return r;
}

inline void validate(const JobSpec& spec) {
  if (spec.k_min == 0 || spec.k_max < spec.k_min) throw UsageError("degree range must be nonempty and start at >= 1");
  if (spec.jobs == 0) throw UsageError("--jobs must be >= 1");
  if (spec.format != "text" && spec.format != "json" && spec.format != "csv")
    throw UsageError("unknown format '" + spec.format + "'");
  auto known = [](const std::vector<std::string>& reg, const std::string& s) {
    return std::find(reg.begin(), reg.end(), s) != reg.end();
  };
  if (spec.command == Command::Verify && !known(verify_registry(), spec.name))
    throw UsageError("unknown check '" + spec.name + "'");
  if (spec.command == Command::Conjecture && !known(conjecture_registry(), spec.name))
    throw UsageError("unknown conjecture '" + spec.name + "'");
  if (spec.command == Command::Group && !known(group_registry(), spec.name))
    throw UsageError("unknown group '" + spec.name + "'");
}

/// Runs a job. Degrees are processed by up to spec.jobs worker threads; the
/// records come back in degree order whatever the scheduling.
inline Report run_job(const JobSpec& spec) {
  validate(spec);
  Report rep;
  rep.n = spec.n;
  rep.name = spec.name;
  switch (spec.command) {
    case Command::Dims: rep.command = "dims"; break;
    case Command::Group: rep.command = "group"; break;
    case Command::Verify: rep.command = "verify"; break;
    case Command::Conjecture: rep.command = "conjecture"; break;
  }

  std::vector<unsigned> degrees;
  for (unsigned k = spec.k_min; k <= spec.k_max; ++k) {
    if (spec.command == Command::Conjecture && spec.name == "square-mono" && k % 2 == 1) continue;
    degrees.push_back(k);
  }

  if (spec.command == Command::Verify || spec.command == Command::Group) {
    for (unsigned k : degrees) {
      std::uint64_t est = estimate_generators(spec.command, spec.name, spec.n, k);
      if (est > spec.limit) {
        rep.refused = true;
        rep.refusal = "refusing " + rep.command + " " + spec.name + " at n=" + std::to_string(spec.n) +
                      ", k=" + std::to_string(k) + ": estimated " + std::to_string(est) +
                      " generators exceeds limit " + std::to_string(spec.limit);
        return rep;
      }
    }
  }

  std::vector<Record> records(degrees.size());
  std::vector<std::exception_ptr> errors(degrees.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < degrees.size(); i = next++) {
      const unsigned k = degrees[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        Record r{spec.n, k, {}, {}, 0};
        std::uint64_t est = estimate_generators(spec.command, spec.name, spec.n, k);
        if (est > spec.limit) {
          r.checks.push_back({"size", "skipped",
                              "estimated " + std::to_string(est) + " generators exceeds limit " +
                                  std::to_string(spec.limit)});
        } else if (spec.command == Command::Dims) {
          r.groups["L"] = named_group("L", spec.n, k);
          r.groups["Lq"] = named_group("Lq", spec.n, k);
          r.groups["K"] = named_group("K", spec.n, k);
        } else if (spec.command == Command::Group) {
          r.groups[spec.name] = named_group(spec.name, spec.n, k);
        } else if (spec.command == Command::Verify) {
          VerificationReport v = run_verification(spec.name, spec.n, k);
          r.groups = v.groups;
          for (const auto& j : v.joints) r.checks.push_back({j.name, j.passed ? "pass" : "fail", j.witness});
        } else {
          r = conjecture_record(spec.name, spec.n, k);
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records[i] = std::move(r);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::min<unsigned>(spec.jobs, static_cast<unsigned>(degrees.size()));
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  rep.records = std::move(records);
  return rep;
}

// ---- rendering -------------------------------------------------------------

inline nlohmann::json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  return Integer(j.get<std::string>());
}

inline nlohmann::json structure_json(const AbelianStructure& s) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& d : s.torsion) t.push_back(integer_json(d));
  return {{"free_rank", s.free_rank}, {"torsion", t}};
}

inline nlohmann::json records_json(const std::vector<Record>& records, bool timings) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [name, s] : r.groups) groups[name] = structure_json(s);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", c.status}, {"witness", c.witness}});
    nlohmann::json rec{{"n", r.n}, {"k", r.k}, {"groups", groups}, {"checks", checks}};
    if (timings) rec["seconds"] = r.seconds;
    arr.push_back(std::move(rec));
  }
  return arr;
}

inline nlohmann::json report_json(const Report& rep, bool timings = false) {
  nlohmann::json j{{"format_version", kReportFormatVersion},
                   {"command", rep.command},
                   {"name", rep.name},
                   {"n", rep.n},
                   {"records", records_json(rep.records, timings)},
                   {"exit_code", rep.exit_code()}};
  if (rep.refused) j["refusal"] = rep.refusal;
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw FormatError("CSV: unterminated quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline const char* kCsvHeader = "n,k,kind,name,status,free_rank,torsion,witness";

/// One row per group structure and per check, in record order.
inline std::string report_csv(const Report& rep) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rep.records) {
    for (const auto& [name, s] : r.groups) {
      std::string tors;
      for (std::size_t i = 0; i < s.torsion.size(); ++i) tors += (i ? ";" : "") + s.torsion[i].get_str();
      os << r.n << ',' << r.k << ",group," << detail::csv_field(name) << ",," << s.free_rank << ',' << tors << ",\n";
    }
    for (const auto& c : r.checks)
      os << r.n << ',' << r.k << ",check," << detail::csv_field(c.name) << ',' << c.status << ",,,"
         << detail::csv_field(c.witness) << '\n';
  }
  return os.str();
}

inline std::vector<Record> records_from_csv(const std::string& text) {
  auto rows = detail::parse_csv(text);
  if (rows.empty() || rows[0].size() != 8) throw FormatError("CSV: missing header");
  std::vector<Record> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 8) throw FormatError("CSV: row " + std::to_string(i) + " has " + std::to_string(row.size()) + " fields");
    unsigned n = static_cast<unsigned>(std::stoul(row[0]));
    unsigned k = static_cast<unsigned>(std::stoul(row[1]));
    if (out.empty() || out.back().n != n || out.back().k != k) out.push_back(Record{n, k, {}, {}, 0});
    if (row[2] == "group") {
      AbelianStructure s;
      s.free_rank = std::stoul(row[5]);
      std::size_t pos = 0;
      while (pos < row[6].size()) {
        std::size_t end = row[6].find(';', pos);
        if (end == std::string::npos) end = row[6].size();
        s.torsion.emplace_back(row[6].substr(pos, end - pos));
        pos = end + 1;
      }
      out.back().groups[row[3]] = s;
    } else if (row[2] == "check") {
      out.back().checks.push_back({row[3], row[4], row[7]});
    } else {
      throw FormatError("CSV: unknown row kind '" + row[2] + "'");
    }
  }
  return out;
}

inline std::string report_text(const Report& rep, bool timings) {
  std::ostringstream os;
  if (rep.refused) {
    os << rep.refusal << '\n';
    return os.str();
  }
  os << rep.command;
  if (!rep.name.empty()) os << ' ' << rep.name;
  os << "  (n = " << rep.n << ")\n";
  if (rep.command == "dims") {
    os << std::left << std::setw(4) << "k" << std::setw(8) << "dim L" << std::setw(24) << "L'_k" << "K_k\n";
    for (const auto& r : rep.records) {
      os << std::setw(4) << r.k;
      if (r.groups.empty()) {
        os << "skipped: " << (r.checks.empty() ? "" : r.checks[0].witness);
      } else {
        os << std::setw(8) << r.groups.at("L").free_rank << std::setw(24) << r.groups.at("Lq").to_string()
           << r.groups.at("K").to_string();
      }
      if (timings) os << "  [" << std::fixed << std::setprecision(3) << r.seconds << "s]";
      os << '\n';
    }
    return os.str();
  }
  for (const auto& r : rep.records) {
    os << "k = " << r.k;
    if (timings) os << "  [" << std::fixed << std::setprecision(3) << r.seconds << "s]";
    os << '\n';
    for (const auto& [name, s] : r.groups) os << "  " << std::left << std::setw(10) << name << s.to_string() << '\n';
    for (const auto& c : r.checks) {
      os << "  [" << c.status << "] " << c.name;
      if (!c.witness.empty()) os << ": " << c.witness;
      os << '\n';
    }
  }
  return os.str();
}

inline std::string render(const Report& rep, const std::string& format, bool timings) {
  if (format == "json") return report_json(rep, timings).dump(2) + "\n";
  if (format == "csv") return report_csv(rep);
  return report_text(rep, timings);
}

}  // namespace qlie
