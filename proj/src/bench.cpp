#include "solbmc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "toml.hpp"

#include "solbmc/error.hpp"

namespace solbmc {

namespace fs = std::filesystem;

BenchCase load_case(const fs::path& dir) {
  const fs::path manifest = dir / "expect.toml";
  toml::table t;
  try {
    t = toml::parse_file(manifest.string());
  } catch (const toml::parse_error& e) {
    throw Error(ErrorKind::Parse, manifest.string() + ": " + std::string(e.description()));
  }
  auto text = [&](const char* key) {
    auto v = t[key].value<std::string>();
    if (!v) throw Error(ErrorKind::Schema, manifest.string() + ": missing string '" + key + "'");
    return *v;
  };
  BenchCase c;
  c.dir = dir;
  c.id = t["id"].value_or(dir.filename().string());
  c.function = text("function");
  std::string verdict = text("verdict");
  if (verdict == "violated") c.verdict = ExpectedVerdict::Violated;
  else if (verdict == "finding") c.verdict = ExpectedVerdict::Finding;
  else if (verdict == "successful") c.verdict = ExpectedVerdict::Successful;
  else throw Error(ErrorKind::Schema, manifest.string() + ": unknown verdict '" + verdict + "'");
  std::string category = t["category"].value_or(std::string("none"));
  if (category != "none") {
    c.category = parse_claim_category(category);
    if (!c.category) throw Error(ErrorKind::Schema, manifest.string() + ": unknown category '" + category + "'");
  }
  c.expects_counterexample = t["counterexample"].value_or(false);
  return c;
}

std::vector<BenchCase> load_suite(const fs::path& suite_dir) {
  std::vector<BenchCase> cases;
  if (!fs::is_directory(suite_dir)) throw Error(ErrorKind::Io, "not a directory: " + suite_dir.string());
  for (const auto& entry : fs::directory_iterator(suite_dir))
    if (entry.is_directory() && fs::exists(entry.path() / "expect.toml")) cases.push_back(load_case(entry.path()));
  std::sort(cases.begin(), cases.end(), [](const BenchCase& a, const BenchCase& b) { return a.id < b.id; });
  return cases;
}

std::size_t BenchReport::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](auto& c) { return c.passed; }));
}

BenchCaseResult run_case(const BenchCase& bench, const RunConfig& base) {
  const auto start = std::chrono::steady_clock::now();
  BenchCaseResult r;
  r.bench = bench;
  RunConfig cfg = base;
  cfg.ast_path = (bench.dir / "ast.json").string();
  if (fs::exists(bench.dir / "contract.sol")) cfg.source_path = (bench.dir / "contract.sol").string();
  cfg.function = bench.function;
  cfg.replay = true;
  try {
    r.report = run_verification(cfg);
    const VerificationReport& rep = r.report;
    for (const ClaimResult& c : rep.claims)
      if (c.status == ClaimStatus::Violated && !(c.replay_confirmed && *c.replay_confirmed)) r.replay_ok = false;
    switch (bench.verdict) {
      case ExpectedVerdict::Violated:
        for (const ClaimResult& c : rep.claims) {
          if (c.status != ClaimStatus::Violated || c.claim.category != bench.category) continue;
          r.found = true;
          if (c.trace) r.counterexample = true;
        }
        break;
      case ExpectedVerdict::Finding:
        for (const Claim& f : rep.findings) r.found = r.found || f.category == bench.category;
        for (const ClaimResult& c : rep.claims) r.counterexample = r.counterexample || c.trace.has_value();
        break;
      case ExpectedVerdict::Successful:
        r.found = exit_code(rep) == 0;
        break;
    }
    r.passed = r.found && r.replay_ok && r.counterexample == bench.expects_counterexample;
    r.observed = exit_code(rep) == 0 ? "successful" : exit_code(rep) == 1 ? "failed" : "unknown";
  } catch (const Error& e) {
    r.observed = std::string(to_string(e.kind())) + ": " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BenchReport run_benchmarks(const fs::path& suite_dir, const RunConfig& base, unsigned parallel) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<BenchCase> cases = load_suite(suite_dir);
  BenchReport report;
  report.cases.resize(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) report.cases[i] = run_case(cases[i], base);
  };
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < std::max(1u, parallel); ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string category_text(const BenchCase& c) {
  return c.category ? std::string(to_string(*c.category)) : "none";
}

}  // namespace

std::string render_table(const BenchReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Case" << std::setw(16) << "Category" << std::setw(7) << "Found"
      << std::setw(6) << "CE" << std::setw(8) << "Replay" << std::setw(10) << "Time(s)" << "Result\n";
  for (const BenchCaseResult& r : report.cases) {
    std::string ce = r.bench.expects_counterexample || r.counterexample ? (r.counterexample ? "Yes" : "No") : "N/A";
    std::ostringstream time;
    time << std::fixed << std::setprecision(3) << r.seconds;
    out << std::setw(12) << r.bench.id << std::setw(16) << category_text(r.bench) << std::setw(7)
        << (r.found ? "Yes" : "No") << std::setw(6) << ce << std::setw(8) << (r.replay_ok ? "ok" : "FAIL")
        << std::setw(10) << time.str() << (r.passed ? "pass" : "FAIL (" + r.observed + ")") << "\n";
  }
  std::ostringstream total;
  total << std::fixed << std::setprecision(3) << report.seconds;
  out << "Total time " << total.str() << " s; " << report.passed() << "/" << report.cases.size()
      << " cases as expected\n";
  return out.str();
}

std::string render_json(const BenchReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const BenchCaseResult& r : report.cases) {
    cases.push_back({{"id", r.bench.id},
                     {"function", r.bench.function},
                     {"category", category_text(r.bench)},
                     {"found", r.found},
                     {"counterexample", r.counterexample},
                     {"expects_counterexample", r.bench.expects_counterexample},
                     {"replay_ok", r.replay_ok},
                     {"passed", r.passed},
                     {"observed", r.observed},
                     {"seconds", r.seconds}});
  }
  nlohmann::json j = {{"cases", cases},
                      {"passed", report.passed()},
                      {"total", report.cases.size()},
                      {"seconds", report.seconds}};
  return j.dump(2) + "\n";
}

}  // namespace solbmc
