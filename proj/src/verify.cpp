#include "solbmc/verify.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "solbmc/error.hpp"
#include "solbmc/frontend.hpp"

namespace solbmc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PreparedRun prepare(AstRoot root, const RunConfig& config) {
  if (config.function.empty()) throw Error(ErrorKind::Usage, "no entry function given");
  PreparedRun run;
  ConvertedProgram converted = build_symbol_table(root, config.function);
  GotoProgram p = lower(converted);
  if (config.overflow_check) p = instrument_overflow(std::move(p), config.div_check);
  else if (config.div_check) p = instrument_div_by_zero(std::move(p));
  if (config.bounds_check) p = instrument_bounds(std::move(p));
  p = unwind(std::move(p), config.unwind, config.unwinding_assertions);
  run.ssa = execute(p, SymexOptions{config.constant_propagation});
  if (config.tx_origin_check) {
    int next = 1;
    for (const Claim& c : p.claims) next = std::max(next, c.id + 1);
    for (Claim c : detect_tx_origin(root)) {
      c.id = next++;
      run.findings.push_back(std::move(c));
    }
  }
  run.program = std::move(p);
  run.root = std::move(root);
  return run;
}

PreparedRun prepare(const RunConfig& config) {
  return prepare(load_ast_file(config.ast_path, config.source_path), config);
}

VerificationReport verify(const PreparedRun& run, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.file = run.root.file_name;
  report.function = config.function;
  report.findings = run.findings;
  for (const Claim& c : run.program.claims) {
    ClaimResult r;
    r.claim = c;
    report.claims.push_back(std::move(r));
  }
  if (config.smt2_dir) std::filesystem::create_directories(*config.smt2_dir);

  auto solve_one = [&](ClaimResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    Vc vc = generate_vc(run.ssa, r.claim.id);
    SmtScript script = encode(run.ssa, vc);
    if (config.smt2_dir) {
      std::ofstream f(std::filesystem::path(*config.smt2_dir) / ("claim" + std::to_string(r.claim.id) + ".smt2"));
      f << script.text;
    }
    if (vc.property.is_true()) {
      r.status = ClaimStatus::Holds;
      r.seconds = seconds_since(t0);
      return;
    }
    SolverVerdict verdict = solve(script, config.solver);
    if (verdict.kind == VerdictKind::Unsat) {
      r.status = ClaimStatus::Holds;
    } else if (verdict.kind == VerdictKind::Unknown) {
      r.status = ClaimStatus::Unknown;
      r.reason = verdict.reason;
    } else {
      r.status = ClaimStatus::Violated;
      r.trace = build_counterexample(verdict.model, run.ssa, vc, run.program);
      if (config.replay) r.replay_confirmed = replay_trace(*r.trace, run.program).confirmed;
    }
    r.seconds = seconds_since(t0);
  };

  const unsigned jobs = config.stop_on_fail ? 1 : std::max(1u, config.jobs);
  if (jobs == 1) {
    for (ClaimResult& r : report.claims) {
      solve_one(r);
      if (config.stop_on_fail && r.status == ClaimStatus::Violated) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (std::size_t i = next++; i < report.claims.size(); i = next++) {
        try {
          solve_one(report.claims[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }
  if (config.stop_on_fail) {
    auto it = std::find_if(report.claims.begin(), report.claims.end(),
                           [](const ClaimResult& r) { return r.status == ClaimStatus::Violated; });
    if (it != report.claims.end()) report.claims.erase(it + 1, report.claims.end());
  }
  report.seconds = seconds_since(start);
  return report;
}

VerificationReport run_verification(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  PreparedRun run = prepare(config);
  VerificationReport report = verify(run, config);
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace solbmc
