#include "solbmc/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "solbmc/error.hpp"

namespace solbmc {

namespace {

bool shown_in_trace(const Symbol* s) {
  if (!s) return false;
  if (s->kind != SymbolKind::Internal) return s->kind != SymbolKind::Function && s->kind != SymbolKind::Intrinsic;
  return s->unique_id.rfind("env:", 0) == 0 || s->unique_id.rfind("nondet!", 0) == 0;
}

}  // namespace

Trace build_counterexample(const std::map<std::string, BigUint>& model, const SsaProgram& ssa, const Vc& vc,
                           const GotoProgram& program) {
  if (vc.instances.empty())
    throw Error(ErrorKind::ReplayMismatch, "claim " + std::to_string(vc.claim) + " has no reachable instance");
  std::map<std::string, Value> env;
  auto lookup = [&](const IrExpr& s) -> Value {
    std::string name = s.symbol + "#" + std::to_string(s.version);
    if (auto it = env.find(name); it != env.end()) return it->second;
    if (auto it = model.find(name); it != model.end()) return Value{truncate(it->second, s.type.width), {}};
    return Value{};
  };
  auto holds = [&](const IrExpr& e) { return evaluate(e, lookup).bits != 0; };

  Trace trace;
  trace.claim = vc.claim;
  for (const NondetInput& n : ssa.nondets) {
    auto it = model.find(n.symbol.name());
    trace.nondets[{n.pc, n.ordinal}] = it == model.end() ? BigUint(0) : truncate(it->second, n.type.width);
  }

  const std::size_t first = vc.instances.front();
  std::optional<std::size_t> violated;
  bool later_assumptions_hold = true;
  std::size_t next_instance = 0;
  for (std::size_t i = 0; i <= vc.instances.back() && !violated; ++i) {
    const SsaEquation& eq = ssa.equations[i];
    switch (eq.kind) {
      case EquationKind::Assignment: {
        Value v = evaluate(eq.rhs, lookup);
        std::string name = eq.lhs.name();
        if (!eq.type.is_array())
          if (auto it = model.find(name); it != model.end() && truncate(it->second, eq.type.width) != v.bits)
            throw Error(ErrorKind::ReplayMismatch, "model value of " + name + " disagrees with its definition",
                        eq.source);
        env[name] = v;
        break;
      }
      case EquationKind::Assumption:
        if (i < first) {
          if (!holds(eq.rhs)) throw Error(ErrorKind::ReplayMismatch, "model violates an assumption", eq.source);
        } else if (!holds(eq.rhs)) {
          later_assumptions_hold = false;
        }
        break;
      case EquationKind::Property:
        if (next_instance < vc.instances.size() && vc.instances[next_instance] == i) {
          ++next_instance;
          if (later_assumptions_hold && holds(eq.guard) && !holds(eq.predicate)) violated = i;
        }
        break;
    }
  }
  if (!violated) throw Error(ErrorKind::ReplayMismatch, "model does not violate claim " + std::to_string(vc.claim));

  int number = 0;
  for (std::size_t i = 0; i < *violated; ++i) {
    const SsaEquation& eq = ssa.equations[i];
    if (eq.kind != EquationKind::Assignment || eq.hidden || !holds(eq.guard)) continue;
    const Symbol* sym = program.symbols.find(eq.lhs.base);
    if (!shown_in_trace(sym)) continue;
    TraceStep step;
    step.number = ++number;
    step.kind = StepKind::Assignment;
    step.location = eq.source;
    step.pc = eq.pc;
    step.symbol = eq.lhs.base;
    step.name = sym->display_name.empty() ? sym->unique_id : sym->display_name;
    if (eq.rhs.kind == ExprKind::Store && eq.type.is_array()) {
      BigUint idx = evaluate(eq.rhs.operands[1], lookup).bits;
      step.name += "[" + idx.str() + "]";
      step.type = eq.type.element();
      step.value = evaluate(eq.rhs.operands[2], lookup);
    } else {
      step.type = eq.type;
      step.value = env.at(eq.lhs.name());
    }
    trace.steps.push_back(std::move(step));
  }
  const SsaEquation& prop = ssa.equations[*violated];
  TraceStep last;
  last.number = ++number;
  last.kind = StepKind::ViolatedProperty;
  last.location = prop.source;
  last.pc = prop.pc;
  if (const Claim* c = program.find_claim(vc.claim)) last.claim = *c;
  trace.steps.push_back(std::move(last));
  trace.violation_pc = prop.pc;
  return trace;
}

ReplayResult replay_trace(const Trace& trace, const GotoProgram& program) {
  ExecutionResult run = interpret(program, trace.nondets);
  ReplayResult r;
  r.failed_claims = run.failed_claims;
  r.blocked = run.blocked;
  for (std::size_t k = 0; k < run.failed_claims.size(); ++k)
    if (run.failed_claims[k] == trace.claim && run.failed_pcs[k] == trace.violation_pc) r.confirmed = true;
  return r;
}

std::size_t VerificationReport::count(ClaimStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(claims.begin(), claims.end(), [&](const ClaimResult& c) { return c.status == status; }));
}

int exit_code(const VerificationReport& report) {
  if (report.count(ClaimStatus::Violated) > 0 || !report.findings.empty()) return 1;
  if (report.count(ClaimStatus::Unknown) > 0) return 3;
  return 0;
}

namespace {

std::string_view status_text(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Holds: return "holds";
    case ClaimStatus::Violated: return "violated";
    case ClaimStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string verdict_line(const VerificationReport& report) {
  switch (exit_code(report)) {
    case 0: return "VERIFICATION SUCCESSFUL";
    case 1: return "VERIFICATION FAILED";
    default: return "VERIFICATION UNKNOWN";
  }
}

std::string claim_heading(const Claim& c, const LocationText& where) {
  return "claim " + std::to_string(c.id) + " [" + std::string(to_string(c.category)) + "] " +
         where(c.location) + ": " + c.description;
}

std::string render_human(const VerificationReport& report, const LocationText& where) {
  std::ostringstream out;
  for (const ClaimResult& r : report.claims) {
    if (r.status == ClaimStatus::Holds) continue;
    if (r.status == ClaimStatus::Unknown) {
      out << "Unknown " << claim_heading(r.claim, where) << " (" << r.reason << ")\n\n";
      continue;
    }
    out << "Counterexample for " << claim_heading(r.claim, where) << "\n";
    if (r.trace) {
      for (const TraceStep& s : r.trace->steps) {
        if (s.kind == StepKind::Assignment) {
          out << "State " << s.number << " " << where(s.location) << "  " << s.name << " = "
              << format_value(s.value, s.type) << " (" << to_string(s.type) << ")\n";
        } else {
          out << "Violated property:\n  " << where(s.location) << " " << s.claim.description << " ["
              << to_string(s.claim.category) << "]\n";
        }
      }
    }
    if (r.replay_confirmed) out << "Replay: " << (*r.replay_confirmed ? "confirmed" : "NOT confirmed") << "\n";
    out << "\n";
  }
  for (const Claim& f : report.findings)
    out << "Finding [" << to_string(f.category) << "] " << where(f.location) << ": " << f.description << "\n";
  if (!report.findings.empty()) out << "\n";
  out << report.claims.size() << " claims: " << report.count(ClaimStatus::Violated) << " violated, "
      << report.count(ClaimStatus::Holds) << " hold, " << report.count(ClaimStatus::Unknown) << " unknown; "
      << report.findings.size() << " findings\n";
  out << verdict_line(report) << "\n";
  return out.str();
}

std::string render_json(const VerificationReport& report, const LocationText& where) {
  std::ostringstream out;
  for (const ClaimResult& r : report.claims) {
    nlohmann::json j;
    j["claim"] = r.claim.id;
    j["category"] = to_string(r.claim.category);
    j["description"] = r.claim.description;
    j["location"] = where(r.claim.location);
    j["status"] = status_text(r.status);
    j["seconds"] = r.seconds;
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.replay_confirmed) j["replay_confirmed"] = *r.replay_confirmed;
    if (r.trace) {
      nlohmann::json steps = nlohmann::json::array();
      for (const TraceStep& s : r.trace->steps) {
        nlohmann::json step;
        step["step"] = s.number;
        step["location"] = where(s.location);
        if (s.kind == StepKind::Assignment) {
          step["name"] = s.name;
          step["value"] = format_value(s.value, s.type);
          step["type"] = to_string(s.type);
        } else {
          step["violated"] = s.claim.description;
        }
        steps.push_back(std::move(step));
      }
      j["trace"] = std::move(steps);
    }
    out << j.dump() << "\n";
  }
  for (const Claim& f : report.findings) {
    nlohmann::json j;
    j["claim"] = f.id;
    j["category"] = to_string(f.category);
    j["description"] = f.description;
    j["location"] = where(f.location);
    j["status"] = "finding";
    out << j.dump() << "\n";
  }
  nlohmann::json summary;
  summary["file"] = report.file;
  summary["function"] = report.function;
  summary["claims"] = report.claims.size();
  summary["violated"] = report.count(ClaimStatus::Violated);
  summary["holds"] = report.count(ClaimStatus::Holds);
  summary["unknown"] = report.count(ClaimStatus::Unknown);
  summary["findings"] = report.findings.size();
  summary["seconds"] = report.seconds;
  summary["verdict"] = verdict_line(report);
  out << nlohmann::json{{"summary", summary}}.dump() << "\n";
  return out.str();
}

}  // namespace

std::string render(const VerificationReport& report, OutputFormat format, const LocationText& where) {
  return format == OutputFormat::Json ? render_json(report, where) : render_human(report, where);
}

}  // namespace solbmc
