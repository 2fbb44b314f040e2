#include "solbmc/symex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "solbmc/error.hpp"
#include "solbmc/eval.hpp"

namespace solbmc {

namespace {

bool is_const(const IrExpr& e) { return e.kind == ExprKind::Constant && !e.type.is_array(); }

bool is_zero_array(const IrExpr& e) { return e.kind == ExprKind::Constant && e.type.is_array(); }

bool is_value(const IrExpr& e, unsigned v) { return is_const(e) && e.value == v; }

bool negates(const IrExpr& a, const IrExpr& b) {
  return (a.kind == ExprKind::Unary && a.unary_op == UnaryOp::Not && a.operands[0] == b) ||
         (b.kind == ExprKind::Unary && b.unary_op == UnaryOp::Not && b.operands[0] == a);
}

IrExpr with_span(IrExpr e, const SourceSpan& span) {
  e.span = span;
  return e;
}

IrExpr simplify_node(IrExpr e) {
  switch (e.kind) {
    case ExprKind::Unary: {
      const IrExpr& a = e.operands[0];
      if (is_const(a)) return with_span(constant(e.type, apply_unary(e.unary_op, e.type, a.value)), e.span);
      if (e.unary_op == UnaryOp::Not && a.kind == ExprKind::Unary && a.unary_op == UnaryOp::Not)
        return a.operands[0];
      return e;
    }
    case ExprKind::Binary: {
      const IrExpr& a = e.operands[0];
      const IrExpr& b = e.operands[1];
      if (is_const(a) && is_const(b))
        return with_span(constant(e.type, apply_binary(e.binary_op, a.type, a.value, b.value)), e.span);
      switch (e.binary_op) {
        case BinaryOp::Add:
        case BinaryOp::BitOr:
        case BinaryOp::BitXor:
          if (is_value(b, 0)) return a;
          if (is_value(a, 0)) return b;
          break;
        case BinaryOp::Sub:
        case BinaryOp::Shl:
        case BinaryOp::Shr:
          if (is_value(b, 0)) return a;
          break;
        case BinaryOp::Mul:
          if (is_value(b, 1)) return a;
          if (is_value(a, 1)) return b;
          if (is_value(a, 0) || is_value(b, 0)) return with_span(zero_value(e.type), e.span);
          break;
        case BinaryOp::Div:
          if (is_value(b, 1)) return a;
          break;
        case BinaryOp::And:
          if (a.is_true()) return b;
          if (b.is_true()) return a;
          if (a.is_false() || b.is_false() || negates(a, b)) return bool_constant(false);
          if (a == b) return a;
          break;
        case BinaryOp::Or:
          if (a.is_false()) return b;
          if (b.is_false()) return a;
          if (a.is_true() || b.is_true() || negates(a, b)) return bool_constant(true);
          if (a == b) return a;
          break;
        case BinaryOp::Implies:
          if (a.is_true()) return b;
          if (a.is_false() || b.is_true() || a == b) return bool_constant(true);
          break;
        case BinaryOp::Eq:
        case BinaryOp::Le:
        case BinaryOp::Ge:
          if (a == b) return bool_constant(true);
          break;
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Gt:
          if (a == b) return bool_constant(false);
          break;
        default:
          break;
      }
      return e;
    }
    case ExprKind::Ite:
      if (e.operands[0].is_true()) return e.operands[1];
      if (e.operands[0].is_false()) return e.operands[2];
      if (e.operands[1] == e.operands[2]) return e.operands[1];
      return e;
    case ExprKind::Cast: {
      const IrExpr& a = e.operands[0];
      if (a.type == e.type) return a;
      if (is_const(a)) return with_span(constant(e.type, apply_cast(a.type, e.type, a.value)), e.span);
      return e;
    }
    case ExprKind::Index: {
      const IrExpr& a = e.operands[0];
      const IrExpr& i = e.operands[1];
      if (is_zero_array(a)) return with_span(zero_value(e.type), e.span);
      if (a.kind == ExprKind::Store && is_const(i) && is_const(a.operands[1])) {
        if (a.operands[1].value == i.value) return a.operands[2];
        IrExpr inner = e;
        inner.operands[0] = a.operands[0];
        return simplify_node(std::move(inner));
      }
      return e;
    }
    default:
      return e;
  }
}

}  // namespace

IrExpr simplify(const IrExpr& e) {
  IrExpr out = e;
  for (auto& op : out.operands) op = simplify(op);
  return simplify_node(std::move(out));
}

namespace {

struct State {
  bool alive = false;
  std::vector<IrExpr> guard;
  std::map<std::string, int> version;
  std::map<std::string, IrExpr> value;  // propagated constants
};

class Executor {
 public:
  Executor(const GotoProgram& p, const SymexOptions& options) : p_(p), options_(options) {}

  SsaProgram run() {
    for (const Claim& c : p_.claims) ssa_.claim_ids.push_back(c.id);
    std::vector<std::vector<State>> pending(p_.instructions.size() + 1);
    State state;
    state.alive = true;
    for (std::size_t pc = p_.entry_index; pc < p_.instructions.size(); ++pc) {
      if (!pending[pc].empty()) {
        std::vector<State> incoming = std::move(pending[pc]);
        if (state.alive) incoming.insert(incoming.begin(), std::move(state));
        state = merge(std::move(incoming), pc);
      }
      if (!state.alive) continue;
      step(state, pc, pending);
    }
    return std::move(ssa_);
  }

 private:
  IrExpr read(const State& s, const IrExpr& symbol) const {
    if (options_.constant_propagation)
      if (auto it = s.value.find(symbol.symbol); it != s.value.end()) return with_span(it->second, symbol.span);
    IrExpr out = symbol;
    auto it = s.version.find(symbol.symbol);
    out.version = it == s.version.end() ? 0 : it->second;
    return out;
  }

  IrExpr rename(const State& s, const IrExpr& e) const {
    if (e.kind == ExprKind::Symbol && e.version < 0) return read(s, e);
    IrExpr out = e;
    for (auto& op : out.operands) op = rename(s, op);
    return out;
  }

  IrExpr prepare(const State& s, const IrExpr& e, std::size_t pc) {
    IrExpr with_inputs = replace_nondets(e, [&](unsigned ordinal, const IrExpr& n) {
      VersionedSymbol v{"nondet", nondet_count_++};
      ssa_.nondets.push_back({v, n.type, pc, ordinal});
      IrExpr ref = symbol_ref(v.base, n.type);
      ref.version = v.version;
      ref.span = n.span;
      return ref;
    });
    IrExpr renamed = rename(s, with_inputs);
    return options_.constant_propagation ? simplify(renamed) : renamed;
  }

  VersionedSymbol assign(State& s, const std::string& base, const SolType& type, IrExpr rhs,
                         std::size_t pc, const SourceSpan& source, bool hidden) {
    VersionedSymbol v{base, ++counter_[base]};
    s.version[base] = v.version;
    types_[base] = type;
    if (options_.constant_propagation && rhs.kind == ExprKind::Constant) s.value[base] = rhs;
    else s.value.erase(base);
    SsaEquation eq;
    eq.kind = EquationKind::Assignment;
    eq.lhs = v;
    eq.type = type;
    eq.rhs = std::move(rhs);
    eq.guard = conjunction(s.guard);
    eq.source = source;
    eq.pc = pc;
    eq.hidden = hidden;
    ssa_.equations.push_back(std::move(eq));
    return v;
  }

  // Operands of an asserted comparison that are themselves computations get
  // a named temporary, so the property reads `temp#k != 0`.
  IrExpr bind_temporaries(State& s, IrExpr pred, std::size_t pc, const SourceSpan& source) {
    if (pred.kind != ExprKind::Binary || !is_comparison(pred.binary_op)) return pred;
    for (auto& op : pred.operands) {
      if (op.kind == ExprKind::Constant || op.kind == ExprKind::Symbol) continue;
      VersionedSymbol t = assign(s, "temp", op.type, op, pc, source, false);
      s.value.erase("temp");
      s.version.erase("temp");
      IrExpr ref = symbol_ref(t.base, op.type);
      ref.version = t.version;
      ref.span = op.span;
      op = std::move(ref);
    }
    return pred;
  }

  void step(State& s, std::size_t pc, std::vector<std::vector<State>>& pending) {
    const GotoInstruction& in = p_.instructions[pc];
    switch (in.kind) {
      case InstrKind::Decl:
      case InstrKind::Skip:
        return;
      case InstrKind::End:
        s.alive = false;
        return;
      case InstrKind::Assign: {
        IrExpr rhs = prepare(s, *in.expr, pc);
        SolType type = in.expr->type;
        if (const Symbol* sym = p_.symbols.find(in.symbol)) type = sym->sol_type;
        assign(s, in.symbol, type, std::move(rhs), pc, in.location, in.internal);
        return;
      }
      case InstrKind::Assume: {
        IrExpr cond = prepare(s, *in.expr, pc);
        IrExpr guard = conjunction(s.guard);
        SsaEquation eq;
        eq.kind = EquationKind::Assumption;
        eq.rhs = guard.is_true() ? cond : simplify(implication(guard, cond));
        eq.guard = guard;
        eq.source = in.location;
        eq.pc = pc;
        bool infeasible = eq.rhs.is_false();
        ssa_.equations.push_back(std::move(eq));
        if (infeasible) s.alive = false;
        return;
      }
      case InstrKind::Assert: {
        IrExpr pred = prepare(s, *in.expr, pc);
        const Claim* claim = p_.find_claim(in.claim);
        if (claim && claim->category == ClaimCategory::UserAssert)
          pred = bind_temporaries(s, std::move(pred), pc, in.location);
        SsaEquation eq;
        eq.kind = EquationKind::Property;
        eq.claim = in.claim;
        eq.guard = conjunction(s.guard);
        eq.predicate = std::move(pred);
        eq.source = in.location;
        eq.pc = pc;
        ssa_.equations.push_back(std::move(eq));
        return;
      }
      case InstrKind::Goto: {
        if (in.target <= pc) throw Error(ErrorKind::UnsupportedConstruct, "backward jump during symbolic execution");
        IrExpr cond = prepare(s, *in.expr, pc);
        if (cond.is_false()) return;
        State taken = s;
        if (!cond.is_true()) taken.guard.push_back(cond);
        pending[in.target].push_back(std::move(taken));
        if (cond.is_true()) s.alive = false;
        else s.guard.push_back(simplify(logical_not(cond)));
        return;
      }
    }
  }

  State merge(std::vector<State> states, std::size_t pc) {
    states.erase(std::remove_if(states.begin(), states.end(), [](const State& s) { return !s.alive; }),
                 states.end());
    if (states.empty()) return {};
    State acc = std::move(states[0]);
    for (std::size_t i = 1; i < states.size(); ++i) acc = merge(std::move(acc), std::move(states[i]), pc);
    return acc;
  }

  State merge(State a, State b, std::size_t pc) {
    std::size_t common = 0;
    while (common < a.guard.size() && common < b.guard.size() && a.guard[common] == b.guard[common]) ++common;
    std::vector<IrExpr> rest_a(a.guard.begin() + common, a.guard.end());
    std::vector<IrExpr> rest_b(b.guard.begin() + common, b.guard.end());
    IrExpr cond_a = conjunction(rest_a);
    IrExpr cond_b = conjunction(rest_b);

    State out;
    out.alive = true;
    out.guard.assign(a.guard.begin(), a.guard.begin() + common);
    IrExpr either = simplify(disjunction(cond_a, cond_b));
    if (!either.is_true()) out.guard.push_back(either);

    std::set<std::string> bases;
    for (const auto& [base, v] : a.version) bases.insert(base);
    for (const auto& [base, v] : b.version) bases.insert(base);
    for (const std::string& base : bases) {
      int va = a.version.count(base) ? a.version.at(base) : 0;
      int vb = b.version.count(base) ? b.version.at(base) : 0;
      if (va == vb) {
        out.version[base] = va;
        if (auto it = a.value.find(base); it != a.value.end()) out.value[base] = it->second;
        continue;
      }
      const SolType& type = types_.at(base);
      IrExpr ref = symbol_ref(base, type);
      IrExpr ea = read(a, ref);
      IrExpr eb = read(b, ref);
      IrExpr phi = simplify(ite(cond_a, std::move(ea), std::move(eb)));
      assign(out, base, type, std::move(phi), pc, p_.instructions[pc].location, true);
    }
    return out;
  }

  const GotoProgram& p_;
  SymexOptions options_;
  SsaProgram ssa_;
  std::map<std::string, int> counter_;
  std::map<std::string, SolType> types_;
  int nondet_count_ = 0;
};

}  // namespace

SsaProgram execute(const GotoProgram& p, const SymexOptions& options) {
  return Executor(p, options).run();
}

Vc generate_vc(const SsaProgram& ssa, int claim) {
  if (std::find(ssa.claim_ids.begin(), ssa.claim_ids.end(), claim) == ssa.claim_ids.end())
    throw Error(ErrorKind::UnknownClaim, "no claim " + std::to_string(claim));
  Vc vc;
  vc.claim = claim;
  for (std::size_t i = 0; i < ssa.equations.size(); ++i)
    if (ssa.equations[i].kind == EquationKind::Property && ssa.equations[i].claim == claim)
      vc.instances.push_back(i);
  if (vc.instances.empty()) {
    vc.property = bool_constant(true);
    return vc;
  }
  const std::size_t first = vc.instances.front();
  const std::size_t last = vc.instances.back();
  for (std::size_t i = 0; i < last; ++i) {
    const SsaEquation& eq = ssa.equations[i];
    if (eq.kind == EquationKind::Assignment || (eq.kind == EquationKind::Assumption && i < first))
      vc.constraints.push_back(i);
  }
  std::vector<IrExpr> terms;
  std::vector<IrExpr> later_assumptions;
  std::size_t next = first;
  for (std::size_t k : vc.instances) {
    for (; next < k; ++next)
      if (ssa.equations[next].kind == EquationKind::Assumption) later_assumptions.push_back(ssa.equations[next].rhs);
    const SsaEquation& eq = ssa.equations[k];
    IrExpr holds = implication(eq.guard, eq.predicate);
    terms.push_back(simplify(implication(conjunction(later_assumptions), std::move(holds))));
  }
  vc.property = simplify(conjunction(terms));
  return vc;
}

std::string show_ssa(const SsaProgram& ssa, bool include_hidden) {
  std::ostringstream out;
  for (const SsaEquation& eq : ssa.equations) {
    switch (eq.kind) {
      case EquationKind::Assignment:
        if (eq.hidden && !include_hidden) continue;
        out << eq.lhs.name() << " = " << to_string(eq.rhs) << "\n";
        break;
      case EquationKind::Assumption:
        out << "ASSUME " << to_string(eq.rhs) << "\n";
        break;
      case EquationKind::Property:
        out << "ASSERT claim" << eq.claim << " " << to_string(implication(eq.guard, eq.predicate)) << "\n";
        break;
    }
  }
  return out.str();
}

}  // namespace solbmc
