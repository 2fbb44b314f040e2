#include <map>

#include "solbmc/error.hpp"
#include "solbmc/goto.hpp"

namespace solbmc {

namespace {

class Lowerer {
 public:
  explicit Lowerer(const ConvertedProgram& cp) : cp_(cp) { p_.symbols = cp.table; }

  GotoProgram run() {
    for (const std::string& id : cp_.environment) {
      const Symbol& s = p_.symbols.at(id);
      emit_decl(id, s.location);
      emit_assign(id, nondet(s.sol_type), s.location);
    }
    for (const IrStmt& decl : cp_.state_init) lower_stmt(decl);

    const Symbol entry = p_.symbols.at(cp_.entry_id);
    Frame frame{cp_.entry_id, entry.return_symbol, {}, {}};
    for (const std::string& param : entry.params) {
      const Symbol& s = p_.symbols.at(param);
      if (s.sol_type.is_array())
        throw Error(ErrorKind::UnsupportedConstruct,
                    "array parameter '" + s.display_name + "' of the entry function", s.location);
      emit_decl(param, s.location);
      emit_assign(param, nondet(s.sol_type), s.location);
    }
    if (entry.return_symbol) {
      const Symbol& r = p_.symbols.at(*entry.return_symbol);
      emit_decl(r.unique_id, r.location);
      emit_assign(r.unique_id, zero_value(r.sol_type), r.location);
    }
    ++instances_[cp_.entry_id];
    frames_.push_back(std::move(frame));
    lower_stmt(cp_.bodies.at(cp_.entry_id));
    for (std::size_t j : frames_.back().returns) p_.instructions[j].target = p_.instructions.size();
    frames_.pop_back();

    GotoInstruction end;
    end.kind = InstrKind::End;
    end.location = entry.location;
    push(std::move(end));
    return std::move(p_);
  }

 private:
  struct Frame {
    std::string function;
    std::optional<std::string> return_symbol;
    std::vector<std::size_t> returns;
    std::map<std::string, std::string> rename;
  };
  struct Loop {
    std::vector<std::size_t> breaks;
    std::vector<std::size_t> continues;
  };

  std::size_t push(GotoInstruction instr) {
    instr.uid = p_.next_uid++;
    p_.instructions.push_back(std::move(instr));
    return p_.instructions.size() - 1;
  }

  std::size_t emit_decl(const std::string& symbol, const SourceSpan& location) {
    GotoInstruction i;
    i.kind = InstrKind::Decl;
    i.symbol = symbol;
    i.location = location;
    return push(std::move(i));
  }

  std::size_t emit_assign(const std::string& symbol, IrExpr rhs, const SourceSpan& location,
                          bool internal = false) {
    GotoInstruction i;
    i.kind = InstrKind::Assign;
    i.symbol = symbol;
    i.expr = std::move(rhs);
    i.location = location;
    i.internal = internal;
    return push(std::move(i));
  }

  std::size_t emit_goto(IrExpr guard, const SourceSpan& location, std::size_t target = 0) {
    GotoInstruction i;
    i.kind = InstrKind::Goto;
    i.expr = std::move(guard);
    i.target = target;
    i.location = location;
    return push(std::move(i));
  }

  std::string renamed(const std::string& id) const {
    if (frames_.empty()) return id;
    const auto& rename = frames_.back().rename;
    auto it = rename.find(id);
    return it == rename.end() ? id : it->second;
  }

  std::string display(const IrExpr& e) const {
    if (const Symbol* s = p_.symbols.find(e.symbol); s && !s->display_name.empty()) return s->display_name;
    return e.symbol;
  }

  // Nondet values that are not a whole right-hand side get their own
  // assignment so that checks copying the expression see the same value.
  IrExpr hoist_nondets(const IrExpr& e, const SourceSpan& location) {
    return replace_nondets(e, [&](unsigned, const IrExpr& n) {
      std::string id = p_.symbols.fresh_id("nondet!" + std::to_string(p_.instructions.size()));
      Symbol s;
      s.unique_id = id;
      s.display_name = "nondet()";
      s.sol_type = n.type;
      s.kind = SymbolKind::Internal;
      s.location = n.span;
      p_.symbols.add(std::move(s), false);
      emit_decl(id, location);
      emit_assign(id, n, n.span.length ? n.span : location);
      IrExpr ref = symbol_ref(id, n.type);
      ref.span = n.span;
      return ref;
    });
  }

  IrExpr lower_expr(const IrExpr& e, const SourceSpan& location) {
    if ((e.kind == ExprKind::Binary && is_logical(e.binary_op)) || e.kind == ExprKind::Ite) {
      for (std::size_t i = 1; i < e.operands.size(); ++i)
        if (contains(e.operands[i], ExprKind::Call))
          throw Error(ErrorKind::UnsupportedConstruct,
                      "function call inside a conditionally evaluated operand", e.span);
    }
    if (e.kind == ExprKind::Symbol) {
      IrExpr out = e;
      out.symbol = renamed(e.symbol);
      return out;
    }
    if (e.kind == ExprKind::Nondet) return e;
    IrExpr out = e;
    for (auto& op : out.operands) op = lower_expr(op, location);
    if (e.kind == ExprKind::Call) return inline_call(out, location);
    return out;
  }

  IrExpr lower_value(const IrExpr& e, const SourceSpan& location) {
    IrExpr v = lower_expr(e, location);
    if (v.kind == ExprKind::Nondet) return v;
    return hoist_nondets(v, location);
  }

  IrExpr inline_call(const IrExpr& c, const SourceSpan& location) {
    const std::string& fid = c.symbol;
    for (const Frame& f : frames_)
      if (f.function == fid)
        throw Error(ErrorKind::RecursionUnsupported,
                    "recursive call of '" + p_.symbols.at(fid).display_name + "'", c.span);
    if (frames_.size() >= kInlineDepthLimit)
      throw Error(ErrorKind::UnsupportedConstruct, "call nesting deeper than inlining limit", c.span);
    auto body = cp_.bodies.find(fid);
    if (body == cp_.bodies.end())
      throw Error(ErrorKind::NotFound, "no body for called function '" + fid + "'", c.span);

    const Symbol fn = p_.symbols.at(fid);
    int instance = ++instances_[fid];
    Frame frame{fid, std::nullopt, {}, {}};
    if (instance > 1) {
      std::string prefix = fid + "::";
      std::vector<Symbol> copies;
      for (const Symbol& s : p_.symbols.symbols()) {
        if (s.unique_id.rfind(prefix, 0) != 0 || s.unique_id.find('!') != std::string::npos) continue;
        std::string base = s.unique_id, suffix;
        if (base.size() > 7 && base.compare(base.size() - 7, 7, ".length") == 0) {
          base.resize(base.size() - 7);
          suffix = ".length";
        }
        Symbol copy = s;
        copy.unique_id = base + "!" + std::to_string(instance) + suffix;
        copy.ast_id.reset();
        frame.rename[s.unique_id] = copy.unique_id;
        copies.push_back(std::move(copy));
      }
      for (Symbol& s : copies) p_.symbols.add(std::move(s), false);
    }
    auto name = [&](const std::string& id) {
      auto it = frame.rename.find(id);
      return it == frame.rename.end() ? id : it->second;
    };
    for (std::size_t k = 0; k < fn.params.size(); ++k) {
      std::string id = name(fn.params[k]);
      emit_decl(id, location);
      emit_assign(id, hoist_nondets(c.operands[k], location), c.operands[k].span.length ? c.operands[k].span : location);
    }
    if (fn.return_symbol) {
      frame.return_symbol = name(*fn.return_symbol);
      const Symbol& r = p_.symbols.at(*frame.return_symbol);
      emit_decl(r.unique_id, r.location);
      emit_assign(r.unique_id, zero_value(r.sol_type), r.location);
    }
    frames_.push_back(std::move(frame));
    std::vector<Loop> outer_loops;
    outer_loops.swap(loops_);
    lower_stmt(body->second);
    loops_.swap(outer_loops);
    for (std::size_t j : frames_.back().returns) p_.instructions[j].target = p_.instructions.size();
    std::optional<std::string> ret = frames_.back().return_symbol;
    frames_.pop_back();
    if (!ret) return bool_constant(true);
    IrExpr r = symbol_ref(*ret, c.type);
    r.span = c.span;
    return r;
  }

  void lower_assert(const IrStmt& s) {
    IrExpr cond = lower_value(*s.expr, s.span);
    std::string text = to_string(*s.expr, [&](const IrExpr& e) { return display(e); });
    GotoInstruction i;
    i.kind = InstrKind::Assert;
    i.claim = p_.add_claim(ClaimCategory::UserAssert, "assertion " + text, s.span);
    i.expr = std::move(cond);
    i.location = s.span;
    push(std::move(i));
  }

  void lower_loop(const IrStmt& s) {
    if (s.init)
      for (const IrStmt& st : *s.init) lower_stmt(st);
    std::size_t head = p_.instructions.size();
    IrExpr cond = s.cond ? lower_value(*s.cond, s.span) : bool_constant(true);
    std::size_t exit_jump = emit_goto(logical_not(std::move(cond)), s.cond ? s.cond->span : s.span);
    loops_.emplace_back();
    for (const IrStmt& st : s.body) lower_stmt(st);
    std::size_t continue_target = p_.instructions.size();
    if (s.step)
      for (const IrStmt& st : *s.step) lower_stmt(st);
    std::size_t back = emit_goto(bool_constant(true), s.span, head);
    std::size_t exit = p_.instructions.size();
    p_.instructions[exit_jump].target = exit;
    for (std::size_t j : loops_.back().breaks) p_.instructions[j].target = exit;
    for (std::size_t j : loops_.back().continues) p_.instructions[j].target = continue_target;
    loops_.pop_back();
    p_.loops.push_back({p_.instructions[head].uid, p_.instructions[exit_jump].uid,
                        p_.instructions[back].uid, s.span});
  }

  void lower_stmt(const IrStmt& s) {
    switch (s.kind) {
      case StmtKind::Decl: {
        std::string id = renamed(s.symbol);
        const Symbol& sym = p_.symbols.at(id);
        SolType type = sym.sol_type;
        SourceSpan location = sym.location;
        IrExpr init = s.expr ? lower_value(*s.expr, s.span) : zero_value(type);
        emit_decl(id, location);
        emit_assign(id, std::move(init), s.span);
        if (type.kind == TypeKind::DynArray) {
          emit_decl(id + ".length", location);
          emit_assign(id + ".length", zero_value(SolType::index()), s.span, true);
        }
        return;
      }
      case StmtKind::Assign: {
        IrExpr rhs = lower_value(*s.expr, s.span);
        const IrExpr& lhs = *s.lhs;
        if (lhs.kind == ExprKind::Symbol) {
          emit_assign(renamed(lhs.symbol), std::move(rhs), s.span);
          return;
        }
        IrExpr array = lower_expr(lhs.operands[0], s.span);
        IrExpr idx = lower_value(lhs.operands[1], s.span);
        std::string id = array.symbol;
        IrExpr st = store(std::move(array), std::move(idx), std::move(rhs));
        st.span = lhs.span;
        emit_assign(id, std::move(st), s.span);
        return;
      }
      case StmtKind::ArrayPush: {
        std::string id = renamed(s.symbol);
        const Symbol& sym = p_.symbols.at(id);
        SolType type = sym.sol_type;
        IrExpr value = lower_value(*s.expr, s.span);
        IrExpr len = symbol_ref(id + ".length", SolType::index());
        IrExpr st = store(symbol_ref(id, type), len, std::move(value));
        st.internal = true;
        st.span = s.span;
        emit_assign(id, std::move(st), s.span);
        IrExpr inc = binary(BinaryOp::Add, len, constant(SolType::index(), 1));
        inc.internal = true;
        emit_assign(id + ".length", std::move(inc), s.span, true);
        return;
      }
      case StmtKind::If: {
        IrExpr cond = lower_value(*s.cond, s.span);
        std::size_t to_else = emit_goto(logical_not(std::move(cond)), s.cond->span);
        lower_stmt(s.body[0]);
        if (s.body.size() > 1) {
          std::size_t to_end = emit_goto(bool_constant(true), s.span);
          p_.instructions[to_else].target = p_.instructions.size();
          lower_stmt(s.body[1]);
          p_.instructions[to_end].target = p_.instructions.size();
        } else {
          p_.instructions[to_else].target = p_.instructions.size();
        }
        return;
      }
      case StmtKind::For:
      case StmtKind::While:
        lower_loop(s);
        return;
      case StmtKind::Block:
        for (const IrStmt& st : s.body) lower_stmt(st);
        return;
      case StmtKind::Return: {
        if (s.expr && frames_.back().return_symbol) {
          IrExpr v = lower_value(*s.expr, s.span);
          emit_assign(*frames_.back().return_symbol, std::move(v), s.span);
        }
        std::size_t j = emit_goto(bool_constant(true), s.span);
        frames_.back().returns.push_back(j);
        return;
      }
      case StmtKind::Break:
      case StmtKind::Continue: {
        if (loops_.empty())
          throw Error(ErrorKind::UnsupportedConstruct, "break/continue outside a loop", s.span);
        std::size_t j = emit_goto(bool_constant(true), s.span);
        (s.kind == StmtKind::Break ? loops_.back().breaks : loops_.back().continues).push_back(j);
        return;
      }
      case StmtKind::Expression:
        lower_value(*s.expr, s.span);
        return;
      case StmtKind::Assume: {
        GotoInstruction i;
        i.kind = InstrKind::Assume;
        i.expr = lower_value(*s.expr, s.span);
        i.location = s.span;
        push(std::move(i));
        return;
      }
      case StmtKind::Assert:
        lower_assert(s);
        return;
    }
  }

  const ConvertedProgram& cp_;
  GotoProgram p_;
  std::vector<Frame> frames_;
  std::vector<Loop> loops_;
  std::map<std::string, int> instances_;
};

}  // namespace

GotoProgram lower(const ConvertedProgram& converted) { return Lowerer(converted).run(); }

}  // namespace solbmc
