#include "solbmc/interpreter.hpp"

#include "solbmc/error.hpp"

namespace solbmc {

ExecutionResult interpret(const GotoProgram& p, const NondetValues& nondets) {
  ExecutionResult r;
  auto lookup = [&](const IrExpr& s) {
    auto it = r.state.find(s.symbol);
    return it == r.state.end() ? Value{} : it->second;
  };
  std::size_t pc = p.entry_index;
  std::size_t budget = p.instructions.size() * 64 + 1024;
  while (pc < p.instructions.size()) {
    if (budget-- == 0) throw Error(ErrorKind::UnsupportedConstruct, "program does not terminate under replay");
    const GotoInstruction& in = p.instructions[pc];
    auto eval = [&] {
      IrExpr bound = replace_nondets(*in.expr, [&](unsigned ordinal, const IrExpr& n) {
        auto it = nondets.find({pc, ordinal});
        if (it == nondets.end())
          throw Error(ErrorKind::NondetValueMissing,
                      "no value for nondet #" + std::to_string(ordinal) + " at instruction " + std::to_string(pc),
                      n.span);
        return constant(n.type, it->second);
      });
      return evaluate(bound, lookup);
    };
    switch (in.kind) {
      case InstrKind::Decl:
      case InstrKind::Skip:
        break;
      case InstrKind::End:
        return r;
      case InstrKind::Assign:
        r.state[in.symbol] = eval();
        break;
      case InstrKind::Assume:
        if (eval().bits == 0) {
          r.blocked = true;
          return r;
        }
        break;
      case InstrKind::Assert:
        if (eval().bits == 0) {
          r.failed_claims.push_back(in.claim);
          r.failed_pcs.push_back(pc);
        }
        break;
      case InstrKind::Goto:
        if (eval().bits != 0) {
          pc = in.target;
          continue;
        }
        break;
    }
    ++pc;
  }
  return r;
}

}  // namespace solbmc
