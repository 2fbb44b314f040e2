#include "solbmc/goto.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "solbmc/error.hpp"

namespace solbmc {

namespace {

constexpr std::pair<ClaimCategory, std::string_view> kCategoryNames[] = {
    {ClaimCategory::UserAssert, "user-assert"},     {ClaimCategory::Overflow, "overflow"},
    {ClaimCategory::Underflow, "underflow"},        {ClaimCategory::BoundsStatic, "bounds-static"},
    {ClaimCategory::BoundsDynamic, "bounds-dynamic"}, {ClaimCategory::DivByZero, "div-by-zero"},
    {ClaimCategory::TxOrigin, "tx-origin"},         {ClaimCategory::UnwindBound, "unwind-bound"},
};

}  // namespace

std::string_view to_string(ClaimCategory category) {
  for (const auto& [c, name] : kCategoryNames)
    if (c == category) return name;
  return "?";
}

std::optional<ClaimCategory> parse_claim_category(std::string_view text) {
  for (const auto& [c, name] : kCategoryNames)
    if (name == text) return c;
  return std::nullopt;
}

const Claim* GotoProgram::find_claim(int id) const {
  for (const Claim& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

int GotoProgram::add_claim(ClaimCategory category, std::string description, const SourceSpan& location) {
  int id = 1;
  for (const Claim& c : claims) id = std::max(id, c.id + 1);
  claims.push_back({id, category, std::move(description), location});
  return id;
}

// ---------------------------------------------------------------------------
// Instrumentation

namespace {

struct Check {
  ClaimCategory category;
  IrExpr predicate;
  std::string description;
  std::string site;
  SourceSpan location;
};

SolType widened(const SolType& t) {
  return t.is_signed() ? SolType::signed_bv(2 * t.width) : SolType::unsigned_bv(2 * t.width);
}

BigUint signed_min(unsigned width) { return BigUint(1) << (width - 1); }

const IrExpr* array_root(const IrExpr& a) {
  const IrExpr* e = &a;
  while (e->kind == ExprKind::Store) e = &e->operands[0];
  return e->kind == ExprKind::Symbol ? e : nullptr;
}

class Instrumenter {
 public:
  explicit Instrumenter(std::set<ClaimCategory> enabled) : enabled_(std::move(enabled)) {}

  void collect(const IrExpr& e, const std::string& path, std::vector<IrExpr>& guards,
               std::vector<Check>& out) const {
    if (e.kind == ExprKind::Binary && is_logical(e.binary_op)) {
      collect(e.operands[0], path + ".0", guards, out);
      guards.push_back(e.binary_op == BinaryOp::Or ? logical_not(e.operands[0]) : e.operands[0]);
      collect(e.operands[1], path + ".1", guards, out);
      guards.pop_back();
      return;
    }
    if (e.kind == ExprKind::Ite) {
      collect(e.operands[0], path + ".0", guards, out);
      guards.push_back(e.operands[0]);
      collect(e.operands[1], path + ".1", guards, out);
      guards.back() = logical_not(e.operands[0]);
      collect(e.operands[2], path + ".2", guards, out);
      guards.pop_back();
      return;
    }
    for (std::size_t i = 0; i < e.operands.size(); ++i)
      collect(e.operands[i], path + "." + std::to_string(i), guards, out);
    if (e.internal) return;

    auto add = [&](ClaimCategory c, IrExpr pred, std::string description) {
      if (!enabled_.count(c)) return;
      IrExpr guarded = guards.empty() ? std::move(pred) : implication(conjunction(guards), std::move(pred));
      out.push_back({c, std::move(guarded), std::move(description), path, e.span});
    };

    if (e.kind == ExprKind::Binary && e.type.is_integer()) {
      const IrExpr& a = e.operands[0];
      const IrExpr& b = e.operands[1];
      const SolType& t = e.type;
      switch (e.binary_op) {
        case BinaryOp::Sub:
          if (!t.is_signed()) {
            add(ClaimCategory::Underflow, binary(BinaryOp::Ge, a, b), "arithmetic underflow on -");
            break;
          }
          [[fallthrough]];
        case BinaryOp::Add:
        case BinaryOp::Mul: {
          SolType w = widened(t);
          IrExpr wide = binary(e.binary_op, cast(a, w), cast(b, w));
          IrExpr narrow = cast(e, w);
          add(ClaimCategory::Overflow, binary(BinaryOp::Eq, std::move(wide), std::move(narrow)),
              "arithmetic overflow on " + std::string(op_text(e.binary_op)));
          break;
        }
        case BinaryOp::Div:
        case BinaryOp::Mod:
          add(ClaimCategory::DivByZero, binary(BinaryOp::Ne, b, zero_value(t)),
              e.binary_op == BinaryOp::Div ? "division by zero" : "modulo by zero");
          if (t.is_signed() && e.binary_op == BinaryOp::Div) {
            IrExpr is_min = binary(BinaryOp::Eq, a, constant(t, signed_min(t.width)));
            IrExpr is_minus_one = binary(BinaryOp::Eq, b, constant(t, mask(t.width)));
            add(ClaimCategory::Overflow,
                logical_not(binary(BinaryOp::And, std::move(is_min), std::move(is_minus_one))),
                "arithmetic overflow on /");
          }
          break;
        default:
          break;
      }
    }
    if (e.kind == ExprKind::Unary && e.unary_op == UnaryOp::Neg && e.type.is_signed()) {
      add(ClaimCategory::Overflow,
          binary(BinaryOp::Ne, e.operands[0], constant(e.type, signed_min(e.type.width))),
          "arithmetic overflow on unary -");
    }
    if (e.kind == ExprKind::Index || e.kind == ExprKind::Store) {
      const IrExpr& array = e.operands[0];
      const IrExpr& idx = e.operands[1];
      if (array.type.kind == TypeKind::StaticArray) {
        add(ClaimCategory::BoundsStatic,
            binary(BinaryOp::Lt, idx, constant(SolType::index(), array.type.size)),
            "array index out of bounds (size " + std::to_string(array.type.size) + ")");
      } else if (const IrExpr* root = array_root(array)) {
        std::string len = root->symbol + ".length";
        if (symbols_->contains(len))
          add(ClaimCategory::BoundsDynamic, binary(BinaryOp::Lt, idx, symbol_ref(len, SolType::index())),
              "dynamic array index out of bounds");
      }
    }
  }

  GotoProgram apply(GotoProgram p) {
    symbols_ = &p.symbols;
    std::vector<GotoInstruction> out;
    std::vector<std::size_t> new_index(p.instructions.size() + 1);
    for (std::size_t i = 0; i < p.instructions.size(); ++i) {
      const GotoInstruction& in = p.instructions[i];
      new_index[i] = out.size();
      bool checked = in.expr && (in.kind == InstrKind::Assign || in.kind == InstrKind::Assume ||
                                 in.kind == InstrKind::Goto ||
                                 (in.kind == InstrKind::Assert && is_user_assert(p, in.claim)));
      if (checked) {
        std::vector<Check> checks;
        std::vector<IrExpr> guards;
        collect(*in.expr, "e", guards, checks);
        for (Check& c : checks) {
          std::string key = std::string(to_string(c.category)) + "@" + std::to_string(in.uid) + ":" + c.site;
          if (!p.instrumented_sites.insert(key).second) continue;
          GotoInstruction a;
          a.kind = InstrKind::Assert;
          a.expr = std::move(c.predicate);
          a.location = c.location.length ? c.location : in.location;
          a.claim = p.add_claim(c.category, std::move(c.description), a.location);
          a.uid = p.next_uid++;
          out.push_back(std::move(a));
        }
      }
      out.push_back(in);
    }
    new_index[p.instructions.size()] = out.size();
    for (GotoInstruction& in : out)
      if (in.kind == InstrKind::Goto) in.target = new_index[in.target];
    p.entry_index = new_index[p.entry_index];
    p.instructions = std::move(out);
    return p;
  }

 private:
  static bool is_user_assert(const GotoProgram& p, int claim) {
    const Claim* c = p.find_claim(claim);
    return c && c->category == ClaimCategory::UserAssert;
  }

  std::set<ClaimCategory> enabled_;
  const SymbolTable* symbols_ = nullptr;
};

}  // namespace

GotoProgram instrument_overflow(GotoProgram p, bool div_by_zero) {
  std::set<ClaimCategory> cats = {ClaimCategory::Overflow, ClaimCategory::Underflow};
  if (div_by_zero) cats.insert(ClaimCategory::DivByZero);
  return Instrumenter(cats).apply(std::move(p));
}

GotoProgram instrument_div_by_zero(GotoProgram p) {
  return Instrumenter({ClaimCategory::DivByZero}).apply(std::move(p));
}

GotoProgram instrument_bounds(GotoProgram p) {
  return Instrumenter({ClaimCategory::BoundsStatic, ClaimCategory::BoundsDynamic}).apply(std::move(p));
}

// ---------------------------------------------------------------------------
// tx.origin

namespace {

bool is_tx_origin(const AstNode& n) {
  if (n.kind != NodeKind::MemberAccess || n.attr_string("memberName") != "origin") return false;
  const AstNode* base = n.child("expression");
  return base && base->kind == NodeKind::Identifier && base->name() == "tx";
}

void find_tx_origin(const AstNode& n, bool authorization, std::vector<Claim>& out) {
  if (is_tx_origin(n)) {
    if (authorization)
      out.push_back({static_cast<int>(out.size()) + 1, ClaimCategory::TxOrigin,
                     "authorization through tx.origin; compare msg.sender instead", n.span});
    return;
  }
  bool child_auth = authorization;
  if (n.kind == NodeKind::BinaryOperation) {
    std::string op = n.attr_string("operator");
    if (op == "==" || op == "!=") child_auth = true;
  }
  if (n.kind == NodeKind::FunctionCall) {
    const AstNode* callee = n.child("expression");
    if (callee && callee->kind == NodeKind::Identifier &&
        (callee->name() == "require" || callee->name() == "assert")) {
      if (callee) find_tx_origin(*callee, authorization, out);
      for (const AstNode* arg : n.children("arguments"))
        if (arg) find_tx_origin(*arg, true, out);
      return;
    }
  }
  for (const AstNode* c : n.ordered_children())
    if (c) find_tx_origin(*c, child_auth, out);
}

}  // namespace

std::vector<Claim> detect_tx_origin(const AstRoot& root) {
  std::vector<Claim> out;
  find_tx_origin(*root.source_unit, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Unwinding

namespace {

std::size_t index_of(const GotoProgram& p, std::uint64_t uid) {
  for (std::size_t i = 0; i < p.instructions.size(); ++i)
    if (p.instructions[i].uid == uid) return i;
  throw Error(ErrorKind::NotFound, "loop instruction " + std::to_string(uid) + " vanished");
}

void unwind_loop(GotoProgram& p, const GotoLoop& loop, unsigned bound, bool assertions) {
  const std::size_t h = index_of(p, loop.head);
  const std::size_t e = index_of(p, loop.exit_jump);
  const std::size_t b = index_of(p, loop.back_edge);
  const std::size_t body_len = b - h;         // copied per iteration: [h, b)
  const std::size_t head_len = e - h + 1;     // final condition check: [h, e]
  const std::size_t old_size = p.instructions.size();
  const std::size_t new_len = bound * body_len + head_len + 1;
  const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(new_len) - static_cast<std::ptrdiff_t>(b - h + 1);
  auto outside = [&](std::size_t t) -> std::size_t {
    if (t < h) return t;
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t) + delta);
  };

  std::vector<GotoInstruction> out(p.instructions.begin(), p.instructions.begin() + h);
  for (unsigned j = 0; j < bound; ++j) {
    std::size_t base = h + j * body_len;
    for (std::size_t i = h; i < b; ++i) {
      GotoInstruction in = p.instructions[i];
      if (j > 0) in.uid = p.next_uid++;
      if (in.kind == InstrKind::Goto) {
        std::size_t t = in.target;
        if (t == h || t == b) in.target = base + body_len;
        else if (t > h && t < b) in.target = base + (t - h);
        else in.target = outside(t);
      }
      out.push_back(std::move(in));
    }
  }
  std::size_t check_base = h + bound * body_len;
  for (std::size_t i = h; i <= e; ++i) {
    GotoInstruction in = p.instructions[i];
    in.uid = p.next_uid++;
    if (in.kind == InstrKind::Goto) {
      std::size_t t = in.target;
      if (t >= h && t <= e) in.target = check_base + (t - h);
      else if (t > b || t < h) in.target = outside(t);
      else throw Error(ErrorKind::UnsupportedConstruct, "jump out of a loop condition into its body");
    }
    out.push_back(std::move(in));
  }
  GotoInstruction stop;
  stop.location = loop.location;
  stop.uid = p.next_uid++;
  stop.expr = bool_constant(false);
  if (assertions) {
    stop.kind = InstrKind::Assert;
    stop.claim = p.add_claim(ClaimCategory::UnwindBound,
                             "unwinding assertion (bound " + std::to_string(bound) + ")", loop.location);
  } else {
    stop.kind = InstrKind::Assume;
  }
  out.push_back(std::move(stop));
  for (std::size_t i = b + 1; i < old_size; ++i) {
    GotoInstruction in = p.instructions[i];
    if (in.kind == InstrKind::Goto) in.target = outside(in.target);
    out.push_back(std::move(in));
  }
  for (std::size_t i = 0; i < h; ++i)
    if (out[i].kind == InstrKind::Goto) out[i].target = outside(out[i].target);
  p.instructions = std::move(out);
}

}  // namespace

GotoProgram unwind(GotoProgram p, unsigned bound, bool unwinding_assertions) {
  std::vector<GotoLoop> pending = std::move(p.loops);
  p.loops.clear();
  while (!pending.empty()) {
    auto extent = [&](const GotoLoop& l) { return index_of(p, l.back_edge) - index_of(p, l.head); };
    auto inner = std::min_element(pending.begin(), pending.end(),
                                  [&](const GotoLoop& a, const GotoLoop& b) { return extent(a) < extent(b); });
    GotoLoop loop = *inner;
    pending.erase(inner);
    unwind_loop(p, loop, bound, unwinding_assertions);
  }
  return p;
}

bool is_acyclic(const GotoProgram& p) {
  for (std::size_t i = 0; i < p.instructions.size(); ++i) {
    const GotoInstruction& in = p.instructions[i];
    if (in.kind == InstrKind::Goto && (in.target <= i || in.target > p.instructions.size())) return false;
  }
  return true;
}

std::string to_string(const GotoProgram& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.instructions.size(); ++i) {
    const GotoInstruction& in = p.instructions[i];
    out << i << ": ";
    switch (in.kind) {
      case InstrKind::Decl: out << "DECL " << in.symbol; break;
      case InstrKind::Assign: out << "ASSIGN " << in.symbol << " := " << to_string(*in.expr); break;
      case InstrKind::Assume: out << "ASSUME " << to_string(*in.expr); break;
      case InstrKind::Assert: out << "ASSERT claim" << in.claim << " " << to_string(*in.expr); break;
      case InstrKind::Goto:
        out << "GOTO " << in.target;
        if (!in.expr->is_true()) out << " IF " << to_string(*in.expr);
        break;
      case InstrKind::Skip: out << "SKIP"; break;
      case InstrKind::End: out << "END"; break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace solbmc
