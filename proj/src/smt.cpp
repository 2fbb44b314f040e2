#include "solbmc/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "solbmc/error.hpp"

extern char** environ;

namespace solbmc {

namespace {

std::string bv_sort(unsigned width) { return "(_ BitVec " + std::to_string(width) + ")"; }

std::string quoted(const std::string& name) { return "|" + name + "|"; }

std::string versioned_name(const IrExpr& e) { return e.symbol + "#" + std::to_string(e.version); }

std::string scalar_constant(const SolType& type, const BigUint& value) {
  if (type.is_bool()) return value != 0 ? "true" : "false";
  return "(_ bv" + value.str() + " " + std::to_string(type.width) + ")";
}

void write(std::ostringstream& out, const IrExpr& e);

void write_app(std::ostringstream& out, std::string_view op, const IrExpr& e) {
  out << "(" << op;
  for (const IrExpr& operand : e.operands) {
    out << " ";
    write(out, operand);
  }
  out << ")";
}

std::string_view binary_symbol(BinaryOp op, const SolType& t) {
  const bool s = t.is_signed();
  switch (op) {
    case BinaryOp::Add: return "bvadd";
    case BinaryOp::Sub: return "bvsub";
    case BinaryOp::Mul: return "bvmul";
    case BinaryOp::Div: return s ? "bvsdiv" : "bvudiv";
    case BinaryOp::Mod: return s ? "bvsrem" : "bvurem";
    case BinaryOp::Shl: return "bvshl";
    case BinaryOp::Shr: return s ? "bvashr" : "bvlshr";
    case BinaryOp::BitAnd: return "bvand";
    case BinaryOp::BitOr: return "bvor";
    case BinaryOp::BitXor: return "bvxor";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    case BinaryOp::Implies: return "=>";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "distinct";
    case BinaryOp::Lt: return s ? "bvslt" : "bvult";
    case BinaryOp::Le: return s ? "bvsle" : "bvule";
    case BinaryOp::Gt: return s ? "bvsgt" : "bvugt";
    case BinaryOp::Ge: return s ? "bvsge" : "bvuge";
  }
  return "?";
}

void write(std::ostringstream& out, const IrExpr& e) {
  switch (e.kind) {
    case ExprKind::Constant:
      if (e.type.is_array()) {
        SolType elem = e.type.element();
        out << "((as const " << smt_sort(e.type) << ") " << scalar_constant(elem, 0) << ")";
      } else {
        out << scalar_constant(e.type, e.value);
      }
      return;
    case ExprKind::Symbol:
      if (e.version < 0) throw Error(ErrorKind::Encode, "unversioned symbol '" + e.symbol + "'", e.span);
      out << quoted(versioned_name(e));
      return;
    case ExprKind::Unary:
      write_app(out, e.unary_op == UnaryOp::Not ? "not" : e.unary_op == UnaryOp::Neg ? "bvneg" : "bvnot", e);
      return;
    case ExprKind::Binary:
      write_app(out, binary_symbol(e.binary_op, e.operands[0].type), e);
      return;
    case ExprKind::Ite:
      write_app(out, "ite", e);
      return;
    case ExprKind::Index:
      write_app(out, "select", e);
      return;
    case ExprKind::Store:
      write_app(out, "store", e);
      return;
    case ExprKind::Cast: {
      const IrExpr& op = e.operands[0];
      const unsigned from = op.type.width, to = e.type.width;
      if (e.type.is_bool() || op.type.is_bool() || op.type.is_array())
        throw Error(ErrorKind::Encode, "cast between " + to_string(op.type) + " and " + to_string(e.type), e.span);
      if (to == from) {
        write(out, op);
      } else if (to > from) {
        out << "((_ " << (op.type.is_signed() ? "sign_extend " : "zero_extend ") << (to - from) << ") ";
        write(out, op);
        out << ")";
      } else {
        out << "((_ extract " << (to - 1) << " 0) ";
        write(out, op);
        out << ")";
      }
      return;
    }
    case ExprKind::Nondet:
    case ExprKind::Call:
      throw Error(ErrorKind::Encode, "expression kind not encodable after symbolic execution", e.span);
  }
}

void collect_symbols(const IrExpr& e, std::set<std::string>& seen,
                     std::vector<std::pair<std::string, SolType>>& out) {
  visit(e, [&](const IrExpr& n) {
    if (n.kind == ExprKind::Symbol && n.version >= 0) {
      std::string name = versioned_name(n);
      if (seen.insert(name).second) out.emplace_back(name, n.type);
    }
    return true;
  });
}

}  // namespace

std::string smt_sort(const SolType& type) {
  if (type.is_bool()) return "Bool";
  if (type.is_array()) return "(Array " + bv_sort(kIndexWidth) + " " + smt_sort(type.element()) + ")";
  return bv_sort(type.width);
}

std::string smt_expr(const IrExpr& e) {
  std::ostringstream out;
  write(out, e);
  return out.str();
}

SmtScript encode(const SsaProgram& ssa, const Vc& vc) {
  SmtScript script;
  std::set<std::string> seen;
  std::ostringstream body;
  for (std::size_t i : vc.constraints) {
    const SsaEquation& eq = ssa.equations[i];
    if (eq.kind == EquationKind::Assignment) {
      IrExpr lhs = symbol_ref(eq.lhs.base, eq.type);
      lhs.version = eq.lhs.version;
      collect_symbols(lhs, seen, script.declarations);
      collect_symbols(eq.rhs, seen, script.declarations);
      body << "(assert (= " << quoted(eq.lhs.name()) << " " << smt_expr(eq.rhs) << "))\n";
    } else if (eq.kind == EquationKind::Assumption) {
      collect_symbols(eq.rhs, seen, script.declarations);
      body << "(assert " << smt_expr(eq.rhs) << ")\n";
    }
  }
  if (vc.property.is_true()) {
    body << "(assert false)\n";
  } else {
    collect_symbols(vc.property, seen, script.declarations);
    body << "(assert (not " << smt_expr(vc.property) << "))\n";
  }
  bool arrays = false;
  for (const auto& [name, type] : script.declarations) arrays = arrays || type.is_array();
  script.logic = arrays ? "QF_ABV" : "QF_BV";

  std::ostringstream out;
  out << "(set-option :produce-models true)\n";
  out << "(set-logic " << script.logic << ")\n";
  for (const auto& [name, type] : script.declarations)
    out << "(declare-fun " << quoted(name) << " () " << smt_sort(type) << ")\n";
  out << body.str();
  out << "(check-sat)\n(get-model)\n";
  script.text = out.str();
  return script;
}

// ---------------------------------------------------------------------------
// Solver output

namespace {

struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Sexp read() {
    skip();
    if (pos_ >= text_.size()) throw Error(ErrorKind::ModelParse, "unexpected end of solver output");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp s;
      s.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw Error(ErrorKind::ModelParse, "unbalanced parenthesis in solver output");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.list.push_back(read());
      }
    }
    if (c == ')') throw Error(ErrorKind::ModelParse, "unexpected ')' in solver output");
    Sexp s;
    if (c == '|') {
      auto end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) throw Error(ErrorKind::ModelParse, "unterminated |symbol|");
      s.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return s;
    }
    if (c == '"') {
      std::size_t i = pos_ + 1;
      while (i < text_.size()) {
        if (text_[i] == '"') {
          if (i + 1 < text_.size() && text_[i + 1] == '"') {
            i += 2;
            continue;
          }
          break;
        }
        ++i;
      }
      if (i >= text_.size()) throw Error(ErrorKind::ModelParse, "unterminated string in solver output");
      s.atom = std::string(text_.substr(pos_, i - pos_ + 1));
      pos_ = i + 1;
      return s;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    s.atom = std::string(text_.substr(start, pos_ - start));
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<BigUint> numeral(const Sexp& v) {
  if (!v.is_list) {
    const std::string& a = v.atom;
    if (a == "true") return BigUint(1);
    if (a == "false") return BigUint(0);
    if (a.size() > 2 && a[0] == '#' && (a[1] == 'b' || a[1] == 'x')) {
      BigUint out = 0;
      const unsigned base = a[1] == 'b' ? 2 : 16;
      for (std::size_t i = 2; i < a.size(); ++i) {
        int d = std::isdigit(static_cast<unsigned char>(a[i])) ? a[i] - '0'
                : std::isxdigit(static_cast<unsigned char>(a[i])) ? std::tolower(a[i]) - 'a' + 10
                                                                    : -1;
        if (d < 0 || d >= static_cast<int>(base)) throw Error(ErrorKind::ModelParse, "bad numeral " + a);
        out = out * base + d;
      }
      return out;
    }
    return std::nullopt;
  }
  // (_ bvN w)
  if (v.list.size() == 3 && !v.list[0].is_list && v.list[0].atom == "_" && !v.list[1].is_list &&
      v.list[1].atom.rfind("bv", 0) == 0) {
    std::string digits = v.list[1].atom.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ModelParse, "bad numeral " + v.list[1].atom);
    return BigUint(digits);
  }
  return std::nullopt;
}

void read_definitions(const Sexp& s, std::map<std::string, BigUint>& model) {
  if (!s.is_list) return;
  if (s.list.size() == 5 && !s.list[0].is_list && s.list[0].atom == "define-fun" && s.list[2].is_list &&
      s.list[2].list.empty()) {
    if (auto v = numeral(s.list[4])) model[s.list[1].atom] = *v;
    return;
  }
  for (const Sexp& child : s.list) read_definitions(child, model);
}

}  // namespace

SolverVerdict parse_solver_output(const std::string& output) {
  SolverVerdict verdict;
  SexpReader reader(output);
  if (reader.at_end()) {
    verdict.reason = "empty solver output";
    return verdict;
  }
  Sexp first = reader.read();
  if (first.is_list || (first.atom != "sat" && first.atom != "unsat" && first.atom != "unknown")) {
    verdict.reason = output.substr(0, output.find('\n'));
    return verdict;
  }
  if (first.atom == "unsat") {
    verdict.kind = VerdictKind::Unsat;
    return verdict;
  }
  if (first.atom == "unknown") {
    verdict.reason = "solver returned unknown";
    return verdict;
  }
  verdict.kind = VerdictKind::Sat;
  while (!reader.at_end()) read_definitions(reader.read(), verdict.model);
  return verdict;
}

std::string default_solver() {
  if (const char* env = std::getenv("SOLBMC_SOLVER"); env && *env) return env;
  return "z3";
}

namespace {

struct TempFile {
  std::string path;
  ~TempFile() {
    if (!path.empty()) std::filesystem::remove(path);
  }
};

}  // namespace

SolverVerdict solve(const SmtScript& script, const SolverConfig& config) {
  if (config.timeout_seconds <= 0) throw Error(ErrorKind::Usage, "solver timeout must be positive");
  TempFile file;
  {
    std::string tmpl = (std::filesystem::temp_directory_path() / "solbmc-XXXXXX.smt2").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    int fd = mkstemps(buf.data(), 5);
    if (fd < 0) throw Error(ErrorKind::Io, std::string("cannot create temporary file: ") + std::strerror(errno));
    file.path = buf.data();
    std::size_t written = 0;
    while (written < script.text.size()) {
      ssize_t n = ::write(fd, script.text.data() + written, script.text.size() - written);
      if (n <= 0) {
        ::close(fd);
        throw Error(ErrorKind::Io, "cannot write SMT script");
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }

  int out_pipe[2];
  if (pipe(out_pipe) != 0) throw Error(ErrorKind::SolverSpawn, "cannot create pipe");
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDERR_FILENO);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
  posix_spawn_file_actions_addclose(&actions, out_pipe[1]);

  std::vector<std::string> argv_s;
  argv_s.push_back(config.executable);
  argv_s.insert(argv_s.end(), config.args.begin(), config.args.end());
  argv_s.push_back(file.path);
  std::vector<char*> argv;
  for (auto& a : argv_s) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  int rc = posix_spawnp(&pid, config.executable.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(out_pipe[0]);
    throw Error(ErrorKind::SolverSpawn,
                "cannot run solver '" + config.executable + "': " + std::strerror(rc));
  }

  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                           std::chrono::duration<double>(config.timeout_seconds));
  std::string output;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
    if (remaining <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    int ready = poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1000)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) continue;
    ssize_t n = ::read(out_pipe[0], buf, sizeof buf);
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  if (timed_out) kill(pid, SIGKILL);
  ::close(out_pipe[0]);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    SolverVerdict v;
    v.reason = "timeout";
    return v;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && output.empty())
    throw Error(ErrorKind::SolverSpawn, "cannot run solver '" + config.executable + "'");
  return parse_solver_output(output);
}

}  // namespace solbmc
