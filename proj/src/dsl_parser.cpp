#include <cctype>
#include <sstream>

#include "intransit/dsl.hpp"

namespace intransit {

namespace {

using dsl::Cmp;
using dsl::Node;
using dsl::Op;
using dsl::Program;
using dsl::Src;
using dsl::SrcKind;

enum class Tok { kIdent, kInt, kString, kSym, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Tok::kIdent;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += take();
        }
      } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
                 (ch == '-' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        t.kind = Tok::kInt;
        t.text += take();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += take();
        }
      } else if (ch == '"') {
        t.kind = Tok::kString;
        take();
        bool closed = false;
        while (pos_ < src_.size()) {
          char c = take();
          if (c == '"') {
            closed = true;
            break;
          }
          if (c == '\\') {
            if (pos_ >= src_.size()) break;
            char e = take();
            if (e == 'n') {
              t.text += '\n';
            } else if (e == '"' || e == '\\') {
              t.text += e;
            } else {
              throw ParseError(std::string("unknown escape '\\") + e + "'", line_, col_ - 1);
            }
            continue;
          }
          t.text += c;
        }
        if (!closed) throw ParseError("unterminated quoted program", t.line, t.column);
      } else if (ch == '=' && peek(1) == '>') {
        t.kind = Tok::kSym;
        t.text = "=>";
        take();
        take();
      } else if (ch == '=' && peek(1) == '=') {
        t.kind = Tok::kSym;
        t.text = "==";
        take();
        take();
      } else if (std::string_view("(),{}|<>").find(ch) != std::string_view::npos) {
        t.kind = Tok::kSym;
        t.text = std::string(1, take());
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(const std::string& s) {
  static const char* const kKeywords[] = {"const", "bestresp", "sim",  "match", "halted",
                                          "exhausted", "if",   "then", "else",  "loop",
                                          "grow",  "opp",      "self", "rest"};
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::shared_ptr<Program> run() {
    auto prog = std::make_shared<Program>();
    prog_ = prog.get();
    prog->root = expr();
    if (cur().kind != Tok::kEnd) fail("unexpected '" + cur().text + "' after program");
    prog->canonical = print_program(*prog);
    return prog;
  }

 private:
  const Token& cur() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().column);
  }

  bool at_sym(const char* s) const { return cur().kind == Tok::kSym && cur().text == s; }
  bool at_kw(const char* s) const { return cur().kind == Tok::kIdent && cur().text == s; }

  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }
  void expect_kw(const char* s) {
    if (!at_kw(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }

  std::int64_t integer() {
    if (cur().kind != Tok::kInt) fail("expected integer");
    std::int64_t v = 0;
    try {
      v = std::stoll(cur().text);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
    ++i_;
    return v;
  }

  int add(Node n) {
    prog_->nodes.push_back(std::move(n));
    return static_cast<int>(prog_->nodes.size()) - 1;
  }

  Src src() {
    Src s;
    if (at_kw("opp")) {
      s.kind = SrcKind::kOpp;
      ++i_;
    } else if (at_kw("self")) {
      s.kind = SrcKind::kSelf;
      ++i_;
    } else if (cur().kind == Tok::kString) {
      const Token t = cur();
      ++i_;
      s.kind = SrcKind::kQuoted;
      try {
        s.quoted = parse_program(t.text).ast_ptr();
      } catch (const ParseError& e) {
        throw ParseError(std::string("in quoted program: ") + e.message(), t.line, t.column);
      }
    } else {
      fail("expected 'opp', 'self' or a quoted program");
    }
    return s;
  }

  int expr() {
    const Token& t = cur();
    if (t.kind == Tok::kInt) {
      Node n;
      n.op = Op::kConst;
      n.bare = true;
      n.value = integer();
      return add(std::move(n));
    }
    if (t.kind != Tok::kIdent) fail("expected expression");
    if (t.text == "const") {
      ++i_;
      Node n;
      n.op = Op::kConst;
      n.value = integer();
      return add(std::move(n));
    }
    if (t.text == "bestresp") {
      ++i_;
      expect_sym("(");
      Node n;
      n.op = Op::kBestResp;
      n.a = expr();
      expect_sym(")");
      return add(std::move(n));
    }
    if (t.text == "sim") {
      ++i_;
      expect_sym("(");
      Node n;
      n.op = Op::kSim;
      n.prog = src();
      expect_sym(",");
      n.against = src();
      expect_sym(",");
      if (at_kw("rest")) {
        ++i_;
        n.rest = true;
      } else {
        n.value = integer();
        if (n.value < 0) fail("budget must be non-negative");
      }
      expect_sym(")");
      return add(std::move(n));
    }
    if (t.text == "match") {
      ++i_;
      Node n;
      n.op = Op::kMatch;
      n.a = expr();
      expect_sym("{");
      expect_kw("halted");
      expect_sym("(");
      if (cur().kind != Tok::kIdent || is_keyword(cur().text)) fail("expected identifier");
      n.name = cur().text;
      ++i_;
      expect_sym(")");
      expect_sym("=>");
      scope_.push_back(n.name);
      n.b = expr();
      scope_.pop_back();
      expect_sym("|");
      expect_kw("exhausted");
      expect_sym("=>");
      n.c = expr();
      expect_sym("}");
      return add(std::move(n));
    }
    if (t.text == "if") {
      ++i_;
      Node n;
      n.op = Op::kIf;
      n.a = expr();
      if (at_sym("==")) {
        n.cmp = Cmp::kEq;
      } else if (at_sym("<")) {
        n.cmp = Cmp::kLt;
      } else if (at_sym(">")) {
        n.cmp = Cmp::kGt;
      } else {
        fail("expected comparison '==', '<' or '>'");
      }
      ++i_;
      n.b = expr();
      expect_kw("then");
      n.c = expr();
      expect_kw("else");
      n.d = expr();
      return add(std::move(n));
    }
    if (t.text == "loop" || t.text == "grow") {
      Node n;
      n.op = t.text == "loop" ? Op::kLoop : Op::kGrow;
      ++i_;
      return add(std::move(n));
    }
    if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
    for (std::size_t k = scope_.size(); k-- > 0;) {
      if (scope_[k] == t.text) {
        Node n;
        n.op = Op::kVar;
        n.name = t.text;
        n.value = static_cast<std::int64_t>(scope_.size() - 1 - k);
        ++i_;
        return add(std::move(n));
      }
    }
    fail("unbound identifier '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Program* prog_ = nullptr;
  std::vector<std::string> scope_;
};

void print_src(std::ostream& out, const Src& s) {
  switch (s.kind) {
    case SrcKind::kOpp: out << "opp"; break;
    case SrcKind::kSelf: out << "self"; break;
    case SrcKind::kQuoted: out << quote_source(s.quoted->canonical); break;
  }
}

void print_node(std::ostream& out, const Program& p, int idx) {
  const Node& n = p.nodes[idx];
  switch (n.op) {
    case Op::kConst:
      if (!n.bare) out << "const ";
      out << n.value;
      break;
    case Op::kBestResp:
      out << "bestresp(";
      print_node(out, p, n.a);
      out << ")";
      break;
    case Op::kSim:
      out << "sim(";
      print_src(out, n.prog);
      out << ", ";
      print_src(out, n.against);
      out << ", ";
      if (n.rest) {
        out << "rest";
      } else {
        out << n.value;
      }
      out << ")";
      break;
    case Op::kMatch:
      out << "match ";
      print_node(out, p, n.a);
      out << " { halted(" << n.name << ") => ";
      print_node(out, p, n.b);
      out << " | exhausted => ";
      print_node(out, p, n.c);
      out << " }";
      break;
    case Op::kIf:
      out << "if ";
      print_node(out, p, n.a);
      out << (n.cmp == Cmp::kEq ? " == " : n.cmp == Cmp::kLt ? " < " : " > ");
      print_node(out, p, n.b);
      out << " then ";
      print_node(out, p, n.c);
      out << " else ";
      print_node(out, p, n.d);
      break;
    case Op::kVar: out << n.name; break;
    case Op::kLoop: out << "loop"; break;
    case Op::kGrow: out << "grow"; break;
  }
}

}  // namespace

StrategyProgram parse_program(std::string_view text) {
  Parser parser(Lexer(text).run());
  return StrategyProgram(std::string(text), parser.run());
}

std::string print_program(const dsl::Program& program) {
  std::ostringstream out;
  print_node(out, program, program.root);
  return out.str();
}

std::string quote_source(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace intransit
