#include "surgery/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <variant>

#include "surgery/dehn.hpp"
#include "surgery/diagram.hpp"
#include "surgery/error.hpp"
#include "surgery/fixtures.hpp"
#include "surgery/manifold.hpp"
#include "surgery/morse.hpp"
#include "surgery/surgery1d2d.hpp"

namespace surgery::dsl {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Kind { Ident, Int, Real, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long long int_value = 0;
  double real_value = 0.0;
  Position pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "mesh" && src.substr(j, 4) == "-seq") {
        t.text = "mesh-seq";
        j += 4;
      }
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.text = std::string(src.substr(i, j - i));
      if (real) {
        t.kind = Token::Kind::Real;
        auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.real_value);
        if (r.ec != std::errc()) throw ParseError("bad number '" + t.text + "'", line, col);
      } else {
        t.kind = Token::Kind::Int;
        auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.int_value);
        if (r.ec != std::errc()) throw ParseError("integer out of range '" + t.text + "'", line, col);
      }
      advance(j - i);
    } else if (c == '"') {
      std::string s;
      advance();
      while (true) {
        if (i >= src.size()) throw ParseError("unterminated string", t.pos.line, t.pos.column);
        char d = src[i];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\' && i + 1 < src.size()) {
          char e = src[i + 1];
          s += e == 'n' ? '\n' : e;
          advance(2);
          continue;
        }
        s += d;
        advance();
      }
      t.kind = Token::Kind::String;
      t.text = std::move(s);
    } else if (std::string_view("()[],;=-").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

// Identifiers that need no binding.
const std::set<std::string>& symbols() {
  static const std::set<std::string> s = {
      "coherent", "crossed", "trivial", "nonsep", "S3", "S1xS2", "Poincare", "obj", "json",
      "unknot", "hopf", "trefoil", "right_trefoil", "left_trefoil", "figure_eight", "dna"};
  return s;
}

const std::set<std::string>& declaration_keywords() {
  static const std::set<std::string> s = {"link", "framed", "surgery", "surface", "manifold"};
  return s;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program p;
    while (peek().kind != Token::Kind::End) p.statements.push_back(statement());
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_punct(const Token& t, char c) const { return t.kind == Token::Kind::Punct && t.text[0] == c; }
  bool is_ident(const Token& t, std::string_view s) const {
    return t.kind == Token::Kind::Ident && t.text == s;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.pos.line, t.pos.column);
  }
  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::String: return "string";
      default: return "'" + t.text + "'";
    }
  }
  void expect(char c) {
    const Token& t = peek();
    if (!is_punct(t, c)) fail(t, std::string("expected '") + c + "', found " + describe(t));
    next();
  }
  std::string expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail(t, std::string("expected ") + what + ", found " + describe(t));
    return next().text;
  }

  Statement statement() {
    Statement s;
    const Token& first = peek();
    s.pos = first.pos;
    if (first.kind != Token::Kind::Ident) fail(first, "expected a statement, found " + describe(first));
    if (first.text == "print") {
      next();
      s.kind = Statement::Kind::Print;
      s.expr = expr();
      if (s.expr->kind != Expr::Kind::Call)
        throw ParseError("print expects a query such as components(K)", s.expr->pos.line, s.expr->pos.column);
    } else if (first.text == "mesh" || first.text == "mesh-seq") {
      next();
      s.kind = first.text == "mesh" ? Statement::Kind::Mesh : Statement::Kind::MeshSeq;
      const Token& path = peek();
      if (path.kind != Token::Kind::String) fail(path, "expected an output path string, found " + describe(path));
      s.path = next().text;
      expect('=');
      s.expr = expr();
      const char* want = s.kind == Statement::Kind::Mesh ? "levelset" : "handle";
      if (s.expr->kind != Expr::Kind::Call || s.expr->text != want)
        throw ParseError(std::string("expected ") + want + "(...)", s.expr->pos.line, s.expr->pos.column);
    } else if (declaration_keywords().count(first.text) && peek(1).kind == Token::Kind::Ident &&
               is_punct(peek(2), '=')) {
      s.declared = next().text;
      s.name = next().text;
      next();
      s.expr = expr();
    } else if (is_punct(peek(1), '=')) {
      s.name = next().text;
      next();
      s.expr = expr();
    } else {
      fail(first, "expected a statement, found " + describe(first));
    }
    check_refs(*s.expr);
    expect(';');
    if (s.kind == Statement::Kind::Bind) bound_.insert(s.name);
    return s;
  }

  std::shared_ptr<Expr> expr() {
    auto base = primary();
    while (is_ident(peek(), "with")) {
      auto w = std::make_shared<Expr>();
      w->kind = Expr::Kind::With;
      w->pos = next().pos;
      const Token& clause = peek();
      w->text = expect_ident("a with-clause");
      if (w->text == "framing") {
        auto lst = primary();
        if (lst->kind != Expr::Kind::List) throw ParseError("framing expects a list [..]", lst->pos.line, lst->pos.column);
        w->args.push_back({"", lst});
      } else if (w->text == "join" || w->text == "cut") {
        expect('(');
        w->args = arguments();
      } else {
        fail(clause, "unknown with-clause '" + w->text + "' (expected framing, join or cut)");
      }
      w->items.push_back(base);
      base = w;
    }
    return base;
  }

  std::vector<Arg> arguments() {
    std::vector<Arg> args;
    if (is_punct(peek(), ')')) {
      next();
      return args;
    }
    while (true) {
      Arg a;
      if (peek().kind == Token::Kind::Ident && is_punct(peek(1), '=')) {
        a.name = next().text;
        next();
      }
      a.value = expr();
      args.push_back(std::move(a));
      if (is_punct(peek(), ',')) {
        next();
        continue;
      }
      expect(')');
      return args;
    }
  }

  std::shared_ptr<Expr> primary() {
    auto e = std::make_shared<Expr>();
    const Token& t = peek();
    e->pos = t.pos;
    switch (t.kind) {
      case Token::Kind::Int:
        e->kind = Expr::Kind::Int;
        e->int_value = next().int_value;
        return e;
      case Token::Kind::Real:
        e->kind = Expr::Kind::Real;
        e->real_value = next().real_value;
        return e;
      case Token::Kind::String:
        e->kind = Expr::Kind::String;
        e->text = next().text;
        return e;
      case Token::Kind::Punct:
        if (is_punct(t, '-')) {
          next();
          const Token& n = peek();
          if (n.kind == Token::Kind::Int) {
            e->kind = Expr::Kind::Int;
            e->int_value = -next().int_value;
            return e;
          }
          if (n.kind == Token::Kind::Real) {
            e->kind = Expr::Kind::Real;
            e->real_value = -next().real_value;
            return e;
          }
          fail(n, "expected a number after '-'");
        }
        if (is_punct(t, '[')) {
          next();
          e->kind = Expr::Kind::List;
          if (is_punct(peek(), ']')) {
            next();
            return e;
          }
          while (true) {
            e->items.push_back(expr());
            if (is_punct(peek(), ',')) {
              next();
              continue;
            }
            expect(']');
            return e;
          }
        }
        fail(t, "expected an expression, found " + describe(t));
      case Token::Kind::Ident: {
        e->text = next().text;
        if (e->text == "pd" && peek().kind == Token::Kind::String) {
          e->kind = Expr::Kind::Call;
          e->args.push_back({"", primary()});
          return e;
        }
        if (e->text == "surface" && is_punct(peek(), '[')) {
          e->kind = Expr::Kind::Call;
          e->args.push_back({"", primary()});
          return e;
        }
        if (is_punct(peek(), '(')) {
          next();
          e->kind = Expr::Kind::Call;
          e->args = arguments();
          return e;
        }
        e->kind = Expr::Kind::Ident;
        return e;
      }
      case Token::Kind::End:
        break;
    }
    fail(t, "expected an expression, found " + describe(t));
  }

  void check_refs(const Expr& e) const {
    if (e.kind == Expr::Kind::Ident && !bound_.count(e.text) && !symbols().count(e.text))
      throw ParseError("unbound name '" + e.text + "'", e.pos.line, e.pos.column);
    for (const auto& a : e.args) check_refs(*a.value);
    for (const auto& i : e.items) check_refs(*i);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> bound_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(tokenize(text)).parse(); }

// ---------------------------------------------------------------------------
// Values

namespace {

struct Symbol {
  std::string name;
};

struct Surgery {
  FramedLink link;
};

struct Value;
using ValueList = std::vector<Value>;

struct Value {
  std::variant<long long, double, std::string, Symbol, LinkDiagram, FramedLink, Surgery,
               SurfaceDescriptor, ManifoldExpr, ArcRef, ValueList>
      v;
};

const char* type_name(const Value& x) {
  static const char* names[] = {"integer", "number",  "string",  "name",  "link",   "framed link",
                                "surgery", "surface", "manifold", "arc", "list"};
  return names[x.v.index()];
}

// Runtime failure tied to a source position.
struct EvalError : Error {
  EvalError(const std::string& msg, Position p) : Error(msg), pos(p) {}
  Position pos;
};

[[noreturn]] void type_error(const std::string& what, const Value& got, Position pos) {
  throw EvalError("type error: " + what + ", got " + type_name(got), pos);
}

json bigint_json(const BigInt& b) {
  if (b >= std::numeric_limits<long long>::min() && b <= std::numeric_limits<long long>::max())
    return static_cast<long long>(b);
  return b.str();
}

json h1_json(const AbelianGroupDecomp& g) {
  json j;
  j["rank"] = g.free_rank;
  j["torsion"] = json::array();
  for (const auto& d : g.torsion) j["torsion"].push_back(bigint_json(d));
  return j;
}

std::string surgered_label(const FramedLink& fl) {
  std::string s = to_pd(fl.diagram) + " framing [";
  for (std::size_t i = 0; i < fl.framings.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(fl.framings[i]);
  }
  return s + "]";
}

class Interpreter {
 public:
  explicit Interpreter(const RunOptions& o) : opts_(o), rng_(o.seed) {}

  Report run(const Program& p) {
    Report r;
    r.json["schema"] = 1;
    r.json["results"] = json::array();
    r.json["errors"] = json::array();
    for (std::size_t i = 0; i < p.statements.size(); ++i) {
      const auto& s = p.statements[i];
      stmt_index_ = i + 1;
      try {
        execute(s, r.json["results"]);
      } catch (const EvalError& e) {
        record(r, e.what(), e.pos);
      } catch (const Error& e) {
        record(r, e.what(), s.pos);
      }
    }
    return r;
  }

 private:
  void record(Report& r, const std::string& msg, Position pos) {
    json e;
    e["statement"] = stmt_index_;
    e["line"] = pos.line;
    e["column"] = pos.column;
    e["message"] = msg;
    r.json["errors"].push_back(std::move(e));
    ++r.error_count;
  }

  json entry(const Statement& s) const {
    json j;
    j["statement"] = stmt_index_;
    j["line"] = s.pos.line;
    return j;
  }

  void execute(const Statement& s, json& results) {
    switch (s.kind) {
      case Statement::Kind::Bind: {
        Value v = eval(*s.expr);
        if (!s.declared.empty()) v = coerce(std::move(v), s.declared, s.expr->pos);
        env_[s.name] = std::move(v);
        return;
      }
      case Statement::Kind::Print: {
        json j = entry(s);
        j[s.expr->text] = query(*s.expr);
        results.push_back(std::move(j));
        return;
      }
      case Statement::Kind::Mesh: {
        json j = entry(s);
        j["mesh"] = mesh(s);
        results.push_back(std::move(j));
        return;
      }
      case Statement::Kind::MeshSeq: {
        json j = entry(s);
        j["mesh_seq"] = mesh_seq(s);
        results.push_back(std::move(j));
        return;
      }
    }
  }

  Value coerce(Value v, const std::string& declared, Position pos) {
    if (declared == "link" && std::holds_alternative<LinkDiagram>(v.v)) return v;
    if (declared == "framed" && std::holds_alternative<FramedLink>(v.v)) return v;
    if (declared == "surgery") {
      if (std::holds_alternative<Surgery>(v.v)) return v;
      if (auto* f = std::get_if<FramedLink>(&v.v)) return Value{Surgery{*f}};
    }
    if (declared == "surface" && std::holds_alternative<SurfaceDescriptor>(v.v)) return v;
    if (declared == "manifold") return Value{as_manifold(v, pos)};
    type_error(declared + " declaration expects a " + declared, v, pos);
  }

  // -- evaluation ----------------------------------------------------------

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Int: return {e.int_value};
      case Expr::Kind::Real: return {e.real_value};
      case Expr::Kind::String: return {e.text};
      case Expr::Kind::List: {
        ValueList l;
        for (const auto& i : e.items) l.push_back(eval(*i));
        return {std::move(l)};
      }
      case Expr::Kind::Ident: {
        auto it = env_.find(e.text);
        if (it != env_.end()) return it->second;
        if (e.text == "S3") return {ManifoldExpr::single(PrimeToken::s3())};
        if (e.text == "S1xS2") return {ManifoldExpr::single(PrimeToken::s1xs2())};
        if (e.text == "Poincare") return {ManifoldExpr::single(PrimeToken::poincare())};
        if (symbols().count(e.text)) return {Symbol{e.text}};
        throw EvalError("unbound name '" + e.text + "'", e.pos);
      }
      case Expr::Kind::Call:
        try {
          return call(e);
        } catch (const EvalError&) {
          throw;
        } catch (const Error& err) {
          throw EvalError(e.text + ": " + err.what(), e.pos);
        }
      case Expr::Kind::With:
        try {
          return with(e);
        } catch (const EvalError&) {
          throw;
        } catch (const Error& err) {
          throw EvalError(e.text + ": " + err.what(), e.pos);
        }
    }
    throw EvalError("internal: unknown expression", e.pos);
  }

  struct Args {
    const Expr& call;
    std::vector<std::pair<Value, Position>> positional;
    std::map<std::string, std::pair<Value, Position>> named;

    const std::pair<Value, Position>* find(std::size_t index, const std::string& name) const {
      if (index < positional.size()) return &positional[index];
      auto it = named.find(name);
      return it == named.end() ? nullptr : &it->second;
    }
    const std::pair<Value, Position>& need(std::size_t index, const std::string& name) const {
      if (auto* a = find(index, name)) return *a;
      throw EvalError(call.text + ": missing argument '" + name + "'", call.pos);
    }
  };

  Args collect(const Expr& e, std::initializer_list<const char*> names) {
    Args a{e, {}, {}};
    for (const auto& arg : e.args) {
      if (arg.name.empty()) {
        if (!a.named.empty()) throw EvalError("positional argument after named one", arg.value->pos);
        a.positional.push_back({eval(*arg.value), arg.value->pos});
      } else {
        if (std::find_if(names.begin(), names.end(), [&](const char* n) { return arg.name == n; }) == names.end())
          throw EvalError(e.text + ": unknown argument '" + arg.name + "'", arg.value->pos);
        if (!a.named.emplace(arg.name, std::make_pair(eval(*arg.value), arg.value->pos)).second)
          throw EvalError(e.text + ": repeated argument '" + arg.name + "'", arg.value->pos);
      }
    }
    if (a.positional.size() > names.size())
      throw EvalError(e.text + ": too many arguments", e.pos);
    std::size_t k = 0;
    for (const char* n : names) {
      if (k < a.positional.size() && a.named.count(n))
        throw EvalError(e.text + ": argument '" + std::string(n) + "' given twice", e.pos);
      ++k;
    }
    return a;
  }

  static long long as_int(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* i = std::get_if<long long>(&a.first.v)) return *i;
    type_error(what + " must be an integer", a.first, a.second);
  }
  static int as_small_int(const std::pair<Value, Position>& a, const std::string& what) {
    long long v = as_int(a, what);
    if (v < -1000000000LL || v > 1000000000LL) throw EvalError(what + " is out of range", a.second);
    return static_cast<int>(v);
  }
  static double as_real(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* i = std::get_if<long long>(&a.first.v)) return static_cast<double>(*i);
    if (auto* d = std::get_if<double>(&a.first.v)) return *d;
    type_error(what + " must be a number", a.first, a.second);
  }
  static std::string as_name(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* s = std::get_if<Symbol>(&a.first.v)) return s->name;
    if (auto* s = std::get_if<std::string>(&a.first.v)) return *s;
    type_error(what + " must be a name", a.first, a.second);
  }
  static std::vector<int> as_int_list(const std::pair<Value, Position>& a, const std::string& what) {
    auto* l = std::get_if<ValueList>(&a.first.v);
    if (!l) type_error(what + " must be a list of integers", a.first, a.second);
    std::vector<int> out;
    for (const auto& x : *l) out.push_back(as_small_int({x, a.second}, what));
    return out;
  }
  static const LinkDiagram& as_link(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* d = std::get_if<LinkDiagram>(&a.first.v)) return *d;
    type_error(what + " expects a link", a.first, a.second);
  }
  static FramedLink as_framed(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* f = std::get_if<FramedLink>(&a.first.v)) return *f;
    if (auto* s = std::get_if<Surgery>(&a.first.v)) return s->link;
    type_error(what + " expects a framed link or surgery", a.first, a.second);
  }
  static const SurfaceDescriptor& as_surface(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* s = std::get_if<SurfaceDescriptor>(&a.first.v)) return *s;
    type_error(what + " expects a surface", a.first, a.second);
  }
  static ManifoldExpr as_manifold(const Value& v, Position pos) {
    if (auto* m = std::get_if<ManifoldExpr>(&v.v)) return *m;
    if (auto* s = std::get_if<Surgery>(&v.v))
      return ManifoldExpr::single(PrimeToken::surgered(surgered_label(s->link), h1_of_surgery(s->link)));
    type_error("expected a manifold", v, pos);
  }
  static ManifoldExpr as_manifold(const std::pair<Value, Position>& a) { return as_manifold(a.first, a.second); }

  Value call(const Expr& e) {
    const std::string& f = e.text;
    if (f == "pd") {
      auto a = collect(e, {"text"});
      auto text = a.need(0, "text");
      auto* s = std::get_if<std::string>(&text.first.v);
      if (!s) type_error("pd expects a string", text.first, text.second);
      return {parse_pd(*s)};
    }
    if (f == "braid") {
      auto a = collect(e, {"strands", "word"});
      int n = as_small_int(a.need(0, "strands"), "strand count");
      auto word = as_int_list(a.need(1, "word"), "braid word");
      return {braid_closure(n, word)};
    }
    if (f == "mirror") {
      auto a = collect(e, {"link"});
      return {mirror(as_link(a.need(0, "link"), "mirror"))};
    }
    if (f == "union") {
      auto a = collect(e, {"first", "second"});
      const auto& x = a.need(0, "first");
      const auto& y = a.need(1, "second");
      if (std::holds_alternative<LinkDiagram>(x.first.v))
        return {disjoint_union(as_link(x, "union"), as_link(y, "union"))};
      if (std::holds_alternative<SurfaceDescriptor>(x.first.v)) {
        auto g = as_surface(x, "union").genera();
        auto h = as_surface(y, "union").genera();
        g.insert(g.end(), h.begin(), h.end());
        return {SurfaceDescriptor(g)};
      }
      return {disjoint_union(as_manifold(x), as_manifold(y))};
    }
    if (f == "reconnect") {
      auto a = collect(e, {"link", "first", "second", "kind"});
      const auto& d = as_link(a.need(0, "link"), "reconnect");
      SurgerySite1D site{arc(a.need(1, "first")), arc(a.need(2, "second")), Reconnection::Coherent};
      if (auto* k = a.find(3, "kind")) {
        auto kind = as_name(*k, "reconnection kind");
        if (kind == "crossed")
          site.reconnection = Reconnection::Crossed;
        else if (kind != "coherent")
          throw EvalError("reconnection kind must be coherent or crossed", k->second);
      }
      return {one_dim_zero_surgery(d, site)};
    }
    if (f == "loop") {
      auto a = collect(e, {"index"});
      return {ArcRef::loop(as_small_int(a.need(0, "index"), "loop index"))};
    }
    if (f == "random_braid") {
      auto a = collect(e, {"strands", "length"});
      int n = as_small_int(a.need(0, "strands"), "strand count");
      int len = as_small_int(a.need(1, "length"), "braid length");
      if (n < 2 || n > 64) throw EvalError("random_braid needs 2..64 strands", e.pos);
      if (len < 0 || len > 1000) throw EvalError("random_braid length must lie in 0..1000", e.pos);
      std::vector<int> word;
      std::uniform_int_distribution<int> gen(1, n - 1);
      for (int k = 0; k < len; ++k) {
        int g = gen(rng_);
        word.push_back(rng_() % 2 ? g : -g);
      }
      return {braid_closure(n, word)};
    }
    if (f == "fixture") {
      auto a = collect(e, {"name"});
      auto name = as_name(a.need(0, "name"), "fixture name");
      auto d = fixtures::by_name(name);
      if (!d) throw EvalError("unknown fixture '" + name + "'", e.pos);
      return {*d};
    }
    if (f == "dehn") {
      auto a = collect(e, {"framed"});
      return {Surgery{as_framed(a.need(0, "framed"), "dehn")}};
    }
    if (f == "surface") {
      auto a = collect(e, {"genera"});
      return {SurfaceDescriptor(as_int_list(a.need(0, "genera"), "genera"))};
    }
    if (f == "L") {
      auto a = collect(e, {"p", "q"});
      int p = as_small_int(a.need(0, "p"), "p");
      int q = 1;
      if (auto* qa = a.find(1, "q")) q = as_small_int(*qa, "q");
      return {ManifoldExpr::single(PrimeToken::lens(p, q))};
    }
    if (f == "join") {
      auto a = collect(e, {"first", "second", "a", "b"});
      if (a.positional.size() >= 2) return {connected_sum(as_manifold(a.positional[0]), as_manifold(a.positional[1]))};
      auto m = as_manifold(a.need(0, "first"));
      auto i = static_cast<std::size_t>(as_small_int(a.need(99, "a"), "component"));
      auto j = static_cast<std::size_t>(as_small_int(a.need(99, "b"), "component"));
      return {zero_surgery_expr(m, i, j)};
    }
    if (f == "join_self" || f == "unjoin") {
      auto a = collect(e, {"manifold", "c"});
      auto m = as_manifold(a.need(0, "manifold"));
      std::size_t c = 0;
      if (auto* ca = a.find(1, "c")) c = static_cast<std::size_t>(as_small_int(*ca, "component"));
      return {f == "join_self" ? zero_surgery_expr(m, c, c) : two_surgery_expr(m, c)};
    }
    throw EvalError("unknown function '" + f + "'", e.pos);
  }

  static ArcRef arc(const std::pair<Value, Position>& a) {
    if (auto* r = std::get_if<ArcRef>(&a.first.v)) return *r;
    if (auto* i = std::get_if<long long>(&a.first.v)) return ArcRef::edge(static_cast<int>(*i));
    type_error("arc must be an edge label or loop(k)", a.first, a.second);
  }

  Value with(const Expr& e) {
    Value base = eval(*e.items[0]);
    Position bpos = e.items[0]->pos;
    if (e.text == "framing") {
      LinkDiagram d;
      if (auto* l = std::get_if<LinkDiagram>(&base.v))
        d = *l;
      else if (auto* f = std::get_if<FramedLink>(&base.v))
        d = f->diagram;
      else
        type_error("framing applies to a link", base, bpos);
      auto a = collect(e, {"framings"});
      auto framings = as_int_list(a.need(0, "framings"), "framing");
      if (framings.size() != d.component_count())
        throw EvalError("type error: framing arity: " + std::to_string(framings.size()) +
                            " framing(s) for a link with " + std::to_string(d.component_count()) +
                            " component(s)",
                        e.pos);
      return {FramedLink(d, framings)};
    }
    auto* s = std::get_if<SurfaceDescriptor>(&base.v);
    if (!s) type_error(e.text + " applies to a surface", base, bpos);
    if (e.text == "join") {
      auto a = collect(e, {"first", "second"});
      JoinSite site{static_cast<std::size_t>(as_small_int(a.need(0, "first"), "component")),
                    static_cast<std::size_t>(as_small_int(a.need(1, "second"), "component"))};
      return {two_dim_zero_surgery(*s, site)};
    }
    // cut(c, trivial | nonsep | split(g1, g2))
    if (e.args.size() != 2 || !e.args[0].name.empty() || !e.args[1].name.empty())
      throw EvalError("cut expects (component, trivial|nonsep|split(g1,g2))", e.pos);
    CutSite site;
    Value comp = eval(*e.args[0].value);
    site.component = static_cast<std::size_t>(as_small_int({comp, e.args[0].value->pos}, "component"));
    const Expr& kind = *e.args[1].value;
    if (kind.kind == Expr::Kind::Call && kind.text == "split") {
      auto a = collect(kind, {"g1", "g2"});
      site.kind = CurveKind::SeparatingSplit;
      site.split_first = as_small_int(a.need(0, "g1"), "genus");
      site.split_second = as_small_int(a.need(1, "g2"), "genus");
    } else if (kind.kind == Expr::Kind::Ident && kind.text == "trivial") {
      site.kind = CurveKind::TrivialSeparating;
    } else if (kind.kind == Expr::Kind::Ident && kind.text == "nonsep") {
      site.kind = CurveKind::NonSeparating;
    } else {
      throw EvalError("curve kind must be trivial, nonsep or split(g1,g2)", kind.pos);
    }
    return {two_dim_one_surgery(*s, site)};
  }

  // -- queries -------------------------------------------------------------

  json query(const Expr& e) {
    try {
      return query_inner(e);
    } catch (const EvalError&) {
      throw;
    } catch (const Error& err) {
      throw EvalError(e.text + ": " + err.what(), e.pos);
    }
  }

  json query_inner(const Expr& e) {
    const std::string& q = e.text;
    if (q == "components") {
      auto a = collect(e, {"value"});
      const auto& x = a.need(0, "value");
      if (auto* d = std::get_if<LinkDiagram>(&x.first.v)) return d->component_count();
      if (auto* s = std::get_if<SurfaceDescriptor>(&x.first.v)) return s->component_count();
      if (auto* m = std::get_if<ManifoldExpr>(&x.first.v)) return m->component_count();
      return as_framed(x, "components").diagram.component_count();
    }
    if (q == "writhe") {
      auto a = collect(e, {"link"});
      return writhe(link_of(a.need(0, "link"), q));
    }
    if (q == "lk") {
      auto a = collect(e, {"link", "i", "j"});
      auto d = link_of(a.need(0, "link"), q);
      std::size_t i = 0, j = 1;
      if (auto* ia = a.find(1, "i")) i = static_cast<std::size_t>(as_small_int(*ia, "component"));
      if (auto* ja = a.find(2, "j")) j = static_cast<std::size_t>(as_small_int(*ja, "component"));
      return linking_number(d, i, j);
    }
    if (q == "bracket") {
      auto a = collect(e, {"link"});
      return kauffman_bracket(link_of(a.need(0, "link"), q)).to_string();
    }
    if (q == "jones") {
      auto a = collect(e, {"link"});
      return normalized_bracket(link_of(a.need(0, "link"), q)).to_string();
    }
    if (q == "pd") {
      auto a = collect(e, {"link"});
      return to_pd(link_of(a.need(0, "link"), q));
    }
    if (q == "h1") {
      auto a = collect(e, {"value"});
      const auto& x = a.need(0, "value");
      if (auto* m = std::get_if<ManifoldExpr>(&x.first.v)) {
        auto hs = h1_expr(*m);
        if (hs.size() == 1) return h1_json(hs[0]);
        json arr = json::array();
        for (const auto& h : hs) arr.push_back(h1_json(h));
        return arr;
      }
      return h1_json(h1_of_surgery(as_framed(x, "h1")));
    }
    if (q == "abelianization") {
      auto a = collect(e, {"value"});
      return h1_json(abelianization(surgery_group(as_framed(a.need(0, "value"), q))));
    }
    if (q == "order") {
      auto a = collect(e, {"value", "max"});
      auto fl = as_framed(a.need(0, "value"), "order");
      std::size_t bound = opts_.max_cosets;
      if (auto* m = a.find(1, "max")) {
        long long v = as_int(*m, "max");
        if (v < 1 || v > 50000000) throw EvalError("max must lie in 1..50000000", m->second);
        bound = static_cast<std::size_t>(v);
      }
      auto r = todd_coxeter(tietze_simplify(surgery_group(fl)), bound);
      if (r.finite()) return r.order;
      return "exceeded";
    }
    if (q == "presentation") {
      auto a = collect(e, {"value"});
      auto p = tietze_simplify(surgery_group(as_framed(a.need(0, "value"), q)));
      json j;
      j["generators"] = p.generator_count;
      j["relators"] = json::array();
      for (const auto& r : p.relators) j["relators"].push_back(r);
      return j;
    }
    if (q == "linking_matrix") {
      auto a = collect(e, {"value"});
      auto m = linking_matrix(as_framed(a.need(0, "value"), q));
      json rows = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(bigint_json(m(i, j)));
        rows.push_back(row);
      }
      return rows;
    }
    if (q == "genus") {
      auto a = collect(e, {"surface"});
      return as_surface(a.need(0, "surface"), q).genera();
    }
    if (q == "euler") {
      auto a = collect(e, {"surface"});
      return as_surface(a.need(0, "surface"), q).euler_characteristic();
    }
    if (q == "expr") {
      auto a = collect(e, {"manifold"});
      return as_manifold(a.need(0, "manifold")).to_string();
    }
    throw EvalError("unknown query '" + q + "'", e.pos);
  }

  static LinkDiagram link_of(const std::pair<Value, Position>& a, const std::string& what) {
    if (auto* d = std::get_if<LinkDiagram>(&a.first.v)) return *d;
    return as_framed(a, what).diagram;
  }

  // -- meshes --------------------------------------------------------------

  MorseForm form_of(const Args& a) {
    MorseForm f;
    if (auto* d = a.find(99, "dim")) f.ambient_dim = as_small_int(*d, "dim");
    if (auto* k = a.find(99, "index")) f.index = as_small_int(*k, "index");
    if (auto* w = a.find(99, "window")) f.window = as_real(*w, "window");
    f.validate();
    return f;
  }

  std::filesystem::path resolve(const std::string& p) const {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : opts_.mesh_root / path;
  }

  void write_file(const std::filesystem::path& path, const std::string& bytes, Position pos) const {
    if (!opts_.write_meshes) return;
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EvalError("cannot write '" + path.string() + "'", pos);
    out << bytes;
    if (!out) throw EvalError("failed writing '" + path.string() + "'", pos);
  }

  static json pairing_json(const LevelSetMesh& m) {
    json arr = json::array();
    for (const auto& group : pairing_signature(m)) {
      json g = json::array();
      for (auto q : group) g.push_back(to_string(q));
      arr.push_back(g);
    }
    return arr;
  }

  json mesh(const Statement& s) {
    const Expr& e = *s.expr;
    auto a = collect(e, {"dim", "index", "t", "res", "window"});
    if (!a.positional.empty()) throw EvalError("levelset takes named arguments only", e.pos);
    MorseForm f = form_of(a);
    double t = 0.0;
    if (auto* ta = a.find(99, "t")) t = as_real(*ta, "t");
    int res = 32;
    if (auto* r = a.find(99, "res")) res = as_small_int(*r, "res");
    MeshFormat fmt;
    auto ext = std::filesystem::path(s.path).extension().string();
    if (ext == ".obj")
      fmt = MeshFormat::Obj;
    else if (ext == ".json")
      fmt = MeshFormat::Json;
    else
      throw EvalError("mesh path must end in .obj or .json", s.pos);
    LevelSetMesh m;
    try {
      m = sample_level_set(f, t, res);
    } catch (const EvalError&) {
      throw;
    } catch (const Error& err) {
      throw EvalError(std::string("levelset: ") + err.what(), e.pos);
    }
    write_file(resolve(s.path), emit_mesh(m, fmt), s.pos);
    json j;
    j["path"] = s.path;
    j["t"] = t;
    j["components"] = m.component_count;
    j["vertices"] = m.vertices.size();
    j["cells"] = m.cells.size();
    if (f.ambient_dim == 2) j["pairing"] = pairing_json(m);
    return j;
  }

  json mesh_seq(const Statement& s) {
    const Expr& e = *s.expr;
    auto a = collect(e, {"dim", "index", "steps", "res", "window", "format"});
    if (!a.positional.empty()) throw EvalError("handle takes named arguments only", e.pos);
    MorseForm f = form_of(a);
    int steps = 5, res = 32;
    if (auto* st = a.find(99, "steps")) steps = as_small_int(*st, "steps");
    if (auto* r = a.find(99, "res")) res = as_small_int(*r, "res");
    MeshFormat fmt = MeshFormat::Obj;
    std::string ext = "obj";
    if (auto* fm = a.find(99, "format")) {
      ext = as_name(*fm, "format");
      fmt = mesh_format_from_name(ext);
    }
    std::vector<LevelSetMesh> slices;
    try {
      slices = handle_slices(f, steps, res);
    } catch (const Error& err) {
      throw EvalError(std::string("handle: ") + err.what(), e.pos);
    }
    json j;
    j["dir"] = s.path;
    j["levels"] = json::array();
    j["components"] = json::array();
    j["files"] = json::array();
    if (f.ambient_dim == 2) j["pairing"] = json::array();
    for (std::size_t k = 0; k < slices.size(); ++k) {
      std::string name = "slice_" + std::to_string(k) + "." + ext;
      write_file(resolve(s.path) / name, emit_mesh(slices[k], fmt), s.pos);
      j["levels"].push_back(slices[k].t);
      j["components"].push_back(slices[k].component_count);
      j["files"].push_back(name);
      if (f.ambient_dim == 2) j["pairing"].push_back(pairing_json(slices[k]));
    }
    return j;
  }

  RunOptions opts_;
  std::mt19937_64 rng_;
  std::map<std::string, Value> env_;
  std::size_t stmt_index_ = 0;
};

}  // namespace

std::string Report::dump() const { return json.dump(2) + "\n"; }

Report run_program(const Program& p, const RunOptions& options) { return Interpreter(options).run(p); }

Report run_source(std::string_view text, const RunOptions& options) {
  try {
    return run_program(parse_program(text), options);
  } catch (const ParseError& e) {
    Report r;
    r.json["schema"] = 1;
    r.json["results"] = json::array();
    json err;
    err["statement"] = 0;
    err["line"] = e.line();
    err["column"] = e.column();
    std::string msg = e.what();
    // Drop the "line:col: " prefix; position has its own fields.
    auto colon = msg.find(": ");
    err["message"] = colon == std::string::npos ? msg : msg.substr(colon + 2);
    r.json["errors"] = json::array({err});
    r.error_count = 1;
    return r;
  }
}

}  // namespace surgery::dsl
