#include "cdc/syntax.hpp"

#include <cctype>
#include <functional>
#include <set>

#include "cdc/derived.hpp"
#include "cdc/errors.hpp"
#include "cdc/tangent.hpp"

namespace cdc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Tok {
  enum K { Ident, Zero, Bang, LAngle, RAngle, Comma, LParen, RParen, Plus, Ann, End } k;
  std::string text;
  std::string ann_dom, ann_cod;
  std::size_t b = 0, e = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Tok> run() {
    std::vector<Tok> out;
    for (;;) {
      skip();
      std::size_t b = i_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", "", "", b, b});
        return out;
      }
      char ch = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        while (i_ < s_.size() && s_[i_] == '\'') ++i_;
        out.push_back({Tok::Ident, s_.substr(b, i_ - b), "", "", b, i_});
        continue;
      }
      ++i_;
      switch (ch) {
        case '0': out.push_back({Tok::Zero, "0", "", "", b, i_}); break;
        case '!': out.push_back({Tok::Bang, "!", "", "", b, i_}); break;
        case '<': out.push_back({Tok::LAngle, "<", "", "", b, i_}); break;
        case '>': out.push_back({Tok::RAngle, ">", "", "", b, i_}); break;
        case ',': out.push_back({Tok::Comma, ",", "", "", b, i_}); break;
        case '(': out.push_back({Tok::LParen, "(", "", "", b, i_}); break;
        case ')': out.push_back({Tok::RParen, ")", "", "", b, i_}); break;
        case '+': out.push_back({Tok::Plus, "+", "", "", b, i_}); break;
        case ':': {
          Tok t{Tok::Ann, ":", "", "", b, 0};
          t.ann_dom = object_text();
          std::size_t save = i_;
          skip();
          if (s_.compare(i_, 2, "->") == 0) {
            i_ += 2;
            t.ann_cod = object_text();
          } else {
            i_ = save;
          }
          t.e = i_;
          out.push_back(t);
          break;
        }
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", b, i_);
      }
    }
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  // An object in an annotation is either parenthesised or written without
  // spaces, so that the surrounding `x` and `o` operators stay unambiguous.
  std::string object_text() {
    skip();
    std::size_t b = i_;
    if (i_ < s_.size() && s_[i_] == '(') {
      int depth = 0;
      do {
        if (s_[i_] == '(') ++depth;
        if (s_[i_] == ')') --depth;
        ++i_;
      } while (i_ < s_.size() && depth > 0);
      if (depth != 0) throw ParseError("unbalanced parentheses in type annotation", b, i_);
    } else {
      while (i_ < s_.size()) {
        char c = s_[i_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
          ++i_;
        } else if (s_.compare(i_, 2, "=>") == 0) {
          i_ += 2;
        } else {
          break;
        }
      }
    }
    if (b == i_) throw ParseError("expected an object after ':'", b, b + 1);
    return s_.substr(b, i_ - b);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Type terms with union-find

struct TT {
  enum K { Var, Const, Prod, Exp } k;
  Obj obj;  // Const: a unit or base object
  int l = -1, r = -1;
};

class Types {
 public:
  int fresh() { return push({TT::Var, Obj(), -1, -1}); }
  int prod(int a, int b) { return push({TT::Prod, Obj(), a, b}); }
  int exp(int a, int b) { return push({TT::Exp, Obj(), a, b}); }
  int tan(int a) { return prod(a, a); }
  int unit() { return push({TT::Const, Obj::unit(), -1, -1}); }

  int from_obj(const Obj& o) {
    switch (o.kind()) {
      case Obj::Kind::Prod: return prod(from_obj(o.left()), from_obj(o.right()));
      case Obj::Kind::Exp: return exp(from_obj(o.left()), from_obj(o.right()));
      default: return push({TT::Const, o, -1, -1});
    }
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Returns false on a clash; the caller reports it.
  bool unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    const TT& x = t_[a];
    const TT& y = t_[b];
    if (x.k == TT::Var) return bind(a, b);
    if (y.k == TT::Var) return bind(b, a);
    if (x.k != y.k) return false;
    if (x.k == TT::Const) return x.obj == y.obj;
    int xl = x.l, xr = x.r, yl = y.l, yr = y.r;
    parent_[a] = b;
    return unify(xl, yl) && unify(xr, yr);
  }

  std::string show(int v) {
    v = find(v);
    const TT& x = t_[v];
    switch (x.k) {
      case TT::Var: return "?" + std::to_string(v);
      case TT::Const: return x.obj.str();
      case TT::Prod: return "(" + show(x.l) + "x" + show(x.r) + ")";
      case TT::Exp: return "(" + show(x.l) + "=>" + show(x.r) + ")";
    }
    return "?";
  }

  void collect_open(int v, std::vector<int>& out, std::set<int>& seen) {
    v = find(v);
    const TT& x = t_[v];
    if (x.k == TT::Var) {
      if (seen.insert(v).second) out.push_back(v);
    } else if (x.k == TT::Prod || x.k == TT::Exp) {
      collect_open(x.l, out, seen);
      collect_open(x.r, out, seen);
    }
  }

  void collect_names(int v, std::set<std::string>& names) {
    v = find(v);
    const TT& x = t_[v];
    if (x.k == TT::Const && x.obj.is_base()) names.insert(x.obj.name());
    if (x.k == TT::Prod || x.k == TT::Exp) {
      collect_names(x.l, names);
      collect_names(x.r, names);
    }
  }

  void set_default(int v, const Obj& o) { t_[find(v)] = {TT::Const, o, -1, -1}; }

  Obj resolve(int v) {
    v = find(v);
    const TT& x = t_[v];
    switch (x.k) {
      case TT::Var: throw Error("internal: unresolved type variable");
      case TT::Const: return x.obj;
      case TT::Prod: return Obj::prod(resolve(x.l), resolve(x.r));
      case TT::Exp: return Obj::exp(resolve(x.l), resolve(x.r));
    }
    return Obj();
  }

 private:
  int push(TT t) {
    t_.push_back(t);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(t_.size()) - 1;
  }

  bool occurs(int v, int in) {
    in = find(in);
    if (in == v) return true;
    const TT& x = t_[in];
    if (x.k == TT::Prod || x.k == TT::Exp) return occurs(v, x.l) || occurs(v, x.r);
    return false;
  }

  bool bind(int var, int to) {
    if (occurs(var, to)) return false;
    parent_[var] = to;
    return true;
  }

  std::vector<TT> t_;
  std::vector<int> parent_;
};

// ---------------------------------------------------------------------------
// Macros

struct MacroDef {
  std::string name;
  int nparams;
  // Given fresh parameter variables, returns (dom, cod).
  std::function<std::pair<int, int>(Types&, const std::vector<int>&)> schema;
  std::function<Mor(const std::vector<Obj>&)> build;
};

const std::vector<MacroDef>& macros() {
  using V = const std::vector<int>&;
  using O = const std::vector<Obj>&;
  static const std::vector<MacroDef> defs = {
      {"a", 3, [](Types& t, V p) { return std::pair{t.prod(t.prod(p[0], p[1]), p[2]), t.prod(p[0], t.prod(p[1], p[2]))}; },
       [](O o) { return derived::assoc(o[0], o[1], o[2]); }},
      {"l", 1, [](Types& t, V p) { return std::pair{p[0], t.prod(t.unit(), p[0])}; },
       [](O o) { return derived::lunit(o[0]); }},
      {"r", 1, [](Types& t, V p) { return std::pair{p[0], t.prod(p[0], t.unit())}; },
       [](O o) { return derived::runit(o[0]); }},
      {"c", 2, [](Types& t, V p) { return std::pair{t.prod(p[0], p[1]), t.prod(p[1], p[0])}; },
       [](O o) { return derived::sym(o[0], o[1]); }},
      {"delta", 1, [](Types& t, V p) { return std::pair{p[0], t.prod(p[0], p[0])}; },
       [](O o) { return derived::diag(o[0]); }},
      {"sigma", 4,
       [](Types& t, V p) {
         return std::pair{t.prod(t.prod(p[0], p[1]), t.prod(p[2], p[3])), t.prod(t.prod(p[0], p[2]), t.prod(p[1], p[3]))};
       },
       [](O o) { return derived::shuffle(o[0], o[1], o[2], o[3]); }},
      {"eta", 1, [](Types& t, V p) { return std::pair{p[0], t.tan(p[0])}; }, [](O o) { return tangent::eta(o[0]); }},
      {"mu", 1, [](Types& t, V p) { return std::pair{t.tan(t.tan(p[0])), t.tan(p[0])}; },
       [](O o) { return tangent::mu(o[0]); }},
      {"t", 2, [](Types& t, V p) { return std::pair{t.prod(p[0], t.tan(p[1])), t.tan(t.prod(p[0], p[1]))}; },
       [](O o) { return tangent::strength(o[0], o[1]); }},
      {"t'", 2, [](Types& t, V p) { return std::pair{t.prod(t.tan(p[0]), p[1]), t.tan(t.prod(p[0], p[1]))}; },
       [](O o) { return tangent::costrength(o[0], o[1]); }},
      {"psi", 2, [](Types& t, V p) { return std::pair{t.prod(t.tan(p[0]), t.tan(p[1])), t.tan(t.prod(p[0], p[1]))}; },
       [](O o) { return tangent::psi(o[0], o[1]); }},
      {"psitilde", 2,
       [](Types& t, V p) { return std::pair{t.prod(t.tan(p[0]), t.tan(p[1])), t.tan(t.prod(p[0], p[1]))}; },
       [](O o) { return tangent::psi_tilde(o[0], o[1]); }},
      {"psiinv", 2,
       [](Types& t, V p) { return std::pair{t.tan(t.prod(p[0], p[1])), t.prod(t.tan(p[0]), t.tan(p[1]))}; },
       [](O o) { return tangent::psi_inv(o[0], o[1]); }},
      {"psihat", 2,
       [](Types& t, V p) { return std::pair{t.tan(t.exp(p[0], p[1])), t.exp(t.tan(p[0]), t.tan(p[1]))}; },
       [](O o) { return tangent::psi_hat(o[0], o[1]); }},
      {"Tbar", 2, [](Types& t, V p) { return std::pair{t.exp(p[0], p[1]), t.exp(t.tan(p[0]), t.tan(p[1]))}; },
       [](O o) { return tangent::underline_T(o[0], o[1]); }},
      {"etaT", 1, [](Types& t, V p) { return std::pair{t.tan(p[0]), t.tan(t.tan(p[0]))}; },
       [](O o) { return tangent::eta_T(o[0]); }},
      {"Teta", 1, [](Types& t, V p) { return std::pair{t.tan(p[0]), t.tan(t.tan(p[0]))}; },
       [](O o) { return tangent::T_eta(o[0]); }},
      {"muT", 1, [](Types& t, V p) { return std::pair{t.tan(t.tan(t.tan(p[0]))), t.tan(t.tan(p[0]))}; },
       [](O o) { return tangent::mu_T(o[0]); }},
      {"Tmu", 1, [](Types& t, V p) { return std::pair{t.tan(t.tan(t.tan(p[0]))), t.tan(t.tan(p[0]))}; },
       [](O o) { return tangent::T_mu(o[0]); }},
      {"sigmaT", 1,
       [](Types& t, V p) {
         int x = t.tan(t.tan(t.tan(p[0])));
         return std::pair{x, x};
       },
       [](O o) { return tangent::sigma_T(o[0]); }},
      {"Tsigma", 1,
       [](Types& t, V p) {
         int x = t.tan(t.tan(t.tan(p[0])));
         return std::pair{x, x};
       },
       [](O o) { return tangent::T_sigma(o[0]); }},
  };
  return defs;
}

const MacroDef* find_macro(const std::string& name) {
  for (const auto& m : macros())
    if (m.name == name) return &m;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parser

enum class PK { Id, Pi1, Pi2, Zero, Bang, Ev, Pair, Compose, Sum, Times, Curry, D, T, Macro, Gen };

struct PNode {
  PK k;
  std::string name;
  int a = -1, b = -1;
  int dom = -1, cod = -1;
  std::vector<int> params;
  std::size_t begin = 0, end = 0;
  int src = 0;  // which input text
};

class Parser {
 public:
  Parser(const Registry& reg) : reg_(reg) {}

  int parse_text(const std::string& text, int src) {
    texts_.push_back(text);
    toks_ = Lexer(text).run();
    pos_ = 0;
    src_ = src;
    int root = expr();
    if (peek().k != Tok::End) fail("unexpected '" + peek().text + "'");
    return root;
  }

  void constrain_root(int root, const ParseOptions& opts) {
    if (opts.dom) unify(types_.from_obj(*opts.dom), nodes_[root].dom, root, "expected domain");
    if (opts.cod) unify(types_.from_obj(*opts.cod), nodes_[root].cod, root, "expected codomain");
  }

  void same_type(int r1, int r2) {
    unify(nodes_[r1].dom, nodes_[r2].dom, r2, "domains of the expressions differ");
    unify(nodes_[r1].cod, nodes_[r2].cod, r2, "codomains of the expressions differ");
  }

  // Gives every open type variable a fresh base object.
  void default_open(const std::vector<int>& roots) {
    std::set<std::string> used;
    std::vector<int> open;
    std::set<int> seen;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      types_.collect_names(nodes_[i].dom, used);
      types_.collect_names(nodes_[i].cod, used);
    }
    for (int r : roots) {
      types_.collect_open(nodes_[r].dom, open, seen);
      types_.collect_open(nodes_[r].cod, open, seen);
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      types_.collect_open(nodes_[i].dom, open, seen);
      types_.collect_open(nodes_[i].cod, open, seen);
      for (int p : nodes_[i].params) types_.collect_open(p, open, seen);
    }
    static const char* base_names[] = {"X", "Y", "Z", "W", "V"};
    std::size_t next = 0;
    auto next_name = [&]() {
      for (;;) {
        std::string n = next < 5 ? base_names[next] : std::string(base_names[next % 5]) + std::to_string(next / 5);
        ++next;
        if (!used.count(n)) return n;
      }
    };
    for (int v : open) types_.set_default(v, Obj::base(next_name(), 1));
  }

  Mor elaborate(int id) {
    const PNode& n = nodes_[id];
    auto obj = [&](int v) { return types_.resolve(v); };
    switch (n.k) {
      case PK::Id: return Mor::id(obj(n.dom));
      case PK::Pi1: return Mor::proj1(obj(n.params[0]), obj(n.params[1]));
      case PK::Pi2: return Mor::proj2(obj(n.params[0]), obj(n.params[1]));
      case PK::Zero: return Mor::zero(obj(n.dom), obj(n.cod));
      case PK::Bang: return Mor::bang(obj(n.dom));
      case PK::Ev: return Mor::ev(obj(n.params[0]), obj(n.params[1]));
      case PK::Pair: return Mor::pair(elaborate(n.a), elaborate(n.b));
      case PK::Compose: return Mor::compose(elaborate(n.a), elaborate(n.b));
      case PK::Sum: return Mor::sum(elaborate(n.a), elaborate(n.b));
      case PK::Times:
        return derived::times(elaborate(n.a), obj(nodes_[n.a].dom), elaborate(n.b), obj(nodes_[n.b].dom));
      case PK::Curry: {
        Obj d = obj(n.dom);
        return Mor::curry(elaborate(n.a), d, obj(n.params[0]));
      }
      case PK::D: return Mor::d(elaborate(n.a));
      case PK::T: return tangent::T_sym(elaborate(n.a), obj(nodes_[n.a].dom));
      case PK::Macro: {
        std::vector<Obj> os;
        for (int p : n.params) os.push_back(obj(p));
        return find_macro(n.name)->build(os);
      }
      case PK::Gen: return Mor::gen(n.name);
    }
    throw Error("internal: bad parse node");
  }

  const PNode& node(int i) const { return nodes_[i]; }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  bool is_ident(const char* s) const { return peek().k == Tok::Ident && peek().text == s; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, peek().b, peek().e); }
  void expect(Tok::K k, const char* what) {
    if (peek().k != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  int make(PK k, std::size_t b) {
    PNode n;
    n.k = k;
    n.begin = b;
    n.end = b;
    n.dom = types_.fresh();
    n.cod = types_.fresh();
    n.src = src_;
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void finish(int id) { nodes_[id].end = toks_[pos_ == 0 ? 0 : pos_ - 1].e; }

  std::string span_text(int id) const {
    const PNode& n = nodes_[id];
    return texts_[n.src].substr(n.begin, n.end - n.begin);
  }

  void unify(int a, int b, int at, const std::string& what) {
    // A failed unification may leave partial bindings behind, so the
    // message is rendered from the state before the attempt.
    std::string sa = types_.show(a), sb = types_.show(b);
    if (!types_.unify(a, b)) {
      const PNode& n = nodes_[at];
      throw TypeMismatch(span_text(at), sa, sb,
                         what + " (at " + std::to_string(n.begin) + ".." + std::to_string(n.end) + ")");
    }
  }

  int expr() {
    std::size_t b = peek().b;
    int l = comp();
    if (peek().k == Tok::Plus) {
      ++pos_;
      int r = expr();
      int id = make(PK::Sum, b);
      nodes_[id].a = l;
      nodes_[id].b = r;
      finish(id);
      unify(nodes_[id].dom, nodes_[l].dom, id, "summand domain");
      unify(nodes_[id].cod, nodes_[l].cod, id, "summand codomain");
      unify(nodes_[id].dom, nodes_[r].dom, id, "summand domain");
      unify(nodes_[id].cod, nodes_[r].cod, id, "summand codomain");
      return id;
    }
    return l;
  }

  int comp() {
    std::size_t b = peek().b;
    int l = prod();
    if (is_ident("o")) {
      ++pos_;
      int r = comp();
      int id = make(PK::Compose, b);
      nodes_[id].a = l;
      nodes_[id].b = r;
      finish(id);
      unify(nodes_[l].dom, nodes_[r].cod, id, "composition boundary");
      unify(nodes_[id].dom, nodes_[r].dom, id, "composite domain");
      unify(nodes_[id].cod, nodes_[l].cod, id, "composite codomain");
      return id;
    }
    return l;
  }

  int prod() {
    std::size_t b = peek().b;
    int l = post();
    while (is_ident("x")) {
      ++pos_;
      int r = post();
      int id = make(PK::Times, b);
      nodes_[id].a = l;
      nodes_[id].b = r;
      finish(id);
      unify(nodes_[id].dom, types_.prod(nodes_[l].dom, nodes_[r].dom), id, "product domain");
      unify(nodes_[id].cod, types_.prod(nodes_[l].cod, nodes_[r].cod), id, "product codomain");
      l = id;
    }
    return l;
  }

  int post() {
    int id = atom();
    while (peek().k == Tok::Ann) {
      const Tok& t = peek();
      Obj d = parse_ann(t.ann_dom, t);
      unify(types_.from_obj(d), nodes_[id].dom, id, "annotated domain");
      if (!t.ann_cod.empty()) {
        Obj c = parse_ann(t.ann_cod, t);
        unify(types_.from_obj(c), nodes_[id].cod, id, "annotated codomain");
      }
      ++pos_;
      finish(id);
    }
    return id;
  }

  Obj parse_ann(const std::string& text, const Tok& t) {
    try {
      return parse_obj(text);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad object in annotation: ") + e.what(), t.b, t.e);
    }
  }

  int unary(PK k, std::size_t b) {
    ++pos_;
    expect(Tok::LParen, "'('");
    int inner = expr();
    expect(Tok::RParen, "')'");
    int id = make(k, b);
    nodes_[id].a = inner;
    finish(id);
    return id;
  }

  int atom() {
    const Tok t = peek();
    switch (t.k) {
      case Tok::Zero: {
        ++pos_;
        int id = make(PK::Zero, t.b);
        finish(id);
        return id;
      }
      case Tok::Bang: {
        ++pos_;
        int id = make(PK::Bang, t.b);
        finish(id);
        unify(nodes_[id].cod, types_.unit(), id, "codomain of !");
        return id;
      }
      case Tok::LAngle: {
        ++pos_;
        int l = expr();
        expect(Tok::Comma, "',' in pairing");
        int r = expr();
        expect(Tok::RAngle, "'>' closing pairing");
        int id = make(PK::Pair, t.b);
        nodes_[id].a = l;
        nodes_[id].b = r;
        finish(id);
        unify(nodes_[id].dom, nodes_[l].dom, id, "pairing domain");
        unify(nodes_[id].dom, nodes_[r].dom, id, "pairing domain");
        unify(nodes_[id].cod, types_.prod(nodes_[l].cod, nodes_[r].cod), id, "pairing codomain");
        return id;
      }
      case Tok::LParen: {
        ++pos_;
        std::size_t save_b = t.b;
        int inner = expr();
        expect(Tok::RParen, "')'");
        (void)save_b;
        return inner;
      }
      case Tok::Ident:
        break;
      default:
        fail(t.k == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }

    const std::string& s = t.text;
    if (s == "curry" && toks_[pos_ + 1].k == Tok::LParen) {
      int id = unary(PK::Curry, t.b);
      int arg = types_.fresh();
      nodes_[id].params = {arg};
      int body = nodes_[id].a;
      unify(nodes_[body].dom, types_.prod(nodes_[id].dom, arg), id, "curry body domain");
      unify(nodes_[id].cod, types_.exp(arg, nodes_[body].cod), id, "curry codomain");
      return id;
    }
    if (s == "D" && toks_[pos_ + 1].k == Tok::LParen) {
      int id = unary(PK::D, t.b);
      int f = nodes_[id].a;
      unify(nodes_[id].dom, types_.tan(nodes_[f].dom), id, "domain of D");
      unify(nodes_[id].cod, nodes_[f].cod, id, "codomain of D");
      return id;
    }
    if (s == "T" && toks_[pos_ + 1].k == Tok::LParen) {
      int id = unary(PK::T, t.b);
      int f = nodes_[id].a;
      unify(nodes_[id].dom, types_.tan(nodes_[f].dom), id, "domain of T");
      unify(nodes_[id].cod, types_.tan(nodes_[f].cod), id, "codomain of T");
      return id;
    }
    if (s == "o" || s == "x") fail("operator '" + s + "' needs a left operand");
    ++pos_;
    if (s == "id") {
      int id = make(PK::Id, t.b);
      finish(id);
      unify(nodes_[id].dom, nodes_[id].cod, id, "identity");
      return id;
    }
    if (s == "pi1" || s == "pi2") {
      int id = make(s == "pi1" ? PK::Pi1 : PK::Pi2, t.b);
      finish(id);
      int l = types_.fresh(), r = types_.fresh();
      nodes_[id].params = {l, r};
      unify(nodes_[id].dom, types_.prod(l, r), id, "projection domain");
      unify(nodes_[id].cod, s == "pi1" ? l : r, id, "projection codomain");
      return id;
    }
    if (s == "ev") {
      int id = make(PK::Ev, t.b);
      finish(id);
      int x = types_.fresh(), y = types_.fresh();
      nodes_[id].params = {x, y};
      unify(nodes_[id].dom, types_.prod(types_.exp(x, y), x), id, "domain of ev");
      unify(nodes_[id].cod, y, id, "codomain of ev");
      return id;
    }
    if (const MacroDef* m = find_macro(s)) {
      int id = make(PK::Macro, t.b);
      nodes_[id].name = s;
      finish(id);
      std::vector<int> ps;
      for (int i = 0; i < m->nparams; ++i) ps.push_back(types_.fresh());
      nodes_[id].params = ps;
      auto [d, c] = m->schema(types_, ps);
      unify(nodes_[id].dom, d, id, "macro domain");
      unify(nodes_[id].cod, c, id, "macro codomain");
      return id;
    }
    if (is_reserved_name(s)) throw ParseError("'" + s + "' cannot be used here", t.b, t.e);
    const GenSig& g = reg_.get(s);
    int id = make(PK::Gen, t.b);
    nodes_[id].name = s;
    finish(id);
    unify(nodes_[id].dom, types_.from_obj(g.dom), id, "generator domain");
    unify(nodes_[id].cod, types_.from_obj(g.cod), id, "generator codomain");
    return id;
  }

  const Registry& reg_;
  Types types_;
  std::vector<PNode> nodes_;
  std::vector<Tok> toks_;
  std::vector<std::string> texts_;
  std::size_t pos_ = 0;
  int src_ = 0;
};

}  // namespace

const std::vector<std::string>& macro_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& m : macros()) v.push_back(m.name);
    return v;
  }();
  return names;
}

bool is_reserved_name(const std::string& name) {
  static const std::set<std::string> core = {"id", "pi1", "pi2", "ev", "curry", "D", "T", "x", "o"};
  if (core.count(name)) return true;
  for (const auto& m : macro_names())
    if (m == name) return true;
  return false;
}

std::vector<Mor> parse_same_type(const std::vector<std::string>& texts, const Registry& reg,
                                 const ParseOptions& opts) {
  Parser p(reg);
  std::vector<int> roots;
  for (std::size_t i = 0; i < texts.size(); ++i) roots.push_back(p.parse_text(texts[i], static_cast<int>(i)));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    p.constrain_root(roots[i], opts);
    if (i > 0) p.same_type(roots[0], roots[i]);
  }
  p.default_open(roots);
  std::vector<Mor> out;
  for (int r : roots) out.push_back(p.elaborate(r));
  return out;
}

Mor parse_mor(const std::string& text, const Registry& reg, const ParseOptions& opts) {
  return parse_same_type({text}, reg, opts).front();
}

}  // namespace cdc
