#include "cdc/mor.hpp"

#include <functional>

namespace cdc {

struct Mor::Node {
  Kind kind;
  Mor a, b;
  Obj o1, o2;
  std::string name;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Mor Mor::make(Kind k, const Mor* a, const Mor* b, const Obj* o1, const Obj* o2, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  std::size_t h = mix(1469598103934665603ULL, static_cast<std::size_t>(k));
  if (a) {
    n->a = *a;
    h = mix(h, a->hash());
    n->size += a->size();
  }
  if (b) {
    n->b = *b;
    h = mix(h, b->hash());
    n->size += b->size();
  }
  if (o1) {
    n->o1 = *o1;
    h = mix(h, o1->hash());
  }
  if (o2) {
    n->o2 = *o2;
    h = mix(h, o2->hash());
  }
  if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->hash = h;
  return Mor(std::shared_ptr<const Node>(std::move(n)));
}

Mor Mor::id(const Obj& x) { return make(Kind::Id, nullptr, nullptr, &x, nullptr, {}); }
Mor Mor::proj1(const Obj& l, const Obj& r) { return make(Kind::Proj1, nullptr, nullptr, &l, &r, {}); }
Mor Mor::proj2(const Obj& l, const Obj& r) { return make(Kind::Proj2, nullptr, nullptr, &l, &r, {}); }
Mor Mor::pair(const Mor& f, const Mor& g) { return make(Kind::Pair, &f, &g, nullptr, nullptr, {}); }
Mor Mor::compose(const Mor& f, const Mor& g) { return make(Kind::Compose, &f, &g, nullptr, nullptr, {}); }
Mor Mor::zero(const Obj& dom, const Obj& cod) {
  if (cod.is_unit()) return bang(dom);
  return make(Kind::Zero, nullptr, nullptr, &dom, &cod, {});
}
Mor Mor::sum(const Mor& f, const Mor& g) { return make(Kind::Sum, &f, &g, nullptr, nullptr, {}); }
Mor Mor::bang(const Obj& dom) { return make(Kind::Bang, nullptr, nullptr, &dom, nullptr, {}); }
Mor Mor::ev(const Obj& arg, const Obj& result) { return make(Kind::Ev, nullptr, nullptr, &arg, &result, {}); }
Mor Mor::curry(const Mor& f, const Obj& dom, const Obj& arg) {
  return make(Kind::Curry, &f, nullptr, &dom, &arg, {});
}
Mor Mor::gen(std::string name) { return make(Kind::Gen, nullptr, nullptr, nullptr, nullptr, std::move(name)); }
Mor Mor::d(const Mor& f) { return make(Kind::D, &f, nullptr, nullptr, nullptr, {}); }

Mor::Kind Mor::kind() const { return n_->kind; }
const Mor& Mor::first() const { return n_->a; }
const Mor& Mor::second() const { return n_->b; }
const Obj& Mor::obj1() const { return n_->o1; }
const Obj& Mor::obj2() const { return n_->o2; }
const std::string& Mor::name() const { return n_->name; }
std::size_t Mor::hash() const { return n_->hash; }
std::size_t Mor::size() const { return n_->size; }

bool operator==(const Mor& a, const Mor& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  if (x.name != y.name) return false;
  if (static_cast<bool>(x.a) && !(x.a == y.a)) return false;
  if (static_cast<bool>(x.b) && !(x.b == y.b)) return false;
  switch (x.kind) {
    case Mor::Kind::Id:
    case Mor::Kind::Bang:
      return x.o1 == y.o1;
    case Mor::Kind::Proj1:
    case Mor::Kind::Proj2:
    case Mor::Kind::Zero:
    case Mor::Kind::Ev:
    case Mor::Kind::Curry:
      return x.o1 == y.o1 && x.o2 == y.o2;
    default:
      return true;
  }
}

std::strong_ordering operator<=>(const Mor& a, const Mor& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  if (x.kind == Mor::Kind::Gen) {
    int c = x.name.compare(y.name);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  if (x.a) {
    if (auto c = x.a <=> y.a; c != 0) return c;
  }
  if (x.b) {
    if (auto c = x.b <=> y.b; c != 0) return c;
  }
  switch (x.kind) {
    case Mor::Kind::Id:
    case Mor::Kind::Bang:
      return x.o1 <=> y.o1;
    case Mor::Kind::Proj1:
    case Mor::Kind::Proj2:
    case Mor::Kind::Zero:
    case Mor::Kind::Ev:
    case Mor::Kind::Curry:
      if (auto c = x.o1 <=> y.o1; c != 0) return c;
      return x.o2 <=> y.o2;
    default:
      return std::strong_ordering::equal;
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence: 0 sum, 1 composition, 2 atom.

namespace {

std::string obj_ann(const Obj& o) {
  return o.is_prod() || o.is_exp() ? "(" + o.str() + ")" : o.str();
}

void print(const Mor& m, int prec, bool ann, std::string& out) {
  switch (m.kind()) {
    case Mor::Kind::Id:
      out += "id";
      if (ann) out += ":" + obj_ann(m.obj1());
      return;
    case Mor::Kind::Proj1:
    case Mor::Kind::Proj2:
      out += m.is(Mor::Kind::Proj1) ? "pi1" : "pi2";
      if (ann) out += ":" + obj_ann(Obj::prod(m.obj1(), m.obj2()));
      return;
    case Mor::Kind::Zero:
      out += "0";
      if (ann) out += ":" + obj_ann(m.obj1()) + "->" + obj_ann(m.obj2());
      return;
    case Mor::Kind::Bang:
      out += "!";
      if (ann) out += ":" + obj_ann(m.obj1());
      return;
    case Mor::Kind::Ev:
      out += "ev";
      if (ann) out += ":" + obj_ann(Obj::prod(Obj::exp(m.obj1(), m.obj2()), m.obj1()));
      return;
    case Mor::Kind::Gen:
      out += m.name();
      return;
    case Mor::Kind::Pair:
      out += "<";
      print(m.first(), 0, ann, out);
      out += ", ";
      print(m.second(), 0, ann, out);
      out += ">";
      return;
    case Mor::Kind::Curry:
      out += "curry(";
      print(m.first(), 0, ann, out);
      out += ")";
      if (ann) out += ":" + obj_ann(m.obj1());
      return;
    case Mor::Kind::D:
      out += "D(";
      print(m.first(), 0, ann, out);
      out += ")";
      return;
    case Mor::Kind::Compose: {
      if (prec > 1) out += "(";
      print(m.first(), 2, ann, out);
      out += " o ";
      print(m.second(), 1, ann, out);
      if (prec > 1) out += ")";
      return;
    }
    case Mor::Kind::Sum: {
      if (prec > 0) out += "(";
      print(m.first(), 1, ann, out);
      out += " + ";
      print(m.second(), 0, ann, out);
      if (prec > 0) out += ")";
      return;
    }
  }
}

}  // namespace

std::string Mor::str() const {
  std::string s;
  print(*this, 0, false, s);
  return s;
}

std::string Mor::str_annotated() const {
  std::string s;
  print(*this, 0, true, s);
  return s;
}

}  // namespace cdc
