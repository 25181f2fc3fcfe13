#include "cdc/obj.hpp"

#include <cctype>

#include "cdc/errors.hpp"

namespace cdc {

struct Obj::Node {
  Kind kind = Kind::Unit;
  std::string name;
  int dim = 0;
  Obj l, r;
  std::size_t hash = 0;
  bool first_order = true;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Obj::Obj() : Obj(unit()) {}

Obj Obj::unit() {
  static const auto node = [] {
    auto n = std::shared_ptr<Node>(new Node{Kind::Unit, "", 0, Obj(nullptr), Obj(nullptr), 17, true});
    return n;
  }();
  return Obj(node);
}

Obj Obj::base(std::string name, int dim) {
  if (dim < 1) throw Error("base object '" + name + "' must have dim >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->name = std::move(name);
  n->dim = dim;
  n->hash = mix(std::hash<std::string>{}(n->name), static_cast<std::size_t>(dim));
  return Obj(std::shared_ptr<const Node>(std::move(n)));
}

Obj Obj::prod(const Obj& l, const Obj& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prod;
  n->l = l;
  n->r = r;
  n->hash = mix(mix(31, l.hash()), r.hash());
  n->first_order = l.first_order() && r.first_order();
  return Obj(std::shared_ptr<const Node>(std::move(n)));
}

Obj Obj::exp(const Obj& arg, const Obj& result) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->l = arg;
  n->r = result;
  n->hash = mix(mix(57, arg.hash()), result.hash());
  n->first_order = false;
  return Obj(std::shared_ptr<const Node>(std::move(n)));
}

Obj::Kind Obj::kind() const { return n_->kind; }
const std::string& Obj::name() const { return n_->name; }
int Obj::dim() const { return n_->dim; }
const Obj& Obj::left() const { return n_->l; }
const Obj& Obj::right() const { return n_->r; }
bool Obj::first_order() const { return n_->first_order; }
std::size_t Obj::hash() const { return n_->hash; }

bool Obj::terminal() const {
  switch (kind()) {
    case Kind::Unit: return true;
    case Kind::Base: return false;
    case Kind::Prod: return left().terminal() && right().terminal();
    case Kind::Exp: return right().terminal();
  }
  return false;
}

std::size_t Obj::flat_dim() const {
  switch (kind()) {
    case Kind::Unit: return 0;
    case Kind::Base: return static_cast<std::size_t>(dim());
    case Kind::Prod: return left().flat_dim() + right().flat_dim();
    case Kind::Exp: throw HigherOrderUnsupported("exponential object " + str() + " has no coordinates");
  }
  return 0;
}

bool operator==(const Obj& a, const Obj& b) {
  if (a.n_ == b.n_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Obj::Kind::Unit: return true;
    case Obj::Kind::Base: return a.dim() == b.dim() && a.name() == b.name();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

std::strong_ordering operator<=>(const Obj& a, const Obj& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Obj::Kind::Unit: return std::strong_ordering::equal;
    case Obj::Kind::Base:
      if (auto c = a.name().compare(b.name()); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      return a.dim() <=> b.dim();
    default:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
}

namespace {

std::string wrap(const Obj& o) {
  return o.is_prod() || o.is_exp() ? "(" + o.str() + ")" : o.str();
}

}  // namespace

std::string Obj::str() const {
  switch (kind()) {
    case Kind::Unit: return "U";
    case Kind::Base: return name();
    case Kind::Prod: return wrap(left()) + "x" + wrap(right());
    case Kind::Exp: return wrap(left()) + "=>" + wrap(right());
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Object parser

namespace {

class ObjParser {
 public:
  explicit ObjParser(const std::string& s) : s_(s) {}

  Obj parse() {
    Obj o = arrow();
    skip();
    if (i_ != s_.size()) fail("trailing input in object");
    return o;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& m) { throw ParseError(m, i_, i_ + 1); }

  Obj arrow() {
    Obj l = product();
    skip();
    if (s_.compare(i_, 2, "=>") == 0) {
      i_ += 2;
      return Obj::exp(l, arrow());
    }
    return l;
  }

  Obj product() {
    Obj l = atom();
    for (;;) {
      skip();
      if (i_ < s_.size() && s_[i_] == 'x') {
        ++i_;
        l = Obj::prod(l, atom());
      } else {
        return l;
      }
    }
  }

  Obj atom() {
    skip();
    if (i_ >= s_.size()) fail("expected object");
    if (s_[i_] == '(') {
      ++i_;
      Obj o = arrow();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')' in object");
      ++i_;
      return o;
    }
    if (!std::isupper(static_cast<unsigned char>(s_[i_]))) fail("expected object name");
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isupper(static_cast<unsigned char>(s_[i_])) ||
                              std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    std::string name = s_.substr(b, i_ - b);
    if (name == "U") return Obj::unit();
    if (name[0] == 'R' && name.size() > 1 &&
        name.find_first_not_of("0123456789", 1) == std::string::npos)
      return Obj::base(name, std::stoi(name.substr(1)));
    return Obj::base(name, 1);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Obj parse_obj(const std::string& text) { return ObjParser(text).parse(); }

}  // namespace cdc
