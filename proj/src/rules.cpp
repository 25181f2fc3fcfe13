#include "cdc/rules.hpp"

#include <algorithm>

#include "cdc/derived.hpp"
#include "cdc/diff.hpp"
#include "cdc/tangent.hpp"

namespace cdc {

using K = Mor::Kind;
using Opt = std::optional<Mor>;

// ---------------------------------------------------------------------------
// Chains

namespace {

void elems_into(const Mor& m, std::vector<Mor>& out) {
  if (m.is(K::Compose)) {
    elems_into(m.first(), out);
    elems_into(m.second(), out);
  } else {
    out.push_back(m);
  }
}

std::vector<Mor> elems(const Mor& m) {
  std::vector<Mor> out;
  elems_into(m, out);
  return out;
}

Mor build(const std::vector<Mor>& es, std::size_t from, std::size_t to) {
  Mor acc = es[to - 1];
  for (std::size_t i = to - 1; i-- > from;) acc = Mor::compose(es[i], acc);
  return acc;
}

Mor build(const std::vector<Mor>& es) { return build(es, 0, es.size()); }

void summands(const Mor& m, std::vector<Mor>& out) {
  if (m.is(K::Sum)) {
    summands(m.first(), out);
    summands(m.second(), out);
  } else if (!m.is(K::Zero)) {
    out.push_back(m);
  }
}

Mor sum_of(std::vector<Mor> xs, const MorType& t) {
  if (xs.empty()) return Mor::zero(t.dom, t.cod);
  Mor acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = Mor::sum(xs[i], acc);
  return acc;
}

Mor sort_sum(const Mor& m, Typer& typer) {
  std::vector<Mor> xs;
  summands(m, xs);
  std::sort(xs.begin(), xs.end(), [](const Mor& a, const Mor& b) { return (a <=> b) < 0; });
  return sum_of(std::move(xs), typer(m));
}

}  // namespace

Mor chain(const Mor& f, const Mor& g) {
  auto es = elems(f);
  elems_into(g, es);
  return build(es);
}

Mor right_assoc(const Mor& m) {
  switch (m.kind()) {
    case K::Compose: return chain(right_assoc(m.first()), right_assoc(m.second()));
    case K::Pair: return Mor::pair(right_assoc(m.first()), right_assoc(m.second()));
    case K::Sum: return Mor::sum(right_assoc(m.first()), right_assoc(m.second()));
    case K::Curry: return Mor::curry(right_assoc(m.first()), m.obj1(), m.obj2());
    case K::D: return Mor::d(right_assoc(m.first()));
    default: return m;
  }
}

Mor ac_canon(const Mor& m, Typer& typer) {
  switch (m.kind()) {
    case K::Compose: return chain(ac_canon(m.first(), typer), ac_canon(m.second(), typer));
    case K::Pair: return Mor::pair(ac_canon(m.first(), typer), ac_canon(m.second(), typer));
    case K::Sum: {
      Mor s = Mor::sum(ac_canon(m.first(), typer), ac_canon(m.second(), typer));
      return sort_sum(s, typer);
    }
    case K::Curry: return Mor::curry(ac_canon(m.first(), typer), m.obj1(), m.obj2());
    case K::D: return Mor::d(ac_canon(m.first(), typer));
    default: return m;
  }
}

// ---------------------------------------------------------------------------
// Matching helpers

namespace {

struct Prefix {
  Mor head, next;
  std::optional<Mor> rest;
};

std::optional<Prefix> prefix(const Mor& n) {
  if (!n.is(K::Compose)) return std::nullopt;
  const Mor& s = n.second();
  if (s.is(K::Compose)) return Prefix{n.first(), s.first(), s.second()};
  return Prefix{n.first(), s, std::nullopt};
}

// Reattaches the tail. A zero head absorbs it, since 0 o h = 0.
Mor attach(const Mor& r, const Prefix& p, const Mor& node, RuleCtx& c) {
  if (!p.rest) return r;
  if (r.is(K::Zero)) {
    MorType t = c.typer(node);
    return Mor::zero(t.dom, t.cod);
  }
  return chain(r, *p.rest);
}

Mor zero_of(const Mor& m, RuleCtx& c) {
  MorType t = c.typer(m);
  return Mor::zero(t.dom, t.cod);
}

// f x g = <f o pi1, g o pi2>. A missing factor stands for the identity.
struct Times {
  std::optional<Mor> f, g;
  Obj a, b;
};

std::optional<Mor> drop_last(const Mor& comp, const Mor& proj, bool& ok) {
  ok = true;
  if (comp == proj) return std::nullopt;
  auto es = elems(comp);
  if (es.size() < 2 || !(es.back() == proj)) {
    ok = false;
    return std::nullopt;
  }
  es.pop_back();
  return build(es);
}

std::optional<Times> as_times(const Mor& p, RuleCtx& c) {
  if (!p.is(K::Pair)) return std::nullopt;
  Obj dom = c.typer(p).dom;
  if (!dom.is_prod()) return std::nullopt;
  Times t{std::nullopt, std::nullopt, dom.left(), dom.right()};
  bool ok1 = false, ok2 = false;
  t.f = drop_last(p.first(), Mor::proj1(t.a, t.b), ok1);
  t.g = drop_last(p.second(), Mor::proj2(t.a, t.b), ok2);
  if (!ok1 || !ok2) return std::nullopt;
  return t;
}

Mor then(const std::optional<Mor>& f, const Mor& h) { return f ? chain(*f, h) : h; }
Mor or_id(const std::optional<Mor>& f, const Obj& o) { return f ? *f : Mor::id(o); }

bool is_id_or_absent(const std::optional<Mor>& f) { return !f || f->is(K::Id); }

bool is_shuffle(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return false;
  Obj d = c.typer(m).dom;
  if (!d.is_prod() || !d.left().is_prod() || !d.right().is_prod()) return false;
  return m == derived::shuffle(d.left().left(), d.left().right(), d.right().left(), d.right().right());
}

bool is_sym(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return false;
  Obj d = c.typer(m).dom;
  return d.is_prod() && m == derived::sym(d.left(), d.right());
}

// t' at (X, Y) recognised from its domain TX x Y.
std::optional<std::pair<Obj, Obj>> as_costrength(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return std::nullopt;
  Obj d = c.typer(m).dom;
  if (!d.is_prod() || !d.left().is_prod() || !(d.left().left() == d.left().right())) return std::nullopt;
  Obj x = d.left().left(), y = d.right();
  if (!(m == tangent::costrength(x, y))) return std::nullopt;
  return std::make_pair(x, y);
}

// t at (X, Y) recognised from its domain X x TY.
std::optional<std::pair<Obj, Obj>> as_strength(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return std::nullopt;
  Obj d = c.typer(m).dom;
  if (!d.is_prod() || !d.right().is_prod() || !(d.right().left() == d.right().right())) return std::nullopt;
  Obj x = d.left(), y = d.right().left();
  if (!(m == tangent::strength(x, y))) return std::nullopt;
  return std::make_pair(x, y);
}

// T(f) written either as <D(f), f o pi2> or, for linear f, as f x f.
bool is_T_of(const Mor& m, const Mor& f, const Obj& x) {
  return m == tangent::T_sym(f, x) || m == derived::times(f, x, f, x);
}

bool is_DD(const Mor& m) { return m.is(K::D) && m.first().is(K::D); }

// Longest common tail of two chains, leaving both prefixes non-empty when
// `proper` is set.
std::optional<std::size_t> common_tail(const std::vector<Mor>& a, const std::vector<Mor>& b, bool proper) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == b[b.size() - 1 - k]) ++k;
  if (proper) k = std::min({k, a.size() - 1, b.size() - 1});
  if (k == 0) return std::nullopt;
  return k;
}

// ---------------------------------------------------------------------------
// Rules

Opt cat_id(const Mor& m, RuleCtx&) {
  if (!m.is(K::Compose)) return std::nullopt;
  if (m.first().is(K::Id)) return m.second();
  if (m.second().is(K::Id)) return m.first();
  return std::nullopt;
}

Opt proj(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->next.is(K::Pair)) return std::nullopt;
  if (p->head.is(K::Proj1)) return attach(p->next.first(), *p, m, c);
  if (p->head.is(K::Proj2)) return attach(p->next.second(), *p, m, c);
  return std::nullopt;
}

Opt id_pair(const Mor& m, RuleCtx&) {
  if (!m.is(K::Pair)) return std::nullopt;
  const Mor& a = m.first();
  const Mor& b = m.second();
  if (a.is(K::Proj1) && b.is(K::Proj2) && a.obj1() == b.obj1() && a.obj2() == b.obj2())
    return Mor::id(Obj::prod(a.obj1(), a.obj2()));
  return std::nullopt;
}

Opt id_pair_rtl(const Mor& m, RuleCtx&) {
  if (!m.is(K::Id) || !m.obj1().is_prod()) return std::nullopt;
  const Obj& o = m.obj1();
  return Mor::pair(Mor::proj1(o.left(), o.right()), Mor::proj2(o.left(), o.right()));
}

Opt circ_pair(const Mor& m, RuleCtx&) {
  if (!m.is(K::Compose) || !m.first().is(K::Pair)) return std::nullopt;
  const Mor& h = m.second();
  return Mor::pair(chain(m.first().first(), h), chain(m.first().second(), h));
}

Opt circ_pair_rtl(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return std::nullopt;
  auto a = elems(m.first());
  auto b = elems(m.second());
  auto k = common_tail(a, b, false);
  if (!k) return std::nullopt;
  Mor tail = build(a, a.size() - *k, a.size());
  Obj mid = c.typer(tail).cod;
  Mor fa = a.size() == *k ? Mor::id(mid) : build(a, 0, a.size() - *k);
  Mor fb = b.size() == *k ? Mor::id(mid) : build(b, 0, b.size() - *k);
  return chain(Mor::pair(fa, fb), tail);
}

Opt times_def(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !as_times(p->next, c)) return std::nullopt;
  if (p->head.is(K::Proj1)) return attach(p->next.first(), *p, m, c);
  if (p->head.is(K::Proj2)) return attach(p->next.second(), *p, m, c);
  return std::nullopt;
}

// f x g is notation for <f o pi1, g o pi2>; the step only checks the shape.
Opt times_pair(const Mor& m, RuleCtx& c) {
  if (!as_times(m, c)) return std::nullopt;
  return m;
}

Opt times_circ_pair(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->next.is(K::Pair)) return std::nullopt;
  auto t = as_times(p->head, c);
  if (!t) return std::nullopt;
  return attach(Mor::pair(then(t->f, p->next.first()), then(t->g, p->next.second())), *p, m, c);
}

Opt sym_pair(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->next.is(K::Pair) || !is_sym(p->head, c)) return std::nullopt;
  return attach(Mor::pair(p->next.second(), p->next.first()), *p, m, c);
}

Opt sym_times(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_sym(p->head, c)) return std::nullopt;
  auto t = as_times(p->next, c);
  if (!t) return std::nullopt;
  Mor swapped = derived::times(or_id(t->g, t->b), t->b, or_id(t->f, t->a), t->a);
  return attach(chain(swapped, derived::sym(t->a, t->b)), *p, m, c);
}

Opt sigma_pair(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_shuffle(p->head, c)) return std::nullopt;
  const Mor& q = p->next;
  if (!q.is(K::Pair) || !q.first().is(K::Pair) || !q.second().is(K::Pair)) return std::nullopt;
  Mor r = Mor::pair(Mor::pair(q.first().first(), q.second().first()), Mor::pair(q.first().second(), q.second().second()));
  return attach(r, *p, m, c);
}

Opt sigma_pair_rtl(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair) || !m.first().is(K::Pair) || !m.second().is(K::Pair)) return std::nullopt;
  const Mor& f = m.first().first();
  const Mor& h = m.first().second();
  const Mor& g = m.second().first();
  const Mor& k = m.second().second();
  Mor s = derived::shuffle(c.typer(f).cod, c.typer(g).cod, c.typer(h).cod, c.typer(k).cod);
  return chain(s, Mor::pair(Mor::pair(f, g), Mor::pair(h, k)));
}

Opt sigma_times(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_shuffle(p->head, c)) return std::nullopt;
  auto t = as_times(p->next, c);
  if (!t || !t->f || !t->g || !t->f->is(K::Pair) || !t->g->is(K::Pair)) return std::nullopt;
  const Mor& fg = *t->f;
  const Mor& hk = *t->g;
  Mor r = Mor::pair(derived::times(fg.first(), t->a, hk.first(), t->b),
                    derived::times(fg.second(), t->a, hk.second(), t->b));
  return attach(r, *p, m, c);
}

Opt curry_nat(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Compose) || !m.first().is(K::Curry)) return std::nullopt;
  const Mor& cf = m.first();
  const Mor& g = m.second();
  Obj w = c.typer(g).dom;
  const Obj& x = cf.obj2();
  return Mor::curry(chain(cf.first(), derived::times(g, w, Mor::id(x), x)), w, x);
}

Opt curry_nat_rtl(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Curry)) return std::nullopt;
  auto es = elems(m.first());
  auto t = as_times(es.back(), c);
  if (!t || !t->f || !is_id_or_absent(t->g)) return std::nullopt;
  Obj z = c.typer(*t->f).cod;
  const Obj& x = m.obj2();
  Mor f = es.size() == 1 ? Mor::id(Obj::prod(z, x)) : build(es, 0, es.size() - 1);
  return chain(Mor::curry(f, z, x), *t->f);
}

Opt curry_beta(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->head.is(K::Ev) || !p->next.is(K::Pair)) return std::nullopt;
  const Mor& a = p->next.first();
  const Mor& k = p->next.second();
  auto es = elems(a);
  if (!es[0].is(K::Curry)) return std::nullopt;
  Mor h = es.size() == 1 ? Mor::id(c.typer(k).dom) : build(es, 1, es.size());
  return attach(chain(es[0].first(), Mor::pair(h, k)), *p, m, c);
}

Opt curry_eta(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Curry)) return std::nullopt;
  auto p = prefix(m.first());
  if (!p || p->rest || !p->head.is(K::Ev)) return std::nullopt;
  auto t = as_times(p->next, c);
  if (!t || !is_id_or_absent(t->g) || !(t->a == m.obj1())) return std::nullopt;
  return or_id(t->f, m.obj1());
}

Opt curry_additive(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Curry)) return std::nullopt;
  const Mor& b = m.first();
  if (b.is(K::Sum))
    return Mor::sum(Mor::curry(b.first(), m.obj1(), m.obj2()), Mor::curry(b.second(), m.obj1(), m.obj2()));
  if (b.is(K::Zero)) return zero_of(m, c);
  return std::nullopt;
}

Opt left_additive(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Compose)) return std::nullopt;
  const Mor& s = m.first();
  if (s.is(K::Sum)) return Mor::sum(chain(s.first(), m.second()), chain(s.second(), m.second()));
  if (s.is(K::Zero)) return zero_of(m, c);
  return std::nullopt;
}

Opt left_additive_rtl(const Mor& m, RuleCtx&) {
  if (!m.is(K::Sum)) return std::nullopt;
  auto a = elems(m.first());
  auto b = elems(m.second());
  auto k = common_tail(a, b, true);
  if (!k) return std::nullopt;
  Mor tail = build(a, a.size() - *k, a.size());
  return chain(Mor::sum(build(a, 0, a.size() - *k), build(b, 0, b.size() - *k)), tail);
}

Opt additive(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p) return std::nullopt;
  if (!p->next.is(K::Sum) && !p->next.is(K::Zero)) return std::nullopt;
  if (!is_linear(p->head, c.reg)) return std::nullopt;
  if (p->next.is(K::Zero)) return zero_of(m, c);
  Mor r = Mor::sum(chain(p->head, p->next.first()), chain(p->head, p->next.second()));
  return attach(r, *p, m, c);
}

Opt pair_additive(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair)) return std::nullopt;
  const Mor& a = m.first();
  const Mor& b = m.second();
  if (a.is(K::Zero) && b.is(K::Zero)) return zero_of(m, c);
  if (a.is(K::Sum) && b.is(K::Sum))
    return Mor::sum(Mor::pair(a.first(), b.first()), Mor::pair(a.second(), b.second()));
  if (a.is(K::Sum)) return Mor::sum(Mor::pair(a.first(), b), Mor::pair(a.second(), zero_of(b, c)));
  if (b.is(K::Sum)) return Mor::sum(Mor::pair(a, b.first()), Mor::pair(zero_of(a, c), b.second()));
  return std::nullopt;
}

Opt pair_additive_rtl(const Mor& m, RuleCtx& c) {
  if (m.is(K::Zero) && m.obj2().is_prod()) {
    const Obj& o = m.obj2();
    return Mor::pair(Mor::zero(m.obj1(), o.left()), Mor::zero(m.obj1(), o.right()));
  }
  (void)c;
  if (!m.is(K::Sum) || !m.first().is(K::Pair) || !m.second().is(K::Pair)) return std::nullopt;
  const Mor& x = m.first();
  const Mor& y = m.second();
  return Mor::pair(Mor::sum(x.first(), y.first()), Mor::sum(x.second(), y.second()));
}

Opt pair_split(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair) || m.first().is(K::Zero) || m.second().is(K::Zero)) return std::nullopt;
  return Mor::sum(Mor::pair(m.first(), zero_of(m.second(), c)), Mor::pair(zero_of(m.first(), c), m.second()));
}

Opt monoid(const Mor& m, RuleCtx&) {
  if (!m.is(K::Sum)) return std::nullopt;
  if (m.second().is(K::Zero)) return m.first();
  if (m.first().is(K::Zero)) return m.second();
  return std::nullopt;
}

Opt sum_canon(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Sum)) return std::nullopt;
  Mor r = sort_sum(m, c.typer);
  if (r == m) return std::nullopt;
  return r;
}

Opt terminal(const Mor& m, RuleCtx& c) {
  if (m.is(K::Bang)) return std::nullopt;
  MorType t = c.typer(m);
  if (!t.cod.is_unit()) return std::nullopt;
  return Mor::bang(t.dom);
}

Opt d1(const Mor& m, RuleCtx& c) {
  if (!m.is(K::D)) return std::nullopt;
  const Mor& f = m.first();
  if (f.is(K::Sum)) return Mor::sum(Mor::d(f.first()), Mor::d(f.second()));
  if (f.is(K::Zero)) return zero_of(m, c);
  return std::nullopt;
}

Opt d2(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->head.is(K::D) || !p->next.is(K::Pair)) return std::nullopt;
  const Mor& hk = p->next.first();
  const Mor& v = p->next.second();
  if (hk.is(K::Zero)) return zero_of(m, c);
  if (!hk.is(K::Sum)) return std::nullopt;
  Mor r = Mor::sum(chain(p->head, Mor::pair(hk.first(), v)), chain(p->head, Mor::pair(hk.second(), v)));
  return attach(r, *p, m, c);
}

Opt d3(const Mor& m, RuleCtx&) {
  if (!m.is(K::D)) return std::nullopt;
  const Mor& f = m.first();
  if (f.is(K::Id)) return Mor::proj1(f.obj1(), f.obj1());
  if (f.is(K::Proj1) || f.is(K::Proj2)) {
    Obj ab = Obj::prod(f.obj1(), f.obj2());
    return Mor::compose(f, Mor::proj1(ab, ab));
  }
  return std::nullopt;
}

Opt d4(const Mor& m, RuleCtx&) {
  if (!m.is(K::D) || !m.first().is(K::Pair)) return std::nullopt;
  return Mor::pair(Mor::d(m.first().first()), Mor::d(m.first().second()));
}

Opt d4_rtl(const Mor& m, RuleCtx&) {
  if (!m.is(K::Pair) || !m.first().is(K::D) || !m.second().is(K::D)) return std::nullopt;
  return Mor::d(Mor::pair(m.first().first(), m.second().first()));
}

Opt d5(const Mor& m, RuleCtx& c) {
  if (!m.is(K::D) || !m.first().is(K::Compose)) return std::nullopt;
  const Mor& f = m.first().first();
  const Mor& g = m.first().second();
  Obj x = c.typer(g).dom;
  return chain(Mor::d(f), Mor::pair(Mor::d(g), chain(g, Mor::proj2(x, x))));
}

Opt d5_rtl(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->head.is(K::D) || !p->next.is(K::Pair) || !p->next.first().is(K::D)) return std::nullopt;
  const Mor& g = p->next.first().first();
  Obj x = c.typer(g).dom;
  if (!(p->next.second() == chain(g, Mor::proj2(x, x)))) return std::nullopt;
  return attach(Mor::d(chain(p->head.first(), g)), *p, m, c);
}

Opt d6(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_DD(p->head)) return std::nullopt;
  const Mor& q = p->next;
  if (!q.is(K::Pair) || !q.first().is(K::Pair) || !q.second().is(K::Pair)) return std::nullopt;
  if (!q.first().second().is(K::Zero)) return std::nullopt;
  Mor r = chain(p->head.first(), Mor::pair(q.first().first(), q.second().second()));
  return attach(r, *p, m, c);
}

Opt d7(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_DD(p->head)) return std::nullopt;
  const Mor& q = p->next;
  if (!q.is(K::Pair) || !q.first().is(K::Pair) || !q.second().is(K::Pair)) return std::nullopt;
  if (!q.first().first().is(K::Zero)) return std::nullopt;
  Mor r = chain(p->head, Mor::pair(Mor::pair(q.first().first(), q.second().first()),
                                   Mor::pair(q.first().second(), q.second().second())));
  return attach(r, *p, m, c);
}

Opt linear(const Mor& m, RuleCtx& c) {
  if (!m.is(K::D) || !is_linear(m.first(), c.reg)) return std::nullopt;
  Obj x = c.typer(m.first()).dom;
  return chain(m.first(), Mor::proj1(x, x));
}

Opt d_gen(const Mor& m, RuleCtx& c) {
  if (!m.is(K::D) || !m.first().is(K::Gen)) return std::nullopt;
  const GenSig& g = c.reg.get(m.first().name());
  if (!g.derivative) return std::nullopt;
  return right_assoc(*g.derivative);
}

Opt d_curry(const Mor& m, RuleCtx&) {
  if (!m.is(K::D) || !m.first().is(K::Curry)) return std::nullopt;
  const Mor& cf = m.first();
  const Obj& z = cf.obj1();
  const Obj& x = cf.obj2();
  return Mor::curry(chain(Mor::d(cf.first()), tangent::costrength(z, x)), Obj::prod(z, z), x);
}

Opt d_curry_rtl(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Curry)) return std::nullopt;
  auto p = prefix(m.first());
  if (!p || p->rest || !p->head.is(K::D)) return std::nullopt;
  auto zx = as_costrength(p->next, c);
  if (!zx || !(Obj::prod(zx->first, zx->first) == m.obj1()) || !(zx->second == m.obj2())) return std::nullopt;
  return Mor::d(Mor::curry(p->head.first(), zx->first, zx->second));
}

Opt d_uncurry(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->head.is(K::D) || !p->head.first().is(K::Ev)) return std::nullopt;
  const Mor& ev = p->head.first();
  Obj f = Obj::exp(ev.obj1(), ev.obj2());
  const Mor& q = p->next;
  if (q == tangent::costrength(f, ev.obj1())) {
    Mor r = chain(ev, derived::times(Mor::proj1(f, f), Obj::prod(f, f), Mor::id(ev.obj1()), ev.obj1()));
    return attach(r, *p, m, c);
  }
  // The same equation precomposed with a point <<u, g>, x>: D(ev) o <<u, 0>, <g, x>> = ev o <u, x>.
  if (!q.is(K::Pair) || !q.first().is(K::Pair) || !q.second().is(K::Pair)) return std::nullopt;
  if (!q.first().second().is(K::Zero)) return std::nullopt;
  return attach(chain(ev, Mor::pair(q.first().first(), q.second().second())), *p, m, c);
}

// eq:D-uncurry-2 differentiated once and evaluated at a point:
// D(D(ev)) o <<<du, 0>, <dg, dx>>, <<u, 0>, <g, x>>>  =  D(ev) o <<du, dx>, <u, x>>.
Opt d_uncurry_diff(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_DD(p->head) || !p->head.first().first().is(K::Ev)) return std::nullopt;
  const Mor& q = p->next;
  // A zero in the first slot is read as <0, 0>.
  auto split = [&c](const Mor& v) -> std::optional<std::pair<Mor, Mor>> {
    if (!v.is(K::Pair) || !v.second().is(K::Pair)) return std::nullopt;
    if (v.first().is(K::Zero)) {
      MorType t = c.typer(v.first());
      return std::make_pair(Mor::zero(t.dom, t.cod.left()), v.second().second());
    }
    if (!v.first().is(K::Pair) || !v.first().second().is(K::Zero)) return std::nullopt;
    return std::make_pair(v.first().first(), v.second().second());
  };
  if (!q.is(K::Pair)) return std::nullopt;
  auto dv = split(q.first());
  auto v = split(q.second());
  if (!dv || !v) return std::nullopt;
  Mor r = chain(p->head.first(), Mor::pair(Mor::pair(dv->first, dv->second), Mor::pair(v->first, v->second)));
  return attach(r, *p, m, c);
}

Opt d_uncurry_rtl(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !p->head.is(K::Ev)) return std::nullopt;
  const Mor& ev = p->head;
  Obj f = Obj::exp(ev.obj1(), ev.obj2());
  auto t = as_times(p->next, c);
  if (!t || !t->f || !(*t->f == Mor::proj1(f, f)) || !is_id_or_absent(t->g)) return std::nullopt;
  return attach(chain(Mor::d(ev), tangent::costrength(f, ev.obj1())), *p, m, c);
}

Opt d_times(const Mor& m, RuleCtx& c) {
  if (!m.is(K::D)) return std::nullopt;
  auto t = as_times(m.first(), c);
  if (!t) return std::nullopt;
  Obj xu = Obj::prod(t->a, t->b);
  Mor p1 = Mor::proj1(xu, xu), p2 = Mor::proj2(xu, xu);
  Mor a1 = Mor::proj1(t->a, t->b), a2 = Mor::proj2(t->a, t->b);
  Mor left = chain(Mor::d(or_id(t->f, t->a)), Mor::pair(chain(a1, p1), chain(a1, p2)));
  Mor right = chain(Mor::d(or_id(t->g, t->b)), Mor::pair(chain(a2, p1), chain(a2, p2)));
  return Mor::pair(left, right);
}

Opt d_interchange(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_DD(p->head)) return std::nullopt;
  const Mor& q = p->next;
  if (!q.is(K::Pair) || !q.first().is(K::Pair) || !q.second().is(K::Pair)) return std::nullopt;
  Mor r = chain(p->head, Mor::pair(Mor::pair(q.first().first(), q.second().first()),
                                   Mor::pair(q.first().second(), q.second().second())));
  return attach(r, *p, m, c);
}

Opt d_interchange_sigma(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !is_DD(p->head) || !is_shuffle(p->next, c)) return std::nullopt;
  return p->rest ? chain(p->head, *p->rest) : p->head;
}

Opt strength_prime(const Mor& m, RuleCtx& c) {
  auto es = elems(m);
  if (es.size() < 3 || !is_sym(es[2], c)) return std::nullopt;
  Obj d = c.typer(es[2]).dom;  // TX x Y
  if (!d.left().is_prod()) return std::nullopt;
  Obj x = d.left().left(), y = d.right();
  if (!(es[1] == tangent::strength(y, x))) return std::nullopt;
  if (!is_T_of(es[0], derived::sym(y, x), Obj::prod(y, x))) return std::nullopt;
  Mor r = tangent::costrength(x, y);
  if (es.size() == 3) return r;
  return chain(r, build(es, 3, es.size()));
}

Opt strength_prime_rtl(const Mor& m, RuleCtx& c) {
  auto es = elems(m);
  auto xy = as_costrength(es[0], c);
  if (!xy) return std::nullopt;
  const auto& [x, y] = *xy;
  Mor r = chain(tangent::T_sym(derived::sym(y, x), Obj::prod(y, x)),
                chain(tangent::strength(y, x), derived::sym(tangent::T(x), y)));
  if (es.size() == 1) return r;
  return chain(r, build(es, 1, es.size()));
}

Opt t_linear(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair) || !m.first().is(K::D)) return std::nullopt;
  const Mor& f = m.first().first();
  Obj x = c.typer(f).dom;
  if (!(m.second() == chain(f, Mor::proj2(x, x))) || !is_linear(f, c.reg)) return std::nullopt;
  return derived::times(f, x, f, x);
}

Opt t_linear_rtl(const Mor& m, RuleCtx& c) {
  auto t = as_times(m, c);
  if (!t || !t->f || !t->g || !(*t->f == *t->g) || !(t->a == t->b) || !is_linear(*t->f, c.reg)) return std::nullopt;
  return tangent::T_sym(*t->f, t->a);
}

Opt sigma_compat(const Mor& m, RuleCtx& c) {
  auto es = elems(m);
  if (es.size() < 2) return std::nullopt;
  auto s = as_strength(es[1], c);  // t at (TX, Y)
  if (!s || !s->first.is_prod() || !(s->first.left() == s->first.right())) return std::nullopt;
  Obj x = s->first.left(), y = s->second;
  if (!is_T_of(es[0], tangent::costrength(x, y), Obj::prod(tangent::T(x), y))) return std::nullopt;
  Obj xy = Obj::prod(x, y);
  Mor r = chain(derived::shuffle(xy, xy, xy, xy),
                chain(tangent::T_sym(tangent::strength(x, y), Obj::prod(x, tangent::T(y))),
                      tangent::costrength(x, tangent::T(y))));
  if (es.size() == 2) return r;
  return chain(r, build(es, 2, es.size()));
}

// T(f) as <D(f), f o pi2>, with f recovered from the D node.
std::optional<Mor> as_T(const Mor& m, RuleCtx& c) {
  if (!m.is(K::Pair) || !m.first().is(K::D)) return std::nullopt;
  const Mor& f = m.first().first();
  if (!(m == tangent::T_sym(f, c.typer(f).dom))) return std::nullopt;
  return f;
}

Opt t_natural(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p) return std::nullopt;
  auto h = as_T(p->head, c);
  auto xy = as_strength(p->next, c);
  if (!h || !xy) return std::nullopt;
  auto t = as_times(*h, c);
  if (!t || !(t->a == xy->first) || !(t->b == xy->second)) return std::nullopt;
  Obj ty = tangent::T(t->b);
  Mor tg = t->g ? tangent::T_sym(*t->g, t->b) : Mor::id(ty);
  Mor r = chain(tangent::strength(c.typer(or_id(t->f, t->a)).cod, c.typer(or_id(t->g, t->b)).cod),
                derived::times(or_id(t->f, t->a), t->a, tg, ty));
  return attach(r, *p, m, c);
}

Opt t_natural_rtl(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p || !as_strength(p->head, c)) return std::nullopt;
  auto t = as_times(p->next, c);
  if (!t || !t->b.is_prod() || !(t->b.left() == t->b.right())) return std::nullopt;
  Obj y = t->b.left();
  std::optional<Mor> g;
  if (t->g && !t->g->is(K::Id)) {
    g = as_T(*t->g, c);
    if (!g) return std::nullopt;
  }
  if (is_id_or_absent(t->f) && !g) return std::nullopt;
  Mor fg = derived::times(or_id(t->f, t->a), t->a, or_id(g, y), y);
  Mor r = chain(tangent::T_sym(fg, Obj::prod(t->a, y)), tangent::strength(t->a, y));
  return attach(r, *p, m, c);
}

Opt t_compose(const Mor& m, RuleCtx& c) {
  auto h = as_T(m, c);
  if (!h || !h->is(K::Compose)) return std::nullopt;
  const Mor& f = h->first();
  const Mor& g = h->second();
  return chain(tangent::T_sym(f, c.typer(f).dom), tangent::T_sym(g, c.typer(g).dom));
}

Opt t_compose_rtl(const Mor& m, RuleCtx& c) {
  auto p = prefix(m);
  if (!p) return std::nullopt;
  auto f = as_T(p->head, c);
  auto g = as_T(p->next, c);
  if (!f || !g) return std::nullopt;
  return attach(tangent::T_sym(chain(*f, *g), c.typer(*g).dom), *p, m, c);
}

std::vector<RewriteRule> make_rules() {
  std::vector<RewriteRule> r;
  auto add = [&](std::string id, std::string group, std::string lhs, std::string rhs, std::string side,
                 decltype(RewriteRule::ltr) ltr, decltype(RewriteRule::rtl) rtl = {}) {
    r.push_back(RewriteRule{std::move(id), std::move(group), std::move(lhs), std::move(rhs), std::move(side),
                            std::move(ltr), std::move(rtl)});
  };
  add("cat:id", "category", "id o f  |  f o id", "f", "", cat_id);
  add("eq:proj", "cartesian", "pi1 o <f, g>  |  pi2 o <f, g>", "f  |  g", "", proj);
  add("eq:id-pair", "cartesian", "<pi1, pi2>", "id", "", id_pair, id_pair_rtl);
  add("eq:circ-pair", "cartesian", "<f, g> o h", "<f o h, g o h>", "", circ_pair, circ_pair_rtl);
  add("eq:times-def", "cartesian", "pi1 o (f x g)  |  pi2 o (f x g)", "f o pi1  |  g o pi2", "", times_def);
  add("eq:times-pair", "cartesian", "f x g", "<f o pi1, g o pi2>", "", times_pair);
  add("eq:times-circ-pair", "cartesian", "(f x g) o <h, k>", "<f o h, g o k>", "", times_circ_pair);
  add("eq:sym-pair", "cartesian", "c o <f, g>", "<g, f>", "", sym_pair);
  add("eq:sym-times", "cartesian", "c o (h x k)", "(k x h) o c", "", sym_times);
  add("eq:sigma-pair", "cartesian", "sigma o <<f, g>, <h, k>>", "<<f, h>, <g, k>>", "", sigma_pair, sigma_pair_rtl);
  add("eq:sigma-times", "cartesian", "sigma o (<f, g> x <h, k>)", "<f x h, g x k>", "", sigma_times);
  add("terminal", "cartesian", "f : X -> 1", "!", "", terminal);
  add("eq:curry", "closed", "curry(f) o g", "curry(f o (g x id))", "", curry_nat, curry_nat_rtl);
  add("curry-beta", "closed", "ev o <curry(f) o h, k>", "f o <h, k>", "", curry_beta);
  add("curry-eta", "closed", "curry(ev o (h x id))", "h", "", curry_eta);
  add("curry-additive", "closed", "curry(f + g)  |  curry(0)", "curry(f) + curry(g)  |  0", "", curry_additive);
  add("left-additive", "additive", "(f + g) o h  |  0 o h", "f o h + g o h  |  0", "", left_additive,
      left_additive_rtl);
  add("additive", "additive", "f o (g + h)  |  f o 0", "f o g + f o h  |  0", "f is linear", additive);
  add("pair-additive", "additive", "<f + g, h + k>  |  <0, 0>", "<f, h> + <g, k>  |  0", "", pair_additive,
      pair_additive_rtl);
  add("pair-split", "additive", "<f, g>", "<f, 0> + <0, g>", "", pair_split);
  add("monoid", "additive", "f + 0  |  0 + f", "f", "", monoid);
  add("sum-canon", "additive", "f + g", "summands in canonical order", "", sum_canon);
  add("D1", "D", "D(f + g)  |  D(0)", "D(f) + D(g)  |  0", "", d1);
  add("D2", "D", "D(f) o <h + k, v>  |  D(f) o <0, v>", "D(f) o <h, v> + D(f) o <k, v>  |  0", "", d2);
  add("D3", "D", "D(id)  |  D(pi1)  |  D(pi2)", "pi1  |  pi1 o pi1  |  pi2 o pi1", "", d3);
  add("D4", "D", "D(<f, g>)", "<D(f), D(g)>", "", d4, d4_rtl);
  add("D5", "D", "D(f o g)", "D(f) o <D(g), g o pi2>", "", d5, d5_rtl);
  add("D6", "D", "D(D(f)) o <<g, 0>, <h, k>>", "D(f) o <g, k>", "", d6);
  add("D7", "D", "D(D(f)) o <<0, h>, <g, k>>", "D(D(f)) o <<0, g>, <h, k>>", "", d7);
  add("linear", "D", "D(f)", "f o pi1", "f is linear", linear);
  add("D-gen", "D", "D(g)", "registered derivative of g", "g has a registered derivative", d_gen);
  add("eq:D-curry-1", "D", "D(curry(f))", "curry(D(f) o t')", "", d_curry, d_curry_rtl);
  add("eq:D-uncurry-2", "D", "D(ev) o t'  |  D(ev) o <<u, 0>, <g, x>>", "ev o (pi1 x id)  |  ev o <u, x>", "", d_uncurry, d_uncurry_rtl);
  add("D-uncurry-2-diff", "derived", "D(D(ev)) o <<<du, 0>, <dg, dx>>, <<u, 0>, <g, x>>>",
      "D(ev) o <<du, dx>, <u, x>>", "", d_uncurry_diff);
  add("lem-D-times", "derived", "D(f x g)", "<D(f) o <pi1 o pi1, pi1 o pi2>, D(g) o <pi2 o pi1, pi2 o pi2>>", "",
      d_times);
  add("lemma-D-interchange", "derived", "D(D(f)) o <<i, h>, <g, k>>", "D(D(f)) o <<i, g>, <h, k>>", "",
      d_interchange);
  add("cor-D-interchange", "derived", "D(D(f)) o sigma", "D(D(f))", "", d_interchange_sigma);
  add("lemma-strength'-expr", "derived", "T(c) o t o c", "<<pi1 o pi1, 0>, <pi2 o pi1, pi2>>", "", strength_prime,
      strength_prime_rtl);
  add("lemma-T-additive-morphisms", "derived", "<D(f), f o pi2>", "f x f", "f is linear", t_linear, t_linear_rtl);
  add("t-natural", "derived", "T(f x g) o t", "t o (f x T(g))", "", t_natural, t_natural_rtl);
  add("T-functor-compose", "derived", "T(f o g)", "T(f) o T(g)", "", t_compose, t_compose_rtl);
  add("prop-sigma-compat-strength", "derived", "T(t') o t", "sigma o T(t) o t'", "", sigma_compat);
  return r;
}

}  // namespace

std::optional<Mor> RewriteRule::apply(const Mor& m, Dir d, RuleCtx& ctx) const {
  if (d == Dir::Ltr) return ltr(m, ctx);
  if (!rtl) return std::nullopt;
  return rtl(m, ctx);
}

const std::vector<RewriteRule>& rule_table() {
  static const std::vector<RewriteRule> rules = make_rules();
  return rules;
}

const RewriteRule* find_rule(const std::string& id) {
  for (const auto& r : rule_table())
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace cdc
