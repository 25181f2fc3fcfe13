#include "cdc/normal_form.hpp"

#include <algorithm>

namespace cdc::nbe {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t path_hash(const Path& p) {
  std::size_t h = 0xabcdef;
  for (auto d : p) h = mix(h, d);
  return h;
}

NfP mk_unit() {
  static const NfP u = [] {
    auto n = std::make_shared<Nf>();
    n->k = Nf::K::Unit;
    n->hash = 7;
    return n;
  }();
  return u;
}

NfP mk_pair(NfP a, NfP b) {
  auto n = std::make_shared<Nf>();
  n->k = Nf::K::Pair;
  n->hash = mix(mix(11, a->hash), b->hash);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NfP mk_sum(std::vector<NeP> ns) {
  static const NfP empty = [] {
    auto n = std::make_shared<Nf>();
    n->k = Nf::K::Sum;
    n->hash = 13;
    return n;
  }();
  if (ns.empty()) return empty;
  auto n = std::make_shared<Nf>();
  n->k = Nf::K::Sum;
  std::size_t h = 13;
  for (const auto& x : ns) h = mix(h, x->hash);
  n->hash = h;
  n->ns = std::move(ns);
  return n;
}

NfP mk_lam(NfP body, NeP eta = nullptr) {
  auto n = std::make_shared<Nf>();
  n->k = Nf::K::Lam;
  n->hash = mix(17, body->hash);
  n->a = std::move(body);
  n->eta = std::move(eta);
  return n;
}

void rehash(Ne& n) {
  std::size_t h = mix(19, static_cast<std::size_t>(n.k));
  if (!n.gen.empty()) h = mix(h, std::hash<std::string>{}(n.gen));
  if (n.point) h = mix(h, n.point->hash);
  for (const auto& t : n.tans) h = mix(h, t->hash);
  if (n.fn) h = mix(h, n.fn->hash);
  n.hash = mix(h, path_hash(n.path));
}

NeP mk_var(Path p, Obj ty) {
  auto n = std::make_shared<Ne>();
  n->k = Ne::K::Var;
  n->path = std::move(p);
  n->ty = std::move(ty);
  rehash(*n);
  return n;
}

NeP mk_atom(const std::string& g, NfP p, std::vector<NfP> ts, Obj ty) {
  auto n = std::make_shared<Ne>();
  n->k = Ne::K::Atom;
  n->gen = g;
  n->point = std::move(p);
  n->tans = std::move(ts);
  n->ty = std::move(ty);
  rehash(*n);
  return n;
}

NeP mk_fun(NeP fn, NfP x, std::vector<NfP> ys, Obj ty) {
  auto n = std::make_shared<Ne>();
  n->k = Ne::K::Fun;
  n->fn = std::move(fn);
  n->point = std::move(x);
  n->tans = std::move(ys);
  n->ty = std::move(ty);
  rehash(*n);
  return n;
}

NeP with_path(const Ne& n, std::uint8_t d, const Obj& ty) {
  auto m = std::make_shared<Ne>(n);
  m->path.push_back(d);
  m->ty = ty;
  rehash(*m);
  return m;
}

bool is_zero(const Nf& v) {
  switch (v.k) {
    case Nf::K::Unit: return true;
    case Nf::K::Pair: return is_zero(*v.a) && is_zero(*v.b);
    case Nf::K::Sum: return v.ns.empty();
    case Nf::K::Lam: return is_zero(*v.a);
  }
  return false;
}

// Renaming of context paths. Under `depth` binders only paths that start
// with `depth` ones point into the original context.
struct Ren {
  bool strip;
  std::uint8_t digit;
};

Path ren_path(const Path& p, Ren r, std::size_t depth) {
  if (p.size() < depth) return p;
  for (std::size_t i = 0; i < depth; ++i)
    if (p[i] != 1) return p;
  Path q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(depth));
  if (r.strip) {
    q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(depth) + 1, p.end());
  } else {
    q.push_back(r.digit);
    q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(depth), p.end());
  }
  return q;
}

NfP rename(const NfP& v, Ren r, std::size_t depth);

NeP rename_ne(const NeP& n, Ren r, std::size_t depth) {
  auto m = std::make_shared<Ne>(*n);
  switch (n->k) {
    case Ne::K::Var:
      m->path = ren_path(n->path, r, depth);
      break;
    case Ne::K::Fun:
      m->fn = rename_ne(n->fn, r, depth);
      [[fallthrough]];
    case Ne::K::Atom:
      m->point = rename(n->point, r, depth);
      for (auto& t : m->tans) t = rename(t, r, depth);
      std::sort(m->tans.begin(), m->tans.end(), [](const NfP& x, const NfP& y) { return compare(*x, *y) < 0; });
      break;
  }
  rehash(*m);
  return m;
}

NfP rename(const NfP& v, Ren r, std::size_t depth) {
  switch (v->k) {
    case Nf::K::Unit:
      return v;
    case Nf::K::Pair:
      return mk_pair(rename(v->a, r, depth), rename(v->b, r, depth));
    case Nf::K::Sum: {
      if (v->ns.empty()) return v;
      std::vector<NeP> ns;
      ns.reserve(v->ns.size());
      for (const auto& n : v->ns) ns.push_back(rename_ne(n, r, depth));
      // Renaming is injective on the paths present, but may reorder them.
      std::sort(ns.begin(), ns.end(), [](const NeP& x, const NeP& y) { return compare(*x, *y) < 0; });
      return mk_sum(std::move(ns));
    }
    case Nf::K::Lam:
      return mk_lam(rename(v->a, r, depth + 1), v->eta ? rename_ne(v->eta, r, depth) : nullptr);
  }
  return v;
}

bool only_left(const Nf& v, std::size_t depth);

// True iff no path through the outer binder at `depth` refers to its
// bound variable, i.e. the neutral can be strengthened.
bool only_left_ne(const Ne& n, std::size_t depth) {
  switch (n.k) {
    case Ne::K::Var: {
      if (n.path.size() <= depth) return true;
      for (std::size_t i = 0; i < depth; ++i)
        if (n.path[i] != 1) return true;
      return n.path[depth] == 1;
    }
    case Ne::K::Fun:
      if (!only_left_ne(*n.fn, depth)) return false;
      [[fallthrough]];
    case Ne::K::Atom:
      if (!only_left(*n.point, depth)) return false;
      for (const auto& t : n.tans)
        if (!only_left(*t, depth)) return false;
      return true;
  }
  return true;
}

bool only_left(const Nf& v, std::size_t depth) {
  switch (v.k) {
    case Nf::K::Unit: return true;
    case Nf::K::Pair: return only_left(*v.a, depth) && only_left(*v.b, depth);
    case Nf::K::Sum:
      for (const auto& n : v.ns)
        if (!only_left_ne(*n, depth)) return false;
      return true;
    case Nf::K::Lam: return only_left(*v.a, depth + 1);
  }
  return true;
}

constexpr Ren kPre1{false, 1};
constexpr Ren kPre2{false, 2};
constexpr Ren kStrip{true, 0};

int cmp_path(const Path& a, const Path& b) {
  if (a == b) return 0;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()) ? -1 : 1;
}

// Builds the argument of D^k at which the k-th derivative in directions
// tans is read off: leaves indexed by subsets of {1..k}, the empty subset
// holding the point, singletons the tangents, and larger subsets zero.
NfP jet_tree(const NfP& point, const std::vector<NfP>& tans, const NfP& zero_leaf) {
  std::function<NfP(std::size_t, unsigned)> node = [&](std::size_t m, unsigned mask) -> NfP {
    if (m == 0) {
      if (mask == 0) return point;
      if ((mask & (mask - 1)) == 0) {
        std::size_t i = 0;
        while (!(mask & (1u << i))) ++i;
        return tans[i];
      }
      return zero_leaf;
    }
    return mk_pair(node(m - 1, mask | (1u << (m - 1))), node(m - 1, mask));
  };
  return node(tans.size(), 0);
}

Obj power(const Obj& x, std::size_t k) {
  Obj o = x;
  for (std::size_t i = 0; i < k; ++i) o = Obj::prod(o, o);
  return o;
}

// Right-nested composition that drops identities.
Mor cat(const Mor& f, const Mor& g) {
  if (g.is(Mor::Kind::Id)) return f;
  if (f.is(Mor::Kind::Id)) return g;
  if (f.is(Mor::Kind::Compose)) return Mor::compose(f.first(), cat(f.second(), g));
  return Mor::compose(f, g);
}

Mor proj_chain(const Path& p, Obj cur) {
  Mor acc = Mor::id(cur);
  for (auto d : p) {
    Mor m = d == 1 ? Mor::proj1(cur.left(), cur.right()) : Mor::proj2(cur.left(), cur.right());
    acc = cat(m, acc);
    cur = d == 1 ? cur.left() : cur.right();
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ordering

int compare(const Ne& a, const Ne& b) {
  if (&a == &b) return 0;
  if (a.k != b.k) return a.k < b.k ? -1 : 1;
  switch (a.k) {
    case Ne::K::Var:
      return cmp_path(a.path, b.path);
    case Ne::K::Atom:
      if (int c = a.gen.compare(b.gen); c != 0) return c < 0 ? -1 : 1;
      break;
    case Ne::K::Fun:
      if (int c = compare(*a.fn, *b.fn); c != 0) return c;
      break;
  }
  if (a.tans.size() != b.tans.size()) return a.tans.size() < b.tans.size() ? -1 : 1;
  if (int c = compare(*a.point, *b.point); c != 0) return c;
  for (std::size_t i = 0; i < a.tans.size(); ++i)
    if (int c = compare(*a.tans[i], *b.tans[i]); c != 0) return c;
  return cmp_path(a.path, b.path);
}

int compare(const Nf& a, const Nf& b) {
  if (&a == &b) return 0;
  if (a.k != b.k) return a.k < b.k ? -1 : 1;
  switch (a.k) {
    case Nf::K::Unit:
      return 0;
    case Nf::K::Pair:
      if (int c = compare(*a.a, *b.a); c != 0) return c;
      return compare(*a.b, *b.b);
    case Nf::K::Sum: {
      std::size_t n = std::min(a.ns.size(), b.ns.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(*a.ns[i], *b.ns[i]); c != 0) return c;
      if (a.ns.size() != b.ns.size()) return a.ns.size() < b.ns.size() ? -1 : 1;
      return 0;
    }
    case Nf::K::Lam:
      return compare(*a.a, *b.a);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Basic operations

Normalizer::Normalizer(const Registry& reg, std::size_t fuel) : reg_(reg), typer_(reg), fuel_(fuel) {}

void Normalizer::tick() {
  if (++steps_ > fuel_) throw FuelExhausted(fuel_);
}

NfP Normalizer::reflect(const NeP& n, const Obj& ty) {
  if (ty.terminal()) return mk_unit();
  switch (ty.kind()) {
    case Obj::Kind::Prod:
      return mk_pair(reflect(with_path(*n, 1, ty.left()), ty.left()), reflect(with_path(*n, 2, ty.right()), ty.right()));
    case Obj::Kind::Base:
      return mk_sum({n});
    case Obj::Kind::Exp: {
      const Obj& x = ty.left();
      const Obj& y = ty.right();
      NeP app = mk_fun(rename_ne(n, kPre1, 0), var({2}, x), {}, y);
      return mk_lam(reflect(app, y), n);
    }
    case Obj::Kind::Unit:
      break;
  }
  return mk_unit();
}

NfP Normalizer::var(const Path& p, const Obj& ty) { return reflect(mk_var(p, ty), ty); }

NfP Normalizer::idnf(const Obj& ctx) {
  auto& bucket = id_cache_[ctx.hash()];
  for (const auto& [o, v] : bucket)
    if (o == ctx) return v;
  NfP v = var({}, ctx);
  bucket.emplace_back(ctx, v);
  return v;
}

NfP Normalizer::at(const NfP& v, const Path& p) {
  NfP cur = v;
  for (auto d : p) {
    if (cur->k == Nf::K::Unit) return cur;
    if (cur->k != Nf::K::Pair) throw Error("normalizer: projection out of a non-pair value");
    cur = d == 1 ? cur->a : cur->b;
  }
  return cur;
}

NfP Normalizer::zero(const Obj& ty) {
  if (ty.terminal()) return mk_unit();
  switch (ty.kind()) {
    case Obj::Kind::Prod: return mk_pair(zero(ty.left()), zero(ty.right()));
    case Obj::Kind::Base: return mk_sum({});
    case Obj::Kind::Exp: return mk_lam(zero(ty.right()));
    case Obj::Kind::Unit: break;
  }
  return mk_unit();
}

NfP Normalizer::add(const NfP& a, const NfP& b) {
  if (is_zero(*a)) return b;
  if (is_zero(*b)) return a;
  switch (a->k) {
    case Nf::K::Unit:
      return a;
    case Nf::K::Pair:
      return mk_pair(add(a->a, b->a), add(a->b, b->b));
    case Nf::K::Sum: {
      std::vector<NeP> out;
      out.reserve(a->ns.size() + b->ns.size());
      std::merge(a->ns.begin(), a->ns.end(), b->ns.begin(), b->ns.end(), std::back_inserter(out),
                 [](const NeP& x, const NeP& y) { return compare(*x, *y) < 0; });
      return mk_sum(std::move(out));
    }
    case Nf::K::Lam:
      return mk_lam(add(a->a, b->a));
  }
  return a;
}

std::vector<NfP> Normalizer::split(const NfP& v, const Obj& ty) {
  std::vector<NfP> out;
  if (ty.terminal()) return out;
  switch (v->k) {
    case Nf::K::Unit:
      break;
    case Nf::K::Pair: {
      NfP zl = zero(ty.left()), zr = zero(ty.right());
      for (auto& m : split(v->a, ty.left())) out.push_back(mk_pair(m, zr));
      for (auto& m : split(v->b, ty.right())) out.push_back(mk_pair(zl, m));
      break;
    }
    case Nf::K::Sum:
      for (const auto& n : v->ns) out.push_back(mk_sum({n}));
      break;
    case Nf::K::Lam: {
      auto parts = split(v->a, ty.right());
      if (v->eta && parts.size() == 1) {
        out.push_back(v);
      } else {
        for (auto& m : parts) out.push_back(mk_lam(m));
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

NfP Normalizer::subst(const NfP& v, const Obj& ty, const NfP& s, const Obj& ctx) {
  switch (v->k) {
    case Nf::K::Unit:
      return v;
    case Nf::K::Pair:
      return mk_pair(subst(v->a, ty.left(), s, ctx), subst(v->b, ty.right(), s, ctx));
    case Nf::K::Sum: {
      NfP acc = zero(ty);
      for (const auto& n : v->ns) acc = add(acc, subst_ne(*n, s, ctx));
      return acc;
    }
    case Nf::K::Lam: {
      if (v->eta) return subst_ne(*v->eta, s, ctx);
      const Obj& x = ty.left();
      NfP s2 = mk_pair(rename(s, kPre1, 0), var({2}, x));
      return mk_lam(subst(v->a, ty.right(), s2, Obj::prod(ctx, x)));
    }
  }
  return v;
}

NfP Normalizer::subst_ne(const Ne& n, const NfP& s, const Obj& ctx) {
  switch (n.k) {
    case Ne::K::Var:
      return at(s, n.path);
    case Ne::K::Atom: {
      const GenSig& g = reg_.get(n.gen);
      NfP p = subst(n.point, g.dom, s, ctx);
      std::vector<NfP> ts;
      ts.reserve(n.tans.size());
      for (const auto& t : n.tans) ts.push_back(subst(t, g.dom, s, ctx));
      return at(atom_jet(g, p, std::move(ts), ctx), n.path);
    }
    case Ne::K::Fun: {
      const Obj& fty = n.fn->ty;
      NfP f = subst_ne(*n.fn, s, ctx);
      NfP x = subst(n.point, fty.left(), s, ctx);
      std::vector<NfP> ys;
      ys.reserve(n.tans.size());
      for (const auto& y : n.tans) ys.push_back(subst(y, fty.left(), s, ctx));
      return at(fun_jet(f, fty, x, std::move(ys), ctx), n.path);
    }
  }
  return mk_unit();
}

// ---------------------------------------------------------------------------
// Jets

NfP Normalizer::multilinear(const std::vector<NfP>& ts, const Obj& tty, const Obj& rty,
                            const std::function<NeP(std::vector<NfP>)>& mk) {
  if (ts.empty()) return reflect(mk({}), rty);
  std::vector<std::vector<NfP>> parts;
  parts.reserve(ts.size());
  for (const auto& t : ts) {
    parts.push_back(split(t, tty));
    if (parts.back().empty()) return zero(rty);
  }
  NfP acc = zero(rty);
  std::vector<NfP> combo(ts.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == parts.size()) {
      auto sorted = combo;
      std::sort(sorted.begin(), sorted.end(), [](const NfP& a, const NfP& b) { return compare(*a, *b) < 0; });
      acc = add(acc, reflect(mk(std::move(sorted)), rty));
      return;
    }
    for (const auto& m : parts[i]) {
      combo[i] = m;
      go(i + 1);
    }
  };
  go(0);
  return acc;
}

NfP Normalizer::atom_jet(const GenSig& g, const NfP& p, std::vector<NfP> ts, const Obj& ctx) {
  tick();
  if (g.cod.terminal()) return mk_unit();
  const std::size_t k = ts.size();
  auto atom = [&](const NfP& pt) { return reflect(mk_atom(g.name, pt, {}, g.cod), g.cod); };

  if (g.linear) {
    if (k == 0) {
      NfP acc = zero(g.cod);
      for (const auto& m : split(p, g.dom)) acc = add(acc, atom(m));
      return acc;
    }
    if (k == 1) return atom_jet(g, ts[0], {}, ctx);
    return zero(g.cod);
  }

  if (g.bilinear) {
    const Obj& A = g.dom.left();
    const Obj& B = g.dom.right();
    auto form = [&](const NfP& a, const NfP& b) {
      NfP acc = zero(g.cod);
      for (const auto& ai : split(a, A))
        for (const auto& bj : split(b, B)) acc = add(acc, atom(mk_pair(ai, bj)));
      return acc;
    };
    auto l = [&](const NfP& v) { return at(v, {1}); };
    auto r = [&](const NfP& v) { return at(v, {2}); };
    switch (k) {
      case 0: return form(l(p), r(p));
      case 1: return add(form(l(ts[0]), r(p)), form(l(p), r(ts[0])));
      case 2: return add(form(l(ts[0]), r(ts[1])), form(l(ts[1]), r(ts[0])));
      default: return zero(g.cod);
    }
  }

  if (k == 0) return reflect(mk_atom(g.name, p, {}, g.cod), g.cod);

  if (g.derivative) {
    // g^(k)(p)[t1..tk] is the (k-1)-th jet of D(g) at (t1, p) along (0, ti).
    Obj dd = Obj::prod(g.dom, g.dom);
    auto it = djet_cache_.find("d0:" + g.name);
    if (it == djet_cache_.end()) it = djet_cache_.emplace("d0:" + g.name, std::make_pair(dd, eval_closed(*g.derivative))).first;
    std::vector<NfP> rest;
    NfP z = zero(g.dom);
    for (std::size_t i = 1; i < k; ++i) rest.push_back(mk_pair(z, ts[i]));
    return jet(it->second.second, g.cod, dd, mk_pair(ts[0], p), rest, ctx, "d:" + g.name);
  }

  return multilinear(ts, g.dom, g.cod, [&](std::vector<NfP> combo) {
    return mk_atom(g.name, p, std::move(combo), g.cod);
  });
}

NfP Normalizer::fun_jet_ne(const NeP& f, const NfP& x, std::vector<NfP> ys) {
  const Obj& fty = f->ty;
  return multilinear(ys, fty.left(), fty.right(), [&](std::vector<NfP> combo) {
    return mk_fun(f, x, std::move(combo), fty.right());
  });
}

NfP Normalizer::fun_jet(const NfP& f, const Obj& fty, const NfP& x, std::vector<NfP> ys, const Obj& ctx) {
  tick();
  const Obj& X = fty.left();
  const Obj& Y = fty.right();
  if (Y.terminal()) return mk_unit();
  if (f->eta) return fun_jet_ne(f->eta, x, std::move(ys));
  if (f->k != Nf::K::Lam) throw Error("normalizer: application of a non-function value");
  NfP point = mk_pair(idnf(ctx), x);
  if (ys.empty()) return subst(f->a, Y, point, ctx);
  std::vector<NfP> tans;
  NfP z = zero(ctx);
  for (const auto& y : ys) tans.push_back(mk_pair(z, y));
  return jet(f->a, Y, Obj::prod(ctx, X), point, tans, ctx, "");
}

NfP Normalizer::jet(const NfP& v, const Obj& ty, const Obj& vctx, const NfP& point, const std::vector<NfP>& tans,
                    const Obj& ctx, const std::string& memo_key) {
  tick();
  const std::size_t k = tans.size();
  if (k == 0) return subst(v, ty, point, ctx);
  NfP d;
  std::string key = memo_key.empty() ? "" : memo_key + "#" + std::to_string(k);
  if (!key.empty()) {
    if (auto it = djet_cache_.find(key); it != djet_cache_.end()) d = it->second.second;
  }
  if (!d) {
    d = v;
    Obj c = vctx;
    for (std::size_t i = 0; i < k; ++i) {
      d = dnf(d, ty, c);
      c = Obj::prod(c, c);
    }
    if (!key.empty()) djet_cache_.emplace(key, std::make_pair(c, d));
  }
  return subst(d, ty, jet_tree(point, tans, zero(vctx)), ctx);
}

// ---------------------------------------------------------------------------
// Differentiation

NfP Normalizer::dnf(const NfP& v, const Obj& ty, const Obj& ctx) {
  switch (v->k) {
    case Nf::K::Unit:
      return v;
    case Nf::K::Pair:
      return mk_pair(dnf(v->a, ty.left(), ctx), dnf(v->b, ty.right(), ctx));
    case Nf::K::Sum: {
      NfP acc = zero(ty);
      for (const auto& n : v->ns) acc = add(acc, dne(*n, ctx));
      return acc;
    }
    case Nf::K::Lam: {
      if (v->eta) return dne(*v->eta, ctx);
      // D(curry f) = curry(D(f) o t') with t' = <<pi1 o pi1, 0>, <pi2 o pi1, pi2>>.
      const Obj& X = ty.left();
      const Obj& Y = ty.right();
      Obj cx = Obj::prod(ctx, X);
      NfP db = dnf(v->a, Y, cx);
      NfP tp = mk_pair(mk_pair(var({1, 1}, ctx), zero(X)), mk_pair(var({1, 2}, ctx), var({2}, X)));
      return mk_lam(subst(db, Y, tp, Obj::prod(Obj::prod(ctx, ctx), X)));
    }
  }
  return v;
}

NfP Normalizer::dne(const Ne& n, const Obj& ctx) {
  tick();
  Obj cc = Obj::prod(ctx, ctx);
  switch (n.k) {
    case Ne::K::Var: {
      Path p{1};
      p.insert(p.end(), n.path.begin(), n.path.end());
      return var(p, n.ty);
    }
    case Ne::K::Atom: {
      const GenSig& g = reg_.get(n.gen);
      NfP P = rename(n.point, kPre2, 0);
      std::vector<NfP> Ts, dts;
      for (const auto& t : n.tans) {
        Ts.push_back(rename(t, kPre2, 0));
        dts.push_back(dnf(t, g.dom, ctx));
      }
      std::vector<NfP> first{dnf(n.point, g.dom, ctx)};
      first.insert(first.end(), Ts.begin(), Ts.end());
      NfP r = atom_jet(g, P, first, cc);
      for (std::size_t i = 0; i < Ts.size(); ++i) {
        auto ts = Ts;
        ts[i] = dts[i];
        r = add(r, atom_jet(g, P, ts, cc));
      }
      return at(r, n.path);
    }
    case Ne::K::Fun: {
      const Obj& fty = n.fn->ty;
      const Obj& X = fty.left();
      NfP X1 = rename(n.point, kPre2, 0);
      std::vector<NfP> Ys, dys;
      for (const auto& y : n.tans) {
        Ys.push_back(rename(y, kPre2, 0));
        dys.push_back(dnf(y, X, ctx));
      }
      NeP fn2 = rename_ne(n.fn, kPre2, 0);
      // Linear in the function: F'^(k)(x)[ys].
      NfP r = fun_jet(dne(*n.fn, ctx), fty, X1, Ys, cc);
      std::vector<NfP> first{dnf(n.point, X, ctx)};
      first.insert(first.end(), Ys.begin(), Ys.end());
      r = add(r, fun_jet_ne(fn2, X1, first));
      for (std::size_t i = 0; i < Ys.size(); ++i) {
        auto ys = Ys;
        ys[i] = dys[i];
        r = add(r, fun_jet_ne(fn2, X1, ys));
      }
      return at(r, n.path);
    }
  }
  return mk_unit();
}

// ---------------------------------------------------------------------------
// Evaluation

NfP Normalizer::eval_closed(const Mor& f) {
  MorType t = typer_(f);
  return eval(f, idnf(t.dom), t.dom);
}

NfP Normalizer::eval(const Mor& f, const NfP& s, const Obj& ctx) {
  tick();
  MorType t = typer_(f);
  if (t.cod.terminal()) return mk_unit();
  using K = Mor::Kind;
  switch (f.kind()) {
    case K::Id:
      return s;
    case K::Proj1:
      return at(s, {1});
    case K::Proj2:
      return at(s, {2});
    case K::Pair:
      return mk_pair(eval(f.first(), s, ctx), eval(f.second(), s, ctx));
    case K::Compose:
      return eval(f.first(), eval(f.second(), s, ctx), ctx);
    case K::Zero:
      return zero(t.cod);
    case K::Sum:
      return add(eval(f.first(), s, ctx), eval(f.second(), s, ctx));
    case K::Bang:
      return mk_unit();
    case K::Ev:
      return fun_jet(at(s, {1}), Obj::exp(f.obj1(), f.obj2()), at(s, {2}), {}, ctx);
    case K::Curry: {
      const Obj& x = f.obj2();
      NfP s2 = mk_pair(rename(s, kPre1, 0), var({2}, x));
      return mk_lam(eval(f.first(), s2, Obj::prod(ctx, x)));
    }
    case K::Gen:
      return atom_jet(reg_.get(f.name()), s, {}, ctx);
    case K::D: {
      const Mor& g = f.first();
      auto it = dbody_cache_.find(g.identity());
      if (it == dbody_cache_.end()) {
        MorType gt = typer_(g);
        NfP body = dnf(eval_closed(g), gt.cod, gt.dom);
        it = dbody_cache_.emplace(g.identity(), std::make_pair(g, body)).first;
      }
      return subst(it->second.second, t.cod, s, ctx);
    }
  }
  throw Error("normalizer: corrupt term");
}

// ---------------------------------------------------------------------------
// Read-back

NeP Normalizer::as_neutral(const NfP& v, const Obj& ty) {
  switch (v->k) {
    case Nf::K::Unit:
      return nullptr;
    case Nf::K::Sum:
      return v->ns.size() == 1 ? v->ns[0] : nullptr;
    case Nf::K::Pair: {
      NeP a = as_neutral(v->a, ty.left());
      if (!a || a->path.empty() || a->path.back() != 1) return nullptr;
      auto base = std::make_shared<Ne>(*a);
      base->path.pop_back();
      base->ty = ty;
      rehash(*base);
      if (!equal(reflect(base, ty), v)) return nullptr;
      return base;
    }
    case Nf::K::Lam: {
      if (v->eta) return v->eta;
      NeP m = as_neutral(v->a, ty.right());
      if (!m || m->k != Ne::K::Fun || !m->tans.empty() || !m->path.empty()) return nullptr;
      if (!equal(m->point, var({2}, ty.left()))) return nullptr;
      if (!only_left_ne(*m->fn, 0)) return nullptr;
      return rename_ne(m->fn, kStrip, 0);
    }
  }
  return nullptr;
}

Mor Normalizer::reify(const NfP& v, const Obj& ty, const Obj& ctx) {
  if (ty == ctx && equal(v, idnf(ctx))) return Mor::id(ctx);
  if (is_zero(*v)) return Mor::zero(ctx, ty);
  switch (v->k) {
    case Nf::K::Unit:
      return Mor::zero(ctx, ty);
    case Nf::K::Pair: {
      if (NeP n = as_neutral(v, ty); n && n->k != Ne::K::Var) return reify_ne(*n, ctx);
      return Mor::pair(reify(v->a, ty.left(), ctx), reify(v->b, ty.right(), ctx));
    }
    case Nf::K::Sum: {
      Mor acc = reify_ne(*v->ns.back(), ctx);
      for (std::size_t i = v->ns.size() - 1; i-- > 0;) acc = Mor::sum(reify_ne(*v->ns[i], ctx), acc);
      return acc;
    }
    case Nf::K::Lam: {
      if (NeP n = as_neutral(v, ty)) return reify_ne(*n, ctx);
      const Obj& X = ty.left();
      return Mor::curry(reify(v->a, ty.right(), Obj::prod(ctx, X)), ctx, X);
    }
  }
  throw Error("normalizer: corrupt value");
}

Mor Normalizer::reify_jet(const Mor& head, const NfP& point, const std::vector<NfP>& tans, const Obj& pty,
                          const Obj& ctx) {
  Mor h = head;
  for (std::size_t i = 0; i < tans.size(); ++i) h = Mor::d(h);
  NfP tree = jet_tree(point, tans, zero(pty));
  return cat(h, reify(tree, power(pty, tans.size()), ctx));
}

Mor Normalizer::reify_ne(const Ne& n, const Obj& ctx) {
  switch (n.k) {
    case Ne::K::Var:
      return proj_chain(n.path, ctx);
    case Ne::K::Atom: {
      const GenSig& g = reg_.get(n.gen);
      Mor base = reify_jet(Mor::gen(n.gen), n.point, n.tans, g.dom, ctx);
      return cat(proj_chain(n.path, g.cod), base);
    }
    case Ne::K::Fun: {
      const Obj& fty = n.fn->ty;
      const Obj& X = fty.left();
      Obj pty = Obj::prod(fty, X);
      NfP core = mk_pair(reflect(n.fn, fty), n.point);
      std::vector<NfP> tans;
      NfP z = zero(fty);
      for (const auto& y : n.tans) tans.push_back(mk_pair(z, y));
      Mor base = reify_jet(Mor::ev(X, fty.right()), core, tans, pty, ctx);
      return cat(proj_chain(n.path, fty.right()), base);
    }
  }
  throw Error("normalizer: corrupt neutral");
}

Mor Normalizer::normalize(const Mor& f) {
  MorType t = typer_(f);
  return reify(eval_closed(f), t.cod, t.dom);
}

}  // namespace cdc::nbe
