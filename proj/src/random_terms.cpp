#include "cdc/random_terms.hpp"

namespace cdc {

TermGen::TermGen(const Registry& reg, std::uint64_t seed, TermGenOptions opts)
    : reg_(reg), rng_(seed), opts_(opts) {
  Obj r = parse_obj("R"), r2 = parse_obj("R2");
  pool_ = {r, r2, Obj::prod(r, r), Obj::prod(r2, r), Obj::prod(r, Obj::prod(r, r))};
  for (const auto& name : reg_.names()) {
    const GenSig& g = reg_.get(name);
    if (opts_.numeric_only && g.body.empty()) continue;
    if (!g.dom.first_order() || !g.cod.first_order()) continue;
    gens_.push_back(&g);
  }
}

std::size_t TermGen::below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

const Obj& TermGen::pick() { return pool_[below(pool_.size())]; }

Mor TermGen::any() {
  Obj d = pick();
  Obj c = pick();
  return term(d, c, opts_.max_depth);
}

Mor TermGen::leaf(const Obj& dom, const Obj& cod) {
  std::vector<Mor> c;
  if (dom == cod) c.push_back(Mor::id(dom));
  if (dom.is_prod()) {
    if (dom.left() == cod) c.push_back(Mor::proj1(dom.left(), dom.right()));
    if (dom.right() == cod) c.push_back(Mor::proj2(dom.left(), dom.right()));
  }
  for (const GenSig* g : gens_)
    if (g->dom == dom && g->cod == cod) c.push_back(Mor::gen(g->name));
  if (c.empty() || below(6) == 0) c.push_back(Mor::zero(dom, cod));
  return c[below(c.size())];
}

Mor TermGen::term(const Obj& dom, const Obj& cod, int depth) {
  if (depth <= 0) return leaf(dom, cod);
  for (;;) {
    switch (below(8)) {
      case 0: return leaf(dom, cod);
      case 1: {
        const Obj& y = pick();
        return Mor::compose(term(y, cod, depth - 1), term(dom, y, depth - 1));
      }
      case 2:
        if (!cod.is_prod()) break;
        return Mor::pair(term(dom, cod.left(), depth - 1), term(dom, cod.right(), depth - 1));
      case 3: return Mor::sum(term(dom, cod, depth - 1), term(dom, cod, depth - 1));
      case 4: {
        std::vector<const GenSig*> fit;
        for (const GenSig* g : gens_)
          if (g->cod == cod) fit.push_back(g);
        if (fit.empty()) break;
        const GenSig* g = fit[below(fit.size())];
        return Mor::compose(Mor::gen(g->name), term(dom, g->dom, depth - 1));
      }
      case 5: {
        const Obj& x = pick();
        return Mor::compose(Mor::d(term(x, cod, depth - 1)), term(dom, Obj::tangent(x), depth - 1));
      }
      case 6: {
        if (!opts_.higher_order) break;
        const Obj& y = pick();
        Mor body = term(Obj::prod(dom, y), cod, depth - 1);
        Mor fn = Mor::curry(body, dom, y);
        return Mor::compose(Mor::ev(y, cod), Mor::pair(fn, term(dom, y, depth - 1)));
      }
      default: {
        // Precompose with a structural map so projections and pairings meet.
        if (!dom.is_prod()) break;
        Obj sw = Obj::prod(dom.right(), dom.left());
        Mor swap = Mor::pair(Mor::proj2(dom.left(), dom.right()), Mor::proj1(dom.left(), dom.right()));
        return Mor::compose(term(sw, cod, depth - 1), swap);
      }
    }
  }
}

}  // namespace cdc
