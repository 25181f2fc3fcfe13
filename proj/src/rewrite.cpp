#include "cdc/rewrite.hpp"

#include "cdc/normal_form.hpp"
#include "cdc/typecheck.hpp"

namespace cdc {

NormalizeResult normalize(const Mor& f, const Registry& reg, std::size_t fuel) {
  nbe::Normalizer n(reg, fuel);
  try {
    Mor nf = n.normalize(f);
    return {nf, false, n.steps()};
  } catch (const FuelExhausted&) {
    return {f, true, n.steps()};
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "Proved";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

EqualityResult equal_mod_theory(const Mor& f, const Mor& g, const Registry& reg, const EqualityOptions& opts) {
  MorType tf = typecheck(f, reg);
  MorType tg = typecheck(g, reg);
  if (!(tf == tg)) throw TypeMismatch(g.str(), tf.str(), tg.str(), "equality between different types");

  EqualityResult r;
  NormalizeResult a = normalize(f, reg, opts.fuel);
  NormalizeResult b = normalize(g, reg, opts.fuel);
  r.lhs_nf = a.term;
  r.rhs_nf = b.term;
  if (!a.exhausted && !b.exhausted && a.term == b.term) {
    r.verdict = Verdict::Proved;
    r.reason = "canonical forms coincide";
    return r;
  }
  r.reason = a.exhausted || b.exhausted ? "normalization fuel exhausted" : "canonical forms differ";
  if (!opts.numeric) return r;
  if (!tf.dom.first_order() || !tf.cod.first_order()) {
    r.reason += "; no numeric model at higher-order types";
    return r;
  }
  try {
    euclid::LawResult lr = euclid::law_check(f, g, opts.points, opts.seed, opts.tol, reg);
    r.max_error = lr.max_error;
    if (!lr.pass) {
      r.verdict = Verdict::Refuted;
      r.witness = lr.witness;
      r.reason = "numeric disagreement";
    } else {
      r.reason += "; numerically consistent at " + std::to_string(opts.points) + " points";
    }
  } catch (const Error& e) {
    r.reason += std::string("; numeric check unavailable: ") + e.what();
  }
  return r;
}

}  // namespace cdc
