#include "kreg/modgb.hpp"

#include <algorithm>
#include <sstream>

namespace kreg {

namespace {

bool same_position(const ModuleMonomial& a, const ModuleMonomial& b) { return a.position == b.position; }

}  // namespace

const std::pair<const ModuleMonomial, RatFunc>& ModuleElem::leading_term() const {
  if (terms_.empty()) throw MathError("leading term of the zero module element");
  return *terms_.begin();
}

void ModuleElem::add_term(const ModuleMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  if (n_ == 0) n_ = m.mono.nvars();
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::pair<ModuleMonomial, RatFunc> ModuleElem::pop_leading_term() {
  auto node = terms_.extract(terms_.begin());
  return {std::move(node.key()), std::move(node.mapped())};
}

MPoly ModuleElem::eta1() const {
  MPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (!m.position) r.add_term(m.mono, c);
  return r;
}

std::map<Exponent, MPoly, GradedDesc> ModuleElem::eta0() const {
  std::map<Exponent, MPoly, GradedDesc> r;
  for (const auto& [m, c] : terms_)
    if (m.position) r.try_emplace(*m.position, MPoly(n_)).first->second.add_term(m.mono, c);
  return r;
}

ModuleElem ModuleElem::mul_term(const Exponent& e, const RatFunc& c) const {
  ModuleElem r(n_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), ModuleMonomial{m.position, m.mono + e}, x * c);
  return r;
}

ModuleElem ModuleElem::mul(const MPoly& s) const {
  ModuleElem r(n_);
  for (const auto& [e, c] : s) r += mul_term(e, c);
  return r;
}

ModuleElem ModuleElem::scale(const RatFunc& c) const { return mul_term(Exponent(n_), c); }

void ModuleElem::sub_mul(const ModuleElem& o, const Exponent& e, const RatFunc& c) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, x] : o.terms_) add_term(ModuleMonomial{m.position, m.mono + e}, -(x * c));
}

ModuleElem& ModuleElem::operator+=(const ModuleElem& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ModuleElem& ModuleElem::operator-=(const ModuleElem& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ModuleElem eta_embed(const WeylOp& a) {
  DLeftForm f = to_dleft(a);
  ModuleElem r(a.nvars());
  for (const auto& [beta, poly] : f.parts) {
    std::optional<Exponent> pos;
    if (!beta.is_zero()) pos = beta;
    for (const auto& [e, c] : poly) r.add_term(ModuleMonomial{pos, e}, c);
  }
  return r;
}

DLeftForm eta_to_dleft(const ModuleElem& m) {
  DLeftForm f;
  f.nvars = m.nvars();
  const Exponent zero(m.nvars());
  for (const auto& [mm, c] : m.terms()) {
    const Exponent& beta = mm.position ? *mm.position : zero;
    f.parts.try_emplace(beta, MPoly(m.nvars())).first->second.add_term(mm.mono, c);
  }
  return f;
}

WeylOp eta_to_weyl(const ModuleElem& m) { return from_dleft(eta_to_dleft(m)); }

namespace {

struct Entry {
  ModuleElem f;
  std::vector<MPoly> cof;
  ModuleMonomial lead;
  bool active = true;
};

struct Pair {
  std::size_t i, j;
  ModuleMonomial lcm;
};

class Buchberger {
public:
  Buchberger(std::size_t ngens, int nvars, bool track) : ngens_(ngens), n_(nvars), track_(track) {}

  void add_generator(const ModuleElem& g, std::size_t index) {
    ModuleElem f = g;
    std::vector<MPoly> cof;
    if (track_) {
      cof.assign(ngens_, MPoly(n_));
      cof[index] = MPoly::constant(n_, RatFunc(1));
    }
    ModuleElem h = reduce(std::move(f), cof);
    insert(std::move(h), std::move(cof));
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it)
        if (order_cmp(it->lcm, best->lcm) == Ordering::LT) best = it;
      Pair p = *best;
      pairs_.erase(best);
      ++stats.pairs_reduced;
      const Entry& a = entries_[p.i];
      const Entry& b = entries_[p.j];
      const Exponent ea = p.lcm.mono - a.lead.mono, eb = p.lcm.mono - b.lead.mono;
      ModuleElem s = a.f.mul_term(ea, RatFunc(1));
      s.sub_mul(b.f, eb, RatFunc(1));
      std::vector<MPoly> cof;
      if (track_) {
        cof.resize(ngens_);
        for (std::size_t g = 0; g < ngens_; ++g)
          cof[g] = a.cof[g].mul_term(ea, RatFunc(1)) - b.cof[g].mul_term(eb, RatFunc(1));
      }
      ModuleElem h = reduce(std::move(s), cof);
      if (h.is_zero()) {
        ++stats.zero_reductions;
        continue;
      }
      insert(std::move(h), std::move(cof));
    }
  }

  GBResult finish() {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].active) keep.push_back(i);
    std::sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) {
      return order_cmp(entries_[x].lead, entries_[y].lead) == Ordering::LT;
    });
    // Interreduce from the smallest lead upward; leads stay fixed.
    std::vector<std::size_t> done;
    for (std::size_t idx : keep) {
      Entry& e = entries_[idx];
      e.f = reduce_tail(std::move(e.f), e.cof, done);
      done.push_back(idx);
    }
    GBResult res;
    res.stats = stats;
    for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
      res.basis.push_back(entries_[*it].f);
      if (track_) res.cofactors.push_back(entries_[*it].cof);
    }
    return res;
  }

  GBStats stats;

private:
  const Entry* find_reducer(const ModuleMonomial& m, const std::vector<std::size_t>* among) const {
    if (among) {
      for (std::size_t i : *among) {
        const Entry& e = entries_[i];
        if (same_position(e.lead, m) && e.lead.mono.divides(m.mono)) return &e;
      }
      return nullptr;
    }
    for (const Entry& e : entries_)
      if (e.active && same_position(e.lead, m) && e.lead.mono.divides(m.mono)) return &e;
    return nullptr;
  }

  void subtract(ModuleElem& f, std::vector<MPoly>& cof, const Entry& r, const Exponent& e, const RatFunc& c) {
    f.sub_mul(r.f, e, c);
    if (track_)
      for (std::size_t g = 0; g < ngens_; ++g) cof[g] -= r.cof[g].mul_term(e, c);
  }

  // Full reduction against the active basis, then made monic.
  ModuleElem reduce(ModuleElem f, std::vector<MPoly>& cof, const std::vector<std::size_t>* among = nullptr) {
    ModuleElem rem(n_);
    while (!f.is_zero()) {
      const auto& [m, c] = f.leading_term();
      if (const Entry* r = find_reducer(m, among)) {
        const Exponent e = m.mono - r->lead.mono;
        const RatFunc cc = c;
        subtract(f, cof, *r, e, cc);
      } else {
        auto [mm, cc] = f.pop_leading_term();
        rem.add_term(mm, cc);
      }
    }
    if (rem.is_zero()) return rem;
    const RatFunc inv = rem.leading_term().second.inverse();
    if (!inv.is_one()) {
      rem = rem.scale(inv);
      if (track_)
        for (auto& c : cof) c = c.scale(inv);
    }
    return rem;
  }

  ModuleElem reduce_tail(ModuleElem f, std::vector<MPoly>& cof, const std::vector<std::size_t>& among) {
    auto [m, c] = f.pop_leading_term();
    ModuleElem head(n_);
    head.add_term(m, c);
    ModuleElem tail = f;
    // Reduce only the tail; the lead is already irreducible.
    ModuleElem rem(n_);
    while (!tail.is_zero()) {
      const auto& [tm, tc] = tail.leading_term();
      if (const Entry* r = find_reducer(tm, &among)) {
        const Exponent e = tm.mono - r->lead.mono;
        const RatFunc cc = tc;
        subtract(tail, cof, *r, e, cc);
      } else {
        auto [mm, cc] = tail.pop_leading_term();
        rem.add_term(mm, cc);
      }
    }
    return head + rem;
  }

  void insert(ModuleElem h, std::vector<MPoly> cof) {
    if (h.is_zero()) return;
    const ModuleMonomial lead = h.leading_term().first;
    const std::size_t hi = entries_.size();

    // Drop queued pairs (i, j) whose lcm is divisible by lead(h) strictly.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (!same_position(p.lcm, lead) || !lead.mono.divides(p.lcm.mono)) return false;
      const Exponent li = lcm(entries_[p.i].lead.mono, lead.mono);
      const Exponent lj = lcm(entries_[p.j].lead.mono, lead.mono);
      const bool prune = li != p.lcm.mono && lj != p.lcm.mono;
      if (prune) ++stats.pairs_chain_pruned;
      return prune;
    });

    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const Entry& e = entries_[i];
      if (!e.active || !same_position(e.lead, lead)) continue;
      fresh.push_back(Pair{i, hi, ModuleMonomial{lead.position, lcm(e.lead.mono, lead.mono)}});
    }
    stats.pairs_created += fresh.size();
    // Among the new pairs keep only those with minimal lcm, one per lcm.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
        if (a == b || !fresh[b].lcm.mono.divides(fresh[a].lcm.mono)) continue;
        if (fresh[b].lcm.mono != fresh[a].lcm.mono || b < a) drop = true;
      }
      if (drop)
        ++stats.pairs_chain_pruned;
      else
        kept.push_back(fresh[a]);
    }
    for (auto& p : kept) pairs_.push_back(p);

    for (Entry& e : entries_)
      if (e.active && same_position(e.lead, lead) && lead.mono.divides(e.lead.mono)) e.active = false;
    entries_.push_back(Entry{std::move(h), std::move(cof), lead, true});
  }

  std::size_t ngens_;
  int n_;
  bool track_;
  std::vector<Entry> entries_;
  std::vector<Pair> pairs_;
};

}  // namespace

GBResult module_buchberger(const std::vector<ModuleElem>& gens, const GBOptions& opts) {
  if (gens.empty()) throw MathError("no generators");
  const int n = gens.front().nvars();
  Buchberger bb(gens.size(), n, opts.track_cofactors);
  for (std::size_t i = 0; i < gens.size(); ++i) bb.add_generator(gens[i], i);
  bb.run();
  return bb.finish();
}

ModuleElem module_normal_form(const ModuleElem& f, const std::vector<ModuleElem>& basis) {
  ModuleElem cur = f, rem(f.nvars());
  while (!cur.is_zero()) {
    const auto& [m, c] = cur.leading_term();
    const ModuleElem* red = nullptr;
    for (const auto& b : basis) {
      if (b.is_zero()) continue;
      const auto& lt = b.leading_term().first;
      if (same_position(lt, m) && lt.mono.divides(m.mono)) {
        red = &b;
        break;
      }
    }
    if (red) {
      const auto& [lm, lc] = red->leading_term();
      const Exponent e = m.mono - lm.mono;
      const RatFunc q = c / lc;
      cur.sub_mul(*red, e, q);
    } else {
      auto [mm, cc] = cur.pop_leading_term();
      rem.add_term(mm, cc);
    }
  }
  return rem;
}

Reducer make_reducer(const ModuleElem& e) {
  Reducer r;
  r.Q = e.eta1();
  if (r.Q.is_zero()) throw MathError("element does not involve eta1");
  r.G = eta_to_weyl(e);
  r.R = r.G - WeylOp::from_poly(r.Q);
  std::tie(r.m, r.c) = r.Q.leading_term();
  DLeftForm d = eta_to_dleft(e);
  const RatFunc inv = r.c.inverse();
  for (auto& [beta, poly] : d.parts) poly = poly.scale(inv);
  r.dleft = std::move(d);
  return r;
}

std::vector<Reducer> extract_reducers(const std::vector<ModuleElem>& gb) {
  std::vector<Reducer> out;
  for (const auto& e : gb)
    if (!e.eta1().is_zero()) out.push_back(make_reducer(e));
  if (out.empty()) throw MathError("no candidate reducers");
  return out;
}

bool is_dominant(const Reducer& r) {
  const int deg = r.m.total_degree();
  const int n = r.G.nvars();
  const WeylMonomial lead{r.m, Exponent(n)};
  for (const auto& [mono, c] : r.G) {
    if (mono == lead) continue;
    const int lift = mono.p.total_degree() - mono.d.total_degree();
    if (lift < deg) continue;
    // p^a d^b sends mu to a multiple of p^a mu / p^b, which stays below m mu
    // exactly when p^a < m p^b.
    if (lift == deg && cmp_graded(mono.p, r.m + mono.d) == Ordering::LT) continue;
    return false;
  }
  return true;
}

std::string to_string(const ModuleElem& m) {
  if (m.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mm, c] : m.terms()) {
    bool neg = false;
    std::string text = coeff_text(c, &neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (text != "1" || mm.mono.is_zero()) os << text << "*";
    if (!mm.mono.is_zero()) os << mm.mono.to_string("p") << "*";
    os << (mm.position ? mm.position->to_string("d") + "*eta0" : std::string("eta1"));
  }
  return os.str();
}

}  // namespace kreg
