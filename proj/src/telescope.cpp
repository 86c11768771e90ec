#include "kreg/telescope.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace kreg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BigInt falling_product(const Exponent& e, const Exponent& beta) {
  BigInt f = 1;
  for (int i = 0; i < e.nvars(); ++i)
    for (int j = 0; j < beta[i]; ++j) f *= e[i] - j;
  return f;
}

// cur -= (G / c) * (coeff * p^shift), term by term.
void subtract_applied(MPoly& cur, const DLeftForm& g, const Exponent& shift, const RatFunc& coeff) {
  for (const auto& [beta, poly] : g.parts)
    for (const auto& [gam, cg] : poly) {
      const Exponent e = gam + shift;
      if (!beta.divides(e)) continue;
      const BigInt f = falling_product(e, beta);
      RatFunc v = cg * coeff;
      if (f != 1) v *= Rat(f);
      cur.sub_term(e - beta, v);
    }
}

}  // namespace

MPoly apply_reducer(const Reducer& r, const MPoly& u) { return apply(r.G, u); }

Reduction red(const MPoly& s, const ReductionBasis& basis, bool keep_trace) {
  // Reducer preference: largest leading monomial, then list index.
  std::vector<std::size_t> pref(basis.reducers.size());
  std::iota(pref.begin(), pref.end(), std::size_t{0});
  std::stable_sort(pref.begin(), pref.end(), [&](std::size_t a, std::size_t b) {
    return cmp_graded(basis.reducers[a].m, basis.reducers[b].m) == Ordering::GT;
  });

  Reduction out;
  MPoly cur = s;
  std::optional<Exponent> cursor;
  while (true) {
    auto it = cursor ? cur.terms().lower_bound(*cursor) : cur.terms().begin();
    const Reducer* chosen = nullptr;
    std::size_t chosen_index = 0;
    for (; it != cur.terms().end() && !chosen; ++it)
      for (std::size_t j : pref)
        if (basis.reducers[j].m.divides(it->first)) {
          chosen = &basis.reducers[j];
          chosen_index = j;
          break;
        }
    if (!chosen) break;
    --it;
    const Exponent m = it->first;
    const RatFunc c = it->second;
    const Exponent shift = m - chosen->m;
    subtract_applied(cur, chosen->dleft, shift, c);
    if (!cur.coeff(m).is_zero()) throw MathError("reduction step did not cancel " + m.to_string());
    if (keep_trace) out.trace.push_back(TraceStep{chosen_index, shift, c / chosen->c});
    cursor = m;
  }
  out.result = std::move(cur);
  return out;
}

bool verify_trace(const MPoly& s, const Reduction& r, const ReductionBasis& basis) {
  MPoly acc = r.result;
  for (const auto& step : r.trace)
    acc += apply(basis.reducers.at(step.reducer).G, MPoly::monomial(step.mono, step.coeff));
  return acc == s;
}

std::optional<std::vector<RatFunc>> IncrementalKernel::add_row(const std::vector<RatFunc>& row) {
  if (row.size() != ncols_) throw MathError("kernel row has the wrong length");
  // Clear denominators: cleared = L * row.
  UniPoly L{1};
  for (const auto& x : row)
    if (!x.is_zero()) {
      UniPoly d = x.denominator();
      UniPoly g = gcd(L, d);
      L = L * divexact(d, g);
    }
  Row r;
  r.v.reserve(ncols_);
  for (const auto& x : row) {
    if (x.is_zero()) {
      r.v.emplace_back();
      continue;
    }
    RatFunc y = x * RatFunc(L);
    if (!y.is_polynomial() || y.scale().get_den() != 1) throw MathError("denominator clearing failed");
    r.v.push_back(y.numerator());
  }
  const std::size_t index = scales_.size();
  scales_.push_back(RatFunc(L));
  r.cof.assign(index + 1, UniPoly());
  r.cof[index] = UniPoly{1};

  for (const Row& e : echelon_) {
    if (r.v[e.pivot].is_zero()) continue;
    const UniPoly a = e.v[e.pivot], b = r.v[e.pivot];
    for (std::size_t c = 0; c < ncols_; ++c) r.v[c] = a * r.v[c] - b * e.v[c];
    for (std::size_t c = 0; c < e.cof.size(); ++c) r.cof[c] = a * r.cof[c] - b * e.cof[c];
    for (std::size_t c = e.cof.size(); c < r.cof.size(); ++c) r.cof[c] = a * r.cof[c];
    // Strip the common polynomial content of the row and its cofactors.
    UniPoly g;
    for (const auto* vec : {&r.v, &r.cof})
      for (const auto& x : *vec)
        if (!x.is_zero()) {
          g = g.is_zero() ? primitive_part(x) : gcd(g, x);
          if (g.is_one()) break;
        }
    if (!g.is_zero() && !g.is_one())
      for (auto* vec : {&r.v, &r.cof})
        for (auto& x : *vec)
          if (!x.is_zero()) x = divexact(x, g);
    BigInt content = 0;
    for (const auto* vec : {&r.v, &r.cof})
      for (const auto& x : *vec)
        if (!x.is_zero()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.content().get_mpz_t());
    if (content > 1)
      for (auto* vec : {&r.v, &r.cof})
        for (auto& x : *vec)
          if (!x.is_zero()) x = x.divexact(content);
  }

  auto nz = std::find_if(r.v.begin(), r.v.end(), [](const UniPoly& x) { return !x.is_zero(); });
  if (nz == r.v.end()) {
    // sum_i cof_i * cleared_i = 0 with cleared_i = scales_i * row_i.
    std::vector<RatFunc> rel;
    for (std::size_t i = 0; i < r.cof.size(); ++i) rel.push_back(RatFunc(r.cof[i]) * scales_[i]);
    scales_.pop_back();
    return rel;
  }
  r.pivot = static_cast<std::size_t>(nz - r.v.begin());
  echelon_.push_back(std::move(r));
  return std::nullopt;
}

std::optional<std::vector<RatFunc>> left_kernel_step(const std::vector<std::vector<RatFunc>>& rows) {
  if (rows.empty()) return std::nullopt;
  IncrementalKernel k(rows.front().size());
  for (const auto& row : rows)
    if (auto rel = k.add_row(row)) return rel;
  return std::nullopt;
}

std::vector<RatFunc> stairs_coordinates(const MPoly& s, const std::vector<Exponent>& stairs) {
  std::vector<RatFunc> v;
  v.reserve(stairs.size());
  std::size_t found = 0;
  for (const auto& e : stairs) {
    RatFunc c = s.coeff(e);
    if (!c.is_zero()) ++found;
    v.push_back(std::move(c));
  }
  if (found != s.size()) throw MathError("polynomial is not supported on the stairs");
  return v;
}

DeriveResult derive_ode(const ModelSpec& model, const DeriveOptions& opts) {
  DeriveResult res;
  res.model = model;
  const int k = model.k();

  auto t0 = Clock::now();
  res.g = build_g(model);
  res.generators = build_generators(model);
  std::vector<ModuleElem> gens;
  for (const auto& P : res.generators) gens.push_back(eta_embed(P));
  res.times.generators = seconds_since(t0);

  t0 = Clock::now();
  GBOptions gbo;
  gbo.track_cofactors = opts.track_cofactors;
  res.gb = module_buchberger(gens, gbo);
  res.times.groebner = seconds_since(t0);

  res.basis.nvars = k;
  for (const auto& e : res.gb.basis)
    if (!e.eta1().is_zero()) res.basis.reducers.push_back(make_reducer(e));
  if (res.basis.reducers.empty()) {
    res.status = DeriveStatus::Fail;
    res.reason = "no candidate reducers";
    return res;
  }
  for (const auto& r : res.basis.reducers)
    if (!is_dominant(r)) {
      res.status = DeriveStatus::FailDominance;
      res.reason = "reducer with leading monomial " + r.m.to_string() + " is not dominant";
      return res;
    }
  std::vector<Exponent> leads;
  for (const auto& r : res.basis.reducers) leads.push_back(r.m);
  StairsResult st = stairs_and_dim(leads);
  if (!st.zero_dimensional || st.stairs.empty()) {
    res.status = DeriveStatus::Fail;
    res.reason = st.zero_dimensional ? "ideal is the unit ideal" : "ideal has positive dimension";
    return res;
  }
  res.basis.stairs = std::move(st.stairs);

  const std::size_t delta = res.basis.stairs.size();
  IncrementalKernel kernel(delta);
  res.ghat.push_back(MPoly::constant(k, RatFunc(1)));
  double kernel_time = 0;
  auto tk = Clock::now();
  auto rel = kernel.add_row(stairs_coordinates(res.ghat.back(), res.basis.stairs));
  kernel_time += seconds_since(tk);
  t0 = Clock::now();
  while (!rel) {
    if (res.ghat.size() > delta) throw MathError("no dependency among delta + 1 reduced forms");
    const MPoly& prev = res.ghat.back();
    MPoly s = res.g * prev + diff_t(prev);
    Reduction r = red(s, res.basis, opts.keep_traces || opts.verify_traces);
    if (opts.verify_traces && !verify_trace(s, r, res.basis))
      throw MathError("reduction replay failed at step " + std::to_string(res.ghat.size()));
    res.ghat.push_back(r.result);
    if (opts.keep_traces) res.traces.push_back(std::move(r));
    tk = Clock::now();
    rel = kernel.add_row(stairs_coordinates(res.ghat.back(), res.basis.stairs));
    kernel_time += seconds_since(tk);
  }
  res.times.kernel = kernel_time;
  res.times.reductions = seconds_since(t0) - kernel_time;
  res.relation = *rel;
  res.ode = normalize_ode(res.relation);
  return res;
}

}  // namespace kreg
