#include "kreg/oracle.hpp"

#include <algorithm>
#include <functional>

namespace kreg {

BigInt monomial_norm(const Exponent& r) {
  BigInt z = 1;
  for (int i = 0; i < r.nvars(); ++i) {
    if (r[i] == 0) continue;
    BigInt f, pw;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(r[i]));
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(i + 1), static_cast<unsigned long>(r[i]));
    z *= f * pw;
  }
  return z;
}

Rat trunc_pairing(const QPoly& U, const QPoly& V) {
  const QPoly& small = U.size() <= V.size() ? U : V;
  const QPoly& large = U.size() <= V.size() ? V : U;
  Rat acc = 0;
  for (const auto& [e, c] : small) {
    auto it = large.terms().find(e);
    if (it != large.terms().end()) acc += c * it->second * Rat(monomial_norm(e));
  }
  return acc;
}

PairingOracle::PairingOracle(const ModelSpec& model) : model_(model), k_(model.k()) {
  const QPoly f = to_qpoly(build_f(model));
  A_.assign(k_, Rat(0));
  B_.assign(k_, Rat(0));
  for (const auto& [e, c] : f) {
    int var = -1;
    for (int i = 0; i < k_; ++i)
      if (e[i] > 0) {
        if (var >= 0) throw MathError("f is not a sum of per-variable terms");
        var = i;
      }
    if (var < 0 || e[var] > 2) throw MathError("unexpected monomial in f");
    (e[var] == 2 ? A_ : B_)[var] += c;
  }
  cache_.resize(k_);
  gpow_.push_back(QPoly::constant(k_, Rat(1)));
}

Rat PairingOracle::exp_f_coeff(const Exponent& r) {
  Rat v = 1;
  for (int i = 0; i < k_; ++i) {
    const int n = r[i];
    auto it = cache_[i].find(n);
    if (it == cache_[i].end()) {
      // [x^n] exp(A x^2 + B x) = sum over 2a + b = n of A^a B^b / (a! b!)
      Rat s = 0;
      for (int a = 0; 2 * a <= n; ++a) {
        const int b = n - 2 * a;
        Rat term = 1;
        for (int j = 0; j < a; ++j) term *= A_[i];
        for (int j = 0; j < b; ++j) term *= B_[i];
        BigInt fa, fb;
        mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a));
        mpz_fac_ui(fb.get_mpz_t(), static_cast<unsigned long>(b));
        s += term / Rat(fa * fb);
      }
      it = cache_[i].emplace(n, s).first;
    }
    if (it->second == 0) return 0;
    v *= it->second;
  }
  return v;
}

Rat PairingOracle::pair(const QPoly& V) {
  Rat acc = 0;
  for (const auto& [e, c] : V) {
    const Rat f = exp_f_coeff(e);
    if (f != 0) acc += c * f * Rat(monomial_norm(e));
  }
  return acc;
}

const QPoly& PairingOracle::g_power(int n) {
  if (gpow_.size() < 2) gpow_.push_back(to_qpoly(build_g(model_)));
  while (static_cast<int>(gpow_.size()) <= n) gpow_.push_back(gpow_.back() * gpow_[1]);
  return gpow_[n];
}

std::vector<Rat> PairingOracle::series(int N) {
  std::vector<Rat> c;
  BigInt fact = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact *= n;
    c.push_back(pair(g_power(n)) / Rat(fact));
  }
  return c;
}

std::vector<Rat> PairingOracle::cleared_series(const MPoly& h, int N, UniPoly* denominator) {
  UniPoly D{1};
  for (const auto& [e, c] : h) {
    UniPoly d = c.denominator();
    D = D * divexact(d, gcd(D, d));
  }
  std::vector<Rat> out(static_cast<std::size_t>(N + 1), Rat(0));
  for (const auto& [e, c] : h) {
    // D * c is a polynomial in t; pair p^e g^n for every n.
    const UniPoly num = (c * RatFunc(D)).numerator();
    std::vector<Rat> s;
    BigInt fact = 1;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) fact *= n;
      s.push_back(pair(g_power(n).mul_term(e, Rat(1))) / Rat(fact));
    }
    const auto prod = mul_series(num, s);
    for (int n = 0; n <= N; ++n) out[n] += prod[n];
  }
  if (denominator) *denominator = D;
  return out;
}

std::vector<Rat> scalar_series(const ModelSpec& model, int N) { return PairingOracle(model).series(N); }

std::vector<Rat> mul_series(const UniPoly& p, const std::vector<Rat>& s) {
  std::vector<Rat> out(s.size(), Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; i + j < s.size(); ++j) out[i + j] += Rat(p[i]) * s[j];
  }
  return out;
}

namespace {

class GraphCounter {
public:
  explicit GraphCounter(const ModelSpec& m) : m_(m) {}

  // Structures realizing exactly the residual degrees in r.
  BigInt count(std::vector<int> r) {
    r.erase(std::remove(r.begin(), r.end(), 0), r.end());
    std::sort(r.begin(), r.end(), std::greater<>());
    if (r.empty()) return 1;
    auto it = memo_.find(r);
    if (it != memo_.end()) return it->second;
    BigInt total = 0;
    const int d = r[0];
    std::vector<int> rest(r.begin() + 1, r.end());
    const int loop_weight = m_.l == LoopRule::Double ? 2 : 1;
    const int max_loops = m_.l == LoopRule::None ? 0 : m_.e == EdgeRule::Single ? 1 : d / loop_weight;
    for (int loops = 0; loops <= max_loops && loops * loop_weight <= d; ++loops) {
      std::vector<int> cur = rest;
      distribute(cur, 0, d - loops * loop_weight, total);
    }
    memo_.emplace(r, total);
    return total;
  }

private:
  // Spread the remaining degree of the removed vertex as edges to cur[i..].
  void distribute(std::vector<int>& cur, std::size_t i, int left, BigInt& total) {
    if (left == 0) {
      total += count(cur);
      return;
    }
    if (i == cur.size()) return;
    int cap = std::min(left, cur[i]);
    if (m_.e == EdgeRule::Single) cap = std::min(cap, 1);
    for (int mult = 0; mult <= cap; ++mult) {
      cur[i] -= mult;
      distribute(cur, i + 1, left - mult, total);
      cur[i] += mult;
    }
  }

  ModelSpec m_;
  std::map<std::vector<int>, BigInt> memo_;
};

}  // namespace

BigInt graph_count_dp(const ModelSpec& model, int n) {
  if (n < 0) return 0;
  GraphCounter gc(model);
  BigInt total = 0;
  BigInt nfact;
  mpz_fac_ui(nfact.get_mpz_t(), static_cast<unsigned long>(n));
  // Choose how many vertices get each allowed degree.
  std::vector<int> degs;
  std::function<void(std::size_t, int, BigInt)> rec = [&](std::size_t j, int left, BigInt denom) {
    if (j == model.K.size()) {
      if (left == 0) total += gc.count(degs) * (nfact / denom);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c));
      for (int x = 0; x < c; ++x) degs.push_back(model.K[j]);
      rec(j + 1, left - c, denom * f);
      for (int x = 0; x < c; ++x) degs.pop_back();
    }
  };
  rec(0, n, BigInt(1));
  return total;
}

std::vector<BigInt> graph_counts(const ModelSpec& model, int nmax) {
  std::vector<BigInt> out;
  for (int n = 0; n <= nmax; ++n) out.push_back(graph_count_dp(model, n));
  return out;
}

}  // namespace kreg
