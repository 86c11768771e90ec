#include "kreg/seqtools.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kreg {

namespace {

// Falling factorial (x + shift)(x + shift - 1)...(x + shift - len + 1) in x.
UniPoly falling_poly(long shift, int len) {
  UniPoly r{1};
  for (int j = 0; j < len; ++j) r = r * UniPoly{shift - j, 1};
  return r;
}

BigInt falling_value(const BigInt& x, int len) {
  BigInt r = 1;
  for (int j = 0; j < len; ++j) r *= x - j;
  return r;
}

void strip_integer_content(std::vector<UniPoly>& v) {
  BigInt g = 0;
  for (const auto& p : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.content().get_mpz_t());
  if (g > 1)
    for (auto& p : v)
      if (!p.is_zero()) p = p.divexact(g);
}

// Appends "coef*rest" with a separating sign, dropping a unit coefficient.
void append_term(std::ostringstream& os, bool& first, const UniPoly& coef, const std::string& rest, const char* var) {
  if (coef.is_zero()) return;
  std::size_t terms = 0;
  for (const auto& c : coef.coeffs())
    if (c != 0) ++terms;
  std::string body;
  bool negative = false;
  if (terms == 1) {
    negative = coef.lead() < 0;
    UniPoly mag = negative ? -coef : coef;
    if (rest.empty())
      body = mag.to_string(var);
    else
      body = mag.is_one() ? rest : mag.to_string(var) + "*" + rest;
  } else {
    body = "(" + coef.to_string(var) + ")";
    if (!rest.empty()) body += "*" + rest;
  }
  if (first)
    os << (negative ? "-" : "");
  else
    os << (negative ? " - " : " + ");
  os << body;
  first = false;
}

std::string json_poly(const UniPoly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + "]";
}

// Affine combination v[0] + sum_u v[u] * unknown_u.
using Affine = std::vector<Rat>;

void axpy(Affine& y, const Rat& a, const Affine& x) {
  if (y.size() < x.size()) y.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] += a * x[i];
}

}  // namespace

int ODE::degree() const {
  int d = -1;
  for (const auto& q : coeffs) d = std::max(d, q.degree());
  return d;
}

ODE normalize_ode(const std::vector<RatFunc>& q) {
  std::size_t top = q.size();
  while (top > 0 && q[top - 1].is_zero()) --top;
  if (top == 0) throw MathError("zero operator");
  UniPoly L{1};
  for (std::size_t j = 0; j < top; ++j)
    if (!q[j].is_zero()) {
      UniPoly d = q[j].denominator();
      L = L * divexact(d, gcd(L, d));
    }
  ODE ode;
  for (std::size_t j = 0; j < top; ++j) {
    if (q[j].is_zero()) {
      ode.coeffs.emplace_back();
      continue;
    }
    RatFunc y = q[j] * RatFunc(L);
    ode.coeffs.push_back(y.numerator());
  }
  UniPoly g;
  for (const auto& c : ode.coeffs)
    if (!c.is_zero()) g = g.is_zero() ? primitive_part(c) : gcd(g, c);
  if (!g.is_one())
    for (auto& c : ode.coeffs)
      if (!c.is_zero()) c = divexact(c, g);
  strip_integer_content(ode.coeffs);
  if (ode.coeffs.back().lead() < 0)
    for (auto& c : ode.coeffs) c = -c;
  return ode;
}

bool ode_equivalent(const ODE& a, const ODE& b) {
  if (a.order() != b.order() || a.order() < 0) return false;
  const UniPoly& at = a.coeffs.back();
  const UniPoly& bt = b.coeffs.back();
  for (std::size_t j = 0; j < a.coeffs.size(); ++j)
    if (a.coeffs[j] * bt != b.coeffs[j] * at) return false;
  return true;
}

std::vector<Rat> apply_ode(const ODE& ode, const std::vector<Rat>& series) {
  const long N = static_cast<long>(series.size()) - 1;
  long smax = 0;
  bool any = false;
  for (int b = 0; b <= ode.order(); ++b)
    for (int a = 0; a <= ode.coeffs[b].degree(); ++a)
      if (ode.coeffs[b][a] != 0) {
        smax = any ? std::max<long>(smax, b - a) : b - a;
        any = true;
      }
  std::vector<Rat> out;
  for (long n = 0; n + smax <= N; ++n) {
    Rat acc = 0;
    for (int b = 0; b <= ode.order(); ++b)
      for (int a = 0; a <= ode.coeffs[b].degree(); ++a) {
        const BigInt& q = ode.coeffs[b][a];
        const long idx = n - a + b;
        if (q == 0 || idx < 0) continue;
        acc += Rat(q * falling_value(BigInt(idx), b)) * series[idx];
      }
    out.push_back(acc);
  }
  return out;
}

Recurrence ode_to_rec(const ODE& ode) {
  // t^a Dt^b contributes ff(n - a + b, b) c_{n-a+b} to the coefficient of t^n.
  std::map<long, std::vector<std::pair<int, BigInt>>> by_shift;
  for (int b = 0; b <= ode.order(); ++b)
    for (int a = 0; a <= ode.coeffs[b].degree(); ++a)
      if (ode.coeffs[b][a] != 0) by_shift[b - a].emplace_back(b, ode.coeffs[b][a]);
  if (by_shift.empty()) throw MathError("zero operator");
  const long smin = by_shift.begin()->first, smax = by_shift.rbegin()->first;
  Recurrence rec;
  rec.mode = RecMode::Taylor;
  rec.coeffs.assign(static_cast<std::size_t>(smax - smin + 1), UniPoly());
  for (const auto& [sigma, terms] : by_shift) {
    const long s = sigma - smin;
    for (const auto& [b, q] : terms) rec.coeffs[s] += falling_poly(s, b) * q;
  }
  strip_integer_content(rec.coeffs);
  return rec;
}

Recurrence rec_counts(const Recurrence& rec) {
  if (rec.mode != RecMode::Taylor) throw MathError("rec_counts expects a Taylor recurrence");
  Recurrence out;
  out.mode = RecMode::Counts;
  const int top = rec.order();
  for (int s = 0; s <= top; ++s) out.coeffs.push_back(rec.coeffs[s] * falling_poly(top, top - s));
  strip_integer_content(out.coeffs);
  return out;
}

std::vector<Rat> unroll_rational(const Recurrence& rec, long N) {
  if (N < 0) return {};
  const int top = rec.order();
  if (top < 0) throw MathError("empty recurrence");
  std::vector<Affine> x;                  // affine values of x_0, x_1, ...
  std::vector<long> unknown_index = {0};  // sequence index that introduced each unknown (slot 0 unused)
  std::map<std::size_t, Affine> solved;   // unknown -> value in terms of later unknowns

  auto substitute = [&](std::size_t u, const Affine& val) {
    auto sub = [&](Affine& v) {
      if (u < v.size() && v[u] != 0) {
        Rat c = v[u];
        v[u] = 0;
        axpy(v, c, val);
      }
    };
    for (auto& v : x) sub(v);
    for (auto& [w, v] : solved) sub(v);
    solved[u] = val;
  };
  // A constraint sum_u v[u] unknown_u + v[0] = 0.
  auto constrain = [&](Affine v, long index) {
    std::size_t u = v.size();
    while (u > 1 && v[u - 1] == 0) --u;
    if (u <= 1) {
      if (!v.empty() && v[0] != 0) throw UnrollError("inconsistent initial conditions", index);
      return;
    }
    const std::size_t pivot = u - 1;
    Rat inv = -1 / v[pivot];
    v[pivot] = 0;
    Affine val;
    axpy(val, inv, v);
    substitute(pivot, val);
  };
  auto pending = [&](long upto) {
    for (long n = 0; n <= upto && n < static_cast<long>(x.size()); ++n)
      for (std::size_t u = 1; u < x[n].size(); ++u)
        if (x[n][u] != 0) return unknown_index[u];
    return -1L;
  };

  const long limit = N + 4 * (top + 1) + 16;
  for (long n = 0; n <= limit; ++n) {
    if (n > N && pending(N) < 0) break;
    const BigInt M = n - top;
    Affine rest;  // sum over s < top
    for (int s = 0; s < top; ++s) {
      const long idx = n - top + s;
      if (idx < 0) continue;
      const BigInt a = rec.coeffs[s].eval(M);
      if (a != 0) axpy(rest, Rat(a), x[idx]);
    }
    const BigInt lead = rec.coeffs[top].eval(M);
    if (n == 0) {
      x.push_back(Affine{1});
      if (lead != 0) throw UnrollError("the recurrence forces x_0 = 0", 0);
      continue;
    }
    if (lead != 0) {
      Affine v;
      axpy(v, Rat(-1) / Rat(lead), rest);
      x.push_back(std::move(v));
    } else {
      constrain(rest, n);
      Affine v(unknown_index.size() + 1);
      v.back() = 1;
      unknown_index.push_back(n);
      x.push_back(std::move(v));
    }
  }
  const long blocked = pending(N);
  if (blocked >= 0) throw UnrollError("underdetermined blocked index " + std::to_string(blocked), blocked);
  std::vector<Rat> out;
  for (long n = 0; n <= N; ++n) out.push_back(x[n].empty() ? Rat(0) : x[n][0]);
  return out;
}

std::vector<BigInt> unroll_counts(const Recurrence& rec, long N) {
  if (N < 0) return {};
  const int top = rec.order();
  bool blocked = rec.coeffs[top].eval(BigInt(-top)) != 0;
  for (long n = 1; n <= N && !blocked; ++n)
    if (rec.coeffs[top].eval(BigInt(n - top)) == 0) blocked = true;
  std::vector<BigInt> out;
  if (blocked) {
    for (const Rat& v : unroll_rational(rec, N)) {
      if (v.get_den() != 1) throw UnrollError("non-integer count " + v.get_str(), static_cast<long>(out.size()));
      out.push_back(v.get_num());
    }
    return out;
  }
  out.reserve(static_cast<std::size_t>(N + 1));
  out.push_back(1);
  BigInt acc, a, M;
  for (long n = 1; n <= N; ++n) {
    M = n - top;
    acc = 0;
    for (int s = 0; s < top; ++s) {
      const long idx = n - top + s;
      if (idx < 0 || out[idx] == 0) continue;
      a = rec.coeffs[s].eval(M);
      acc += a * out[idx];
    }
    const BigInt lead = rec.coeffs[top].eval(M);
    if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
      throw UnrollError("non-integer count at index " + std::to_string(n), n);
    BigInt v;
    mpz_divexact(v.get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    out.push_back(-v);
  }
  return out;
}

std::vector<long> indicial_roots(const ODE& ode) {
  long smax = 0;
  bool any = false;
  for (int b = 0; b <= ode.order(); ++b)
    for (int a = 0; a <= ode.coeffs[b].degree(); ++a)
      if (ode.coeffs[b][a] != 0) {
        smax = any ? std::max<long>(smax, b - a) : b - a;
        any = true;
      }
  UniPoly ind;
  for (int b = 0; b <= ode.order(); ++b) {
    const long a = b - smax;
    if (a < 0) continue;
    ind += falling_poly(0, b) * ode.coeffs[b].coeff(static_cast<std::size_t>(a));
  }
  if (ind.is_zero()) throw MathError("vanishing indicial polynomial");
  // Cauchy bound on the roots.
  BigInt bound = 0;
  for (std::size_t i = 0; i + 1 < ind.size(); ++i) {
    BigInt q = abs(ind[i]) / abs(ind.lead()) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  if (bound > 10'000'000) throw MathError("indicial root bound too large");
  std::vector<long> roots;
  const long B = bound.get_si();
  for (long j = 0; j <= B; ++j)
    if (ind.eval(BigInt(j)) == 0) roots.push_back(j);
  return roots;
}

bool indicial_check(const ODE& ode) {
  const auto r = indicial_roots(ode);
  return r.size() == 1 && r[0] == 0;
}

std::string to_text(const ODE& ode) {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j <= ode.order(); ++j) {
    std::string rest = j == 0 ? "" : j == 1 ? "Dt" : "Dt^" + std::to_string(j);
    append_term(os, first, ode.coeffs[j], rest, "t");
  }
  return first ? "0" : os.str();
}

std::string to_text(const Recurrence& rec) {
  std::ostringstream os;
  bool first = true;
  const char* name = rec.mode == RecMode::Counts ? "r" : "c";
  for (int s = 0; s <= rec.order(); ++s) {
    std::string rest = std::string(name) + (s == 0 ? "(n)" : "(n+" + std::to_string(s) + ")");
    append_term(os, first, rec.coeffs[s], rest, "n");
  }
  return (first ? std::string("0") : os.str()) + " = 0";
}

std::string to_json(const ODE& ode) {
  std::string s = "{\"ode\": {\"order\": " + std::to_string(ode.order()) + ", \"coeffs\": [";
  for (std::size_t j = 0; j < ode.coeffs.size(); ++j) s += (j ? "," : "") + json_poly(ode.coeffs[j]);
  return s + "]}}";
}

std::string to_json(const Recurrence& rec) {
  std::string s = "{\"rec\": {\"mode\": \"";
  s += rec.mode == RecMode::Counts ? "counts" : "taylor";
  s += "\", \"order\": " + std::to_string(rec.order()) + ", \"coeffs\": [";
  for (std::size_t j = 0; j < rec.coeffs.size(); ++j) s += (j ? "," : "") + json_poly(rec.coeffs[j]);
  return s + "]}}";
}

}  // namespace kreg
