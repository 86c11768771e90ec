#include "kreg/weyl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace kreg {

namespace {

BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt falling(int n, int k) {
  BigInt r = 1;
  for (int j = 0; j < k; ++j) r *= n - j;
  return r;
}

// Calls f(kappa) for every exponent componentwise below bound.
template <class F>
void for_each_below(const Exponent& bound, F&& f) {
  const int n = bound.nvars();
  Exponent cur(n);
  while (true) {
    f(cur);
    int i = 0;
    while (i < n) {
      if (cur[i] < bound[i]) {
        cur.set(i, cur[i] + 1);
        break;
      }
      cur.set(i, 0);
      ++i;
    }
    if (i == n) return;
  }
}

void check_nvars(int a, int b) {
  if (a != 0 && b != 0 && a != b) throw MathError("operators over different variable sets");
}

}  // namespace

WeylOp WeylOp::constant(int nvars, const RatFunc& c) {
  WeylOp r(nvars);
  r.add_term({Exponent(nvars), Exponent(nvars)}, c);
  return r;
}

WeylOp WeylOp::p(int nvars, int index) {
  WeylOp r(nvars);
  r.add_term({Exponent::unit(nvars, index), Exponent(nvars)}, RatFunc(1));
  return r;
}

WeylOp WeylOp::d(int nvars, int index) {
  WeylOp r(nvars);
  r.add_term({Exponent(nvars), Exponent::unit(nvars, index)}, RatFunc(1));
  return r;
}

WeylOp WeylOp::from_poly(const MPoly& s) {
  WeylOp r(s.nvars());
  for (const auto& [e, c] : s) r.terms_.emplace_hint(r.terms_.end(), WeylMonomial{e, Exponent(s.nvars())}, c);
  return r;
}

RatFunc WeylOp::coeff(const WeylMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc() : it->second;
}

void WeylOp::add_term(const WeylMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  if (n_ == 0) n_ = m.p.nvars();
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::pair<WeylMonomial, RatFunc> WeylOp::leading_term() const {
  if (terms_.empty()) throw MathError("leading term of the zero operator");
  return *terms_.begin();
}

bool WeylOp::is_polynomial() const {
  for (const auto& [m, c] : terms_)
    if (!m.d.is_zero()) return false;
  return true;
}

MPoly WeylOp::poly_part() const {
  MPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.d.is_zero()) r.add_term(m.p, c);
  return r;
}

WeylOp WeylOp::operator-() const {
  WeylOp r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  check_nvars(n_, o.n_);
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  check_nvars(n_, o.n_);
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylOp WeylOp::scale(const RatFunc& s) const {
  WeylOp r(n_);
  if (s.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
  return r;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) { return weyl_mul(a, b); }

WeylOp weyl_mul(const WeylOp& a, const WeylOp& b) {
  check_nvars(a.nvars(), b.nvars());
  const int n = std::max(a.nvars(), b.nvars());
  WeylOp r(n);
  // (p^a d^b)(p^c d^e) = sum_k prod_i C(b_i,k_i) ff(c_i,k_i) p^(a+c-k) d^(b+e-k)
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      const RatFunc cc = ca * cb;
      for_each_below(gcd(ma.d, mb.p), [&](const Exponent& k) {
        BigInt f = 1;
        for (int i = 0; i < n; ++i) f *= binomial(ma.d[i], k[i]) * falling(mb.p[i], k[i]);
        WeylMonomial m{ma.p + mb.p - k, ma.d + mb.d - k};
        r.add_term(m, f == 1 ? cc : cc * RatFunc(f));
      });
    }
  return r;
}

WeylOp adjoint(const WeylOp& a) {
  const int n = a.nvars();
  WeylOp r(n);
  for (const auto& [m, c] : a) {
    // p^a d^b -> (p/i)^b (i d)^a, already normal ordered.
    Rat f = 1;
    for (int i = 0; i < n; ++i) {
      const int e = m.p[i] - m.d[i];
      BigInt pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(i + 1), static_cast<unsigned long>(e < 0 ? -e : e));
      if (e >= 0)
        f *= pw;
      else
        f /= pw;
    }
    RatFunc cf = c;
    cf *= f;
    r.add_term({m.d, m.p}, cf);
  }
  return r;
}

WeylOp twist(const WeylOp& a, const MPoly& g) {
  const int n = a.nvars();
  WeylOp star = adjoint(a);
  // D_i = d_i + t g_i; the D_i commute, so D^beta is a product of powers.
  std::vector<std::vector<WeylOp>> powers(n);
  for (int i = 0; i < n; ++i) {
    WeylOp di = WeylOp::d(n, i) + WeylOp::from_poly(g.diff(i).scale(RatFunc::t()));
    powers[i].push_back(WeylOp::constant(n, RatFunc(1)));
    powers[i].push_back(di);
  }
  auto power = [&](int i, int e) -> const WeylOp& {
    while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };
  WeylOp r(n);
  for (const auto& [m, c] : star) {
    WeylOp term(n);
    term.add_term({m.p, Exponent(n)}, c);
    for (int i = 0; i < n; ++i)
      if (m.d[i] > 0) term = term * power(i, m.d[i]);
    r += term;
  }
  return r;
}

MPoly apply(const WeylOp& a, const MPoly& s) {
  MPoly r(std::max(a.nvars(), s.nvars()));
  for (const auto& [m, c] : a) {
    MPoly ds = s.diff(m.d);
    if (ds.is_zero()) continue;
    r += ds.mul_term(m.p, c);
  }
  return r;
}

DLeftForm to_dleft(const WeylOp& a) {
  const int n = a.nvars();
  DLeftForm f;
  f.nvars = n;
  // p^a d^b = sum_k (-1)^|k| prod_i C(a_i,k_i) ff(b_i,k_i) d^(b-k) p^(a-k)
  for (const auto& [m, c] : a) {
    for_each_below(gcd(m.p, m.d), [&](const Exponent& k) {
      BigInt f0 = 1;
      for (int i = 0; i < n; ++i) f0 *= binomial(m.p[i], k[i]) * falling(m.d[i], k[i]);
      if (k.total_degree() % 2) f0 = -f0;
      auto [it, inserted] = f.parts.try_emplace(m.d - k, MPoly(n));
      it->second.add_term(m.p - k, c * RatFunc(f0));
      if (it->second.is_zero()) f.parts.erase(it);
    });
  }
  return f;
}

WeylOp from_dleft(const DLeftForm& f) {
  const int n = f.nvars;
  WeylOp r(n);
  for (const auto& [beta, poly] : f.parts)
    for (const auto& [gam, c] : poly)
      for_each_below(gcd(beta, gam), [&](const Exponent& k) {
        BigInt f0 = 1;
        for (int i = 0; i < n; ++i) f0 *= binomial(beta[i], k[i]) * falling(gam[i], k[i]);
        r.add_term({gam - k, beta - k}, c * RatFunc(f0));
      });
  return r;
}

MPoly apply(const DLeftForm& f, const MPoly& s) {
  MPoly r(std::max(f.nvars, s.nvars()));
  for (const auto& [beta, poly] : f.parts) r += (poly * s).diff(beta);
  return r;
}

DLeftForm mul_right(const DLeftForm& f, const MPoly& s) {
  DLeftForm r;
  r.nvars = f.nvars;
  for (const auto& [beta, poly] : f.parts) {
    MPoly q = poly * s;
    if (!q.is_zero()) r.parts.emplace(beta, std::move(q));
  }
  return r;
}

WeylOp mul_right(const WeylOp& a, const MPoly& s) { return from_dleft(mul_right(to_dleft(a), s)); }

namespace {

class Parser {
public:
  Parser(const std::string& text, int nvars) : s_(text), n_(nvars) {}

  WeylOp parse() {
    WeylOp r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MathError("cannot parse operator \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected a number");
    return s_.substr(b, pos_ - b);
  }

  WeylOp expr() {
    WeylOp r(n_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    WeylOp first = term();
    r = neg ? -first : first;
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  WeylOp term() {
    WeylOp r = factor();
    while (true) {
      if (eat('*')) {
        r = r * factor();
      } else if (eat('/')) {
        WeylOp den = factor();
        if (den.size() != 1 || !den.begin()->first.p.is_zero() || !den.begin()->first.d.is_zero())
          fail("division by a non-scalar");
        r = r.scale(den.begin()->second.inverse());
      } else {
        return r;
      }
    }
  }

  WeylOp factor() {
    WeylOp base = primary();
    if (!eat('^')) return base;
    long e = std::stol(digits());
    WeylOp r = WeylOp::constant(n_, RatFunc(1));
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  WeylOp primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      WeylOp r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return WeylOp::constant(n_, RatFunc(BigInt(digits())));
    if (c == 't') {
      ++pos_;
      return WeylOp::constant(n_, RatFunc::t());
    }
    if (c == 'p' || c == 'd') {
      ++pos_;
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (b == pos_) fail("expected a variable index");
      int idx = std::stoi(s_.substr(b, pos_ - b));
      if (idx < 1 || idx > n_) fail("variable index out of range");
      return c == 'p' ? WeylOp::p(n_, idx - 1) : WeylOp::d(n_, idx - 1);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

WeylOp parse_weyl(const std::string& text, int nvars) { return Parser(text, nvars).parse(); }

MPoly parse_mpoly(const std::string& text, int nvars) {
  WeylOp w = parse_weyl(text, nvars);
  if (!w.is_polynomial()) throw MathError("expected a polynomial without derivatives: " + text);
  return w.poly_part();
}

std::string to_string(const WeylOp& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a) {
    bool neg = false;
    std::string text = coeff_text(c, &neg);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    if (!m.p.is_zero()) mono = m.p.to_string("p");
    if (!m.d.is_zero()) mono += (mono.empty() ? "" : "*") + m.d.to_string("d");
    if (mono.empty())
      os << text;
    else if (text == "1")
      os << mono;
    else
      os << text << "*" << mono;
  }
  return os.str();
}

}  // namespace kreg
