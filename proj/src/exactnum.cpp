#include "kreg/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace kreg {

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw MathError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

// ---------------------------------------------------------------------------
// Kronecker substitution helpers. A polynomial is packed as its value at
// 2^bits; unpacking reads signed digits in the balanced range.

namespace {

constexpr std::size_t kKroneckerThreshold = 12;

std::size_t bit_length(const BigInt& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt pack(const std::vector<BigInt>& c, std::size_t bits) {
  BigInt r = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    r += c[i];
  }
  return r;
}

// Unpacks at most max_len balanced digits; returns false when the value does
// not fit in that many digits.
bool unpack(BigInt value, std::size_t bits, std::size_t max_len, std::vector<BigInt>& out) {
  out.clear();
  BigInt half, digit;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, bits - 1);
  while (value != 0) {
    if (out.size() == max_len) return false;
    mpz_fdiv_r_2exp(digit.get_mpz_t(), value.get_mpz_t(), bits);
    if (digit >= half) {
      mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
      mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
    }
    value -= digit;
    mpz_fdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), bits);
    out.push_back(digit);
  }
  return true;
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

UniPoly::UniPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const BigInt& c) {
  UniPoly p;
  if (c != 0) p.c_.push_back(c);
  return p;
}

UniPoly UniPoly::monomial(const BigInt& c, std::size_t degree) {
  UniPoly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, BigInt(0));
  p.c_[degree] = c;
  return p;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const BigInt& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b * a[0];
  if (b.size() == 1) return a * b[0];
  const std::size_t la = a.size(), lb = b.size();
  UniPoly r;
  if (std::min(la, lb) < kKroneckerThreshold) {
    r.c_.assign(la + lb - 1, BigInt(0));
    for (std::size_t i = 0; i < la; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < lb; ++j)
        mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    r.trim();
    return r;
  }
  const std::size_t bits = a.max_bits() + b.max_bits() + ceil_log2(std::min(la, lb)) + 2;
  BigInt pa = pack(a.c_, bits), pb = pack(b.c_, bits);
  BigInt prod = pa * pb;
  std::vector<BigInt> out;
  unpack(std::move(prod), bits, la + lb - 1, out);
  return UniPoly(std::move(out));
}

UniPoly UniPoly::divexact(const BigInt& s) const {
  if (s == 0) throw MathError("division of polynomial by zero");
  UniPoly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  return r;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(d));
}

BigInt UniPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    r *= x;
    r += c_[i];
  }
  return r;
}

Rat UniPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    r *= x;
    r += c_[i];
  }
  return r;
}

BigInt UniPoly::content() const {
  BigInt g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::size_t UniPoly::max_bits() const {
  std::size_t m = 0;
  for (const auto& x : c_) m = std::max(m, bit_length(x));
  return m;
}

std::string UniPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

bool divides(const UniPoly& b, const UniPoly& a, UniPoly* q) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  if (a.is_zero()) {
    if (q) *q = UniPoly();
    return true;
  }
  if (b.degree() > a.degree()) return false;
  if (!mpz_divisible_p(a.lead().get_mpz_t(), b.lead().get_mpz_t())) return false;
  if (b[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), b[0].get_mpz_t())) return false;
  if (b.is_constant()) {
    for (const auto& x : a.coeffs())
      if (!mpz_divisible_p(x.get_mpz_t(), b[0].get_mpz_t())) return false;
    if (q) *q = a.divexact(b[0]);
    return true;
  }
  const std::size_t qlen = a.size() - b.size() + 1;
  if (std::min(qlen, b.size()) >= kKroneckerThreshold) {
    // Quotient guessed through Kronecker evaluation, then certified by an
    // exact product; on failure fall through to long division.
    const std::size_t bits = a.max_bits() + 8;
    BigInt pa = pack(a.coeffs(), bits), pb = pack(b.coeffs(), bits), pq, pr;
    mpz_tdiv_qr(pq.get_mpz_t(), pr.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
    if (pr != 0) return false;
    std::vector<BigInt> digits;
    if (unpack(pq, bits, qlen, digits)) {
      UniPoly guess(std::move(digits));
      if (guess * b == a) {
        if (q) *q = std::move(guess);
        return true;
      }
    }
  }
  std::vector<BigInt> rem = a.coeffs();
  std::vector<BigInt> quo(qlen);
  const BigInt& lb = b.lead();
  const std::size_t db = b.size() - 1;
  for (std::size_t i = qlen; i-- > 0;) {
    BigInt& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j)
      mpz_submul(rem[i + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    quo[i] = std::move(c);
  }
  for (std::size_t i = 0; i < db; ++i)
    if (rem[i] != 0) return false;
  if (q) *q = UniPoly(std::move(quo));
  return true;
}

UniPoly divexact(const UniPoly& a, const UniPoly& b) {
  UniPoly q;
  if (!divides(b, a, &q)) throw MathError("inexact polynomial division");
  return q;
}

UniPoly primitive_part(const UniPoly& a) {
  if (a.is_zero()) return a;
  BigInt c = a.content();
  if (a.lead() < 0) c = -c;
  if (c == 1) return a;
  return a.divexact(c);
}

UniPoly pseudo_rem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw MathError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> rem = a.coeffs();
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.lead();
  for (std::size_t top = rem.size(); top-- > db;) {
    BigInt c = rem[top];
    for (auto& x : rem) x *= lb;
    if (c != 0) {
      const std::size_t shift = top - db;
      for (std::size_t j = 0; j <= db; ++j)
        mpz_submul(rem[shift + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    rem.pop_back();
  }
  return UniPoly(std::move(rem));
}

namespace {

UniPoly gcd_prs(UniPoly a, UniPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UniPoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

// Heuristic gcd of primitive polynomials by evaluation at a power of two.
bool gcd_heuristic(const UniPoly& a, const UniPoly& b, UniPoly& g) {
  std::size_t bits = std::min(a.max_bits(), b.max_bits()) * 2 + 24;
  const std::size_t max_len = static_cast<std::size_t>(std::min(a.degree(), b.degree())) + 1;
  for (int attempt = 0; attempt < 6; ++attempt) {
    BigInt va = pack(a.coeffs(), bits), vb = pack(b.coeffs(), bits), vg;
    mpz_gcd(vg.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    std::vector<BigInt> digits;
    if (unpack(vg, bits, max_len, digits)) {
      UniPoly cand = primitive_part(UniPoly(std::move(digits)));
      if (!cand.is_zero() && divides(cand, a) && divides(cand, b)) {
        g = std::move(cand);
        return true;
      }
    }
    bits = bits * 3 / 2 + 17;
  }
  return false;
}

}  // namespace

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) throw MathError("gcd of two zero polynomials");
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return UniPoly{1};
  UniPoly pa = primitive_part(a), pb = primitive_part(b);
  if (pa == pb) return pa;
  if (pa.degree() <= pb.degree() && divides(pa, pb)) return pa;
  if (pb.degree() < pa.degree() && divides(pb, pa)) return pb;
  UniPoly g;
  if (gcd_heuristic(pa, pb, g)) return g;
  return gcd_prs(std::move(pa), std::move(pb));
}

UniPoly parse_unipoly(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw MathError("empty polynomial text");
  UniPoly result;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    BigInt coef = 1;
    bool have_digits = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      coef = BigInt(s.substr(start, i - start));
      have_digits = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::size_t degree = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw MathError("bad exponent in polynomial text: " + text);
        degree = std::stoul(s.substr(start, i - start));
      }
    } else if (!have_digits) {
      throw MathError("bad polynomial text: " + text);
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw MathError("bad polynomial text: " + text);
    result += UniPoly::monomial(coef * sign, degree);
  }
  return result;
}

// ---------------------------------------------------------------------------
// RatFunc

namespace {

// Splits p into sign*content and its primitive part with positive lead.
std::pair<BigInt, UniPoly> split_content(const UniPoly& p) {
  BigInt c = p.content();
  if (p.lead() < 0) c = -c;
  if (c == 1) return {c, p};
  return {c, p.divexact(c)};
}

}  // namespace

RatFunc::RatFunc(const Rat& c) : scale_(c), num_{1}, den_{1} { scale_.canonicalize(); }

RatFunc::RatFunc(const UniPoly& p) : RatFunc(p, UniPoly{1}) {}

RatFunc::RatFunc(const UniPoly& num, const UniPoly& den) : scale_(0), num_{1}, den_{1} {
  if (den.is_zero()) throw MathError("rational function with zero denominator");
  if (num.is_zero()) return;
  auto [cn, pn] = split_content(num);
  auto [cd, pd] = split_content(den);
  if (!pn.is_constant() && !pd.is_constant()) {
    UniPoly g = gcd(pn, pd);
    if (!g.is_one()) {
      pn = divexact(pn, g);
      pd = divexact(pd, g);
    }
  }
  scale_ = make_rat(cn, cd);
  num_ = std::move(pn);
  den_ = std::move(pd);
}

void RatFunc::canonicalize_zero() {
  if (scale_ == 0) {
    num_ = UniPoly{1};
    den_ = UniPoly{1};
  }
}

UniPoly RatFunc::numerator() const { return num_ * scale_.get_num(); }
UniPoly RatFunc::denominator() const { return den_ * scale_.get_den(); }

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -scale_, num_, den_); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_constant()) return RatFunc(RatFunc::Raw{}, a.scale_ * b.scale_, b.num_, b.den_);
  if (b.is_constant()) return RatFunc(RatFunc::Raw{}, a.scale_ * b.scale_, a.num_, a.den_);
  // Cross-cancel: gcd(a.num, b.den) and gcd(b.num, a.den).
  UniPoly n1 = a.num_, d2 = b.den_, n2 = b.num_, d1 = a.den_;
  if (!n1.is_one() && !d2.is_one()) {
    UniPoly g = gcd(n1, d2);
    if (!g.is_one()) {
      n1 = divexact(n1, g);
      d2 = divexact(d2, g);
    }
  }
  if (!n2.is_one() && !d1.is_one()) {
    UniPoly g = gcd(n2, d1);
    if (!g.is_one()) {
      n2 = divexact(n2, g);
      d1 = divexact(d1, g);
    }
  }
  // Products of primitive polynomials are primitive (Gauss) with positive lead.
  return RatFunc(RatFunc::Raw{}, a.scale_ * b.scale_, n1 * n2, d1 * d2);
}

RatFunc& RatFunc::operator*=(const RatFunc& o) { return *this = *this * o; }

RatFunc& RatFunc::operator*=(const Rat& s) {
  scale_ *= s;
  canonicalize_zero();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw MathError("division by zero rational function");
  return RatFunc(Raw{}, 1 / scale_, den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this = *this * o.inverse(); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (num_ == o.num_ && den_ == o.den_) {
    scale_ += o.scale_;
    canonicalize_zero();
    return *this;
  }
  // Bring the rational scales to a common integer denominator L.
  BigInt L;
  mpz_lcm(L.get_mpz_t(), scale_.get_den_mpz_t(), o.scale_.get_den_mpz_t());
  BigInt ma = scale_.get_num() * (L / scale_.get_den());
  BigInt mb = o.scale_.get_num() * (L / o.scale_.get_den());
  UniPoly n;
  UniPoly d;
  if (den_ == o.den_) {
    n = num_ * ma + o.num_ * mb;
    if (n.is_zero()) return *this = RatFunc();
    d = den_;
    auto [c, pn] = split_content(n);
    if (!d.is_one() && !pn.is_constant()) {
      UniPoly h = gcd(pn, d);
      if (!h.is_one()) {
        pn = divexact(pn, h);
        d = divexact(d, h);
      }
    }
    scale_ = make_rat(c, L);
    num_ = std::move(pn);
    den_ = std::move(d);
    return *this;
  }
  UniPoly g = (den_.is_one() || o.den_.is_one()) ? UniPoly{1} : gcd(den_, o.den_);
  UniPoly da = g.is_one() ? den_ : divexact(den_, g);
  UniPoly db = g.is_one() ? o.den_ : divexact(o.den_, g);
  n = num_ * db * ma + o.num_ * da * mb;
  if (n.is_zero()) return *this = RatFunc();
  d = da * o.den_;
  auto [c, pn] = split_content(n);
  if (!g.is_one() && !pn.is_constant()) {
    UniPoly h = gcd(pn, g);
    if (!h.is_one()) {
      pn = divexact(pn, h);
      d = divexact(d, h);
    }
  }
  scale_ = make_rat(c, L);
  num_ = std::move(pn);
  den_ = std::move(d);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc RatFunc::derivative() const {
  if (is_zero() || is_constant()) return RatFunc();
  if (den_.is_one()) {
    RatFunc r(num_.derivative());
    r *= scale_;
    return r;
  }
  UniPoly n = num_.derivative() * den_ - num_ * den_.derivative();
  RatFunc r(n, den_ * den_);
  r *= scale_;
  return r;
}

Rat RatFunc::eval(const Rat& x) const {
  Rat d = den_.eval(x);
  if (d == 0) throw MathError("rational function evaluated at a pole");
  return scale_ * num_.eval(x) / d;
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  UniPoly n = numerator();
  UniPoly d = denominator();
  const bool n_single = n.size() == 1 || std::count_if(n.coeffs().begin(), n.coeffs().end(),
                                                        [](const BigInt& x) { return x != 0; }) == 1;
  if (d.is_one()) return n.to_string();
  if (n_single)
    os << n.to_string();
  else
    os << "(" << n.to_string() << ")";
  const bool d_single = std::count_if(d.coeffs().begin(), d.coeffs().end(),
                                      [](const BigInt& x) { return x != 0; }) == 1 &&
                        (d.size() == 1 || d.lead() == 1);
  if (d_single)
    os << "/" << d.to_string();
  else
    os << "/(" << d.to_string() << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

}  // namespace kreg
