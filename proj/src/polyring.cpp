#include "kreg/polyring.hpp"

#include <algorithm>
#include <sstream>

namespace kreg {

Exponent::Exponent(int nvars) : n_(static_cast<std::uint8_t>(nvars)) {
  if (nvars < 0 || nvars > kMaxVars) throw MathError("unsupported number of variables");
}

Exponent::Exponent(std::initializer_list<int> e) : Exponent(static_cast<int>(e.size())) {
  int i = 0;
  for (int v : e) {
    if (v < 0) throw MathError("negative exponent");
    e_[i++] = static_cast<std::uint16_t>(v);
  }
}

Exponent Exponent::unit(int nvars, int index) {
  Exponent e(nvars);
  e.set(index, 1);
  return e;
}

int Exponent::total_degree() const {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += e_[i];
  return s;
}

int Exponent::weighted_degree() const {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += (i + 1) * e_[i];
  return s;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.n_, b.n_));
  for (int i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] + b.e_[i]);
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.n_, b.n_));
  for (int i = 0; i < kMaxVars; ++i) {
    if (a.e_[i] < b.e_[i]) throw MathError("exponent subtraction underflow");
    r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
  }
  return r;
}

bool Exponent::divides(const Exponent& b) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e_[i] > b.e_[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.n_, b.n_));
  for (int i = 0; i < kMaxVars; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
  return r;
}

Exponent gcd(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.n_, b.n_));
  for (int i = 0; i < kMaxVars; ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
  return r;
}

std::string Exponent::to_string(const char* prefix) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < n_; ++i) {
    if (e_[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << prefix << (i + 1);
    if (e_[i] > 1) os << "^" << e_[i];
  }
  return first ? "1" : os.str();
}

Ordering cmp_graded(const Exponent& a, const Exponent& b) {
  const int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? Ordering::LT : Ordering::GT;
  const int n = std::max(a.nvars(), b.nvars());
  for (int i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::GT : Ordering::LT;
  return Ordering::EQ;
}

Ordering order_cmp(const Exponent& a, const Exponent& b) { return cmp_graded(a, b); }

Ordering order_cmp(const WeylMonomial& a, const WeylMonomial& b) {
  Ordering c = cmp_graded(a.p, b.p);
  if (c != Ordering::EQ) return c;
  return cmp_graded(a.d, b.d);
}

Ordering order_cmp(const ModuleMonomial& a, const ModuleMonomial& b) {
  const bool a1 = !a.position.has_value(), b1 = !b.position.has_value();
  if (a1 != b1) return a1 ? Ordering::GT : Ordering::LT;
  Ordering c = cmp_graded(a.mono, b.mono);
  if (c != Ordering::EQ || a1) return c;
  return cmp_graded(*a.position, *b.position);
}

MPoly to_mpoly(const QPoly& q) {
  MPoly r(q.nvars());
  for (const auto& [e, c] : q) r.add_term(e, RatFunc(c));
  return r;
}

QPoly to_qpoly(const MPoly& m) {
  QPoly r(m.nvars());
  for (const auto& [e, c] : m) {
    if (!c.is_constant()) throw MathError("coefficient depends on t: " + c.to_string());
    r.add_term(e, c.scale());
  }
  return r;
}

QPoly specialize(const MPoly& m, const Rat& t) {
  QPoly r(m.nvars());
  for (const auto& [e, c] : m) r.add_term(e, c.eval(t));
  return r;
}

MPoly diff_t(const MPoly& m) {
  return m.map_coeffs([](const RatFunc& c) { return c.derivative(); });
}

namespace {

template <class Coeff, class Fmt>
std::string render(const BasicMPoly<Coeff>& m, Fmt&& fmt) {
  if (m.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : m) {
    auto [negative, text] = fmt(c);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (e.is_zero()) {
      os << text;
    } else {
      if (text != "1") os << text << "*";
      os << e.to_string("p");
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const MPoly& m) {
  return render(m, [](const RatFunc& c) {
    bool neg = false;
    std::string s = coeff_text(c, &neg);
    return std::make_pair(neg, s);
  });
}

std::string to_string(const QPoly& m) {
  return render(m, [](const Rat& c) {
    return std::make_pair(c < 0, Rat(abs(c)).get_str());
  });
}

std::string coeff_text(const RatFunc& c, bool* negative) {
  *negative = c.scale() < 0;
  RatFunc mag = *negative ? -c : c;
  if (mag.is_constant()) return mag.scale().get_str();
  UniPoly n = mag.numerator(), d = mag.denominator();
  std::string s = "(" + n.to_string() + ")";
  if (!d.is_one()) s += "/(" + d.to_string() + ")";
  return s;
}

StairsResult stairs_and_dim(const std::vector<Exponent>& lead_monomials) {
  StairsResult res;
  if (lead_monomials.empty()) return res;
  const int n = lead_monomials.front().nvars();
  std::vector<int> bound(n, -1);
  for (const auto& m : lead_monomials) {
    int support = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) {
        support = i;
        ++count;
      }
    if (count == 0) {
      // The unit ideal: nothing lies under the stairs.
      res.zero_dimensional = true;
      return res;
    }
    if (count == 1 && (bound[support] < 0 || m[support] < bound[support])) bound[support] = m[support];
  }
  for (int b : bound)
    if (b < 0) return res;
  res.zero_dimensional = true;
  Exponent cur(n);
  while (true) {
    bool reducible = false;
    for (const auto& m : lead_monomials)
      if (m.divides(cur)) {
        reducible = true;
        break;
      }
    if (!reducible) res.stairs.push_back(cur);
    int i = 0;
    while (i < n) {
      if (cur[i] + 1 < bound[i]) {
        cur.set(i, cur[i] + 1);
        break;
      }
      cur.set(i, 0);
      ++i;
    }
    if (i == n) break;
  }
  std::sort(res.stairs.begin(), res.stairs.end(),
            [](const Exponent& a, const Exponent& b) { return cmp_graded(a, b) == Ordering::LT; });
  return res;
}

}  // namespace kreg
