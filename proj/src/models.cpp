#include "kreg/models.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace kreg {

namespace {

void build_partitions(int rest, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, max_part); p >= 1; --p) {
    cur.push_back(p);
    build_partitions(rest - p, p, cur, out);
    cur.pop_back();
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::string ModelSpec::to_string() const {
  std::string s = e == EdgeRule::Single ? "se," : "me,";
  s += l == LoopRule::None ? "ll," : l == LoopRule::Double ? "la," : "lh,";
  s += "{";
  for (std::size_t i = 0; i < K.size(); ++i) s += (i ? "," : "") + std::to_string(K[i]);
  return s + "}";
}

ModelSpec make_model(EdgeRule e, LoopRule l, std::vector<int> K) {
  if (K.empty()) throw std::invalid_argument("degree set must be non-empty");
  for (int d : K)
    if (d < 1) throw std::invalid_argument("degrees must be positive");
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  if (K.back() > kMaxVars) throw std::invalid_argument("max degree above " + std::to_string(kMaxVars));
  return ModelSpec{e, l, std::move(K)};
}

ModelSpec parse_model(const std::string& text) {
  const auto brace = text.find('{');
  const auto close = text.rfind('}');
  if (brace == std::string::npos || close == std::string::npos || close < brace || trim(text.substr(close + 1)) != "")
    throw std::invalid_argument("model must look like se,ll,{4}: " + text);
  std::string head = text.substr(0, brace);
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= head.size(); ++i)
    if (i == head.size() || head[i] == ',') {
      fields.push_back(trim(head.substr(start, i - start)));
      start = i + 1;
    }
  if (fields.size() != 3 || !fields[2].empty()) throw std::invalid_argument("model must look like se,ll,{4}: " + text);
  EdgeRule e;
  if (fields[0] == "se")
    e = EdgeRule::Single;
  else if (fields[0] == "me")
    e = EdgeRule::Multiple;
  else
    throw std::invalid_argument("edge rule must be se or me: " + fields[0]);
  LoopRule l;
  if (fields[1] == "ll")
    l = LoopRule::None;
  else if (fields[1] == "la")
    l = LoopRule::Double;
  else if (fields[1] == "lh")
    l = LoopRule::Half;
  else
    throw std::invalid_argument("loop rule must be ll, la or lh: " + fields[1]);
  std::vector<int> K;
  std::string body = text.substr(brace + 1, close - brace - 1);
  start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i)
    if (i == body.size() || body[i] == ',') {
      std::string item = trim(body.substr(start, i - start));
      start = i + 1;
      if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("bad degree \"" + item + "\" in " + text);
      if (item.size() > 3) throw std::invalid_argument("degree too large: " + item);
      K.push_back(std::stoi(item));
    }
  return make_model(e, l, std::move(K));
}

std::vector<Partition> partitions(int n) {
  if (n < 0) throw std::invalid_argument("partitions of a negative integer");
  std::vector<Partition> out;
  Partition cur;
  build_partitions(n, n, cur, out);
  return out;
}

BigInt zlambda(const Partition& lambda) {
  BigInt z = 1;
  std::size_t i = 0;
  while (i < lambda.size()) {
    std::size_t j = i;
    while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
    const unsigned long r = j - i;
    BigInt f, pw;
    mpz_fac_ui(f.get_mpz_t(), r);
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(lambda[i]), r);
    z *= f * pw;
    i = j;
  }
  return z;
}

MPoly h_in_powersums(int n, int k_ambient) {
  if (n > k_ambient) throw std::invalid_argument("h_n needs p_n in the ambient ring");
  MPoly h(k_ambient);
  for (const auto& lambda : partitions(n)) {
    Exponent e(k_ambient);
    for (int part : lambda) e.set(part - 1, e[part - 1] + 1);
    h.add_term(e, RatFunc(make_rat(1, zlambda(lambda))));
  }
  return h;
}

MPoly build_f(const ModelSpec& m) {
  const int k = m.k();
  MPoly f(k);
  auto sign = [&](int i) { return m.e == EdgeRule::Multiple || i % 2 == 1 ? 1 : -1; };
  for (int i = 1; i <= k; ++i) {
    Exponent sq(k);
    sq.set(i - 1, 2);
    f.add_term(sq, RatFunc(make_rat(sign(i), 2 * i)));
    if (m.l == LoopRule::Half) f.add_term(Exponent::unit(k, i - 1), RatFunc(make_rat(sign(i), i)));
  }
  const int outer = m.l == LoopRule::Double ? 1 : -1;
  for (int i = 1; i <= k / 2; ++i)
    f.add_term(Exponent::unit(k, 2 * i - 1), RatFunc(make_rat(outer * sign(i), 2 * i)));
  return f;
}

MPoly build_g(const ModelSpec& m) {
  MPoly g(m.k());
  for (int j : m.K) g += h_in_powersums(j, m.k());
  return g;
}

std::vector<WeylOp> untwisted_generators(const ModelSpec& m) {
  const int k = m.k();
  const MPoly f = build_f(m);
  std::vector<WeylOp> gens;
  for (int i = 0; i < k; ++i) {
    WeylOp P = WeylOp::d(k, i) - WeylOp::from_poly(f.diff(i));
    gens.push_back(P.scale(RatFunc(i + 1)));
  }
  return gens;
}

std::vector<WeylOp> build_generators(const ModelSpec& m) {
  const MPoly g = build_g(m);
  std::vector<WeylOp> gens;
  for (const auto& P : untwisted_generators(m)) gens.push_back(twist(P, g));
  return gens;
}

}  // namespace kreg
