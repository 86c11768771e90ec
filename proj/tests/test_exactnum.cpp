#include "gen.hpp"

#include <doctest.h>

using namespace kreg;

namespace {

RatFunc rf(const char* num, const char* den = "1") {
  return RatFunc(parse_unipoly(num), parse_unipoly(den));
}

}  // namespace

TEST_CASE("rational functions normalize on construction") {
  CHECK(rf("2*t + 2", "4*t + 4") == RatFunc(Rat(1, 2)));
  CHECK(rf("t^2 - 1", "t - 1") == rf("t + 1"));
  CHECK(rf("1", "t") + rf("t - 1", "t") == RatFunc(1));
  CHECK(rf("1", "-t") == -rf("1", "t"));
  CHECK(rf("0", "t^2 + 3") == RatFunc());
  CHECK_THROWS_AS(RatFunc(UniPoly{1}, UniPoly()), MathError);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(), MathError);
}

TEST_CASE("denominator is primitive with positive leading coefficient") {
  RatFunc r = rf("3*t", "-6*t^2 + 2");
  CHECK(r.den_part().content() == 1);
  CHECK(r.den_part().lead() > 0);
  CHECK(r.eval(Rat(1)) == Rat(-3, 4));
  CHECK(RatFunc(Rat(6, -4)) == RatFunc(make_rat(-3, 2)));
}

TEST_CASE("derivative") {
  CHECK(rf("1", "t").derivative() == -rf("1", "t^2"));
  CHECK(rf("t^2").derivative() == rf("2*t"));
  CHECK(rf("t - 1", "t + 1").derivative() == rf("2", "t^2 + 2*t + 1"));
  CHECK(RatFunc(Rat(5, 3)).derivative().is_zero());
}

TEST_CASE("polynomial gcd") {
  CHECK(gcd(parse_unipoly("t^2 - 1"), parse_unipoly("t - 1")) == parse_unipoly("t - 1"));
  CHECK(gcd(parse_unipoly("2*t + 2"), parse_unipoly("4*t + 4")) == parse_unipoly("t + 1"));
  CHECK(gcd(parse_unipoly("t"), parse_unipoly("1")) == parse_unipoly("1"));
  CHECK(gcd(parse_unipoly("-3*t"), UniPoly()) == parse_unipoly("t"));
  CHECK_THROWS_AS(gcd(UniPoly(), UniPoly()), MathError);
}

TEST_CASE("unipoly text round trip") {
  UniPoly p = parse_unipoly("3*t^2 - t + 1");
  CHECK(p.to_string() == "3*t^2 - t + 1");
  CHECK(parse_unipoly(p.to_string()) == p);
  CHECK(p.eval(BigInt(2)) == 11);
  CHECK(UniPoly().degree() == -1);
  CHECK(UniPoly{0, 0, 0}.is_zero());
}

TEST_CASE("property: field axioms on random rational functions") {
  std::mt19937 rng(101);
  for (int i = 0; i < testgen::kCases; ++i) {
    RatFunc a = testgen::ratfunc(rng), b = testgen::ratfunc(rng), c = testgen::ratfunc(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == RatFunc());
    if (!a.is_zero()) {
      CHECK(a / a == RatFunc(1));
      CHECK(a.inverse() * a == RatFunc(1));
    }
  }
}

TEST_CASE("property: normalization is idempotent") {
  std::mt19937 rng(102);
  for (int i = 0; i < testgen::kCases; ++i) {
    RatFunc a = testgen::ratfunc(rng, 3);
    if (a.is_zero()) continue;
    RatFunc again(a.numerator(), a.denominator());
    CHECK(again == a);
    CHECK(gcd(a.num_part(), a.den_part()).is_one());
  }
}

TEST_CASE("property: Leibniz rule") {
  std::mt19937 rng(103);
  for (int i = 0; i < testgen::kCases; ++i) {
    RatFunc a = testgen::ratfunc(rng), b = testgen::ratfunc(rng);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  std::mt19937 rng(104);
  int checked = 0;
  for (int i = 0; i < testgen::kCases; ++i) {
    RatFunc a = testgen::ratfunc(rng), b = testgen::ratfunc(rng);
    Rat x = make_rat(testgen::uniform(rng, -7, 7), testgen::uniform(rng, 1, 5));
    try {
      Rat va = a.eval(x), vb = b.eval(x);
      CHECK((a * b).eval(x) == va * vb);
      CHECK((a + b).eval(x) == va + vb);
      ++checked;
    } catch (const MathError&) {
      // x hit a pole
    }
  }
  CHECK(checked > testgen::kCases / 2);
}
