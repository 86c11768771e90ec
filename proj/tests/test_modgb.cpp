#include "gen.hpp"

#include "kreg/modgb.hpp"
#include "kreg/models.hpp"

#include <doctest.h>

using namespace kreg;

namespace {

WeylOp W(const char* s, int n) { return parse_weyl(s, n); }
MPoly P(const char* s, int n) { return parse_mpoly(s, n); }

std::vector<ModuleElem> embedded_generators(const ModelSpec& m) {
  std::vector<ModuleElem> gens;
  for (const auto& g : build_generators(m)) gens.push_back(eta_embed(g));
  return gens;
}

std::vector<Exponent> eta1_leads(const std::vector<ModuleElem>& basis) {
  std::vector<Exponent> leads;
  for (const auto& e : basis)
    if (e.leads_eta1()) leads.push_back(e.leading_term().first.mono);
  return leads;
}

}  // namespace

TEST_CASE("eta embedding") {
  ModuleElem e = eta_embed(W("p4 + 4*d4 + t - 1", 4));
  CHECK(e.eta1() == P("p4 + t - 1", 4));
  auto e0 = e.eta0();
  REQUIRE(e0.size() == 1);
  CHECK(e0.at(Exponent::unit(4, 3)) == P("4", 4));

  ModuleElem s = eta_embed(W("p1^2 + t*p2", 2));
  CHECK(s.eta1() == P("p1^2 + t*p2", 2));
  CHECK(s.eta0().empty());

  ModuleElem d = eta_embed(W("d1", 1));
  CHECK(d.eta1().is_zero());
  CHECK(d.eta0().at(Exponent({1})) == P("1", 1));

  // p1*d1 = d1*p1 - 1
  ModuleElem c = eta_embed(W("p1*d1", 1));
  CHECK(c.eta1() == P("-1", 1));
  CHECK(c.eta0().at(Exponent({1})) == P("p1", 1));
  CHECK(eta_to_weyl(c) == W("p1*d1", 1));
}

TEST_CASE("single generator is its own basis") {
  ModuleElem g = eta_embed(W("p1", 1));
  GBResult r = module_buchberger({g});
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis[0] == g);
  GBResult r2 = module_buchberger({g.scale(RatFunc::t())});
  CHECK(r2.basis[0] == g);
}

TEST_CASE("4-regular basis") {
  ModelSpec m = parse_model("se,ll,{4}");
  auto gens = embedded_generators(m);
  GBResult gb = module_buchberger(gens);
  auto st = stairs_and_dim(eta1_leads(gb.basis));
  CHECK(st.zero_dimensional);
  CHECK(st.stairs == std::vector<Exponent>{Exponent(4), Exponent::unit(4, 0), Exponent::unit(4, 1)});

  // P5 = P1# + P3# t/3 + P2# p1/3 lies in the module.
  auto tw = build_generators(m);
  WeylOp p5 = tw[0] + mul_right(tw[2], P("t/3", 4)) + mul_right(tw[1], P("p1/3", 4));
  ModuleElem e5 = eta_embed(p5);
  CHECK(e5 == gens[0] + gens[2].mul(P("t/3", 4)) + gens[1].mul(P("p1/3", 4)));
  CHECK(module_normal_form(e5, gb.basis).is_zero());

  auto reducers = extract_reducers(gb.basis);
  std::vector<Exponent> ms;
  for (const auto& r : reducers) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end(), GradedDesc());
  CHECK(ms == std::vector<Exponent>{Exponent({0, 2, 0, 0}), Exponent({1, 1, 0, 0}), Exponent({2, 0, 0, 0}),
                                    Exponent({0, 0, 0, 1}), Exponent({0, 0, 1, 0})});
  for (const auto& r : reducers) CHECK(is_dominant(r));
}

TEST_CASE("reducer extraction") {
  ModuleElem e = eta_embed(W("p4 + 4*d4 + t - 1", 4));
  Reducer r = make_reducer(e);
  CHECK(r.G == W("p4 + t - 1 + 4*d4", 4));
  CHECK(r.Q == P("p4 + t - 1", 4));
  CHECK(r.m == Exponent::unit(4, 3));
  CHECK(r.c == RatFunc(1));
  CHECK(r.G == WeylOp::from_poly(r.Q) + r.R);
  CHECK(is_dominant(r));

  ModuleElem no_eta1 = eta_embed(W("d1", 4));
  CHECK(extract_reducers({e, no_eta1}).size() == 1);
  CHECK_THROWS_AS(extract_reducers({no_eta1}), MathError);
}

TEST_CASE("dominance") {
  Reducer bad;
  bad.G = W("p1 + p2^2", 2);
  bad.Q = P("p1 + p2^2", 2);
  bad.R = WeylOp(2);
  bad.m = Exponent::unit(2, 0);
  bad.c = RatFunc(1);
  CHECK_FALSE(is_dominant(bad));

  Reducer good = make_reducer(eta_embed(W("p4 + 4*d4 + t - 1", 4)));
  CHECK(is_dominant(good));

  // equal lift is accepted only below m p^b
  Reducer edge = make_reducer(eta_embed(W("p3 - 3*d3 - t*p1", 3)));
  CHECK(edge.m == Exponent::unit(3, 2));
  CHECK(is_dominant(edge));
  Reducer over = make_reducer(eta_embed(W("p1 - p2*p3*d1", 3)));
  CHECK(over.m == Exponent::unit(3, 0));
  CHECK_FALSE(is_dominant(over));
}

TEST_CASE("basis elements lie in the right ideal of the generators") {
  for (const char* s : {"se,ll,{3}", "se,ll,{4}", "me,lh,{1,3}", "se,la,{2,3}"}) {
    ModelSpec m = parse_model(s);
    auto tw = build_generators(m);
    std::vector<ModuleElem> gens;
    for (const auto& g : tw) gens.push_back(eta_embed(g));
    GBOptions opts;
    opts.track_cofactors = true;
    GBResult gb = module_buchberger(gens, opts);
    REQUIRE(gb.cofactors.size() == gb.basis.size());
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
      ModuleElem sum(m.k());
      WeylOp op(m.k());
      for (std::size_t j = 0; j < gens.size(); ++j) {
        sum += gens[j].mul(gb.cofactors[i][j]);
        op += mul_right(tw[j], gb.cofactors[i][j]);
      }
      CHECK(sum == gb.basis[i]);
      CHECK(op == eta_to_weyl(gb.basis[i]));
    }
    // a reduced basis is a fixed point
    CHECK(module_buchberger(gb.basis).basis == gb.basis);
  }
}

TEST_CASE("property: random module combinations reduce to zero") {
  std::mt19937 rng(401);
  const char* names[] = {"se,ll,{3}", "se,ll,{4}", "me,ll,{1,2}", "se,lh,{2,3}"};
  std::vector<std::vector<ModuleElem>> gens, bases;
  for (const char* s : names) {
    gens.push_back(embedded_generators(parse_model(s)));
    bases.push_back(module_buchberger(gens.back()).basis);
  }
  for (int i = 0; i < testgen::kCases; ++i) {
    std::size_t which = testgen::uniform(rng, 0, 3);
    const auto& G = gens[which];
    const int k = G.front().nvars();
    ModuleElem comb(k);
    for (const auto& g : G)
      if (testgen::uniform(rng, 0, 1)) comb += g.mul(testgen::mpoly(rng, k, 2, 2));
    CHECK(module_normal_form(comb, bases[which]).is_zero());
    // normal forms are fixed points
    MPoly q = testgen::mpoly(rng, k, 3, 2);
    ModuleElem e = eta_embed(WeylOp::from_poly(q));
    ModuleElem nf = module_normal_form(e, bases[which]);
    CHECK(module_normal_form(nf, bases[which]) == nf);
  }
}
