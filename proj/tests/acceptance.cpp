// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance              gating criteria
//   acceptance --extended   also the k=7 lines (about 40 min)

#include "gen.hpp"

#include "kreg/oracle.hpp"
#include "kreg/seqtools.hpp"
#include "kreg/telescope.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

using namespace kreg;

namespace {

// Limits, in seconds.
constexpr double kK4Seconds = 10;
constexpr double kPerOrderSeconds = 600;
constexpr double kOracleSuiteSeconds = 300;
constexpr double kUnroll2000Seconds = 900;
constexpr int kPropertyCases = 200;
constexpr int kDpMax = 7;
constexpr int kSeriesMax = 10;
constexpr int kAnnihilationMargin = 5;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

// A FAIL that is excluded from the exit status carries a note.
void report(const std::string& id, bool ok, const std::string& detail, bool gating = true) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << detail << (ok || gating ? "" : "  [non-gating]")
            << std::endl;
  if (!ok && gating) ++failures;
}

std::vector<ModelSpec> small_models() {
  std::vector<ModelSpec> out;
  for (auto e : {EdgeRule::Single, EdgeRule::Multiple})
    for (auto l : {LoopRule::None, LoopRule::Double, LoopRule::Half})
      for (int mask = 1; mask < 8; ++mask) {
        std::vector<int> K;
        for (int b = 0; b < 3; ++b)
          if (mask >> b & 1) K.push_back(b + 1);
        out.push_back(make_model(e, l, K));
      }
  return out;
}

ModelSpec regular(int k) { return make_model(EdgeRule::Single, LoopRule::None, {k}); }

std::vector<BigInt> counts(const ODE& ode, long N) { return unroll_counts(rec_counts(ode_to_rec(ode)), N); }

ODE reference_k4() {
  UniPoly q = parse_unipoly("t^5 + 2*t^4 + 2*t^2 + 8*t - 4");
  ODE o;
  o.coeffs = {-(parse_unipoly("t^4") * q * q),
              parse_unipoly("-4*t^13 - 16*t^12 + 64*t^10 + 40*t^9 + 144*t^8 + 880*t^7 + 1392*t^6 + 192*t^5 - "
                            "800*t^4 + 1344*t^3 + 960*t^2 - 1664*t + 384"),
              parse_unipoly("16*t^2") * parse_unipoly("t^2 + 4*t + 4") * parse_unipoly("t^2 - 2*t + 1") * q};
  return o;
}

struct Run {
  DeriveResult d;
  double seconds = 0;
};

Run timed_derive(const ModelSpec& m, bool traces = false) {
  DeriveOptions o;
  o.keep_traces = traces;
  auto t0 = Clock::now();
  Run r{derive_ode(m, o), 0};
  r.seconds = since(t0);
  return r;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Runs a property n times and reports how many cases held.
bool property(const std::function<bool(std::mt19937&)>& body, unsigned seed, int& passed) {
  std::mt19937 rng(seed);
  passed = 0;
  for (int i = 0; i < kPropertyCases; ++i)
    if (body(rng)) ++passed;
  return passed == kPropertyCases;
}

}  // namespace

int main(int argc, char** argv) {
  const bool extended = argc > 1 && std::strcmp(argv[1], "--extended") == 0;

  // 1. k = 4 end to end
  Run k4 = timed_derive(regular(4));
  {
    const ODE& o = k4.d.ode;
    const bool ok = k4.d.status == DeriveStatus::Ok && o.order() == 2 && ode_equivalent(o, reference_k4()) &&
                    k4.seconds < kK4Seconds;
    report("1   k=4 ODE", ok,
           "order " + std::to_string(o.order()) + ", equal up to a Q(t) factor to the reference operator, " +
               secs(k4.seconds) + " < " + secs(kK4Seconds));
    // The reference operator itself has degree 14 in t, and so does every
    // primitive polynomial multiple of it, so the bound of 13 cannot hold.
    report("1b  k=4 degree <= 13", o.degree() <= 13,
           "degree " + std::to_string(o.degree()) + ", reference operator degree " +
               std::to_string(reference_k4().degree()),
           false);
  }

  // 2. orders for k = 2..6
  std::vector<Run> reg;
  {
    const int expect[] = {1, 2, 2, 6, 6};
    bool ok = true;
    std::ostringstream os;
    for (int k = 2; k <= 6; ++k) {
      Run r = k == 4 ? k4 : timed_derive(regular(k));
      const bool good = r.d.status == DeriveStatus::Ok && r.d.ode.order() == expect[k - 2] && r.seconds < kPerOrderSeconds;
      ok = ok && good;
      os << (k > 2 ? ", " : "") << "k=" << k << ": " << r.d.ode.order() << " (" << secs(r.seconds) << ")";
      reg.push_back(std::move(r));
    }
    report("2   orders 1,2,2,6,6", ok, os.str());
  }
  Run k7;
  if (extended) {
    k7 = timed_derive(regular(7));
    report("2x  k=7 order 20", k7.d.status == DeriveStatus::Ok && k7.d.ode.order() == 20,
           "order " + std::to_string(k7.d.ode.order()) + " (" + secs(k7.seconds) + ")", false);
  } else {
    std::cout << "SKIP  2x  k=7 order 20  run with --extended" << std::endl;
  }

  // 3. intermediates of the k = 4 run
  {
    const DeriveResult& d = k4.d;
    RatFunc c1 = -RatFunc(parse_unipoly("t^5 + 2*t^4 + 2*t^2 + 8*t - 4"), parse_unipoly("4*t^4 + 4*t^3 - 8*t^2"));
    const bool g1 = d.ghat.size() > 1 && d.ghat[1] == parse_mpoly("p2 + 1", 4).scale(c1);
    const bool stairs =
        d.basis.stairs == std::vector<Exponent>{Exponent(4), Exponent::unit(4, 0), Exponent::unit(4, 1)};
    const bool dep = d.relation.size() == 3;
    report("3   k=4 intermediates", g1 && stairs && dep,
           std::string("ghat1 ") + (g1 ? "exact" : "differs") + ", stairs {1,p1,p2} " + (stairs ? "yes" : "no") +
               ", first dependency at i=" + std::to_string(static_cast<long>(d.relation.size()) - 1));
  }

  // 4. oracle cross-validation over the 42 small models
  std::vector<Run> small;
  {
    auto t0 = Clock::now();
    int bad = 0;
    std::string first;
    for (const auto& m : small_models()) {
      Run r = timed_derive(m, true);
      if (r.d.status != DeriveStatus::Ok) {
        ++bad;
        if (first.empty()) first = m.to_string() + " " + r.d.reason;
        small.push_back(std::move(r));
        continue;
      }
      std::vector<BigInt> u = counts(r.d.ode, kSeriesMax);
      std::vector<BigInt> dp = graph_counts(m, kDpMax);
      std::vector<Rat> s = scalar_series(m, kSeriesMax);
      BigInt fact = 1;
      for (int n = 0; n <= kSeriesMax; ++n) {
        if (n > 0) fact *= n;
        const bool ok = Rat(u[n]) == s[n] * Rat(fact) && (n > kDpMax || u[n] == dp[n]);
        if (!ok) {
          ++bad;
          if (first.empty()) first = m.to_string() + " n=" + std::to_string(n);
          break;
        }
      }
      small.push_back(std::move(r));
    }
    const double t = since(t0);
    report("4   oracle cross-validation", bad == 0 && t < kOracleSuiteSeconds,
           std::to_string(small.size() - bad) + "/" + std::to_string(small.size()) + " models agree (DP n<=" +
               std::to_string(kDpMax) + ", n!*series n<=" + std::to_string(kSeriesMax) + "), " + secs(t) +
               (first.empty() ? "" : ", first failure " + first));
  }

  // 5. spot values
  {
    std::vector<BigInt> r2 = counts(reg[0].d.ode, 3), r3 = counts(reg[1].d.ode, 8);
    const ModelSpec m3 = regular(3);
    const bool ok = r2[3] == 1 && r3[4] == 1 && r3[6] == graph_count_dp(m3, 6) && r3[8] == graph_count_dp(m3, 8);
    report("5   spot values", ok,
           "r2(3)=" + r2[3].get_str() + " r3(4)=" + r3[4].get_str() + " r3(6)=" + r3[6].get_str() +
               " r3(8)=" + r3[8].get_str());
  }
  if (extended && k7.d.status == DeriveStatus::Ok) {
    auto t0 = Clock::now();
    std::vector<BigInt> r = counts(k7.d.ode, 2000);
    const double t = since(t0);
    const std::string s = r[2000].get_str();
    const bool ok = s.rfind("80680697", 0) == 0 && s.size() >= 8 && s.substr(s.size() - 8) == "04296875" &&
                    s.size() == 18573 && t < kUnroll2000Seconds;
    report("5x  r7(2000)", ok,
           s.substr(0, 8) + "..." + s.substr(s.size() - 8) + ", " + std::to_string(s.size()) + " digits, " + secs(t),
           false);
  } else {
    std::cout << "SKIP  5x  r7(2000)  run with --extended" << std::endl;
  }

  // 6. algebraic properties
  {
    std::ostringstream os;
    bool all = true;
    int n = 0;
    auto note = [&](const char* name, bool ok) {
      all = all && ok;
      os << (os.tellp() > 0 ? ", " : "") << name << " " << n << "/" << kPropertyCases;
    };

    note("adjoint", property(
                        [](std::mt19937& rng) {
                          const int k = testgen::uniform(rng, 1, 3);
                          WeylOp a = testgen::weyl(rng, k, 2, 3), b = testgen::weyl(rng, k, 2, 3);
                          return adjoint(a * b) == adjoint(b) * adjoint(a) && adjoint(adjoint(a)) == a;
                        },
                        901, n));
    note("action", property(
                       [](std::mt19937& rng) {
                         const int k = testgen::uniform(rng, 1, 3);
                         WeylOp a = testgen::weyl(rng, k, 2, 3), b = testgen::weyl(rng, k, 2, 3);
                         MPoly s = testgen::mpoly(rng, k, 3, 3);
                         return apply(a * b, s) == apply(a, apply(b, s));
                       },
                       902, n));
    note("pairing", property(
                        [](std::mt19937& rng) {
                          const int k = testgen::uniform(rng, 1, 3);
                          WeylOp a = testgen::weyl(rng, k, 2, 3, false);
                          QPoly U = testgen::qpoly(rng, k, 4, 4), V = testgen::qpoly(rng, k, 4, 4);
                          return trunc_pairing(to_qpoly(apply(a, to_mpoly(U))), V) ==
                                 trunc_pairing(U, to_qpoly(apply(adjoint(a), to_mpoly(V))));
                        },
                        903, n));

    // every reducer of a k <= 4 model against the pairing with exp(f)
    std::vector<const DeriveResult*> low;
    for (const auto& r : small) low.push_back(&r.d);
    low.push_back(&reg[0].d);
    low.push_back(&reg[1].d);
    low.push_back(&reg[2].d);
    std::vector<PairingOracle> oracles;
    for (const auto* d : low) oracles.emplace_back(d->model);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < low.size(); ++i)
      for (std::size_t j = 0; j < low[i]->basis.reducers.size(); ++j) pairs.push_back({i, j});
    std::size_t next = 0;
    note("nullity", property(
                        [&](std::mt19937& rng) {
                          auto [i, j] = next < pairs.size()
                                            ? pairs[next++]
                                            : pairs[testgen::uniform(rng, 0, static_cast<int>(pairs.size()) - 1)];
                          MPoly s = testgen::mpoly(rng, low[i]->model.k(), 3, 3);
                          for (const Rat& x : oracles[i].cleared_series(apply_reducer(low[i]->basis.reducers[j], s), 8))
                            if (x != 0) return false;
                          return true;
                        },
                        904, n));
    all = all && next >= pairs.size();

    note("replay", property(
                       [&](std::mt19937& rng) {
                         const DeriveResult& d =
                             rng() % 2 ? k4.d : small[testgen::uniform(rng, 0, static_cast<int>(small.size()) - 1)].d;
                         MPoly s = testgen::mpoly(rng, d.model.k(), 4, 4);
                         Reduction r = red(s, d.basis, true);
                         return verify_trace(s, r, d.basis);
                       },
                       905, n));

    std::size_t reducers = 0, dominant = 0, runs = 0, ok_runs = 0;
    auto count = [&](const DeriveResult& d) {
      ++runs;
      if (d.status == DeriveStatus::Ok) ++ok_runs;
      for (const auto& r : d.basis.reducers) {
        ++reducers;
        if (is_dominant(r)) ++dominant;
      }
    };
    for (const auto& r : small) count(r.d);
    for (const auto& r : reg) count(r.d);
    const bool dom = reducers == dominant && runs == ok_runs;
    all = all && dom;
    os << ", dominance " << dominant << "/" << reducers << " reducers in " << ok_runs << "/" << runs << " runs";
    report("6   property suites", all, os.str());
  }

  // 7. indicial check and annihilation of the unrolled series
  {
    int good = 0, total = 0;
    std::string first;
    auto check = [&](const DeriveResult& d) {
      ++total;
      if (d.status != DeriveStatus::Ok) return;
      const int need = d.ode.order() + d.ode.degree() + kAnnihilationMargin;
      std::vector<Rat> s = unroll_rational(ode_to_rec(d.ode), need + d.ode.order() + 1);
      std::vector<Rat> res = apply_ode(d.ode, s);
      bool ok = indicial_check(d.ode) && static_cast<int>(res.size()) > need;
      for (const Rat& x : res) ok = ok && x == 0;
      if (ok)
        ++good;
      else if (first.empty())
        first = d.model.to_string();
    };
    for (const auto& r : small) check(r.d);
    for (const auto& r : reg) check(r.d);
    if (extended && k7.d.status == DeriveStatus::Ok) check(k7.d);
    report("7   ODE/series consistency", good == total,
           std::to_string(good) + "/" + std::to_string(total) + " ODEs: only exponent 0 at t=0, series annihilated " +
               "through order+degree+" + std::to_string(kAnnihilationMargin) +
               (first.empty() ? "" : ", first failure " + first));
  }

  std::cout << (failures == 0 ? "acceptance: all gating criteria pass" : "acceptance: gating failures") << std::endl;
  return failures == 0 ? 0 : 1;
}
