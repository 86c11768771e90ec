#include "kreg/cli.hpp"

#include "kreg/oracle.hpp"
#include "kreg/telescope.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace kreg {

namespace {

std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      r += '\\';
      r += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      r += buf;
    } else {
      r += c;
    }
  }
  return r + "\"";
}

std::string string_list_json(const char* key, const std::vector<std::string>& items) {
  std::string s = std::string("{\"") + key + "\": [";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + quote(items[i]);
  return s + "]}\n";
}

const char* status_name(DeriveStatus s) {
  switch (s) {
    case DeriveStatus::Ok: return "OK";
    case DeriveStatus::Fail: return "FAIL";
    case DeriveStatus::FailDominance: return "FAIL-DOMINANCE";
  }
  return "FAIL";
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

// First index where the unrolled counts disagree with an oracle, as a message.
std::string first_mismatch(const ModelSpec& model, const std::vector<BigInt>& counts, int nmax) {
  std::vector<BigInt> dp = graph_counts(model, nmax);
  std::vector<Rat> series = scalar_series(model, nmax);
  BigInt fact = 1;
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) fact *= n;
    const BigInt& u = counts[n];
    if (u != dp[n])
      return "n=" + std::to_string(n) + ": unrolled " + u.get_str() + ", graph_count_dp " + dp[n].get_str();
    Rat scaled = series[n] * Rat(fact);
    if (Rat(u) != scaled)
      return "n=" + std::to_string(n) + ": unrolled " + u.get_str() + ", scalar_series " + scaled.get_str();
  }
  return "";
}

}  // namespace

EmitKind parse_emit(const std::string& name) {
  if (name == "ode") return EmitKind::Ode;
  if (name == "rec") return EmitKind::Rec;
  if (name == "rec-egf") return EmitKind::RecEgf;
  if (name == "terms") return EmitKind::Terms;
  if (name == "gb") return EmitKind::Gb;
  if (name == "ghat") return EmitKind::Ghat;
  throw std::invalid_argument("unknown emit target: " + name);
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format: " + name);
}

std::string terms_text(const std::vector<BigInt>& values) {
  std::string s;
  for (std::size_t n = 0; n < values.size(); ++n) s += std::to_string(n) + "\t" + values[n].get_str() + "\n";
  return s;
}

std::string terms_json(const std::vector<BigInt>& values) {
  std::string s = "{\"terms\": [";
  for (std::size_t n = 0; n < values.size(); ++n) s += (n ? "," : "") + values[n].get_str();
  return s + "]}";
}

RunOutput run(const RunConfig& cfg) {
  RunOutput res;
  const bool json = cfg.format == Format::Json;
  if (cfg.terms < 0) throw std::invalid_argument("--terms must be non-negative");

  DeriveOptions opts;
  opts.keep_traces = cfg.trace;
  opts.verify_traces = cfg.trace;
  DeriveResult d = derive_ode(cfg.model, opts);

  std::ostringstream err;
  if (cfg.dump_generators) {
    err << "generators:\n";
    for (std::size_t i = 0; i < d.generators.size(); ++i)
      err << "  P" << i + 1 << "# = " << to_string(d.generators[i]) << "\n";
  }
  if (cfg.dump_gb) {
    err << "groebner basis (" << d.gb.basis.size() << " elements):\n";
    for (const auto& e : d.gb.basis) err << "  " << to_string(e) << "\n";
  }
  err << "time generators " << fmt_seconds(d.times.generators) << " groebner " << fmt_seconds(d.times.groebner)
      << " reductions " << fmt_seconds(d.times.reductions) << " kernel " << fmt_seconds(d.times.kernel) << "\n";

  if (d.status != DeriveStatus::Ok) {
    res.status = kExitFail;
    if (json)
      res.out = "{\"status\": " + quote(status_name(d.status)) + ", \"reason\": " + quote(d.reason) + "}\n";
    else
      res.out = std::string(status_name(d.status)) + ": " + d.reason + "\n";
    res.err = err.str();
    return res;
  }

  if (cfg.dump_ghat)
    for (std::size_t i = 0; i < d.ghat.size(); ++i) err << "ghat" << i << " = " << to_string(d.ghat[i]) << "\n";
  if (cfg.trace) {
    for (std::size_t i = 0; i < d.traces.size(); ++i) {
      err << "reduction " << i + 1 << ": " << d.traces[i].trace.size() << " steps, replay verified\n";
      for (const auto& st : d.traces[i].trace) {
        bool neg = false;
        std::string c = coeff_text(st.coeff, &neg);
        err << "  G" << st.reducer + 1 << " * " << (neg ? "-" : "") << c << "*" << st.mono.to_string("p") << "\n";
      }
    }
  }

  const Recurrence taylor = ode_to_rec(d.ode);
  const Recurrence counts_rec = rec_counts(taylor);
  std::vector<BigInt> counts;
  const bool want_terms = cfg.emit == EmitKind::Terms;
  if (want_terms || cfg.check) {
    long upto = want_terms ? cfg.terms : 0;
    if (cfg.check) upto = std::max<long>(upto, cfg.max_oracle_n);
    auto t0 = std::chrono::steady_clock::now();
    counts = unroll_counts(counts_rec, upto);
    err << "time unroll " << fmt_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
        << "\n";
  }

  switch (cfg.emit) {
    case EmitKind::Ode:
      res.out = (json ? to_json(d.ode) : to_text(d.ode)) + "\n";
      break;
    case EmitKind::Rec:
      res.out = (json ? to_json(counts_rec) : to_text(counts_rec)) + "\n";
      break;
    case EmitKind::RecEgf:
      res.out = (json ? to_json(taylor) : to_text(taylor)) + "\n";
      break;
    case EmitKind::Terms: {
      std::vector<BigInt> shown(counts.begin(), counts.begin() + cfg.terms + 1);
      res.out = json ? terms_json(shown) + "\n" : terms_text(shown);
      break;
    }
    case EmitKind::Gb: {
      std::vector<std::string> items;
      for (const auto& e : d.gb.basis) items.push_back(to_string(e));
      if (json) {
        res.out = string_list_json("gb", items);
      } else {
        for (const auto& s : items) res.out += s + "\n";
      }
      break;
    }
    case EmitKind::Ghat: {
      std::vector<std::string> items;
      for (const auto& g : d.ghat) items.push_back(to_string(g));
      if (json) {
        res.out = string_list_json("ghat", items);
      } else {
        for (std::size_t i = 0; i < items.size(); ++i) res.out += "ghat" + std::to_string(i) + " = " + items[i] + "\n";
      }
      break;
    }
  }

  if (cfg.check) {
    std::string bad;
    if (!indicial_check(d.ode)) bad = "indicial equation at t=0 has a non-zero integer exponent";
    if (bad.empty()) bad = first_mismatch(cfg.model, counts, cfg.max_oracle_n);
    if (!bad.empty()) {
      err << "check: mismatch at " << bad << "\n";
      res.status = kExitMismatch;
    } else {
      err << "check: unrolled counts agree with both oracles for n <= " << cfg.max_oracle_n << "\n";
    }
  }
  res.err = err.str();
  return res;
}

RunOutput run_batch(const std::vector<ModelSpec>& models, const RunConfig& base, int jobs) {
  std::vector<RunOutput> outs(models.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < models.size(); i = next++) {
      RunConfig cfg = base;
      cfg.model = models[i];
      try {
        outs[i] = run(cfg);
      } catch (const std::exception& e) {
        outs[i].status = kExitFail;
        outs[i].out = std::string("ERROR: ") + e.what() + "\n";
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(models.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  RunOutput all;
  for (std::size_t i = 0; i < models.size(); ++i) {
    all.out += "# " + models[i].to_string() + "\n" + outs[i].out;
    all.err += "# " + models[i].to_string() + "\n" + outs[i].err;
    all.status = std::max(all.status, outs[i].status);
  }
  return all;
}

}  // namespace kreg
