#include "kreg/cli.hpp"
#include "kreg/oracle.hpp"
#include "kreg/seqtools.hpp"
#include "kreg/telescope.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace kreg;

namespace {

struct Shell {
  int status = -1;
  std::string out;
};

// Runs the kreg binary, stdout captured, stderr dropped.
Shell kreg_cmd(const std::string& args) {
  Shell r;
  std::string cmd = std::string(KREG_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Nested arrays of numbers, kept as their literal text so that big integers
// survive the round trip.
struct Node {
  std::string number;
  std::string string;
  std::vector<Node> items;
  std::map<std::string, Node> fields;
};

struct RawSax : nlohmann::json_sax<nlohmann::json> {
  std::vector<Node> stack{Node{}};
  std::vector<std::string> keys;

  void put(Node n) {
    Node& top = stack.back();
    if (!keys.empty() && keys.back() != "\x01") {
      top.fields[keys.back()] = std::move(n);
      keys.back() = "\x01";
    } else {
      top.items.push_back(std::move(n));
    }
  }
  bool null() override { return put({}), true; }
  bool boolean(bool) override { return put({}), true; }
  bool number_integer(number_integer_t v) override { return put({std::to_string(v), {}, {}, {}}), true; }
  bool number_unsigned(number_unsigned_t v) override { return put({std::to_string(v), {}, {}, {}}), true; }
  bool number_float(number_float_t, const string_t& s) override { return put({s, {}, {}, {}}), true; }
  bool string(string_t& s) override { return put({{}, s, {}, {}}), true; }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override {
    stack.emplace_back();
    keys.push_back("\x01");
    return true;
  }
  bool key(string_t& k) override { return keys.back() = k, true; }
  bool end_object() override {
    Node n = std::move(stack.back());
    stack.pop_back();
    keys.pop_back();
    put(std::move(n));
    return true;
  }
  bool start_array(std::size_t) override {
    stack.emplace_back();
    keys.push_back("\x01");
    return true;
  }
  bool end_array() override { return end_object(); }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }
};

Node parse_raw(const std::string& text) {
  RawSax sax;
  REQUIRE(nlohmann::json::sax_parse(text, &sax));
  REQUIRE(sax.stack.size() == 1);
  REQUIRE(sax.stack[0].items.size() == 1);
  return sax.stack[0].items[0];
}

std::vector<UniPoly> polys_of(const Node& arr) {
  std::vector<UniPoly> out;
  for (const auto& p : arr.items) {
    std::vector<BigInt> c;
    for (const auto& x : p.items) c.emplace_back(x.number);
    out.emplace_back(c);
  }
  return out;
}

RunConfig config(const char* model, EmitKind emit) {
  RunConfig c;
  c.model = parse_model(model);
  c.emit = emit;
  return c;
}

}  // namespace

TEST_CASE("4-regular ODE in text form") {
  RunOutput r = run(config("se,ll,{4}", EmitKind::Ode));
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("Dt^2") != std::string::npos);
  CHECK(r.out.back() == '\n');
  CHECK(r.err.find("time generators") != std::string::npos);
  Shell s = kreg_cmd("solve --model \"se,ll,{4}\" --emit ode --format text");
  CHECK(s.status == 0);
  CHECK(s.out == r.out);
}

TEST_CASE("3-regular terms with --check") {
  Shell s = kreg_cmd("solve --model \"se,ll,{3}\" --emit terms --terms 8 --check");
  CHECK(s.status == 0);
  CHECK(s.out == "0\t1\n1\t0\n2\t0\n3\t0\n4\t1\n5\t0\n6\t70\n7\t0\n8\t19355\n");
  RunConfig c = config("se,ll,{3}", EmitKind::Terms);
  c.terms = 8;
  c.check = true;
  RunOutput r = run(c);
  CHECK(r.err.find("check: unrolled counts agree with both oracles for n <= 10") != std::string::npos);
}

TEST_CASE("2-regular ODE has order 1") {
  RunConfig c = config("se,ll,{2}", EmitKind::Ode);
  c.format = Format::Json;
  Node j = parse_raw(run(c).out);
  CHECK(j.fields.at("ode").fields.at("order").number == "1");
  CHECK(kreg_cmd("solve \"se,ll,{2}\" --emit ode").status == 0);
}

TEST_CASE("no terms beyond n = 0") {
  Shell s = kreg_cmd("solve \"se,ll,{3}\" --emit terms --terms 0");
  CHECK(s.status == 0);
  CHECK(s.out == "0\t1\n");
}

TEST_CASE("usage errors exit 64") {
  CHECK(kreg_cmd("solve --model \"xx,ll,{2}\"").status == 64);
  CHECK(kreg_cmd("solve --model \"se,ll,{}\"").status == 64);
  CHECK(kreg_cmd("solve").status == 64);
  CHECK(kreg_cmd("solve \"se,ll,{2}\" --emit nonsense").status == 64);
  CHECK(kreg_cmd("solve \"se,ll,{2}\" --terms -3").status == 64);
  CHECK(kreg_cmd("solve \"se,ll,{2}\" --model \"se,ll,{3}\"").status == 64);
  CHECK(kreg_cmd("").status == 64);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const char* args : {"solve \"me,lh,{1,2,3}\" --emit rec --format json", "solve \"se,ll,{4}\" --emit gb",
                           "solve \"se,la,{1,3}\" --emit terms --terms 30"}) {
    Shell a = kreg_cmd(args), b = kreg_cmd(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("JSON round trips") {
  RunConfig c = config("se,ll,{4}", EmitKind::Ode);
  c.format = Format::Json;
  DeriveResult d = derive_ode(c.model);
  Node ode = parse_raw(run(c).out).fields.at("ode");
  CHECK(ode.fields.at("order").number == "2");
  ODE back;
  back.coeffs = polys_of(ode.fields.at("coeffs"));
  CHECK(back == d.ode);

  c.emit = EmitKind::Rec;
  Node rec = parse_raw(run(c).out).fields.at("rec");
  CHECK(rec.fields.at("mode").string == "counts");
  CHECK(polys_of(rec.fields.at("coeffs")) == rec_counts(ode_to_rec(d.ode)).coeffs);

  c.emit = EmitKind::RecEgf;
  CHECK(parse_raw(run(c).out).fields.at("rec").fields.at("mode").string == "taylor");

  // counts past 2^64
  c = config("se,ll,{3}", EmitKind::Terms);
  c.format = Format::Json;
  c.terms = 60;
  Node terms = parse_raw(run(c).out).fields.at("terms");
  REQUIRE(terms.items.size() == 61);
  std::vector<BigInt> expect = unroll_counts(rec_counts(ode_to_rec(derive_ode(c.model).ode)), 60);
  for (std::size_t n = 0; n <= 60; ++n) CHECK(BigInt(terms.items[n].number) == expect[n]);
  CHECK(expect[60].get_str().size() > 20);

  c = config("se,ll,{4}", EmitKind::Ghat);
  c.format = Format::Json;
  Node g = parse_raw(run(c).out).fields.at("ghat");
  CHECK(g.items.size() == 3);
  CHECK(g.items[0].string == "1");
}

TEST_CASE("gb and ghat text") {
  RunOutput gb = run(config("se,ll,{4}", EmitKind::Gb));
  CHECK(gb.out.find("eta1") != std::string::npos);
  RunOutput gh = run(config("se,ll,{4}", EmitKind::Ghat));
  CHECK(gh.out.rfind("ghat0 = 1\n", 0) == 0);
  RunConfig c = config("se,ll,{4}", EmitKind::Ode);
  c.trace = true;
  c.dump_gb = c.dump_ghat = c.dump_generators = true;
  RunOutput r = run(c);
  CHECK(r.err.find("replay verified") != std::string::npos);
  CHECK(r.err.find("P4# = ") != std::string::npos);
  CHECK(r.err.find("ghat2 = ") != std::string::npos);
}

TEST_CASE("batch files keep input order") {
  auto dir = std::filesystem::temp_directory_path() / "kreg_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "models.txt";
  {
    std::ofstream f(path);
    f << "# comment\nse,ll,{3}\n\nse,ll,{2}\nme,lh,{1,2}\n";
  }
  Shell s = kreg_cmd("solve --batch " + path.string() + " --jobs 3 --emit terms --terms 4");
  CHECK(s.status == 0);
  std::string expect = "# se,ll,{3}\n" + terms_text(graph_counts(parse_model("se,ll,{3}"), 4)) + "# se,ll,{2}\n" +
                       terms_text(graph_counts(parse_model("se,ll,{2}"), 4)) + "# me,lh,{1,2}\n" +
                       terms_text(graph_counts(parse_model("me,lh,{1,2}"), 4));
  CHECK(s.out == expect);
  CHECK(kreg_cmd("solve --batch " + path.string() + " --jobs 1 --emit terms --terms 4").out == expect);

  auto outp = dir / "out.txt";
  CHECK(kreg_cmd("solve \"se,ll,{2}\" --emit terms --terms 3 --out " + outp.string()).out.empty());
  std::ifstream in(outp);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body == "0\t1\n1\t0\n2\t0\n3\t1\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("terms formats") {
  std::vector<BigInt> v{1, 0, 12};
  CHECK(terms_text(v) == "0\t1\n1\t0\n2\t12\n");
  CHECK(terms_json(v) == R"({"terms": [1,0,12]})");
  CHECK(parse_emit("rec-egf") == EmitKind::RecEgf);
  CHECK_THROWS_AS(parse_emit("x"), std::invalid_argument);
  CHECK(parse_format("json") == Format::Json);
}
