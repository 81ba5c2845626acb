#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "teltrace/cli.hpp"
#include "teltrace/parser.hpp"
#include "teltrace/verify.hpp"

using namespace teltrace;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content, const char* tag) {
    path = std::string("cli_test_") + tag + ".tmp";
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse echoes the normalized program and reports syntax errors") {
  TempFile ok("a.\n", "ok");
  RunResult r = run({"parse", ok.path});
  CHECK(r.code == 0);
  CHECK(r.out == "#program initial.\na.\n");

  TempFile bad("a ,, b.\n", "bad");
  RunResult rb = run({"parse", bad.path});
  CHECK(rb.code == 65);
  CHECK(rb.err.find(":1:") != std::string::npos);

  RunResult rm = run({"parse", "no_such_file.tel"});
  CHECK(rm.code == 66);
}

TEST_CASE("the two tutorial encodings echo identically through the tool") {
  TempFile left(
      "#program initial.\na.\n#program dynamic.\nb :- 'a.\n#program final.\n:- not b.\n",
      "t1l");
  TempFile right("#program always.\na :- &initial.\nb :- 'a.\n:- not b, &final.\n", "t1r");
  RunResult rl = run({"parse", left.path});
  RunResult rr = run({"parse", right.path});
  CHECK(rl.code == 0);
  CHECK(rl.out == rr.out);
}

TEST_CASE("eval prints a verdict per formula") {
  TempFile th("#eventually+ #final.\n#previous a.\n", "evth");
  TempFile tr("{a}\n{}\n", "evtr");
  RunResult r = run({"eval", th.path, "--trace", tr.path});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "satisfied: #eventually+ #final\n"
        "falsified: #previous a\n");
  RunResult r1 = run({"eval", th.path, "--trace", tr.path, "--at", "1"});
  CHECK(r1.out.find("satisfied: #previous a") != std::string::npos);
  RunResult rk = run({"eval", th.path, "--trace", tr.path, "--at", "7"});
  CHECK(rk.code == 65);
}

TEST_CASE("eval accepts a separate here-trace") {
  TempFile th("a | ~ a.\n", "emth");
  TempFile there("{a}\n", "emtr");
  TempFile here("{}\n", "emhr");
  RunResult split = run({"eval", th.path, "--trace", there.path, "--here", here.path});
  CHECK(split.out == "falsified: a | ~ a\n");
  RunResult total = run({"eval", th.path, "--trace", there.path});
  CHECK(total.out == "satisfied: a | ~ a\n");
}

TEST_CASE("models lists stable models and signals emptiness") {
  TempFile th("#always+ #eventually+ a.\n", "mth");
  RunResult r = run({"models", th.path, "--upto", "2"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "lambda 0: 1 model\n  {a}\n"
        "lambda 1: 1 model\n  {} {a}\n"
        "lambda 2: 1 model\n  {} {} {a}\n");

  TempFile osc("#always+ (~ a -> #next a).\n", "mosc");
  RunResult re = run({"models", osc.path, "--lambda", "2"});
  CHECK(re.code == 20);
  CHECK(re.out == "lambda 2: 0 models\nno models\n");

  RunResult rt = run({"models", th.path, "--lambda", "1", "--tht"});
  CHECK(rt.code == 0);
  CHECK(rt.out.find("here:") != std::string::npos);
}

TEST_CASE("the alphabet flag widens enumeration") {
  TempFile th("a.\n", "ath");
  RunResult base = run({"models", th.path, "--lambda", "0"});
  CHECK(base.out == "lambda 0: 1 model\n  {a}\n");
  RunResult widened = run({"models", th.path, "--lambda", "0", "--alphabet", "b,c"});
  CHECK(widened.out == "lambda 0: 1 model\n  {a}\n");  // minimality keeps b,c out
  RunResult tht = run({"models", th.path, "--lambda", "0", "--tht"});
  RunResult tht_w =
      run({"models", th.path, "--lambda", "0", "--tht", "--alphabet", "b,c"});
  CHECK(tht.out.find("1 HT-model") != std::string::npos);
  CHECK(tht_w.out.find("HT-models") != std::string::npos);  // many more pairs now
}

TEST_CASE("ground emits the pinned text and solves on demand") {
  TempFile th(
      "a.\n#next^ #always+ ((#previous a) -> b).\n#always+ (#final -> (~ b -> #false)).\n",
      "gth");
  RunResult r = run({"ground", th.path, "--lambda", "1"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "% teltrace ground program\n"
        "% alphabet: a b\n"
        "% lambda: 1\n"
        "a(0).\n"
        "b(1) :- a(0).\n"
        ":- not b(1).\n");
  RunResult rs = run({"ground", th.path, "--lambda", "1", "--solve"});
  CHECK(rs.code == 0);
  CHECK(rs.out == "model 1: a(0) b(1)\ntrace 1: {a} {b}\n");
  RunResult r2 = run({"ground", th.path, "--lambda", "2", "--solve"});
  CHECK(r2.code == 20);
}

TEST_CASE("solve runs the incremental pipeline with exit code discipline") {
  TempFile th(
      "a.\n#next^ #always+ ((#previous a) -> b).\n#always+ (#final -> (~ b -> #false)).\n",
      "sth");
  RunResult r = run({"solve", th.path, "--to", "3", "--mode", "first"});
  CHECK(r.code == 0);
  CHECK(r.out.find("horizon 1: 1 model") != std::string::npos);
  CHECK(r.out.find("model 1: a(0) __q(1) b(1)") != std::string::npos);
  CHECK(r.out.find("trace 1: {a} {b}") != std::string::npos);

  TempFile unsat("a.\n:- a.\n", "uth");
  RunResult ru = run({"solve", unsat.path, "--to", "2"});
  CHECK(ru.code == 20);
  CHECK(ru.out.find("no model up to 2") != std::string::npos);

  RunResult rg = run({"solve", th.path, "--ground", "1"});
  CHECK(rg.code == 0);
  CHECK(rg.out == "model 1: a(0) b(1)\ntrace 1: {a} {b}\n");
}

TEST_CASE("machine-readable output is stable across runs") {
  TempFile th("#always+ #eventually+ a.\n", "kvth");
  RunResult a = run({"models", th.path, "--upto", "2", "--format", "kv"});
  RunResult b = run({"models", th.path, "--upto", "2", "--format", "kv"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(a.out.find("command=models\n") == 0);
  CHECK(a.out.find("lambda.1.model.0={} {a}\n") != std::string::npos);

  TempFile vth("a.\n", "kvv");
  RunResult v1 = run({"verify", vth.path, "--seed", "9", "--format", "kv"});
  RunResult v2 = run({"verify", vth.path, "--seed", "9", "--format", "kv"});
  CHECK(v1.out == v2.out);
  CHECK(v1.code == 0);
}

TEST_CASE("the budget trips with exit code 75") {
  TempFile th("a.\n", "bth");
  RunResult r = run({"models", th.path, "--lambda", "30", "--budget", "20"});
  CHECK(r.code == 75);
  CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("compile prints the program form of theories and action laws") {
  TempFile th("#always+ ((#previous loaded) & ~ unloaded -> loaded).\n", "cth");
  RunResult r = run({"compile", th.path});
  CHECK(r.code == 0);
  CHECK(r.out == "#program dynamic.\nloaded :- 'loaded, not unloaded.\n");
  TempFile bc("a after b ifcons c.\n", "cbc");
  RunResult rb = run({"compile", bc.path, "--bc"});
  CHECK(rb.code == 0);
  CHECK(rb.out == "#program dynamic.\na ; not c :- 'b.\n");
  CHECK(rb.err.find("negated head literal") != std::string::npos);
}

TEST_CASE("verify passes on sound instances and its battery catches sabotage") {
  TempFile th("#always+ (~ a -> #next a).\n", "vth");
  RunResult r = run({"verify", th.path, "--to", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  // negative control: a corrupted bounded translation must be flagged
  FormulaStore s;
  Theory theory = parse_theory(s, "#always+ (~ a -> #next a).\n");
  VerifyRoutes corrupted;
  corrupted.bounded = [](const TemporalProgram& p, int lambda) {
    LogicProgram g = tau_bounded(p, lambda);
    if (!g.rules.empty()) g.rules.pop_back();
    return g;
  };
  VerifyOptions opt;
  opt.lambda_max = 2;
  auto results = verify_theory(s, theory, opt, corrupted);
  bool failed = false;
  for (const auto& c : results)
    if (!c.pass) {
      failed = true;
      CHECK_FALSE(c.detail.empty());
    }
  CHECK(failed);
}
