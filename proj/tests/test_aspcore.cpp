#include <doctest.h>

#include <algorithm>

#include "teltrace/equilibrium.hpp"
#include "teltrace/errors.hpp"
#include "teltrace/normalform.hpp"
#include "teltrace/parser.hpp"
#include "teltrace/solve.hpp"
#include "teltrace/translate.hpp"
#include "test_util.hpp"

using namespace teltrace;

namespace {

struct ProgramBuilder {
  FormulaStore& s;
  LogicProgram p;

  int atom(const char* name, int stamp = 0) { return p.intern(GAtom{s.atom(name), stamp}); }

  void rule(std::vector<GLit> head, std::vector<GLit> body) {
    p.rules.push_back(GroundRule{std::move(head), std::move(body)});
  }
};

TemporalProgram program9(FormulaStore& s) {
  Theory th = parse_theory(s,
                           "a.\n"
                           "#next^ #always+ ((#previous a) -> b).\n"
                           "#always+ (#final -> (~ b -> #false)).\n");
  return to_normal_form(s, th);
}

}  // namespace

TEST_CASE("stable models of the bounded running example") {
  FormulaStore s;
  TemporalProgram p = program9(s);
  LogicProgram g1 = tau_bounded(p, 1);
  auto models = stable_models(g1);
  REQUIRE(models.size() == 1);
  CHECK(render_model(s, g1, models[0]) == "a(0) b(1)");
  CHECK(stable_models(tau_bounded(p, 2)).empty());
  CHECK(stable_models(tau_bounded(p, 0)).empty());
}

TEST_CASE("self-supporting and disjunctive programs") {
  FormulaStore s;
  {
    ProgramBuilder b{s};
    int a = b.atom("a");
    b.rule({GLit{a, false}}, {GLit{a, false}});
    auto models = stable_models(b.p);
    REQUIRE(models.size() == 1);
    CHECK(models[0] == 0);  // unfounded self-support yields the empty model
  }
  {
    ProgramBuilder b{s};
    int a = b.atom("a"), c = b.atom("c");
    b.rule({GLit{a, false}, GLit{c, false}}, {});
    auto models = stable_models(b.p);
    REQUIRE(models.size() == 2);
    CHECK(models[0] == (1ull << a));
    CHECK(models[1] == (1ull << c));
  }
  {
    // head negation acts as a choice
    ProgramBuilder b{s};
    int a = b.atom("a");
    b.rule({GLit{a, false}, GLit{a, true}}, {});
    auto models = stable_models(b.p);
    REQUIRE(models.size() == 2);
    CHECK(models[0] == 0);
    CHECK(models[1] == (1ull << a));
  }
}

TEST_CASE("every stable model satisfies the rules classically") {
  FormulaStore s;
  std::mt19937_64 rng(501);
  for (int round = 0; round < 60; ++round) {
    ProgramBuilder b{s};
    int n = 3 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) b.atom(("p" + std::to_string(i)).c_str());
    int nr = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < nr; ++i) {
      std::vector<GLit> head, body;
      int nh = static_cast<int>(rng() % 3), nb = static_cast<int>(rng() % 3);
      for (int h = 0; h < nh; ++h)
        head.push_back(GLit{static_cast<int>(rng() % n), rng() % 4 == 0});
      for (int bb = 0; bb < nb; ++bb)
        body.push_back(GLit{static_cast<int>(rng() % n), rng() % 3 == 0});
      b.rule(std::move(head), std::move(body));
    }
    auto fast = stable_models(b.p);
    CHECK(fast == ref::stable_models(b.p));
    for (std::uint64_t x : fast) {
      for (const GroundRule& r : b.p.rules) {
        bool fires = true;
        for (const GLit& l : r.body) {
          bool v = x >> l.atom & 1;
          if (l.neg ? v : !v) fires = false;
        }
        if (!fires) continue;
        bool sat = false;
        for (const GLit& l : r.head) {
          bool v = x >> l.atom & 1;
          if (l.neg ? !v : v) sat = true;
        }
        CHECK(sat);
      }
    }
  }
}

TEST_CASE("the backtracking search matches the scan beyond the blind range") {
  FormulaStore s;
  std::mt19937_64 rng(502);
  for (int round = 0; round < 4; ++round) {
    ProgramBuilder b{s};
    int n = 20;  // forces the propagation search in the production path
    for (int i = 0; i < n; ++i) b.atom(("p" + std::to_string(i)).c_str());
    for (int i = 0; i < 14; ++i) {
      std::vector<GLit> head, body;
      int nh = 1 + static_cast<int>(rng() % 2), nb = static_cast<int>(rng() % 3);
      for (int h = 0; h < nh; ++h)
        head.push_back(GLit{static_cast<int>(rng() % n), rng() % 5 == 0});
      for (int bb = 0; bb < nb; ++bb)
        body.push_back(GLit{static_cast<int>(rng() % n), rng() % 3 == 0});
      b.rule(std::move(head), std::move(body));
    }
    CHECK(stable_models(b.p, Budget{24}) == ref::stable_models(b.p, Budget{24}));
  }
}

TEST_CASE("single-state programs agree with the trace oracle at length zero") {
  FormulaStore s;
  std::mt19937_64 rng(503);
  std::vector<AtomId> atoms{s.atom("a"), s.atom("b")};
  for (int round = 0; round < 40; ++round) {
    TemporalProgram tp = testutil::random_program(s, rng, atoms, 3, true);
    // keep only the initial rules: a regular logic program
    TemporalProgram init;
    init.alphabet = tp.alphabet;
    for (const auto& r : tp.rules)
      if (r.kind == RuleKind::Initial) init.rules.push_back(r);
    LogicProgram g = tau_bounded(init, 0);
    std::vector<Trace> got;
    for (std::uint64_t m : stable_models(g))
      got.push_back(decode_model(g, init.alphabet, m, 0));
    std::sort(got.begin(), got.end());
    CHECK(got == tel_models(s, program_theory(s, init), 0));
  }
}

TEST_CASE("module construction enforces its invariants") {
  FormulaStore s;
  ProgramBuilder b{s};
  int a = b.atom("a"), c = b.atom("c");
  b.rule({GLit{a, false}}, {GLit{c, false}});
  LogicProgram p = b.p;
  CHECK_NOTHROW(make_module(p, {GAtom{s.atom("c"), 0}}, {GAtom{s.atom("a"), 0}}));
  // overlapping input/output
  CHECK_THROWS_AS(make_module(p, {GAtom{s.atom("a"), 0}}, {GAtom{s.atom("a"), 0}}),
                  InvariantError);
  // head atom outside outputs
  CHECK_THROWS_AS(make_module(p, {GAtom{s.atom("a"), 0}, GAtom{s.atom("c"), 0}}, {}),
                  InvariantError);
  // program atom outside the cover
  CHECK_THROWS_AS(make_module(p, {}, {GAtom{s.atom("a"), 0}}), InvariantError);
}

TEST_CASE("composition check finds cross-module positive loops") {
  FormulaStore s;
  ProgramBuilder b1{s};
  int a1 = b1.atom("a");
  b1.atom("b");
  b1.rule({GLit{a1, false}}, {GLit{1, false}});
  Module m1 = make_module(b1.p, {GAtom{s.atom("b"), 0}}, {GAtom{s.atom("a"), 0}});

  ProgramBuilder b2{s};
  int b2b = b2.atom("b");
  b2.atom("a");
  b2.rule({GLit{b2b, false}}, {GLit{1, false}});
  Module m2 = make_module(b2.p, {GAtom{s.atom("a"), 0}}, {GAtom{s.atom("b"), 0}});

  auto check = compositional(m1, m2);
  CHECK_FALSE(check.ok);
  REQUIRE(check.offending.size() == 2);
  CHECK(check.offending[0].base == s.atom("a"));
  CHECK(check.offending[1].base == s.atom("b"));
  CHECK_THROWS_AS(join(s, m1, m2), InputError);

  Module empty;
  CHECK(compositional(m1, empty).ok);
  Module joined = join(s, m1, empty);
  CHECK(joined.inputs == m1.inputs);
  CHECK(joined.outputs == m1.outputs);
}

TEST_CASE("joining the chain of the running example") {
  FormulaStore s;
  TemporalProgram p = program9(s);
  Module m0 = build_module(s, p, 0);
  Module m1 = build_module(s, p, 1);
  CHECK(compositional(m0, m1).ok);
  Module j = join(s, m0, m1);
  // inputs telescope to the next activation atom only
  REQUIRE(j.inputs.size() == 1);
  CHECK(j.inputs[0] == (GAtom{s.atom("__q"), 2}));
  CHECK(j.outputs.size() == 5);  // a0 b0 a1 b1 q1
  auto models = stable_models(j);
  REQUIRE(models.size() == 1);
  CHECK(render_model(s, j.prog, models[0]) == "a(0) __q(1) b(1)");
}

TEST_CASE("strongly connected components match a reachability oracle") {
  FormulaStore s;
  std::mt19937_64 rng(504);
  for (int round = 0; round < 50; ++round) {
    ProgramBuilder b{s};
    int n = 2 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) b.atom(("g" + std::to_string(i)).c_str());
    bool adj[8][8] = {};
    int ne = static_cast<int>(rng() % 12);
    for (int e = 0; e < ne; ++e) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      adj[u][v] = true;
      b.rule({GLit{u, false}}, {GLit{v, false}});
    }
    // transitive closure
    bool reach[8][8] = {};
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (adj[i][j]) reach[i][j] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<int> comp = positive_sccs(b.p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK((comp[i] == comp[j]) == (reach[i][j] && reach[j][i]));
  }
}

TEST_CASE("compatible module models combine through the join") {
  FormulaStore s;
  std::mt19937_64 rng(505);
  int rounds = 0;
  while (rounds < 30) {
    // module 1 writes x0,x1 reading y0; module 2 writes y0,y1 with no inputs
    ProgramBuilder b2{s};
    int y0 = b2.atom("y0"), y1 = b2.atom("y1");
    for (int i = 0; i < 3; ++i) {
      std::vector<GLit> head{GLit{static_cast<int>(rng() % 2), rng() % 5 == 0}};
      std::vector<GLit> body;
      if (rng() % 2) body.push_back(GLit{static_cast<int>(rng() % 2), rng() % 2 == 0});
      b2.rule(std::move(head), std::move(body));
    }
    Module m2 = make_module(b2.p, {}, {GAtom{s.atom("y0"), 0}, GAtom{s.atom("y1"), 0}});

    ProgramBuilder b1{s};
    int x0 = b1.atom("x0"), x1 = b1.atom("x1"), in_y0 = b1.atom("y0");
    for (int i = 0; i < 3; ++i) {
      std::vector<GLit> head{GLit{static_cast<int>(rng() % 2), rng() % 5 == 0}};
      std::vector<GLit> body;
      if (rng() % 2) body.push_back(GLit{in_y0, rng() % 2 == 0});
      if (rng() % 2) body.push_back(GLit{static_cast<int>(rng() % 2), true});
      b1.rule(std::move(head), std::move(body));
    }
    Module m1 = make_module(
        b1.p, {GAtom{s.atom("y0"), 0}},
        {GAtom{s.atom("x0"), 0}, GAtom{s.atom("x1"), 0}});
    (void)x0;
    (void)x1;
    (void)y0;
    (void)y1;
    if (!compositional(m1, m2).ok) continue;
    ++rounds;
    Module j = join(s, m1, m2);
    auto joint = stable_models(j);
    // combine each model of module 2 with the matching models of module 1
    std::vector<std::string> expect;
    for (std::uint64_t xm2 : stable_models(m2)) {
      bool y0_true = (xm2 >> m2.prog.find(GAtom{s.atom("y0"), 0})) & 1;
      std::uint64_t inputs = y0_true ? (1ull << m1.prog.find(GAtom{s.atom("y0"), 0})) : 0;
      for (std::uint64_t xm1 : stable_models_with_inputs(m1, inputs)) {
        std::uint64_t joint_mask = 0;
        for (std::size_t i = 0; i < j.prog.atoms.size(); ++i) {
          const GAtom& ga = j.prog.atoms[i];
          int i1 = m1.prog.find(ga), i2 = m2.prog.find(ga);
          bool v = false;
          if (i2 >= 0) v = xm2 >> i2 & 1;
          else if (i1 >= 0) v = xm1 >> i1 & 1;
          if (v) joint_mask |= 1ull << i;
        }
        expect.push_back(render_model(s, j.prog, joint_mask));
      }
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    std::vector<std::string> got;
    for (std::uint64_t m : joint) got.push_back(render_model(s, j.prog, m));
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
  }
}

TEST_CASE("emitted text is pinned and deterministic") {
  FormulaStore s;
  TemporalProgram p = program9(s);
  LogicProgram g = tau_bounded(p, 1);
  std::vector<std::string> header{"teltrace ground program", "alphabet: a b", "lambda: 1"};
  std::string text = emit_text(s, g, header);
  CHECK(text ==
        "% teltrace ground program\n"
        "% alphabet: a b\n"
        "% lambda: 1\n"
        "a(0).\n"
        "b(1) :- a(0).\n"
        ":- not b(1).\n");
  CHECK(emit_text(s, g, header) == text);
  // constraint with the activation guard renders with both negations
  Module m0 = build_module(s, p, 0);
  std::string mod_text = emit_text(s, m0.prog, {});
  CHECK(mod_text == "a(0).\n:- not b(0), not __q(1).\n");
}

TEST_CASE("stamps merge into existing argument tuples") {
  FormulaStore s;
  CHECK(render_gatom(s, GAtom{s.atom("p(c)"), 2}) == "p(c,2)");
  CHECK(render_gatom(s, GAtom{s.atom("a"), 0}) == "a(0)");
  CHECK(render_gatom(s, GAtom{s.atom("__q"), 3}) == "__q(3)");
}

TEST_CASE("the atom budget guards the search") {
  FormulaStore s;
  ProgramBuilder b{s};
  for (int i = 0; i < 25; ++i) b.atom(("p" + std::to_string(i)).c_str());
  CHECK_THROWS_AS(stable_models(b.p, Budget{20}), BudgetError);
}
