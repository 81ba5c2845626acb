#include <doctest.h>

#include <algorithm>

#include "teltrace/equilibrium.hpp"
#include "teltrace/errors.hpp"
#include "teltrace/normalform.hpp"
#include "teltrace/parser.hpp"
#include "teltrace/printer.hpp"
#include "test_util.hpp"

using namespace teltrace;

namespace {

// Restriction of stable models over an extended alphabet onto the original.
std::vector<Trace> project(const std::vector<Trace>& models, const Alphabet& big,
                           const Alphabet& small) {
  std::vector<Trace> out;
  for (const Trace& t : models) {
    Trace p;
    for (std::uint64_t st : t.states) {
      std::uint64_t q = 0;
      for (std::size_t j = 0; j < small.atoms.size(); ++j) {
        int bit = big.index_of(small.atoms[j]);
        if (bit >= 0 && (st >> bit & 1)) q |= 1ull << j;
      }
      p.states.push_back(q);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Oracle models of a temporal program at the given length, projected onto
// the program's original alphabet.
std::vector<Trace> oracle_of_program(FormulaStore& s, const TemporalProgram& p,
                                     int lambda, Budget budget = Budget::from_env()) {
  Theory th = program_theory(s, p);
  return project(tel_models(s, th, lambda, budget), th.alphabet, p.alphabet);
}

}  // namespace

TEST_CASE("rule-shaped statements classify without fresh atoms") {
  FormulaStore s;
  Theory th = parse_theory(s,
                           "a.\n"
                           "#next^ #always+ ((#previous a) -> b).\n"
                           "#always+ (#final -> (~ b -> #false)).\n");
  TemporalProgram p = to_normal_form(s, th);
  CHECK(p.aux_alphabet.atoms.empty());
  REQUIRE(p.rules.size() == 3);
  CHECK(p.rules[0].kind == RuleKind::Initial);
  CHECK(p.rules[1].kind == RuleKind::Dynamic);
  CHECK(p.rules[2].kind == RuleKind::Final);
  CHECK(p.rules[1].body ==
        std::vector<TemporalLiteral>{TemporalLiteral{s.atom("a"), true, false}});
  CHECK(p.rules[1].head ==
        std::vector<TemporalLiteral>{TemporalLiteral{s.atom("b"), false, false}});
}

TEST_CASE("the inertia formula compiles to a single dynamic rule") {
  FormulaStore s;
  Theory th = parse_theory(s, "#always+ ((#previous loaded) & ~ unloaded -> loaded).\n");
  TemporalProgram p = to_normal_form(s, th);
  CHECK(p.aux_alphabet.atoms.empty());
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].kind == RuleKind::Dynamic);
  CHECK(p.rules[0].present_centered());
}

TEST_CASE("a doubly negated goal compiles to one witness atom and two rules") {
  FormulaStore s;
  Theory th = parse_theory(
      s, "#always+ (#final -> (~ ~ (shoot & (#previous loaded) & loaded) -> #false)).\n");
  TemporalProgram p = to_normal_form(s, th);
  REQUIRE(p.aux_alphabet.atoms.size() == 1);
  AtomId goal = p.aux_alphabet.atoms[0];
  REQUIRE(p.rules.size() == 2);
  CHECK(p.rules[0].kind == RuleKind::Dynamic);
  CHECK(p.rules[0].body == std::vector<TemporalLiteral>{
                               {s.atom("shoot"), false, false},
                               {s.atom("loaded"), true, false},
                               {s.atom("loaded"), false, false}});
  CHECK(p.rules[0].head == std::vector<TemporalLiteral>{{goal, false, false}});
  CHECK(p.rules[1].kind == RuleKind::Final);
  CHECK(p.rules[1].body == std::vector<TemporalLiteral>{{goal, false, true}});
  CHECK(p.rules[1].head.empty());
}

TEST_CASE("a bare fact is its own normal form") {
  FormulaStore s;
  Theory th = parse_theory(s, "a.\n");
  TemporalProgram p = to_normal_form(s, th);
  CHECK(p.aux_alphabet.atoms.empty());
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].kind == RuleKind::Initial);
  CHECK(p.rules[0].body.empty());
}

TEST_CASE("normal-form models project onto the source models") {
  FormulaStore s;
  std::mt19937_64 rng(401);
  std::vector<AtomId> atoms{s.atom("a"), s.atom("b")};
  Alphabet orig = Alphabet::sorted(s, atoms);
  int done = 0;
  while (done < 40) {
    Theory th;
    th.alphabet = orig;
    int nf = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < nf; ++j)
      th.formulas.push_back(testutil::random_formula(s, rng, atoms, 3));
    TemporalProgram p = to_normal_form(s, th);
    if ((3 + 1) * (2 + p.aux_alphabet.atoms.size()) > 30) continue;  // enumerable only
    ++done;
    for (int lambda = 0; lambda <= 3; ++lambda) {
      auto got = oracle_of_program(s, p, lambda, Budget{32});
      auto want = tel_models(s, th, lambda);
      CAPTURE(print_formula(s, th.formulas[0]));
      CAPTURE(lambda);
      CHECK(got == want);
    }
  }
}

TEST_CASE("normal-form projection survives added context") {
  FormulaStore s;
  std::mt19937_64 rng(402);
  std::vector<AtomId> atoms{s.atom("a"), s.atom("b")};
  Alphabet orig = Alphabet::sorted(s, atoms);
  int done = 0;
  while (done < 25) {
    Theory th;
    th.alphabet = orig;
    th.formulas.push_back(testutil::random_formula(s, rng, atoms, 3));
    Fid delta = testutil::random_formula(s, rng, atoms, 2);
    TemporalProgram p = to_normal_form(s, th);
    if ((3 + 1) * (2 + p.aux_alphabet.atoms.size()) > 30) continue;
    ++done;
    Theory with_ctx = th;
    with_ctx.formulas.push_back(delta);
    Theory p_th = program_theory(s, p);
    p_th.formulas.push_back(delta);
    for (int lambda = 0; lambda <= 2; ++lambda) {
      auto got = project(tel_models(s, p_th, lambda, Budget{32}), p_th.alphabet, orig);
      auto want = tel_models(s, with_ctx, lambda);
      CAPTURE(print_formula(s, th.formulas[0]));
      CAPTURE(print_formula(s, delta));
      CHECK(got == want);
    }
  }
}

TEST_CASE("past-future recognition reports offenders") {
  FormulaStore s;
  Fid good = parse_formula(s, "#always+ (shoot & (#previous #eventually- shoot) -> #eventually+ fail)");
  CHECK(as_past_future_rule(s, good).has_value());

  std::string why;
  Fid bad_body = parse_formula(s, "#always+ ((#next a) -> b)");
  CHECK_FALSE(as_past_future_rule(s, bad_body, &why).has_value());
  CHECK(why.find("future operator") != std::string::npos);
  CHECK(why.find("#next") != std::string::npos);

  Fid bad_head = parse_formula(s, "#always+ (a -> #previous b)");
  CHECK_FALSE(as_past_future_rule(s, bad_head, &why).has_value());
  CHECK(why.find("past operator") != std::string::npos);

  Fid bad_impl = parse_formula(s, "#always+ ((a -> b) -> c)");
  CHECK_FALSE(as_past_future_rule(s, bad_impl, &why).has_value());
  CHECK(why.find("implication") != std::string::npos);
}

TEST_CASE("present-centered rules reduce to themselves") {
  FormulaStore s;
  Fid f = parse_formula(s, "#next^ #always+ ((#previous a) & ~ b -> c)");
  auto pf = as_past_future_rule(s, f);
  REQUIRE(pf.has_value());
  TemporalProgram p = reduce_past_future(s, *pf);
  CHECK(p.aux_alphabet.atoms.empty());
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].kind == RuleKind::Dynamic);
  CHECK(p.rules[0].present_centered());
}

TEST_CASE("the failure rule reduces to the hand encoding's shape") {
  FormulaStore s;
  Fid f = parse_formula(
      s, "#always+ (shoot & (#previous #eventually- shoot) & (#always- unloaded) -> #eventually+ fail)");
  auto pf = as_past_future_rule(s, f);
  REQUIRE(pf.has_value());
  TemporalProgram p = reduce_past_future(s, *pf);
  CHECK(p.present_centered());
  // two history atoms, the deferral token and its pinned value
  CHECK(p.aux_alphabet.atoms.size() == 4);
  bool has_carry = false, has_final_discharge = false;
  for (const auto& r : p.rules) {
    if (r.kind == RuleKind::Dynamic && r.body.size() == 1 && r.body[0].prev &&
        r.head.size() == 2)
      has_carry = true;
    if (r.kind == RuleKind::Final && !r.body.empty() && !r.head.empty())
      has_final_discharge = true;
  }
  CHECK(has_carry);
  CHECK(has_final_discharge);
}

TEST_CASE("reduced rules keep the stable models of the source rule") {
  FormulaStore s;
  Fid f = parse_formula(s, "#next^ #always+ ((#previous a) -> #eventually+ b)");
  auto pf = as_past_future_rule(s, f);
  REQUIRE(pf.has_value());
  TemporalProgram p = reduce_past_future(s, *pf);
  CHECK(p.present_centered());
  Theory orig;
  orig.alphabet = p.alphabet;
  orig.formulas = {f};
  for (int lambda = 0; lambda <= 2; ++lambda)
    CHECK(oracle_of_program(s, p, lambda, Budget{32}) == tel_models(s, orig, lambda));
}

TEST_CASE("random past-future rules reduce faithfully, also in context") {
  FormulaStore s;
  std::mt19937_64 rng(403);
  std::vector<AtomId> atoms{s.atom("a"), s.atom("b")};
  Alphabet orig = Alphabet::sorted(s, atoms);
  auto lit = [&]() {
    Fid at = s.make_atom(atoms[rng() % 2]);
    return rng() % 4 == 0 ? s.neg(at) : at;
  };
  auto past = [&]() -> Fid {
    switch (rng() % 6) {
      case 0: return lit();
      case 1: return s.make(Op::Prev, lit());
      case 2: return s.make(Op::EvBefore, lit());
      case 3: return s.make(Op::AlwaysBefore, lit());
      case 4: return s.make(Op::Since, lit(), lit());
      default: return s.neg(s.conj(lit(), lit()));
    }
  };
  auto future = [&]() -> Fid {
    switch (rng() % 7) {
      case 0: return lit();
      case 1: return s.make(Op::Next, lit());
      case 2: return s.make(Op::WNext, lit());
      case 3: return s.make(Op::EvAfter, lit());
      case 4: return s.make(Op::AlwaysAfter, lit());
      case 5: return s.make(Op::Until, lit(), lit());
      default: return s.make(Op::Release, lit(), lit());
    }
  };
  int done = 0;
  while (done < 35) {
    std::vector<Fid> body, head;
    int nb = static_cast<int>(rng() % 3), nh = static_cast<int>(rng() % 2) + 1;
    for (int i = 0; i < nb; ++i) body.push_back(past());
    for (int i = 0; i < nh; ++i) head.push_back(future());
    Fid core = s.impl(s.conj_all(body), s.disj_all(head));
    Fid f;
    switch (rng() % 4) {
      case 0: f = core; break;
      case 1: f = s.make(Op::WNext, s.make(Op::AlwaysAfter, core)); break;
      case 2: f = s.make(Op::AlwaysAfter, s.impl(s.make(Op::Final), core)); break;
      default: f = s.make(Op::AlwaysAfter, core); break;
    }
    auto pf = as_past_future_rule(s, f);
    REQUIRE(pf.has_value());
    TemporalProgram p = reduce_past_future(s, *pf);
    CHECK(p.present_centered());
    if ((2 + 1) * (2 + p.aux_alphabet.atoms.size()) > 27) continue;
    ++done;
    Theory orig_th;
    orig_th.alphabet = orig;
    orig_th.formulas = {f};
    Fid delta = testutil::random_formula(s, rng, atoms, 2);
    for (int lambda = 0; lambda <= 2; ++lambda) {
      CAPTURE(print_formula(s, f));
      CAPTURE(lambda);
      CHECK(oracle_of_program(s, p, lambda, Budget{30}) ==
            tel_models(s, orig_th, lambda));
      Theory p_th = program_theory(s, p);
      p_th.formulas.push_back(delta);
      Theory both = orig_th;
      both.formulas.push_back(delta);
      CAPTURE(print_formula(s, delta));
      CHECK(project(tel_models(s, p_th, lambda, Budget{30}), p_th.alphabet, orig) ==
            tel_models(s, both, lambda));
    }
  }
}

TEST_CASE("present-centered predicate") {
  FormulaStore s;
  TemporalProgram p;
  p.rules.push_back(make_rule(RuleKind::Dynamic,
                              {TemporalLiteral{s.atom("a"), true, false}},
                              {TemporalLiteral{s.atom("b"), false, false}}));
  CHECK(p.present_centered());
  p.rules.push_back(make_rule(RuleKind::Dynamic, {},
                              {TemporalLiteral{s.atom("b"), true, false}}));
  CHECK_FALSE(p.present_centered());
  TemporalProgram empty;
  CHECK(empty.present_centered());
}

TEST_CASE("action laws translate to their rule pairs") {
  FormulaStore s;
  auto laws = parse_bc_laws(s, "a after b ifcons c.\na if b.\na if.\n");
  REQUIRE(laws.size() == 3);

  auto r0 = from_bc_law(laws[0]);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].kind == RuleKind::Dynamic);
  CHECK(r0[0].body == std::vector<TemporalLiteral>{{s.atom("b"), true, false}});
  CHECK(r0[0].head == std::vector<TemporalLiteral>{{s.atom("a"), false, false},
                                                   {s.atom("c"), false, true}});

  auto r1 = from_bc_law(laws[1]);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].kind == RuleKind::Dynamic);
  CHECK(r1[0].body == std::vector<TemporalLiteral>{{s.atom("b"), false, false}});
  CHECK(r1[1].kind == RuleKind::Initial);

  auto r2 = from_bc_law(laws[2]);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].body.empty());
  CHECK(r2[0].head == std::vector<TemporalLiteral>{{s.atom("a"), false, false}});

  CHECK_THROWS_AS(parse_bc_laws(s, "a maybe b.\n"), ParseError);
  CHECK_THROWS_AS(parse_bc_laws(s, "a if b\n"), ParseError);
}

TEST_CASE("lint flags negated head literals") {
  FormulaStore s;
  TemporalProgram p = bc_program(s, parse_bc_laws(s, "a if b ifcons c.\n"));
  auto notes = lint_program(s, p);
  REQUIRE(notes.size() == 2);
  CHECK(notes[0].find("negated head literal") != std::string::npos);
}

TEST_CASE("fresh atoms stay behind the reserved prefix") {
  FormulaStore s;
  Theory th = parse_theory(s, "#always+ #eventually+ a.\n");
  TemporalProgram p = to_normal_form(s, th);
  CHECK_FALSE(p.aux_alphabet.atoms.empty());
  for (AtomId a : p.aux_alphabet.atoms)
    CHECK(s.atom_name(a).rfind("__nf_", 0) == 0);
  for (AtomId a : p.alphabet.atoms)
    CHECK(s.atom_name(a).rfind("__", 0) != 0);
}
