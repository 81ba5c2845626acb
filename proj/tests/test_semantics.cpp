#include <doctest.h>

#include "teltrace/equivalence.hpp"
#include "teltrace/errors.hpp"
#include "teltrace/parser.hpp"
#include "teltrace/printer.hpp"
#include "teltrace/transform.hpp"
#include "test_util.hpp"

using namespace teltrace;

namespace {

struct Fix {
  FormulaStore s;
  AtomId a = s.atom("a");
  AtomId b = s.atom("b");
  Alphabet al = Alphabet::sorted(s, {a, b});
  Fid fa = s.make_atom(a);
  Fid fb = s.make_atom(b);

  Trace tr(std::initializer_list<std::uint64_t> states) {
    return Trace{std::vector<std::uint64_t>(states)};
  }
};

}  // namespace

TEST_CASE("satisfaction honors the trace edges") {
  Fix x;
  // bit 0 = a, bit 1 = b
  HTTrace m = total_trace(x.tr({1, 2}));
  CHECK_FALSE(sat(x.s, x.al, m, 1, x.s.make(Op::Next, x.s.top())));
  CHECK(sat(x.s, x.al, m, 0, x.s.make(Op::Next, x.s.top())));
  CHECK_FALSE(sat(x.s, x.al, m, 0, x.s.make(Op::Prev, x.fa)));
  // the final constant holds exactly at the last point
  Fid fin = x.s.make(Op::Final);
  CHECK_FALSE(sat(x.s, x.al, m, 0, fin));
  CHECK(sat(x.s, x.al, m, 1, fin));
  CHECK_THROWS_AS(sat(x.s, x.al, m, 2, x.fa), InputError);
}

TEST_CASE("excluded middle can fail off the total diagonal") {
  Fix x;
  // here empty, there {a}: neither a nor its negation holds here
  HTTrace m = make_ht(x.tr({0}), x.tr({1}));
  Fid em = x.s.disj(x.fa, x.s.neg(x.fa));
  CHECK_FALSE(sat(x.s, x.al, m, 0, em));
  CHECK_FALSE(ref::sat(x.s, x.al, m, 0, em));
  CHECK(sat(x.s, x.al, total_trace(x.tr({1})), 0, em));
}

TEST_CASE("classical evaluation examples") {
  Fix x;
  CHECK(sat_ltl(x.s, x.al, x.tr({0, 1}), 0, x.s.make(Op::EvAfter, x.fa)));
  // alternating a/b: b recurs up to the horizon
  Fid gfb = x.s.make(Op::AlwaysAfter, x.s.make(Op::EvAfter, x.fb));
  CHECK(sat_ltl(x.s, x.al, x.tr({1, 2}), 0, gfb));
  CHECK(ref::sat_ltl(x.s, x.al, x.tr({1, 2}), 0, gfb));
  // every finite trace eventually reaches the end
  Fid evfin = x.s.make(Op::EvAfter, x.s.make(Op::Final));
  CHECK(sat_ltl(x.s, x.al, x.tr({0}), 0, evfin));
  CHECK(sat_ltl(x.s, x.al, x.tr({0, 0, 0}), 1, evfin));
}

TEST_CASE("model checking of whole theories") {
  Fix x;
  Theory empty{x.al, {}};
  CHECK(is_model(x.s, empty, total_trace(x.tr({0}))));
  Theory ta{x.al, {x.fa}};
  CHECK(is_model(x.s, ta, total_trace(x.tr({1}))));
  Theory nn{x.al, {x.s.make(Op::Next, x.s.make(Op::Next, x.fb))}};
  CHECK_FALSE(is_model(x.s, nn, total_trace(x.tr({0, 2}))));
  CHECK(is_model(x.s, nn, total_trace(x.tr({0, 0, 2}))));
}

TEST_CASE("fast evaluator agrees with the reference on random inputs") {
  Fix x;
  std::mt19937_64 rng(101);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 600; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 4);
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    int k = static_cast<int>(rng() % n_states);
    CAPTURE(print_formula(x.s, f));
    CHECK(sat(x.s, x.al, m, k, f) == ref::sat(x.s, x.al, m, k, f));
    CHECK(sat_ltl(x.s, x.al, m.there, k, f) == ref::sat_ltl(x.s, x.al, m.there, k, f));
  }
}

TEST_CASE("satisfaction persists from here to there") {
  Fix x;
  std::mt19937_64 rng(102);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 500; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 4);
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    int k = static_cast<int>(rng() % n_states);
    if (sat(x.s, x.al, m, k, f)) CHECK(sat(x.s, x.al, total_trace(m.there), k, f));
  }
}

TEST_CASE("total traces collapse to classical evaluation") {
  Fix x;
  std::mt19937_64 rng(103);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 500; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 4);
    int n_states = 1 + static_cast<int>(rng() % 4);
    Trace t = testutil::random_trace(rng, n_states, 2);
    int k = static_cast<int>(rng() % n_states);
    CHECK(sat(x.s, x.al, total_trace(t), k, f) == sat_ltl(x.s, x.al, t, k, f));
  }
}

TEST_CASE("negation is refutation on the there-trace") {
  Fix x;
  std::mt19937_64 rng(104);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 500; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 3);
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    int k = static_cast<int>(rng() % n_states);
    CHECK(sat(x.s, x.al, m, k, x.s.neg(f)) == !sat_ltl(x.s, x.al, m.there, k, f));
  }
}

TEST_CASE("the excluded-middle schema forces total traces") {
  Fix x;
  Fid em = x.s.conj(x.s.make(Op::AlwaysAfter, x.s.disj(x.fa, x.s.neg(x.fa))),
                    x.s.make(Op::AlwaysAfter, x.s.disj(x.fb, x.s.neg(x.fb))));
  std::mt19937_64 rng(105);
  for (int i = 0; i < 500; ++i) {
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    if (sat(x.s, x.al, m, 0, em)) CHECK(m.total());
  }
}

TEST_CASE("derived operators match their expansions") {
  Fix x;
  std::mt19937_64 rng(106);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 500; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 4);
    Fid core = desugar(x.s, f);
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    int k = static_cast<int>(rng() % n_states);
    CAPTURE(print_formula(x.s, f));
    CHECK(sat(x.s, x.al, m, k, f) == sat(x.s, x.al, m, k, core));
  }
}

TEST_CASE("position constants behave like classical markers") {
  Fix x;
  Budget small{12};
  Fid I = x.s.make(Op::Initial), F = x.s.make(Op::Final);
  auto em_i = equivalent_bounded(x.s, x.s.disj(I, x.s.neg(I)), x.s.top(), 3, x.al, small);
  CHECK(em_i.equivalent);
  auto em_f = equivalent_bounded(x.s, x.s.disj(F, x.s.neg(F)), x.s.top(), 3, x.al, small);
  CHECK(em_f.equivalent);
  auto fin = equivalent_bounded(x.s, x.s.make(Op::EvAfter, F), x.s.top(), 3, x.al, small);
  CHECK(fin.equivalent);
}

TEST_CASE("the unfolding identities hold under the bounded check") {
  Fix x;
  Budget small{12};
  Fid a = x.fa, b = x.fb;
  Fid u = x.s.make(Op::Until, a, b);
  Fid u_unfold = x.s.disj(b, x.s.conj(a, x.s.make(Op::Next, u)));
  CHECK(equivalent_bounded(x.s, u, u_unfold, 3, x.al, small).equivalent);

  Fid r = x.s.make(Op::Release, a, b);
  Fid r_unfold = x.s.conj(b, x.s.disj(a, x.s.make(Op::WNext, r)));
  CHECK(equivalent_bounded(x.s, r, r_unfold, 3, x.al, small).equivalent);

  Fid sc = x.s.make(Op::Since, a, b);
  Fid s_unfold = x.s.disj(b, x.s.conj(a, x.s.make(Op::Prev, sc)));
  CHECK(equivalent_bounded(x.s, sc, s_unfold, 3, x.al, small).equivalent);

  Fid t = x.s.make(Op::Trigger, a, b);
  Fid t_unfold = x.s.conj(b, x.s.disj(a, x.s.make(Op::WPrev, t)));
  CHECK(equivalent_bounded(x.s, t, t_unfold, 3, x.al, small).equivalent);
}

TEST_CASE("a previous-step is initially but not globally falsum") {
  Fix x;
  Fid pa = x.s.make(Op::Prev, x.fa);
  auto global = equivalent_bounded(x.s, pa, x.s.bot(), 3, x.al, Budget{12});
  REQUIRE_FALSE(global.equivalent);
  REQUIRE(global.witness.has_value());
  CHECK(global.witness->k >= 1);
  CHECK(initially_equivalent_bounded(x.s, pa, x.s.bot(), 3, x.al, Budget{12}).equivalent);
  CHECK(initially_equivalent_bounded(x.s, x.fa, x.fa, 3, x.al, Budget{12}).equivalent);
}

TEST_CASE("boolean duality relates equivalences of dual pairs") {
  Fix x;
  std::mt19937_64 rng(107);
  std::vector<AtomId> atoms{x.a, x.b};
  Budget small{8};
  for (int i = 0; i < 120; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 3, true);
    Fid g = testutil::random_formula(x.s, rng, atoms, 3, true);
    bool direct = equivalent_bounded(x.s, f, g, 2, x.al, small).equivalent;
    bool dual = equivalent_bounded(x.s, dual_boolean(x.s, f), dual_boolean(x.s, g), 2,
                                   x.al, small)
                    .equivalent;
    CAPTURE(print_formula(x.s, f));
    CAPTURE(print_formula(x.s, g));
    CHECK(direct == dual);
  }
}

TEST_CASE("reversal realizes the time-swap duality") {
  Fix x;
  std::mt19937_64 rng(108);
  std::vector<AtomId> atoms{x.a, x.b};
  for (int i = 0; i < 500; ++i) {
    Fid f = testutil::random_formula(x.s, rng, atoms, 4);
    Fid g = swap_time(x.s, f);
    int n_states = 1 + static_cast<int>(rng() % 4);
    HTTrace m = testutil::random_ht(rng, n_states, 2);
    HTTrace r = reverse(m);
    int k = static_cast<int>(rng() % n_states);
    CAPTURE(print_formula(x.s, f));
    CHECK(sat(x.s, x.al, m, k, f) == sat(x.s, x.al, r, n_states - 1 - k, g));
  }
}

TEST_CASE("trace reversal flips states and keeps totality") {
  Fix x;
  HTTrace m = make_ht(x.tr({1, 0}), x.tr({1, 2}));
  HTTrace r = reverse(m);
  CHECK(r.here.states == std::vector<std::uint64_t>{0, 1});
  CHECK(r.there.states == std::vector<std::uint64_t>{2, 1});
  HTTrace tot = total_trace(x.tr({1, 2}));
  CHECK(reverse(tot).total());
  Trace single = x.tr({2});
  CHECK(reverse(single) == single);
}

TEST_CASE("trace files parse and print") {
  Fix x;
  Trace t = parse_trace(x.s, x.al, "% comment\n{a b}\n{}\n{b}\n");
  CHECK(t.states == std::vector<std::uint64_t>{3, 0, 2});
  CHECK(print_trace(x.s, x.al, t) == "{a b}\n{}\n{b}\n");
  CHECK_THROWS_AS(parse_trace(x.s, x.al, "{c}\n"), ParseError);
  CHECK_THROWS_AS(make_ht(x.tr({1}), x.tr({0})), InputError);
}
