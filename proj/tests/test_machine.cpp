#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mealy/mealy.hpp"

using namespace mealy;

TEST_CASE("build_machine validates the description") {
  SECTION("the lamplighter description builds a 2-state machine") {
    const MealyMachine m = build_machine(lamplighter_description());
    REQUIRE(m.num_states() == 2);
    REQUIRE(m.num_letters() == 2);
    // x --(0|1)--> y, x --(1|0)--> x, y --(0|0)--> x, y --(1|1)--> y
    CHECK(m.next(0, 0) == 1);
    CHECK(m.out(0, 0) == 1);
    CHECK(m.next(0, 1) == 0);
    CHECK(m.out(0, 1) == 0);
    CHECK(m.next(1, 0) == 0);
    CHECK(m.out(1, 0) == 0);
    CHECK(m.next(1, 1) == 1);
    CHECK(m.out(1, 1) == 1);
  }
  SECTION("a missing transition is rejected") {
    MachineDescription d = lamplighter_description();
    d.transitions.pop_back();  // drop (y, 1)
    CHECK_THROWS_AS(build_machine(d), MissingTransition);
  }
  SECTION("a duplicate transition is rejected") {
    MachineDescription d = lamplighter_description();
    d.transitions.push_back({"x", "0", "x", "0"});
    CHECK_THROWS_AS(build_machine(d), DuplicateTransition);
  }
  SECTION("an undeclared id is rejected") {
    MachineDescription d = lamplighter_description();
    d.transitions[0].to = "z";
    CHECK_THROWS_AS(build_machine(d), UnknownSymbol);
  }
  SECTION("the one-state identity machine is valid") {
    const MealyMachine e = identity_machine();
    REQUIRE(e.num_states() == 1);
    CHECK(e.next(0, 0) == 0);
    CHECK(e.out(0, 1) == 1);
  }
}

TEST_CASE("dual exchanges states and letters") {
  const MealyMachine L = lamplighter();
  const MealyMachine d = dual(L);

  SECTION("dual of the lamplighter, transition by transition") {
    // Expected by applying x --(i|j)--> y  <=>  i --(x|y)--> j to all four
    // transitions of the lamplighter:
    //   0 --(x|y)--> 1, 1 --(x|x)--> 0, 0 --(y|x)--> 0, 1 --(y|y)--> 1
    REQUIRE(d.state_names() == std::vector<std::string>{"0", "1"});
    REQUIRE(d.letter_names() == std::vector<std::string>{"x", "y"});
    CHECK(d.next(0, 0) == 1);  // 0 --(x|.)--> 1
    CHECK(d.out(0, 0) == 1);   // 0 --(x|y)--> .
    CHECK(d.next(1, 0) == 0);
    CHECK(d.out(1, 0) == 0);
    CHECK(d.next(0, 1) == 0);
    CHECK(d.out(0, 1) == 0);
    CHECK(d.next(1, 1) == 1);
    CHECK(d.out(1, 1) == 1);
  }
  SECTION("dual is an involution") {
    CHECK(dual(d) == L);
    CHECK(dual(d).name() == "lamplighter");
  }
  SECTION("dual of the identity machine loops both states on one letter") {
    const MealyMachine di = dual(identity_machine());
    REQUIRE(di.num_states() == 2);
    REQUIRE(di.num_letters() == 1);
    CHECK(di.next(0, 0) == 0);
    CHECK(di.next(1, 0) == 1);
    CHECK(di.out(0, 0) == 0);
    CHECK(di.out(1, 0) == 0);
  }
  SECTION("involution holds on random machines") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const MealyMachine m = random_machine(1 + seed % 5, 1 + seed % 3, MachineClass::Any, seed);
      CHECK(dual(dual(m)) == m);
    }
  }
}

TEST_CASE("inverse swaps inputs and outputs") {
  const MealyMachine L = lamplighter();
  const MealyMachine inv = inverse(L);

  SECTION("inverse of the lamplighter matches its known transition table") {
    // x^-1 --(0|1)--> x^-1, x^-1 --(1|0)--> y^-1,
    // y^-1 --(1|1)--> y^-1, y^-1 --(0|0)--> x^-1
    REQUIRE(inv.state_names() == std::vector<std::string>{"x^-1", "y^-1"});
    CHECK(inv.next(0, 0) == 0);
    CHECK(inv.out(0, 0) == 1);
    CHECK(inv.next(0, 1) == 1);
    CHECK(inv.out(0, 1) == 0);
    CHECK(inv.next(1, 1) == 1);
    CHECK(inv.out(1, 1) == 1);
    CHECK(inv.next(1, 0) == 0);
    CHECK(inv.out(1, 0) == 0);
  }
  SECTION("inverse is an involution up to renaming") {
    CHECK(same_tables(inverse(inv), L));
    CHECK(inverse(inv).state_name(0) == "x^-1^-1");
  }
  SECTION("a non-invertible machine is rejected") {
    MachineDescription d;
    d.name = "broken";
    d.states = {"x"};
    d.alphabet = {"0", "1"};
    d.transitions = {{"x", "0", "x", "0"}, {"x", "1", "x", "0"}};
    CHECK_THROWS_AS(inverse(build_machine(d)), NotInvertible);
  }
  SECTION("single letters are recovered through the inverse") {
    for (State x = 0; x < L.num_states(); ++x)
      for (Letter i = 0; i < L.num_letters(); ++i) CHECK(inv.out(x, L.out(x, i)) == i);
  }
}

TEST_CASE("disjoint_union glues machines over one alphabet") {
  const MealyMachine L = lamplighter();
  SECTION("union with the inverse gives four states") {
    const MealyMachine u = disjoint_union(L, inverse(L));
    REQUIRE(u.num_states() == 4);
    CHECK(u.state_names() == std::vector<std::string>{"x", "y", "x^-1", "y^-1"});
    CHECK(u.letter_names() == L.letter_names());
  }
  SECTION("union with itself tags the colliding copies") {
    const MealyMachine u = disjoint_union(L, L);
    REQUIRE(u.num_states() == 4);
    CHECK(u.state_names() == std::vector<std::string>{"x", "y", "x'", "y'"});
    // the second copy behaves like the first
    CHECK(u.next(2, 0) == 3);
    CHECK(u.out(2, 0) == 1);
  }
  SECTION("different alphabets are rejected") {
    MachineDescription d;
    d.name = "other";
    d.states = {"p"};
    d.alphabet = {"1", "2", "3"};
    for (const auto& l : d.alphabet) d.transitions.push_back({"p", l, "p", l});
    CHECK_THROWS_AS(disjoint_union(L, build_machine(d)), AlphabetMismatch);
  }
}

TEST_CASE("product composes actions") {
  const MealyMachine L = lamplighter();
  const MealyMachine LL = product(L, L);

  SECTION("the pair xy reads 0 into yy producing 1") {
    // Cross-diagram by hand: rho_x(0)=1, delta_0(x)=y, rho_y(1)=1, delta_1(y)=y.
    const State xy = 1;  // pairs in x-major order: (x,x) (x,y) (y,x) (y,y)
    CHECK(LL.state_name(xy) == "(x,y)");
    CHECK(LL.next(xy, 0) == 3);
    CHECK(LL.state_name(3) == "(y,y)");
    CHECK(LL.out(xy, 0) == 1);
  }
  SECTION("the identity machine is neutral on both sides") {
    const MealyMachine e = identity_machine();
    CHECK(same_tables(product(L, e), L));
    CHECK(same_tables(product(e, L), L));
  }
  SECTION("pair outputs are the composition of the factor outputs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const MealyMachine a = random_machine(1 + seed % 4, 2 + seed % 2, MachineClass::Any, seed);
      const MealyMachine b =
          random_machine(1 + (seed / 2) % 3, 2 + seed % 2, MachineClass::Any, seed + 1000);
      const MealyMachine p = product(a, b);
      for (State x = 0; x < a.num_states(); ++x)
        for (State y = 0; y < b.num_states(); ++y)
          for (Letter i = 0; i < a.num_letters(); ++i)
            CHECK(p.out(static_cast<State>(x * b.num_states() + y), i) == b.out(y, a.out(x, i)));
    }
  }
  SECTION("different alphabets are rejected") {
    CHECK_THROWS_AS(product(L, identity_machine(3)), AlphabetMismatch);
  }
}

TEST_CASE("run evaluates rho_u and delta_s") {
  const MealyMachine L = lamplighter();

  SECTION("x on 00 produces 10 and returns to x") {
    // Hand run: x reads 0, writes 1, moves to y; y reads 0, writes 0, moves to x.
    const RunResult r = run(L, parse_state_word(L, "x"), parse_letter_word(L, "0 0"));
    CHECK(format_letter_word(L, r.output) == "1 0");
    CHECK(format_state_word(L, r.final_word) == "x");
  }
  SECTION("the empty state word copies the input") {
    const LetterWord s = parse_letter_word(L, "0 1 1 0");
    const RunResult r = run(L, {}, s);
    CHECK(r.output == s);
    CHECK(r.final_word.empty());
  }
  SECTION("the empty letter word moves nothing") {
    const StateWord u = parse_state_word(L, "x y x");
    const RunResult r = run(L, u, {});
    CHECK(r.output.empty());
    CHECK(r.final_word == u);
  }
  SECTION("length and prefix preservation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const MealyMachine m = random_machine(2 + seed % 3, 2 + seed % 2, MachineClass::Any, seed);
      std::mt19937_64 rng(seed);
      StateWord u;
      for (int k = 0; k < 3; ++k) u.push_back(static_cast<State>(rng() % m.num_states()));
      LetterWord s;
      for (int k = 0; k < 8; ++k) s.push_back(static_cast<Letter>(rng() % m.num_letters()));
      const RunResult full = run(m, u, s);
      REQUIRE(full.output.size() == s.size());
      for (std::size_t cut = 0; cut <= s.size(); ++cut) {
        const LetterWord prefix(s.begin(), s.begin() + cut);
        const RunResult part = run(m, u, prefix);
        CHECK(LetterWord(full.output.begin(), full.output.begin() + cut) == part.output);
      }
    }
  }
  SECTION("runs factor through concatenation of state words") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const MealyMachine m = random_machine(2 + seed % 3, 2, MachineClass::Any, seed + 77);
      std::mt19937_64 rng(seed);
      StateWord u, v;
      for (int k = 0; k < 2; ++k) u.push_back(static_cast<State>(rng() % m.num_states()));
      for (int k = 0; k < 3; ++k) v.push_back(static_cast<State>(rng() % m.num_states()));
      LetterWord s;
      for (int k = 0; k < 6; ++k) s.push_back(static_cast<Letter>(rng() % m.num_letters()));

      StateWord uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      const RunResult whole = run(m, uv, s);
      const RunResult first = run(m, u, s);
      const RunResult second = run(m, v, first.output);
      CHECK(whole.output == second.output);
      StateWord glued = first.final_word;
      glued.insert(glued.end(), second.final_word.begin(), second.final_word.end());
      CHECK(whole.final_word == glued);
    }
  }
}

TEST_CASE("word parsing checks symbols") {
  const MealyMachine L = lamplighter();
  CHECK(parse_state_word(L, "x y x") == StateWord{0, 1, 0});
  CHECK(parse_state_word(L, "").empty());
  CHECK_THROWS_AS(parse_state_word(L, "x z"), UnknownSymbol);
  CHECK(parse_letter_word(L, "0 1") == LetterWord{0, 1});
  CHECK_THROWS_AS(parse_letter_word(L, "2"), UnknownSymbol);
  CHECK(format_state_word(L, StateWord{1, 0}) == "y x");
}
