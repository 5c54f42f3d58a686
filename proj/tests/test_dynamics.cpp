#include <random>
#include <set>

#include "doctest.h"

#include "agt/algebra.hpp"
#include "agt/constructions.hpp"
#include "agt/corpus.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "oracle.hpp"

using namespace agt;

namespace {
  Mealy identity_machine(std::size_t states) {
    return Mealy::build(oracle::names("q", states), {"0", "1"},
                        [](state_t q, letter_t a) { return std::pair(q, a); });
  }

  LetterWord letters(Mealy const& m, std::string_view text) {
    return parse_letters(m, text);
  }
}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("act") {
    auto g = corpus_machine("grigorchuk");
    auto r = act(g, parse_word(g, "a"), letters(g, "0 1 1"));
    CHECK(format_letters(g, r.output) == "1 1 1");
    CHECK(format_word(g, r.section) == "e");
    auto a = corpus_machine("adding");
    auto s = act(a, parse_word(a, "a"), letters(a, "1 1 0"));
    CHECK(format_letters(a, s.output) == "0 0 1");
    CHECK(format_word(a, s.section) == "e");
    auto t = act(a, {}, letters(a, "1 0"));
    CHECK(format_letters(a, t.output) == "1 0");
    CHECK(t.section.empty());
    CHECK_THROWS_AS(act(cayley_machine(zn_group(3)),
                        parse_word(cayley_machine(zn_group(3)), "1^-1"),
                        LetterWord{0}),
                    Error);
  }

  TEST_CASE("act composes right to left") {
    std::mt19937 rng(11);
    INFO("seed 11");
    for (int i = 0; i < 200; ++i) {
      auto m = oracle::random_machine(rng, 3, 2, oracle::Kind::invertible);
      auto u = oracle::random_word(rng, 3, i % 4, true);
      auto v = oracle::random_word(rng, 3, i % 5, true);
      auto x = oracle::random_word(rng, 2, 6, false);
      LetterWord in;
      for (auto s : x) {
        in.push_back(s.base);
      }
      auto uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      auto whole = act(m, uv, in).output;
      CHECK(whole == act(m, u, act(m, v, in).output).output);
      CHECK(whole == oracle::apply_word(m, uv, in));
    }
  }

  TEST_CASE("sections follow the mirror law through the dual") {
    // u·v read in m equals the mirror of v^R acting on u^R in the dual.
    std::mt19937 rng(12);
    INFO("seed 12");
    for (int i = 0; i < 200; ++i) {
      auto m = oracle::random_machine(rng, 3, 2, oracle::Kind::any);
      auto u = oracle::random_word(rng, 3, 1 + i % 5, false);
      auto v = oracle::random_word(rng, 2, 1 + i % 4, false);
      LetterWord in;
      for (auto s : v) {
        in.push_back(s.base);
      }
      auto section = act(m, u, in).section;
      auto d       = dual(m);
      // In the dual the letters of v are states and u is input.
      GroupWord vr;
      for (auto a : in) {
        vr.push_back({a, false});
      }
      LetterWord ur;
      for (auto s : mirror(u)) {
        ur.push_back(s.base);
      }
      auto image = oracle::apply_word(d, mirror(vr), ur);
      GroupWord expected;
      for (auto it = image.rbegin(); it != image.rend(); ++it) {
        expected.push_back({*it, false});
      }
      CHECK(section == expected);
    }
  }

  TEST_CASE("is_identity on Grigorchuk") {
    auto g = corpus_machine("grigorchuk");
    CHECK(is_identity(g, parse_word(g, "a a")));
    CHECK(is_identity(g, parse_word(g, "b c d")));
    CHECK_FALSE(is_identity(g, parse_word(g, "a b")));
    CHECK(is_identity(g, {}));
  }

  TEST_CASE("is_identity agrees with the level oracle") {
    std::mt19937 rng(13);
    INFO("seed 13");
    for (int i = 0; i < 100; ++i) {
      auto m = oracle::random_machine(rng, 2 + i % 2, 2, oracle::Kind::invertible);
      for (std::size_t len = 1; len <= 3; ++len) {
        for (auto const& w : oracle::reduced_words(m.num_states(), len, true)) {
          // Section closure has at most (2|Q|)^|w| words; depth 7 covers
          // every case here with room to spare for 2 letters.
          CHECK(is_identity(m, w) == oracle::trivial_up_to(m, w, 7));
        }
      }
    }
  }

  TEST_CASE("order_of") {
    auto g = corpus_machine("grigorchuk");
    CHECK(order_of(g, parse_word(g, "a"), 4) == 2);
    CHECK(order_of(g, parse_word(g, "a b"), 32) == 16);
    CHECK(order_of(g, parse_word(g, "a c"), 32) == 8);
    CHECK(order_of(g, parse_word(g, "a d"), 32) == 4);
    auto a = corpus_machine("adding");
    CHECK_FALSE(order_of(a, parse_word(a, "a"), 64).has_value());
  }

  TEST_CASE("orbit_of_word") {
    auto g = corpus_machine("grigorchuk");
    auto r = orbit_of_word(g, letters(g, "0 0"), 100, true);
    REQUIRE(r.finite());
    CHECK(r.orbit().graph.num_vertices() == 4);
    auto e = orbit_of_word(sink_machine({"0", "1"}), LetterWord{1, 0}, 10, false);
    REQUIRE(e.finite());
    CHECK(e.orbit().graph.num_vertices() == 1);
    auto a = corpus_machine("adding");
    for (std::size_t k = 1; k <= 6; ++k) {
      auto o = orbit_of_word(a, LetterWord(k, 0), 1000, true);
      REQUIRE(o.finite());
      CHECK(o.orbit().graph.num_vertices() == (std::size_t(1) << k));
    }
    auto cut = orbit_of_word(a, LetterWord(6, 0), 10, true);
    CHECK_FALSE(cut.finite());
  }

  TEST_CASE("schreier_level") {
    auto g  = corpus_machine("grigorchuk");
    auto s1 = schreier_level(g, 1, letters(g, "0"));
    CHECK(s1.num_vertices() == 2);
    auto a_edge = s1.target(0, 0);
    CHECK(a_edge == 1);
    for (std::size_t q = 1; q < 4; ++q) {
      CHECK(s1.target(0, q) == 0);
      CHECK(s1.target(1, q) == 1);
    }
    auto e = schreier_level(sink_machine({"0", "1"}), 3, LetterWord{0, 1, 1});
    CHECK(e.num_vertices() == 1);
    CHECK(e.edges().size() == 2);
    auto a  = corpus_machine("adding");
    auto s3 = schreier_level(a, 3, letters(a, "0 0 0"));
    CHECK(s3.num_vertices() == 8);
    // Following a eight times returns to the root and not earlier.
    std::size_t v = s3.root();
    for (int i = 1; i <= 8; ++i) {
      v = *s3.target(v, 0);
      CHECK((v == s3.root()) == (i == 8));
    }
    CHECK_THROWS_AS(schreier_level(g, 2, letters(g, "0")), Error);
  }

  TEST_CASE("periodic orbits") {
    auto sq = s_q({"q1", "q2"});
    for (auto y : {"q1", "q2", "q1 q2^-1"}) {
      auto r = periodic_orbit(sq, PeriodicPoint::canonical({}, parse_word(sq, y)),
                              100);
      REQUIRE(r.finite());
      if (std::string(y).size() == 2) {
        CHECK(r.orbit().graph.num_vertices() <= 3);
      }
    }
    auto al = corpus_machine("aleshin");
    auto r  = periodic_orbit(al, PeriodicPoint::canonical({}, parse_word(al, "a")),
                             10000);
    CHECK_FALSE(r.finite());
    auto bc = dual(bi_cayley_machine(zn_group(2)));
    auto f  = periodic_orbit(bc, PeriodicPoint::canonical({}, parse_word(bc, "1 1")),
                             1000);
    REQUIRE(f.finite());
    auto rel = extract_relation(bc, f);
    CHECK(is_identity(bc, rel));
    CHECK(primitive_root(rel) == parse_word(bc, "1"));
  }

  TEST_CASE("identity-acting state gives a verified relation") {
    auto m = identity_machine(1);
    auto r = periodic_orbit(m, PeriodicPoint::canonical({}, {{0, false}}), 10);
    REQUIRE(r.finite());
    CHECK(r.orbit().graph.num_vertices() == 1);
    auto rel = extract_relation(m, r);
    CHECK(is_identity(m, rel));
  }

  TEST_CASE("periodic point canonical form") {
    GroupWord a{{0, false}}, b{{1, false}};
    auto      ab = a;
    ab.push_back(b[0]);
    auto ba = b;
    ba.push_back(a[0]);
    // b (a b)^w = (b a)^w.
    auto p = PeriodicPoint::canonical(b, ab);
    CHECK(p.preperiod.empty());
    CHECK(p.period == ba);
    auto q = PeriodicPoint::canonical({}, repeat(ab, 3));
    CHECK(q.period == ab);
    auto r = PeriodicPoint::canonical(repeat(ab, 2), ab);
    CHECK(r.preperiod.empty());
    CHECK(r.period == ab);
  }

  TEST_CASE("essential triviality") {
    std::vector<std::string> names{"p", "q"};
    auto pt = [&](std::string_view x, std::string_view y) {
      return PeriodicPoint::canonical(parse_word(names, x), parse_word(names, y));
    };
    CHECK(essentially_trivial(pt("p", "q q^-1")));
    CHECK(essentially_trivial(pt("", "q q^-1")));
    CHECK_FALSE(essentially_trivial(pt("", "q")));
    CHECK_FALSE(essentially_trivial(pt("q", "p q p^-1 q^-1")));
  }

  TEST_CASE("transition group exponent") {
    // Enriched dual of Grigorchuk: letters 0,1 permuted by a and fixed by
    // the others, so the exponent is 2.
    CHECK(transition_group_exponent(corpus_machine("grigorchuk")) == 2);
    CHECK(transition_group_exponent(identity_machine(2)) == 1);
  }

  TEST_CASE("growth chi") {
    auto id = growth_chi(identity_machine(2), 5, 1000);
    for (auto const& l : id.levels) {
      CHECK(l.chi == 1);
    }
    CHECK(growth_chi(identity_machine(2), 0, 10).levels.empty());
    auto al = growth_chi(corpus_machine("aleshin"), 6, 1000000);
    REQUIRE(al.levels.size() == 6);
    for (std::size_t i = 1; i < al.levels.size(); ++i) {
      CHECK(*al.levels[i].chi > *al.levels[i - 1].chi);
    }
    CHECK(al.monotone);
    auto signed_al = growth_chi(corpus_machine("aleshin"), 4, 1000000,
                                {true, 1});
    CHECK(signed_al.monotone);
    auto starved = growth_chi(corpus_machine("aleshin"), 6, 20);
    CHECK_FALSE(starved.levels.back().chi.has_value());
  }

  TEST_CASE("growth chi matches a naive orbit computation") {
    auto g = corpus_machine("grigorchuk");
    auto r = growth_chi(g, 3, 1000000);
    for (auto const& level : r.levels) {
      std::size_t best = SIZE_MAX;
      for (auto const& w : oracle::reduced_words(g.num_states(), level.n, true)) {
        std::set<GroupWord> seen{w};
        std::vector<GroupWord> stack{w};
        while (!stack.empty()) {
          auto u = stack.back();
          stack.pop_back();
          for (letter_t a = 0; a < g.num_letters(); ++a) {
            auto s = act(g, u, LetterWord{a}).section;
            if (seen.insert(s).second) {
              stack.push_back(s);
            }
          }
        }
        best = std::min(best, seen.size());
      }
      CHECK(level.chi == best);
    }
  }

  TEST_CASE("find_relations") {
    auto g   = corpus_machine("grigorchuk");
    auto rel = find_relations(g, 3);
    std::set<std::string> found;
    for (auto const& w : rel.relations) {
      found.insert(format_word(g, w));
      CHECK(is_identity(g, w));
    }
    for (auto w : {"a a", "b b", "c c", "d d", "b c d"}) {
      CHECK(found.contains(w));
    }
    CHECK(find_relations(corpus_machine("aleshin"), 6).relations.empty());
    CHECK_THROWS_AS(find_relations(cayley_machine(zn_group(3)), 2), Error);
  }

  TEST_CASE("find_relations threads give the same output") {
    auto g = corpus_machine("grigorchuk");
    auto one  = find_relations(g, 4, {false, false, 1});
    auto four = find_relations(g, 4, {false, false, 4});
    CHECK(one.relations == four.relations);
    auto d     = dual(cayley_machine(zn_group(3)));
    auto pone  = find_relations(d, 4, {true, true, 1});
    auto pfour = find_relations(d, 4, {true, true, 3});
    CHECK(pone.pairs == pfour.pairs);
  }

  TEST_CASE("positive pairs on the adding machine dual") {
    // a·0 = e and a·1 = a; the dual's states 0,1 satisfy relations.
    auto d = dual(corpus_machine("adding"));
    auto r = find_relations(d, 3, {true, true, 1});
    for (auto const& [u, v] : r.pairs) {
      CHECK(same_action(d, u, v));
      CHECK(oracle::same_up_to(d, u, v, 6));
    }
  }

  TEST_CASE("level transitivity") {
    auto a = level_transitive(dual(corpus_machine("adding")), 6);
    REQUIRE(a.size() == 6);
    for (auto const& l : a) {
      CHECK(l.connected);
    }
    auto e = level_transitive(identity_machine(2), 3);
    for (auto const& l : e) {
      CHECK_FALSE(l.transitive);
      CHECK_FALSE(l.connected);
    }
    auto one = level_transitive(identity_machine(1), 3);
    for (auto const& l : one) {
      CHECK(l.transitive);
    }
    CHECK(level_transitive(identity_machine(2), 0).empty());
  }

  TEST_CASE("level quotient Cayley graphs") {
    CHECK(level_quotient_cayley(corpus_machine("grigorchuk"), 1, 100).num_vertices()
          == 2);
    CHECK(level_quotient_cayley(sink_machine({"0", "1"}), 3, 100).num_vertices()
          == 1);
    CHECK(level_quotient_cayley(corpus_machine("adding"), 3, 100).num_vertices()
          == 8);
    CHECK_THROWS_AS(level_quotient_cayley(corpus_machine("aleshin"), 6, 10),
                    Error);
  }

  TEST_CASE("g_regular") {
    auto a = corpus_machine("adding");
    auto r = g_regular(a, parse_word(a, "a"), 2);
    REQUIRE(r.has_value());
    CHECK(format_letters(a, *r) == "0");
    // q never reaches the sink.
    auto m = parse_machine(R"(mealy v1
states: q e
alphabet: 0 1
q 0 -> q 1
q 1 -> q 0
e 0 -> e 0
e 1 -> e 1
)");
    for (std::size_t bound : {1, 4, 8}) {
      CHECK_FALSE(g_regular(m, parse_word(m, "q"), bound).has_value());
    }
    CHECK_THROWS_AS(g_regular(corpus_machine("aleshin"), agt::GroupWord{{0, false}}, 3), Error);
  }

  TEST_CASE("fragile words") {
    auto a = corpus_machine("adding");
    auto t = is_fragile(a, parse_word(a, "a e a^-1"));
    CHECK(t.trivial_input);
    CHECK_FALSE(t.letter.has_value());
    // a·0 = e, so the word a e is fragile at 0.
    auto f = is_fragile(a, parse_word(a, "a e"));
    REQUIRE(f.letter.has_value());
    CHECK(a.alphabet()[*f.letter] == "0");
    CHECK_THROWS_AS(is_fragile(corpus_machine("aleshin"), {{0, false}}), Error);
  }
}
