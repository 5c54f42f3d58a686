#include <random>

#include "doctest.h"

#include "agt/algebra.hpp"
#include "agt/constructions.hpp"
#include "agt/corpus.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "oracle.hpp"

using namespace agt;

namespace {
  // q -a|b-> p as four names.
  bool has_edge(Mealy const& m,
                std::string const& q,
                std::string const& a,
                std::string const& b,
                std::string const& p) {
    auto s = m.state_index(q);
    auto x = m.letter_index(a);
    return m.alphabet()[m.out(s, x)] == b && m.states()[m.next(s, x)] == p;
  }

  ErrorCode code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    return ErrorCode::syntax;
  }

  Mealy sink_on(std::vector<std::string> alphabet) {
    return sink_machine(alphabet);
  }
}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("dual of C(Z_3)") {
    auto d = dual(cayley_machine(zn_group(3)));
    CHECK(has_edge(d, "2", "2", "1", "2"));
    CHECK(has_edge(d, "1", "2", "0", "0"));
  }

  TEST_CASE("dual of a one-letter sink is itself") {
    auto e = sink_on({"a"});
    auto d = dual(e);
    CHECK(d.num_states() == 1);
    CHECK(d.num_letters() == 1);
    CHECK(d.next(0, 0) == 0);
    CHECK(d.out(0, 0) == 0);
  }

  TEST_CASE("dual is an involution") {
    for (auto const& name : corpus_machine_names()) {
      auto m = corpus_machine(name);
      CHECK(dual(dual(m)) == m);
    }
  }

  TEST_CASE("inverse") {
    auto inv = inverse(corpus_machine("adding"));
    CHECK(inv.states() == std::vector<std::string>{"a^-1", "e^-1"});
    CHECK(has_edge(inv, "a^-1", "1", "0", "e^-1"));
    CHECK(has_edge(inv, "a^-1", "0", "1", "a^-1"));
    auto e = inverse(sink_on({"0", "1"}));
    CHECK(e.states() == std::vector<std::string>{"e^-1"});
    CHECK(classify(e).sink_states.size() == 1);
    CHECK(code_of([] { inverse(cayley_machine(zn_group(3))); })
          == ErrorCode::not_invertible);
  }

  TEST_CASE("enrich") {
    auto d = enrich(dual(corpus_machine("aleshin")));
    CHECK(d.num_letters() == 6);
    auto c = enrich(cayley_machine(zn_group(3)));
    CHECK(has_edge(c, "1", "1^-1", "1^-1", "0"));
    CHECK(code_of([] { enrich(corpus_machine("adding")); })
          == ErrorCode::not_reversible);
  }

  TEST_CASE("enriched dual") {
    auto a = enriched_dual(corpus_machine("aleshin"));
    CHECK(a.states() == std::vector<std::string>{"0", "1"});
    CHECK(a.num_letters() == 6);
    auto e = enriched_dual(sink_on({"0"}));
    CHECK(e.num_states() == 1);
    CHECK(e.alphabet() == std::vector<std::string>{"e", "e^-1"});
    CHECK(e.out(0, 0) == 0);
    CHECK(e.out(0, 1) == 1);
    auto g = corpus_machine("grigorchuk");
    CHECK(enriched_dual(g) == dual(disjoint_union(g, inverse(g))));
    CHECK(enriched_dual(g) == enrich(dual(g)));
  }

  TEST_CASE("product with a sink renames states") {
    auto m = corpus_machine("aleshin");
    auto p = product(m, sink_on(m.alphabet()));
    CHECK(p.states() == std::vector<std::string>{"(a,e)", "(b,e)", "(c,e)"});
    CHECK(p.transition_table() == m.transition_table());
    CHECK(p.output_table() == m.output_table());
  }

  TEST_CASE("product of the adding machine with itself") {
    auto a = corpus_machine("adding");
    auto p = product(a, a);
    // λ1(a,1)=0 and λ2(a,0)=1, next (a, e).
    CHECK(has_edge(p, "(a,a)", "1", "1", "(a,e)"));
    CHECK(has_edge(p, "(a,a)", "0", "0", "(e,a)"));
    CHECK(power(a, 2) == p);
    CHECK(power(a, 1) == a);
  }

  TEST_CASE("product is associative after flattening") {
    auto g = corpus_machine("grigorchuk");
    auto left  = product(product(g, g), g);
    auto right = product(g, product(g, g));
    CHECK(left == right);
    CHECK(power(g, 3) == left);
  }

  TEST_CASE("alphabet mismatch") {
    auto a = corpus_machine("adding");
    auto c = cayley_machine(zn_group(3));
    CHECK(code_of([&] { product(a, c); }) == ErrorCode::alphabet_mismatch);
    CHECK(code_of([&] { disjoint_union(a, c); }) == ErrorCode::alphabet_mismatch);
  }

  TEST_CASE("power budget") {
    // 3^13 = 1594323 states.
    CHECK(code_of([] { power(corpus_machine("aleshin"), 13); })
          == ErrorCode::budget_exceeded);
  }

  TEST_CASE("disjoint union") {
    auto g = corpus_machine("grigorchuk");
    auto r = disjoint_union_detailed(g, g);
    CHECK(r.machine.num_states() == 10);
    CHECK(r.renamed.size() == 5);
    CHECK(r.renamed[0] == std::pair<std::string, std::string>{"a", "a_0"});
  }

  TEST_CASE("reduction") {
    auto e = sink_on({"0", "1"});
    CHECK(reduction(e) == e);
    auto two = disjoint_union(e, e);
    auto r   = reduction(two);
    CHECK(r.states() == std::vector<std::string>{"e"});
    auto a = corpus_machine("adding");
    CHECK(reduction(a) == a);
    auto al = corpus_machine("aleshin");
    CHECK(reduction(al) == al);
  }

  TEST_CASE("reduction collapses every trivially acting state") {
    // u and v only lead to each other and copy inputs; p moves into them.
    auto m = parse_machine(R"(mealy v1
states: p u v
alphabet: 0 1
p 0 -> u 1
p 1 -> v 0
u 0 -> v 0
u 1 -> u 1
v 0 -> u 0
v 1 -> v 1
)");
    auto r = reduction(m);
    CHECK(r.states() == std::vector<std::string>{"p", "e"});
    CHECK(has_edge(r, "p", "0", "1", "e"));
    CHECK(has_edge(r, "p", "1", "0", "e"));
    CHECK(classify(r).sink_states.size() == 1);
  }

  TEST_CASE("reduction preserves the word problem on surviving states") {
    for (auto const& name : corpus_machine_names()) {
      auto m = corpus_machine(name);
      if (!classify(m).invertible) {
        continue;
      }
      auto r    = reduction(m);
      auto core = trivial_core(m);
      // Surviving states keep their names; map words by name.
      for (std::size_t len = 1; len <= 4; ++len) {
        for (auto const& w : oracle::reduced_words(m.num_states(), len, true)) {
          bool skip = false;
          for (auto s : w) {
            skip |= std::find(core.begin(), core.end(), s.base) != core.end();
          }
          if (skip) {
            continue;
          }
          auto text = format_word(m, w);
          CHECK_MESSAGE(is_identity(m, w) == is_identity(r, parse_word(r, text)),
                        name << ": " << text);
        }
      }
    }
  }
}
