#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "agt/cli.hpp"

namespace {
  struct Run {
    int         status;
    std::string out, err;
  };

  Run run(std::vector<std::string> args, std::string const& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int status = agt::cli::run(args, in, out, err);
    return {status, out.str(), err.str()};
  }

  bool contains_line(std::string const& text, std::string const& line) {
    std::istringstream lines(text);
    for (std::string l; std::getline(lines, l);) {
      if (l == line) {
        return true;
      }
    }
    return false;
  }
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("is-identity on the bundled Grigorchuk machine") {
    auto r = run({"is-identity", "corpus:grigorchuk", "-w", "a a"});
    CHECK(r.status == 0);
    CHECK(r.out == "true\n");
  }

  TEST_CASE("budget exhaustion has its own exit status") {
    auto r = run({"periodic-orbit", "corpus:aleshin", "-y", "a", "--budget", "1000"});
    CHECK(r.status == 2);
    CHECK(r.out == "budget exhausted after 1000 vertices\n");
  }

  TEST_CASE("piping a Cayley machine into dual") {
    auto made = run({"make", "cayley", "--zn", "3"});
    REQUIRE(made.status == 0);
    auto d = run({"dual", "-"}, made.out);
    CHECK(d.status == 0);
    CHECK(contains_line(d.out, "1 2 -> 0 0"));
  }

  TEST_CASE("stdin equals a file argument") {
    auto text  = run({"corpus", "get", "aleshin"}).out;
    auto piped = run({"enriched-dual", "-"}, text);
    auto named = run({"enriched-dual", "corpus:aleshin"});
    CHECK(piped.out == named.out);
    CHECK(piped.status == 0);
  }

  TEST_CASE("usage errors print the synopsis") {
    auto r = run({"order", "corpus:grigorchuk"});
    CHECK(r.status == 1);
    CHECK(r.err.find("Usage:") != std::string::npos);
    CHECK(r.err.find("--word") != std::string::npos);
    auto none = run({});
    CHECK(none.status == 1);
  }

  TEST_CASE("library errors exit with status 1") {
    auto r = run({"inverse", "corpus:cayley-z3"});
    CHECK(r.status == 1);
    CHECK(r.err.find("not_invertible") != std::string::npos);
    auto missing = run({"classify", "/nonexistent/file"});
    CHECK(missing.status == 1);
  }

  TEST_CASE("json output parses and has a fixed field order") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"classify", "corpus:aleshin", "--json"},
             {"--json", "relations", "corpus:grigorchuk", "--max-len", "2"},
             {"schreier", "corpus:adding", "--level", "2", "-v", "0 0", "--json"},
             {"chi", "corpus:aleshin", "--max-n", "3", "--json"},
             {"commutators", "--gens", "2", "--json"},
             {"corpus", "list", "--json"}}) {
      auto first  = run(args);
      auto second = run(args);
      CHECK(first.status == 0);
      CHECK(first.out == second.out);
      auto j = nlohmann::ordered_json::parse(first.out);
      CHECK(j.begin().key() == "command");
      CHECK(j.dump() + "\n" == first.out);
    }
  }

  TEST_CASE("orbit graphs in DOT and TSV") {
    auto dot = run({"schreier", "corpus:adding", "--level", "2", "-v", "0 0", "--dot"});
    CHECK(dot.out.find("peripheries=2") != std::string::npos);
    CHECK(dot.out.find("label=\"a\"") != std::string::npos);
    auto tsv = run({"schreier", "corpus:adding", "--level", "1", "-v", "0", "--tsv"});
    CHECK(tsv.out.starts_with("src\tlabel\tdst\n"));
    auto both = run({"schreier", "corpus:adding", "--level", "1", "-v", "0",
                     "--tsv", "--dot"});
    CHECK(both.status == 1);
  }

  TEST_CASE("order and g-regular report exhaustion") {
    CHECK(run({"order", "corpus:grigorchuk", "-w", "a b"}).out == "16\n");
    auto r = run({"order", "corpus:adding", "-w", "a", "--bound", "8"});
    CHECK(r.status == 2);
    CHECK(run({"g-regular", "corpus:adding", "-w", "a", "--bound", "2"}).out
          == "regular 0\n");
  }

  TEST_CASE("make sq prints S_Q and its dual") {
    auto d = run({"make", "sq", "--states", "q1 q2", "--dual"});
    CHECK(contains_line(d.out, "q1 q1 -> q1 e"));
    CHECK(contains_line(d.out, "q2 q1 -> q2 q1"));
    auto s = run({"make", "sq", "--states", "q1,q2"});
    CHECK(run({"dual", "-"}, s.out).out == d.out);
  }

  TEST_CASE("strongly fragile words and search") {
    CHECK(run({"strongly-fragile", "-w", "a b a^-1 b^-1"}).out == "true\n");
    CHECK(run({"strongly-fragile", "-w", "a b"}).out == "false\n");
    auto s = run({"strongly-fragile", "--search", "--gens", "2", "--max-len", "4"});
    CHECK(s.status == 0);
    CHECK(s.out.starts_with("# shortest length 4\n"));
  }

  TEST_CASE("union reports renamed states") {
    auto r = run({"union", "corpus:adding", "corpus:adding"});
    CHECK(r.out.starts_with("# renamed a -> a_0\n# renamed e -> e_0\nmealy v1\n"));
  }

  TEST_CASE("help exits cleanly") {
    auto r = run({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("periodic-orbit") != std::string::npos);
  }
}
