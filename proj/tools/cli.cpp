#include "agt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "agt/algebra.hpp"
#include "agt/constructions.hpp"
#include "agt/corpus.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "agt/machine.hpp"
#include "agt/words.hpp"

namespace agt::cli {

  namespace {
    using json = nlohmann::ordered_json;

    enum class GraphFormat { summary, dot, tsv };

    struct Context {
      std::istream& in;
      std::ostream& out;
      bool          as_json    = false;
      bool          stdin_used = false;

      std::string read_source(std::string const& source) {
        if (source == "-") {
          if (stdin_used) {
            throw Error(ErrorCode::invalid_argument,
                        "standard input can only be read once");
          }
          stdin_used = true;
          std::ostringstream buffer;
          buffer << in.rdbuf();
          return buffer.str();
        }
        if (source.starts_with("corpus:")) {
          return std::string(corpus_entry(source.substr(7)).text);
        }
        std::ifstream file(source, std::ios::binary);
        if (!file) {
          throw Error(ErrorCode::invalid_argument,
                      "cannot read '" + source + "'");
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        return buffer.str();
      }

      Mealy machine(std::string const& source) {
        return parse_machine(read_source(source));
      }

      FiniteGroupTable group(std::string const& source) {
        return group_from_table(read_source(source));
      }

      void emit(json const& j) {
        out << j.dump() << '\n';
      }
    };

    // Splits on spaces and commas.
    std::vector<std::string> split_list(std::string const& text) {
      std::vector<std::string> items;
      std::string              current;
      for (char c : text) {
        if (c == ' ' || c == ',' || c == '\t') {
          if (!current.empty()) {
            items.push_back(std::move(current));
            current.clear();
          }
        } else {
          current += c;
        }
      }
      if (!current.empty()) {
        items.push_back(std::move(current));
      }
      return items;
    }

    json graph_json(LabeledGraph const& g) {
      json edges = json::array();
      for (auto const& e : g.edges()) {
        edges.push_back(json::array({e.src, g.labels()[e.label], e.dst}));
      }
      return json{{"vertices", g.vertices()},
                  {"root", g.root()},
                  {"edges", std::move(edges)}};
    }

    void print_graph(Context&            ctx,
                     std::string const&  command,
                     LabeledGraph const& g,
                     GraphFormat         format) {
      if (ctx.as_json) {
        ctx.emit({{"command", command},
                  {"outcome", "finite"},
                  {"vertices", g.num_vertices()},
                  {"edges", g.edges().size()},
                  {"graph", graph_json(g)}});
      } else if (format == GraphFormat::dot) {
        ctx.out << to_dot(g);
      } else if (format == GraphFormat::tsv) {
        ctx.out << to_tsv(g);
      } else {
        ctx.out << "finite: " << g.num_vertices() << " vertices, "
                << g.edges().size() << " edges\n";
      }
    }

    int print_orbit(Context&           ctx,
                    std::string const& command,
                    OrbitResult const& r,
                    GraphFormat        format) {
      if (r.finite()) {
        print_graph(ctx, command, r.orbit().graph, format);
        return exit_ok;
      }
      auto visited = std::get<ExceededBound>(r.outcome).visited;
      if (ctx.as_json) {
        ctx.emit({{"command", command},
                  {"outcome", "exceeded_bound"},
                  {"visited", visited}});
      } else {
        ctx.out << "budget exhausted after " << visited << " vertices\n";
      }
      return exit_exhausted;
    }

    int print_machine(Context& ctx, std::string const& command, Mealy const& m) {
      if (ctx.as_json) {
        ctx.emit({{"command", command}, {"machine", serialize(m)}});
      } else {
        ctx.out << serialize(m);
      }
      return exit_ok;
    }

    int print_bool(Context& ctx, std::string const& command, bool value) {
      if (ctx.as_json) {
        ctx.emit({{"command", command}, {"result", value}});
      } else {
        ctx.out << (value ? "true" : "false") << '\n';
      }
      return exit_ok;
    }

    std::vector<std::string> signed_names(std::vector<std::string> names) {
      std::size_t const n = names.size();
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back(names[i] + "^-1");
      }
      return names;
    }

    // Generator names for commutator words: a count or an explicit list.
    std::vector<std::string> generator_names(std::string const& text) {
      if (!text.empty()
          && std::all_of(text.begin(), text.end(), [](char c) {
               return c >= '0' && c <= '9';
             })) {
        std::size_t const        m = std::stoul(text);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < m; ++i) {
          names.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i))
                                  : "g" + std::to_string(i + 1));
        }
        return names;
      }
      return split_list(text);
    }

    // Names in order of first appearance, with `^-1` suffixes stripped.
    std::vector<std::string> names_in(std::string const& text) {
      std::vector<std::string> names;
      for (auto tok : split_list(text)) {
        if (tok.ends_with("^-1")) {
          tok.resize(tok.size() - 3);
        }
        if (std::find(names.begin(), names.end(), tok) == names.end()) {
          names.push_back(tok);
        }
      }
      return names;
    }

    struct GraphFlags {
      bool dot = false;
      bool tsv = false;

      void add(CLI::App* sc) {
        auto* d = sc->add_flag("--dot", dot, "Print the graph in DOT");
        auto* t = sc->add_flag("--tsv", tsv, "Print the edge list as TSV");
        d->excludes(t);
      }

      GraphFormat format() const {
        return dot ? GraphFormat::dot
                   : (tsv ? GraphFormat::tsv : GraphFormat::summary);
      }
    };

    // Option storage shared by all subcommands; only the selected one runs.
    struct Options {
      std::string machine, machine2, word, input, vertex, preperiod, period;
      std::string gens, subset, alphabet, states, group, prefix, name;
      std::size_t k = 1, level = 1, max_n = 6, max_k = 4, threads = 1, zn = 0;
      std::size_t power_budget = default_state_budget, orbit_budget = 10000;
      std::size_t chi_budget = 1000000, level_budget = 1000000;
      std::size_t quotient_budget = 100000;
      std::size_t order_bound = 64, prefix_bound = 8;
      std::size_t relation_len = 4, search_len = 10;
      int         exponent_bound = 1;
      bool        signed_gens = false, signed_inputs = false;
      bool        positive = false, pairs = false, search = false;
      bool        sorted = false, boundary_dual = false;
      GraphFlags  graph;
    };
  }  // namespace

  int run(std::vector<std::string> const& args,
          std::istream&                   in,
          std::ostream&                   out,
          std::ostream&                   err) {
    Context ctx{in, out};
    Options o;
    CLI::App app{"Experiments with automaton groups given by Mealy machines",
                 "agt"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", ctx.as_json, "One JSON object per line");

    std::function<int()> action;
    auto command = [&](std::string const& name,
                       std::string const& help,
                       std::function<int()> f) {
      auto* sc = app.add_subcommand(name, help);
      sc->callback([&action, f] { action = f; });
      return sc;
    };
    auto machine_arg = [&](CLI::App* sc) {
      sc->add_option("machine", o.machine,
                     "Machine file, '-' for stdin, or corpus:<name>")
          ->required();
    };

    // Machine algebra.
    machine_arg(command("classify", "Invertibility, reversibility and sinks",
                        [&] {
      auto m     = ctx.machine(o.machine);
      auto flags = classify(m);
      std::vector<std::string> sinks;
      for (auto e : flags.sink_states) {
        sinks.push_back(m.states()[e]);
      }
      if (ctx.as_json) {
        ctx.emit({{"command", "classify"},
                  {"invertible", flags.invertible},
                  {"reversible", flags.reversible},
                  {"output_reversible", flags.output_reversible},
                  {"bireversible", flags.bireversible},
                  {"sink_states", sinks},
                  {"sink_accessible_from_all",
                   flags.sink_accessible_from_all}});
        return exit_ok;
      }
      auto b = [](bool x) { return x ? "true" : "false"; };
      out << "invertible: " << b(flags.invertible) << '\n'
          << "reversible: " << b(flags.reversible) << '\n'
          << "output_reversible: " << b(flags.output_reversible) << '\n'
          << "bireversible: " << b(flags.bireversible) << '\n'
          << "sink_states:";
      for (auto const& s : sinks) {
        out << ' ' << s;
      }
      out << "\nsink_accessible_from_all: "
          << b(flags.sink_accessible_from_all) << '\n';
      return exit_ok;
    }));

    using Unary = Mealy (*)(Mealy const&);
    for (auto [name, f, help] :
         std::initializer_list<std::tuple<char const*, Unary, char const*>>{
             {"dual", &dual, "Swap the roles of states and letters"},
             {"inverse", &inverse, "Inverse machine"},
             {"enrich", &enrich, "Add inverse letters"},
             {"enriched-dual", &enriched_dual, "Dual over Q and Q^-1"},
             {"reduce-machine", &reduction, "Collapse trivial states to a sink"}}) {
      std::string const command_name = name;
      machine_arg(command(name, help, [&, command_name, f] {
        return print_machine(ctx, command_name, f(ctx.machine(o.machine)));
      }));
    }

    {
      auto* sc = command("product", "Composition: m1 acts first", [&] {
        auto m1 = ctx.machine(o.machine);
        auto m2 = ctx.machine(o.machine2);
        return print_machine(ctx, "product", product(m1, m2));
      });
      machine_arg(sc);
      sc->add_option("machine2", o.machine2, "Second machine")->required();
    }
    {
      auto* sc = command("union", "Disjoint union", [&] {
        auto m1 = ctx.machine(o.machine);
        auto m2 = ctx.machine(o.machine2);
        auto r  = disjoint_union_detailed(m1, m2);
        if (ctx.as_json) {
          json renamed = json::array();
          for (auto const& [from, to] : r.renamed) {
            renamed.push_back(json::array({from, to}));
          }
          ctx.emit({{"command", "union"},
                    {"machine", serialize(r.machine)},
                    {"renamed", std::move(renamed)}});
          return exit_ok;
        }
        for (auto const& [from, to] : r.renamed) {
          out << "# renamed " << from << " -> " << to << '\n';
        }
        out << serialize(r.machine);
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("machine2", o.machine2, "Second machine")->required();
    }
    {
      auto* sc = command("power", "k-fold product", [&] {
        return print_machine(
            ctx, "power", power(ctx.machine(o.machine), o.k, o.power_budget));
      });
      machine_arg(sc);
      sc->add_option("-k", o.k, "Exponent")->required()->check(
          CLI::PositiveNumber);
      sc->add_option("--budget", o.power_budget, "Maximum number of states")
          ->capture_default_str();
    }

    // Word problem.
    {
      auto* sc = command("act", "Apply a state word to an input word", [&] {
        auto m = ctx.machine(o.machine);
        auto r = act(m, parse_word(m, o.word), parse_letters(m, o.input));
        if (ctx.as_json) {
          ctx.emit({{"command", "act"},
                    {"output", format_letters(m, r.output)},
                    {"section", format_word(m, r.section)}});
        } else {
          out << "output: " << format_letters(m, r.output) << '\n'
              << "section: " << format_word(m, r.section) << '\n';
        }
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("-w,--word", o.word, "State word; rightmost acts first")
          ->required();
      sc->add_option("-i,--input", o.input, "Input letters")->required();
    }
    {
      auto* sc = command("is-identity", "Decide whether a word acts trivially",
                         [&] {
        auto m = ctx.machine(o.machine);
        return print_bool(ctx, "is-identity",
                          is_identity(m, parse_word(m, o.word)));
      });
      machine_arg(sc);
      sc->add_option("-w,--word", o.word, "State word")->required();
    }
    {
      auto* sc = command("order", "Order of a word up to a bound", [&] {
        auto m = ctx.machine(o.machine);
        auto n = order_of(m, parse_word(m, o.word), o.order_bound);
        if (ctx.as_json) {
          json j{{"command", "order"}};
          if (n) {
            j["outcome"] = "finite";
            j["order"]   = *n;
          } else {
            j["outcome"] = "exceeds_bound";
            j["bound"]   = o.order_bound;
          }
          ctx.emit(j);
        } else if (n) {
          out << *n << '\n';
        } else {
          out << "exceeds bound " << o.order_bound << '\n';
        }
        return n ? exit_ok : exit_exhausted;
      });
      machine_arg(sc);
      sc->add_option("-w,--word", o.word, "State word")->required();
      sc->add_option("--bound", o.order_bound, "Largest order tried")
          ->capture_default_str();
    }
    {
      auto* sc = command("g-regular", "Search for an input sending w to the sink",
                         [&] {
        auto m = ctx.machine(o.machine);
        auto u = g_regular(m, parse_word(m, o.word), o.prefix_bound);
        if (ctx.as_json) {
          json j{{"command", "g-regular"}};
          j["outcome"] = u ? "regular" : "undetermined";
          if (u) {
            j["witness"] = format_letters(m, *u);
          }
          ctx.emit(j);
        } else if (u) {
          out << "regular";
          if (!u->empty()) {
            out << ' ' << format_letters(m, *u);
          }
          out << '\n';
        } else {
          out << "undetermined\n";
        }
        return u ? exit_ok : exit_exhausted;
      });
      machine_arg(sc);
      sc->add_option("-w,--word", o.word, "State word")->required();
      sc->add_option("--bound", o.prefix_bound, "Longest input prefix tried")
          ->capture_default_str();
    }

    // Orbits.
    {
      auto* sc = command("orbit", "Orbital graph of an input word", [&] {
        auto m = ctx.machine(o.machine);
        auto r = orbit_of_word(m, parse_letters(m, o.vertex), o.orbit_budget,
                               o.signed_gens);
        return print_orbit(ctx, "orbit", r, o.graph.format());
      });
      machine_arg(sc);
      sc->add_option("-v,--vertex", o.vertex, "Root input word")->required();
      sc->add_option("--budget", o.orbit_budget, "Maximum number of vertices")
          ->capture_default_str();
      sc->add_flag("--signed", o.signed_gens, "Also act by inverse states");
      o.graph.add(sc);
    }
    {
      auto* sc = command("schreier", "Schreier graph on a level", [&] {
        auto m = ctx.machine(o.machine);
        print_graph(ctx, "schreier",
                    schreier_level(m, o.level, parse_letters(m, o.vertex)),
                    o.graph.format());
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("--level", o.level, "Level k")->required();
      sc->add_option("-v,--vertex", o.vertex, "Root word of length k")
          ->required();
      o.graph.add(sc);
    }
    auto point_args = [&](CLI::App* sc) {
      sc->add_option("-x,--preperiod", o.preperiod, "Preperiod over Q and Q^-1");
      sc->add_option("-y,--period", o.period, "Period over Q and Q^-1")
          ->required();
    };
    auto point = [&](Mealy const& m) {
      return PeriodicPoint::canonical(parse_word(m, o.preperiod),
                                      parse_word(m, o.period));
    };
    {
      auto* sc = command("periodic-orbit",
                         "Orbit of x y^w under the enriched dual", [&] {
        auto m = ctx.machine(o.machine);
        return print_orbit(ctx, "periodic-orbit",
                           periodic_orbit(m, point(m), o.orbit_budget),
                           o.graph.format());
      });
      machine_arg(sc);
      point_args(sc);
      sc->add_option("--budget", o.orbit_budget, "Maximum number of vertices")
          ->capture_default_str();
      o.graph.add(sc);
    }
    {
      auto* sc = command("extract-relation",
                         "Relation read off a finite periodic orbit", [&] {
        auto m = ctx.machine(o.machine);
        auto r = periodic_orbit(m, point(m), o.orbit_budget);
        if (!r.finite()) {
          return print_orbit(ctx, "extract-relation", r, GraphFormat::summary);
        }
        auto w = extract_relation(m, r);
        if (ctx.as_json) {
          ctx.emit({{"command", "extract-relation"},
                    {"relation", format_word(m, w)},
                    {"length", w.size()}});
        } else {
          out << format_word(m, w) << '\n';
        }
        return exit_ok;
      });
      machine_arg(sc);
      point_args(sc);
      sc->add_option("--budget", o.orbit_budget, "Maximum number of vertices")
          ->capture_default_str();
    }
    {
      auto* sc = command("ess-trivial", "Is x y^w essentially trivial", [&] {
        auto m = ctx.machine(o.machine);
        return print_bool(ctx, "ess-trivial", essentially_trivial(point(m)));
      });
      machine_arg(sc);
      point_args(sc);
    }
    {
      auto* sc = command("chi", "Growth function of minimal orbit sizes", [&] {
        auto m = ctx.machine(o.machine);
        auto r = growth_chi(m, o.max_n, o.chi_budget,
                            {o.signed_inputs, std::max<std::size_t>(o.threads, 1)});
        bool complete = std::all_of(r.levels.begin(), r.levels.end(),
                                    [](auto const& l) { return l.chi.has_value(); });
        if (ctx.as_json) {
          json levels = json::array();
          for (auto const& l : r.levels) {
            levels.push_back({{"n", l.n},
                              {"chi", l.chi ? json(*l.chi) : json(nullptr)},
                              {"explored", l.explored}});
          }
          json window = nullptr;
          if (r.constant_window) {
            window = json::array(
                {r.constant_window->first, r.constant_window->second});
          }
          ctx.emit({{"command", "chi"},
                    {"levels", std::move(levels)},
                    {"constant_window", std::move(window)},
                    {"monotone", r.monotone}});
        } else {
          out << "n\tchi\texplored\n";
          for (auto const& l : r.levels) {
            out << l.n << '\t' << (l.chi ? std::to_string(*l.chi) : "-") << '\t'
                << l.explored << '\n';
          }
          if (r.constant_window) {
            out << "# constant window: " << r.constant_window->first << ".."
                << r.constant_window->second << '\n';
          }
          out << "# monotone: " << (r.monotone ? "true" : "false") << '\n';
        }
        return complete ? exit_ok : exit_exhausted;
      });
      machine_arg(sc);
      sc->add_option("--max-n", o.max_n, "Largest word length")->capture_default_str();
      sc->add_option("--budget", o.chi_budget, "Words explored per level")
          ->capture_default_str();
      sc->add_flag("--signed-inputs", o.signed_inputs,
                   "Orbits under A and A^-1");
      sc->add_option("--threads", o.threads, "Worker threads")
          ->capture_default_str();
    }
    {
      auto* sc = command("relations", "Bounded search for relations", [&] {
        auto m = ctx.machine(o.machine);
        auto r = find_relations(
            m, o.relation_len,
            {o.positive, o.pairs, std::max<std::size_t>(o.threads, 1)});
        if (ctx.as_json) {
          json rels = json::array(), pairs = json::array();
          for (auto const& w : r.relations) {
            rels.push_back(format_word(m, w));
          }
          for (auto const& [u, v] : r.pairs) {
            pairs.push_back(json::array({format_word(m, u), format_word(m, v)}));
          }
          json j{{"command", "relations"}, {"relations", std::move(rels)}};
          if (o.pairs) {
            j["pairs"] = std::move(pairs);
          }
          ctx.emit(j);
          return exit_ok;
        }
        for (auto const& w : r.relations) {
          out << format_word(m, w) << '\n';
        }
        for (auto const& [u, v] : r.pairs) {
          out << format_word(m, u) << " = " << format_word(m, v) << '\n';
        }
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("--max-len", o.relation_len, "Longest word")
          ->capture_default_str();
      sc->add_flag("--positive", o.positive, "Only words over Q");
      sc->add_flag("--pairs", o.pairs, "Also report equal pairs u = v");
      sc->add_option("--threads", o.threads, "Worker threads")
          ->capture_default_str();
    }
    {
      auto* sc = command("level-transitive", "Transitivity on levels 1..k", [&] {
        auto m = ctx.machine(o.machine);
        auto r = level_transitive(m, o.max_k, o.level_budget);
        if (ctx.as_json) {
          json levels = json::array();
          for (auto const& l : r) {
            levels.push_back({{"k", l.k},
                              {"transitive", l.transitive},
                              {"connected", l.connected}});
          }
          ctx.emit({{"command", "level-transitive"}, {"levels", levels}});
          return exit_ok;
        }
        out << "k\ttransitive\tconnected\n";
        for (auto const& l : r) {
          out << l.k << '\t' << (l.transitive ? "true" : "false") << '\t'
              << (l.connected ? "true" : "false") << '\n';
        }
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("--max-k", o.max_k, "Deepest level")->capture_default_str();
      sc->add_option("--budget", o.level_budget, "Maximum words per level")
          ->capture_default_str();
    }
    {
      auto* sc = command("quotient-cayley", "Cayley graph of a level quotient",
                         [&] {
        auto m = ctx.machine(o.machine);
        print_graph(ctx, "quotient-cayley",
                    level_quotient_cayley(m, o.level, o.quotient_budget),
                    o.graph.format());
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("--level", o.level, "Level k")->required();
      sc->add_option("--budget", o.quotient_budget, "Maximum number of elements")
          ->capture_default_str();
      o.graph.add(sc);
    }

    // Fragility and commutator words.
    {
      auto* sc = command("fragile", "Letter making w trivial after one step",
                         [&] {
        auto m = ctx.machine(o.machine);
        auto r = is_fragile(m, parse_word(m, o.word));
        if (ctx.as_json) {
          json j{{"command", "fragile"},
                 {"fragile", r.letter.has_value()},
                 {"trivial_input", r.trivial_input}};
          if (r.letter) {
            j["letter"] = m.alphabet()[*r.letter];
          }
          ctx.emit(j);
        } else if (r.trivial_input) {
          out << "trivial\n";
        } else if (r.letter) {
          out << "fragile " << m.alphabet()[*r.letter] << '\n';
        } else {
          out << "not fragile\n";
        }
        return exit_ok;
      });
      machine_arg(sc);
      sc->add_option("-w,--word", o.word, "State word")->required();
    }
    {
      auto* sc = command("strongly-fragile",
                         "Trivial after erasing any generator", [&] {
        if (o.search) {
          auto names = generator_names(o.gens);
          auto r     = shortest_strongly_fragile(names.size(), o.search_len);
          auto all   = signed_names(names);
          if (ctx.as_json) {
            json words = json::array();
            for (auto const& w : r.words) {
              words.push_back(format_word(all, w));
            }
            ctx.emit({{"command", "strongly-fragile"},
                      {"shortest", r.shortest == 0 ? json(nullptr)
                                                   : json(r.shortest)},
                      {"words", std::move(words)},
                      {"examined", r.examined}});
          } else if (r.shortest == 0) {
            out << "none up to length " << o.search_len << '\n';
          } else {
            out << "# shortest length " << r.shortest << '\n';
            for (auto const& w : r.words) {
              out << format_word(all, w) << '\n';
            }
          }
          return r.shortest == 0 ? exit_exhausted : exit_ok;
        }
        if (o.word.empty()) {
          throw Error(ErrorCode::invalid_argument, "-w or --search is required");
        }
        auto names = names_in(o.word);
        auto r     = is_strongly_fragile(parse_word(names, o.word));
        if (ctx.as_json) {
          ctx.emit({{"command", "strongly-fragile"},
                    {"strongly_fragile", r.strongly_fragile},
                    {"degenerate", r.degenerate}});
        } else {
          out << (r.strongly_fragile ? "true" : "false")
              << (r.degenerate ? " (degenerate)" : "") << '\n';
        }
        return exit_ok;
      });
      sc->add_option("-w,--word", o.word, "Word over any names");
      sc->add_flag("--search", o.search,
                   "Find the shortest strongly fragile words");
      sc->add_option("--gens", o.gens, "Generator count or names");
      sc->add_option("--max-len", o.search_len, "Longest word searched")
          ->capture_default_str();
    }
    {
      auto* sc = command("commutators", "Nested commutator words", [&] {
        auto names = generator_names(o.gens);
        if (names.size() < 2) {
          throw Error(ErrorCode::invalid_argument,
                      "commutator words need at least two generators");
        }
        CommutatorWords          gen(names.size(), o.exponent_bound);
        std::vector<std::string> words;
        auto                     all = signed_names(names);
        while (auto w = gen.next()) {
          words.push_back(format_word(all, *w));
        }
        if (o.sorted) {
          std::stable_sort(words.begin(), words.end(),
                           [](auto const& a, auto const& b) {
                             return split_list(a).size() < split_list(b).size();
                           });
        }
        if (ctx.as_json) {
          ctx.emit({{"command", "commutators"},
                    {"generators", names},
                    {"bound", o.exponent_bound},
                    {"words", words}});
        } else {
          for (auto const& w : words) {
            out << w << '\n';
          }
        }
        return exit_ok;
      });
      sc->add_option("--gens", o.gens, "Generator count or names")->required();
      sc->add_option("--bound", o.exponent_bound, "Largest |exponent|")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
      sc->add_flag("--sorted-by-length", o.sorted, "Shortest words first");
    }

    // Constructions.
    {
      auto* make = app.add_subcommand("make", "Build a machine");
      make->require_subcommand(1);
      auto* sink = make->add_subcommand("sink", "One identity sink");
      sink->add_option("--alphabet", o.alphabet, "Letters")->required();
      sink->callback([&] {
        action = [&] {
          return print_machine(ctx, "make", sink_machine(split_list(o.alphabet)));
        };
      });
      auto* sq = make->add_subcommand("sq", "S_Q; --dual prints its dual");
      sq->add_option("--states", o.states, "The set Q")->required();
      sq->add_flag("--dual", o.boundary_dual, "Print the all-loop dual");
      sq->callback([&] {
        action = [&] {
          auto q = split_list(o.states);
          return print_machine(ctx, "make",
                               o.boundary_dual ? s_q_dual(q) : s_q(q));
        };
      });
      for (bool bi : {false, true}) {
        auto* sc = make->add_subcommand(bi ? "bicayley" : "cayley",
                                        bi ? "Cayley machine with e -x|e-> x"
                                           : "0-transition Cayley machine");
        auto* zn = sc->add_option("--zn", o.zn, "Cyclic group Z_n")
                       ->check(CLI::PositiveNumber);
        auto* gr = sc->add_option("--group", o.group,
                                  "Group table file or corpus:<name>");
        zn->excludes(gr);
        sc->add_option("--state-prefix", o.prefix, "Prefix for state names");
        sc->callback([&, bi] {
          action = [&, bi] {
            if (o.zn == 0 && o.group.empty()) {
              throw CLI::RequiredError("--zn or --group");
            }
            auto g = o.zn != 0 ? zn_group(o.zn) : ctx.group(o.group);
            return print_machine(ctx, "make",
                                 bi ? bi_cayley_machine(g, o.prefix)
                                    : cayley_machine(g, o.prefix));
          };
        });
      }
      auto* es = make->add_subcommand("embed-sum", "Dual-embedding sum A_H");
      es->add_option("machine", o.machine, "Invertible machine")->required();
      es->add_option("--subset", o.subset, "States in H (default: all)");
      es->callback([&] {
        action = [&] {
          auto b = ctx.machine(o.machine);
          auto h = o.subset.empty() ? b.states() : split_list(o.subset);
          return print_machine(ctx, "make", dual_embed_sum(b, h));
        };
      });
    }
    {
      auto* corpus_cmd = app.add_subcommand("corpus", "Bundled machines");
      corpus_cmd->require_subcommand(1);
      auto* list = corpus_cmd->add_subcommand("list", "Names and kinds");
      list->callback([&] {
        action = [&] {
          if (ctx.as_json) {
            json entries = json::array();
            for (auto const& e : corpus()) {
              entries.push_back({{"name", e.name}, {"kind", e.kind}});
            }
            ctx.emit({{"command", "corpus"}, {"entries", entries}});
            return exit_ok;
          }
          for (auto const& e : corpus()) {
            out << e.name << '\t' << e.kind << '\n';
          }
          return exit_ok;
        };
      });
      auto* get = corpus_cmd->add_subcommand("get", "Print one entry");
      get->add_option("name", o.name, "Entry name")->required();
      get->callback([&] {
        action = [&] {
          auto const& e = corpus_entry(o.name);
          if (ctx.as_json) {
            ctx.emit({{"command", "corpus"},
                      {"name", e.name},
                      {"kind", e.kind},
                      {"text", e.text}});
          } else {
            out << e.text;
          }
          return exit_ok;
        };
      });
    }

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      auto subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.back()->help());
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      // Report against the innermost subcommand that was recognized.
      CLI::App* target = &app;
      while (!target->get_subcommands().empty()) {
        target = target->get_subcommands().back();
      }
      err << "agt: " << e.what() << "\n\n" << target->help();
      return exit_error;
    }

    try {
      if (!action) {
        err << app.help();
        return exit_error;
      }
      return action();
    } catch (CLI::RequiredError const& e) {
      err << "agt: " << e.what() << '\n';
      return exit_error;
    } catch (Error const& e) {
      err << "agt: " << to_string(e.code()) << ": " << e.what() << '\n';
      return e.code() == ErrorCode::budget_exceeded ? exit_exhausted
                                                    : exit_error;
    } catch (std::exception const& e) {
      err << "agt: " << e.what() << '\n';
      return exit_error;
    }
  }

}  // namespace agt::cli
