#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rankduel/rankduel.hpp"

using namespace rankduel;

namespace {

// A descriptor such as path:5, or a path to a graph JSON file.
Graph load_graph(const std::string& arg) {
  if (std::filesystem::exists(arg)) return graph_from_json(read_json_file(arg));
  return parse_family(arg);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json maybe(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

struct GameArgs {
  std::string graph;
  std::string tokens;
  std::string variant = "mixed";
};

void add_game_args(CLI::App* cmd, GameArgs& a) {
  cmd->add_option("--graph", a.graph, "graph descriptor or JSON file")->required();
  cmd->add_option("--f", a.tokens, "tokens: K for all vertices, or K1,K2,... by vertex id");
  cmd->add_option("--variant", a.variant, "low, high or mixed");
}

GameState game_from(const GameArgs& a, const Graph& g) {
  if (a.tokens.empty()) throw std::invalid_argument("--f is required");
  return initial_state(g, parse_tokens(a.tokens, g), parse_variant(a.variant));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankduel: vertex rankings, list rankings and the Taxer/Ranker games"};
  app.require_subcommand(1);

  // rank
  auto* rank = app.add_subcommand("rank", "static ranking checks");
  rank->require_subcommand(1);
  std::string rank_graph, ranking_file, lists_file;
  int max_k = 4;
  auto* verify = rank->add_subcommand("verify", "check a ranking, or an L-ranking with --lists");
  verify->add_option("--graph", rank_graph)->required();
  verify->add_option("--ranking", ranking_file, "ranking JSON file")->required();
  verify->add_option("--lists", lists_file, "list assignment JSON file");
  auto* rho = rank->add_subcommand("rho", "ranking number (tree-depth)");
  rho->add_option("--graph", rank_graph)->required();
  auto* rho_list = rank->add_subcommand("rho-list", "list ranking number up to --max-k");
  rho_list->add_option("--graph", rank_graph)->required();
  rho_list->add_option("--max-k", max_k);

  // game
  auto* game = app.add_subcommand("game", "play, solve and measure the games");
  game->require_subcommand(1);
  GameArgs ga;
  std::string taxer_name = "solver", ranker_name = "solver";
  auto* play = game->add_subcommand("play", "play one game and print the transcript");
  add_game_args(play, ga);
  play->add_option("--taxer", taxer_name, "script-p4, solver, random:SEED, stdin or lists:FILE");
  play->add_option("--ranker", ranker_name,
                   "sigma-path, tau-cycle, distinct-tail, star, double-star, p4-low, solver, random:SEED or stdin");
  auto* solve = game->add_subcommand("solve", "winner under optimal play");
  add_game_args(solve, ga);
  auto* number = game->add_subcommand("number", "least uniform token count Ranker wins with");
  number->add_option("--graph", ga.graph)->required();
  number->add_option("--variant", ga.variant, "low, high, mixed or list");
  number->add_option("--max-k", max_k);

  // tree
  auto* tree = app.add_subcommand("tree", "list rankings of leafy trees");
  tree->require_subcommand(1);
  std::string tree_file;
  auto* tree_rank = tree->add_subcommand("rank", "L-ranking of a tree with q-uniform lists");
  tree_rank->add_option("--tree", tree_file, "tree JSON file or descriptor")->required();
  tree_rank->add_option("--lists", lists_file, "list assignment JSON file")->required();

  // check
  auto* check = app.add_subcommand("check", "run a claim suite");
  std::string suite;
  bool as_json = false;
  SuiteOptions opt;
  std::size_t trials = 0;
  check->add_option("--suite", suite, "paths, cycles, stars, trees, minors, chain, sharpness or all")->required();
  check->add_flag("--json", as_json, "machine-readable report");
  check->add_option("--seed", opt.seed);
  check->add_option("--jobs", opt.jobs);
  check->add_option("--trials", trials, "trial count for randomized claims");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const Graph g = load_graph(rank_graph);
      const Ranking a = ranking_from_json(read_json_file(ranking_file));
      bool valid = false;
      if (!lists_file.empty()) {
        valid = is_list_ranking(g, lists_from_json(read_json_file(lists_file)), a);
      } else {
        bool total = a.size() == g.order();
        for (VertexId v : g.vertices()) total = total && a.contains(v) && a.at(v) >= 1;
        valid = total && is_ranking(g, a);
      }
      print({{"valid", valid}});
      return valid ? 0 : 1;
    }
    if (rho->parsed()) {
      print({{"rho", tree_depth(load_graph(rank_graph))}});
      return 0;
    }
    if (rho_list->parsed()) {
      const Graph g = load_graph(rank_graph);
      const auto k = list_ranking_number(g, max_k, std::max<std::size_t>(12, g.order() * max_k));
      print({{"rho_list", maybe(k)}, {"max_k", max_k}});
      return 0;
    }
    if (play->parsed()) {
      const Graph g = load_graph(ga.graph);
      auto solver = std::make_shared<Solver>(caps_from_env());
      std::optional<ListAssignment> lists;
      GameState start;
      if (taxer_name.starts_with("lists:")) {
        lists = lists_from_json(read_json_file(taxer_name.substr(6)));
        start = list_game_state(g, *lists, parse_variant(ga.variant));
      } else {
        start = game_from(ga, g);
      }
      TaxerStrategy taxer = lists              ? list_as_taxer(*lists, start.variant)
                            : taxer_name == "stdin" ? stdin_taxer(std::cin, std::cerr)
                                                    : make_taxer(taxer_name, start, solver);
      RankerStrategy ranker =
          ranker_name == "stdin" ? stdin_ranker(std::cin, std::cerr) : make_ranker(ranker_name, start, solver);
      const Transcript tr = play_game(start, taxer, ranker);
      json out = to_json(tr);
      if (tr.outcome == Outcome::ranker_win && !tr.forfeit) {
        const Ranking a = lists ? extract_list_ranking(tr) : extract_ranking(tr);
        out["ranking"] = ranking_to_json(a);
        out["ranking_valid"] = lists ? is_list_ranking(g, *lists, a) : is_ranking(g, a);
      }
      print(out);
      return 0;
    }
    if (solve->parsed()) {
      const Graph g = load_graph(ga.graph);
      Solver solver(caps_from_env());
      const Side w = solver.winner(game_from(ga, g));
      print({{"winner", to_string(w)}, {"nodes", solver.nodes()}});
      return 0;
    }
    if (number->parsed()) {
      const Graph g = load_graph(ga.graph);
      std::optional<int> k;
      if (ga.variant == "list") {
        k = list_ranking_number(g, max_k, std::max<std::size_t>(12, g.order() * max_k));
      } else {
        Solver solver(caps_from_env());
        k = online_number(g, parse_variant(ga.variant), max_k, solver);
      }
      print({{"variant", ga.variant}, {"number", maybe(k)}, {"max_k", max_k}});
      return 0;
    }
    if (tree_rank->parsed()) {
      const Graph t = load_graph(tree_file);
      const ListAssignment l = lists_from_json(read_json_file(lists_file));
      const LeafyTreeReport rep = rank_leafy_tree_report(t, l);
      const bool valid = is_list_ranking(t, l, rep.ranking);
      print({{"ranking", ranking_to_json(rep.ranking)},
             {"report", {{"valid", valid}, {"route", rep.route}, {"defects", rep.defects}}}});
      return valid ? 0 : 1;
    }
    if (check->parsed()) {
      if (trials > 0) opt.trials = trials;
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      json all = json::array();
      for (const auto& name : names) {
        const SuiteReport r = run_suite(name, opt);
        ok = ok && r.pass();
        if (as_json)
          all.push_back(to_json(r));
        else
          std::cout << format_table(r) << std::flush;
      }
      if (as_json) print(names.size() == 1 ? all[0] : all);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
