#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "rankduel/enumerate.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/ranking.hpp"
#include "rankduel/solver.hpp"
#include "rankduel/strategies.hpp"
#include "rankduel/tree_ranker.hpp"

// Claim suites: each claim re-derives one published result on desk-scale
// instances and reports what it expected and what it observed.

namespace rankduel {

struct Claim {
  std::string id;
  std::string title;
  std::string params;
  std::string expected;
  std::string observed;
  bool pass = false;
  double runtime_ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Claim> claims;

  bool pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Overrides the trial count of every randomized claim.
  std::optional<std::size_t> trials;
  unsigned jobs = 1;

  std::size_t trials_or(std::size_t fallback) const { return trials.value_or(fallback); }
};

/// Runs fn(i, worker) for i in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i, w);
    });
  for (auto& t : pool) t.join();
}

/// Least k with 2^k >= x.
inline int ceil_log2(std::uint64_t x) {
  int k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

namespace detail {

/// Counts checks and keeps the first few failure messages.
struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (notes.size() < 3) notes.push_back(what);
  }

  void merge(const Tally& o) {
    checked += o.checked;
    failed += o.failed;
    for (const auto& n : o.notes)
      if (notes.size() < 3) notes.push_back(n);
  }

  std::string summary(const std::string& extra = "") const {
    std::ostringstream os;
    os << checked - failed << "/" << checked << " checks passed";
    if (!extra.empty()) os << "; " << extra;
    for (const auto& n : notes) os << "; FAIL " << n;
    return os.str();
  }
};

inline std::string show(const std::vector<int>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + ")";
}

inline std::string show(const Graph& g) {
  std::string s = "n=" + std::to_string(g.order()) + " E={";
  bool first = true;
  for (auto [u, v] : g.edges()) {
    s += (first ? "" : ",") + std::to_string(u) + "-" + std::to_string(v);
    first = false;
  }
  return s + "}";
}

/// Every vector in {lo..hi}^n.
inline std::vector<std::vector<int>> all_vectors(std::size_t n, int lo, int hi) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int x = lo; x <= hi; ++x) {
        next.push_back(v);
        next.back().push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

/// g plus a copy of h with ids shifted past g.
inline Graph disjoint_union(const Graph& g, const Graph& h, VertexId shift) {
  Graph u = g;
  for (VertexId v : h.vertices()) u.add_vertex(v + shift);
  for (auto [a, b] : h.edges()) u.add_edge(a + shift, b + shift);
  return u;
}

inline Claim run_claim(std::string id, std::string title, const std::function<void(Claim&)>& body) {
  Claim c;
  c.id = std::move(id);
  c.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.observed += (c.observed.empty() ? "" : "; ") + std::string("error: ") + e.what();
  }
  c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

inline void finish(Claim& c, const Tally& t, const std::string& extra = "") {
  c.observed = t.summary(extra);
  c.pass = t.failed == 0 && t.checked > 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// paths

inline Claim claim_depth_formulas(const SuiteOptions&) {
  return detail::run_claim("AC1", "ranking numbers of paths and cycles", [](Claim& c) {
    c.params = "P_n for n=1..15, C_n for n=3..12, exact tree-depth";
    c.expected = "rho(P_n)=ceil(log2(n+1)), rho(C_n)=1+ceil(log2 n)";
    detail::Tally t;
    for (std::size_t n = 1; n <= 15; ++n) {
      const int got = tree_depth(path_graph(n)), want = ceil_log2(n + 1);
      t.expect(got == want, "P_" + std::to_string(n) + " got " + std::to_string(got));
    }
    for (std::size_t n = 3; n <= 12; ++n) {
      const int got = tree_depth(cycle_graph(n)), want = 1 + ceil_log2(n);
      t.expect(got == want, "C_" + std::to_string(n) + " got " + std::to_string(got));
    }
    detail::finish(c, t);
  });
}

namespace detail {
inline Claim online_numbers(std::string id, std::string title, std::string family, std::size_t lo, std::size_t hi,
                            const std::function<Graph(std::size_t)>& make, const std::function<int(std::size_t)>& want,
                            GameVariant variant, SolverCaps caps) {
  return run_claim(std::move(id), std::move(title), [&](Claim& c) {
    c.params = family + "n for n=" + std::to_string(lo) + ".." + std::to_string(hi) + ", " + to_string(variant) +
               " game, exact solver";
    c.expected = "least winning uniform token count matches the closed form; Taxer wins one below it";
    Solver solver(caps);
    Tally t;
    std::string seen;
    for (std::size_t n = lo; n <= hi; ++n) {
      const Graph g = make(n);
      const int k = want(n);
      const auto got = online_number(g, variant, k + 1, solver);
      seen += (seen.empty() ? "" : " ") + std::to_string(got.value_or(-1));
      t.expect(got == k, family + std::to_string(n) + " got " + std::to_string(got.value_or(-1)));
      t.expect(solver.winner(initial_state(g, constant_tokens(g, k - 1), variant)) == Side::taxer,
               family + std::to_string(n) + ": Ranker wins below the bound");
    }
    finish(c, t, "numbers " + seen + ", " + std::to_string(solver.nodes()) + " solver nodes");
  });
}
}  // namespace detail

inline Claim claim_path_online(const SuiteOptions&) {
  return detail::online_numbers(
      "AC2", "mixed-game number of paths", "P_", 1, 6, [](std::size_t n) { return path_graph(n); },
      [](std::size_t n) { return ceil_log2(n + 1); }, GameVariant::mixed, {8, 7});
}

inline Claim claim_path_strategy(const SuiteOptions& opt) {
  return detail::run_claim("AC4", "sigma-path Ranker never loses", [&](Claim& c) {
    const std::size_t games = opt.trials_or(10000);
    c.params = "exhaustive Taxer on P_1..P_5 with tokens in 1..4 and sigma<1; " + std::to_string(games) +
               " random-Taxer games on P_1..P_12, seed " + std::to_string(opt.seed);
    c.expected = "zero losses, zero forfeits, every component a path with sigma<1 after every round";

    std::vector<GameState> starts;
    for (std::size_t n = 1; n <= 5; ++n)
      for (const auto& f : detail::all_vectors(n, 1, 4))
        if (sigma(f) < Dyadic::integer(1))
          starts.push_back(initial_state(path_graph(n), tokens_in_order(path_graph(n), f), GameVariant::mixed));

    struct Game {
      Graph g;
      TokenFunction f;
      std::uint64_t taxer_seed;
    };
    std::mt19937_64 rng(opt.seed);
    std::vector<Game> random_games;
    while (random_games.size() < games) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
      const int lo = std::max(1, ceil_log2(n + 1) - 1);
      std::vector<int> f(n);
      for (int& x : f) x = std::uniform_int_distribution<int>(lo, lo + 4)(rng);
      const std::uint64_t s = rng();
      if (!(sigma(f) < Dyadic::integer(1))) continue;
      const Graph g = path_graph(n);
      random_games.push_back({g, tokens_in_order(g, f), s});
    }

    const RankerStrategy ranker = compose_components(ranker_path);
    std::vector<detail::Tally> tallies(starts.size() + random_games.size());
    std::atomic<std::size_t> positions{0};
    parallel_for(tallies.size(), opt.jobs, [&](std::size_t i, unsigned) {
      auto& t = tallies[i];
      if (i < starts.size()) {
        const auto res = ranker_never_loses(starts[i], ranker, paths_below_one);
        positions += res.positions;
        t.expect(res.ok, "exhaustive " + detail::show(starts[i].graph) + ": " + res.reason);
        return;
      }
      const auto& gm = random_games[i - starts.size()];
      const auto tr = play_game(initial_state(gm.g, gm.f, GameVariant::mixed), random_taxer(gm.taxer_seed), ranker);
      bool invariant = true;
      for (const auto& rd : tr.rounds) {
        GameState s;
        s.graph = rd.graph_after;
        s.tokens = rd.tokens_after;
        invariant = invariant && !paths_below_one(s);
      }
      t.expect(tr.outcome == Outcome::ranker_win && !tr.forfeit && invariant,
               "random game on P_" + std::to_string(gm.g.order()) + ": " + to_string(tr.outcome) + " " + tr.reason);
    });
    detail::Tally total;
    for (const auto& t : tallies) total.merge(t);
    detail::finish(c, total,
                   std::to_string(starts.size()) + " exhaustive starts (" + std::to_string(positions.load()) +
                       " positions), " + std::to_string(random_games.size()) + " random games");
  });
}

// ---------------------------------------------------------------------------
// cycles

inline Claim claim_cycle_online(const SuiteOptions&) {
  return detail::online_numbers(
      "AC3", "mixed-game number of cycles", "C_", 3, 5, [](std::size_t n) { return cycle_graph(n); },
      [](std::size_t n) { return 1 + ceil_log2(n); }, GameVariant::mixed, {8, 7});
}

// ---------------------------------------------------------------------------
// sharpness

/// The sigma = 1 token function on P_n that admits no f-ranking.
inline std::vector<int> path_sharp_tokens(std::size_t n) {
  const int k = ceil_log2(n + 1) - 1;
  const std::size_t pk = std::size_t{1} << k;
  std::vector<int> f(n);
  for (std::size_t i = 1; i <= n; ++i) f[i - 1] = (n - pk < i && i <= pk) ? k : k + 1;
  return f;
}

inline Claim claim_path_sharpness(const SuiteOptions&) {
  return detail::run_claim("AC5", "sigma threshold on paths is sharp but not a converse", [](Claim& c) {
    c.params = "P_1..P_12 with the sigma=1 construction; mixed game on P_4 (2,3,1,3) and P_5 (2,3,1,3,5); "
               "sigma of (2,3,1,3,5,..,n) for n=5..10";
    c.expected = "no f-ranking by either search; Ranker wins both games; sigma = 17/16 - 2^-n exactly";
    detail::Tally t;
    for (std::size_t n = 1; n <= 12; ++n) {
      const Graph g = path_graph(n);
      const auto f = path_sharp_tokens(n);
      const auto tf = tokens_in_order(g, f);
      t.expect(sigma(f) == Dyadic::integer(1), "sigma of the construction on P_" + std::to_string(n));
      t.expect(!is_f_rankable(g, tf), "backtracking ranks P_" + std::to_string(n) + " " + detail::show(f));
      t.expect(!detail::rankable_by_elimination(g, prefix_lists(tf)),
               "elimination search ranks P_" + std::to_string(n) + " " + detail::show(f));
    }
    Solver solver({6, 5});
    for (const std::vector<int>& f : {std::vector<int>{2, 3, 1, 3}, std::vector<int>{2, 3, 1, 3, 5}}) {
      const Graph g = path_graph(f.size());
      t.expect(solver.winner(initial_state(g, tokens_in_order(g, f), GameVariant::mixed)) == Side::ranker,
               "Taxer wins on " + detail::show(f));
    }
    for (unsigned n = 5; n <= 10; ++n) {
      std::vector<int> f{2, 3, 1, 3};
      for (unsigned i = 5; i <= n; ++i) f.push_back(static_cast<int>(i));
      const Dyadic want = Dyadic::fraction((std::uint64_t{17} << (n - 4)) - 1, n);
      t.expect(sigma(f) == want, "sigma of " + detail::show(f) + " is " + sigma(f).to_string());
    }
    detail::finish(c, t);
  });
}

inline Claim claim_low_high_split(const SuiteOptions&) {
  return detail::run_claim("AC6", "low and high games differ on (3,1,2,3,5,..)", [](Claim& c) {
    c.params = "P_4 (3,1,2,3) and P_5 (3,1,2,3,5); scripted Taxer on P_4 against every Ranker line";
    c.expected = "Ranker wins the low game, Taxer wins the high game; the script never loses";
    detail::Tally t;
    Solver solver({6, 5});
    for (const std::vector<int>& f : {std::vector<int>{3, 1, 2, 3}, std::vector<int>{3, 1, 2, 3, 5}}) {
      const Graph g = path_graph(f.size());
      const auto tf = tokens_in_order(g, f);
      t.expect(solver.winner(initial_state(g, tf, GameVariant::low_only)) == Side::ranker,
               "Taxer wins the low game on " + detail::show(f));
      t.expect(solver.winner(initial_state(g, tf, GameVariant::high_only)) == Side::taxer,
               "Ranker wins the high game on " + detail::show(f));
    }
    const Graph p4 = path_graph(4);
    const auto start = initial_state(p4, tokens_in_order(p4, {3, 1, 2, 3}), GameVariant::high_only);
    const auto res = taxer_always_wins(start, taxer_path_script(start));
    t.expect(res.ok, "scripted Taxer: " + res.reason);
    detail::finish(c, t, "script checked on " + std::to_string(res.positions) + " positions");
  });
}

// ---------------------------------------------------------------------------
// chain

inline Claim claim_parameter_chain(const SuiteOptions& opt) {
  return detail::run_claim("AC7", "chain of ranking parameters", [&](Claim& c) {
    c.params = "every connected graph on 1..4 vertices; list number by order-type enumeration up to k=3";
    c.expected = "rho <= rho_l <= min(rho-,rho+) <= max(rho-,rho+) <= rho+-";
    std::vector<Graph> graphs;
    for (std::size_t n = 1; n <= 4; ++n)
      for (auto& g : graph_classes(n, true)) graphs.push_back(std::move(g));
    std::vector<detail::Tally> tallies(graphs.size());
    // Graphs with rho_l < rho+- are counted for the record, not asserted either way.
    std::vector<int> gap(graphs.size(), 0);
    std::vector<Solver> solvers(std::max(1u, opt.jobs), Solver({8, 7}));
    parallel_for(graphs.size(), opt.jobs, [&](std::size_t i, unsigned w) {
      const Graph& g = graphs[i];
      auto& t = tallies[i];
      const std::string name = detail::show(g);
      const int rho = tree_depth(g);
      const auto rho_l = list_ranking_number(g, 3);
      const auto lo = online_number(g, GameVariant::low_only, 7, solvers[w]);
      const auto hi = online_number(g, GameVariant::high_only, 7, solvers[w]);
      const auto mixed = online_number(g, GameVariant::mixed, 7, solvers[w]);
      t.expect(lo && hi && mixed, name + ": a game number exceeds 7");
      if (!lo || !hi || !mixed) return;
      const int mn = std::min(*lo, *hi), mx = std::max(*lo, *hi);
      // An unresolved list number is only known to be at least 4.
      const int rho_l_floor = rho_l.value_or(4);
      t.expect(rho <= rho_l_floor, name + ": rho exceeds rho_l");
      t.expect(rho_l_floor <= mn, name + ": rho_l exceeds min(rho-,rho+)");
      t.expect(mn <= mx && mx <= *mixed, name + ": max(rho-,rho+) exceeds rho+-");
      gap[i] = rho_l && *rho_l < *mixed ? 1 : 0;
    });
    detail::Tally total;
    for (const auto& t : tallies) total.merge(t);
    const int gaps = std::accumulate(gap.begin(), gap.end(), 0);
    detail::finish(c, total, std::to_string(graphs.size()) + " graphs, rho_l < rho+- on " + std::to_string(gaps));
  });
}

inline Claim claim_extraction_and_adapter(const SuiteOptions& opt) {
  return detail::run_claim("AC11", "ranking extraction and list adapter", [&](Claim& c) {
    const std::size_t wanted = opt.trials_or(10000);
    c.params = std::to_string(wanted) + " random Ranker-win transcripts on graphs of 1..5 vertices with tokens " +
               "1..3, seed " + std::to_string(opt.seed) +
               "; every graph on 1..4 vertices with every list assignment over {1..4}, low and high";
    c.expected = "every extracted labelling is a ranking; L-rankable iff Ranker beats the list adapter";
    detail::Tally t;
    std::mt19937_64 rng(opt.seed);
    std::size_t wins = 0, attempts = 0;
    while (wins < wanted && attempts < 100 * wanted + 100) {
      ++attempts;
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      Graph g(n);
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
          if (rng() & 1u) g.add_edge(u, v);
      TokenFunction f;
      for (VertexId v = 0; v < n; ++v) f[v] = std::uniform_int_distribution<int>(1, 3)(rng);
      const auto variant = static_cast<GameVariant>(rng() % 3);
      const std::uint64_t ts = rng(), rs = rng();
      const auto tr = play_game(initial_state(g, f, variant), random_taxer(ts), random_ranker(rs));
      if (tr.outcome != Outcome::ranker_win || tr.forfeit) continue;
      ++wins;
      const Ranking a = extract_ranking(tr);
      bool covers = a.size() == n;
      for (auto [v, label] : a) covers = covers && label >= 1 && label <= static_cast<int>(tr.rounds.size());
      t.expect(covers && is_ranking(g, a), "extraction on " + detail::show(g));
    }
    t.expect(wins == wanted, "only " + std::to_string(wins) + " Ranker wins in " + std::to_string(attempts) + " games");

    struct Case {
      const Graph* g;
      ListAssignment l;
    };
    std::vector<Graph> graphs;
    for (std::size_t n = 1; n <= 4; ++n)
      for (auto& g : graph_classes(n, false)) graphs.push_back(std::move(g));
    std::vector<std::set<int>> subsets;
    for (unsigned m = 1; m < 16; ++m) {
      std::set<int> s;
      for (int b = 0; b < 4; ++b)
        if (m >> b & 1u) s.insert(b + 1);
      subsets.push_back(s);
    }
    std::vector<Case> cases;
    for (const auto& g : graphs) {
      const auto vs = g.vertices();
      std::vector<std::size_t> idx(vs.size(), 0);
      while (true) {
        ListAssignment l;
        for (std::size_t i = 0; i < vs.size(); ++i) l[vs[i]] = subsets[idx[i]];
        cases.push_back({&g, std::move(l)});
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == subsets.size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    std::vector<detail::Tally> tallies(cases.size());
    std::atomic<std::size_t> rankable{0};
    parallel_for(cases.size(), opt.jobs, [&](std::size_t i, unsigned) {
      const auto& [g, l] = cases[i];
      const bool has = find_list_ranking(*g, l).has_value();
      rankable += has ? 1 : 0;
      for (GameVariant v : {GameVariant::low_only, GameVariant::high_only}) {
        const auto tr = solve_against(list_game_state(*g, l, v), list_as_taxer(l, v));
        bool ok = tr.has_value() == has;
        if (ok && tr) ok = is_list_ranking(*g, l, extract_list_ranking(*tr));
        tallies[i].expect(ok, std::string(to_string(v)) + " adapter disagrees on " + detail::show(*g));
      }
    });
    for (const auto& x : tallies) t.merge(x);
    detail::finish(c, t,
                   std::to_string(wins) + " transcripts, " + std::to_string(cases.size()) + " list assignments (" +
                       std::to_string(rankable.load()) + " rankable)");
  });
}

// ---------------------------------------------------------------------------
// minors

inline Claim claim_minor_closure(const SuiteOptions& opt) {
  return detail::run_claim("AC8", "minor monotonicity, components, edge contraction", [&](Claim& c) {
    c.params = "graphs on 1..4 vertices with tokens 1..3 and every single-step minor; unions of two connected "
               "graphs on 1..3 vertices; contractions with f(u)=f(v)=f(w)+1; low, high and mixed games; "
               "path counterexamples for plain rankings";
    c.expected = "every implication holds in every game; both counterexamples reproduce";
    const std::vector<GameVariant> variants{GameVariant::low_only, GameVariant::high_only, GameVariant::mixed};
    std::vector<Graph> graphs;
    for (std::size_t n = 1; n <= 4; ++n)
      for (auto& g : graph_classes(n, false)) graphs.push_back(std::move(g));
    std::vector<Solver> solvers(std::max(1u, opt.jobs), Solver({6, 4}));

    // Monotone and EdgeContraction, one task per graph.
    std::vector<detail::Tally> tallies(graphs.size());
    parallel_for(graphs.size(), opt.jobs, [&](std::size_t gi, unsigned w) {
      const Graph& g = graphs[gi];
      auto& t = tallies[gi];
      Solver& solver = solvers[w];
      const auto vs = g.vertices();
      auto wins = [&](const Graph& h, const TokenFunction& f, GameVariant v) {
        TokenFunction r;
        for (VertexId x : h.vertices()) r[x] = f.at(x);
        return solver.ranker_wins(initial_state(h, r, v));
      };
      for (const auto& fv : detail::all_vectors(vs.size(), 1, 3)) {
        const TokenFunction f = tokens_in_order(g, fv);
        for (GameVariant var : variants) {
          if (!wins(g, f, var)) continue;
          const std::string where = detail::show(g) + " f=" + detail::show(fv) + " " + to_string(var);
          for (VertexId v : vs) {
            Graph h = g;
            h.remove_vertex(v);
            t.expect(wins(h, f, var), where + ": deleting " + std::to_string(v));
          }
          for (auto [a, b] : g.edges()) {
            std::vector<Edge> kept;
            for (auto e : g.edges())
              if (e != Edge{a, b}) kept.push_back(e);
            t.expect(wins(Graph::from_edges(vs, kept), f, var), where + ": deleting an edge");
            const auto con = contract_edge(g, a, b, MinorMap::identity(g));
            TokenFunction f2 = f;
            f2[con.merged] = std::min(f.at(a), f.at(b));
            t.expect(wins(con.graph, f2, var), where + ": contracting an edge");
          }
        }
      }
      for (auto [a, b] : g.edges())
        for (int fw = 1; fw <= 2; ++fw)
          for (const auto& rest : detail::all_vectors(vs.size() - 2, 1, 3)) {
            TokenFunction f;
            std::size_t k = 0;
            for (VertexId x : vs) f[x] = (x == a || x == b) ? fw + 1 : rest[k++];
            const auto con = contract_edge(g, a, b, MinorMap::identity(g));
            TokenFunction f2 = f;
            f2[con.merged] = fw;
            for (GameVariant var : variants)
              if (wins(g, f, var))
                t.expect(wins(con.graph, f2, var), detail::show(g) + " contraction with f(w)=" + std::to_string(fw) +
                                                       " " + to_string(var));
          }
    });

    // Component: unions of two connected pieces.
    struct Piece {
      Graph g;
      std::vector<int> f;
    };
    std::vector<Piece> pieces;
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& g : graph_classes(n, true))
        for (const auto& f : detail::all_vectors(n, 1, 3)) pieces.push_back({g, f});
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i; j < pieces.size(); ++j) pairs.emplace_back(i, j);
    std::vector<detail::Tally> comp_tallies(pairs.size());
    parallel_for(pairs.size(), opt.jobs, [&](std::size_t pi, unsigned w) {
      const auto& [a, b] = pieces[pairs[pi].first];
      const auto& [c2, d] = pieces[pairs[pi].second];
      const VertexId shift = static_cast<VertexId>(a.order());
      const Graph u = detail::disjoint_union(a, c2, shift);
      std::vector<int> fu = b;
      fu.insert(fu.end(), d.begin(), d.end());
      for (GameVariant var : variants) {
        const bool whole = solvers[w].ranker_wins(initial_state(u, tokens_in_order(u, fu), var));
        const bool first = solvers[w].ranker_wins(initial_state(a, tokens_in_order(a, b), var));
        const bool second = solvers[w].ranker_wins(initial_state(c2, tokens_in_order(c2, d), var));
        comp_tallies[pi].expect(whole == (first && second),
                                detail::show(u) + " f=" + detail::show(fu) + " " + to_string(var));
      }
    });

    detail::Tally total;
    for (const auto& t : tallies) total.merge(t);
    for (const auto& t : comp_tallies) total.merge(t);

    // Plain rankings: contracting a path to an edge, and contracting its last edge.
    for (std::size_t n = 3; n <= 8; ++n) {
      const Graph g = path_graph(n);
      std::vector<int> f(n, static_cast<int>(n));
      f.front() = f.back() = 1;
      Contraction con{g, MinorMap::identity(g), 0};
      while (con.graph.order() > 2) {
        const auto vs = con.graph.vertices();
        con = contract_edge(con.graph, con.graph.neighbors(vs.back()).front(), vs.back(), con.minor);
      }
      total.expect(is_f_rankable(g, tokens_in_order(g, f)), "P_" + std::to_string(n) + " not f-rankable");
      total.expect(!is_f_rankable(con.graph, constant_tokens(con.graph, 1)), "edge minor of P_" + std::to_string(n));
    }
    for (std::size_t n = 6; n <= 10; ++n) {
      const Graph g = path_graph(n);
      std::vector<int> f(n, static_cast<int>(n));
      f[n - 3] = 1;
      f[n - 2] = f[n - 1] = 2;
      const auto con = contract_edge(g, static_cast<VertexId>(n - 2), static_cast<VertexId>(n - 1),
                                     MinorMap::identity(g));
      TokenFunction f2 = tokens_in_order(g, f);
      f2.erase(static_cast<VertexId>(n - 2));
      f2.erase(static_cast<VertexId>(n - 1));
      f2[con.merged] = 1;
      total.expect(is_f_rankable(g, tokens_in_order(g, f)), "P_" + std::to_string(n) + " contraction source");
      total.expect(!is_f_rankable(con.graph, f2), "P_" + std::to_string(n) + " contracted is f-rankable");
    }
    detail::finish(c, total,
                   std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs.size()) + " unions");
  });
}

// ---------------------------------------------------------------------------
// stars

inline Claim claim_star_numbers(const SuiteOptions&) {
  return detail::run_claim("AC9", "high-game number of stars and double stars", [](Claim& c) {
    c.params = "K_{1,q} for q=2..4; double stars with leaf splits (1,2), (1,3), (2,2); high game";
    c.expected = "number equals the leaf count q; the star Ranker survives every Taxer line at f=q";
    detail::Tally t;
    Solver solver({6, 5});
    std::vector<std::pair<std::string, Graph>> cases;
    for (std::size_t q = 2; q <= 4; ++q) cases.emplace_back("K_{1," + std::to_string(q) + "}", star_graph(q));
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {1, 3}, {2, 2}})
      cases.emplace_back("dstar(" + std::to_string(m) + "," + std::to_string(n) + ")", double_star_graph(m, n));
    std::string seen;
    std::size_t positions = 0;
    for (const auto& [name, g] : cases) {
      const int q = static_cast<int>(tree_leaves(g).size());
      const auto got = online_number(g, GameVariant::high_only, q + 1, solver);
      seen += (seen.empty() ? "" : " ") + name + "=" + std::to_string(got.value_or(-1));
      t.expect(got == q, name + " number " + std::to_string(got.value_or(-1)));
      const auto res = ranker_never_loses(initial_state(g, constant_tokens(g, q), GameVariant::high_only),
                                          compose_components(ranker_star));
      positions += res.positions;
      t.expect(res.ok, name + ": " + res.reason);
    }
    detail::finish(c, t, seen + "; strategy checked on " + std::to_string(positions) + " positions");
  });
}

// ---------------------------------------------------------------------------
// trees

inline Claim claim_leafy_trees(const SuiteOptions& opt) {
  return detail::run_claim("AC10", "list rankings of leafy trees", [&](Claim& c) {
    const std::size_t trials = opt.trials_or(100);
    c.params = "caterpillar with spine leaves 7,8,7 (p=3, q=22) and " + std::to_string(trials) +
               " random 22-uniform lists from {1..60}, seed " + std::to_string(opt.seed) +
               "; every tree on up to 10 vertices with 2..5 leaves; K_3 with 2 pendants";
    c.expected = "every produced labelling is an L-ranking; the leaf-separating lists admit none";
    detail::Tally t;
    const Graph cat = caterpillar_graph(std::vector<std::size_t>{7, 8, 7});
    std::mt19937_64 rng(opt.seed);
    std::vector<ListAssignment> lists(trials);
    std::vector<int> universe(60);
    std::iota(universe.begin(), universe.end(), 1);
    for (auto& l : lists)
      for (VertexId v : cat.vertices()) {
        std::shuffle(universe.begin(), universe.end(), rng);
        l[v] = std::set<int>(universe.begin(), universe.begin() + 22);
      }
    std::vector<LeafyTreeReport> reports(trials);
    std::vector<detail::Tally> tallies(trials);
    parallel_for(trials, opt.jobs, [&](std::size_t i, unsigned) {
      reports[i] = rank_leafy_tree_report(cat, lists[i]);
      tallies[i].expect(is_list_ranking(cat, lists[i], reports[i].ranking) && reports[i].defects.empty(),
                        "trial " + std::to_string(i) + " route " + reports[i].route);
    });
    std::map<std::string, std::size_t> routes;
    for (std::size_t i = 0; i < trials; ++i) {
      t.merge(tallies[i]);
      ++routes[reports[i].route];
    }

    std::size_t trees = 0;
    for (std::size_t n = 3; n <= 10; ++n)
      for (const auto& tree : all_trees(n)) {
        const std::size_t q = tree_leaves(tree).size();
        if (q < 2 || q > 5) continue;
        ++trees;
        const auto l = treebound_lists(tree, tree);
        t.expect(!find_list_ranking(tree, l), "backtracking ranks " + detail::show(tree));
        t.expect(!detail::rankable_by_elimination(tree, l), "elimination ranks " + detail::show(tree));
      }

    const Graph kp = clique_with_pendants(3, 2);
    const Graph sub = max_leaf_subtree(kp);
    t.expect(tree_leaves(sub).size() == 3, "K_3 with 2 pendants has no subtree with 3 leaves");
    const auto l = treebound_lists(kp, sub);
    t.expect(!find_list_ranking(kp, l) && !detail::rankable_by_elimination(kp, l),
             "K_3 with 2 pendants is rankable from the leaf-separating lists");
    t.expect(!list_ranking_number(kp, 2), "K_3 with 2 pendants has list ranking number <= 2");

    std::string route_text;
    for (auto [r, k] : routes) route_text += (route_text.empty() ? "" : " ") + r + ":" + std::to_string(k);
    detail::finish(c, t, "routes " + route_text + ", " + std::to_string(trees) + " trees");
  });
}

// ---------------------------------------------------------------------------
// suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"paths", "cycles", "stars", "trees", "minors", "chain", "sharpness"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  using ClaimFn = Claim (*)(const SuiteOptions&);
  static const std::map<std::string, std::vector<ClaimFn>> table{
      {"paths", {claim_depth_formulas, claim_path_online, claim_path_strategy}},
      {"cycles", {claim_cycle_online}},
      {"stars", {claim_star_numbers}},
      {"trees", {claim_leafy_trees}},
      {"minors", {claim_minor_closure}},
      {"chain", {claim_parameter_chain, claim_extraction_and_adapter}},
      {"sharpness", {claim_path_sharpness, claim_low_high_split}},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  SuiteReport r{name, {}};
  for (ClaimFn fn : it->second) r.claims.push_back(fn(opt));
  return r;
}

/// Machine format. Runtimes are left out so identical flags give identical bytes.
inline nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json j{{"suite", r.suite}, {"pass", r.pass()}, {"claims", nlohmann::json::array()}};
  for (const auto& c : r.claims)
    j["claims"].push_back({{"id", c.id},
                           {"title", c.title},
                           {"params", c.params},
                           {"expected", c.expected},
                           {"observed", c.observed},
                           {"pass", c.pass}});
  return j;
}

inline std::string format_table(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << "\n";
  for (const auto& c : r.claims) {
    os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << "  ("
       << static_cast<long long>(c.runtime_ms) << " ms)\n"
       << "        params:   " << c.params << "\n"
       << "        expected: " << c.expected << "\n"
       << "        observed: " << c.observed << "\n";
  }
  return os.str();
}

}  // namespace rankduel
