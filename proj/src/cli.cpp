#include "rtcover/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "rtcover/report.hpp"
#include "rtcover/sampling.hpp"

namespace rtcover {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path, RunReport& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  report.inputs[path] = fnv1a64(text);
  return text;
}

Rational parse_scale(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
}

// Runs `body` and records its wall time under `name`.
template <class F>
void timed(RunReport& report, const std::string& name, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  report.timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct CommonOptions {
  std::string json_path;
  bool timings = false;
};

int finish(const RunReport& report, const CommonOptions& common, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass && !c.witness.is_null()) out << "  witness: " << c.witness.dump();
    out << '\n';
  }
  Json doc = to_json(report, common.timings);
  if (common.json_path == "-") {
    out << doc.dump(2) << '\n';
  } else if (!common.json_path.empty()) {
    std::ofstream file(common.json_path, std::ios::binary);
    if (!file) throw InputError("cannot write " + common.json_path);
    file << doc.dump(2) << '\n';
  }
  return report.pass() ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

struct TreeOptions {
  std::string graph;
  std::size_t pairs = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> fiber;
  std::string radius = "2";
};

std::vector<GraphPoint> vertices_and_midpoints(const MetricGraph& g) {
  std::vector<GraphPoint> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(GraphPoint::vertex(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e) out.push_back(g.point_on_edge(e, g.edge(e).length / 2));
  return out;
}

int cmd_tree(const TreeOptions& opt, const CommonOptions& common, std::ostream& out) {
  RunReport report;
  report.command = "tree";
  MetricGraph g = [&] {
    std::string text = read_file(opt.graph, report);
    try {
      return parse_graph(text);
    } catch (const std::exception& ex) {
      throw InputError(opt.graph + ": " + ex.what());
    }
  }();
  if (opt.pairs > 0 && !opt.seed) throw InputError("--pairs needs an explicit --seed");
  report.seed = opt.seed;
  const Rational radius = parse_scale(opt.radius);
  if (radius < 0) throw InputError("radius must be nonnegative");
  std::mt19937_64 rng(opt.seed.value_or(0));
  GeneratorSet gens = generators(g);
  report.results["rank"] = gens.rank();

  // Sample set: every tree point over a vertex within the radius, then random points.
  std::vector<TreePoint> points;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto f = fiber(g, GraphPoint::vertex(v), radius, false);
    points.insert(points.end(), f.points.begin(), f.points.end());
  }
  for (std::size_t i = 0; i < opt.pairs; ++i) points.push_back(random_tree_point(g, rng, 1 + i % 6));

  timed(report, "four_point", [&] {
    FourPointOptions fp;
    fp.rebase_limit = 8;
    FourPointReport r = check_four_point(g, points, fp);
    Json witness = nullptr;
    if (r.witness) {
      witness = Json::array();
      for (std::size_t k = 0; k < 3; ++k) witness.push_back(format_path(g, points[(*r.witness)[k]].path()));
    }
    report.results["four_point"] = to_json(r);
    report.results["four_point_violations"] = r.violations;
    report.check("four_point", r.violations == 0, witness);
  });

  timed(report, "reduction", [&] {
    Json reduce_witness = nullptr, hom_witness = nullptr, lift_witness = nullptr;
    for (std::size_t i = 0; i < opt.pairs; ++i) {
      EdgePath c = random_edge_path(g, rng, g.base_point(), 1 + i % 8);
      EdgePath d = random_edge_path(g, rng, c.end(g), 1 + (i / 8) % 8);
      RhoPath rc = reduce(g, c);
      if (reduce_witness.is_null() &&
          (reduce(g, rc.as_edge_path()) != rc || rc.length() > c.length() || rc.end(g) != c.end(g)))
        reduce_witness = format_path(g, c);
      if (hom_witness.is_null() && reduce(g, concat(g, c, d)) != concat_cancelled(g, rc, reduce(g, d)))
        hom_witness = Json::array({format_path(g, c), format_path(g, d)});
      Lift lift = lift_path(g, TreePoint::root(g), c);
      if (lift_witness.is_null() &&
          (lift.lifted_length != c.length() || lift.terminal.path() != rc || endpoint(g, lift.terminal) != c.end(g)))
        lift_witness = format_path(g, c);
    }
    report.check("reduction", reduce_witness.is_null(), reduce_witness);
    report.check("homomorphism", hom_witness.is_null(), hom_witness);
    report.check("url_lift", lift_witness.is_null(), lift_witness);
  });

  timed(report, "tree_metric", [&] {
    Json witness = nullptr;
    for (std::size_t i = 0; i < opt.pairs && witness.is_null(); ++i) {
      const TreePoint& p = points[rng() % points.size()];
      const TreePoint& q = points[rng() % points.size()];
      Rational d = tree_distance(p, q);
      if (d != tree_distance(q, p) || (d == 0) != (p == q) || d < graph_distance(g, endpoint(g, p), endpoint(g, q)))
        witness = Json::array({format_path(g, p.path()), format_path(g, q.path())});
    }
    report.check("tree_metric", witness.is_null(), witness);
  });

  timed(report, "quotient_metric", [&] {
    Json rows = Json::array();
    Json witness = nullptr;
    auto sample = vertices_and_midpoints(g);
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i; j < sample.size(); ++j) {
        HausdorffReport h = fiber_hausdorff_distance(g, sample[i], sample[j], hausdorff_radius(g, sample[i], sample[j]));
        Json row = to_json(h);
        row["x"] = g.format_point(sample[i]);
        row["y"] = g.format_point(sample[j]);
        if (witness.is_null() && (h.value != h.graph_distance || !h.attained)) witness = row;
        rows.push_back(std::move(row));
      }
    report.results["quotient_metric"] = std::move(rows);
    report.check("quotient_metric", witness.is_null(), witness);
  });

  timed(report, "free_action", [&] {
    Json witness = nullptr;
    std::vector<TreePoint> sample(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(points.size(), 24)));
    for (const Word& w : reduced_words(gens.rank(), 2)) {
      if (w.empty() || !witness.is_null()) continue;
      std::vector<TreePoint> moved;
      for (const auto& p : sample) moved.push_back(act(g, gens, w, p));
      for (std::size_t i = 0; i < sample.size() && witness.is_null(); ++i) {
        if (moved[i] == sample[i]) witness = {{"word", format_word(gens, w)}, {"fixed", format_path(g, sample[i].path())}};
        for (std::size_t j = i + 1; j < sample.size() && witness.is_null(); ++j)
          if (tree_distance(moved[i], moved[j]) != tree_distance(sample[i], sample[j]))
            witness = {{"word", format_word(gens, w)},
                       {"pair", {format_path(g, sample[i].path()), format_path(g, sample[j].path())}}};
      }
    }
    report.check("free_action", witness.is_null(), witness);
  });

  timed(report, "orbit", [&] {
    // Every letter crosses its own non-tree edge, so long words leave the ball.
    Rational shortest;
    for (const auto& gen : gens.all())
      if (shortest == 0 || g.edge(gen.edge).length < shortest) shortest = g.edge(gen.edge).length;
    std::set<TreePoint> orbit;
    if (gens.rank() > 0) {
      auto max_len = static_cast<std::size_t>(boost::multiprecision::numerator(radius / shortest) /
                                              boost::multiprecision::denominator(radius / shortest));
      for (const Word& w : reduced_words(gens.rank(), max_len)) {
        RhoPath loop = evaluate_word(g, gens, w);
        if (loop.length() <= radius) orbit.insert(TreePoint(g, loop));
      }
    } else {
      orbit.insert(TreePoint::root(g));
    }
    auto f = fiber(g, g.base_point(), radius, false);
    std::set<TreePoint> expected(f.points.begin(), f.points.end());
    report.results["orbit_size"] = orbit.size();
    report.check("orbit_equals_fiber", orbit == expected,
                 orbit == expected ? Json(nullptr) : Json({{"orbit", orbit.size()}, {"fiber", expected.size()}}));
  });

  if (opt.fiber) {
    timed(report, "fiber", [&] {
      GraphPoint x = [&] {
        try {
          return g.parse_point(*opt.fiber);
        } catch (const std::exception& ex) {
          throw InputError(ex.what());
        }
      }();
      FiberReport f = fiber(g, x, radius);
      bool ok = std::set<TreePoint>(f.points.begin(), f.points.end()).size() == f.points.size();
      for (const auto& p : f.points) ok = ok && endpoint(g, p) == x && p.length() <= radius;
      report.results["fiber"] = to_json(g, f);
      report.check("fiber", ok);
    });
  }
  return finish(report, common, out);
}

// ---------------------------------------------------------------------------

struct CoverOptions {
  std::string graph;
  std::string subgroup;
  std::size_t bound = 4;
  std::size_t hang_depth = 1;
  std::string dot_path;
  std::string graph_path;
};

int cmd_cover(const CoverOptions& opt, const CommonOptions& common, std::ostream& out) {
  RunReport report;
  report.command = "cover";
  MetricGraph g = [&] {
    std::string text = read_file(opt.graph, report);
    try {
      return parse_graph(text);
    } catch (const std::exception& ex) {
      throw InputError(opt.graph + ": " + ex.what());
    }
  }();
  GeneratorSet gens = generators(g);
  SubgroupSpec G = [&] {
    std::string text = read_file(opt.subgroup, report);
    try {
      return parse_subgroup(gens, text);
    } catch (const std::exception& ex) {
      throw InputError(opt.subgroup + ": " + ex.what());
    }
  }();
  FoldOptions fo;
  fo.hang_depth = opt.hang_depth;
  CoverGraph cv = fold(g, gens, G, fo);

  Json& res = report.results;
  res["base_rank"] = gens.rank();
  res["sheets"] = cv.sheets().vertex_count();
  res["core_sheets"] = cv.core_sheets();
  res["complete"] = cv.complete();
  res["index"] = cv.index() ? Json(*cv.index()) : Json(nullptr);
  res["vertices"] = cv.space().vertex_count();
  res["edges"] = cv.space().edge_count();
  res["rank"] = cv.rank();
  res["isomorphic_to_base"] = cv.index() == std::optional<std::size_t>(1);

  timed(report, "lifts", [&] {
    Json lifts = Json::object();
    for (std::size_t i = 0; i < gens.rank(); ++i) {
      Word w = Word::generator(i);
      lifts[format_word(gens, w)] = lifts_as_loop(g, gens, cv, w) ? "closed" : "open";
    }
    Json witness = nullptr;
    for (const auto& w : G.generators) {
      bool closed = lifts_as_loop(g, gens, cv, w);
      lifts[format_word(gens, w)] = closed ? "closed" : "open";
      if (!closed && witness.is_null()) witness = format_word(gens, w);
    }
    res["lifts"] = std::move(lifts);
    report.check("subgroup_lifts_closed", witness.is_null(), witness);
  });

  timed(report, "universality", [&] {
    UniversalityReport u = is_g_universal(g, gens, cv, G, opt.bound);
    res["universality"] = to_json(gens, u);
    report.check("g_universal", u.pass, u.witness ? Json(format_word(gens, *u.witness)) : Json(nullptr));
  });

  if (cv.complete()) {
    timed(report, "submetry", [&] {
      Json witness = nullptr;
      for (std::size_t p = 0; p < cv.space().vertex_count() && witness.is_null(); ++p)
        for (std::size_t q = 0; q < g.vertex_count() && witness.is_null(); ++q) {
          GraphPoint cp = GraphPoint::vertex(p), bq = GraphPoint::vertex(q);
          if (fiber_min_distance(cv, cp, bq) != graph_distance(g, cv.project(cp), bq))
            witness = Json::array({cv.space().format_point(cp), g.format_point(bq)});
        }
      report.check("submetry", witness.is_null(), witness);
    });
  }

  timed(report, "deck", [&] {
    DeckReport deck = deck_transformations(g, gens, cv, G);
    res["deck"] = to_json(gens, deck);
    if (G.claimed_normal) {
      bool ok = !deck.violating_conjugate && (!cv.complete() || deck.normal_by_action);
      Json witness = deck.violating_conjugate ? Json(format_word(gens, *deck.violating_conjugate)) : Json(nullptr);
      report.check("normality", ok, witness);
    }
  });

  if (!opt.dot_path.empty()) {
    std::ofstream dot(opt.dot_path, std::ios::binary);
    if (!dot) throw InputError("cannot write " + opt.dot_path);
    dot << to_dot(g, gens, cv);
  }
  if (!opt.graph_path.empty()) {
    std::ofstream file(opt.graph_path, std::ios::binary);
    if (!file) throw InputError("cannot write " + opt.graph_path);
    file << write_graph(cv.space());
  }
  return finish(report, common, out);
}

// ---------------------------------------------------------------------------

struct EpsOptions {
  std::string cloud;
  std::string scales;
  std::vector<std::string> homotopy;
  std::size_t budget = 20000;
};

std::vector<Rational> parse_scales(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    Rational eps = parse_scale(item);
    if (eps <= 0) throw InputError("scale must be positive: " + item);
    if (!out.empty() && !(eps < out.back())) throw InputError("scales must be strictly descending");
    out.push_back(eps);
  }
  if (out.empty()) throw InputError("no scales given");
  return out;
}

int cmd_eps(const EpsOptions& opt, const CommonOptions& common, std::ostream& out) {
  RunReport report;
  report.command = "eps";
  PointCloud cloud = [&] {
    std::string text = read_file(opt.cloud, report);
    try {
      return parse_cloud(text);
    } catch (const std::exception& ex) {
      throw InputError(opt.cloud + ": " + ex.what());
    }
  }();
  std::vector<Rational> scales = parse_scales(opt.scales);
  std::vector<std::string> chain_text;
  for (const auto& path : opt.homotopy) chain_text.push_back(read_file(path, report));

  timed(report, "presentations", [&] {
    StabilizationReport st = detect_stabilization(cloud, scales);
    report.results["stabilization"] = to_json(st);
  });

  timed(report, "functoriality", [&] {
    std::size_t checked = 0, mismatches = 0;
    for (std::size_t i = 0; i + 2 < scales.size(); ++i) {
      EpsPresentation coarse(cloud, scales[i]), mid(cloud, scales[i + 1]), fine(cloud, scales[i + 2]);
      BondingMap fm = bonding_map(cloud, fine, mid), mc = bonding_map(cloud, mid, coarse),
                 fc = bonding_map(cloud, fine, coarse);
      mismatches += functoriality_mismatches(fm, mc, fc);
      checked += fc.images.size();
    }
    report.results["functoriality_checked"] = checked;
    report.check("functoriality", mismatches == 0, mismatches ? Json(mismatches) : Json(nullptr));
  });

  if (!opt.homotopy.empty()) {
    timed(report, "homotopy", [&] {
      Json verdicts = Json::array();
      bool sound = true;
      for (const auto& eps : scales) {
        auto chain = [&](std::size_t k) {
          try {
            return parse_chain(cloud, eps, chain_text[k]);
          } catch (const std::exception& ex) {
            throw InputError(opt.homotopy[k] + ": " + ex.what());
          }
        };
        EpsChain a = chain(0), b = chain(1);
        HomotopyResult h;
        try {
          h = eps_homotopic(cloud, a, b, opt.budget);
        } catch (const std::invalid_argument& ex) {
          throw InputError(ex.what());
        }
        for (std::size_t i = 1; i < h.moves.size(); ++i)
          sound = sound && is_single_move(cloud, eps, h.moves[i - 1], h.moves[i]);
        verdicts.push_back({{"eps", to_json(eps)},
                            {"verdict", to_string(h.verdict)},
                            {"method", h.method},
                            {"explored", h.explored},
                            {"moves", h.moves.empty() ? 0 : h.moves.size() - 1}});
      }
      report.results["homotopy"] = std::move(verdicts);
      report.check("homotopy_moves", sound);
    });
  }
  return finish(report, common, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering trees, subgroup covers and scale-eps covers of metric graphs and point clouds",
               "rtcover"};
  app.require_subcommand(1);
  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json", common.json_path, "write the JSON report here (`-` for stdout)");
    sub->add_flag("--timings", common.timings, "include wall-clock timings in the report");
  };

  TreeOptions tree;
  auto* tree_cmd = app.add_subcommand("tree", "covering tree checks on a metric graph");
  tree_cmd->add_option("graph", tree.graph)->required();
  tree_cmd->add_option("--pairs", tree.pairs, "number of random samples");
  tree_cmd->add_option("--seed", tree.seed, "seed for the random samples");
  tree_cmd->add_option("--fiber", tree.fiber, "list the fiber over this point");
  tree_cmd->add_option("--radius", tree.radius, "truncation radius for fibers");
  add_common(tree_cmd);

  CoverOptions cover;
  auto* cover_cmd = app.add_subcommand("cover", "subgroup cover of a metric graph");
  cover_cmd->add_option("graph", cover.graph)->required();
  cover_cmd->add_option("subgroup", cover.subgroup)->required();
  cover_cmd->add_option("--bound", cover.bound, "word length bound for the universality sweep");
  cover_cmd->add_option("--hang-depth", cover.hang_depth, "depth of hangs on incomplete covers");
  cover_cmd->add_option("--dot", cover.dot_path, "write a Graphviz rendering of the cover");
  cover_cmd->add_option("--graph-out", cover.graph_path, "write the cover in the graph file format");
  add_common(cover_cmd);

  EpsOptions eps;
  auto* eps_cmd = app.add_subcommand("eps", "scale-eps presentations of a finite metric space");
  eps_cmd->add_option("cloud", eps.cloud)->required();
  eps_cmd->add_option("--scales", eps.scales, "comma-separated, strictly descending")->required();
  eps_cmd->add_option("--homotopy", eps.homotopy, "two chain files")->expected(2);
  eps_cmd->add_option("--budget", eps.budget, "chains explored by the homotopy search");
  add_common(eps_cmd);

  std::vector<std::string> argv_store{"rtcover"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& ex) {
    err << "rtcover: " << ex.what() << '\n';
    return exit_input_error;
  }

  try {
    if (tree_cmd->parsed()) return cmd_tree(tree, common, out);
    if (cover_cmd->parsed()) return cmd_cover(cover, common, out);
    return cmd_eps(eps, common, out);
  } catch (const InputError& ex) {
    err << "rtcover: " << ex.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& ex) {
    err << "rtcover: internal error: " << ex.what() << '\n';
    return exit_check_failed;
  }
}

}  // namespace rtcover
