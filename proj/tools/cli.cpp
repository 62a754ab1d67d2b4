#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include "geofat/doubling.hpp"
#include "geofat/fatness.hpp"
#include "geofat/generators.hpp"
#include "geofat/geodesic.hpp"
#include "geofat/oracle.hpp"
#include "geofat/polygon_io.hpp"
#include "geofat/proximity.hpp"
#include "geofat/scene.hpp"

namespace geofat::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family, polygon, points, path, output, svg, from, to, center, mode;
  int m = 2, n = 16, samples = 256, dirs = 64, radii = 16, m_lo = 1, m_hi = 3;
  double eps = 1e-3, width = 0.02, depth = 1.0, M = 8.0, radius = 0.0, density = 0.0, pitch = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, beta, gamma, nu;
};

Point parse_point(const std::string& s, const char* flag) {
  double x, y;
  int used = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%n", &x, &y, &used) != 2 || used != static_cast<int>(s.size()))
    throw UsageError(std::string(flag) + " expects x,y");
  return {x, y};
}

std::uint64_t need_seed(const Options& o, const char* cmd) {
  if (!o.seed) throw UsageError(std::string(cmd) + " requires --seed");
  return *o.seed;
}

void need(const std::string& value, const char* flag, const char* cmd) {
  if (value.empty()) throw UsageError(std::string(cmd) + " requires " + flag);
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) out << text;
  else write_text_file(path, text);
}

GeodesicEngine load_engine(const std::string& path) {
  return GeodesicEngine(polygon_from_json(read_json_file(path)).polygon);
}

std::vector<Point> load_points(const std::string& path) { return points_from_json(read_json_file(path)); }

std::string marks_path(const std::string& out) {
  const std::string ext = ".json";
  const bool has_ext = out.size() >= ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0;
  return (has_ext ? out.substr(0, out.size() - ext.size()) : out) + ".marks.json";
}

int cmd_generate(const Options& o, std::ostream&) {
  MarkedPolygon mp;
  if (o.family == "pm") mp = gen_Pm(o.m, o.eps);
  else if (o.family == "pstar") mp = gen_Pstar(o.m, o.eps);
  else if (o.family == "comb") mp = gen_comb(o.n, o.width, o.depth);
  else if (o.family == "convex") mp.polygon = gen_random_convex(o.n, need_seed(o, "generate --family convex"));
  else mp.polygon = gen_fat_blob(o.n, need_seed(o, "generate --family blob"));
  Json marks = Json::object();
  for (const auto& [name, p] : mp.marks) marks[name] = to_json(p);
  write_text_file(o.output, to_json(mp.polygon).dump(2) + "\n");
  write_text_file(marks_path(o.output), Json{{"marks", marks}}.dump(2) + "\n");
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const LoadedPolygon lp = polygon_from_json(read_json_file(o.polygon));
  const ValidationReport rep = validate(lp.polygon);
  Json defects = Json::array();
  for (const Defect& d : rep.defects)
    defects.push_back({{"kind", to_string(d.kind)}, {"ring", d.ring}, {"index", d.index}, {"detail", d.detail}});
  emit({{"ok", rep.ok()},
        {"reoriented", lp.reoriented},
        {"vertices", lp.polygon.vertex_count()},
        {"defects", defects}},
       o.output, out);
  return rep.ok() ? 0 : 1;
}

int cmd_dist(const Options& o, std::ostream& out) {
  const GeodesicEngine engine = load_engine(o.polygon);
  const Point a = parse_point(o.from, "--from"), b = parse_point(o.to, "--to");
  const GeodesicPath path = engine.shortest_path(a, b);
  emit({{"from", to_json(a)}, {"to", to_json(b)}, {"length", path.length}, {"waypoints", to_json(path.waypoints)}},
       o.output, out);
  return 0;
}

int cmd_rch(const Options& o, std::ostream& out) {
  const GeodesicEngine engine = load_engine(o.polygon);
  const auto S = load_points(o.points);
  const RelativeHull h = relative_convex_hull(engine, S);
  Json j{{"boundary", to_json(h.boundary)}, {"perimeter", h.perimeter}, {"anchors", to_json(h.anchors)}};
  const double diam = euclidean_diameter(h.boundary);
  j["perimeter_ratio"] = diam > 0 ? Json(h.perimeter / diam) : Json(nullptr);
  emit(j, o.output, out);
  return 0;
}

int cmd_closest_pair(const Options& o, std::ostream& out) {
  const std::uint64_t seed = need_seed(o, "closest-pair");
  const GeodesicEngine engine = load_engine(o.polygon);
  const auto Q = load_points(o.points);
  const ClosestPairResult r = closest_pair(engine, Q, o.M, seed);
  emit({{"i", r.i},
        {"j", r.j},
        {"a", to_json(r.a)},
        {"b", to_json(r.b)},
        {"distance", r.distance},
        {"n_points", Q.size()},
        {"n_distance_queries", r.n_distance_queries},
        {"n_rebuilds", r.n_rebuilds},
        {"M", o.M},
        {"seed", seed}},
       o.output, out);
  return 0;
}

int cmd_coreset(const Options& o, std::ostream& out) {
  const GeodesicEngine engine = load_engine(o.polygon);
  const auto S = load_points(o.points);
  const Coreset c = coreset_furthest(engine, S, o.eps, o.nu);
  emit({{"indices", c.indices},
        {"points", to_json(c.points)},
        {"epsilon", c.epsilon},
        {"nu", c.nu},
        {"hull_perimeter", c.hull_perimeter},
        {"spacing", c.spacing},
        {"size_bound", static_cast<long>(std::ceil(2 * c.nu / c.epsilon)) + 1}},
       o.output, out);
  return 0;
}

int cmd_spanner(const Options& o, std::ostream& out) {
  const GeodesicEngine engine = load_engine(o.polygon);
  const auto S = load_points(o.points);
  const auto D = distance_matrix(engine, S);
  const SpannerGraph g = greedy_spanner(S, D, o.eps);
  Json edges = Json::array();
  for (const SpannerEdge& e : g.edges) edges.push_back({e.i, e.j, e.weight});
  emit({{"n_points", S.size()},
        {"epsilon", g.epsilon},
        {"n_edges", g.edges.size()},
        {"edges", edges},
        {"max_stretch", max_stretch(g, D)}},
       o.output, out);
  return 0;
}

int cmd_fatness(const Options& o, std::ostream& out) {
  if (!o.gamma && !(o.alpha && o.beta)) throw UsageError("fatness needs --gamma and/or both --alpha and --beta");
  const LoadedPolygon lp = polygon_from_json(read_json_file(o.polygon));
  Json j = Json::object();
  if (o.alpha && o.beta) {
    const GeodesicEngine engine(lp.polygon);
    const CoveredReport r = check_alpha_beta_covered(engine, {*o.alpha, *o.beta}, o.samples, o.dirs);
    Json fails = Json::array();
    for (const BoundarySample& s : r.failures) fails.push_back({{"point", to_json(s.point)}, {"arc", s.arc_position}});
    j["covered"] = {{"alpha", *o.alpha},
                    {"beta", *o.beta},
                    {"ok", r.ok()},
                    {"tested", r.tested},
                    {"diameter", r.diameter},
                    {"side", r.side},
                    {"failures", fails},
                    {"vertex_failures", to_json(r.vertex_failures)}};
  }
  if (o.gamma) {
    const std::uint64_t seed = need_seed(o, "fatness --gamma");
    const LocalFatReport r = check_locally_fat(lp.polygon, *o.gamma, o.samples, o.radii, seed);
    j["local"] = {{"gamma", r.gamma},
                  {"ok", r.ok()},
                  {"min_ratio", r.min_ratio},
                  {"witness_center", to_json(r.witness_center)},
                  {"witness_radius", r.witness_radius},
                  {"disks", r.samples},
                  {"seed", seed}};
  }
  emit(j, o.output, out);
  return 0;
}

int cmd_doubling(const Options& o, std::ostream& out) {
  if (o.mode == "growth") {
    const double density = o.density > 0 ? o.density : 0.01;
    const GrowthTable t = doubling_growth_experiment(o.m_lo, o.m_hi, o.eps, density);
    Json rows = Json::array();
    for (const GrowthRow& r : t.rows)
      rows.push_back({{"m", r.m},
                      {"n_vertices", r.n_vertices},
                      {"lower_bound", r.lower_bound},
                      {"ratio", r.lower_bound / std::cbrt(static_cast<double>(r.n_vertices))}});
    Json j{{"eps", o.eps}, {"density", density}, {"rows", rows}, {"complete", t.complete}};
    if (!t.complete) j["error"] = t.error;
    emit(j, o.output, out);
    return 0;
  }
  need(o.polygon, "--polygon", "doubling");
  need(o.center, "--center", "doubling");
  if (!(o.radius > 0)) throw UsageError("doubling requires a positive --radius");
  const GeodesicEngine engine = load_engine(o.polygon);
  const Point p = parse_point(o.center, "--center");
  const double density = o.density > 0 ? o.density : o.radius / 64;
  Json j{{"mode", o.mode}, {"center", to_json(p)}, {"radius", o.radius}, {"density", density}};
  Scene scene;
  scene.add({engine.polygon(), {"black", "#e8e8e8", 1.0, 1.0}});
  scene.add({PointSet{geodesic_disk_sample(engine, p, o.radius, density)}, {"none", "#9ab", 0.3, 0.6}});
  if (o.mode == "cover") {
    if (!o.alpha || !o.beta) throw UsageError("doubling --mode cover requires --alpha and --beta");
    const CoverResult r = grid_cover(engine, p, o.radius, {*o.alpha, *o.beta}, density);
    j["grid"] = r.grid;
    j["n_cover_centers"] = r.cover_centers.size();
    j["cover_radius"] = r.cover_radius;
    j["samples"] = r.samples;
    j["uncovered"] = to_json(r.uncovered);
    j["ok"] = r.uncovered.empty();
    scene.add({PointSet{r.cover_centers}, {"none", "#36c", 0.5, 1.0}});
    scene.add({PointSet{r.uncovered}, {"none", "red", 1.0, 1.0}});
  } else {
    const PackingResult r = packing_lower_bound(engine, p, o.radius, density);
    j["separation"] = r.separation;
    j["samples"] = r.samples;
    j["witnesses"] = to_json(r.witnesses);
    j["lower_bound"] = r.witnesses.size();
    scene.add({PointSet{r.witnesses}, {"none", "red", 1.5, 1.0}});
  }
  if (!o.svg.empty()) write_text_file(o.svg, render_svg(scene));
  emit(j, o.output, out);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const GeodesicEngine engine = load_engine(o.polygon);
  Json j = Json::object();
  bool agree = true;
  if (!o.from.empty() || !o.to.empty()) {
    const Point a = parse_point(o.from, "--from"), b = parse_point(o.to, "--to");
    const double pitch = o.pitch > 0 ? o.pitch : euclidean_diameter(engine.vertices()) / 200;
    const DenseGridOracle grid(engine.polygon(), pitch);
    const double e = engine.distance(a, b), g = grid.distance(a, b);
    const bool ok = g >= e - 1e-9 && g <= 1.0824 * e + 4 * pitch;
    agree = agree && ok;
    j["distance"] = {{"engine", e}, {"grid_oracle", g}, {"pitch", pitch}, {"within_bracket", ok}};
  }
  if (!o.points.empty()) {
    const std::uint64_t seed = need_seed(o, "verify --points");
    const auto Q = load_points(o.points);
    const ClosestPairResult fast = closest_pair(engine, Q, o.M, seed);
    const PairResult brute = brute_closest_pair(engine, Q);
    const bool ok = fast.distance == brute.distance;
    agree = agree && ok;
    j["closest_pair"] = {{"fast", fast.distance}, {"brute", brute.distance}, {"equal", ok}, {"seed", seed}};
  }
  if (j.empty()) throw UsageError("verify needs --from/--to or --points");
  j["agree"] = agree;
  emit(j, o.output, out);
  return agree ? 0 : 1;
}

int cmd_render(const Options& o, std::ostream&) {
  const LoadedPolygon lp = polygon_from_json(read_json_file(o.polygon));
  Scene scene;
  scene.add({lp.polygon, {"black", "#e8e8e8", 1.0, 1.0}});
  if (!o.path.empty()) {
    const Json pj = read_json_file(o.path);
    scene.add({Polyline{points_from_json(pj.is_object() ? pj.at("waypoints") : pj)}, {"red", "none", 1.5, 1.0}});
  }
  if (!o.points.empty()) scene.add({PointSet{load_points(o.points)}, {"none", "#36c", 1.0, 1.0}});
  write_text_file(o.output, render_svg(scene));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"geodesic metric toolkit for fat polygons", "geofat"};
  app.require_subcommand(1);
  Options o;

  auto polygon = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--polygon", o.polygon, "polygon JSON file");
    if (required) opt->required();
  };
  auto output = [&](CLI::App* c, bool required = false) {
    auto* opt = c->add_option("-o,--output", o.output, "output file");
    if (required) opt->required();
  };
  auto seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed"); };

  auto* gen = app.add_subcommand("generate", "generate a polygon family member");
  gen->add_option("--family", o.family)->required()->check(CLI::IsMember({"pm", "pstar", "comb", "convex", "blob"}));
  gen->add_option("--m", o.m, "recursion depth for pm and pstar");
  gen->add_option("--eps", o.eps, "corridor width for pm and pstar");
  gen->add_option("--n", o.n, "teeth for comb, vertices for convex and blob");
  gen->add_option("--width", o.width, "comb tooth width");
  gen->add_option("--depth", o.depth, "comb tooth depth");
  seed(gen);
  output(gen, true);

  auto* val = app.add_subcommand("validate", "report polygon defects");
  polygon(val);
  output(val);

  auto* dst = app.add_subcommand("dist", "geodesic distance and shortest path");
  polygon(dst);
  dst->add_option("--from", o.from, "x,y")->required();
  dst->add_option("--to", o.to, "x,y")->required();
  output(dst);

  auto* rch = app.add_subcommand("rch", "relative convex hull of a point set");
  polygon(rch);
  rch->add_option("--points", o.points)->required();
  output(rch);

  auto* cp = app.add_subcommand("closest-pair", "geodesic closest pair");
  polygon(cp);
  cp->add_option("--points", o.points)->required();
  cp->add_option("--M", o.M, "grid constant, cell side = delta/(2M)")->capture_default_str();
  seed(cp);
  output(cp);

  auto* cs = app.add_subcommand("coreset", "furthest-neighbour coreset");
  polygon(cs);
  cs->add_option("--points", o.points)->required();
  cs->add_option("--eps", o.eps)->required();
  cs->add_option("--nu", o.nu, "perimeter constant, default 1.25 x measured ratio");
  output(cs);

  auto* sp = app.add_subcommand("spanner", "greedy geodesic spanner");
  polygon(sp);
  sp->add_option("--points", o.points)->required();
  sp->add_option("--eps", o.eps)->required();
  output(sp);

  auto* fat = app.add_subcommand("fatness", "sampled fatness certificates");
  polygon(fat);
  fat->add_option("--alpha", o.alpha, "radians");
  fat->add_option("--beta", o.beta);
  fat->add_option("--gamma", o.gamma);
  fat->add_option("--samples", o.samples, "boundary samples or disk centers")->capture_default_str();
  fat->add_option("--dirs", o.dirs, "witness directions per boundary sample")->capture_default_str();
  fat->add_option("--radii", o.radii, "radii per disk center")->capture_default_str();
  seed(fat);
  output(fat);

  auto* dbl = app.add_subcommand("doubling", "doubling constant certificates");
  polygon(dbl, false);
  dbl->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"cover", "packing", "growth"}));
  dbl->add_option("--center", o.center, "x,y");
  dbl->add_option("--radius", o.radius);
  dbl->add_option("--alpha", o.alpha);
  dbl->add_option("--beta", o.beta);
  dbl->add_option("--density", o.density, "disk sample pitch, default radius/64 (0.01 for growth)");
  dbl->add_option("--m-lo", o.m_lo)->capture_default_str();
  dbl->add_option("--m-hi", o.m_hi)->capture_default_str();
  dbl->add_option("--eps", o.eps, "corridor width for growth")->capture_default_str();
  dbl->add_option("--svg", o.svg, "write an SVG of the sample and result");
  output(dbl);

  auto* ver = app.add_subcommand("verify", "cross-check against the brute-force oracles");
  polygon(ver);
  ver->add_option("--from", o.from, "x,y");
  ver->add_option("--to", o.to, "x,y");
  ver->add_option("--pitch", o.pitch, "grid oracle pitch, default diameter/200");
  ver->add_option("--points", o.points);
  ver->add_option("--M", o.M)->capture_default_str();
  seed(ver);
  output(ver);

  auto* ren = app.add_subcommand("render", "render a scene to SVG");
  polygon(ren);
  ren->add_option("--path", o.path, "path JSON (array or object with waypoints)");
  ren->add_option("--points", o.points);
  output(ren, true);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  auto fail = [&](const char* kind, const std::exception& e) {
    err << Json{{"error", kind}, {"message", e.what()}}.dump() << "\n";
    return 1;
  };
  try {
    if (gen->parsed()) return cmd_generate(o, out);
    if (val->parsed()) return cmd_validate(o, out);
    if (dst->parsed()) return cmd_dist(o, out);
    if (rch->parsed()) return cmd_rch(o, out);
    if (cp->parsed()) return cmd_closest_pair(o, out);
    if (cs->parsed()) return cmd_coreset(o, out);
    if (sp->parsed()) return cmd_spanner(o, out);
    if (fat->parsed()) return cmd_fatness(o, out);
    if (dbl->parsed()) return cmd_doubling(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    return cmd_render(o, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const InvalidPolygon& e) {
    return fail("invalid_polygon", e);
  } catch (const InvalidQuery& e) {
    return fail("invalid_query", e);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e);
  } catch (const std::exception& e) {
    return fail("error", e);
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace geofat::cli
