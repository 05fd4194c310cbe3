#include "cli.hpp"

#include "equipart/charclass.hpp"
#include "equipart/curve.hpp"
#include "equipart/graycode.hpp"
#include "equipart/io.hpp"
#include "equipart/sigma.hpp"
#include "equipart/solver.hpp"
#include "equipart/svg.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace equipart::cli {
namespace {

struct Common {
  unsigned seed = 0;
  unsigned threads = 0;
  std::string output;
  std::string format = "json";
  std::string svg;
  double target = -1.0;
};

void add_common(CLI::App* app, Common& c, bool svg) {
  app->add_option("--seed", c.seed, "Seed for the deterministic start sequences (default 0)");
  app->add_option("--threads", c.threads, "Worker threads (default: available cores)");
  app->add_option("--output,-o", c.output, "Write the result here instead of stdout");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "svg"}));
  app->add_option("--target", c.target, "Residual target override");
  if (svg) app->add_option("--svg", c.svg, "Also write an SVG picture to this path");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
  } else {
    write_file(c.output, text);
  }
}

Vec parse_point(const std::string& s, int dim) {
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad coordinate \"" + item + "\" in point \"" + s + "\"");
    }
  }
  if (static_cast<int>(xs.size()) != dim) throw InputError("point \"" + s + "\" needs " + std::to_string(dim) + " coordinates");
  return to_vec(xs);
}

std::string report_text(const SolveReport& r) {
  std::ostringstream o;
  o.precision(17);
  o << "status " << to_string(r.status) << "\nmethod " << r.method << "\nresidual " << r.residual << "\niterations "
    << r.iterations << "\n";
  for (const Vec& u : r.config.u) {
    try {
      const Hyperplane h = unlift(u);
      o << "hyperplane a =";
      for (int k = 0; k < h.a.size(); ++k) o << ' ' << h.a(k);
      o << "  c = " << h.c << "\n";
    } catch (const InputError&) {
      o << "hyperplane at infinity\n";
    }
  }
  if (!r.message.empty()) o << "message " << r.message << "\n";
  return o.str();
}

int finish_report(const Common& c, std::ostream& out, std::ostream& err, const SolveReport& r, const Json& extra = {}) {
  if (c.format == "text") {
    emit(c, out, report_text(r));
  } else {
    Json j = report_to_json(r);
    if (extra.is_object())
      for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    emit(c, out, dump(j) + "\n");
  }
  if (!r.converged()) {
    err << "solver did not converge: " << to_string(r.status) << (r.message.empty() ? "" : " (" + r.message + ")") << "\n";
    return kExitNumerics;
  }
  return kExitOk;
}

SolveOptions solve_options(const Common& c, double default_target) {
  SolveOptions o;
  o.seed = c.seed;
  o.target = c.target > 0.0 ? c.target : default_target;
  return o;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equipartitions of measures by hyperplanes in dimensions 2 to 4"};
  app.require_subcommand(1);
  Common common;

  std::string input;
  auto* s2 = app.add_subcommand("solve2d", "Two lines quartering a planar measure");
  s2->add_option("input", input, "Measure JSON (file path or inline)")->required();
  add_common(s2, common, true);

  std::vector<std::string> through;
  auto* s3 = app.add_subcommand("solve3d", "Three planes cutting a measure on R^3 into eight equal parts");
  s3->add_option("input", input, "Measure JSON (file path or inline)")->required();
  s3->add_option("--through", through, "One or two points x,y,z the first plane must contain")->expected(1, 2);
  add_common(s3, common, false);

  std::string symmetry, subspace, normal;
  bool no_fallback = false;
  auto* s4 = app.add_subcommand("solve4d", "Four hyperplanes for a symmetric measure on R^4");
  s4->add_option("input", input, "Measure JSON (file path or inline)")->required();
  s4->add_option("--symmetry", symmetry, "Kind of symmetry")->required()->check(CLI::IsMember({"plane", "center", "mirror3"}));
  s4->add_option("--subspace", subspace,
                 "Symmetry subspace JSON {\"point\": [...], \"directions\": [[...], ...]} (2 directions for plane, "
                 "3 for mirror3, none for center)")
      ->required();
  s4->add_option("--normal", normal, "center: normal x1,x2,x3,x4 of the prescribed first hyperplane (default e1)");
  s4->add_flag("--no-fallback", no_fallback, "plane: report continuation failure instead of trying multi-start refinement");
  add_common(s4, common, false);

  int d = 0;
  std::string plane;
  auto* cl = app.add_subcommand("cloud", "Hyperplanes whose open orthants hold few points of a 16d-point cloud in R^4");
  cl->add_option("input", input, "Points JSON: a points measure or {\"points\": [[...]]}")->required();
  cl->add_option("--d", d, "Points per orthant; the cloud must have 16 d points")->required()->check(CLI::PositiveNumber);
  cl->add_option("--plane", plane, "Symmetry 2-plane JSON; without it the bound is 2 d");
  add_common(cl, common, false);

  std::string gray_action;
  int n = 4;
  bool list = false;
  auto* gc = app.add_subcommand("graycode", "Enumerate and classify cyclic Gray codes");
  gc->add_option("action", gray_action, "enumerate | classify | check")->required()->check(CLI::IsMember({"enumerate", "classify", "check"}));
  gc->add_option("--n", n, "Number of bits (2..4)")->check(CLI::Range(2, 4));
  gc->add_flag("--list", list, "enumerate: include every cycle");
  add_common(gc, common, false);
  gc->footer("Prints text unless --format json is given.");

  std::string curve_action;
  int phases = 8;
  auto* cv = app.add_subcommand("curve", "Equipartitions of the trigonometric curve built from the balanced Gray code");
  cv->add_option("action", curve_action, "trace")->required()->check(CLI::IsMember({"trace"}));
  cv->add_option("--phases", phases, "Number of sampled phases in [0, pi/8)")->check(CLI::Range(1, 4096));
  add_common(cv, common, true);

  auto* sw = app.add_subcommand("swcheck", "Stiefel-Whitney evaluations on the torus and projective plane");
  add_common(sw, common, false);
  sw->footer("Prints the fixed text report unless --format json is given.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (common.threads > 0) set_worker_count(common.threads);
  try {
    if (*s2) {
      const Measure m = measure_from_json(json_argument(input));
      if (m.dim() != 2) throw InputError("solve2d needs a measure with dim 2");
      const SolveReport r = solve_2d(m, solve_options(common, 1e-10));
      if (!common.svg.empty()) write_file(common.svg, svg_planar(m, r.config));
      if (common.format == "svg") {
        emit(common, out, svg_planar(m, r.config));
        return r.converged() ? kExitOk : kExitNumerics;
      }
      return finish_report(common, out, err, r);
    }
    if (*s3) {
      const Measure m = measure_from_json(json_argument(input));
      if (m.dim() != 3) throw InputError("solve3d needs a measure with dim 3");
      std::optional<Vec> a, b;
      if (!through.empty()) a = parse_point(through[0], 3);
      if (through.size() > 1) b = parse_point(through[1], 3);
      const SolveReport r = solve_3d(m, a, b, solve_options(common, 1e-8));
      Json extra = Json::object();
      if (a && r.config.count() == 3) {
        const Hyperplane h = unlift(r.config.u[0]);
        extra["through_distances"] = Json::array({std::abs(h.signed_distance(*a))});
        if (b) extra["through_distances"].push_back(std::abs(h.signed_distance(*b)));
      }
      return finish_report(common, out, err, r, extra);
    }
    if (*s4) {
      const Measure m = measure_from_json(json_argument(input));
      if (m.dim() != 4) throw InputError("solve4d needs a measure with dim 4");
      const Json sj = json_argument(subspace);
      SolveReport r;
      if (symmetry == "plane") {
        Symmetric4dOptions o;
        o.seed = common.seed;
        if (common.target > 0.0) o.target = common.target;
        o.allow_fallback = !no_fallback;
        r = solve_4d_symmetric(m, subspace_from_json(sj), o);
      } else if (symmetry == "center") {
        const Vec center = vec_from_json(sj.at("point"), "subspace point");
        std::optional<Vec> nv;
        if (!normal.empty()) nv = parse_point(normal, 4);
        r = solve_4d_center(m, center, nv, solve_options(common, 1e-9));
      } else {
        r = solve_4d_mirror3(m, subspace_from_json(sj), solve_options(common, 1e-9));
      }
      return finish_report(common, out, err, r);
    }
    if (*cl) {
      const Json j = json_argument(input);
      std::vector<Vec> pts;
      if (j.contains("points")) {
        for (const auto& p : j["points"]) pts.push_back(vec_from_json(p, "point"));
      } else if (j.is_array()) {
        for (const auto& p : j) pts.push_back(vec_from_json(p, "point"));
      } else {
        throw InputError("cloud: expected {\"points\": [...]} or an array of points");
      }
      CloudOptions o;
      o.seed = common.seed;
      if (!plane.empty()) o.plane = subspace_from_json(json_argument(plane));
      const CloudReport r = partition_point_cloud(pts, d, o);
      if (common.format == "text") {
        std::ostringstream t;
        t << report_text(r.solve) << "counts";
        for (int k : r.counts) t << ' ' << k;
        t << "\nbound " << r.bound << "\nmax_count " << r.max_count << "\ncertified " << (r.certified ? "yes" : "no") << "\n";
        emit(common, out, t.str());
      } else {
        emit(common, out, dump(cloud_report_to_json(r)) + "\n");
      }
      if (!r.certified) {
        err << "bound not certified after " << r.rounds << " smoothing rounds (numerics failure, not a counterexample)\n";
        return kExitNumerics;
      }
      return kExitOk;
    }
    if (*gc) {
      Json j;
      std::ostringstream t;
      int code = kExitOk;
      if (gray_action == "enumerate") {
        const auto e = gray::enumerate_cycles(n);
        j = {{"n", n}, {"raw", e.raw}, {"undirected", e.undirected}};
        if (list) {
          j["cycles"] = Json::array();
          for (const auto& c : e.cycles) {
            Json words = Json::array();
            for (unsigned w : c.words) words.push_back(gray::word_string(w, n));
            j["cycles"].push_back(words);
          }
        }
        t << "n = " << n << ": " << e.raw << " directed cycles from 0, " << e.undirected << " undirected cycles\n";
      } else if (gray_action == "classify") {
        const auto c = gray::classify_balanced(n);
        j = {{"n", n}, {"raw_balanced", c.raw_balanced}, {"classes", c.classes.size()}};
        j["representatives"] = Json::array();
        for (const auto& rep : c.classes) {
          std::string s;
          for (int tr : gray::transitions(rep)) s += std::to_string(tr + 1);
          j["representatives"].push_back(s);
        }
        j["subgroups"] = Json::array();
        for (const auto& sg : c.subgroups) j["subgroups"].push_back({{"group", sg.group.name()}, {"classes", sg.classes}});
        t << c.raw_balanced << " balanced directed cycles from 0\n"
          << c.classes.size() << " equivalence class" << (c.classes.size() == 1 ? "" : "es") << "\n";
        for (const auto& sg : c.subgroups) t << "  " << sg.group.name() << ": " << sg.classes << "\n";
      } else {
        if (n != 4) throw InputError("graycode check needs --n 4");
        const auto code4 = gray::canonical_balanced_code();
        const auto sc = gray::reversal_swap_check(code4);
        std::string trs;
        for (int tr : gray::transitions(code4)) trs += std::to_string(tr + 1);
        j = {{"code", trs}, {"holds", sc.holds}};
        j["pairs"] = Json::array();
        for (auto [p, q] : sc.pairs) j["pairs"].push_back({p + 1, q + 1});
        t << "transitions " << trs << "\nreversal equals a two-track swap: " << (sc.holds ? "yes" : "no") << "\n";
        for (auto [p, q] : sc.pairs) t << "  tracks " << p + 1 << " and " << q + 1 << "\n";
        if (!sc.holds) code = kExitNumerics;
      }
      const bool json = gc->count("--format") > 0 && common.format == "json";
      emit(common, out, json ? dump(j) + "\n" : t.str());
      return code;
    }
    if (*cv) {
      std::vector<SolutionPoint> pts;
      Json arr = Json::array();
      std::ostringstream t;
      t.precision(17);
      bool ok = true;
      const Measure g = gamma4_measure();
      for (int k = 0; k < phases; ++k) {
        const double phase = (k + 0.5) * (kPi / 8) / phases;
        const SolutionPoint sp = sigma_theta_config(phase);
        const double res = residual(g, sp.config);
        Json counts = Json::array();
        for (const Vec& u : sp.config.u) counts.push_back(gamma4_intersections(u).size());
        ok = ok && res < 1e-10;
        arr.push_back({{"phase", phase}, {"residual", res}, {"intersections", counts}, {"u", config_to_json(sp.config)["u"]}});
        t << "phase " << phase << " residual " << res << "\n";
        pts.push_back(sp);
      }
      if (!common.svg.empty()) write_file(common.svg, svg_rings(pts));
      if (common.format == "svg") {
        emit(common, out, svg_rings(pts));
      } else {
        emit(common, out, common.format == "text" ? t.str() : dump(Json{{"points", arr}}) + "\n");
      }
      return ok ? kExitOk : kExitNumerics;
    }
    if (*sw) {
      const ObstructionReport r = reproduce_obstruction_inputs();
      if (sw->count("--format") > 0 && common.format == "json") {
        const Json j = {{"torus", r.torus},
                        {"projective_plane", r.projective},
                        {"w2_torus", r.w2_torus.to_string()},
                        {"w2_projective_plane", r.w2_projective.to_string()},
                        {"w2_virtual_difference", r.w2_cor.to_string()}};
        emit(common, out, dump(j) + "\n");
      } else {
        emit(common, out, format_report(r));
      }
      return r.values() == std::make_pair(1, 1) ? kExitOk : kExitNumerics;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace equipart::cli
