// geogap command-line front end: geometry specs in, machine-readable
// gap/reconstruction/verification reports out.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "geogap/report.hpp"
#include "geogap/version.hpp"

namespace {

using namespace geogap;

Vec parse_vec(const std::string& text, const char* what) {
  Vec out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      while (used < tok.size() && std::isspace((unsigned char)tok[used])) ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw ConfigError(std::string(what) + ": bad number '" + tok + "'");
    }
  }
  if (out.empty())
    throw ConfigError(std::string(what) + ": empty coordinate list");
  return out;
}

std::string load_geometry_text(const std::string& arg) {
  for (char c : arg) {
    if (std::isspace((unsigned char)c)) continue;
    if (c == '{') return arg; // inline JSON
    break;
  }
  std::ifstream in(arg);
  if (!in) throw ConfigError("cannot open geometry file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << text;
}

struct CommonArgs {
  std::string geometry;
  std::string point, u, v;
  double s_max = 0.1;
  int levels = 6;
  int steps_per_unit = 512;
  bool allow_large_s = false;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_uv) {
  cmd->add_option("--geometry", a.geometry,
                  "geometry spec: file path or inline JSON")
      ->required();
  cmd->add_option("--point", a.point, "base point, comma-separated")
      ->required();
  if (with_uv) {
    cmd->add_option("--u", a.u, "first tangent, comma-separated")->required();
    cmd->add_option("--v", a.v, "second tangent, comma-separated")->required();
  }
  cmd->add_option("--s-max", a.s_max, "largest ladder parameter");
  cmd->add_option("--levels", a.levels, "ladder depth (s_max * 2^-k)");
  cmd->add_option("--steps-per-unit", a.steps_per_unit,
                  "integrator steps per unit parameter");
  cmd->add_flag("--allow-large-s", a.allow_large_s,
                "override the |s| <= 0.5 trust interval");
  cmd->add_option("--out", a.out, "output path ('-' or empty for stdout)");
  cmd->add_option("--format", a.format, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
}

RunConfig make_config(const CommonArgs& a, const ConnectionChart& chart,
                      const GeometrySpec& spec, bool with_uv) {
  RunConfig cfg;
  cfg.geometry = spec;
  cfg.point = parse_vec(a.point, "--point");
  if (with_uv) {
    cfg.u = parse_vec(a.u, "--u");
    cfg.v = parse_vec(a.v, "--v");
  } else {
    cfg.u.assign(chart.dim, 0.0);
    cfg.v.assign(chart.dim, 0.0);
  }
  cfg.s_max = a.s_max;
  cfg.levels = a.levels;
  cfg.steps_per_unit = a.steps_per_unit;
  cfg.allow_large_s = a.allow_large_s;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic quadrilateral gap toolkit"};
  app.set_version_flag("--version", std::string("geogap ") + version_string);
  app.require_subcommand(1);

  CommonArgs gap_args, rec_args, bp_args, fb_args, tc_args;
  std::string rec_target = "torsion";
  double bp_r_max = 0.1;
  int bp_directions = 4096;
  std::string fb_frame;
  double fb_h = 1e-4;
  double tc_s_min = 1e-3;

  std::string oracle_model = "sphere";
  double oracle_radius = 1.0, oracle_s = 0.1;
  int oracle_levels = 6;
  std::string oracle_out;

  CLI::App* gap_cmd = app.add_subcommand(
      "gap", "measure the gap functions G_I, G_II over an s ladder");
  add_common(gap_cmd, gap_args, true);

  CLI::App* rec_cmd = app.add_subcommand(
      "reconstruct", "recover torsion (and curvature) from measured gaps");
  rec_cmd->add_option("target", rec_target, "torsion or curvature")
      ->check(CLI::IsMember({"torsion", "curvature"}))
      ->required();
  add_common(rec_cmd, rec_args, false);

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "closed-form quadrilateral vertices on the model surfaces");
  oracle_cmd->add_option("--model", oracle_model, "sphere or hyperboloid")
      ->check(CLI::IsMember({"sphere", "hyperboloid"}));
  oracle_cmd->add_option("--radius", oracle_radius, "model radius");
  oracle_cmd->add_option("--s", oracle_s, "leg parameter");
  oracle_cmd->add_option("--levels", oracle_levels, "extrapolation ladder depth");
  oracle_cmd->add_option("--out", oracle_out, "output path");

  CLI::App* bp_cmd = app.add_subcommand(
      "bertrand-puiseux", "curvature from geodesic circle circumferences");
  add_common(bp_cmd, bp_args, false);
  bp_cmd->add_option("--r-max", bp_r_max, "largest circle radius");
  bp_cmd->add_option("--directions", bp_directions,
                     "geodesic shots per circle (>= 64)");

  CLI::App* fb_cmd = app.add_subcommand(
      "frame-bracket", "verify the frame-flow bracket identities");
  add_common(fb_cmd, fb_args, false);
  fb_cmd->add_option("--frame", fb_frame,
                     "frame matrix, row-major comma list (default identity)");
  fb_cmd->add_option("--h-scale", fb_h, "finite-difference step scale");

  CLI::App* tc_cmd = app.add_subcommand(
      "taylor-check", "compare the ODE vertex P2 against its cubic expansion");
  add_common(tc_cmd, tc_args, true);
  tc_cmd->add_option("--s-min", tc_s_min, "smallest s in the log ladder");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gap_cmd->parsed()) {
      const GeometrySpec spec =
          parse_geometry_spec(load_geometry_text(gap_args.geometry));
      const ConnectionChart chart = resolve_geometry(spec);
      const RunConfig cfg = make_config(gap_args, chart, spec, true);
      const GapRun run = run_gap(chart, cfg);
      const bool json = gap_args.format != "csv";
      const bool csv = gap_args.format != "json";
      if (gap_args.format == "both") {
        if (gap_args.out.empty() || gap_args.out == "-")
          throw ConfigError("--format both requires --out BASE");
        write_output(gap_to_json(run, cfg), gap_args.out + ".json");
        write_output(gap_to_csv(run), gap_args.out + ".csv");
      } else if (json) {
        write_output(gap_to_json(run, cfg), gap_args.out);
      } else if (csv) {
        write_output(gap_to_csv(run), gap_args.out);
      }
    } else if (rec_cmd->parsed()) {
      const GeometrySpec spec =
          parse_geometry_spec(load_geometry_text(rec_args.geometry));
      const ConnectionChart chart = resolve_geometry(spec);
      const RunConfig cfg = make_config(rec_args, chart, spec, false);
      const ReconstructRun run =
          run_reconstruct(chart, cfg, rec_target == "curvature");
      write_output(reconstruct_to_json(run, cfg), rec_args.out);
    } else if (oracle_cmd->parsed()) {
      const auto model = oracle_model == "sphere"
                             ? oracle::Model::Sphere
                             : oracle::Model::Hyperboloid;
      const OracleRun run =
          run_oracle(model, oracle_radius, oracle_s, oracle_levels);
      write_output(oracle_to_json(run), oracle_out);
    } else if (bp_cmd->parsed()) {
      const GeometrySpec spec =
          parse_geometry_spec(load_geometry_text(bp_args.geometry));
      const ConnectionChart chart = resolve_geometry(spec);
      const RunConfig cfg = make_config(bp_args, chart, spec, false);
      const BpRun run = run_bertrand_puiseux(chart, cfg, bp_r_max,
                                             bp_args.levels, bp_directions);
      write_output(bp_to_json(run, cfg), bp_args.out);
    } else if (fb_cmd->parsed()) {
      const GeometrySpec spec =
          parse_geometry_spec(load_geometry_text(fb_args.geometry));
      const ConnectionChart chart = resolve_geometry(spec);
      const RunConfig cfg = make_config(fb_args, chart, spec, false);
      Mat frame = Mat::identity(chart.dim);
      if (!fb_frame.empty()) {
        const Vec entries = parse_vec(fb_frame, "--frame");
        if (int(entries.size()) != chart.dim * chart.dim)
          throw ConfigError("--frame needs dim^2 entries");
        for (int i = 0; i < chart.dim; ++i)
          for (int j = 0; j < chart.dim; ++j)
            frame(i, j) = entries[std::size_t(i) * chart.dim + j];
      }
      const FrameBracketRun run = run_frame_bracket(chart, cfg, frame, fb_h);
      write_output(frame_bracket_to_json(run, cfg), fb_args.out);
    } else if (tc_cmd->parsed()) {
      const GeometrySpec spec =
          parse_geometry_spec(load_geometry_text(tc_args.geometry));
      const ConnectionChart chart = resolve_geometry(spec);
      const RunConfig cfg = make_config(tc_args, chart, spec, true);
      const TaylorCheckRun run =
          run_taylor_check(chart, cfg, tc_s_min, tc_args.s_max, tc_args.levels);
      write_output(taylor_check_to_json(run, cfg), tc_args.out);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const FitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
