#include "geogap/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "geogap/version.hpp"

namespace geogap {

namespace {

using json = nlohmann::ordered_json;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json fit_to_json(const GapReport& r) {
  json j;
  j["limit"] = vec_to_json(r.limit);
  j["next_coeff"] = vec_to_json(r.next_coeff);
  j["residual_rms"] = r.residual_rms;
  j["slope_estimate"] = r.slope_estimate;
  j["condition"] = r.condition;
  return j;
}

json tensor3_to_json(const Tensor3& t) {
  // Keys "i,m,n" printed 1-based; zero entries skipped for readability.
  json j = json::object();
  char key[32];
  for (int i = 0; i < t.dim(); ++i)
    for (int m = 0; m < t.dim(); ++m)
      for (int n = 0; n < t.dim(); ++n) {
        if (t(i, m, n) == 0.0) continue;
        std::snprintf(key, sizeof key, "%d,%d,%d", i + 1, m + 1, n + 1);
        j[key] = t(i, m, n);
      }
  return j;
}

json tensor4_to_json(const Tensor4& t) {
  json j = json::object();
  char key[40];
  for (int i = 0; i < t.dim(); ++i)
    for (int p = 0; p < t.dim(); ++p)
      for (int q = 0; q < t.dim(); ++q)
        for (int r = 0; r < t.dim(); ++r) {
          if (t(i, p, q, r) == 0.0) continue;
          std::snprintf(key, sizeof key, "%d,%d,%d,%d", i + 1, p + 1, q + 1,
                        r + 1);
          j[key] = t(i, p, q, r);
        }
  return j;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["geometry"] = json::parse(cfg.geometry.canonical_json);
  j["point"] = vec_to_json(cfg.point);
  j["u"] = vec_to_json(cfg.u);
  j["v"] = vec_to_json(cfg.v);
  j["s_max"] = cfg.s_max;
  j["levels"] = cfg.levels;
  j["steps_per_unit"] = cfg.steps_per_unit;
  return j;
}

json report_header(const char* command, const RunConfig* cfg) {
  json j;
  j["tool"] = "geogap";
  j["version"] = version_string;
  j["command"] = command;
  if (cfg) j["config"] = config_to_json(*cfg);
  return j;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double loglog_slope(const std::vector<double>& s,
                    const std::vector<double>& val) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(val[i] > 0.0)) continue;
    const double x = std::log(s[i]), y = std::log(val[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

void validate_run_config(const RunConfig& cfg, const ConnectionChart& chart) {
  const int d = chart.dim;
  if (int(cfg.point.size()) != d)
    throw ConfigError("config: point dimension != chart dimension " +
                      std::to_string(d));
  if (int(cfg.u.size()) != d || int(cfg.v.size()) != d)
    throw ConfigError("config: u/v dimension != chart dimension");
  if (!all_finite(cfg.point) || !all_finite(cfg.u) || !all_finite(cfg.v))
    throw ConfigError("config: non-finite point or tangent");
  if (!chart.domain.contains(cfg.point))
    throw ConfigError("config: base point outside the chart domain");
  if (!(cfg.s_max > 0.0)) throw ConfigError("config: s_max must be positive");
  if (cfg.s_max > default_trust_s && !cfg.allow_large_s)
    throw ConfigError("config: s_max exceeds the trust interval 0.5; pass "
                      "--allow-large-s to override");
  if (cfg.levels < 3) throw ConfigError("config: need at least 3 ladder levels");
  if (cfg.steps_per_unit < 16)
    throw ConfigError("config: steps_per_unit must be >= 16");
}

GapRun run_gap(const ConnectionChart& chart, const RunConfig& cfg) {
  validate_run_config(cfg, chart);
  const IntegratorConfig icfg{cfg.steps_per_unit};
  const FrameTriple triple{cfg.point, cfg.u, cfg.v};
  const auto ladder = geometric_ladder(cfg.s_max, cfg.levels);

  GapRun run;
  run.ladder = sample_gaps(chart, triple, ladder, icfg);
  run.gi_order2 = make_gap_report(run.ladder.s_values, run.ladder.gap_gi, 2);
  run.gii_order2 = make_gap_report(run.ladder.s_values, run.ladder.gap_gii, 2);

  const Tensor3 torsion = torsion_at(chart, cfg.point);
  run.torsion_expected = vscale(-1.0, contract_gamma(torsion, cfg.u, cfg.v));

  const double guard = std::max(vnorm_inf(run.gi_order2.limit),
                                vnorm_inf(run.gii_order2.limit));
  if (guard <= torsion_guard_threshold) {
    run.gi_order3 = make_gap_report(run.ladder.s_values, run.ladder.gap_gi, 3);
    run.gii_order3 = make_gap_report(run.ladder.s_values, run.ladder.gap_gii, 3);
    try {
      const Tensor4 riemann = curvature_at(chart, cfg.point);
      run.curvature_expected = vscale(
          0.5, curvature_apply(riemann, cfg.u, cfg.v, vadd(cfg.u, cfg.v)));
    } catch (const Error&) {
      // analytic comparison unavailable (e.g. FD stencil exits the domain)
    }
  } else {
    run.order3_skip_reason =
        "skipped: torsion present (order-2 limit magnitude " + fmt17(guard) +
        " > " + fmt17(torsion_guard_threshold) + ")";
  }
  return run;
}

std::string gap_to_json(const GapRun& run, const RunConfig& cfg) {
  json j = report_header("gap", &cfg);
  json ladder;
  ladder["s"] = vec_to_json(run.ladder.s_values);
  json gi = json::array(), gii = json::array();
  for (const Vec& g : run.ladder.gap_gi) gi.push_back(vec_to_json(g));
  for (const Vec& g : run.ladder.gap_gii) gii.push_back(vec_to_json(g));
  ladder["GI"] = gi;
  ladder["GII"] = gii;
  j["ladder"] = ladder;

  json order2;
  order2["GI"] = fit_to_json(run.gi_order2);
  order2["GII"] = fit_to_json(run.gii_order2);
  order2["torsion_expected"] = vec_to_json(run.torsion_expected);
  j["order2"] = order2;

  if (run.gi_order3) {
    json order3;
    order3["GI"] = fit_to_json(*run.gi_order3);
    order3["GII"] = fit_to_json(*run.gii_order3);
    if (run.curvature_expected)
      order3["curvature_expected"] = vec_to_json(*run.curvature_expected);
    j["order3"] = order3;
  } else {
    j["order3_skipped"] = run.order3_skip_reason;
  }
  return j.dump(2) + "\n";
}

std::string gap_to_csv(const GapRun& run) {
  const std::size_t d =
      run.ladder.gap_gi.empty() ? 0 : run.ladder.gap_gi.front().size();
  std::string out = "s";
  for (std::size_t i = 1; i <= d; ++i) out += ",GI_" + std::to_string(i);
  for (std::size_t i = 1; i <= d; ++i) out += ",GII_" + std::to_string(i);
  out += "\n";
  for (std::size_t k = 0; k < run.ladder.s_values.size(); ++k) {
    out += fmt17(run.ladder.s_values[k]);
    for (std::size_t i = 0; i < d; ++i)
      out += "," + fmt17(run.ladder.gap_gi[k][i]);
    for (std::size_t i = 0; i < d; ++i)
      out += "," + fmt17(run.ladder.gap_gii[k][i]);
    out += "\n";
  }
  return out;
}

ReconstructRun run_reconstruct(const ConnectionChart& chart,
                               const RunConfig& cfg, bool want_curvature) {
  validate_run_config(cfg, chart);
  const IntegratorConfig icfg{cfg.steps_per_unit};
  const auto ladder = geometric_ladder(cfg.s_max, cfg.levels);
  ReconstructRun run;
  run.want_curvature = want_curvature;
  run.torsion = torsion_from_gaps(chart, cfg.point, icfg, ladder);
  run.torsion_analytic = torsion_at(chart, cfg.point);
  if (want_curvature) {
    run.curvature = curvature_from_gaps(chart, cfg.point, icfg, ladder);
    try {
      run.curvature_analytic = curvature_at(chart, cfg.point);
    } catch (const Error&) {
    }
  }
  return run;
}

std::string reconstruct_to_json(const ReconstructRun& run,
                                const RunConfig& cfg) {
  json j = report_header("reconstruct", &cfg);
  j["target"] = run.want_curvature ? "curvature" : "torsion";
  json tor;
  tor["entries"] = tensor3_to_json(run.torsion.torsion);
  tor["max_abs_entry"] = run.torsion.max_abs_entry;
  tor["max_fit_residual"] = run.torsion.max_fit_residual;
  tor["analytic_entries"] = tensor3_to_json(run.torsion_analytic);
  j["torsion"] = tor;
  if (run.curvature) {
    json cur;
    cur["entries"] = tensor4_to_json(run.curvature->curvature);
    cur["max_fit_residual"] = run.curvature->max_fit_residual;
    cur["torsion_guard_value"] = run.curvature->torsion_guard_value;
    if (run.curvature_analytic)
      cur["analytic_entries"] = tensor4_to_json(*run.curvature_analytic);
    j["curvature"] = cur;
  }
  return j.dump(2) + "\n";
}

BpRun run_bertrand_puiseux(const ConnectionChart& chart, const RunConfig& cfg,
                           double r_max, int levels, int n_directions) {
  validate_run_config(cfg, chart);
  BpRun run;
  run.n_directions = n_directions;
  run.r_max = r_max;
  run.levels = levels;
  run.result = bertrand_puiseux(chart, cfg.point,
                                geometric_ladder(r_max, levels), n_directions,
                                IntegratorConfig{cfg.steps_per_unit});
  try {
    run.kappa_analytic = gaussian_curvature(chart, cfg.point);
  } catch (const Error&) {
  }
  return run;
}

std::string bp_to_json(const BpRun& run, const RunConfig& cfg) {
  json j = report_header("bertrand-puiseux", &cfg);
  j["n_directions"] = run.n_directions;
  j["r_max"] = run.r_max;
  j["levels"] = run.levels;
  j["radii"] = vec_to_json(run.result.radii);
  j["deficit_ratio"] = vec_to_json(run.result.deficit_ratio);
  j["kappa_hat"] = run.result.kappa_hat;
  j["fit_residual_rms"] = run.result.fit.residual_rms;
  if (run.kappa_analytic) j["kappa_analytic"] = *run.kappa_analytic;
  return j.dump(2) + "\n";
}

FrameBracketRun run_frame_bracket(const ConnectionChart& chart,
                                  const RunConfig& cfg, const Mat& frame,
                                  double h_scale) {
  validate_run_config(cfg, chart);
  FrameBracketRun run;
  run.frame = frame;
  run.h_scale = h_scale;
  run.report = verify_frame_bracket(chart, FramePoint{cfg.point, frame},
                                    h_scale);
  return run;
}

std::string frame_bracket_to_json(const FrameBracketRun& run,
                                  const RunConfig& cfg) {
  json j = report_header("frame-bracket", &cfg);
  json frame = json::array();
  for (int i = 0; i < run.frame.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < run.frame.dim(); ++k) row.push_back(run.frame(i, k));
    frame.push_back(row);
  }
  j["frame"] = frame;
  j["h_scale"] = run.h_scale;
  j["symmetric"] = run.report.symmetric;
  j["max_base_deviation"] = run.report.max_base_deviation;
  if (run.report.max_vertical_deviation)
    j["max_vertical_deviation"] = *run.report.max_vertical_deviation;
  else
    j["vertical_comparison"] = "skipped: connection not symmetric";
  return j.dump(2) + "\n";
}

TaylorCheckRun run_taylor_check(const ConnectionChart& chart,
                                const RunConfig& cfg, double s_min,
                                double s_max, int levels) {
  validate_run_config(cfg, chart);
  if (!(s_min > 0.0 && s_min < s_max))
    throw ConfigError("taylor-check: need 0 < s_min < s_max");
  if (levels < 2) throw ConfigError("taylor-check: need at least 2 levels");
  const IntegratorConfig icfg{cfg.steps_per_unit};
  const FrameTriple triple{cfg.point, cfg.u, cfg.v};
  TaylorCheckRun run;
  for (int k = 0; k < levels; ++k) {
    const double t = levels == 1 ? 0.0 : double(k) / (levels - 1);
    const double s = s_min * std::pow(s_max / s_min, t);
    const QuadVertices q = quad_vertices(chart, triple, s, icfg);
    const TaylorP2 taylor = taylor_p2(chart, triple, s);
    run.s_values.push_back(s);
    run.p2_deviation.push_back(vnorm2(vsub(q.P2, taylor.p2)));
    run.q2_deviation.push_back(vnorm2(vsub(q.Q2, taylor.q2)));
  }
  run.slope = loglog_slope(run.s_values, run.p2_deviation);
  return run;
}

std::string taylor_check_to_json(const TaylorCheckRun& run,
                                 const RunConfig& cfg) {
  json j = report_header("taylor-check", &cfg);
  j["s"] = vec_to_json(run.s_values);
  j["p2_deviation"] = vec_to_json(run.p2_deviation);
  j["q2_deviation"] = vec_to_json(run.q2_deviation);
  j["p2_deviation_slope"] = run.slope;
  return j.dump(2) + "\n";
}

OracleRun run_oracle(oracle::Model model, double radius, double s, int levels) {
  OracleRun run;
  run.model = model;
  run.radius = radius;
  run.s = s;
  run.vertices = oracle::oracle_vertices(model, radius, s);
  run.closed_form_limit = oracle::oracle_gap_limits(model, radius);
  if (s > 0.0 && levels >= 3) {
    Samples gi, gii;
    for (const double sk : geometric_ladder(s, levels)) {
      const QuadVertices q = oracle::oracle_vertices(model, radius, sk);
      gi.emplace_back(sk, vsub(q.P4, q.P0));
      gii.emplace_back(sk, vsub(q.Q2, q.P2));
    }
    run.extrapolated_gi_limit = estimate_limit(gi, 3).limit;
    run.extrapolated_gii_limit = estimate_limit(gii, 3).limit;
  }
  return run;
}

std::string oracle_to_json(const OracleRun& run) {
  json j = report_header("oracle", nullptr);
  j["model"] = run.model == oracle::Model::Sphere ? "sphere" : "hyperboloid";
  j["radius"] = run.radius;
  j["s"] = run.s;
  json verts;
  verts["P0"] = vec_to_json(run.vertices.P0);
  verts["P1"] = vec_to_json(run.vertices.P1);
  verts["P2"] = vec_to_json(run.vertices.P2);
  verts["P3"] = vec_to_json(run.vertices.P3);
  verts["P4"] = vec_to_json(run.vertices.P4);
  verts["Q1"] = vec_to_json(run.vertices.Q1);
  verts["Q2"] = vec_to_json(run.vertices.Q2);
  j["vertices"] = verts;
  j["closed_form_order3_limit"] = vec_to_json(run.closed_form_limit);
  if (!run.extrapolated_gi_limit.empty()) {
    j["P4_minus_P0_over_s3_limit"] = vec_to_json(run.extrapolated_gi_limit);
    j["Q2_minus_P2_over_s3_limit"] = vec_to_json(run.extrapolated_gii_limit);
  }
  return j.dump(2) + "\n";
}

} // namespace geogap
