#pragma once

#include <optional>
#include <string>

#include "geogap/analysis.hpp"
#include "geogap/framebundle.hpp"
#include "geogap/geometry_spec.hpp"
#include "geogap/groundtruth.hpp"

namespace geogap {

/// Resolved configuration for a gap / reconstruct run. Reports embed it
/// verbatim so identical configs produce byte-identical output.
struct RunConfig {
  GeometrySpec geometry;
  Vec point;
  Vec u, v;
  double s_max = 0.1;
  int levels = 6;
  int steps_per_unit = 512;
  bool allow_large_s = false;
};

/// Validates dimensions, the base point against the chart domain, and the
/// trust interval on s (|s_max| <= 0.5 unless allow_large_s).
void validate_run_config(const RunConfig& cfg, const ConnectionChart& chart);

struct GapRun {
  GapLadder ladder;
  GapReport gi_order2, gii_order2;
  std::optional<GapReport> gi_order3, gii_order3;
  std::string order3_skip_reason; // nonempty iff order-3 section skipped
  Vec torsion_expected;                  // -T(u,v) from the chart
  std::optional<Vec> curvature_expected; // (1/2) R(u,v)(u+v) when computable
};

GapRun run_gap(const ConnectionChart& chart, const RunConfig& cfg);
std::string gap_to_json(const GapRun& run, const RunConfig& cfg);
std::string gap_to_csv(const GapRun& run);

struct ReconstructRun {
  bool want_curvature = false;
  TorsionRecovery torsion;
  Tensor3 torsion_analytic;
  std::optional<CurvatureRecovery> curvature;
  std::optional<Tensor4> curvature_analytic;
};

ReconstructRun run_reconstruct(const ConnectionChart& chart,
                               const RunConfig& cfg, bool want_curvature);
std::string reconstruct_to_json(const ReconstructRun& run, const RunConfig& cfg);

struct BpRun {
  BertrandPuiseuxResult result;
  std::optional<double> kappa_analytic;
  int n_directions = 0;
  double r_max = 0.1;
  int levels = 5;
};

BpRun run_bertrand_puiseux(const ConnectionChart& chart, const RunConfig& cfg,
                           double r_max, int levels, int n_directions);
std::string bp_to_json(const BpRun& run, const RunConfig& cfg);

struct FrameBracketRun {
  FrameBracketReport report;
  Mat frame;
  double h_scale = 1e-4;
};

FrameBracketRun run_frame_bracket(const ConnectionChart& chart,
                                  const RunConfig& cfg, const Mat& frame,
                                  double h_scale);
std::string frame_bracket_to_json(const FrameBracketRun& run,
                                  const RunConfig& cfg);

struct TaylorCheckRun {
  std::vector<double> s_values;
  std::vector<double> p2_deviation; // |P2_ode - P2_taylor|
  std::vector<double> q2_deviation;
  double slope = 0.0; // log-log slope of the P2 deviation
};

TaylorCheckRun run_taylor_check(const ConnectionChart& chart,
                                const RunConfig& cfg, double s_min,
                                double s_max, int levels);
std::string taylor_check_to_json(const TaylorCheckRun& run,
                                 const RunConfig& cfg);

struct OracleRun {
  oracle::Model model;
  double radius = 1.0;
  double s = 0.1;
  QuadVertices vertices;
  Vec closed_form_limit;      // (0, kappa/2, -kappa/2)
  Vec extrapolated_gi_limit;  // (P4-P0)/s^3 ladder limit
  Vec extrapolated_gii_limit; // (Q2-P2)/s^3 ladder limit
};

OracleRun run_oracle(oracle::Model model, double radius, double s, int levels);
std::string oracle_to_json(const OracleRun& run);

} // namespace geogap
