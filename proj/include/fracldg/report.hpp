#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracldg/ldg.hpp"

namespace fracldg {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRow {
  double s = 0.0;
  int k = 1;
  FluxVariant flux = FluxVariant::MinusInterior;
  double theta = 5.0;
  double h = 0.0;
  int elements = 0;
  int dofs = 0;
  double tau = 0.0;
  double l2_error = 0.0;
  std::optional<double> rate;  // empty on the first row of each series
};

struct ReportMetadata {
  double tau = 0.0;
  double T = 1.0;
  int quad_order = 0;
  double solver_tol = 1e-12;
  std::string version = kVersion;
};

struct ConvergenceReport {
  ReportMetadata meta;
  std::vector<ReportRow> rows;
};

// Observed order between consecutive meshes: ln(e1/e2)/ln(h1/h2). Throws
// std::domain_error on nonpositive input or h1 == h2.
double rate(double e1, double e2, double h1, double h2);

std::string flux_name(FluxVariant flux);
FluxVariant flux_from_name(const std::string& name);

// CSV with '#' metadata header lines and the exact column set
// s,k,flux,theta,h,K,dofs,tau,l2_error,rate. Numbers carry 17 significant
// digits so a re-parse reproduces the report bit-exactly.
void write_csv(const ConvergenceReport& report, std::ostream& out);
ConvergenceReport read_csv(std::istream& in);

// Console table in the style of a per-s error/rate listing.
void print_table(const ConvergenceReport& report, std::ostream& out);

}  // namespace fracldg
