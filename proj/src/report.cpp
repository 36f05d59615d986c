#include "fracldg/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracldg {

double rate(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0) || !(e2 > 0) || !(h1 > 0) || !(h2 > 0))
    throw std::domain_error("rate: errors and mesh sizes must be positive");
  if (h1 == h2) throw std::domain_error("rate: mesh sizes must differ");
  return std::log(e1 / e2) / std::log(h1 / h2);
}

std::string flux_name(FluxVariant flux) {
  return flux == FluxVariant::PlusInterior ? "plus" : "minus";
}

FluxVariant flux_from_name(const std::string& name) {
  if (name == "plus") return FluxVariant::PlusInterior;
  if (name == "minus") return FluxVariant::MinusInterior;
  throw std::invalid_argument("unknown flux variant: " + name);
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "# tau=" << fmt(report.meta.tau) << "\n";
  out << "# T=" << fmt(report.meta.T) << "\n";
  out << "# quad_order=" << report.meta.quad_order << "\n";
  out << "# solver_tol=" << fmt(report.meta.solver_tol) << "\n";
  out << "# version=" << report.meta.version << "\n";
  out << "s,k,flux,theta,h,K,dofs,tau,l2_error,rate\n";
  for (const ReportRow& r : report.rows) {
    out << fmt(r.s) << ',' << r.k << ',' << flux_name(r.flux) << ',' << fmt(r.theta)
        << ',' << fmt(r.h) << ',' << r.elements << ',' << r.dofs << ',' << fmt(r.tau)
        << ',' << fmt(r.l2_error) << ',' << (r.rate ? fmt(*r.rate) : "") << "\n";
  }
}

ConvergenceReport read_csv(std::istream& in) {
  ConvergenceReport report;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "tau") report.meta.tau = std::stod(value);
      else if (key == "T") report.meta.T = std::stod(value);
      else if (key == "quad_order") report.meta.quad_order = std::stoi(value);
      else if (key == "solver_tol") report.meta.solver_tol = std::stod(value);
      else if (key == "version") report.meta.version = value;
      continue;
    }
    if (!header_seen) {
      if (line != "s,k,flux,theta,h,K,dofs,tau,l2_error,rate")
        throw std::runtime_error("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (ss.eof() && !line.empty() && line.back() == ',') fields.push_back("");
    if (fields.size() != 10)
      throw std::runtime_error("bad CSV row (expected 10 fields): " + line);
    ReportRow row;
    row.s = std::stod(fields[0]);
    row.k = std::stoi(fields[1]);
    row.flux = flux_from_name(fields[2]);
    row.theta = std::stod(fields[3]);
    row.h = std::stod(fields[4]);
    row.elements = std::stoi(fields[5]);
    row.dofs = std::stoi(fields[6]);
    row.tau = std::stod(fields[7]);
    row.l2_error = std::stod(fields[8]);
    if (!fields[9].empty()) row.rate = std::stod(fields[9]);
    report.rows.push_back(row);
  }
  return report;
}

void print_table(const ConvergenceReport& report, std::ostream& out) {
  out << "  s     k  flux   h           K      dofs    L2 error      rate\n";
  for (const ReportRow& r : report.rows) {
    char buf[160];
    if (r.rate)
      std::snprintf(buf, sizeof(buf), "  %-5g %d  %-5s  %-10.4g  %-6d %-7d %-12.4e  %.4f\n",
                    r.s, r.k, flux_name(r.flux).c_str(), r.h, r.elements, r.dofs,
                    r.l2_error, *r.rate);
    else
      std::snprintf(buf, sizeof(buf), "  %-5g %d  %-5s  %-10.4g  %-6d %-7d %-12.4e  -\n",
                    r.s, r.k, flux_name(r.flux).c_str(), r.h, r.elements, r.dofs,
                    r.l2_error);
    out << buf;
  }
}

}  // namespace fracldg
