#include "rotavg/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace rotavg {

Report build_report(std::vector<MethodOutcome> methods, nlohmann::json metadata) {
  Report report;
  report.methods = std::move(methods);
  report.metadata = std::move(metadata);
  const std::size_t k = report.methods.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.geodesic.assign(k, std::vector<double>(k, nan));
  report.chordal.assign(k, std::vector<double>(k, nan));
  for (std::size_t a = 0; a < k; ++a) {
    const auto& ra = report.methods[a].average;
    if (!ra) continue;
    report.geodesic[a][a] = 0.0;
    report.chordal[a][a] = 0.0;
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto& rb = report.methods[b].average;
      if (!rb) continue;
      report.geodesic[a][b] = report.geodesic[b][a] = dist_geodesic(*ra, *rb);
      report.chordal[a][b] = report.chordal[b][a] = dist_chordal(*ra, *rb);
    }
  }
  return report;
}

namespace {

nlohmann::json matrix_json(const Matrix3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

nlohmann::json table_json(const Report& report, const std::vector<std::vector<double>>& table) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t a = 0; a < report.methods.size(); ++a) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t b = 0; b < report.methods.size(); ++b) {
      const double d = table[a][b];
      row[report.methods[b].method] = std::isnan(d) ? nlohmann::json(nullptr) : nlohmann::json(d);
    }
    out[report.methods[a].method] = row;
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["metadata"] = report.metadata;
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodOutcome& m : report.methods) {
    nlohmann::json e;
    e["method"] = m.method;
    e["status"] = m.status;
    if (m.average) {
      e["matrix"] = matrix_json(m.average->matrix());
      const UnitQuaternion q = rotation_to_quat(*m.average);
      e["quaternion"] = {q.w(), q.x(), q.y(), q.z()};
    }
    if (m.termination_time) e["termination_time"] = *m.termination_time;
    if (m.steps) e["steps"] = *m.steps;
    if (!m.message.empty()) e["message"] = m.message;
    methods.push_back(e);
  }
  j["methods"] = methods;
  j["distances"] = {{"geodesic", table_json(report, report.geodesic)},
                    {"chordal", table_json(report, report.chordal)}};
  return j;
}

namespace {

void print_table(std::ostream& out, const Report& report, const std::vector<std::vector<double>>& table,
                 const char* title) {
  out << title << '\n' << std::setw(12) << "";
  for (const MethodOutcome& m : report.methods) out << std::setw(14) << m.method;
  out << '\n';
  for (std::size_t a = 0; a < report.methods.size(); ++a) {
    out << std::setw(12) << report.methods[a].method;
    for (std::size_t b = 0; b < report.methods.size(); ++b) {
      if (std::isnan(table[a][b])) {
        out << std::setw(14) << "-";
      } else {
        out << std::setw(14) << std::setprecision(6) << std::scientific << table[a][b] << std::defaultfloat;
      }
    }
    out << '\n';
  }
}

}  // namespace

void print_report(std::ostream& out, const Report& report) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (auto it = report.metadata.begin(); it != report.metadata.end(); ++it) {
    out << it.key() << ": " << it.value().dump() << '\n';
  }
  for (const MethodOutcome& m : report.methods) {
    out << '\n' << "[" << m.method << "] status: " << m.status;
    if (m.termination_time) out << "  T = " << std::setprecision(6) << *m.termination_time;
    if (m.steps) out << "  steps = " << *m.steps;
    out << '\n';
    if (!m.message.empty()) out << "  " << m.message << '\n';
    if (m.average) {
      const Matrix3& r = m.average->matrix();
      out << std::fixed << std::setprecision(9);
      for (int i = 0; i < 3; ++i) {
        out << "  " << std::setw(13) << r(i, 0) << std::setw(13) << r(i, 1) << std::setw(13) << r(i, 2) << '\n';
      }
      const UnitQuaternion q = rotation_to_quat(*m.average);
      out << "  quaternion (w, x, y, z): " << q.w() << ' ' << q.x() << ' ' << q.y() << ' ' << q.z() << '\n';
      out << std::defaultfloat;
    }
  }
  if (report.methods.size() > 1) {
    out << '\n';
    print_table(out, report, report.geodesic, "geodesic distance [rad]");
    print_table(out, report, report.chordal, "chordal distance");
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace rotavg
