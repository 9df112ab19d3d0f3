// io.cpp
#include "chspindle/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace chspindle {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string norm_column_name(const NormRequest& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "norm_%d_%g_%g", r.s, r.gamma, r.p);
  return buf;
}

std::string series_csv(const DiagnosticsSeries& s, const std::vector<NormRequest>& norms) {
  std::string csv = "t,energy,mass,grad_sq";
  for (const auto& r : norms) csv += "," + norm_column_name(r);
  csv += "\n";
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    csv += format_double(s.t[k]) + "," + format_double(s.energy[k]) + "," +
           format_double(s.mass[k]) + "," + format_double(s.grad_sq[k]);
    for (double v : s.norms[k]) csv += "," + format_double(v);
    csv += "\n";
  }
  return csv;
}

std::string fits_csv(const std::vector<FitRow>& rows) {
  std::string csv = "t,m,rho_hat,r2\n";
  for (const auto& r : rows)
    csv += format_double(r.t) + "," + std::to_string(r.m) + "," + format_double(r.rho_hat) + "," +
           format_double(r.r2) + "\n";
  return csv;
}

void write_snapshot(const std::string& dir, int step, double t, const Discretization& D, Field& u) {
  char stem[32];
  std::snprintf(stem, sizeof(stem), "snap_%06d", step);
  const std::filesystem::path base = std::filesystem::path(dir) / stem;

  const Eigen::MatrixXd& ph = D.physical(u);
  {
    std::ofstream bin(base.string() + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open snapshot: " + base.string() + ".bin");
    bin.write(reinterpret_cast<const char*>(ph.data()),
              std::streamsize(sizeof(double)) * std::streamsize(ph.size()));
  }

  using json = nlohmann::ordered_json;
  json j;
  j["time"] = t;
  j["step"] = step;
  j["n_radial"] = D.n_radial();
  j["n_theta"] = D.n_theta;
  j["layout"] = "column-major n_radial x n_theta (radial index fastest), float64 little-endian";
  j["data_file"] = std::string(stem) + ".bin";
  j["geometry"] = {{"alpha0", D.geom.alpha0},
                   {"alphaL", D.geom.alphaL},
                   {"length", D.geom.length},
                   {"collar_width", D.geom.collar_width}};
  j["x"] = D.grid.x;
  write_text_file(base.string() + ".json", j.dump(2) + "\n");
}

}  // namespace chspindle
