#include "bo/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace bo::io {

namespace {
using ordered_json = nlohmann::ordered_json;

void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw std::runtime_error("cannot create output dir " + p.string());
}
}  // namespace

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::filesystem::path write_records_csv(const std::filesystem::path& out_dir,
                                        const ExperimentResult& result) {
  ensure_dir(out_dir);
  const auto path = out_dir / (result.name + ".csv");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "# schema: " << result.name << "-v" << kCsvFormatVersion << "\n";
  if (!result.records.empty()) {
    const auto& head = result.records.front().cols;
    for (std::size_t i = 0; i < head.size(); ++i)
      os << (i ? "," : "") << head[i].first;
    os << "\n";
    for (const auto& rec : result.records) {
      if (rec.cols.size() != head.size())
        throw std::runtime_error("csv: ragged record in " + result.name);
      for (std::size_t i = 0; i < rec.cols.size(); ++i) {
        if (rec.cols[i].first != head[i].first)
          throw std::runtime_error("csv: column mismatch in " + result.name);
        os << (i ? "," : "") << format17(rec.cols[i].second);
      }
      os << "\n";
    }
  }
  return path;
}

void export_field(const Field& f, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  const auto& g = f.grid();
  os << "# bo-waves field v" << kCsvFormatVersion << "\n";
  os << "# L=" << format17(g.half_length()) << " N=" << g.size() << "\n";
  os << "x,u\n";
  for (std::size_t j = 0; j < g.size(); ++j)
    os << format17(g.node(j)) << "," << format17(f.values()[j]) << "\n";
}

Field import_field(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  double L = 0.0;
  std::size_t n = 0;
  RealVec values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto lp = line.find("L=");
      const auto np = line.find("N=");
      if (lp != std::string::npos && np != std::string::npos) {
        L = std::strtod(line.c_str() + lp + 2, nullptr);
        n = std::strtoull(line.c_str() + np + 2, nullptr, 10);
      }
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (n == 0 || values.size() != n)
    throw std::runtime_error("field file corrupt: " + path.string());
  return Field(make_grid(L, n), std::move(values));
}

namespace {

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["name"] = v.name;
  j["pass"] = v.pass;
  j["measured"] = format17(v.measured);
  j["target"] = format17(v.target);
  j["tol"] = format17(v.tol);
  j["detail"] = v.detail;
  j["supplementary"] = v.name.ends_with("_supplementary");
  return j;
}

}  // namespace

bool all_required_pass(const std::vector<ExperimentResult>& results) {
  for (const auto& r : results)
    for (const auto& v : r.verdicts)
      if (!v.pass && !v.name.ends_with("_supplementary")) return false;
  return true;
}

void write_verdicts(const std::filesystem::path& out_dir,
                    const std::vector<ExperimentResult>& results) {
  ensure_dir(out_dir);
  ordered_json j;
  j["format_version"] = kCsvFormatVersion;
  j["all_required_pass"] = all_required_pass(results);
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    for (const auto& v : r.verdicts) {
      ordered_json e = verdict_json(v);
      e["experiment"] = r.name;
      arr.push_back(std::move(e));
    }
  }
  j["verdicts"] = std::move(arr);
  std::ofstream os(out_dir / "verdicts.json", std::ios::binary);
  os << j.dump(2) << "\n";
}

void write_manifest(const std::filesystem::path& out_dir,
                    const std::vector<ExperimentResult>& results,
                    const std::vector<ManifestEntry>& entries,
                    const std::string& tolerances_echo) {
  ensure_dir(out_dir);
  ordered_json j;
  j["tool"] = kToolVersion;
  j["format_version"] = kCsvFormatVersion;
  j["tolerances"] = tolerances_echo;
  ordered_json runs = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json r;
    r["experiment"] = e.experiment;
    r["config"] = e.resolved_config;
    r["wall_seconds"] = e.wall_seconds;
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  ordered_json points = ordered_json::array();
  for (const auto& res : results) {
    for (const auto& rec : res.records) {
      if (rec.wall_seconds <= 0.0) continue;
      ordered_json p;
      p["experiment"] = res.name;
      if (!rec.cols.empty()) p[rec.cols.front().first] = rec.cols.front().second;
      for (const auto& [name, val] : rec.cols)
        if (name == "lambda" || name == "N" || name == "L")
          p[name] = val;
      p["wall_seconds"] = rec.wall_seconds;
      points.push_back(std::move(p));
    }
  }
  j["ladder_points"] = std::move(points);
  std::ofstream os(out_dir / "manifest.json", std::ios::binary);
  os << j.dump(2) << "\n";
}

}  // namespace bo::io
