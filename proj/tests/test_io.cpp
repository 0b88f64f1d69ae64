#include "bo/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"

using namespace bo;

int main() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bo_waves_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // 17-digit serialization round-trips doubles exactly
  {
    for (double v : {1.0 / 3.0, 6.02214076e23, -1.1e-300, 0.0,
                     3.14159265358979312, 1e-17}) {
      const double back = std::strtod(io::format17(v).c_str(), nullptr);
      CHECK(back == v);
    }
  }

  // export/import a field: bit-identical values
  {
    auto g = make_grid(5.0, 64);
    RealVec v(64);
    for (std::size_t j = 0; j < 64; ++j)
      v[j] = std::sin(0.1 * static_cast<double>(j)) / 3.0;
    Field f(g, v);
    io::export_field(f, dir / "f.csv");
    Field back = io::import_field(dir / "f.csv");
    CHECK(back.grid().size() == 64);
    CHECK(back.grid().half_length() == 5.0);
    bool exact = true;
    for (std::size_t j = 0; j < 64; ++j)
      exact = exact && back.values()[j] == v[j];
    CHECK(exact);

    Field zero(g);
    io::export_field(zero, dir / "z.csv");
    Field zback = io::import_field(dir / "z.csv");
    CHECK(linf_norm(zback) == 0.0);
  }

  // records -> csv bytes are deterministic; schema line carries the version
  {
    ExperimentResult r;
    r.name = "demo";
    for (int i = 0; i < 3; ++i) {
      RunRecord rec;
      rec.experiment = "demo";
      rec.cols = {{"lambda", 16.0 * (i + 1)}, {"value", 1.0 / (i + 1)}};
      rec.wall_seconds = 0.123;  // must not appear in the csv
      r.records.push_back(rec);
    }
    const auto p1 = io::write_records_csv(dir, r);
    std::ifstream is1(p1, std::ios::binary);
    std::string bytes1((std::istreambuf_iterator<char>(is1)), {});
    const auto p2 = io::write_records_csv(dir, r);
    std::ifstream is2(p2, std::ios::binary);
    std::string bytes2((std::istreambuf_iterator<char>(is2)), {});
    CHECK(bytes1 == bytes2);
    CHECK(bytes1.find("# schema: demo-v1") == 0);
    CHECK(bytes1.find("0.123") == std::string::npos);
    CHECK(bytes1.find("lambda,value") != std::string::npos);
  }

  // verdicts: exit contract ignores supplementary rows
  {
    ExperimentResult r;
    r.name = "demo";
    r.verdicts.push_back({"a", true, 1, 1, 0, ""});
    r.verdicts.push_back({"b_supplementary", false, 0, 1, 0, ""});
    CHECK(io::all_required_pass({r}));
    r.verdicts.push_back({"c", false, 0, 1, 0, ""});
    CHECK(!io::all_required_pass({r}));
    io::write_verdicts(dir, {r});
    CHECK(fs::exists(dir / "verdicts.json"));
  }

  fs::remove_all(dir);
  return testutil::finish("test_io");
}
