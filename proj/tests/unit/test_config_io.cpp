#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "nullwave/commands.hpp"
#include "nullwave/config.hpp"
#include "nullwave/error.hpp"
#include "nullwave/io.hpp"
#include "nullwave/sweep.hpp"

using namespace nullwave;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
[grid]
h = 0.1
u_max = 20
v_max = 40
V0 = 2
L_max = 1

[psi]
amplitude = 0.05
support = 0.5 2
modes = 0 0 1

[phi]
amplitude = 0.02
support = 0.5 1.5
modes = 0 0 1; 1 1 0.5

[analysis]
report_log = 2 20 6
rows = 5 10 15
hyperboloid = on
fit_phi = 2 20
fit_dphi = 5 20
residual_stride = 2

[run]
threads = 1
seed = 3
)";

std::string temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("nullwave_test_" + name);
  fs::remove_all(p);
  return p.string();
}

std::string first_line(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("parse and round trip") {
  const RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  CHECK(c.grid.L_max == 1);
  CHECK(c.data.phi.modes.size() == 2);
  CHECK(c.data.phi.modes[1].m == 1);
  CHECK(c.data.psi.b == 2.0);
  CHECK(c.all_report_times().size() == 6);
  CHECK(c.hyperboloid);
  CHECK(c.seed == 3);
  c.validate();
  const RunConfig d = run_config_from_sections(to_sections(c));
  CHECK(to_sections(d) == to_sections(c));
  // through JSON as in meta.json
  const RunConfig e = run_config_from_sections(io::sections_from_json(io::sections_to_json(to_sections(c))));
  CHECK(to_sections(e) == to_sections(c));
}

TEST_CASE("doubles are written shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-12) == "1e-12");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("errors name the field") {
  auto field_of = [](const std::string& text) {
    try {
      run_config_from_sections(read_ini_string(text)).validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of("[grid]\nh = abc\n") == "grid.h");
  CHECK(field_of("[grid]\nhh = 1\n") == "grid.hh");
  CHECK(field_of("[bogus]\nx = 1\n") == "bogus");
  CHECK(field_of("[psi]\nmodes = 0 0\n") == "psi.modes");
  CHECK(field_of("[physics]\nsources = maybe\n") == "physics.sources");
  CHECK(field_of("[grid]\nv_max = 40\nu_max = 20\n[analysis]\nreport_times = 25\n") == "analysis.report_times");
  CHECK(field_of("[grid]\nv_max = 40\nu_max = 20\n[analysis]\nreport_times = 10\n") == "none");
  CHECK(field_of("[analysis]\ndelta = 1.5\n") == "analysis.delta");
}

TEST_CASE("sweep config") {
  SweepConfig s = sweep_config_from_sections(read_ini_string(std::string(kSmall) + "[sweep]\nsamples = 4\neps_range = 0.01 0.02\n"));
  CHECK(s.samples == 4);
  CHECK(s.eps_max == 0.02);
  s.validate();
  const SweepConfig t = sweep_config_from_sections(to_sections(s));
  CHECK(to_sections(t) == to_sections(s));
  s.samples = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.samples = 1;
  s.tau_scale = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

}

TEST_SUITE("cli") {

TEST_CASE("evolve writes the documented schema and is deterministic") {
  RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  const std::string a = temp_dir("a"), b = temp_dir("b");
  const auto res = cmd_evolve(c, a);
  CHECK_FALSE(res.diverged);
  c.threads = 3;
  cmd_evolve(c, b);

  CHECK(first_line(a + "/radiation.csv") == "u,ell,m,Psi,UPsi,Phi,Phi_over_lnv,Phi_vhalf");
  CHECK(first_line(a + "/slices.csv") == "t,u,v,ell,m,Phi,Psi");
  CHECK(first_line(a + "/rows.csv") == "u,v,ell,m,Phi,Psi,UPhi,dtPsi");
  CHECK(first_line(a + "/energies.csv") == "t,L2_phi,L2_dphi,L2_psi,L2_dpsi,cascade_ratio,E_hyp_phi");
  for (const char* f : {"radiation.csv", "slices.csv", "rows.csv", "energies.csv"})
    CHECK(slurp(a + "/" + f) == slurp(b + "/" + f));

  const auto meta = io::read_json(a + "/meta.json");
  for (const char* k : {"config", "code_version", "wall_seconds", "diverged"}) CHECK(meta.contains(k));
  CHECK(meta["diverged"] == false);
  // echo re-parses to the same config
  const RunConfig back = load_run_config_from_dir(a);
  RunConfig expect = c;
  expect.threads = 1;
  expect.out_dir = a;
  CHECK(to_sections(back) == to_sections(expect));

  const auto ca = cmd_constants(a);
  const auto cb = cmd_constants(b);
  CHECK(slurp(a + "/constants.json") == slurp(b + "/constants.json"));
  CHECK(ca["constants"]["c1"].get<double>() > 0.0);
  CHECK(ca["c1_nonnegative"] == true);
  for (const char* k : {"printed_kappa", "consistent_kappa", "consistent_kappa_log_slope"})
    CHECK(ca["identities"].contains(k));

  cmd_residuals(a);
  CHECK(first_line(a + "/residuals.csv") == "u,v,region,C_int,C_ext,D_int,D_ext,field,leading,measured,residual");
  const auto e = cmd_energies(a);
  CHECK(e.contains("phi_fit"));
  cmd_report(a);
  CHECK(fs::exists(a + "/report.json"));
}

TEST_CASE("read-back reproduces the in-memory records") {
  RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  const std::string a = temp_dir("rb");
  const auto res = cmd_evolve(c, a);
  const auto rad = io::read_radiation_csv(a + "/radiation.csv", c.grid);
  CHECK(rad.Psi == res.radiation.Psi);
  CHECK(rad.Phi == res.radiation.Phi);
  CHECK(rad.UPsi == res.radiation.UPsi);
  const auto slices = io::read_slices_csv(a + "/slices.csv", c.grid);
  REQUIRE(slices.size() == res.slices.size());
  for (std::size_t n = 0; n < slices.size(); ++n) {
    CHECK(slices[n].mid.Phi == res.slices[n].mid.Phi);
    CHECK(slices[n].upper.Psi == res.slices[n].upper.Psi);
  }
  const auto rows = io::read_rows_csv(a + "/rows.csv", c.grid, c.residual_stride);
  REQUIRE(rows.size() == res.rows.size());
  CHECK(rows[0].h == doctest::Approx(2 * c.grid.h));
  CHECK(rows[0].Phi[1] == res.rows[0].Phi[2]);
  const auto en = io::read_energies_csv(a + "/energies.csv");
  REQUIRE(en.size() == res.energies.size());
  CHECK(en.back().L2_phi == res.energies.back().L2_phi);
}

TEST_CASE("zero data run writes zeros") {
  RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  c.data.psi.amplitude = 0.0;
  c.data.phi.amplitude = 0.0;
  const std::string a = temp_dir("zero");
  cmd_evolve(c, a);
  const auto t = io::read_csv(a + "/radiation.csv");
  for (const auto& row : t.rows)
    for (int col : {3, 4, 5, 6}) CHECK(io::cell_double(row[col]) == 0.0);
  const auto j = cmd_constants(a);
  CHECK(j["constants"]["c1"].get<double>() == 0.0);
  CHECK(j["constants"]["c2"].get<double>() == 0.0);
}

TEST_CASE("missing inputs and bad schemas") {
  const std::string a = temp_dir("missing");
  fs::create_directories(a);
  CHECK_THROWS(cmd_constants(a));
  RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  cmd_evolve(c, a);
  fs::remove(a + "/radiation.csv");
  CHECK_THROWS(cmd_constants(a));
  {
    std::ofstream out(a + "/radiation.csv");
    out << "u,ell,m,Psi,Phi\n0,0,0,0,0\n";
  }
  try {
    cmd_constants(a);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.missing().find("UPsi") != std::string::npos);
    CHECK(e.missing().find("Phi_over_lnv") != std::string::npos);
  }
}

TEST_CASE("convergence command") {
  RunConfig c = run_config_from_sections(read_ini_string(kSmall));
  c.grid.L_max = 0;
  c.data.phi.modes = {{0, 0, 1.0}};
  std::vector<std::string> dirs;
  for (int l = 0; l < 3; ++l) {
    dirs.push_back(temp_dir("conv" + std::to_string(l)));
    cmd_evolve(c, dirs.back());
    c.grid.h *= 0.5;
  }
  const auto j = cmd_convergence(dirs, temp_dir("conv_out"));
  CHECK(j["observables"][0]["orders"][0].get<double>() == doctest::Approx(2.0).epsilon(0.1));
  const auto same = cmd_convergence({dirs[0], dirs[0], dirs[0]}, temp_dir("conv_same"));
  CHECK(same["observables"][0]["degenerate"] == true);
  CHECK_THROWS(cmd_convergence({dirs[0], dirs[2], dirs[1]}, temp_dir("conv_bad")));
}

TEST_CASE("sweep draws are reproducible and keyed by (seed, index)") {
  SweepConfig s = sweep_config_from_sections(read_ini_string(std::string(kSmall) + "[sweep]\nsamples = 2\n"));
  s.base.grid.L_max = 0;
  const auto a = draw_sample(s, 11, 1), b = draw_sample(s, 11, 1), c = draw_sample(s, 12, 1), d = draw_sample(s, 11, 0);
  CHECK(a.eps == b.eps);
  CHECK(a.psi_a == b.psi_a);
  CHECK(a.eps != c.eps);
  CHECK(a.eps != d.eps);
  CHECK(a.eps >= s.eps_min);
  CHECK(a.eps <= s.eps_max);
  CHECK(a.psi_b - a.psi_a >= s.width_min);

  const std::string out = temp_dir("sweep1");
  const auto r1 = cmd_generic_sweep(s, 11, 1, out);
  const auto r2 = generic_sweep(s, 11, 2);
  REQUIRE(r1.samples.size() == 2);
  CHECK(r1.samples[1].c1 == r2.samples[1].c1);
  CHECK(r1.samples[0].c2 == r2.samples[0].c2);
  CHECK(r1.fraction_above == 1.0);
  CHECK(first_line(out + "/sweep.csv").rfind("index,eps,", 0) == 0);
  CHECK(io::read_json(out + "/sweep.json")["fraction_c1_above_tau"] == 1.0);
}

}
