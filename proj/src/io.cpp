#include "nullwave/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nullwave/error.hpp"
#include "nullwave/sphharm.hpp"

namespace nullwave::io {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) { return std::isnan(x) ? std::string() : format_double(x); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_header(std::ofstream& out, const std::vector<std::string>& cols) {
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int slot_of(const std::string& l, const std::string& m) {
  return sphharm::mode_slot(std::stoi(l), std::stoi(m));
}

}  // namespace

double cell_double(const std::string& s) {
  if (s.empty()) return kNaN;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad number '" + s + "'");
  return x;
}

std::vector<int> Table::columns(const std::string& file, const std::vector<std::string>& required) const {
  std::vector<int> pos;
  std::string missing;
  for (const auto& name : required) {
    int found = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) found = static_cast<int>(c);
    if (found < 0) missing += (missing.empty() ? "" : ", ") + name;
    pos.push_back(found);
  }
  if (!missing.empty()) throw SchemaError(file, "column(s) " + missing);
  return pos;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path, "header");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw SchemaError(path, "cells on a row (ragged line)");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_radiation_csv(const std::string& path, const RadiationRecord& rec) {
  auto out = open_out(path);
  write_header(out, kRadiationColumns);
  const bool have_inner = rec.Phi_inner.size() == rec.Phi.size();
  for (int i = 0; i < rec.size(); ++i) {
    for (int k = 0; k < rec.M; ++k) {
      const auto mi = sphharm::mode_of_slot(k);
      out << num(rec.u[i]) << ',' << mi.ell << ',' << mi.m << ',' << num(rec.psi(i, k)) << ','
          << num(rec.UPsi.empty() ? kNaN : rec.upsi(i, k)) << ',' << num(rec.phi(i, k)) << ','
          << num(rec.phi_over_lnv(i, k)) << ',' << num(have_inner ? rec.phi_inner(i, k) : kNaN) << '\n';
    }
  }
}

RadiationRecord read_radiation_csv(const std::string& path, const NullGridSpec& grid) {
  const Table t = read_csv(path);
  const auto c = t.columns(path, kRadiationColumns);
  RadiationRecord rec;
  rec.h = grid.h;
  rec.v_max = grid.v_max;
  rec.L_max = grid.L_max;
  rec.M = grid.n_modes();
  rec.v_inner = grid.v(grid.Nv() / 2);
  if (t.rows.size() % rec.M != 0) throw SchemaError(path, "rows for some modes");
  const std::size_t n = t.rows.size() / rec.M;
  rec.u.resize(n);
  rec.Psi.assign(n * rec.M, 0.0);
  rec.Phi.assign(n * rec.M, 0.0);
  rec.UPsi.assign(n * rec.M, 0.0);
  rec.Phi_inner.assign(n * rec.M, kNaN);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t i = r / rec.M;
    const int k = slot_of(row[c[1]], row[c[2]]);
    if (k != static_cast<int>(r % rec.M)) throw SchemaError(path, "mode ordering (ell, m) within each u");
    rec.u[i] = cell_double(row[c[0]]);
    rec.Psi[i * rec.M + k] = cell_double(row[c[3]]);
    rec.UPsi[i * rec.M + k] = cell_double(row[c[4]]);
    rec.Phi[i * rec.M + k] = cell_double(row[c[5]]);
    rec.Phi_inner[i * rec.M + k] = cell_double(row[c[7]]);
  }
  return rec;
}

void write_slices_csv(const std::string& path, const std::vector<SliceSet>& slices, const NullGridSpec& grid) {
  auto out = open_out(path);
  write_header(out, kSliceColumns);
  const int M = grid.n_modes();
  for (const auto& s : slices) {
    for (const SliceDiag* d : {&s.lower, &s.mid, &s.upper}) {
      const double t = d->t(grid.h);
      for (int i = 0; i < d->n; ++i) {
        if (!d->have[i]) continue;
        for (int k = 0; k < M; ++k) {
          const auto mi = sphharm::mode_of_slot(k);
          const std::size_t idx = static_cast<std::size_t>(k) * d->n + i;
          out << num(t) << ',' << num(grid.u(i)) << ',' << num(grid.v(d->K - i)) << ',' << mi.ell << ',' << mi.m
              << ',' << num(d->Phi[idx]) << ',' << num(d->Psi[idx]) << '\n';
        }
      }
    }
  }
}

std::vector<SliceSet> read_slices_csv(const std::string& path, const NullGridSpec& grid) {
  const Table t = read_csv(path);
  const auto c = t.columns(path, kSliceColumns);
  const int M = grid.n_modes();
  std::map<int, SliceDiag> diags;
  for (const auto& row : t.rows) {
    const int K = static_cast<int>(std::lround(2.0 * cell_double(row[c[0]]) / grid.h));
    auto& d = diags[K];
    if (d.n == 0) {
      d.K = K;
      d.n = K / 2 + 1;
      d.Phi.assign(static_cast<std::size_t>(M) * d.n, 0.0);
      d.Psi.assign(static_cast<std::size_t>(M) * d.n, 0.0);
      d.have.assign(d.n, 0);
    }
    const int i = static_cast<int>(std::lround(cell_double(row[c[1]]) / grid.h));
    const int k = slot_of(row[c[3]], row[c[4]]);
    if (i < 0 || i >= d.n || k >= M) throw SchemaError(path, "consistent (u, ell, m) for the grid");
    d.Phi[static_cast<std::size_t>(k) * d.n + i] = cell_double(row[c[5]]);
    d.Psi[static_cast<std::size_t>(k) * d.n + i] = cell_double(row[c[6]]);
    d.have[i] = 1;
  }
  std::vector<SliceSet> out;
  for (const auto& [K, d] : diags) {
    if (K % 2 != 0 || !diags.count(K - 1) || !diags.count(K + 1)) continue;
    SliceSet s;
    s.t = d.t(grid.h);
    s.lower = diags.at(K - 1);
    s.mid = d;
    s.upper = diags.at(K + 1);
    out.push_back(std::move(s));
  }
  return out;
}

void write_rows_csv(const std::string& path, const std::vector<RowSample>& rows, const NullGridSpec& grid,
                    int stride) {
  auto out = open_out(path);
  write_header(out, kRowColumns);
  const int M = grid.n_modes();
  for (const auto& r : rows) {
    for (int q = 0; q < r.n; q += stride) {
      for (int k = 0; k < M; ++k) {
        const auto mi = sphharm::mode_of_slot(k);
        const std::size_t idx = static_cast<std::size_t>(k) * r.n + q;
        out << num(r.u) << ',' << num(grid.v(r.i + q)) << ',' << mi.ell << ',' << mi.m << ',' << num(r.Phi[idx])
            << ',' << num(r.Psi[idx]) << ',' << num(r.UPhi[idx]) << ',' << num(r.dtPsi[idx]) << '\n';
      }
    }
  }
}

std::vector<RowSample> read_rows_csv(const std::string& path, const NullGridSpec& grid, int stride) {
  const Table t = read_csv(path);
  const auto c = t.columns(path, kRowColumns);
  const int M = grid.n_modes();
  std::vector<RowSample> out;
  std::size_t r = 0;
  while (r < t.rows.size()) {
    const std::string key = t.rows[r][c[0]];
    std::size_t e = r;
    while (e < t.rows.size() && t.rows[e][c[0]] == key) ++e;
    if ((e - r) % M != 0) throw SchemaError(path, "rows for some modes");
    RowSample s;
    s.u = cell_double(key);
    s.h = stride * grid.h;
    s.i = static_cast<int>(std::lround(s.u / grid.h));
    s.n = static_cast<int>((e - r) / M);
    const std::size_t total = static_cast<std::size_t>(M) * s.n;
    s.Phi.assign(total, 0.0);
    s.Psi.assign(total, 0.0);
    s.UPhi.assign(total, 0.0);
    s.dtPsi.assign(total, 0.0);
    for (std::size_t x = r; x < e; ++x) {
      const auto& row = t.rows[x];
      const int q = static_cast<int>((x - r) / M);
      const int k = slot_of(row[c[2]], row[c[3]]);
      if (k != static_cast<int>((x - r) % M)) throw SchemaError(path, "mode ordering (ell, m) within each v");
      const std::size_t idx = static_cast<std::size_t>(k) * s.n + q;
      s.Phi[idx] = cell_double(row[c[4]]);
      s.Psi[idx] = cell_double(row[c[5]]);
      s.UPhi[idx] = cell_double(row[c[6]]);
      s.dtPsi[idx] = cell_double(row[c[7]]);
    }
    out.push_back(std::move(s));
    r = e;
  }
  return out;
}

void write_energies_csv(const std::string& path, const std::vector<energetics::EnergySample>& e) {
  auto out = open_out(path);
  write_header(out, kEnergyColumns);
  for (const auto& s : e) {
    out << num(s.t) << ',' << num(s.L2_phi) << ',' << num(s.L2_dphi) << ',' << num(s.L2_psi) << ','
        << num(s.L2_dpsi) << ',' << num(s.cascade_ratio) << ',' << num(s.E_hyp_phi) << '\n';
  }
}

std::vector<energetics::EnergySample> read_energies_csv(const std::string& path) {
  const Table t = read_csv(path);
  const auto c = t.columns(path, kEnergyColumns);
  std::vector<energetics::EnergySample> out;
  for (const auto& row : t.rows) {
    energetics::EnergySample s;
    s.t = cell_double(row[c[0]]);
    s.L2_phi = cell_double(row[c[1]]);
    s.L2_dphi = cell_double(row[c[2]]);
    s.L2_psi = cell_double(row[c[3]]);
    s.L2_dpsi = cell_double(row[c[4]]);
    s.cascade_ratio = cell_double(row[c[5]]);
    s.E_hyp_phi = cell_double(row[c[6]]);
    out.push_back(s);
  }
  return out;
}

void write_residuals_csv(const std::string& path, const std::vector<asympt::ResidualRow>& rows) {
  auto out = open_out(path);
  write_header(out, kResidualColumns);
  for (const auto& r : rows) {
    out << num(r.u) << ',' << num(r.v) << ',' << asympt::region_name(r.region.primary) << ',' << int(r.region.C_int)
        << ',' << int(r.region.C_ext) << ',' << int(r.region.D_int) << ',' << int(r.region.D_ext) << ',' << r.field
        << ',' << num(r.leading) << ',' << num(r.measured) << ',' << num(r.residual) << '\n';
  }
}

nlohmann::json sections_to_json(const Sections& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [sec, keys] : s)
    for (const auto& [k, v] : keys) j[sec][k] = v;
  return j;
}

Sections sections_from_json(const nlohmann::json& j) {
  Sections s;
  for (const auto& [sec, keys] : j.items())
    for (const auto& [k, v] : keys.items()) s[sec][k] = v.get<std::string>();
  return s;
}

namespace {

// NaN has no JSON spelling; null stands in for it.
nlohmann::json jnum(double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); }

}  // namespace

nlohmann::json constants_to_json(const asympt::AsymptoticConstants& c) {
  nlohmann::json j;
  j["L_max"] = c.L_max;
  j["c1"] = jnum(c.c1);
  j["c2"] = jnum(c.c2);
  j["c5"] = jnum(c.c5);
  j["c3"] = c.c3;
  j["c4"] = c.c4;
  nlohmann::json modes = nlohmann::json::array();
  for (std::size_t k = 0; k < c.C_ell.size(); ++k) {
    const auto mi = sphharm::mode_of_slot(static_cast<int>(k));
    modes.push_back({{"ell", mi.ell}, {"m", mi.m}, {"C", jnum(c.C_ell[k])}});
  }
  j["C_ell"] = modes;
  j["truncation"] = {{"phi_limit", asympt::phi_limit_name(c.meta.phi_limit)},
                     {"v_max", c.meta.v_max},
                     {"h", c.meta.h},
                     {"u_max", c.meta.u_max},
                     {"rule", c.meta.rule},
                     {"tail_fraction", jnum(c.meta.tail_fraction)},
                     {"tail_decayed", c.meta.tail_decayed}};
  return j;
}

nlohmann::json identities_to_json(const asympt::IdentityReport& r) {
  return {{"kappa", r.kappa},
          {"window_end", jnum(r.window_end)},
          {"relation_sup", jnum(r.relation_sup)},
          {"relation_plateau", jnum(r.relation_plateau)},
          {"relation_ratio", jnum(r.relation_plateau > 0.0 ? r.relation_sup / r.relation_plateau : kNaN)},
          {"c4_gap", jnum(r.c4_gap)},
          {"c4_gap_rel", jnum(r.c4_gap_rel)},
          {"c1_mean_gap", jnum(r.c1_mean_gap)},
          {"c2_mean_gap", jnum(r.c2_mean_gap)}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return nlohmann::json::parse(in);
}

void ensure_directory(const std::string& dir) { std::filesystem::create_directories(dir); }

}  // namespace nullwave::io
