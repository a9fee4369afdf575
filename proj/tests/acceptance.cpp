// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "petlock/cli.hpp"
#include "support/tree_oracle.hpp"

namespace fs = std::filesystem;
using namespace petlock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Outcome movability_constant() {
  const lock::Movability m = lock::movability(lock::MechanismParams{});
  return {std::abs(m.normalized_rhs - 0.69) <= 1e-12 && m.movable,
          "normalized_rhs=" + fmt(m.normalized_rhs) + (m.movable ? " movable" : " not movable")};
}

Outcome self_lock_threshold() {
  const lock::MechanismParams p;  // beta = 5 deg
  const double t5 = std::tan(5.0 * std::numbers::pi / 180.0);
  double lo = 0.0, hi = 1.0;
  if (lock::self_locking(p, lo) || !lock::self_locking(p, hi)) return {false, "no crossing in [0, 1]"};
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lock::self_locking(p, mid) ? hi : lo) = mid;
  }
  return {std::abs(hi - t5) <= 1e-9, "crossing=" + fmt(hi) + " tan5=" + fmt(t5)};
}

Outcome envelope_calibration() {
  face::Envelope targets;
  targets.translation_limit_mm = 12.0;
  targets.rotation_limit_deg = 41.0;
  targets.deflection_limit_deg = 14.0;
  const face::CalibrationResult r = face::calibrate_profile(targets);
  const face::Envelope env = face::full_envelope(r.profile, 10.0);
  const auto res = face::relative_residuals(env, targets);
  const bool ok = std::all_of(res.begin(), res.end(), [](double v) { return v <= 0.10; });
  return {ok, "limits " + fmt(env.translation_limit_mm) + " mm / " + fmt(env.rotation_limit_deg) +
                  " deg / " + fmt(env.deflection_limit_deg) + " deg; petal_height_mm=" +
                  fmt(r.profile.petal_height_mm) + " groove_radius_mm=" + fmt(r.profile.groove_radius_mm) +
                  " flank_deg=" + fmt(r.profile.petal_flank_angle_deg) +
                  " chamfer_mm=" + fmt(r.profile.chamfer_depth_mm)};
}

Outcome envelope_symmetry() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lateral(-16.0, 16.0), rot(-60.0, 60.0), tilt(-12.0, 12.0);
  const face::FaceProfile p = face::reference_profile();
  int violations = 0, feasible = 0;
  for (int i = 0; i < 50; ++i) {
    const face::Misalignment m{lateral(rng), lateral(rng), rot(rng), tilt(rng), tilt(rng)};
    const bool f = face::mate_feasible(p, m);
    feasible += f;
    violations += f != face::mate_feasible(p, face::rotated_about_axis(m, 120.0));
    violations += f != face::mate_feasible(p, face::rotated_about_axis(m, 240.0));
  }
  return {violations == 0, std::to_string(violations) + " violations, " + std::to_string(feasible) + "/50 feasible"};
}

Outcome envelope_oracle() {
  const face::FaceProfile p = face::reference_profile();
  const double tol = 0.01;
  std::string detail;
  bool ok = true;
  for (const face::AxisProbe probe : {face::AxisProbe{face::Axis::translation, 0.0},
                                      face::AxisProbe{face::Axis::rotation, 0.0},
                                      face::AxisProbe{face::Axis::deflection, 0.0}}) {
    const double a = face::envelope_axis_limit(p, probe, tol).limit;
    const double b = face::linear_scan_limit(p, probe, tol).limit;
    ok = ok && a == b;
    detail += std::string(face::axis_name(probe.axis)) + " " + fmt(a) + (a == b ? "==" : "!=") + fmt(b) + "; ";
  }
  return {ok, detail};
}

Outcome load_limits() {
  const loads::LoadEnvelope env;
  const loads::LoadReport t3000 = loads::check_load({0, 0, 3000, 0, 0, 0}, env, false);
  const loads::LoadReport t3001 = loads::check_load({0, 0, 3001, 0, 0, 0}, env, false);
  const loads::LoadReport b500 = loads::check_load({0, 0, 0, 500, 0, 0}, env, false);
  const loads::LoadReport b501 = loads::check_load({0, 0, 0, 501, 0, 0}, env, false);
  const bool ok = t3000.pass && t3000.combined_u == 1.0 && !t3001.pass && b500.pass && !b501.pass;
  return {ok, "3000N u=" + fmt(t3000.combined_u) + " 3001N " + (t3001.pass ? "pass" : "fail") +
                  " 500Nm " + (b500.pass ? "pass" : "fail") + " 501Nm " + (b501.pass ? "pass" : "fail")};
}

Outcome stress_calibration() {
  const loads::StressReference ref = loads::reference_stress_table();
  const std::vector<std::pair<loads::Wrench, double>> rows{
      {{0, 0, 3000, 0, 0, 0}, 21.999}, {{0, 0, 0, 0, 0, 500}, 44.781}, {{0, 0, 0, 500, 0, 0}, 52.237}};
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const auto& [w, mpa] : rows) {
    const double got = loads::stress_estimate(w, ref).max_MPa;
    ok = ok && got == mpa;
    detail += fmt(got) + " ";
    for (double s : {0.1, 0.5, 2.0}) {
      const double scaled = loads::stress_estimate(w * s, ref).max_MPa;
      worst = std::max(worst, std::abs(scaled / (s * got) - 1.0));
    }
  }
  return {ok && worst < 1e-12, detail + "MPa; homogeneity rel err " + fmt(worst)};
}

double lock_time(const coupling::CouplingConfig& cfg, double dt) {
  const coupling::CouplingMachine m(cfg);
  coupling::InterfaceState s = m.step({}, coupling::Event::approach({}), dt).state;
  if (s.phase != coupling::Phase::aligned) return -1.0;
  s = m.step(s, coupling::Event::start_lock(), dt).state;
  int ticks = 0;
  while (s.phase != coupling::Phase::locked) {
    s = m.step(s, coupling::Event::tick(), dt).state;
    if (++ticks > 1000000) return -1.0;
  }
  return ticks * dt;
}

Outcome coupling_timing() {
  const double dt = 0.01;
  const double def = lock_time({}, dt);
  bool ok = std::abs(def - 15.0) <= dt + 1e-12;
  std::string detail = "default " + fmt(def) + " s;";
  for (double d : {10.0, 12.5, 17.3, 20.0}) {
    coupling::CouplingConfig c;
    c.lock_duration_s = d;
    const double t = lock_time(c, dt);
    ok = ok && std::abs(t - d) <= dt + 1e-12;
    detail += " " + fmt(d) + "->" + fmt(t);
  }
  return {ok, detail};
}

Outcome power_budget() {
  auto live = [](bus::PowerBus b) {
    b.connected = true;
    return b;
  };
  bus::PowerBus m1 = live(bus::main_bus()), m2 = live(bus::main_bus());
  bool ok = m1.voltage_V == 48.0 && bus::request_power(m1, 500.0).granted &&
            !bus::request_power(m2, 501.0).granted;
  bus::PowerBus aux = live(bus::auxiliary_bus());
  ok = ok && aux.voltage_V == 24.0 && bus::request_power(aux, 30.0).granted &&
       !bus::request_power(aux, 25.0).granted && bus::request_power(aux, 20.0).granted &&
       !bus::request_power(aux, 1e-6).granted;

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> frac(0.0, 0.36);
  int broken = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    bus::PowerBus b = live(seq % 2 ? bus::main_bus() : bus::auxiliary_bus());
    std::map<std::uint64_t, double> active;
    for (int op = 0; op < 40; ++op) {
      if (!active.empty() && rng() % 3 == 0) {
        auto it = active.begin();
        std::advance(it, static_cast<long>(rng() % active.size()));
        const double before = b.allocated_W;
        const double w = it->second;
        if (!bus::release(b, it->first)) ++broken;
        active.erase(it);
        if (std::abs(b.allocated_W - (before - w)) > 1e-9) ++broken;
      } else {
        const double w = frac(rng) * b.capacity_W;
        double expected = 0.0;
        for (const auto& [id, v] : active) expected += v;
        const bus::PowerGrant g = bus::request_power(b, w);
        if (g.granted != (expected + w <= b.capacity_W)) ++broken;
        if (g.granted) active.emplace(g.id, w);
      }
      double sum = 0.0;
      for (const auto& [id, v] : active) sum += v;
      if (std::abs(b.allocated_W - sum) > 1e-9 || b.allocated_W > b.capacity_W || b.allocated_W < 0.0) ++broken;
    }
    for (const auto& [id, v] : active) bus::release(b, id);
    if (b.allocated_W != 0.0) ++broken;
  }
  return {ok && broken == 0, "limits " + std::string(ok ? "ok" : "violated") + ", " +
                                 std::to_string(broken) + " ledger violations over 1000 sequences"};
}

Outcome equilibrium() {
  std::mt19937_64 rng(17);
  double worst_f = 0.0, worst_m = 0.0;
  bool structure = true;
  for (int trial = 0; trial < 100; ++trial) {
    auto tc = testing::random_tree(rng, 10);
    const auto load = testing::random_load(rng, tc, trial % 2 ? 9.81 : 0.0);
    const auto r = testing::free_body_residual(tc, load);
    structure = structure && r.structure_ok;
    worst_f = std::max(worst_f, r.force);
    worst_m = std::max(worst_m, r.moment);
  }
  return {structure && worst_f < 1e-9 && worst_m < 1e-9,
          "max residual " + fmt(worst_f) + " N, " + fmt(worst_m) + " N*m"};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("petlock_acceptance_" + std::to_string(::getpid()));
  std::vector<fs::path> scenarios;
  for (const auto& e : fs::directory_iterator(PETLOCK_SCENARIO_DIR)) {
    if (e.path().extension() == ".json") scenarios.push_back(e.path());
  }
  std::sort(scenarios.begin(), scenarios.end());
  std::set<std::string> covered;
  int runs = 0, mismatches = 0, failures = 0;
  for (const auto& s : scenarios) {
    const std::string stem = s.stem().string();
    const std::string cmd = stem.substr(0, stem.find('_'));
    std::map<std::string, std::string> out[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = root / (stem + "_" + std::to_string(k));
      fs::remove_all(dir);
      cli::RunOptions o;
      o.command = cmd;
      o.scenario_path = s.string();
      o.out_dir = dir.string();
      if (cli::run(o) != 0) ++failures;
      out[k] = snapshot(dir);
      ++runs;
    }
    mismatches += out[0] != out[1];
    covered.insert(cmd);
  }
  fs::remove_all(root);
  const bool all = covered.size() == cli::commands().size();
  return {all && mismatches == 0 && failures == 0,
          std::to_string(scenarios.size()) + " scenarios, " + std::to_string(covered.size()) + "/" +
              std::to_string(cli::commands().size()) + " commands, " + std::to_string(runs) + " runs, " +
              std::to_string(mismatches) + " mismatches, " + std::to_string(failures) + " failed runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"movability constant", movability_constant},
      {"self-lock threshold", self_lock_threshold},
      {"envelope calibration", envelope_calibration},
      {"envelope symmetry", envelope_symmetry},
      {"envelope oracle equivalence", envelope_oracle},
      {"load limits", load_limits},
      {"stress calibration", stress_calibration},
      {"coupling timing", coupling_timing},
      {"power budget", power_budget},
      {"equilibrium", equilibrium},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
