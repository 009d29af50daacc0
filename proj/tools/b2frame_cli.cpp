// Copyright 2026 The b2frame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "b2frame/certify.hpp"
#include "b2frame/dualwindow.hpp"
#include "b2frame/frameset.hpp"
#include "b2frame/regions.hpp"
#include "b2frame/verify.hpp"
#include "b2frame/zibulski.hpp"

using namespace b2frame;

namespace {

// Bad user input: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode = "exact";
  std::string format = "json";
  std::string out;
  int resolution = 512;
  int grid_x = 64;
  int grid_nu = 64;
  int residual_grid = 64;
  int zz_grid = 50;
  long max_q = 32;
  int max_m = kDefaultMaxStrip;
  double residual_tol = kResidualTol;
  double root_tol = kFloatRootTol;
  double zz_level = kNonFrameLevel;

  bool exact() const { return mode == "exact"; }

  void validate() const {
    if (resolution < 2 || grid_x < 2 || grid_nu < 2 || residual_grid < 2 || zz_grid < 2) {
      throw UsageError("grid densities must be at least 2");
    }
    if (!(residual_tol > 0) || !(root_tol > 0) || !(zz_level > 0)) throw UsageError("tolerances must be positive");
    if (max_m < 1) throw UsageError("max-m must be positive");
    if (max_q < 1) throw UsageError("max-q must be positive");
  }
};

LatticeParams lattice(const std::string& a, const std::string& b, const RunConfig& cfg) {
  try {
    return parse_lattice(a, b, !cfg.exact());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// nlohmann prints the shortest round-trip form; numbers here always get 17
// significant digits so the output format does not depend on the value.
void write_json(std::ostream& os, const nlohmann::json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        write_json(os, it.value(), depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], depth + 1);
      }
      os << '\n' << close << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        os << format_double(v);
      } else {
        os << "null";
      }
      return;
    }
    default:
      os << j.dump();
  }
}

void print_json(std::ostream& os, const nlohmann::json& j) {
  write_json(os, j, 0);
  os << '\n';
}

int cmd_classify(const RunConfig& cfg, const std::string& a, const std::string& b) {
  LatticeParams p = lattice(a, b, cfg);
  Sink sink(cfg.out);
  print_json(sink.os(), verdict_json(p, classify(p, cfg.max_m)));
  return 0;
}

template <class T>
int run_dual(const RunConfig& cfg, const LatticeParams& p, std::optional<int> strip) {
  const RegionVerdict v = classify(p, cfg.max_m);
  const std::optional<int> m = strip ? strip : v.strip;
  if (!m) throw UsageError("no strip contains (a, b); ab must be below 1");
  DualWindow<T> h = build_dual<T>(*m, p, cfg.resolution);
  Sink sink(cfg.out);
  write_dual_csv(sink.os(), h);
  nlohmann::json report = dual_json(h);
  report["label"] = to_string(v.label);
  // The report goes to stdout only when the samples went to a file.
  if (sink.to_file()) print_json(std::cout, report);
  return 0;
}

int cmd_dual(const RunConfig& cfg, const std::string& a, const std::string& b, std::optional<int> strip) {
  LatticeParams p = lattice(a, b, cfg);
  return cfg.exact() ? run_dual<Rational>(cfg, p, strip) : run_dual<double>(cfg, p, strip);
}

template <class T>
int run_certify(const RunConfig& cfg, const LatticeParams& p, std::optional<int> strip) {
  DetCertificate<T> cert;
  std::string matrix;
  const bool block = regions::with_scalars(p, [](const auto& a, const auto& b) {
    return regions::in_gamma3(a, b) || regions::in_lambda3(a, b);
  });
  if (!strip && block) {
    cert = certify_block<T>(p, cfg.root_tol);
    matrix = "D";
  } else {
    const std::optional<int> m = strip ? strip : strip_index(p);
    if (!m) throw UsageError("no strip contains (a, b); ab must be below 1");
    if (*m > kMaxPiecewiseStrip) throw UsageError("certification supports strips up to m = 5");
    cert = certify_strip<T>(*m, p, cfg.root_tol);
    matrix = "G" + std::to_string(*m) + " left half";
  }
  nlohmann::json j = certificate_to_json(cert);
  j["matrix"] = matrix;
  Sink sink(cfg.out);
  print_json(sink.os(), j);
  return 0;
}

int cmd_certify(const RunConfig& cfg, const std::string& a, const std::string& b, std::optional<int> strip) {
  LatticeParams p = lattice(a, b, cfg);
  return cfg.exact() ? run_certify<Rational>(cfg, p, strip) : run_certify<double>(cfg, p, strip);
}

int cmd_zz(const RunConfig& cfg, const std::string& a, const std::string& b, const std::string& kind) {
  LatticeParams p = lattice(a, b, cfg);
  const RationalLattice rl = rational_lattice(p);
  if (rl.p >= rl.q) throw UsageError("the Zibulski-Zeevi sweep needs ab < 1");
  ZZSpectrum s = kind == "phi" ? phi_sweep(p, cfg.grid_x, cfg.grid_nu) : rank_sweep(p, cfg.grid_x, cfg.grid_nu);
  Sink sink(cfg.out);
  if (cfg.format == "csv" || sink.to_file()) write_spectrum_csv(sink.os(), s);
  if (cfg.format == "json" || sink.to_file()) print_json(std::cout, spectrum_json(s));
  return 0;
}

Rational range_value(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid ") + what + ": " + e.what());
  }
}

int cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& ar, const std::vector<std::string>& br) {
  const Rational a_lo = range_value(ar[0], "a-range");
  const Rational a_hi = range_value(ar[1], "a-range");
  const Rational b_lo = range_value(br[0], "b-range");
  const Rational b_hi = range_value(br[1], "b-range");
  int na = 0, nb = 0;
  try {
    na = std::stoi(ar[2]);
    nb = std::stoi(br[2]);
  } catch (const std::exception&) {
    throw UsageError("range counts must be integers");
  }
  if (a_lo < 0 || b_lo < 0) throw UsageError("ranges must be nonnegative");
  auto rows = sweep_classify(a_lo, a_hi, na, b_lo, b_hi, nb, cfg.max_m);
  Sink sink(cfg.out);
  write_sweep_csv(sink.os(), rows);
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& a, const std::string& b) {
  LatticeParams p = lattice(a, b, cfg);
  CrossCheckOptions opt;
  opt.exact = cfg.exact();
  opt.residual_grid = cfg.residual_grid;
  opt.dual_resolution = cfg.resolution;
  opt.zz_grid = cfg.zz_grid;
  opt.max_q = cfg.max_q;
  opt.residual_tol = cfg.residual_tol;
  opt.zz_level = cfg.zz_level;
  CrossCheckReport rep = cross_check(p, opt);
  Sink sink(cfg.out);
  print_json(sink.os(), cross_check_json(p, rep));
  return rep.agree() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor frame analysis of the 2-spline window"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  RunConfig cfg;
  app.add_option("--mode", cfg.mode, "arithmetic: exact (rational inputs) or float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "summary format for zz: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--resolution", cfg.resolution, "dual window samples")->capture_default_str();
  app.add_option("--residual-grid", cfg.residual_grid, "duality residual samples")->capture_default_str();
  app.add_option("--zz-grid", cfg.zz_grid, "Zibulski-Zeevi evidence grid (n and 2n)")->capture_default_str();
  app.add_option("--max-q", cfg.max_q, "largest q for Zibulski-Zeevi evidence")->capture_default_str();
  app.add_option("--max-m", cfg.max_m, "largest strip index tested by classify")->capture_default_str();
  app.add_option("--residual-tol", cfg.residual_tol, "float duality residual tolerance")->capture_default_str();
  app.add_option("--root-tol", cfg.root_tol, "float root isolation tolerance")->capture_default_str();
  app.add_option("--zz-level", cfg.zz_level, "Zibulski-Zeevi non-frame level")->capture_default_str();
  app.fallthrough();

  std::string a, b;
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("a", a, "time shift (p/q or decimal)")->required();
    sub->add_option("b", b, "frequency shift (p/q or decimal)")->required();
  };

  auto* classify_cmd = app.add_subcommand("classify", "region verdict as JSON");
  add_point(classify_cmd);

  std::optional<int> strip;
  auto* dual_cmd = app.add_subcommand("dual", "dual window samples as CSV");
  add_point(dual_cmd);
  dual_cmd->add_option("--strip", strip, "strip index (default: the one containing (a, b))");

  auto* certify_cmd = app.add_subcommand("certify", "determinant nonvanishing certificate as JSON");
  add_point(certify_cmd);
  certify_cmd->add_option("--strip", strip, "certify G_m instead of the reduced block");

  std::string kind = "psi";
  std::vector<int> grid;
  auto* zz_cmd = app.add_subcommand("zz", "Zibulski-Zeevi spectrum");
  add_point(zz_cmd);
  zz_cmd->add_option("--grid", grid, "cells in x and nu")->expected(2);
  zz_cmd->add_option("--kind", kind, "psi (rank sweep) or phi")
      ->check(CLI::IsMember({"psi", "phi"}))
      ->capture_default_str();

  std::vector<std::string> a_range{"0", "1", "100"}, b_range{"1/2", "2", "100"};
  auto* sweep_cmd = app.add_subcommand("sweep", "classify a grid of cell midpoints as CSV");
  sweep_cmd->add_option("--a-range", a_range, "lo hi n")->expected(3)->capture_default_str();
  sweep_cmd->add_option("--b-range", b_range, "lo hi n")->expected(3)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "cross-check classification, dual and spectrum");
  add_point(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (grid.size() == 2) {
      cfg.grid_x = grid[0];
      cfg.grid_nu = grid[1];
    }
    cfg.validate();
    if (*classify_cmd) return cmd_classify(cfg, a, b);
    if (*dual_cmd) return cmd_dual(cfg, a, b, strip);
    if (*certify_cmd) return cmd_certify(cfg, a, b, strip);
    if (*zz_cmd) return cmd_zz(cfg, a, b, kind);
    if (*sweep_cmd) return cmd_sweep(cfg, a_range, b_range);
    if (*verify_cmd) return cmd_verify(cfg, a, b);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
