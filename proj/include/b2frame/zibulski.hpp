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

#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "b2frame/lattice.hpp"

namespace b2frame {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// a, b and ab = p/q in lowest terms.
struct RationalLattice {
  double a = 0;
  double b = 0;
  long p = 0;
  long q = 0;
};

/// Throws PreconditionError when ab has no rational form.
RationalLattice rational_lattice(const LatticeParams& params);

/// p x q matrix, entry (k, l) = p^{1/2} sum_n B2(x - (p/q) l - n/b) e^{2 pi i (n/b)(nu + k/p)}.
ComplexMatrix build_phi(double x, double nu, const LatticeParams& params);

/// p x q matrix, entry (k, l) = b^{-1/2} sum_n B2(x + aqn + al + k/b) e^{-2 pi i aqn nu}.
ComplexMatrix build_psi(double x, double nu, const LatticeParams& params);

/// q x p matrix, entry (l, k) = sum_n B2(x + al + k/b - aqn) y^n. With
/// y = e^{2 pi i aq nu} this is b^{1/2} times the transpose of build_psi.
ComplexMatrix build_p(double x, Complex y, const LatticeParams& params);

/// Singular values of a complex matrix, descending.
Eigen::VectorXd singular_values(const ComplexMatrix& m);

enum class SweepKind { Psi, Phi };

struct ZZSpectrum {
  SweepKind kind = SweepKind::Psi;
  long p = 0;
  long q = 0;
  int nx = 0;
  int nnu = 0;
  double x_extent = 0;   ///< cells cover [0, x_extent) x [0, nu_extent)
  double nu_extent = 0;
  std::vector<double> smin;  ///< row-major, index ix * nnu + inu
  std::vector<double> smax;
  double A_est = 0;
  double B_est = 0;
  double threshold = 0;
  std::vector<std::pair<int, int>> singular_cells;  ///< smin < threshold

  double cell_x(int ix) const { return (ix + 0.5) * x_extent / nx; }
  double cell_nu(int inu) const { return (inu + 0.5) * nu_extent / nnu; }
};

inline constexpr double kSingularCellThreshold = 1e-6;

/// Psi on midpoints of an nx x nnu grid over [0, a) x [0, 1/(aq)).
ZZSpectrum rank_sweep(const LatticeParams& params, int nx, int nnu, double threshold = kSingularCellThreshold);

/// Phi on midpoints of an nx x nnu grid over [0, 1) x [0, 1).
ZZSpectrum phi_sweep(const LatticeParams& params, int nx, int nnu, double threshold = kSingularCellThreshold);

enum class Evidence { NumericallyNonFrame, Degenerating, FrameLike, Inconclusive };

std::string to_string(Evidence e);

inline constexpr double kNonFrameLevel = 1e-3;
inline constexpr double kNonFrameDrop = 10.0;

/// Compares A_est on an n-grid and the 2n-grid. NumericallyNonFrame needs
/// A_n < level and A_2n <= A_n / 10; FrameLike needs A_2n >= max(A_n / 2, level).
Evidence classify_evidence(double a_coarse, double a_fine, double level = kNonFrameLevel);

struct EvidenceReport {
  ZZSpectrum coarse;
  ZZSpectrum fine;
  Evidence level = Evidence::Inconclusive;
  double drop = 0;  ///< A_coarse / A_fine (infinity when A_fine = 0)
};

EvidenceReport frame_evidence(const LatticeParams& params, int n, SweepKind kind = SweepKind::Psi,
                              double level = kNonFrameLevel);

void write_spectrum_csv(std::ostream& os, const ZZSpectrum& s);
nlohmann::json spectrum_json(const ZZSpectrum& s);
nlohmann::json evidence_json(const EvidenceReport& r);

// ---------------------------------------------------------------------------
// The special points (1/2, 3/2) and (3/8, 3/2).

LatticeParams j1_params();
LatticeParams j3_params();

/// M1: rows l = 0, 2, 3 of P at (1/2, 3/2).
ComplexMatrix j1_m(double x, Complex y);
/// N1 = diag(1, 1/y, 1/y) M1.
ComplexMatrix j1_n(double x, Complex y);

struct J1Report {
  double x = 0;
  std::string interval;  ///< "[0,1/6]", "[1/6,1/3]" or "[1/3,1/2]"
  bool quadratic = false;  ///< |N| = f y^2 - g y + h on [1/3, 1/2], else f - y g
  double f = 0;
  double g = 0;
  double h = 0;
  double max_identity_error = 0;  ///< over unit-circle samples of y
  bool identity_ok = false;
  bool signs_ok = false;        ///< f < 0 < g (linear cases)
  double discriminant = 0;      ///< g^2 - 4 f h (quadratic case)
  bool discriminant_positive = false;
  bool unit_roots_excluded = false;  ///< |N| != 0 at y = 1 and y = -1 (quadratic case)
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline constexpr double kIdentityTol = 1e-12;

J1Report case_j1_check(double x);

/// Smallest singular value of the full 4 x 3 P at (1/2, 3/2).
double j1_full_smin(double x, double nu);

/// M3: rows l = 0..3, 8..12 of P at (3/8, 3/2), columns permuted to
/// k = 8, 0, 7, 6, 1, 5, 4, 3, 2.
ComplexMatrix j3_m(double x, Complex y);

struct J3Report {
  double x = 0;
  Complex y;
  Complex det_a;       ///< |A3|, upper-left 4 x 4 block
  Complex det_b;       ///< |B3|, lower-right 5 x 5 block
  Complex f;           ///< |A3| / y^3
  Complex g;           ///< |B3| / y^5
  double o_block_max = 0;
  bool o_block_zero = false;
  bool f_real = false;
  bool g_real = false;
  double f_spread = 0;  ///< |f(x, y) - f(x, 1)|
  double g_spread = 0;
  bool y_independent = false;
  bool f_positive = false;
  bool g_positive = false;
  bool nonvanishing = false;  ///< f != 0 and g != 0
  std::vector<std::string> failures;
  bool structure_ok() const { return o_block_zero; }
  bool ok() const { return failures.empty(); }
};

J3Report case_j3_check(double x, Complex y);

nlohmann::json j1_json(const J1Report& r);
nlohmann::json j3_json(const J3Report& r);

}  // namespace b2frame
