#pragma once

// Master-equation solver on the truncated two-mode Fock space.
//
//   d rho / dt = -i [H, rho] + sum_k r_k D[c_k] rho,
//   D[c] rho   = 2 c rho c^dag - c^dag c rho - rho c^dag c.
//
// Superoperators act on column-stacked density matrices:
// vec(rho)[i + d j] = rho(i, j), and vec(A rho B) = (B^T kron A) vec(rho).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#ifdef PTMAG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ptmag/errors.hpp"
#include "ptmag/fock.hpp"
#include "ptmag/params.hpp"

namespace ptmag {

using SparseMatrixXcd = Eigen::SparseMatrix<cplx>;

enum class GainModel {
  negative_rate,    ///< kappa_a < 0 plugged into the loss dissipator
  gain_dissipator,  ///< |kappa_a| D[a^dag] when kappa_a < 0
};

inline std::string to_string(GainModel g) {
  return g == GainModel::negative_rate ? "negative_rate" : "gain_dissipator";
}

struct LindbladConfig {
  GainModel gain_model = GainModel::negative_rate;
  double n_th_a = 0.0;
  double n_th_m = 0.0;

  void validate() const {
    if (n_th_a != 0.0 || n_th_m != 0.0)
      throw ParameterRangeError("LindbladConfig: thermal occupations must be zero");
  }
};

struct CollapseChannel {
  double rate;
  OperatorMatrix op;
};

struct DensityMatrix {
  FockSpace space;
  Eigen::MatrixXcd rho;

  DensityMatrix(FockSpace s, Eigen::MatrixXcd m) : space(s), rho(std::move(m)) {
    if (rho.rows() != space.dim() || rho.cols() != space.dim())
      throw ParameterRangeError("DensityMatrix: dimension does not match space");
  }

  static DensityMatrix projector(const FockSpace& space, FockState s) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    m(space.index(s), space.index(s)) = 1.0;
    return {space, std::move(m)};
  }

  static DensityMatrix pure(const FockSpace& space, const Eigen::VectorXcd& psi) {
    return {space, psi * psi.adjoint()};
  }

  cplx trace() const { return rho.trace(); }
  double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

  double min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  cplx expect(const OperatorMatrix& op) const { return (rho * op.entries).trace(); }
};

/// Half the trace norm of the difference of two density matrices.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::MatrixXcd diff = a.rho - b.rho;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (diff + diff.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

struct Liouvillian {
  FockSpace space;
  SparseMatrixXcd matrix;
  OperatorMatrix hamiltonian;  ///< Hermitian, including the drive
  OperatorMatrix drive;        ///< the part of `hamiltonian` that changes excitation number
  std::vector<CollapseChannel> channels;

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }

  DensityMatrix apply(const DensityMatrix& rho) const {
    return {space, unvectorize(matrix * vectorize(rho.rho), space.dim())};
  }

  /// Max absolute row sum.
  double norm_inf() const {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(matrix.rows());
    for (int k = 0; k < matrix.outerSize(); ++k)
      for (SparseMatrixXcd::InnerIterator it(matrix, k); it; ++it) rows(it.row()) += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
  }
};

namespace detail {

inline void kron_into(std::vector<Eigen::Triplet<cplx>>& out, const Eigen::MatrixXcd& a,
                      const Eigen::MatrixXcd& b, cplx scale) {
  const int n = int(b.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          const cplx bkl = b(k, l);
          if (bkl == cplx(0.0)) continue;
          out.emplace_back(i * n + k, j * n + l, scale * aij * bkl);
        }
    }
}

// Total excitation number of each basis state.
inline std::vector<int> excitations(const FockSpace& space) {
  std::vector<int> n(space.dim());
  for (int k = 0; k < space.dim(); ++k) {
    const FockState s = space.state(k);
    n[k] = s.magnons + s.photons;
  }
  return n;
}

inline bool lowers_excitations(const OperatorMatrix& op) {
  const auto n = excitations(op.space);
  for (int i = 0; i < op.entries.rows(); ++i)
    for (int j = 0; j < op.entries.cols(); ++j)
      if (op.entries(i, j) != cplx(0.0) && n[i] != n[j] - 1) return false;
  return true;
}

}  // namespace detail

/// Liouvillian from explicit pieces. `drive` must be contained in `hamiltonian`.
inline Liouvillian assemble_liouvillian(const FockSpace& space, const OperatorMatrix& hamiltonian,
                                        const OperatorMatrix& drive,
                                        std::vector<CollapseChannel> channels) {
  const int d = space.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  std::vector<Eigen::Triplet<cplx>> t;
  const cplx minus_i(0.0, -1.0);
  // -i (H rho - rho H)
  detail::kron_into(t, id, hamiltonian.entries, minus_i);
  detail::kron_into(t, hamiltonian.entries.transpose(), id, -minus_i);
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const Eigen::MatrixXcd& c = ch.op.entries;
    const Eigen::MatrixXcd cdc = c.adjoint() * c;
    detail::kron_into(t, c.conjugate(), c, 2.0 * ch.rate);
    detail::kron_into(t, id, cdc, -ch.rate);
    detail::kron_into(t, cdc.transpose(), id, -ch.rate);
  }
  SparseMatrixXcd l(d * d, d * d);
  l.setFromTriplets(t.begin(), t.end());
  l.prune(cplx(0.0));
  return {space, std::move(l), hamiltonian, drive, std::move(channels)};
}

/// -i[H, .] + kappa_a D[a] + kappa_m D[m] with H the Hermitian rotating-frame
/// Hamiltonian. Under gain_dissipator a negative kappa_a becomes |kappa_a| D[a^dag].
inline Liouvillian build_liouvillian(const SystemParams& p, const FockSpace& space,
                                     const LindbladConfig& cfg = {}) {
  cfg.validate();
  const OperatorMatrix h = build_hamiltonian(p, space, Frame::rotating, false);
  const OperatorMatrix a = annihilator(space, Mode::photon);
  const OperatorMatrix m = annihilator(space, Mode::magnon);
  std::vector<CollapseChannel> channels;
  if (cfg.gain_model == GainModel::gain_dissipator && p.kappa_a < 0.0)
    channels.push_back({-p.kappa_a, a.adjoint()});
  else
    channels.push_back({p.kappa_a, a});
  channels.push_back({p.kappa_m, m});
  return assemble_liouvillian(space, h, drive_operator(p, space), std::move(channels));
}

struct StabilityReport {
  bool stable = true;
  double abscissa = 0.0;  ///< largest real part once the stationary eigenvalue is removed
  cplx leading{0.0, 0.0};
  std::string method;
};

/// Full spectrum of the dense Liouvillian with the stationary eigenvalue removed.
inline StabilityReport stability_full(const Liouvillian& l) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(l.dense(), false);
  if (es.info() != Eigen::Success) throw NoSteadyStateError("stability: eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::Index zero = 0;
  ev.cwiseAbs().minCoeff(&zero);
  StabilityReport r;
  r.method = "full spectrum";
  r.abscissa = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (k == zero) continue;
    if (ev(k).real() > r.abscissa) {
      r.abscissa = ev(k).real();
      r.leading = ev(k);
    }
  }
  if (ev.size() == 1) r.abscissa = 0.0;
  r.stable = r.abscissa <= 1e-8;
  return r;
}

/// Decides whether the stationary state is an attractor.
///
/// Generators with non-negative rates are completely positive and cannot
/// have eigenvalues in the right half-plane. Otherwise, when every channel
/// lowers the excitation number, the undriven Liouvillian is block
/// triangular in (N_ket, N_bra) and its spectrum is
/// { -i (e_p - conj(e_q)) } over eigenvalues e of the undriven
/// H - i sum r c^dag c. The drive perturbs that spectrum by a small amount,
/// so a clear sign decides stability; marginal cases fall back to the full
/// dense spectrum.
inline StabilityReport stability(const Liouvillian& l) {
  const bool all_positive = std::all_of(l.channels.begin(), l.channels.end(),
                                        [](const CollapseChannel& c) { return c.rate >= 0.0; });
  if (all_positive) {
    StabilityReport r;
    r.method = "completely positive generator";
    return r;
  }
  const bool lowering = std::all_of(l.channels.begin(), l.channels.end(), [](const CollapseChannel& c) {
    return detail::lowers_excitations(c.op);
  });
  if (!lowering) return stability_full(l);

  Eigen::MatrixXcd heff = l.hamiltonian.entries - l.drive.entries;
  for (const auto& ch : l.channels)
    heff -= cplx(0.0, ch.rate) * (ch.op.entries.adjoint() * ch.op.entries);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(heff, false);
  const Eigen::VectorXcd e = es.eigenvalues();

  std::vector<cplx> lambdas;
  lambdas.reserve(e.size() * e.size());
  for (Eigen::Index p = 0; p < e.size(); ++p)
    for (Eigen::Index q = 0; q < e.size(); ++q)
      lambdas.push_back(cplx(0.0, -1.0) * (e(p) - std::conj(e(q))));
  const auto zero = std::min_element(lambdas.begin(), lambdas.end(),
                                     [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
  lambdas.erase(zero);

  StabilityReport r;
  r.method = "undriven block spectrum";
  r.abscissa = -std::numeric_limits<double>::infinity();
  for (cplx z : lambdas)
    if (z.real() > r.abscissa) {
      r.abscissa = z.real();
      r.leading = z;
    }
  const double margin = std::max(1e-3, 10.0 * l.drive.entries.cwiseAbs().maxCoeff());
  if (std::abs(r.abscissa) <= margin) return stability_full(l);
  r.stable = r.abscissa < 0.0;
  return r;
}

/// Trace-one solution of L rho = 0 without any stability or positivity check.
///
/// Row (0,0) of L is a combination of the other diagonal rows when L is
/// trace preserving, so it is replaced by the trace functional.
inline DensityMatrix null_state(const Liouvillian& l) {
  const int d = l.space.dim();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(l.matrix.nonZeros() + d);
  for (int k = 0; k < l.matrix.outerSize(); ++k)
    for (SparseMatrixXcd::InnerIterator it(l.matrix, k); it; ++it)
      if (it.row() != 0) t.emplace_back(int(it.row()), int(it.col()), it.value());
  for (int i = 0; i < d; ++i) t.emplace_back(0, i * (d + 1), cplx(1.0));
  SparseMatrixXcd a(d * d, d * d);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

#ifdef PTMAG_HAVE_UMFPACK
  Eigen::UmfPackLU<SparseMatrixXcd> lu;
#else
  Eigen::SparseLU<SparseMatrixXcd, Eigen::COLAMDOrdering<int>> lu;
#endif
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw NoSteadyStateError("steady_state: Liouvillian null space is not one-dimensional");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
  rhs(0) = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw NoSteadyStateError("steady_state: linear solve failed");

  Eigen::MatrixXcd rho = unvectorize(x, d);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace();
  const double residual = (l.matrix * vectorize(rho)).norm();
  if (!(residual < 1e-8))
    throw NoSteadyStateError("steady_state: residual " + std::to_string(residual) + " exceeds 1e-8");
  return {l.space, std::move(rho)};
}

inline DensityMatrix steady_state(const Liouvillian& l) {
  const StabilityReport s = stability(l);
  if (!s.stable) {
    std::ostringstream os;
    os << "steady_state: unstable Liouvillian, eigenvalue " << s.leading.real()
       << (s.leading.imag() < 0 ? " - " : " + ") << std::abs(s.leading.imag()) << "i (" << s.method
       << ")";
    throw NoSteadyStateError(os.str());
  }
  DensityMatrix rho = null_state(l);
  const double lowest = rho.min_eigenvalue();
  if (lowest < -1e-6)
    throw PositivityViolationError("steady_state: density matrix eigenvalue " + std::to_string(lowest));
  return rho;
}

/// Largest dt with dt * ||L||_inf <= 1/2.
inline double stable_time_step(const Liouvillian& l) {
  const double n = l.norm_inf();
  return n > 0.0 ? 0.5 / n : 1.0;
}

/// Classical fourth-order Runge-Kutta integration of d rho/dt = L rho.
inline DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw ParameterRangeError("evolve: need dt > 0, t_final >= 0");
  if (!(rho0.space == l.space)) throw ParameterRangeError("evolve: space mismatch");
  if (!(dt * l.norm_inf() < 1.0))
    throw ParameterRangeError("evolve: dt * ||L|| must be < 1 (use stable_time_step)");
  Eigen::VectorXcd x = vectorize(rho0.rho);
  const cplx tr0 = rho0.trace();
  const double norm0 = std::max(1.0, x.norm());
  const int d = l.space.dim();
  auto trace_of = [d](const Eigen::VectorXcd& v) {
    cplx s = 0.0;
    for (int i = 0; i < d; ++i) s += v(i * (d + 1));
    return s;
  };
  double t = 0.0;
  while (t < t_final) {
    const double remaining = t_final - t;
    const double h = std::min(dt, remaining);
    const Eigen::VectorXcd k1 = l.matrix * x;
    const Eigen::VectorXcd k2 = l.matrix * (x + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = l.matrix * (x + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = l.matrix * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = h >= remaining ? t_final : t + h;
    if (!x.allFinite() || x.norm() > 1e6 * norm0 || std::abs(trace_of(x) - tr0) > 1e-3 * std::max(1.0, std::abs(tr0)))
      throw DivergenceError("evolve: state diverged at t = " + std::to_string(t));
  }
  return {l.space, unvectorize(x, d)};
}

/// g2(0) = <o^dag o^dag o o> / <o^dag o>^2, normalization independent.
/// Both operators are diagonal in the Fock basis, so only the populations
/// enter, weighted by the integers n and n(n-1).
inline double g2_numeric(const DensityMatrix& rho, Mode mode) {
  const cplx tr = rho.trace();
  cplx pop = 0.0, corr = 0.0;
  for (int i = 0; i < rho.space.dim(); ++i) {
    const FockState s = rho.space.state(i);
    const double n = mode == Mode::magnon ? s.magnons : s.photons;
    pop += n * rho.rho(i, i);
    corr += n * (n - 1.0) * rho.rho(i, i);
  }
  pop /= tr;
  corr /= tr;
  if (!(pop.real() > 1e-12))
    throw UndefinedStatisticsError("g2_numeric: " + to_string(mode) + " population below 1e-12");
  const cplx g2 = corr / (pop * pop);
  if (std::abs(g2.imag()) > 1e-8 * std::max(1.0, std::abs(g2.real())))
    throw UndefinedStatisticsError("g2_numeric: imaginary residue " + std::to_string(g2.imag()));
  return g2.real();
}

inline double mean_number(const DensityMatrix& rho, Mode mode) {
  return (rho.expect(number(rho.space, mode)) / rho.trace()).real();
}

/// One line per row, entries "re,im" separated by single spaces.
inline void write_density_matrix(std::ostream& os, const DensityMatrix& rho) {
  std::ostringstream line;
  line.precision(17);
  for (int i = 0; i < rho.rho.rows(); ++i) {
    line.str("");
    for (int j = 0; j < rho.rho.cols(); ++j) {
      if (j) line << ' ';
      line << rho.rho(i, j).real() << ',' << rho.rho(i, j).imag();
    }
    os << line.str() << '\n';
  }
}

inline DensityMatrix read_density_matrix(std::istream& is, const FockSpace& space) {
  const int d = space.dim();
  Eigen::MatrixXcd m(d, d);
  std::string row;
  for (int i = 0; i < d; ++i) {
    if (!std::getline(is, row)) throw ParameterRangeError("read_density_matrix: missing row");
    std::istringstream rs(row);
    for (int j = 0; j < d; ++j) {
      double re = 0.0, im = 0.0;
      char comma = 0;
      if (!(rs >> re >> comma >> im) || comma != ',')
        throw ParameterRangeError("read_density_matrix: malformed entry in row " + std::to_string(i));
      m(i, j) = cplx(re, im);
    }
  }
  return {space, std::move(m)};
}

}  // namespace ptmag
