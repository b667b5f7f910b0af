#pragma once

// Truncated two-mode Fock space and dense operators on it.
//
// Basis contract: |m magnons, n photons> sits at index m * (n_max_a + 1) + n
// (magnon-major). Amplitude and density-matrix dumps rely on this ordering.

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "ptmag/errors.hpp"
#include "ptmag/params.hpp"

namespace ptmag {

using cplx = std::complex<double>;

enum class Mode { magnon, photon };

inline std::string to_string(Mode m) { return m == Mode::magnon ? "magnon" : "photon"; }

struct FockState {
  int magnons = 0;
  int photons = 0;
  friend bool operator==(const FockState&, const FockState&) = default;
};

class FockSpace {
 public:
  FockSpace(int n_max_m, int n_max_a) : n_max_m_(n_max_m), n_max_a_(n_max_a) {
    if (n_max_m < 1 || n_max_a < 1)
      throw ParameterRangeError("FockSpace: cutoffs must be >= 1");
  }

  int n_max_m() const { return n_max_m_; }
  int n_max_a() const { return n_max_a_; }
  int dim() const { return (n_max_m_ + 1) * (n_max_a_ + 1); }

  bool contains(FockState s) const {
    return s.magnons >= 0 && s.magnons <= n_max_m_ && s.photons >= 0 && s.photons <= n_max_a_;
  }

  int index(FockState s) const {
    if (!contains(s))
      throw IndexError("FockSpace: state |" + std::to_string(s.magnons) + "," +
                       std::to_string(s.photons) + "> outside cutoffs");
    return s.magnons * (n_max_a_ + 1) + s.photons;
  }

  FockState state(int k) const {
    if (k < 0 || k >= dim()) throw IndexError("FockSpace: index out of range");
    return {k / (n_max_a_ + 1), k % (n_max_a_ + 1)};
  }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int n_max_m_;
  int n_max_a_;
};

struct OperatorMatrix {
  FockSpace space;
  Eigen::MatrixXcd entries;

  OperatorMatrix(FockSpace s, Eigen::MatrixXcd m) : space(s), entries(std::move(m)) {
    if (entries.rows() != space.dim() || entries.cols() != space.dim())
      throw ParameterRangeError("OperatorMatrix: dimension does not match space");
  }

  OperatorMatrix adjoint() const { return {space, entries.adjoint()}; }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    return {a.space, a.entries * b.entries};
  }
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    return {a.space, a.entries + b.entries};
  }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    return {a.space, a.entries - b.entries};
  }
  friend OperatorMatrix operator*(cplx s, const OperatorMatrix& a) { return {a.space, s * a.entries}; }
};

inline OperatorMatrix identity(const FockSpace& space) {
  return {space, Eigen::MatrixXcd::Identity(space.dim(), space.dim())};
}

/// Lowering operator of one mode, identity on the other.
inline OperatorMatrix annihilator(const FockSpace& space, Mode mode) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int k = 0; k < space.dim(); ++k) {
    const FockState s = space.state(k);
    const int n = mode == Mode::magnon ? s.magnons : s.photons;
    if (n == 0) continue;
    FockState lower = s;
    (mode == Mode::magnon ? lower.magnons : lower.photons) -= 1;
    m(space.index(lower), k) = std::sqrt(double(n));
  }
  return {space, std::move(m)};
}

inline OperatorMatrix creator(const FockSpace& space, Mode mode) {
  return annihilator(space, mode).adjoint();
}

inline OperatorMatrix number(const FockSpace& space, Mode mode) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int k = 0; k < space.dim(); ++k) {
    const FockState s = space.state(k);
    m(k, k) = mode == Mode::magnon ? s.magnons : s.photons;
  }
  return {space, std::move(m)};
}

inline cplx matrix_element(const OperatorMatrix& op, FockState bra, FockState ket) {
  return op.entries(op.space.index(bra), op.space.index(ket));
}

enum class Frame { rotating };

/// Magnon drive term Omega_d (m^dag + m).
inline OperatorMatrix drive_operator(const SystemParams& p, const FockSpace& space) {
  const OperatorMatrix m = annihilator(space, Mode::magnon);
  return {space, p.omega_d_amp * (m.entries + m.entries.adjoint())};
}

/// Rotating-frame Hamiltonian
///
///   H = (D_a - i k_a [diss]) a^dag a + (D_m - i k_m [diss]) m^dag m
///       + chi (m^dag m)^2 + g (a^dag m + a m^dag) + Omega_d (m^dag + m).
///
/// The Kerr term uses the square of the truncated number operator, i.e. the
/// diagonal of m^2 values.
inline OperatorMatrix build_hamiltonian(const SystemParams& p, const FockSpace& space,
                                        Frame = Frame::rotating, bool dissipative = true) {
  p.validate();
  const Eigen::MatrixXcd a = annihilator(space, Mode::photon).entries;
  const Eigen::MatrixXcd m = annihilator(space, Mode::magnon).entries;
  const Eigen::MatrixXcd na = number(space, Mode::photon).entries;
  const Eigen::MatrixXcd nm = number(space, Mode::magnon).entries;
  const double loss = dissipative ? 1.0 : 0.0;

  Eigen::MatrixXcd h = cplx(p.delta_a, -loss * p.kappa_a) * na +
                       cplx(p.delta_m, -loss * p.kappa_m) * nm + p.chi * (nm * nm) +
                       p.g * (a.adjoint() * m + a * m.adjoint()) +
                       p.omega_d_amp * (m.adjoint() + m);
  return {space, std::move(h)};
}

}  // namespace ptmag
