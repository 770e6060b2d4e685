#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "noisyatom/params.hpp"

namespace noisyatom {

using Mat4 = Eigen::Matrix<std::complex<double>, 4, 4>;
using Vec4 = Eigen::Matrix<std::complex<double>, 4, 1>;

// The three phase-dressed variable sets, basis order (chi1, chi2, chi3, chi4):
//   plain:         (rho_eg,          rho_ge e^{2i phi}, rho_gg e^{i phi},  rho_ee e^{i phi})
//   primed:        (rho_eg e^{-i phi}, rho_ge e^{i phi},  rho_gg,            rho_ee)
//   double_primed: (rho_eg e^{-2i phi}, rho_ge,          rho_gg e^{-i phi}, rho_ee e^{-i phi})
enum class ChiKind { plain, primed, double_primed };

struct Generators {
    Mat4 n;              // plain
    Mat4 n_primed;
    Mat4 n_double_primed;

    const Mat4& of(ChiKind k) const;
};

Generators build_generators(const SystemParams& p);

// Noise-free generator, shared by all three kinds.
Mat4 noiseless_matrix(const SystemParams& p);

// Each variable picks up a multiplicative noise i(a_i dw + b_i theta), with dw the
// collisional frequency noise and theta the laser phase velocity.
struct NoiseLoadings {
    std::array<double, 4> coll;
    std::array<double, 4> phase;
};

NoiseLoadings noise_loadings(ChiKind k);

// Rank-4 noise tensor defined by <F_ij(t) F_kl(t')> = 2 Q_ijkl delta(t - t').
class QTensor {
public:
    double operator()(int i, int j, int k, int l) const { return q_[idx(i, j, k, l)]; }
    double& operator()(int i, int j, int k, int l) { return q_[idx(i, j, k, l)]; }

private:
    static int idx(int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; }
    std::array<double, 256> q_{};
};

QTensor q_tensor(const SystemParams& p, ChiKind k);

// The 4x4 block A with Q_ijkl = -delta_ij delta_kl A_ik as printed for the
// plain variables (rows 2 and 3/4 are not symmetric there; see the tests).
Eigen::Matrix4d printed_q_block(const SystemParams& p);

// M_ij + sum_k Q_ikkj.
Mat4 contract(const Mat4& m, const QTensor& q);

}  // namespace noisyatom
