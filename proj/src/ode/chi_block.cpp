#include "noisyatom/chi_block.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "noisyatom/errors.hpp"

namespace noisyatom {

DensityMatrix ChiBlock::density() const {
    DensityMatrix d;
    d.rho_eg = vec(0);
    d.rho_gg = vec(2).real();
    d.rho_ee = vec(3).real();
    return d;
}

ChiBlock make_block(ChiKind kind, const SystemParams& p, const DensityMatrix& rho0) {
    ChiBlock b;
    b.kind = kind;
    b.vec << rho0.rho_eg, rho0.rho_ge(), rho0.rho_gg, rho0.rho_ee;
    b.gen = build_generators(p).of(kind);
    return b;
}

ChiBlock steady_state(const SystemParams& p) {
    if (!(p.gamma > 0.0))
        throw NumericalError("no-unique-steady-state", "steady state requires gamma > 0");
    ChiBlock b;
    b.kind = ChiKind::primed;
    b.gen = build_generators(p).n_primed;

    Mat4 a = b.gen;
    a.row(3) << 0.0, 0.0, 1.0, 1.0;
    Vec4 rhs = Vec4::Zero();
    rhs(3) = 1.0;

    const Eigen::FullPivLU<Mat4> lu(a);
    if (lu.rank() < 4 || lu.rcond() < 1e-14)
        throw NumericalError("no-unique-steady-state", "constrained steady-state system is singular");
    b.vec = lu.solve(rhs);
    return b;
}

ChiBlock evolve(const ChiBlock& block, double t) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("evolve: t must be finite and >= 0");
    ChiBlock out = block;
    if (t == 0.0) return out;
    const Mat4 scaled = block.gen * std::complex<double>(t, 0.0);
    out.vec = scaled.exp() * block.vec;
    return out;
}

}  // namespace noisyatom
