#include "noisyatom/generators.hpp"

namespace noisyatom {

namespace {

using C = std::complex<double>;
constexpr C I{0.0, 1.0};

}  // namespace

const Mat4& Generators::of(ChiKind k) const {
    switch (k) {
        case ChiKind::plain: return n;
        case ChiKind::primed: return n_primed;
        case ChiKind::double_primed: return n_double_primed;
    }
    return n;
}

Mat4 noiseless_matrix(const SystemParams& p) {
    const double D = p.detuning, g = p.gamma;
    const C h = 0.5 * I * p.rabi;
    Mat4 m;
    m << I * D - g, 0.0, h, -h,
         0.0, -I * D - g, -h, h,
         h, -h, 0.0, 2.0 * g,
         -h, h, 0.0, -2.0 * g;
    return m;
}

Generators build_generators(const SystemParams& p) {
    const double G = p.coll, L = p.phase_noise;
    const Mat4 m = noiseless_matrix(p);
    Generators out{m, m, m};

    out.n(0, 0) -= G;
    out.n(1, 1) -= 4.0 * L + G;
    out.n(2, 2) -= L;
    out.n(3, 3) -= L;

    out.n_primed(0, 0) -= L + G;
    out.n_primed(1, 1) -= L + G;

    out.n_double_primed(0, 0) -= 4.0 * L + G;
    out.n_double_primed(1, 1) -= G;
    out.n_double_primed(2, 2) -= L;
    out.n_double_primed(3, 3) -= L;
    return out;
}

NoiseLoadings noise_loadings(ChiKind k) {
    // rho_eg rotates with +dw, rho_ge with -dw; every factor e^{i n phi} adds n theta.
    switch (k) {
        case ChiKind::plain: return {{1, -1, 0, 0}, {0, 2, 1, 1}};
        case ChiKind::primed: return {{1, -1, 0, 0}, {-1, 1, 0, 0}};
        case ChiKind::double_primed: return {{1, -1, 0, 0}, {-2, 0, -1, -1}};
    }
    return {};
}

QTensor q_tensor(const SystemParams& p, ChiKind k) {
    const NoiseLoadings w = noise_loadings(k);
    QTensor q;
    for (int i = 0; i < 4; ++i)
        for (int kk = 0; kk < 4; ++kk)
            q(i, i, kk, kk) = -(w.coll[i] * w.coll[kk] * p.coll + w.phase[i] * w.phase[kk] * p.phase_noise);
    return q;
}

Eigen::Matrix4d printed_q_block(const SystemParams& p) {
    const double G = p.coll, L = p.phase_noise;
    Eigen::Matrix4d a;
    a << G, -G, 0, 0,
         -G, 4 * L + G, L, L,
         0, 2 * L, L, L,
         0, 2 * L, L, L;
    return a;
}

Mat4 contract(const Mat4& m, const QTensor& q) {
    Mat4 out = m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += q(i, k, k, j);
            out(i, j) += s;
        }
    return out;
}

}  // namespace noisyatom
