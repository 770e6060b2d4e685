#pragma once

#include <string>

#include "noisyatom/params.hpp"
#include "noisyatom/state.hpp"

namespace noisyatom {

// Dressed-state mixing angle, Theta = -arctan(Omega/Delta)/2, in (-pi/4, pi/4].
// At Delta = 0 the value is +pi/4, the limit from negative detuning; with this
// branch the ground state sits at phase difference pi and 2S^z swaps |1>, |2>.
double mixing_angle(const SystemParams& p);

// |1> = cos(Theta)|g> + sin(Theta)|e>,  |2> = -sin(Theta)|g> + cos(Theta)|e>.
// The dressed states follow the instantaneous laser phase: the excited
// component is taken in the frame rotating with phi.
struct DressedDecomposition {
    double c1 = 0.0;
    double c2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double theta = 0.0;
    bool phi1_defined = false;
    bool phi2_defined = false;

    bool valid() const { return phi1_defined && phi2_defined; }
    double dphi() const;  // phi1 - phi2 wrapped to (-pi, pi]
    double sphi() const { return phi1 + phi2; }
};

DressedDecomposition to_dressed(const AtomState& s, const SystemParams& p);
DressedDecomposition to_dressed(const AtomState& s, double theta);

// Inverse of to_dressed; phi and t are taken from the arguments.
AtomState reconstruct(const DressedDecomposition& d, double phi = 0.0, double t = 0.0);

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

// Tracks phase-sum continuity across samples of one trajectory.
class PhaseSumUnwrapper {
public:
    double push(double raw_sum);
    void reset() { started_ = false; }

private:
    bool started_ = false;
    double last_raw_ = 0.0;
    double unwrapped_ = 0.0;
};

struct SwapCheck {
    bool ok = false;
    std::string diagnostic;
};

// Verifies 2S^z|1> = |2> and 2S^z|2> = |1> in the computed basis. Only
// meaningful at Delta = 0; other detunings report false.
SwapCheck collisional_swap_check(const SystemParams& p, double tol = 1e-12);

}  // namespace noisyatom
