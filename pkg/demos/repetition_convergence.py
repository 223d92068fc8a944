"""Many shallow steps instead of one deep one.

After a successful post-selection the reservoir is back in |0>, so the
step can simply be repeated. Each round applies the same spectral filter:
the energy of the kept state decreases monotonically and the ground-state
fidelity climbs, at the price of a shrinking success probability per round.
"""

import numpy as np

from qitp import ItpParams, build_dilation, two_neutron_sd, SpinCouplings
from qitp.simulate import (
    apply_step,
    energy_expectation,
    extend_with_ancilla,
    postselect_ancilla0,
    state_fidelity,
)

op = two_neutron_sd(SpinCouplings(a1=-0.5, a2=np.diag([-1.5, -1.5, 1.5])))
params = ItpParams(tau=0.08, trial_mode="ground_state_exact")
u = build_dilation(op, params)

state = np.full(4, 0.5, dtype=complex)
print(f"shallow step: tau = {params.tau} / MeV, gap = "
      f"{op.eigenvalues[1] - op.eigenvalues[0]:.3f} MeV")
print()
print("round   energy (MeV)   fidelity to ground   p0 this round")
energy = energy_expectation(state, op)
fid = state_fidelity(state, op.ground_state)
print(f"  0     {energy:+.6f}      {fid:.6f}")
cumulative = 1.0
for round_index in range(1, 13):
    state, p0 = postselect_ancilla0(apply_step(extend_with_ancilla(state), u))
    cumulative *= p0
    energy = energy_expectation(state, op)
    fid = state_fidelity(state, op.ground_state)
    print(f" {round_index:2d}     {energy:+.6f}      {fid:.6f}             {p0:.4f}")

print()
print(f"ground energy {op.ground_energy:+.6f} MeV; cumulative success "
      f"probability {cumulative:.4f}")
