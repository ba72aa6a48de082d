"""Channel quality: singlet fraction vs achieved teleportation fidelity.

For a handful of two-qubit channel states, compares the average fidelity this
circuit achieves against the optimal value (2 F_AB + 1)/3 set by the channel's
singlet fraction F_AB.  The mixed pair I/8 + |pair><pair|/2 teleports every
input state with fidelity exactly 3/4 - above the 2/3 classical bound - even
though it is noisy enough to violate no Bell inequality.
"""

import numpy as np

from qtelsim import (
    bell_phi_plus,
    custom_channel_average,
    dephased_bell_channel,
    horodecki_optimal,
    maximally_mixed_channel,
    popescu_channel,
    singlet_fraction,
)

channels = [
    ("perfect pair", bell_phi_plus()[1]),
    ("mixed pair (Popescu)", popescu_channel()),
    ("dephased pair, exposure 1", dephased_bell_channel(1.0)),
    ("dephased pair, exposure 4", dephased_bell_channel(4.0)),
    ("maximally mixed", maximally_mixed_channel()),
]

print(f"{'channel':28s} {'F_AB':>8s} {'optimal':>9s} {'achieved':>9s}")
for name, rho in channels:
    f_ab = singlet_fraction(rho)
    print(f"{name:28s} {f_ab:8.4f} {horodecki_optimal(f_ab):9.4f} "
          f"{custom_channel_average(rho):9.4f}")

print()
print("dephased pairs achieve their optimum with this circuit; the classical")
print("bound is 2/3, reached only when the singlet fraction falls to 1/2.")
