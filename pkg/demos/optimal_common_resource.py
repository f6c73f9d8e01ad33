"""Walkthrough: the optimal common resource for a family of bipartite states.

A state can be LOCC-converted into every member of a target family exactly
when its Schmidt vector sits below all of theirs in the majorization order.
The order has greatest lower bounds, so each family has one optimal choice;
this script builds it for a small worked family, for the closed-form
"largest coefficient at least a" family, and checks ensemble feasibility.
"""

import numpy as np

from locc_forge import (
    Bipartition,
    CumulativeEnvelope,
    PureState,
    can_transform,
    ensemble_feasible,
    is_common_resource,
    majorizes,
    ocr_envelope,
    ocr_finite,
    sa_family_ocr,
)


def state_with_schmidt(entries):
    entries = np.asarray(entries, dtype=float)
    d = entries.size
    amps = np.zeros(d * d, dtype=complex)
    amps[:: d + 1] = np.sqrt(entries)
    return PureState((d, d), amps)


def banner(title):
    print(f"\n=== {title} ===")


rng = np.random.default_rng(7)

banner("A two-member family and its greatest lower bound")
family = [np.array([0.7, 0.2, 0.1]), np.array([0.6, 0.35, 0.05])]
bound = ocr_finite(family)
print("members:        ", [list(map(float, v)) for v in family])
print("optimal resource:", np.round(bound.entries, 6))
for v in family:
    print(f"  below {v}? ", majorizes(v, bound))

banner("The bound really is optimal")
print("any flatter vector stays below it; any steeper one escapes a member:")
flatter = np.array([1 / 3, 1 / 3, 1 / 3])
steeper = np.array([0.65, 0.3, 0.05])
print(f"  uniform {np.round(flatter, 4)} below bound?   ", majorizes(bound, flatter))
print(f"  steeper {steeper} below both members?", all(majorizes(v, steeper) for v in family))

banner("Deterministic conversion follows the same order")
cut = Bipartition.of({0}, 2)
resource = state_with_schmidt(bound.entries)
targets = [state_with_schmidt(v) for v in family]
print("resource reaches every member:", is_common_resource(resource, targets, cut))
print("members cannot reach each other:",
      not can_transform(targets[0], targets[1], cut),
      "and", not can_transform(targets[1], targets[0], cut))

banner("Closed form for the family 'largest coefficient >= a'")
d, a = 4, 0.4
bound = sa_family_ocr(d, a)
print(f"d={d}, a={a}: ", np.round(bound.entries, 6))
print("sampled members always sit above it:")
for _ in range(3):
    x1 = rng.uniform(a, 1.0)
    rest = (1.0 - x1) * rng.dirichlet(np.ones(d - 1))
    member = np.sort(np.concatenate([[x1], rest]))[::-1]
    print(f"  {np.round(member, 4)} -> {majorizes(member, bound)}")

banner("The same bound via a cumulative envelope")
c = np.cumsum([a] + [(1 - a) / (d - 1)] * (d - 1))
print("envelope:", np.round(c, 6))
print("first differences:", np.round(ocr_envelope(CumulativeEnvelope(c)).entries, 6))

banner("Ensembles: one resource, many outputs at chosen probabilities")
members = [np.sort(rng.dirichlet(np.ones(5)))[::-1] for _ in range(4)]
probs = rng.dirichlet(np.ones(4))
bound = ocr_finite(members)
print("glb source feasible for random ensemble:", ensemble_feasible(bound, list(zip(members, probs))))
print("but a skewed source is not:",
      ensemble_feasible([0.96, 0.01, 0.01, 0.01, 0.01], list(zip(members, probs))))
