"""Walkthrough: why no 3x2x2 state can prepare all three-qubit states.

The pair subsystem of a 3x2x2 state spans at most three of its four
dimensions; the direction it misses splits these states into tensor rank 3
(missing direction a product) and rank 4 (missing direction entangled).
Majorization across bipartite cuts then rules out transformations that any
universal resource would need.
"""

import numpy as np

from locc_forge import (
    LocalOperator,
    PureState,
    apply_local,
    cut_condition,
    ghz2_state,
    missing_dimension,
    reduced_spectrum,
    symmetric_target_flag,
    tensor_rank_322,
)


def banner(title):
    print(f"\n=== {title} ===")


def canonical_rank3():
    amps = np.zeros(12, dtype=complex)
    amps[[0, 5, 10]] = 1.0 / np.sqrt(3.0)
    return PureState((3, 2, 2), amps)


def canonical_rank4():
    amps = np.zeros(12, dtype=complex)
    amps[[0, 7, 9, 10]] = 0.5
    return PureState((3, 2, 2), amps)


rng = np.random.default_rng(11)

banner("The missing direction of the two canonical states")
for name, state in (("rank 3", canonical_rank3()), ("rank 4", canonical_rank4())):
    md = missing_dimension(state)
    print(f"{name}: missing pair direction {np.round(md.vec, 4)} -> {md.kind.value}")
    print(f"        tensor rank {tensor_rank_322(state)}")

banner("Tensor rank survives invertible local transformations")
for name, state in (("rank 3", canonical_rank3()), ("rank 4", canonical_rank4())):
    ranks = set()
    for _ in range(20):
        sample = state
        for party, d in enumerate(state.dims):
            g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            sample = apply_local(sample, LocalOperator(party, g))
        ranks.add(tensor_rank_322(sample.normalized()))
    print(f"{name}: ranks over 20 random orbit samples = {ranks}")

banner("Rank-3 states cannot reach the two-term target")
target = ghz2_state()
print("the target is maximally entangled on both small parties;")
print("a rank-3 state never is, so a cut condition must fail:")
for trial in range(3):
    lam = np.abs(rng.normal(size=3)) + 0.2
    lam /= np.linalg.norm(lam)
    phi1 = rng.normal(size=3) + 1j * rng.normal(size=3)
    phi2 = rng.normal(size=3) + 1j * rng.normal(size=3)
    tensor = np.zeros((3, 2, 2), dtype=complex)
    tensor[0, 0, 0] = lam[0]
    tensor[:, 0, 1] += lam[1] * phi1 / np.linalg.norm(phi1)
    tensor[:, 1, 0] += lam[2] * phi2 / np.linalg.norm(phi2)
    state = PureState((3, 2, 2), tensor.ravel())
    spectrum_c = reduced_spectrum(state, {2})
    rep = cut_condition(state, target)
    print(f"  trial {trial}: last-party spectrum {np.round(spectrum_c.padded(2), 4)}"
          f" -> cuts {rep.cuts} -> possible: {rep.overall}")

banner("Rank-4 no-go leaves only the pair-symmetric one-excitation targets")
print("weight   symmetric flag")
for lam in (0.2, 0.5, 0.8):
    amps = np.zeros(8, dtype=complex)
    amps[4] = 1.0 / np.sqrt(2.0)
    amps[2] = np.sqrt(1.0 - lam) / np.sqrt(2.0)
    amps[1] = np.sqrt(lam) / np.sqrt(2.0)
    flag = symmetric_target_flag(PureState((2, 2, 2), amps))
    print(f"  {lam:.1f}    {flag}")
print("(the universal no-go behind this flag quantifies over all finite-round")
print(" protocols and is not itself checkable by simulation)")
