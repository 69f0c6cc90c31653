"""Construction and validation of n-qubit pure states and density matrices.

Includes the five-amplitude canonical form of a three-qubit pure state
(the Acin normal form) and seeded Haar-random state sampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized n-qubit amplitude vector, qubit 0 leftmost."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = int(self.n_qubits)
        if n < 1:
            raise ValueError(f"need at least one qubit, got {n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**n:
            raise ValueError(
                f"{n}-qubit state needs {2**n} amplitudes, got {amps.size}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "amplitudes", amps)

    def to_json(self) -> str:
        pairs = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps({"n_qubits": self.n_qubits, "amplitudes": pairs})

    @classmethod
    def from_json(cls, text: str) -> "PureState":
        data = json.loads(text)
        try:
            n = int(data["n_qubits"])
            amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed state JSON: {exc}") from exc
        return cls(n, amps)


@dataclass(frozen=True)
class AcinParams:
    """Amplitudes and phase of the canonical three-qubit pure state.

    The five amplitudes must be nonnegative with squares summing to one, and
    the phase must lie in [0, pi].
    """

    lambdas: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self):
        lams = tuple(float(v) for v in self.lambdas)
        if len(lams) != 5:
            raise ValueError(f"need exactly 5 amplitudes, got {len(lams)}")
        if any(v < 0 for v in lams):
            raise ValueError(f"amplitudes must be nonnegative: {lams}")
        total = sum(v * v for v in lams)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"amplitude squares sum to {total!r}, expected 1")
        phi = float(self.phi)
        if not 0.0 <= phi <= math.pi:
            raise ValueError(f"phase {phi} outside [0, pi]")
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "phi", phi)

    def to_json(self) -> str:
        return json.dumps({"lambda": list(self.lambdas), "phi": self.phi})

    @classmethod
    def from_json(cls, text: str) -> "AcinParams":
        data = json.loads(text)
        try:
            lams = tuple(float(v) for v in data["lambda"])
            phi = float(data.get("phi", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed canonical-form JSON: {exc}") from exc
        return cls(lams, phi)


def acin_state(params: AcinParams) -> PureState:
    """Three-qubit pure state in the canonical five-term form.

    Nonzero amplitudes sit at basis indices 0 (|000>), 4 (|100>), 5 (|101>),
    6 (|110>) and 7 (|111>); the phase multiplies the |100> term.
    """
    l0, l1, l2, l3, l4 = params.lambdas
    amps = np.zeros(8, dtype=complex)
    amps[0] = l0
    amps[4] = l1 * np.exp(1j * params.phi)
    amps[5] = l2
    amps[6] = l3
    amps[7] = l4
    return PureState(3, amps)


def density(state: PureState) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a pure state."""
    v = state.amplitudes
    return np.outer(v, v.conj())


def _standard_normal_pairs(rng: np.random.Generator, count: int) -> np.ndarray:
    """Box-Muller over the generator's uniform stream.

    Kept explicit (rather than ``rng.standard_normal``) so the sample stream
    is pinned to the documented PCG64 uniform doubles and the textbook
    transform, making seeds portable.
    """
    u1 = 1.0 - rng.random(count)  # (0, 1]: log stays finite
    u2 = rng.random(count)
    radius = np.sqrt(-2.0 * np.log(u1))
    return radius * np.cos(2.0 * np.pi * u2) + 1j * radius * np.sin(2.0 * np.pi * u2)


def haar_state_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unit vector: normalized i.i.d. complex Gaussians."""
    vec = _standard_normal_pairs(rng, dim)
    return vec / np.linalg.norm(vec)


def random_pure_state(n_qubits: int, seed: int) -> PureState:
    """Seeded Haar-random pure state on 1..4 qubits (PCG64 stream)."""
    if not 1 <= n_qubits <= 4:
        raise ValueError(f"n_qubits must be in 1..4, got {n_qubits}")
    rng = np.random.default_rng(seed)
    return PureState(n_qubits, haar_state_vector(2**n_qubits, rng))


def random_pure_states(n_qubits: int, count: int, seed: int) -> list[PureState]:
    """A reproducible batch drawn from one seeded stream.

    The first ``k`` states of any batch equal the first ``k`` of a longer
    batch with the same seed, so enlarging a sweep only appends states.
    """
    if not 1 <= n_qubits <= 4:
        raise ValueError(f"n_qubits must be in 1..4, got {n_qubits}")
    rng = np.random.default_rng(seed)
    dim = 2**n_qubits
    return [PureState(n_qubits, haar_state_vector(dim, rng)) for _ in range(count)]
