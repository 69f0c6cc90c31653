"""Scalar bound kernels for powered monogamy relations.

One pairwise tail (``pair_bound_new``) and one chain skeleton
(``chain_bound``) cover every relation variant: the Tsallis and Renyi
linear forms share the "linear" coupling, the small-alpha Renyi form uses
the "squared" coupling with exponent gamma = 2 mu.  Prior published bounds
are kept alongside for comparison, and ``ordering_certificate`` checks the
concurrence-ordering hypotheses the chain bounds rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel, measures
from .states import PureState, density

COUPLINGS = ("linear", "squared")
PRIOR_FAMILIES = ("ref11", "ref12_linear", "ref12_squared")
REGIMES = ("tsallis_q2to3", "renyi_ge2", "renyi_window")

# regime -> (coupling, prior family)
_REGIME_TABLE = {
    "tsallis_q2to3": ("linear", "ref11"),
    "renyi_ge2": ("linear", "ref12_linear"),
    "renyi_window": ("squared", "ref12_squared"),
}

CERTIFIED = "certified"
VIOLATED = "violated"
UNDETERMINED = "undetermined"

_CERT_TOL = 1e-10


@dataclass(frozen=True)
class PowerParam:
    """Power mu >= 1 of the monogamy relation; gamma = 2 mu for the
    squared coupling."""

    mu: float
    gamma: float | None = None

    def __post_init__(self):
        mu = float(self.mu)
        if mu < 1.0:
            raise ValueError(f"power must be >= 1, got {mu}")
        object.__setattr__(self, "mu", mu)
        if self.gamma is not None:
            gamma = float(self.gamma)
            if gamma != 2.0 * mu:
                raise ValueError(f"gamma must equal 2*mu, got gamma={gamma}, mu={mu}")
            object.__setattr__(self, "gamma", gamma)

    @classmethod
    def from_gamma(cls, gamma: float) -> "PowerParam":
        return cls(float(gamma) / 2.0, float(gamma))

    @property
    def h(self) -> float:
        """Tail weight 2**mu - 1 of the chain expansion."""
        return 2.0**self.mu - 1.0


@dataclass(frozen=True)
class BoundReport:
    """One bound comparison at a fixed exponent.

    ``lhs`` is the powered entanglement of the full cut; the three margins
    are (lhs - new, new - prior, prior - naive).
    """

    exponent: float
    lhs: float
    new_bound: float
    prior_bound: float
    naive_bound: float

    @property
    def margins(self) -> tuple[float, float, float]:
        return (
            self.lhs - self.new_bound,
            self.new_bound - self.prior_bound,
            self.prior_bound - self.naive_bound,
        )

    def as_dict(self) -> dict:
        m = self.margins
        return {
            "exponent": self.exponent,
            "lhs": self.lhs,
            "new_bound": self.new_bound,
            "prior_bound": self.prior_bound,
            "naive_bound": self.naive_bound,
            "margins": {
                "lhs_minus_new": m[0],
                "new_minus_prior": m[1],
                "prior_minus_naive": m[2],
            },
        }


def _as_power(p) -> PowerParam:
    return p if isinstance(p, PowerParam) else PowerParam(float(p))


def power_chain(x, p):
    """Four-term comparison chain for (1 + x)**mu on 0 <= x <= 1.

    Returns ``(lhs, tight_mid, loose_mid, naive)`` with
    lhs >= tight_mid >= loose_mid >= naive, all four meeting at x in {0, 1}.
    """
    if isinstance(p, PowerParam):
        mu = p.mu
    else:
        mu = np.asarray(p, dtype=float)
        if np.any(mu < 1.0):
            raise ValueError(f"power must be >= 1, got {np.min(mu)}")
        if np.ndim(p) == 0:
            mu = float(mu)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("x outside [0, 1]")
    c_tight = mu * mu / (mu + 1.0)
    c_loose = mu / 2.0
    xp = arr**mu
    lhs = (1.0 + arr) ** mu
    tight = 1.0 + c_tight * arr + (2.0**mu - c_tight - 1.0) * xp
    loose = 1.0 + c_loose * arr + (2.0**mu - c_loose - 1.0) * xp
    naive = 1.0 + (2.0**mu - 1.0) * xp
    if np.ndim(x) == 0:
        return float(lhs), float(tight), float(loose), float(naive)
    return lhs, tight, loose, naive


def _check_ordered(e1, e2):
    a = np.asarray(e1, dtype=float)
    b = np.asarray(e2, dtype=float)
    if np.any(a < 0.0) or np.any(b < 0.0):
        raise ValueError("entanglement values must be nonnegative")
    if np.any(a < b):
        raise ValueError("hypothesis violated: e1 < e2 (caller must order)")
    return a, b


def _coupling_exponent(param: PowerParam, coupling: str) -> float:
    if coupling == "linear":
        return param.mu
    if coupling == "squared":
        if param.gamma is None:
            raise ValueError("squared coupling needs a PowerParam with gamma set")
        return param.gamma
    raise ValueError(f"unknown coupling {coupling!r}; expected one of {COUPLINGS}")


def pair_bound_new(e1, e2, p, coupling: str = "linear"):
    """Tightened two-party tail, coefficient mu^2/(mu+1) on the cross term.

    linear:  e1^mu + mu^2/(mu+1) e1^(mu-1) e2 + (2^mu - mu^2/(mu+1) - 1) e2^mu
    squared: e1^g  + mu^2/(mu+1) e1^(g-2) e2^2 + (2^mu - mu^2/(mu+1) - 1) e2^g
    """
    param = _as_power(p)
    a, b = _check_ordered(e1, e2)
    mu = param.mu
    c = mu * mu / (mu + 1.0)
    tail = 2.0**mu - c - 1.0
    if coupling == "linear":
        vals = a**mu + c * a ** (mu - 1.0) * b + tail * b**mu
    else:
        g = _coupling_exponent(param, coupling)
        vals = a**g + c * a ** (g - 2.0) * b * b + tail * b**g
    return float(vals) if np.ndim(e1) == 0 and np.ndim(e2) == 0 else vals


def pair_bound_prior(e1, e2, p, family: str):
    """Previously published two-party tails, for comparison.

    ref11:        e1^m + (2^m - 1) e2^m + (m/2) e2 (e1^(m-1) - e2^(m-1))
    ref12_linear: e1^m + (m/2) e1^(m-1) e2 + (2^m - m/2 - 1) e2^m
    ref12_squared: e1^g + (g/4) e1^(g-2) e2^2 + (2^(g/2) - g/4 - 1) e2^g
    """
    param = _as_power(p)
    a, b = _check_ordered(e1, e2)
    mu = param.mu
    if family == "ref11":
        vals = a**mu + (2.0**mu - 1.0) * b**mu + (mu / 2.0) * b * (
            a ** (mu - 1.0) - b ** (mu - 1.0)
        )
    elif family == "ref12_linear":
        vals = a**mu + (mu / 2.0) * a ** (mu - 1.0) * b + (2.0**mu - mu / 2.0 - 1.0) * b**mu
    elif family == "ref12_squared":
        g = _coupling_exponent(param, "squared")
        vals = a**g + (g / 4.0) * a ** (g - 2.0) * b * b + (
            2.0 ** (g / 2.0) - g / 4.0 - 1.0
        ) * b**g
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {PRIOR_FAMILIES}")
    return float(vals) if np.ndim(e1) == 0 and np.ndim(e2) == 0 else vals


def pair_bound_naive(e1, e2, p, coupling: str = "linear"):
    """Weakest tail e1^pow + (2^mu - 1) e2^pow (no cross term)."""
    param = _as_power(p)
    a, b = _check_ordered(e1, e2)
    pow_ = _coupling_exponent(param, coupling)
    vals = a**pow_ + param.h * b**pow_
    return float(vals) if np.ndim(e1) == 0 and np.ndim(e2) == 0 else vals


def _pair_tail(a, b, param: PowerParam, coupling: str, family: str | None):
    if family is None:
        return pair_bound_new(a, b, param, coupling)
    if family == "naive":
        return pair_bound_naive(a, b, param, coupling)
    return pair_bound_prior(a, b, param, family)


def chain_bound(values, m: int, p, coupling: str = "linear", tail: str | None = None):
    """Multi-party chain lower bound with split index ``m``.

    ``values`` are the per-pair entanglement values (length N-1 >= 2) in the
    partner order of the cut; the caller is responsible for the concurrence
    ordering hypotheses (see ``ordering_certificate``).  With ``m = N-2``
    (fully descending) the tail couples the last two values as
    ``Q(v[N-2], v[N-1])``; smaller ``m`` swaps the tail onto
    ``Q(v[N-1], v[N-2])`` and reweights the middle block.  ``tail`` selects
    the pairwise tail: None for the tightened one, or a prior family name.
    """
    param = _as_power(p)
    vals = [float(v) for v in values]
    n_minus_1 = len(vals)
    if n_minus_1 < 2:
        raise ValueError(f"need at least two per-pair values, got {n_minus_1}")
    if any(v < 0 for v in vals):
        raise ValueError("entanglement values must be nonnegative")
    n = n_minus_1 + 1
    if not 0 <= m <= n - 2:
        raise ValueError(f"split index {m} outside 0..{n - 2}")
    h = param.h
    pow_ = _coupling_exponent(param, coupling)
    if m == n - 2:
        total = sum(h ** (i - 1) * vals[i - 1] ** pow_ for i in range(1, n - 2))
        q = _pair_tail(vals[-2], vals[-1], param, coupling, tail)
        return total + h ** (n - 3) * q
    total = sum(h ** (i - 1) * vals[i - 1] ** pow_ for i in range(1, m + 1))
    total += h ** (m + 1) * sum(vals[j - 1] ** pow_ for j in range(m + 1, n - 2))
    q = _pair_tail(vals[-1], vals[-2], param, coupling, tail)
    return total + h**m * q


def compare_bounds(lhs: float, e1: float, e2: float, p, regime: str) -> BoundReport:
    """Powered comparison of the full-cut value against the three bounds.

    ``lhs`` is the unpowered entanglement of the full cut; the report stores
    ``lhs**pow`` where pow is mu (linear regimes) or gamma (squared regime).
    """
    param = _as_power(p)
    if regime not in _REGIME_TABLE:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    coupling, family = _REGIME_TABLE[regime]
    pow_ = _coupling_exponent(param, coupling)
    return BoundReport(
        exponent=pow_,
        lhs=float(lhs) ** pow_,
        new_bound=pair_bound_new(e1, e2, param, coupling),
        prior_bound=pair_bound_prior(e1, e2, param, family),
        naive_bound=pair_bound_naive(e1, e2, param, coupling),
    )


def compare_chain(lhs: float, values, m: int, p, regime: str) -> BoundReport:
    """Chain analogue of ``compare_bounds`` for more than two partners.

    The prior and naive columns reuse the chain skeleton with the matching
    pairwise tail swapped in, so the term-by-term dominance of the tails
    carries over to the chains.
    """
    param = _as_power(p)
    if regime not in _REGIME_TABLE:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    coupling, family = _REGIME_TABLE[regime]
    pow_ = _coupling_exponent(param, coupling)
    return BoundReport(
        exponent=pow_,
        lhs=float(lhs) ** pow_,
        new_bound=chain_bound(values, m, param, coupling),
        prior_bound=chain_bound(values, m, param, coupling, tail=family),
        naive_bound=chain_bound(values, m, param, coupling, tail="naive"),
    )


def _pure_cut_concurrence(vec: np.ndarray, n: int, pivot_pos: int) -> float:
    state = PureState(n, vec)
    return measures.concurrence_pure(state, {pivot_pos})


def ordering_certificate(state: PureState, pivot: int, rest_order) -> list[str]:
    """Check the per-position concurrence ordering hypotheses of the chains.

    For each position i (all but the last partner), compares the two-qubit
    closed form C(pivot, B_i) against C(pivot | remaining partners).  When
    the remainder is a single qubit the comparison is exact; otherwise it is
    bracketed from below by the root-sum-square of pairwise concurrences and
    from above by the eigendecomposition average of pure-state concurrences.
    Returns "certified", "violated" or "undetermined" per position.
    """
    n = state.n_qubits
    if n > 4:
        raise ValueError(f"supported up to 4 qubits, got {n}")
    pivot = int(pivot)
    order = [int(b) for b in rest_order]
    expected = sorted(set(range(n)) - {pivot})
    if sorted(order) != expected:
        raise ValueError(
            f"rest_order {order} must be a permutation of the non-pivot qubits {expected}"
        )
    rho = density(state)

    def pair_concurrence(b: int) -> float:
        reduced = kernel.partial_trace(rho, n, {pivot, b})
        return measures.concurrence_two_qubit(reduced)

    results = []
    for i in range(len(order) - 1):
        c_pair = pair_concurrence(order[i])
        rest = order[i + 1 :]
        if len(rest) == 1:
            exact = pair_concurrence(rest[0])
            lower = upper = exact
        else:
            lower = float(np.sqrt(sum(pair_concurrence(b) ** 2 for b in rest)))
            keep = sorted({pivot, *rest})
            reduced = kernel.partial_trace(rho, n, keep)
            pivot_pos = keep.index(pivot)
            w, v = np.linalg.eigh(reduced)
            upper = 0.0
            for idx in range(w.size):
                if w[idx] > 1e-12:
                    vec = v[:, idx] / np.linalg.norm(v[:, idx])
                    upper += w[idx] * _pure_cut_concurrence(vec, len(keep), pivot_pos)
        if c_pair >= upper - _CERT_TOL:
            results.append(CERTIFIED)
        elif c_pair < lower - _CERT_TOL:
            results.append(VIOLATED)
        else:
            results.append(UNDETERMINED)
    return results


def certificate_summary(positions: list[str]) -> tuple[str, int]:
    """Collapse per-position certificates into (tag, split index m).

    "certified" when every position holds, "violated" when the pattern is a
    certified prefix followed by violated positions (the swapped-tail chain
    applies with the returned m), otherwise "undetermined" (m is the length
    of the certified prefix, usable as a heuristic split).
    """
    m = 0
    for tag in positions:
        if tag == CERTIFIED:
            m += 1
        else:
            break
    n_minus_2 = len(positions)
    if m == n_minus_2:
        return CERTIFIED, n_minus_2
    if all(tag == VIOLATED for tag in positions[m:]):
        return VIOLATED, m
    return UNDETERMINED, m
