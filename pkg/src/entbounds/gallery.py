"""Named parametric state families with closed-form measure values.

The closed forms are kept next to the constructors purely as independent
oracles for tests; no bound evaluator consumes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .qcore import MAX_QUBITS, PureState

_NORM_ATOL = 1e-10


def gsd3(l0: float, l1: float, l2: float, l3: float, l4: float,
         phi: float = 0.0) -> PureState:
    """Three-qubit state in generalized Schmidt form.

    ``l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>`` with
    non-negative coefficients satisfying ``sum(l_i^2) = 1``.
    """
    lam = np.array([l0, l1, l2, l3, l4], dtype=float)
    if np.any(lam < 0):
        raise ValueError("coefficients must be non-negative")
    if abs(float(np.sum(lam ** 2)) - 1.0) > _NORM_ATOL:
        raise ValueError("coefficients must satisfy sum(l_i^2) = 1")
    v = np.zeros(8, dtype=complex)
    v[0b000] = l0
    v[0b100] = l1 * np.exp(1j * phi)
    v[0b101] = l2
    v[0b110] = l3
    v[0b111] = l4
    return PureState(3, v)


def gsd3_closed_forms(l0: float, l1: float, l2: float, l3: float, l4: float,
                      phi: float = 0.0) -> dict[str, float]:
    """Exact measure values for ``gsd3`` (qubits labeled A=0, B=1, C=2).

    With the amplitude placement used by :func:`gsd3`, the coefficient l3
    multiplies the |110> component and therefore drives the A-B pair, while
    l2 (|101>) drives the A-C pair.
    """
    return {
        "C(A|BC)": 2 * l0 * math.sqrt(l2 ** 2 + l3 ** 2 + l4 ** 2),
        "C(AB)": 2 * l0 * l3,
        "C(AC)": 2 * l0 * l2,
        "Ca(AB)": 2 * l0 * math.sqrt(l3 ** 2 + l4 ** 2),
        "Ca(AC)": 2 * l0 * math.sqrt(l2 ** 2 + l4 ** 2),
    }


def wclass4(l1: float, l2: float, l3: float, l4: float) -> PureState:
    """Four-qubit generalized W-class state.

    ``l1|1000> + l2|0100> + l3|0010> + l4|0001>`` with ``sum(l_i^2) = 1``.
    """
    lam = np.array([l1, l2, l3, l4], dtype=float)
    if np.any(lam < 0):
        raise ValueError("coefficients must be non-negative")
    if abs(float(np.sum(lam ** 2)) - 1.0) > _NORM_ATOL:
        raise ValueError("coefficients must satisfy sum(l_i^2) = 1")
    v = np.zeros(16, dtype=complex)
    v[0b1000] = l1
    v[0b0100] = l2
    v[0b0010] = l3
    v[0b0001] = l4
    return PureState(4, v)


def wclass4_closed_forms(l1: float, l2: float, l3: float,
                         l4: float) -> dict[str, float]:
    """Exact measure values for ``wclass4`` (A=0, B=1, C1=2, C2=3).

    Concurrence and its assistance version coincide on every two-qubit
    reduction of a W-class state.
    """
    return {
        "C(AB|C1C2)": 2 * math.sqrt((l1 ** 2 + l2 ** 2) * (l3 ** 2 + l4 ** 2)),
        "C(AB)": 2 * l1 * l2,
        "Ca(AB)": 2 * l1 * l2,
        "C(AC1)": 2 * l1 * l3,
        "Ca(AC1)": 2 * l1 * l3,
        "C(AC2)": 2 * l1 * l4,
        "Ca(AC2)": 2 * l1 * l4,
    }


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on ``n`` qubits."""
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"ghz needs 2..{MAX_QUBITS} qubits, got {n}")
    v = np.zeros(2 ** n, dtype=complex)
    v[0] = v[-1] = 1 / math.sqrt(2)
    return PureState(n, v)


def w(n: int) -> PureState:
    """Equal-amplitude single-excitation state on ``n`` qubits."""
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"w needs 2..{MAX_QUBITS} qubits, got {n}")
    v = np.zeros(2 ** n, dtype=complex)
    for q in range(n):
        v[1 << (n - 1 - q)] = 1 / math.sqrt(n)
    return PureState(n, v)


def thm2_saturating() -> PureState:
    """(|0000> + |1001>)/sqrt(2); its AB|CD concurrence equals 1."""
    v = np.zeros(16, dtype=complex)
    v[0b0000] = v[0b1001] = 1 / math.sqrt(2)
    return PureState(4, v)


def fig3() -> PureState:
    """(|0000> + |0010> + |1011>)/sqrt(3)."""
    v = np.zeros(16, dtype=complex)
    v[0b0000] = v[0b0010] = v[0b1011] = 1 / math.sqrt(3)
    return PureState(4, v)


def cor_a() -> PureState:
    """(|000000> + |101000>)/sqrt(2); entangles qubits 0 and 2."""
    v = np.zeros(64, dtype=complex)
    v[0b000000] = v[0b101000] = 1 / math.sqrt(2)
    return PureState(6, v)


def cor_b() -> PureState:
    """(|000000> + |001100>)/sqrt(2); entangles qubits 2 and 3."""
    v = np.zeros(64, dtype=complex)
    v[0b000000] = v[0b001100] = 1 / math.sqrt(2)
    return PureState(6, v)


@dataclass(frozen=True)
class Family:
    name: str
    builder: Callable[..., PureState]
    num_params: int
    description: str


FAMILIES: dict[str, Family] = {
    "gsd3": Family("gsd3", gsd3, 6,
                   "3-qubit generalized Schmidt form; params l0..l4, phi"),
    "wclass4": Family("wclass4", wclass4, 4,
                      "4-qubit generalized W-class state; params l1..l4"),
    "ghz": Family("ghz", lambda n: ghz(int(n)), 1, "GHZ state; param n"),
    "w": Family("w", lambda n: w(int(n)), 1, "W state; param n"),
    "thm2_saturating": Family("thm2_saturating", thm2_saturating, 0,
                              "(|0000>+|1001>)/sqrt(2)"),
    "fig3": Family("fig3", fig3, 0, "(|0000>+|0010>+|1011>)/sqrt(3)"),
    "cor_a": Family("cor_a", cor_a, 0, "(|000000>+|101000>)/sqrt(2)"),
    "cor_b": Family("cor_b", cor_b, 0, "(|000000>+|001100>)/sqrt(2)"),
}


def named(family: str, params: Sequence[float] = ()) -> PureState:
    """Build a gallery state by family name."""
    try:
        fam = FAMILIES[family]
    except KeyError:
        raise ValueError(
            f"unknown family {family!r}; known: {sorted(FAMILIES)}") from None
    if len(params) != fam.num_params:
        raise ValueError(
            f"family {family!r} takes {fam.num_params} parameters, got {len(params)}")
    return fam.builder(*params)


@dataclass(frozen=True)
class StateSpec:
    """Serializable description of a pure state.

    Either raw amplitudes (``kind='amplitudes'`` with ``n``, ``re``, ``im``)
    or a named family with parameters (``kind='named'``).
    """

    kind: str
    n: int | None = None
    re: tuple[float, ...] | None = None
    im: tuple[float, ...] | None = None
    family: str | None = None
    params: tuple[float, ...] = ()

    @classmethod
    def from_dict(cls, obj: dict) -> "StateSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("state spec must be an object with a 'kind' field")
        kind = obj["kind"]
        if kind == "amplitudes":
            for key in ("n", "re", "im"):
                if key not in obj:
                    raise ValueError(f"amplitudes spec is missing {key!r}")
            return cls(kind="amplitudes", n=int(obj["n"]),
                       re=tuple(float(x) for x in obj["re"]),
                       im=tuple(float(x) for x in obj["im"]))
        if kind == "named":
            if "family" not in obj:
                raise ValueError("named spec is missing 'family'")
            return cls(kind="named", family=str(obj["family"]),
                       params=tuple(float(x) for x in obj.get("params", ())))
        raise ValueError(f"unknown state spec kind {kind!r}")

    def build(self, *, norm_rtol: float = 1e-6) -> PureState:
        """Materialize the state; near-unit amplitude vectors are renormalized."""
        if self.kind == "named":
            return named(self.family, self.params)
        if len(self.re) != len(self.im):
            raise ValueError("'re' and 'im' must have equal length")
        amps = np.array(self.re, dtype=float) + 1j * np.array(self.im, dtype=float)
        if amps.size != 2 ** self.n:
            raise ValueError(
                f"expected {2 ** self.n} amplitudes for n={self.n}, got {amps.size}")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > norm_rtol:
            raise ValueError(f"amplitude norm {nrm!r} is too far from 1")
        return PureState(self.n, amps / nrm)
