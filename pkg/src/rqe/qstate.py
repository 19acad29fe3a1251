"""Dense statevector register and the minimal gate set.

Conventions (fixed package-wide):

* Qubit ``q`` is bit ``q`` of the basis index (qubit 0 = least significant
  bit).  Primary qubits occupy indices ``[0, n_primary)``, shadow qubits sit
  above them.
* ``new_basis_state(n, bits)`` reads ``bits[q]`` as the initial value of
  qubit ``q``.
* ``apply_pauli_exp(state, p, theta)`` applies ``exp(-i * theta * P)``.
* Gate operations mutate the amplitude buffer in place and return the same
  ``StateVector`` for chaining.  A state must not be shared across threads
  while being mutated.

All kernels update amplitudes with strided pair loops (never by building
matrices), so a 2**19-amplitude register stays cheap per gate.  Double
precision throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from numba import njit

if TYPE_CHECKING:  # pragma: no cover
    from .models import HamiltonianSpec

AXES = ("X", "Y", "Z")


class StateCorruptionError(RuntimeError):
    """Raised when a projection leaves (numerically) zero norm."""


@dataclass(frozen=True)
class PauliString:
    """Product of single-qubit Pauli factors on distinct qubits.

    ``factors`` is a tuple of ``(qubit, axis)`` with axis one of X/Y/Z.
    Factors are stored sorted by qubit index.  The operator squares to the
    identity by construction.
    """

    factors: tuple[tuple[int, str], ...]

    def __post_init__(self):
        norm = tuple(sorted((int(q), str(a)) for q, a in self.factors))
        if not norm:
            raise ValueError("PauliString needs at least one factor")
        qubits = [q for q, _ in norm]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit indices in {norm}")
        if min(qubits) < 0:
            raise ValueError(f"negative qubit index in {norm}")
        for _, a in norm:
            if a not in AXES:
                raise ValueError(f"axis must be one of {AXES}, got {a!r}")
        object.__setattr__(self, "factors", norm)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    @property
    def max_qubit(self) -> int:
        return self.factors[-1][0]

    def masks(self) -> tuple[int, int, int]:
        """(flip mask, phase mask, number of Y factors).

        X and Y factors flip their bit; Y and Z factors contribute a
        (-1)**bit phase; each Y adds a global factor i.
        """
        flip = 0
        pmask = 0
        n_y = 0
        for q, a in self.factors:
            if a in ("X", "Y"):
                flip |= 1 << q
            if a in ("Y", "Z"):
                pmask |= 1 << q
            if a == "Y":
                n_y += 1
        return flip, pmask, n_y

    def __str__(self) -> str:
        return "*".join(f"{a}{q}" for q, a in self.factors)


@dataclass
class StateVector:
    """Complex amplitude register over ``n_qubits`` qubits (unit norm)."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.amplitudes) ** 2)))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.n_qubits:
            raise IndexError(f"qubit {qubit} out of range for {self.n_qubits} qubits")


def new_basis_state(n_qubits: int, bits: str) -> StateVector:
    """Computational basis state; ``bits[q]`` is the value of qubit ``q``."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if len(bits) != n_qubits:
        raise ValueError(f"bits length {len(bits)} != n_qubits {n_qubits}")
    index = 0
    for q, b in enumerate(bits):
        if b == "1":
            index |= 1 << q
        elif b != "0":
            raise ValueError(f"bits must contain only 0/1, got {bits!r}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def index_to_bits(index: int, n_qubits: int) -> str:
    """Inverse of the ``new_basis_state`` bit convention."""
    return "".join("1" if (index >> q) & 1 else "0" for q in range(n_qubits))


# ---------------------------------------------------------------------------
# numba kernels.  Sequential loops only: bit-deterministic for any input.
# ---------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _par(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True)
def _diag_rot(amps, pmask, f_even, f_odd):
    for z in range(amps.shape[0]):
        if _par(z & pmask):
            amps[z] *= f_odd
        else:
            amps[z] *= f_even


@njit(cache=True)
def _rot1(amps, q, c, k0, k1):
    # new[bit=0] = c*a0 - k0*a1 ; new[bit=1] = c*a1 - k1*a0
    lq = 1 << q
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> q) << (q + 1)) | (g & (lq - 1))
        i1 = i0 | lq
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = c * a0 - k0 * a1
        amps[i1] = c * a1 - k1 * a0


@njit(cache=True)
def _rot2(amps, qa, qb, c, k00, kab, ka, kb):
    # qa < qb.  zA has only bit qa set; zB only bit qb; zAB both.
    # new[z00] = c*a00 - k00*a[zAB] ; new[zAB] = c*a[zAB] - kab*a00
    # new[zA]  = c*aA  - ka *a[zB]  ; new[zB]  = c*a[zB]  - kb *aA
    la = 1 << qa
    lb = 1 << qb
    n = amps.shape[0]
    for hi in range(0, n, lb << 1):
        for mid in range(hi, hi + lb, la << 1):
            for z00 in range(mid, mid + la):
                za = z00 | la
                zb = z00 | lb
                zab = za | lb
                a0 = amps[z00]
                a3 = amps[zab]
                amps[z00] = c * a0 - k00 * a3
                amps[zab] = c * a3 - kab * a0
                a1 = amps[za]
                a2 = amps[zb]
                amps[za] = c * a1 - ka * a2
                amps[zb] = c * a2 - kb * a1


@njit(cache=True)
def _rot_generic(amps, flip, pmask, gph, c, s):
    b = flip & (-flip)
    for z in range(amps.shape[0]):
        if z & b:
            continue
        z2 = z ^ flip
        ph_z = gph * (1.0 - 2.0 * _par(z & pmask))
        ph_z2 = gph * (1.0 - 2.0 * _par(z2 & pmask))
        az = amps[z]
        az2 = amps[z2]
        amps[z] = c * az - 1j * s * ph_z2 * az2
        amps[z2] = c * az2 - 1j * s * ph_z * az


@njit(cache=True)
def _pauli1(amps, q, code):
    # code: 0 = X, 1 = Y, 2 = Z
    lq = 1 << q
    if code == 2:
        for z in range(amps.shape[0]):
            if z & lq:
                amps[z] = -amps[z]
        return
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> q) << (q + 1)) | (g & (lq - 1))
        i1 = i0 | lq
        a0 = amps[i0]
        a1 = amps[i1]
        if code == 0:
            amps[i0] = a1
            amps[i1] = a0
        else:
            amps[i0] = -1j * a1
            amps[i1] = 1j * a0


@njit(cache=True)
def _prob_one(amps, q):
    lq = 1 << q
    acc = 0.0
    for z in range(amps.shape[0]):
        if z & lq:
            a = amps[z]
            acc += a.real * a.real + a.imag * a.imag
    return acc


@njit(cache=True)
def _project(amps, q, keep, scale):
    lq = 1 << q
    for z in range(amps.shape[0]):
        if ((z >> q) & 1) == keep:
            amps[z] *= scale
        else:
            amps[z] = 0.0


@njit(cache=True)
def _expect_pauli(amps, flip, pmask, gph):
    acc = 0.0 + 0.0j
    for z in range(amps.shape[0]):
        z2 = z ^ flip
        ph = gph * (1.0 - 2.0 * _par(z2 & pmask))
        acc += np.conj(amps[z]) * ph * amps[z2]
    return acc


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _block_phase(factors, values) -> complex:
    """Pauli phase of the basis block where the string's qubits take `values`."""
    ph = 1.0 + 0.0j
    for (_, axis), v in zip(factors, values):
        if axis == "Y":
            ph *= 1j * (1.0 - 2.0 * v)
        elif axis == "Z":
            ph *= 1.0 - 2.0 * v
    return ph


def apply_pauli_exp(state: StateVector, p: PauliString, theta: float) -> StateVector:
    """state <- exp(-i * theta * P) state, in place.

    Uses exp(-i t P) = cos(t) I - i sin(t) P (valid because P**2 = I) as
    strided pair updates.
    """
    if p.max_qubit >= state.n_qubits:
        raise IndexError(
            f"PauliString touches qubit {p.max_qubit}, state has {state.n_qubits}"
        )
    theta = float(theta)
    if theta == 0.0:
        return state
    amps = state.amplitudes
    flip, pmask, n_y = p.masks()
    c = math.cos(theta)
    s = math.sin(theta)
    if flip == 0:
        _diag_rot(amps, pmask, complex(c, -s), complex(c, s))
        return state
    factors = p.factors
    if len(factors) == 1:
        q = factors[0][0]
        k0 = 1j * s * _block_phase(factors, (1,))
        k1 = 1j * s * _block_phase(factors, (0,))
        _rot1(amps, q, c, k0, k1)
        return state
    if len(factors) == 2 and pmask & ~flip == 0:
        # both factors flip (XX / XY / YX / YY): one fused pass
        qa = factors[0][0]
        qb = factors[1][0]
        k00 = 1j * s * _block_phase(factors, (1, 1))
        kab = 1j * s * _block_phase(factors, (0, 0))
        ka = 1j * s * _block_phase(factors, (0, 1))
        kb = 1j * s * _block_phase(factors, (1, 0))
        _rot2(amps, qa, qb, c, k00, kab, ka, kb)
        return state
    gph = 1j**n_y
    _rot_generic(amps, flip, pmask, complex(gph), c, s)
    return state


def apply_pauli(state: StateVector, qubit: int, axis: str) -> StateVector:
    """state <- sigma^axis_qubit state, in place."""
    state._check_qubit(qubit)
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    _pauli1(state.amplitudes, qubit, AXES.index(axis))
    return state


def measure_qubit(state: StateVector, qubit: int, rand: float) -> tuple[int, StateVector]:
    """Projective Z measurement driven by one uniform draw in [0, 1).

    Outcome is 1 iff ``rand < P(bit = 1)``; the state is replaced by the
    renormalized projection.
    """
    state._check_qubit(qubit)
    p1 = _prob_one(state.amplitudes, qubit)
    outcome = 1 if rand < p1 else 0
    p_keep = p1 if outcome else 1.0 - p1
    if p_keep <= 1e-300:
        raise StateCorruptionError(
            f"projection of qubit {qubit} onto {outcome} has zero norm"
        )
    _project(state.amplitudes, qubit, outcome, 1.0 / math.sqrt(p_keep))
    return outcome, state


def reset_qubit(state: StateVector, qubit: int, rand: float) -> StateVector:
    """Measure, then flip to |0> if the outcome was 1."""
    outcome, _ = measure_qubit(state, qubit, rand)
    if outcome:
        apply_pauli(state, qubit, "X")
    return state


def expectation(state: StateVector, h: "HamiltonianSpec") -> float:
    """<psi| H |psi> for a real-weighted Pauli-sum Hamiltonian."""
    if h.n_qubits > state.n_qubits:
        raise IndexError(
            f"Hamiltonian on {h.n_qubits} qubits, state has {state.n_qubits}"
        )
    amps = state.amplitudes
    total = 0.0 + 0.0j
    for coeff, ps in h.terms:
        flip, pmask, n_y = ps.masks()
        total += coeff * _expect_pauli(amps, flip, pmask, complex(1j**n_y))
    if abs(total.imag) >= 1e-10:
        raise StateCorruptionError(f"expectation has imaginary part {total.imag:g}")
    return float(total.real)


def marginal_distribution(state: StateVector, n_low: int) -> np.ndarray:
    """Probability vector over the lowest ``n_low`` qubits."""
    if not 0 < n_low <= state.n_qubits:
        raise ValueError(f"n_low must be in [1, {state.n_qubits}]")
    probs = np.abs(state.amplitudes) ** 2
    return probs.reshape(-1, 1 << n_low).sum(axis=0)
