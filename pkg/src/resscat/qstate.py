"""
Dense state vectors over a register of spin and photon qubits.

States are deliberately left unnormalised: the spin-dependent reflection map
removes amplitude whenever a photon is scattered into a loss mode, so the
squared norm of a state is the probability that every photon reflected so far
survived. Measurement probabilities are therefore quoted against the original
unit-norm input.

Basis conventions
-----------------
* Register order is spins first, then photons.
* Register position 0 is the least significant bit of the flat index.
* Spin ``|0> = up``, ``|1> = down``. Photon ``|0> = R`` and ``|1> = L``
  under polarisation encoding, ``|0> = A`` and ``|1> = B`` under frequency
  encoding. Frequency encoding is a relabelling only; the reflection map is
  identical.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Kind",
    "Encoding",
    "QubitLabel",
    "JointState",
    "MeasurementRecord",
    "MAX_QUBITS",
    "make_register",
    "make_superposition_state",
    "basis_state",
    "bell_state",
    "reflect",
    "hadamard",
    "measure",
    "overlap_fidelity",
]

MAX_QUBITS = 24

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class Kind(str, enum.Enum):
    SPIN = "spin"
    PHOTON = "photon"


class Encoding(str, enum.Enum):
    POLARIZATION = "polarization"
    FREQUENCY = "frequency"


_BASIS_NAMES = {
    None: ("up", "down"),
    Encoding.POLARIZATION: ("R", "L"),
    Encoding.FREQUENCY: ("A", "B"),
}


@dataclass(frozen=True)
class QubitLabel:
    kind: Kind
    index: int
    encoding: Encoding | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.SPIN:
            if self.encoding is not None:
                raise ValueError("spin qubits carry no photon encoding")
        else:
            object.__setattr__(self, "encoding", Encoding(self.encoding or Encoding.POLARIZATION))
        if self.index < 0:
            raise ValueError("qubit index must be non-negative")

    @property
    def basis(self) -> tuple[str, str]:
        """Names of the ``|0>`` and ``|1>`` states of this qubit."""
        return _BASIS_NAMES[self.encoding]

    def __str__(self):
        return f"{self.kind.value}{self.index}"


QubitRef = Union[int, QubitLabel]


def make_register(n_spins: int, n_photons: int, encoding=Encoding.POLARIZATION) -> tuple[QubitLabel, ...]:
    spins = [QubitLabel(Kind.SPIN, i) for i in range(n_spins)]
    photons = [QubitLabel(Kind.PHOTON, i, Encoding(encoding)) for i in range(n_photons)]
    return tuple(spins + photons)


class JointState:
    """Unnormalised amplitude vector over an ordered qubit register.

    Instances are immutable; every operation returns a new state.
    """

    __slots__ = ("_amplitudes", "_register")

    def __init__(self, amplitudes, register: Sequence[QubitLabel]):
        register = tuple(register)
        if len(set(register)) != len(register):
            raise ValueError("qubit labels must be unique within a register")
        if len(register) > MAX_QUBITS:
            raise ValueError(f"register of {len(register)} qubits exceeds the {MAX_QUBITS}-qubit cap")
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(register):
            raise ValueError(f"expected {2 ** len(register)} amplitudes for {len(register)} qubits, got {amps.size}")
        amps.flags.writeable = False
        self._amplitudes = amps
        self._register = register

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def register(self) -> tuple[QubitLabel, ...]:
        return self._register

    @property
    def n_qubits(self) -> int:
        return len(self._register)

    @property
    def norm2(self) -> float:
        """Squared norm, i.e. the survival probability of the unit input."""
        return float(np.vdot(self._amplitudes, self._amplitudes).real)

    def position(self, qubit: QubitRef) -> int:
        if isinstance(qubit, QubitLabel):
            try:
                return self._register.index(qubit)
            except ValueError:
                raise IndexError(f"{qubit} is not in the register") from None
        if not 0 <= qubit < self.n_qubits:
            raise IndexError(f"qubit position {qubit} out of range for {self.n_qubits} qubits")
        return int(qubit)

    def find(self, kind, index: int) -> int:
        """Register position of the ``index``-th qubit of the given kind."""
        kind = Kind(kind)
        for pos, q in enumerate(self._register):
            if q.kind is kind and q.index == index:
                return pos
        raise IndexError(f"no {kind.value} qubit with index {index}")

    def normalized(self) -> "JointState":
        n = np.sqrt(self.norm2)
        if n == 0:
            return self
        return JointState(self._amplitudes / n, self._register)

    def _tensor(self) -> np.ndarray:
        return self._amplitudes.reshape((2,) * self.n_qubits)

    def _axis(self, pos: int) -> int:
        # C-order reshape puts the most significant bit first
        return self.n_qubits - 1 - pos

    def __repr__(self):
        return f"JointState(register={[str(q) for q in self._register]}, norm2={self.norm2:.6g})"


@dataclass(frozen=True)
class MeasurementRecord:
    """One branch of a projective single-qubit measurement.

    ``probability`` is the squared norm of the projected branch, measured
    against the original unit input so that lost photons show up as missing
    probability. ``collapsed`` is the renormalised post-measurement state on
    the remaining qubits (a zero vector when the branch is impossible).
    """

    qubit: QubitLabel
    bit: int
    outcome: str
    probability: float
    collapsed: JointState


def make_superposition_state(n_spins: int, n_photons: int, encoding=Encoding.POLARIZATION) -> JointState:
    """Every qubit in (|0> + |1>)/√2."""
    if n_spins < 0 or n_photons < 0 or n_spins + n_photons < 1:
        raise ValueError("need at least one qubit and non-negative counts")
    n = n_spins + n_photons
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit cap")
    register = make_register(n_spins, n_photons, encoding)
    return JointState(np.full(2**n, 2 ** (-n / 2), dtype=complex), register)


def basis_state(register: Sequence[QubitLabel], bits: Sequence[int]) -> JointState:
    """Computational basis state with ``bits[k]`` on register position ``k``."""
    register = tuple(register)
    if len(bits) != len(register):
        raise ValueError("one bit per qubit required")
    amps = np.zeros(2 ** len(register), dtype=complex)
    amps[sum(int(b) << k for k, b in enumerate(bits))] = 1.0
    return JointState(amps, register)


def bell_state(register: Sequence[QubitLabel], first: Sequence[int], second: Sequence[int], sign: int = +1) -> JointState:
    """(|first> + sign |second>)/√2 on the given register."""
    a = basis_state(register, first).amplitudes
    b = basis_state(register, second).amplitudes
    return JointState((a + sign * b) / np.sqrt(2), register)


def _bits(state: JointState, pos: int) -> np.ndarray:
    return (np.arange(state.amplitudes.size) >> pos) & 1


def reflect(state: JointState, photon: int, spin: int, r_c: complex, r_d: complex) -> JointState:
    """Reflect photon number ``photon`` off the cavity holding spin number ``spin``.

    Diagonal map: the photon sees the dipole (factor ``r_d``) for R with up
    and L with down, and the empty cavity (factor ``r_c``) otherwise. Indices
    count within each kind, not register positions.
    """
    p = state.find(Kind.PHOTON, photon)
    s = state.find(Kind.SPIN, spin)
    coupled = _bits(state, p) == _bits(state, s)
    factors = np.where(coupled, complex(r_d), complex(r_c))
    return JointState(state.amplitudes * factors, state.register)


def hadamard(state: JointState, qubit: QubitRef) -> JointState:
    pos = state.position(qubit)
    axis = state._axis(pos)
    t = np.tensordot(_HADAMARD, state._tensor(), axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return JointState(t.reshape(-1), state.register)


def measure(state: JointState, qubit: QubitRef) -> tuple[MeasurementRecord, MeasurementRecord]:
    """Both branches of a computational-basis measurement of one qubit.

    Sampling an outcome is left to the caller.
    """
    pos = state.position(qubit)
    label = state.register[pos]
    rest = state.register[:pos] + state.register[pos + 1:]
    t = state._tensor()
    records = []
    for bit in (0, 1):
        branch = np.take(t, bit, axis=state._axis(pos)).reshape(-1)
        prob = float(np.vdot(branch, branch).real)
        if prob > 0:
            branch = branch / np.sqrt(prob)
        collapsed = JointState(branch, rest) if rest else JointState(branch, ())
        records.append(MeasurementRecord(label, bit, label.basis[bit], prob, collapsed))
    return records[0], records[1]


def overlap_fidelity(state: JointState, target: JointState) -> float:
    """Amplitude overlap |<target|state>| / ||state||; 0 for a zero state."""
    if state.amplitudes.shape != target.amplitudes.shape:
        raise ValueError(
            f"register shapes differ: {state.n_qubits} vs {target.n_qubits} qubits"
        )
    norm = np.sqrt(state.norm2)
    if norm == 0:
        return 0.0
    return float(abs(np.vdot(target.amplitudes, state.amplitudes)) / norm)
