"""n-qubit Pauli strings in symplectic form, Gamma rotations and GHZ-type contexts.

Qubit ``i`` is bit ``i`` of the ``x``/``z`` integers and character ``i`` of a
letter label, so the label ``"ZZX"`` has its X on qubit 2.  The operator
represented is ``i**phase * P_0 (x) P_1 (x) ...`` with ``Y`` the Hermitian
matrix (``Y = iXZ``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ResourceGuardError, UnsupportedContextError

LETTERS = "IXZY"  # index = x_bit + 2 * z_bit

_SIGN_PREFIXES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_SIGN_NAMES = {0: "+", 1: "+i", 2: "-", 3: "-i"}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.n < 0 or self.x & ~full or self.z & ~full:
            raise DimensionError(f"bit vectors do not fit in {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction ---------------------------------------------------------
    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse ``"XZYI"`` with an optional leading ``+``, ``-``, ``i``, ``-i`` or ``+i``."""
        body = label.lstrip("+-i")
        prefix = label[: len(label) - len(body)]
        if prefix not in _SIGN_PREFIXES:
            raise ValueError(f"bad sign prefix {prefix!r}")
        x = z = 0
        for q, ch in enumerate(body):
            code = LETTERS.find(ch)
            if code < 0:
                raise ValueError(f"bad Pauli letter {ch!r} in {label!r}")
            x |= (code & 1) << q
            z |= (code >> 1) << q
        return cls(len(body), x, z, _SIGN_PREFIXES[prefix])

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        code = LETTERS.index(letter)
        return cls(n, (code & 1) << qubit, (code >> 1) << qubit)

    # views ----------------------------------------------------------------
    def letter(self, q: int) -> str:
        return LETTERS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def __str__(self):
        return self.to_label()

    def to_label(self, signed: bool = True) -> str:
        if not signed:
            return self.letters
        return ("" if self.phase == 0 else _SIGN_NAMES[self.phase]) + self.letters

    @property
    def x_bits(self) -> list[int]:
        return [(self.x >> q) & 1 for q in range(self.n)]

    @property
    def z_bits(self) -> list[int]:
        return [(self.z >> q) & 1 for q in range(self.n)]

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return _popcount(self.support)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def is_observable(self) -> bool:
        """Element of +/-{X,Y,Z}^n: no identity positions and a real sign."""
        return self.support == (1 << self.n) - 1 and self.is_hermitian

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError(f"{self} has an imaginary phase")
        return 1 - self.phase

    def unsigned(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, 0)

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix, little-endian (qubit 0 is the least significant bit)."""
        out = np.array([[1j**self.phase]], dtype=complex)
        for q in range(self.n):
            # kron places later factors on less significant bits
            out = np.kron(_MATRICES[self.letter(q)], out)
        return out

    # algebra --------------------------------------------------------------
    def _check(self, other: PauliString):
        if self.n != other.n:
            raise DimensionError(f"{self.n}-qubit vs {other.n}-qubit Pauli strings")

    def __mul__(self, other: PauliString) -> PauliString:
        self._check(other)
        # i^e * letters == i^(e + |x&z|) * X^x Z^z
        f1 = self.phase + _popcount(self.x & self.z)
        f2 = other.phase + _popcount(other.x & other.z)
        x, z = self.x ^ other.x, self.z ^ other.z
        f = f1 + f2 + 2 * _popcount(self.z & other.x)
        return PauliString(self.n, x, z, f - _popcount(x & z))

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    def commutes(self, other: PauliString) -> bool:
        self._check(other)
        return _popcount((self.x & other.z) ^ (self.z & other.x)) % 2 == 0

    def conjugated_by(self, kind: str, qubits) -> PauliString:
        """Return ``G P G^dagger`` for one gate of the Clifford gate set."""
        x, z = self.x, self.z
        f = self.phase + _popcount(x & z)
        if kind == "CX":
            c, t = qubits
            x ^= ((x >> c) & 1) << t
            z ^= ((z >> t) & 1) << c
        else:
            (q,) = qubits
            a, b = (x >> q) & 1, (z >> q) & 1
            if kind == "H":
                f += 2 * a * b
                x = (x & ~(1 << q)) | (b << q)
                z = (z & ~(1 << q)) | (a << q)
            elif kind == "S":
                f += a
                z ^= a << q
            elif kind == "S_DAGGER":
                f += 3 * a
                z ^= a << q
            elif kind == "X":
                f += 2 * b
            elif kind == "Z":
                f += 2 * a
            else:
                raise ValueError(f"unknown gate kind {kind!r}")
        return PauliString(self.n, x, z, f - _popcount(x & z))


def commutes(p: PauliString, q: PauliString) -> bool:
    return p.commutes(q)


# --------------------------------------------------------------------------
# Gamma rotations and observable indexing


@dataclass(frozen=True)
class TritString:
    """Base-3 digits, most significant first; trit ``i`` addresses qubit ``i``."""

    trits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "trits", tuple(int(t) for t in self.trits))
        if any(t not in (0, 1, 2) for t in self.trits):
            raise ValueError(f"trits must be 0, 1 or 2: {self.trits}")

    @classmethod
    def from_int(cls, value: int, n: int) -> TritString:
        if not 0 <= value < 3**n:
            raise ValueError(f"{value} out of range for {n} trits")
        trits = []
        for _ in range(n):
            value, r = divmod(value, 3)
            trits.append(r)
        return cls(tuple(reversed(trits)))

    @classmethod
    def parse(cls, text: str) -> TritString:
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def zeros(cls, n: int) -> TritString:
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.trits)

    @property
    def value(self) -> int:
        v = 0
        for t in self.trits:
            v = 3 * v + t
        return v

    def inverse(self) -> TritString:
        return TritString(tuple((3 - t) % 3 for t in self.trits))

    def __str__(self):
        return "".join(map(str, self.trits))


_GAMMA_LETTER = {
    0: {"X": "X", "Y": "Y", "Z": "Z"},
    1: {"X": "Y", "Y": "Z", "Z": "X"},
    2: {"X": "Z", "Y": "X", "Z": "Y"},
}

# gate sequences (application order) realising Gamma_b and its inverse
GAMMA_GATES = {0: (), 1: ("S", "Z", "H"), 2: ("H", "S")}
GAMMA_DAGGER_GATES = {0: (), 1: ("H", "Z", "S_DAGGER"), 2: ("S_DAGGER", "H")}


def gamma_conjugate_letter(letter: str, b: int) -> str:
    """``Gamma_b letter Gamma_b^dagger``; the map never introduces a sign."""
    if b not in _GAMMA_LETTER:
        raise ValueError(f"trit must be 0, 1 or 2, got {b}")
    if letter == "I":
        return "I"
    return _GAMMA_LETTER[b][letter]


def gamma_conjugate(p: PauliString, beta: TritString) -> PauliString:
    if p.n != beta.n:
        raise DimensionError(f"{p.n}-qubit Pauli vs {beta.n} trits")
    x, z = p.x, p.z
    m1 = sum(1 << q for q, t in enumerate(beta.trits) if t == 1)
    m2 = sum(1 << q for q, t in enumerate(beta.trits) if t == 2)
    keep = ~(m1 | m2)
    # b=1: X->Y->Z->X is (x, z) -> (x^z, x); b=2: X->Z->Y->X is (x, z) -> (z, x^z)
    nx = (x & keep) | ((x ^ z) & m1) | (z & m2)
    nz = (z & keep) | (x & m1) | ((x ^ z) & m2)
    return PauliString(p.n, nx, nz, p.phase)


def observable_from_index(n: int, beta: TritString | int) -> PauliString:
    """``Gamma_beta Z^n Gamma_beta^dagger``: index 0 is ZZ..Z, 1 is Z..ZX, 3^n-1 is YY..Y."""
    if isinstance(beta, int):
        beta = TritString.from_int(beta, n)
    if beta.n != n:
        raise DimensionError(f"{beta.n} trits for {n} qubits")
    return gamma_conjugate(PauliString(n, 0, (1 << n) - 1), beta)


def index_of_observable(p: PauliString) -> int:
    """Inverse of :func:`observable_from_index` for unsigned observables."""
    if not p.is_observable:
        raise ValueError(f"{p} is not an n-body observable")
    trit = {"Z": 0, "X": 1, "Y": 2}
    return TritString(tuple(trit[ch] for ch in p.letters)).value


# --------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class Context:
    """Maximal commuting set labelled by parity bit ``s`` and rotation ``beta``."""

    n: int
    s: int
    beta: TritString

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise UnsupportedContextError(f"contexts are only defined for even n >= 2, got n={self.n}")
        if self.s not in (0, 1):
            raise ValueError(f"s must be 0 or 1, got {self.s}")
        if isinstance(self.beta, int):
            object.__setattr__(self, "beta", TritString.from_int(self.beta, self.n))
        if self.beta.n != self.n:
            raise DimensionError(f"beta has {self.beta.n} trits for {self.n} qubits")

    @classmethod
    def base(cls, n: int, s: int = 0) -> Context:
        return cls(n, s, TritString.zeros(n))

    def observables(self) -> list[PauliString]:
        return build_context(self)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "s": self.s,
                "beta": str(self.beta),
                "observables": [p.letters for p in build_context(self)],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> Context:
        doc = json.loads(text)
        return cls(doc["n"], doc["s"], TritString.parse(doc["beta"]))


def _base_context(n: int, s: int) -> list[PauliString]:
    """Z^n followed by the {X,Y}^n strings whose X count has parity ``s``."""
    full = (1 << n) - 1
    out = [PauliString(n, 0, full)]
    for ymask in range(1 << n):
        if (n - _popcount(ymask)) % 2 == s:
            out.append(PauliString(n, full, ymask))
    return out


def build_context(ctx: Context) -> list[PauliString]:
    """The ``2^(n-1) + 1`` observables of the context, Z-type element first."""
    return [gamma_conjugate(p, ctx.beta) for p in _base_context(ctx.n, ctx.s)]


def context_generators(ctx: Context) -> list[PauliString]:
    """Independent stabilizer generators of the context's eigenbasis.

    The first is the X-type string (X...X, or YX...X for s=1), the rest are
    the Z-pairs Z_0 Z_i, all rotated by ``beta``.  Z-pairs are not context
    members themselves but every member is a product of these generators.
    """
    n, full = ctx.n, (1 << ctx.n) - 1
    gens = [PauliString(n, full, ctx.s)]
    gens += [PauliString(n, 0, 1 | (1 << i)) for i in range(1, n)]
    return [gamma_conjugate(g, ctx.beta) for g in gens]


def context_intersection_check(n: int) -> PauliString:
    """Common element of the s=0 and s=1 base contexts (always Z^n)."""
    common = set(_base_context(n, 0)) & set(_base_context(n, 1))
    if len(common) != 1:
        raise AssertionError(f"expected one shared element, found {len(common)}")
    (p,) = common
    return p


def enumerate_all_contexts(n: int, max_n: int = 8) -> int:
    """Number of distinct observable sets over all (s, beta) for ``n`` qubits."""
    if n > max_n:
        raise ResourceGuardError(f"n={n} exceeds enumeration limit {max_n}")
    Context.base(n)  # validates n
    # letter codes 1=X, 2=Z, 3=Y; table[b][code] gives the rotated code
    table = np.array([[0, 1, 2, 3], [0, 3, 1, 2], [0, 2, 3, 1]], dtype=np.uint8)
    seen = set()
    for s in (0, 1):
        base = np.array(
            [[LETTERS.index(ch) for ch in p.letters] for p in _base_context(n, s)],
            dtype=np.uint8,
        )
        for beta in itertools.product(range(3), repeat=n):
            rotated = table[list(beta), base]
            key = np.unique(rotated, axis=0).tobytes()
            seen.add(key)
    return len(seen)
