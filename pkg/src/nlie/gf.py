"""Exact arithmetic in the binary fields GF(2**m), 1 <= m <= 8.

Field elements are plain ints in [0, 2**m), read as polynomials over GF(2)
(bit i is the coefficient of x**i).  Addition is xor.  Multiplication is
polynomial multiplication reduced by a fixed irreducible modulus per degree,
realized through discrete-log tables built once per field.  Field objects are
interned, so ``GF(3) is GF(3)`` and identity comparison is enough.
"""

from __future__ import annotations

import re

# One fixed reduction polynomial per extension degree (bit m always set).
# m=1 needs none: GF(2) is the prime field.
_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
}

_NAME_RE = re.compile(r"^2\^([1-9][0-9]*)$")


def _clmul(a: int, b: int, modulus: int, m: int) -> int:
    # carry-less product mod the reduction polynomial; only used to seed the tables
    top = 1 << m
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


def _build_tables(m: int, modulus: int | None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = 1 << m
    if m == 1:
        # trivial multiplicative group {1}
        return (1, 1), (0, 0)
    order = q - 1
    # the fixed moduli are irreducible but not all primitive (0x11b is not),
    # so hunt for a generator instead of assuming x generates
    for g in range(2, q):
        exp = [0] * order
        log = [0] * q
        x = 1
        ok = True
        for i in range(order):
            if x == 1 and i > 0:
                ok = False
                break
            exp[i] = x
            log[x] = i
            x = _clmul(x, g, modulus, m)
        if ok and x == 1:
            # doubled exp table lets mul/inv skip one modulo
            return tuple(exp + exp), tuple(log)
    raise AssertionError(f"no multiplicative generator found for m={m}")


class GF:
    """The field GF(2**m) with log/exp-table arithmetic on plain ints."""

    _interned: dict[int, "GF"] = {}

    m: int
    q: int
    modulus: int | None

    def __new__(cls, m: int) -> "GF":
        cached = cls._interned.get(m)
        if cached is not None:
            return cached
        if not isinstance(m, int) or not 1 <= m <= 8:
            raise ValueError(f"unsupported extension degree m={m!r} (need 1..8)")
        self = super().__new__(cls)
        self.m = m
        self.q = 1 << m
        self.modulus = _MODULI.get(m)
        self._exp, self._log = _build_tables(m, self.modulus)
        cls._interned[m] = self
        return self

    def __repr__(self) -> str:
        return f"GF(2^{self.m})"

    def __reduce__(self):
        return (GF, (self.m,))

    @property
    def name(self) -> str:
        """Text encoding of the field, e.g. ``2^3``."""
        return f"2^{self.m}"

    @classmethod
    def from_name(cls, name: str) -> "GF":
        match = _NAME_RE.match(name.strip())
        if not match:
            raise ValueError(f"unknown field {name!r} (expected 2^m, m in 1..8)")
        m = int(match.group(1))
        if not 1 <= m <= 8:
            raise ValueError(f"unknown field {name!r} (m must be 1..8)")
        return cls(m)

    # -- element plumbing ------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def require(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"scalar {a!r} out of range for {self}")
        return a

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no multiplicative inverse in {self}")
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        """The unique square root (squaring is a field automorphism here)."""
        for _ in range(self.m - 1):
            a = self.mul(a, a)
        return a

    def pow_(self, a: int, k: int) -> int:
        """a**k; 0**0 is taken to be 1, 0**negative is an error."""
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError(f"0 has no negative powers in {self}")
            return 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]


def format_scalar(a: int) -> str:
    """Lowercase hex with 0x prefix, the one scalar encoding used in files."""
    return hex(a)
