"""Cyclic sequence machinery: quasi-De Bruijn generation and lookup, the
54-way digit bijection, and Chinese-remainder recombination.

A *quasi-De Bruijn* sequence of order n and length m over a k-symbol
alphabet is a cyclic sequence in which every length-n window appears at
most once (m = k**n gives a full De Bruijn sequence).  Because windows are
unique, an n-window determines its position in the cycle; that lookup is
what the dot-pattern decoders build on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleLengthError, SearchExhaustedError, WindowNotFoundError

__all__ = [
    "CyclicSequence",
    "gen_quasi_debruijn",
    "PhiTable",
    "phi",
    "phi_inv",
    "CrtBasis",
    "crt_combine",
    "fixture_text",
    "parse_fixture",
]


class CyclicSequence:
    """A cyclic sequence with pairwise-distinct n-windows and their index.

    The constructor validates the window-uniqueness property and builds the
    window -> start-index table (windows are keyed as base-k integers).
    """

    __slots__ = ("alphabet_size", "order", "symbols", "_lookup")

    def __init__(self, alphabet_size: int, order: int, symbols):
        symbols = tuple(int(s) for s in symbols)
        if alphabet_size < 2:
            raise ValueError("alphabet size must be at least 2")
        if order < 1:
            raise ValueError("order must be at least 1")
        if len(symbols) < order:
            raise ValueError("sequence shorter than its window order")
        if any(s < 0 or s >= alphabet_size for s in symbols):
            raise ValueError("symbol outside the alphabet")
        self.alphabet_size = alphabet_size
        self.order = order
        self.symbols = symbols
        lookup = {}
        for i in range(len(symbols)):
            key = self._encode(self.window(i))
            if key in lookup:
                raise ValueError(
                    f"window at index {i} repeats the one at index {lookup[key]}"
                )
            lookup[key] = i
        self._lookup = lookup

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def length(self) -> int:
        return len(self.symbols)

    def _encode(self, window) -> int:
        code = 0
        for s in window:
            code = code * self.alphabet_size + s
        return code

    def window(self, i: int) -> tuple[int, ...]:
        """The cyclic n-window starting at index ``i``."""
        m = len(self.symbols)
        if not (0 <= i < m):
            raise IndexError(f"window start {i} outside 0..{m - 1}")
        return tuple(self.symbols[(i + t) % m] for t in range(self.order))

    def locate(self, window) -> int:
        """Start index of ``window``; the inverse of :meth:`window`."""
        window = tuple(int(s) for s in window)
        if len(window) != self.order:
            raise ValueError(f"window length {len(window)} != order {self.order}")
        if any(s < 0 or s >= self.alphabet_size for s in window):
            raise ValueError("window symbol outside the alphabet")
        try:
            return self._lookup[self._encode(window)]
        except KeyError:
            raise WindowNotFoundError(f"window {window} not in sequence") from None


def gen_quasi_debruijn(k: int, n: int, m: int) -> CyclicSequence:
    """Lexicographically smallest cyclic sequence of length m over 0..k-1
    whose m cyclic n-windows are pairwise distinct.

    Depth-first search that always extends with the smallest feasible
    symbol and backtracks on window conflicts; the windows that wrap
    around the end of the cycle are checked when the sequence is complete.
    Deterministic by construction.
    """
    if k < 2 or n < 1:
        raise ValueError("need alphabet size >= 2 and order >= 1")
    if m > k**n:
        raise InfeasibleLengthError(
            f"length {m} exceeds the {k}**{n} = {k**n} distinct windows"
        )
    if m < n:
        raise ValueError("length must be at least the window order")

    seq = [0] * m
    used = set()
    consumed = [None] * m  # window code consumed by placing position i
    choice = [0] * m

    def window_code(p):
        code = 0
        for t in range(n):
            code = code * k + seq[(p + t) % m]
        return code

    pos = 0
    while True:
        if pos == m:
            wrap = set()
            ok = True
            for p in range(m - n + 1, m):
                code = window_code(p)
                if code in used or code in wrap:
                    ok = False
                    break
                wrap.add(code)
            if ok:
                return CyclicSequence(k, n, seq)
            pos -= 1
            used.discard(consumed[pos])
            consumed[pos] = None
            choice[pos] += 1
            continue
        advanced = False
        while choice[pos] < k:
            seq[pos] = choice[pos]
            if pos >= n - 1:
                code = window_code(pos - n + 1)
                if code in used:
                    choice[pos] += 1
                    continue
                used.add(code)
                consumed[pos] = code
            pos += 1
            if pos < m:
                choice[pos] = 0
            advanced = True
            break
        if advanced:
            continue
        if pos == 0:
            raise SearchExhaustedError(
                f"exhaustive search: no quasi-De Bruijn sequence with "
                f"k={k} n={n} m={m}"
            )
        choice[pos] = 0
        pos -= 1
        if consumed[pos] is not None:
            used.discard(consumed[pos])
            consumed[pos] = None
        choice[pos] += 1


# ---------------------------------------------------------------------------
# The 54-way digit bijection {5..58} <-> (a1, a2, a3, a4).
#
# r = 5 + a1 + 3*a2 + 9*a3 + 18*a4 with a1, a2, a4 in {0,1,2}, a3 in {0,1}:
# a mixed-radix expansion of r - 5 with digit bases (3, 3, 2, 3).

_DIGIT_BASES = (3, 3, 2, 3)
_R_LO, _R_HI = 5, 58


class PhiTable:
    """Forward/inverse tables of the mixed-radix digit bijection."""

    __slots__ = ("forward", "inverse")

    def __init__(self):
        forward = {}
        for r in range(_R_LO, _R_HI + 1):
            v = r - _R_LO
            digits = []
            for base in _DIGIT_BASES:
                digits.append(v % base)
                v //= base
            forward[r] = tuple(digits)
        self.forward = forward
        self.inverse = {digits: r for r, digits in forward.items()}


_PHI = PhiTable()


def phi(r: int) -> tuple[int, int, int, int]:
    """Digit tuple (a1, a2, a3, a4) of r in {5..58}."""
    try:
        return _PHI.forward[r]
    except KeyError:
        raise ValueError(f"value {r} outside {{{_R_LO}..{_R_HI}}}") from None


def phi_inv(digits) -> int:
    """Inverse of :func:`phi`."""
    digits = tuple(int(d) for d in digits)
    try:
        return _PHI.inverse[digits]
    except KeyError:
        raise ValueError(f"digits {digits} outside the bijection codomain") from None


# ---------------------------------------------------------------------------
# Chinese remainder recombination.


@dataclass(frozen=True)
class CrtBasis:
    """Pairwise-coprime moduli with precomputed reconstruction coefficients.

    ``coefficients[i]`` is (product/moduli[i]) * inverse(product/moduli[i])
    so that combining is a single dot product mod ``product``.
    """

    moduli: tuple[int, ...]
    product: int
    coefficients: tuple[int, ...]

    @classmethod
    def from_moduli(cls, moduli) -> "CrtBasis":
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ValueError("moduli must be at least 2")
        for i in range(len(moduli)):
            for j in range(i + 1, len(moduli)):
                if math.gcd(moduli[i], moduli[j]) != 1:
                    raise ValueError(
                        f"moduli {moduli[i]} and {moduli[j]} are not coprime"
                    )
        product = math.prod(moduli)
        coefficients = []
        for m in moduli:
            others = product // m
            coefficients.append(others * pow(others, -1, m))
        return cls(moduli, product, tuple(coefficients))


def crt_combine(residues, basis: CrtBasis) -> int:
    """The unique v < basis.product with v = residues[i] (mod moduli[i])."""
    residues = tuple(int(r) for r in residues)
    if len(residues) != len(basis.moduli):
        raise ValueError(
            f"{len(residues)} residues for {len(basis.moduli)} moduli"
        )
    for r, m in zip(residues, basis.moduli):
        if not (0 <= r < m):
            raise ValueError(f"residue {r} outside 0..{m - 1}")
    return sum(r * c for r, c in zip(residues, basis.coefficients)) % basis.product


# ---------------------------------------------------------------------------
# Fixture file format: one line "k n m", then the m symbols.


def fixture_text(seq: CyclicSequence) -> str:
    header = f"{seq.alphabet_size} {seq.order} {len(seq)}"
    return header + "\n" + " ".join(str(s) for s in seq.symbols) + "\n"


def parse_fixture(text: str) -> CyclicSequence:
    tokens = text.split()
    if len(tokens) < 3:
        raise ValueError("fixture needs a 'k n m' header")
    k, n, m = int(tokens[0]), int(tokens[1]), int(tokens[2])
    symbols = [int(t) for t in tokens[3:]]
    if len(symbols) != m:
        raise ValueError(f"fixture declares {m} symbols, found {len(symbols)}")
    return CyclicSequence(k, n, symbols)
