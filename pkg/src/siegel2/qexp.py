"""Trace-truncated Fourier expansions of degree-2 Siegel modular forms.

An index triple T = (m, n, r) stands for the half-integral symmetric matrix

    [[ m,  r/2 ],
     [ r/2, n  ]]

The positive semidefinite cone L2 is cut out by m >= 0, n >= 0 and
4mn - r^2 >= 0; `trace(T) = m + n` and `fourdet(T) = 4mn - r^2 = 4 det(T)`.
An `Expansion` stores the nonzero coefficients a(T) for trace(T) <= N.
Traces are non-negative and add under index addition, so sums and products
of bound-N expansions are again *exact* at every index of trace <= N: the
truncation never corrupts tracked coefficients.

Two coefficient domains are supported:

* exact rationals: plain `int` plus `fractions.Fraction` (kept canonical:
  integer-valued fractions are stored as `int`);
* residues mod a prime p: canonical ints in [0, p), with the modulus
  carried on the expansion (`modulus` attribute; `None` means rational).

Indices are ordered lexicographically by (trace, m, r).  `order_key` is
the sort key realizing this total order on index triples (which need not
be positive semidefinite: the order lives on all of Lambda_2), and every
scan, minimum and serialization in the package follows it.

The weight slot is bookkeeping: `None` marks a non-modular intermediate
(raw partial derivatives, theta images).  Adding two expansions with
distinct known weights is refused; `None` absorbs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, NamedTuple

from .numtheory import is_prime

__all__ = [
    "TIndex",
    "trace",
    "fourdet",
    "order_key",
    "order_cmp",
    "iter_l2_indices",
    "Expansion",
    "ReductionError",
    "symmetry_check",
]


class TIndex(NamedTuple):
    """Index triple (m, n, r) for the matrix [[m, r/2], [r/2, n]].

    The container itself ranges over all of Lambda_2 (any integers);
    positive semidefiniteness is a separate predicate, `in_l2`.
    Addition/subtraction are component-wise (index addition is what the
    convolution product and the minimum-matrix calculus use).
    """

    m: int
    n: int
    r: int

    @property
    def trace(self) -> int:
        return self.m + self.n

    @property
    def fourdet(self) -> int:
        """4*det(T) = 4mn - r^2 (integer, while det itself may be quarter-integral)."""
        return 4 * self.m * self.n - self.r * self.r

    @property
    def content(self) -> int:
        """gcd(m, n, r), defined for T != 0."""
        if self == (0, 0, 0):
            raise ValueError("content is undefined at the zero index")
        return gcd(self.m, self.n, self.r)

    @property
    def rank(self) -> int:
        if self.fourdet > 0:
            return 2
        return 0 if self == (0, 0, 0) else 1

    def in_l2(self) -> bool:
        return self.m >= 0 and self.n >= 0 and self.fourdet >= 0

    def __add__(self, other):
        om, on, orr = other
        return TIndex(self.m + om, self.n + on, self.r + orr)

    def __sub__(self, other):
        om, on, orr = other
        return TIndex(self.m - om, self.n - on, self.r - orr)

    def __neg__(self):
        return TIndex(-self.m, -self.n, -self.r)


def trace(t) -> int:
    return t[0] + t[1]


def fourdet(t) -> int:
    return 4 * t[0] * t[1] - t[2] * t[2]


def order_key(t) -> tuple[int, int, int]:
    """Sort key of the (trace, m, r) lexicographic order on index triples."""
    return (t[0] + t[1], t[0], t[2])


def order_cmp(t1, t2) -> int:
    """-1, 0, +1 as t1 precedes, equals, or succeeds t2 in the index order."""
    k1, k2 = order_key(t1), order_key(t2)
    if k1 < k2:
        return -1
    return 1 if k1 > k2 else 0


def iter_l2_indices(trace_bound: int) -> Iterator[TIndex]:
    """All of L2 with trace <= trace_bound, ascending in the index order."""
    for t in range(trace_bound + 1):
        for m in range(t + 1):
            n = t - m
            rmax = isqrt(4 * m * n)
            for r in range(-rmax, rmax + 1):
                yield TIndex(m, n, r)


class ReductionError(ValueError):
    """A coefficient is not p-integral; carries the offending index."""

    def __init__(self, index, coefficient, modulus):
        self.index = index
        self.coefficient = coefficient
        self.modulus = modulus
        super().__init__(
            f"coefficient {coefficient} at index {tuple(index)} is not {modulus}-integral"
        )


def _canon_rational(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _to_residue(c, p: int) -> int:
    # works uniformly for int and Fraction via the Rational protocol
    num, den = c.numerator, c.denominator
    if den % p == 0:
        raise ZeroDivisionError(f"{c} is not {p}-integral")
    if den == 1:
        return num % p
    return num * pow(den, -1, p) % p


_AXIS_SLOT = {"11": 0, "12": 2, "22": 1}  # which of (m, n, r) multiplies


class Expansion:
    """A trace-truncated Fourier expansion (see module docstring).

    Attributes:
        weight: modular weight, or None for non-modular intermediates.
        trace_bound: every index with trace <= trace_bound is tracked exactly.
        coeffs: dict mapping TIndex -> nonzero scalar (canonical form).
        modulus: None for the rational domain, a prime p for residues.
    """

    __slots__ = ("weight", "trace_bound", "coeffs", "modulus")

    def __init__(self, weight, trace_bound: int, coeffs=None, modulus: int | None = None):
        if trace_bound < 0:
            raise ValueError("trace bound must be >= 0")
        if modulus is not None and not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        canon: dict[TIndex, object] = {}
        if coeffs:
            for key, val in coeffs.items():
                idx = key if type(key) is TIndex else TIndex(*key)
                if not idx.in_l2():
                    raise ValueError(f"index {tuple(idx)} is not positive semidefinite")
                if idx.trace > trace_bound:
                    raise ValueError(
                        f"index {tuple(idx)} exceeds the trace bound {trace_bound}"
                    )
                if modulus is None:
                    val = _canon_rational(val)
                else:
                    try:
                        val = _to_residue(val, modulus)
                    except ZeroDivisionError:
                        raise ReductionError(idx, val, modulus) from None
                if val:
                    canon[idx] = val
        self.weight = weight
        self.trace_bound = trace_bound
        self.coeffs = canon
        self.modulus = modulus

    # internal fast path: callers guarantee canonical nonzero values and
    # valid in-bound keys
    @classmethod
    def _raw(cls, weight, trace_bound, coeffs, modulus):
        obj = object.__new__(cls)
        obj.weight = weight
        obj.trace_bound = trace_bound
        obj.coeffs = coeffs
        obj.modulus = modulus
        return obj

    @classmethod
    def zero(cls, weight, trace_bound: int, modulus: int | None = None) -> "Expansion":
        return cls(weight, trace_bound, {}, modulus)

    @classmethod
    def constant(cls, value, trace_bound: int, modulus: int | None = None) -> "Expansion":
        return cls(0, trace_bound, {TIndex(0, 0, 0): value}, modulus)

    @classmethod
    def one(cls, trace_bound: int, modulus: int | None = None) -> "Expansion":
        return cls.constant(1, trace_bound, modulus)

    # ----- basic protocol -------------------------------------------------

    def __repr__(self) -> str:
        dom = "rational" if self.modulus is None else f"mod {self.modulus}"
        w = "-" if self.weight is None else self.weight
        return f"<Expansion weight={w} bound={self.trace_bound} {dom} terms={len(self.coeffs)}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.trace_bound == other.trace_bound
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    __hash__ = None  # mutable-ish container semantics

    def coefficient(self, index):
        """a(T); 0 (int) for any tracked index off the support."""
        key = index if type(index) is TIndex else TIndex(*index)
        return self.coeffs.get(key, 0)

    def support(self) -> list[TIndex]:
        """Indices with nonzero coefficient, ascending in the index order."""
        return sorted(self.coeffs, key=order_key)

    def _domain(self) -> str:
        return "rational" if self.modulus is None else f"mod {self.modulus}"

    def _require_same_domain(self, other: "Expansion") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"domain mismatch: {self._domain()} vs {other._domain()}")

    @staticmethod
    def _sum_weight(w1, w2):
        if w1 is None or w2 is None:
            return None
        if w1 != w2:
            raise ValueError(f"weight mismatch: {w1} vs {w2}")
        return w1

    # ----- ring operations ------------------------------------------------

    def __add__(self, other: "Expansion") -> "Expansion":
        if not isinstance(other, Expansion):
            return NotImplemented
        self._require_same_domain(other)
        w = self._sum_weight(self.weight, other.weight)
        bound = min(self.trace_bound, other.trace_bound)
        p = self.modulus
        out = {}
        for T, c in self.coeffs.items():
            if T.m + T.n <= bound:
                out[T] = c
        for T, c in other.coeffs.items():
            if T.m + T.n > bound:
                continue
            prev = out.get(T)
            if prev is None:
                out[T] = c
                continue
            v = prev + c
            if p is not None:
                v %= p
            else:
                v = _canon_rational(v)
            if v:
                out[T] = v
            else:
                del out[T]
        return Expansion._raw(w, bound, out, p)

    def __neg__(self) -> "Expansion":
        return self.scale(-1)

    def __sub__(self, other: "Expansion") -> "Expansion":
        if not isinstance(other, Expansion):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Expansion":
        """Scalar multiple; preserves the weight."""
        p = self.modulus
        if p is None:
            c = _canon_rational(c)
            if not c:
                return Expansion._raw(self.weight, self.trace_bound, {}, None)
            out = {T: _canon_rational(v * c) for T, v in self.coeffs.items()}
        else:
            try:
                cr = _to_residue(c, p)
            except ZeroDivisionError:
                raise ValueError(f"scalar {c} is not {p}-integral") from None
            if cr == 0:
                return Expansion._raw(self.weight, self.trace_bound, {}, p)
            out = {T: v * cr % p for T, v in self.coeffs.items()}
        return Expansion._raw(self.weight, self.trace_bound, out, p)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Expansion):
            return NotImplemented
        self._require_same_domain(other)
        if self.weight is None or other.weight is None:
            w = None
        else:
            w = self.weight + other.weight
        bound = min(self.trace_bound, other.trace_bound)
        p = self.modulus
        # bucket the right factor by trace so each left term only scans
        # partners that keep the product inside the bound
        buckets: list[list[tuple[int, int, int, object]]] = [[] for _ in range(bound + 1)]
        for (m2, n2, r2), c2 in other.coeffs.items():
            t2 = m2 + n2
            if t2 <= bound:
                buckets[t2].append((m2, n2, r2, c2))
        out: dict[tuple[int, int, int], object] = {}
        get = out.get
        for (m1, n1, r1), c1 in self.coeffs.items():
            t1 = m1 + n1
            if t1 > bound:
                continue
            for bucket in buckets[: bound - t1 + 1]:
                for m2, n2, r2, c2 in bucket:
                    key = (m1 + m2, n1 + n2, r1 + r2)
                    prev = get(key)
                    out[key] = c1 * c2 if prev is None else prev + c1 * c2
        if p is None:
            canon = {}
            for k, v in out.items():
                v = _canon_rational(v)
                if v:
                    canon[TIndex(*k)] = v
        else:
            canon = {}
            for k, v in out.items():
                v %= p
                if v:
                    canon[TIndex(*k)] = v
        return Expansion._raw(w, bound, canon, p)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Expansion":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = None
        base = self
        k = e
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                break
            base = base * base
        if result is None:
            return Expansion.one(self.trace_bound, self.modulus)
        return result

    def truncate(self, trace_bound: int) -> "Expansion":
        """Restrict to a smaller trace bound (extension would be a lie)."""
        if trace_bound > self.trace_bound:
            raise ValueError("cannot extend a truncated expansion")
        out = {T: c for T, c in self.coeffs.items() if T.m + T.n <= trace_bound}
        return Expansion._raw(self.weight, trace_bound, out, self.modulus)

    def with_weight(self, weight) -> "Expansion":
        """Copy with the weight slot replaced (used after normalizations)."""
        return Expansion._raw(weight, self.trace_bound, dict(self.coeffs), self.modulus)

    # ----- differential operators ------------------------------------------

    def derivative(self, axis: str) -> "Expansion":
        """(2 pi i)^(-1)-normalized partial in the variable of `axis`.

        axis "11" multiplies a(T) by m, "12" by r, "22" by n.  The result
        is a non-modular intermediate: its weight is None.
        """
        slot = _AXIS_SLOT.get(axis)
        if slot is None:
            raise ValueError(f"axis must be one of 11, 12, 22; got {axis!r}")
        p = self.modulus
        out = {}
        for T, c in self.coeffs.items():
            f = T[slot]
            if not f:
                continue
            v = c * f if p is None else c * f % p
            if v:
                out[T] = v
        return Expansion._raw(None, self.trace_bound, out, p)

    def theta(self) -> "Expansion":
        """a(T) -> det(T) a(T) with det(T) = (4mn - r^2)/4.

        Annihilates every index of rank <= 1.  In the mod-p domain the
        quarter means dividing by 4, so p = 2 is rejected.
        """
        p = self.modulus
        out = {}
        if p is None:
            for T, c in self.coeffs.items():
                fd = 4 * T.m * T.n - T.r * T.r
                if fd:
                    out[T] = _canon_rational(Fraction(fd, 4) * c)
            return Expansion._raw(None, self.trace_bound, out, None)
        if p == 2:
            raise ValueError("theta needs 4 invertible: p = 2 is not supported")
        inv4 = pow(4, -1, p)
        for T, c in self.coeffs.items():
            v = (4 * T.m * T.n - T.r * T.r) % p * inv4 % p * c % p
            if v:
                out[T] = v
        return Expansion._raw(None, self.trace_bound, out, p)

    def phi(self) -> list:
        """Siegel restriction to genus 1: the coefficient list [a((j,0,0))]_j=0..N."""
        return [self.coeffs.get((j, 0, 0), 0) for j in range(self.trace_bound + 1)]

    # ----- domain changes ---------------------------------------------------

    def reduce_mod(self, p: int) -> "Expansion":
        """Reduce an exact rational expansion mod the prime p.

        Denominators must be prime to p; the first offender (in the index
        order) is reported in the raised ReductionError.
        """
        if self.modulus is not None:
            raise ValueError("expansion is already reduced")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        out = {}
        for T in sorted(self.coeffs, key=order_key):
            c = self.coeffs[T]
            try:
                v = _to_residue(c, p)
            except ZeroDivisionError:
                raise ReductionError(T, c, p) from None
            if v:
                out[T] = v
        return Expansion._raw(self.weight, self.trace_bound, out, p)

    # ----- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """Line-oriented text form; sorted by the index order, bit-stable.

        Header: `qexp <weight|-> <trace_bound> <rational|mod p>`, then one
        line per nonzero coefficient: `m n r numerator denominator` in the
        rational domain, `m n r residue` mod p.
        """
        if self.modulus is None:
            head = f"qexp {'-' if self.weight is None else self.weight} {self.trace_bound} rational"
            lines = [head]
            for T in sorted(self.coeffs, key=order_key):
                c = self.coeffs[T]
                lines.append(f"{T.m} {T.n} {T.r} {c.numerator} {c.denominator}")
        else:
            head = f"qexp {'-' if self.weight is None else self.weight} {self.trace_bound} mod {self.modulus}"
            lines = [head]
            for T in sorted(self.coeffs, key=order_key):
                lines.append(f"{T.m} {T.n} {T.r} {self.coeffs[T]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Expansion":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty expansion text")
        head = lines[0].split()
        if len(head) < 4 or head[0] != "qexp":
            raise ValueError(f"bad expansion header: {lines[0]!r}")
        weight = None if head[1] == "-" else int(head[1])
        trace_bound = int(head[2])
        if head[3] == "rational" and len(head) == 4:
            modulus = None
        elif head[3] == "mod" and len(head) == 5:
            modulus = int(head[4])
        else:
            raise ValueError(f"bad expansion header: {lines[0]!r}")
        coeffs: dict[tuple[int, int, int], object] = {}
        want = 5 if modulus is None else 4
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != want:
                raise ValueError(f"bad coefficient line: {ln!r}")
            key = (int(parts[0]), int(parts[1]), int(parts[2]))
            if key in coeffs:
                raise ValueError(f"duplicate index {key}")
            if modulus is None:
                num, den = int(parts[3]), int(parts[4])
                coeffs[key] = num if den == 1 else Fraction(num, den)
            else:
                coeffs[key] = int(parts[3])
        return cls(weight, trace_bound, coeffs, modulus)


def symmetry_check(F: Expansion) -> list[tuple[TIndex, str, object, object]]:
    """Check unimodular covariance a(T) = det(U)^k a(U^T T U) inside the bound.

    U ranges over the swap (m <-> n), the r-negation (both determinant -1)
    and the unit shear (determinant +1), which generate GL2(Z).  Image
    indices outside the trace bound are skipped.  Returns the violations
    as (index, transform, expected, actual); empty means covariant as far
    as the bound can see.
    """
    if F.weight is None:
        raise ValueError("symmetry check requires a definite weight")
    sign = -1 if F.weight % 2 else 1
    p = F.modulus
    bound = F.trace_bound
    out = []
    for T in iter_l2_indices(bound):
        m, n, r = T
        a = F.coefficient(T)
        for label, T2, s in (
            ("swap", TIndex(n, m, r), sign),
            ("negate-r", TIndex(m, n, -r), sign),
            ("shear", TIndex(m, m + n + r, 2 * m + r), 1),
        ):
            if T2.trace > bound:
                continue
            expect = s * F.coefficient(T2)
            if p is not None:
                expect %= p
            if a != expect:
                out.append((T, label, expect, a))
    return out
