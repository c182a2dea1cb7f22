"""Exact number-theoretic kernel for Eisenstein coefficient formulas.

Everything here is computed in exact rational arithmetic (`int` and
`fractions.Fraction`): Bernoulli numbers, Kronecker symbols, generalized
Bernoulli numbers of real quadratic characters, and the class-number-type
function H(r, N) whose values parameterize the rank-2 Fourier coefficients
of degree-2 Eisenstein series.

Conventions:

* Bernoulli numbers follow the B_1 = -1/2 convention.
* A discriminant D is *fundamental* when D = 1, or D ≡ 1 (mod 4) and
  squarefree, or D = 4m with m ≡ 2, 3 (mod 4) and squarefree.
* chi_D is the Kronecker symbol (D/·); for fundamental D it is the real
  primitive character mod |D|, and L(1-r, chi_D) = -B_{r,chi_D}/r.
* H(r, 0) = zeta(1-2r).  For N > 0 write (-1)^r N = D f^2 with D
  fundamental; then

      H(r, N) = L(1-r, chi_D) * sum_{d|f} mu(d) chi_D(d) d^(r-1) sigma_{2r-1}(f/d)

  and H(r, N) = 0 whenever (-1)^r N ≡ 2, 3 (mod 4).  H(1, N) is the
  Hurwitz class number.

Factorization is plain trial division: every input in this package is desk
scale (bounded by a small multiple of the trace bound squared).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

__all__ = [
    "bernoulli",
    "bernoulli_poly",
    "kronecker",
    "is_fundamental_discriminant",
    "QuadCharacter",
    "gen_bernoulli",
    "fundamental_decomposition",
    "factorize",
    "divisors",
    "divisor_sigma",
    "moebius",
    "is_prime",
    "CohenHTable",
    "cohen_h",
]

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2).

    Computed from the defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0
    and cached for the life of the process.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for j, bj in enumerate(_BERNOULLI):
            acc += comb(m + 1, j) * bj
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_n(x) = sum_{j} C(n, j) B_j x^(n-j)."""
    if n < 0:
        raise ValueError("Bernoulli polynomial degree must be non-negative")
    acc = Fraction(0)
    power = Fraction(1)
    # descending j so the power of x can be accumulated multiplicatively
    for j in range(n, -1, -1):
        acc += comb(n, j) * bernoulli(j) * power
        power *= x
    return acc


def kronecker(d: int, m: int) -> int:
    """Kronecker symbol (d/m), totally multiplicative in m.

    Conventions: (d/0) = 1 iff d = ±1 else 0; (d/-1) = -1 iff d < 0;
    (d/2) = 0 for even d, +1 for d ≡ ±1 (mod 8), -1 for d ≡ ±3 (mod 8).
    """
    if m == 0:
        return 1 if d in (1, -1) else 0
    if d % 2 == 0 and m % 2 == 0:
        return 0
    sign = 1
    if m < 0:
        m = -m
        if d < 0:
            sign = -1
    while m % 2 == 0:
        m //= 2
        if d % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol (d/m) for odd positive m, by reciprocity
    d %= m
    while d:
        while d % 2 == 0:
            d //= 2
            if m % 8 in (3, 5):
                sign = -sign
        d, m = m, d
        if d % 4 == 3 and m % 4 == 3:
            sign = -sign
        d %= m
    return sign if m == 1 else 0


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division; n >= 1."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divisor_sigma(k: int, n: int) -> int:
    """sigma_k(n) = sum of d^k over positive divisors d of n."""
    return sum(d**k for d in divisors(n))


def moebius(n: int) -> int:
    """Moebius function mu(n)."""
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def is_prime(n: int) -> bool:
    """Primality by trial division (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return _is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(abs(m))
    return False


@dataclass(frozen=True)
class QuadCharacter:
    """The real character chi_D = (D/·) of a fundamental discriminant D.

    For D = 1 this is the trivial character mod 1 (identically 1), which
    makes B_{n,chi} degenerate to B_n(1), i.e. the plain Bernoulli number
    for n != 1 and +1/2 at n = 1.
    """

    discriminant: int

    def __post_init__(self) -> None:
        if not is_fundamental_discriminant(self.discriminant):
            raise ValueError(f"{self.discriminant} is not a fundamental discriminant")

    @property
    def modulus(self) -> int:
        return abs(self.discriminant)

    def __call__(self, m: int) -> int:
        return kronecker(self.discriminant, m)


def gen_bernoulli(n: int, chi: QuadCharacter) -> Fraction:
    """Generalized Bernoulli number B_{n,chi} for a quadratic character.

    B_{n,chi} = q^(n-1) * sum_{a=1}^{q} chi(a) B_n(a/q)   with q = |D|.
    """
    if n < 1:
        raise ValueError("generalized Bernoulli index must be >= 1")
    q = chi.modulus
    total = Fraction(0)
    for a in range(1, q + 1):
        ca = chi(a)
        if ca:
            total += ca * bernoulli_poly(n, Fraction(a, q))
    return q ** (n - 1) * total


def fundamental_decomposition(r_parity: int, n: int) -> tuple[int, int]:
    """Write (-1)^r_parity * n = D * f^2 with D a fundamental discriminant.

    Returns (D, f).  Raises ValueError when (-1)^r * n ≡ 2, 3 (mod 4),
    where no such decomposition exists.
    """
    if n < 1:
        raise ValueError("n must be positive")
    signed = -n if r_parity % 2 else n
    if signed % 4 in (2, 3):
        raise ValueError(f"{signed} is 2 or 3 mod 4: no fundamental decomposition")
    f = 1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
    kernel = signed // (f * f)  # squarefree by construction, sign of `signed`
    if kernel % 4 == 1:
        return kernel, f
    # kernel ≡ 2, 3 (mod 4): fundamental discriminant is 4*kernel, and the
    # mod-4 precondition forces f to be even.
    assert f % 2 == 0
    return 4 * kernel, f // 2


def _cohen_h_uncached(r: int, n: int) -> Fraction:
    if n < 0:
        raise ValueError("H(r, N) needs N >= 0")
    if n == 0:
        return -bernoulli(2 * r) / (2 * r)
    signed = -n if r % 2 else n
    if signed % 4 in (2, 3):
        return Fraction(0)
    disc, f = fundamental_decomposition(r, n)
    chi = QuadCharacter(disc)
    lvalue = -gen_bernoulli(r, chi) / r
    total = 0
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            total += mu * chi(d) * d ** (r - 1) * divisor_sigma(2 * r - 1, f // d)
    return lvalue * total


@dataclass
class CohenHTable:
    """Memo table for H(r, ·) at one fixed r >= 1.

    Values are exact reduced fractions, so a rebuilt table agrees
    entry-wise with any other; the cache is write-once per key and safe
    for concurrent readers once warm (worst case a redundant recompute of
    the same exact value).
    """

    r: int
    cache: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("CohenHTable needs r >= 1")

    def value(self, n: int) -> Fraction:
        out = self.cache.get(n)
        if out is None:
            out = _cohen_h_uncached(self.r, n)
            self.cache[n] = out
        return out


_H_TABLES: dict[int, CohenHTable] = {}


def cohen_h(r: int, n: int) -> Fraction:
    """H(r, N) with a process-wide memo table per r (see module docstring)."""
    table = _H_TABLES.get(r)
    if table is None:
        table = _H_TABLES[r] = CohenHTable(r)
    return table.value(n)
