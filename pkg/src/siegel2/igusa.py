"""Construction of the five ring generators as exact truncated expansions.

The degree-2 Eisenstein series E_k (k = 4, 6, 8, 10, 12) are built from
the H-function formula

    a(T; E_k) = 2 / (zeta(1-k) zeta(3-2k))
                * sum_{d | content(T)} d^(k-1) H(k-1, fourdet(T)/d^2)

for T != 0 (and a(0) = 1); on rank-1 indices this degenerates to the
classical -2k/B_k * sigma_{k-1}(content).  Every build cross-checks the
family against the genus-1 series under the Siegel restriction and checks
the one-dimensionality identity E4^2 = E8 exactly; a failure of either is
a construction bug and raises instead of producing output.

Generators and normalizations:

    X4  = E4,  X6 = E6               a((0,0,0)) = 1
    X10, X12: cusp projections       a((1,1,1)) = 1, zero on rank <= 1
    X35: odd generator               a((2,3,-1)) = 1

X10 is cut out of span{E4*E6, E10} by the constant term and the (1,1,1)
normalization; X12 out of span{E4^3, E6^2, E12} with the extra condition
a((1,0,0)) = 0.  X35 is the normalized 4x4 determinant whose first row is
(4 X4, 6 X6, 10 X10, 12 X12) and whose other rows are the three
(2 pi i)^(-1)-normalized partials of the four even generators: weighting
the first row by the weights makes the inhomogeneous terms of the
derivative transformation law cancel, so the determinant is a cusp form
of weight 4+6+10+12+3 = 35.  All five generators have integer
coefficients after normalization, which is enforced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .numtheory import bernoulli, cohen_h, divisor_sigma, divisors
from .qexp import Expansion, TIndex, iter_l2_indices, order_key

__all__ = [
    "ConstructionError",
    "FORMULA_VERSION",
    "SUPPORTED_WEIGHTS",
    "GENERATOR_NAMES",
    "genus1_eisenstein",
    "siegel_eisenstein",
    "eisenstein_family",
    "build_x4_x6",
    "build_x10_x12",
    "build_x35",
    "integrality_check",
    "GeneratorSet",
    "build_generator_set",
    "cache_path",
    "save_generator_set",
    "load_generator_set",
    "ensure_generator_set",
]

# bump when any coefficient formula changes: cache files are keyed by it
FORMULA_VERSION = "v1"

SUPPORTED_WEIGHTS = (4, 6, 8, 10, 12)
GENERATOR_NAMES = ("X4", "X6", "X10", "X12", "X35")
CACHE_NAMES = ("E4", "E6", "E8", "E10", "E12") + GENERATOR_NAMES


class ConstructionError(RuntimeError):
    """A generator build failed an internal identity or normalization."""


def genus1_eisenstein(k: int, trace_bound: int) -> list:
    """Coefficients [a_0..a_N] of the genus-1 series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("weight must be even and >= 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    out: list = [1]
    for n in range(1, trace_bound + 1):
        v = factor * divisor_sigma(k - 1, n)
        out.append(int(v) if v.denominator == 1 else v)
    return out


def siegel_eisenstein(k: int, trace_bound: int) -> Expansion:
    """The degree-2 Eisenstein series E_k, exact to the trace bound."""
    if k not in SUPPORTED_WEIGHTS:
        raise ValueError(f"weight must be one of {SUPPORTED_WEIGHTS}")
    zeta_1mk = -bernoulli(k) / k
    zeta_3m2k = -bernoulli(2 * k - 2) / (2 * k - 2)
    prefactor = 2 / (zeta_1mk * zeta_3m2k)
    coeffs: dict[TIndex, object] = {}
    for T in iter_l2_indices(trace_bound):
        if T == (0, 0, 0):
            coeffs[T] = 1
            continue
        fd = T.fourdet
        acc = Fraction(0)
        for d in divisors(T.content):
            acc += d ** (k - 1) * cohen_h(k - 1, fd // (d * d))
        coeffs[T] = prefactor * acc
    return Expansion(k, trace_bound, coeffs)


def eisenstein_family(trace_bound: int, validate: bool = True) -> dict[int, Expansion]:
    """All supported E_k at one bound, with the mandatory self-checks."""
    family = {k: siegel_eisenstein(k, trace_bound) for k in SUPPORTED_WEIGHTS}
    if validate:
        for k in SUPPORTED_WEIGHTS:
            if family[k].phi() != genus1_eisenstein(k, trace_bound):
                raise ConstructionError(
                    f"restriction of E{k} disagrees with the genus-1 series"
                )
        if family[4] * family[4] != family[8]:
            raise ConstructionError("E4^2 != E8: coefficient formula is inconsistent")
    return family


def build_x4_x6(trace_bound: int, family: dict[int, Expansion] | None = None):
    """X4 = E4 and X6 = E6 (already normalized: constant term 1)."""
    if family is None:
        family = {4: siegel_eisenstein(4, trace_bound), 6: siegel_eisenstein(6, trace_bound)}
    return family[4], family[6]


def _solve_linear(matrix, rhs) -> list[Fraction]:
    """Exact Gauss-Jordan solve of a small square system."""
    n = len(rhs)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            raise ConstructionError("singular linear system in the cusp projection")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _combine(basis, coeffs, weight) -> Expansion:
    total = None
    for b, c in zip(basis, coeffs):
        term = b.scale(c)
        total = term if total is None else total + term
    return total.with_weight(weight)


def _cusp_violation(F: Expansion) -> TIndex | None:
    for T in iter_l2_indices(F.trace_bound):
        if T.fourdet == 0 and F.coefficient(T):
            return T
    return None


def build_x10_x12(trace_bound: int, family: dict[int, Expansion] | None = None):
    """Cut the weight-10 and weight-12 cusp generators out of Eisenstein products."""
    if trace_bound < 2:
        raise ConstructionError("normalization index (1,1,1) has trace 2: need bound >= 2")
    if family is None:
        family = eisenstein_family(trace_bound, validate=False)
    e4, e6 = family[4], family[6]
    idx0, idx100, idx111 = TIndex(0, 0, 0), TIndex(1, 0, 0), TIndex(1, 1, 1)

    basis10 = [e4 * e6, family[10]]
    sol = _solve_linear(
        [[b.coefficient(idx0) for b in basis10], [b.coefficient(idx111) for b in basis10]],
        [0, 1],
    )
    x10 = _combine(basis10, sol, weight=10)

    basis12 = [e4 * e4 * e4, e6 * e6, family[12]]
    sol = _solve_linear(
        [
            [b.coefficient(idx0) for b in basis12],
            [b.coefficient(idx100) for b in basis12],
            [b.coefficient(idx111) for b in basis12],
        ],
        [0, 0, 1],
    )
    x12 = _combine(basis12, sol, weight=12)

    for name, form in (("X10", x10), ("X12", x12)):
        bad = _cusp_violation(form)
        if bad is not None:
            raise ConstructionError(f"{name} has a nonzero rank<=1 coefficient at {tuple(bad)}")
        if form.coefficient(idx111) != 1:
            raise ConstructionError(f"{name} normalization at (1,1,1) failed")
    return x10, x12


_DET4_TERMS = (
    # (top column pair, bottom column pair, sign): Laplace expansion of a
    # 4x4 determinant along its first two rows
    ((0, 1), (2, 3), 1),
    ((0, 2), (1, 3), -1),
    ((0, 3), (1, 2), 1),
    ((1, 2), (0, 3), 1),
    ((1, 3), (0, 2), -1),
    ((2, 3), (0, 1), 1),
)


def _det4(rows) -> Expansion:
    def minor(i, j, a, b):
        return rows[a][i] * rows[b][j] - rows[a][j] * rows[b][i]

    total = None
    for (i, j), (i2, j2), sign in _DET4_TERMS:
        term = minor(i, j, 0, 1) * minor(i2, j2, 2, 3)
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def build_x35(x4: Expansion, x6: Expansion, x10: Expansion, x12: Expansion) -> Expansion:
    """The odd generator: normalized determinant of the four even generators
    and their normalized partials (weight 35)."""
    forms = (x4, x6, x10, x12)
    bound = min(f.trace_bound for f in forms)
    if bound < 5:
        raise ConstructionError("normalization index (2,3,-1) has trace 5: need bound >= 5")
    rows = [[f.scale(f.weight) for f in forms]]
    for axis in ("11", "12", "22"):
        rows.append([f.derivative(axis) for f in forms])
    det = _det4(rows)
    pivot = det.coefficient(TIndex(2, 3, -1))
    if pivot == 0:
        raise ConstructionError("determinant vanishes at the normalization index (2,3,-1)")
    x35 = det.scale(Fraction(1) / pivot).with_weight(35)
    return x35


@dataclass(frozen=True)
class GeneratorSet:
    """The five ring generators plus the Eisenstein family they came from."""

    x4: Expansion
    x6: Expansion
    x10: Expansion
    x12: Expansion
    x35: Expansion
    eisenstein: dict[int, Expansion]
    trace_bound: int

    def generators(self) -> dict[str, Expansion]:
        return {"X4": self.x4, "X6": self.x6, "X10": self.x10, "X12": self.x12, "X35": self.x35}

    def atom(self, name: str) -> Expansion:
        """Expansion for an atom name (X4..X35 or E4..E12)."""
        gens = self.generators()
        if name in gens:
            return gens[name]
        if name.startswith("E") and name[1:].isdigit():
            k = int(name[1:])
            if k in self.eisenstein:
                return self.eisenstein[k]
        raise KeyError(name)


def integrality_check(gen) -> list[tuple[str, TIndex, object]]:
    """Report non-integer coefficients; empty means all generators integral.

    Accepts a GeneratorSet or any mapping name -> Expansion.
    """
    items = gen.generators().items() if hasattr(gen, "generators") else gen.items()
    out = []
    for name, form in items:
        for T in sorted(form.coeffs, key=order_key):
            c = form.coeffs[T]
            if c.denominator != 1:
                out.append((name, T, c))
    return out


def build_generator_set(trace_bound: int, validate: bool = True) -> GeneratorSet:
    """Build all five generators (and the Eisenstein family) at one bound."""
    if trace_bound < 5:
        raise ConstructionError(
            "generator builds need trace bound >= 5 "
            "(the X35 normalization index (2,3,-1) has trace 5)"
        )
    family = eisenstein_family(trace_bound, validate=validate)
    x4, x6 = build_x4_x6(trace_bound, family)
    x10, x12 = build_x10_x12(trace_bound, family)
    x35 = build_x35(x4, x6, x10, x12)
    gen = GeneratorSet(x4, x6, x10, x12, x35, family, trace_bound)
    if validate:
        bad = _cusp_violation(x35)
        if bad is not None:
            raise ConstructionError(f"X35 has a nonzero rank<=1 coefficient at {tuple(bad)}")
        for name, idx in (
            ("X4", (0, 0, 0)),
            ("X6", (0, 0, 0)),
            ("X10", (1, 1, 1)),
            ("X12", (1, 1, 1)),
            ("X35", (2, 3, -1)),
        ):
            if gen.atom(name).coefficient(idx) != 1:
                raise ConstructionError(f"{name} normalization at {idx} failed")
        violations = integrality_check(gen)
        if violations:
            name, T, c = violations[0]
            raise ConstructionError(f"non-integral coefficient {c} at {tuple(T)} in {name}")
    return gen


# ----- cache ------------------------------------------------------------


def cache_path(cache_dir, name: str, trace_bound: int) -> Path:
    return Path(cache_dir) / f"{name}_N{trace_bound}_{FORMULA_VERSION}.qexp"


def save_generator_set(gen: GeneratorSet, cache_dir) -> list[Path]:
    """Write the ten expansion files (five E's, five X's); returns the paths."""
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    forms = {f"E{k}": v for k, v in gen.eisenstein.items()} | gen.generators()
    for name in CACHE_NAMES:
        path = cache_path(cache_dir, name, gen.trace_bound)
        path.write_text(forms[name].to_text())
        paths.append(path)
    return paths


def load_generator_set(trace_bound: int, cache_dir) -> GeneratorSet | None:
    """Load a cached build; None when any file is missing.

    Parsing is structural only: cached data is *not* re-derived or
    revalidated here, so integrity questions about a cache are answered by
    the verification pipeline, not silently at load time.
    """
    paths = {name: cache_path(cache_dir, name, trace_bound) for name in CACHE_NAMES}
    if not all(p.is_file() for p in paths.values()):
        return None
    forms = {}
    for name, path in paths.items():
        exp = Expansion.from_text(path.read_text())
        if exp.trace_bound != trace_bound:
            raise ValueError(f"cache file {path} has inconsistent trace bound")
        forms[name] = exp
    family = {k: forms[f"E{k}"] for k in SUPPORTED_WEIGHTS}
    return GeneratorSet(
        forms["X4"], forms["X6"], forms["X10"], forms["X12"], forms["X35"],
        family, trace_bound,
    )


def ensure_generator_set(
    trace_bound: int, cache_dir=None, validate: bool = True
) -> tuple[GeneratorSet, bool]:
    """Load from cache when complete, else build (and cache when a dir is given).

    Returns (generator_set, came_from_cache).
    """
    if cache_dir is not None:
        cached = load_generator_set(trace_bound, cache_dir)
        if cached is not None:
            return cached, True
    gen = build_generator_set(trace_bound, validate=validate)
    if cache_dir is not None:
        save_generator_set(gen, cache_dir)
    return gen, False
