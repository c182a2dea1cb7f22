"""Mod-p calculus: p-minimum matrices, finite vanishing criteria, and the
end-to-end mod-23 verification for the odd generator, with plain-text
certificates.

The p-minimum matrix m_p(F) of an expansion reduced mod p is the least
index (in the (trace, m, r) order) carrying a nonzero residue, or infinity
when everything vanishes.  It is additive under multiplication, which the
`minmat_additivity_test` helper probes empirically within the truncation.

Vanishing criteria.  For p >= 5 and even weight k, a form vanishes mod p
as soon as its coefficients vanish on the finite box 0 <= m, n <= floor(k/10)
(equivalently, by inclusion, at every index preceding the bound matrix
(t, t, 2t) with t = floor(k/10)).  For odd weight k >= 35 the form is
divisible by the weight-35 generator and the criterion tightens to the
set of indices preceding (t+2, t+3, 2t-1) with t = floor((k-35)/10).
Both verifiers emit a `Certificate`; they never widen their hypotheses
silently: an expansion whose trace bound cannot host the required region
yields the verdict "Insufficient", and every unproved existence statement
consumed by a pipeline is spelled out in the certificate's assumption
list.

The mod-23 theorem: every Fourier coefficient of X35 sitting at an index
T with 4*det(T) not divisible by 23 vanishes mod 23.  `verify_x35_mod23`
certifies it in two independent ways: (a) the theta image of X35 mod 23
is checked to vanish for trace <= 9 and then certified identically zero
mod 23 through the odd-weight criterion at weight 59 = 35 + 23 + 1
(assuming the theta image lands on a cusp form of that weight mod 23);
(b) a direct scan of the built coefficients up to the working bound.
The converse of the theorem is refuted by the witness a((1,6,1)) = 0
whose index has 4*det = 23.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .qexp import Expansion, TIndex, iter_l2_indices, order_cmp, order_key

__all__ = [
    "CERTIFIED",
    "REFUTED",
    "INSUFFICIENT",
    "MinMatrixResult",
    "min_matrix",
    "SturmBound",
    "sturm_bound_even",
    "sturm_bound_odd",
    "CheckRecord",
    "Certificate",
    "sturm_even",
    "sturm_odd",
    "inclusion_check",
    "theta_landing_assumption",
    "verify_x35_mod23",
    "verify_theta_mod5",
    "minmat_additivity_test",
]

CERTIFIED = "Certified"
REFUTED = "Refuted"
INSUFFICIENT = "Insufficient"


def _modulus_of(F: Expansion) -> int:
    if F.modulus is None:
        raise ValueError("expansion must be reduced mod p first")
    return F.modulus


@dataclass(frozen=True)
class MinMatrixResult:
    """m_p of one expansion; value None encodes infinity (zero mod p)."""

    value: TIndex | None
    prime: int
    weight: int | None
    trace_bound_examined: int

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return f"infinity (no nonzero residue up to trace {self.trace_bound_examined})"
        return f"({self.value.m}, {self.value.n}, {self.value.r})"


def min_matrix(F: Expansion) -> MinMatrixResult:
    """Least index (in the (trace, m, r) order) with a nonzero residue."""
    p = _modulus_of(F)
    support = [T for T, c in F.coeffs.items() if c % p]
    value = min(support, key=order_key) if support else None
    return MinMatrixResult(value, p, F.weight, F.trace_bound)


@dataclass(frozen=True)
class SturmBound:
    """Hypothesis region data for one vanishing criterion."""

    kind: str  # "even" or "odd"
    weight: int
    prime: int
    bound: TIndex  # verdict follows once all T preceding/equal vanish
    r0: int


def _require_prime_ge5(p: int) -> None:
    if p < 5:
        raise ValueError(f"the vanishing criteria need p >= 5; got {p}")


def sturm_bound_even(k: int, p: int) -> SturmBound:
    if k <= 0 or k % 2:
        raise ValueError("even positive weight required")
    _require_prime_ge5(p)
    t = k // 10
    return SturmBound("even", k, p, TIndex(t, t, 2 * t), 2 * t)


def sturm_bound_odd(k: int, p: int) -> SturmBound:
    if k < 35 or k % 2 == 0:
        raise ValueError("odd weight >= 35 required")
    _require_prime_ge5(p)
    t = (k - 35) // 10
    return SturmBound("odd", k, p, TIndex(t + 2, t + 3, 2 * t - 1), 2 * t)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Certificate:
    """Deterministic, machine-parseable record of one verification run.

    No timestamps, no environment data: the same inputs always produce
    byte-identical text.
    """

    claim: str
    prime: int
    weight: int | None
    bound_matrix: TIndex | None
    trace_checked: int | None
    checks: list[CheckRecord] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    verdict: str = INSUFFICIENT
    witness: TIndex | None = None

    def to_text(self) -> str:
        lines = [
            f"certificate: {self.claim}",
            f"prime: {self.prime}",
            f"weight: {'-' if self.weight is None else self.weight}",
        ]
        if self.bound_matrix is not None:
            b = self.bound_matrix
            lines.append(f"bound-matrix: ({b.m}, {b.n}, {b.r})")
        if self.trace_checked is not None:
            lines.append(f"trace-checked: {self.trace_checked}")
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            suffix = f" [{c.detail}]" if c.detail else ""
            lines.append(f"check: {c.name}: {status}{suffix}")
        for a in self.assumptions:
            lines.append(f"assumption: {a}")
        if self.witness is not None:
            w = self.witness
            lines.append(f"witness: ({w.m}, {w.n}, {w.r})")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def _scan_region(F: Expansion, region: list[TIndex]):
    """First violation (in the index order) of 'residue == 0' on the region."""
    for T in region:
        if F.coefficient(T):
            return T
    return None


def sturm_even(
    F: Expansion,
    k: int,
    method: str = "region",
    name: str = "F",
    assumptions=(),
) -> Certificate:
    """Certify F == 0 mod p from finitely many vanishing coefficients (even k).

    method "region": the box 0 <= m, n <= floor(k/10).
    method "order":  all T preceding or equal to the bound matrix (t, t, 2t).
    The two hypothesis sets imply each other (the order set contains the
    box), so the verdicts agree; both are exposed for cross-checking.
    """
    p = _modulus_of(F)
    sb = sturm_bound_even(k, p)
    t = k // 10
    claim = f"{name} vanishes identically mod {p}"
    if F.trace_bound < 2 * t:
        return Certificate(
            claim, p, k, sb.bound, None,
            [CheckRecord(
                "hypothesis region inside the trace bound", False,
                f"need trace {2 * t}, have {F.trace_bound}",
            )],
            list(assumptions), INSUFFICIENT,
        )
    if method == "region":
        region = [
            TIndex(m, n, r)
            for m in range(t + 1)
            for n in range(t + 1)
            for r in range(-isqrt(4 * m * n), isqrt(4 * m * n) + 1)
        ]
        region.sort(key=order_key)
        desc = f"a(m,n,r) = 0 mod {p} on the box 0 <= m,n <= {t}"
    elif method == "order":
        bk = order_key(sb.bound)
        region = [T for T in iter_l2_indices(2 * t) if order_key(T) <= bk]
        desc = f"a(T) = 0 mod {p} for every T up to the bound matrix"
    else:
        raise ValueError(f"unknown method {method!r}")
    witness = _scan_region(F, region)
    passed = witness is None
    detail = f"indices={len(region)}" if passed else f"nonzero residue at {tuple(witness)}"
    return Certificate(
        claim, p, k, sb.bound, 2 * t,
        [CheckRecord(desc, passed, detail)],
        list(assumptions),
        CERTIFIED if passed else REFUTED,
        witness,
    )


def sturm_odd(F: Expansion, k: int, name: str = "F", assumptions=()) -> Certificate:
    """Certify F == 0 mod p for odd weight k >= 35 (F divisible by X35)."""
    p = _modulus_of(F)
    sb = sturm_bound_odd(k, p)
    claim = f"{name} vanishes identically mod {p}"
    needed = sb.bound.trace
    if F.trace_bound < needed:
        return Certificate(
            claim, p, k, sb.bound, None,
            [CheckRecord(
                "hypothesis region inside the trace bound", False,
                f"need trace {needed}, have {F.trace_bound}",
            )],
            list(assumptions), INSUFFICIENT,
        )
    bk = order_key(sb.bound)
    region = [T for T in iter_l2_indices(needed) if order_key(T) <= bk]
    witness = _scan_region(F, region)
    passed = witness is None
    detail = f"indices={len(region)}" if passed else f"nonzero residue at {tuple(witness)}"
    return Certificate(
        claim, p, k, sb.bound, needed,
        [CheckRecord(f"a(T) = 0 mod {p} for every T up to the bound matrix", passed, detail)],
        list(assumptions),
        CERTIFIED if passed else REFUTED,
        witness,
    )


def inclusion_check(k: int) -> bool:
    """Exhaustively confirm the even-criterion box sits inside the order set.

    For k >= 20 additionally confirm the containment is proper via the
    witness (t+1, 0, 0), which precedes the bound matrix but lies outside
    the box.
    """
    if k < 10:
        raise ValueError("k >= 10 required")
    t = k // 10
    bound = TIndex(t, t, 2 * t)
    bk = order_key(bound)
    box = {
        TIndex(m, n, r)
        for m in range(t + 1)
        for n in range(t + 1)
        for r in range(-isqrt(4 * m * n), isqrt(4 * m * n) + 1)
    }
    order_set = {T for T in iter_l2_indices(2 * t) if order_key(T) <= bk}
    if not box <= order_set:
        return False
    if k >= 20:
        w = TIndex(t + 1, 0, 0)
        if not (order_cmp(w, bound) < 0 and w not in box):
            return False
    return True


def theta_landing_assumption(k: int, p: int) -> str:
    return (
        f"existence: the theta image of a weight-{k} form with {p}-integral "
        f"coefficients is congruent mod {p} to some cusp form of weight {k + p + 1} "
        f"(used, not constructed)"
    )


def verify_x35_mod23(gen, scan_bound: int | None = None) -> Certificate:
    """Certify: a(T; X35) = 0 mod 23 whenever 23 does not divide 4*det(T).

    gen: a GeneratorSet with trace_bound >= max(9, scan_bound).
    Runs the theta-image pipeline (trace <= 9 vanishing + odd-weight
    criterion at weight 59) and an independent direct scan to scan_bound.
    """
    p = 23
    n = gen.trace_bound if scan_bound is None else scan_bound
    claim = "a(T; X35) = 0 mod 23 at every index with 4*det(T) not divisible by 23"
    if gen.trace_bound < 9 or n < 9 or n > gen.trace_bound:
        return Certificate(
            claim, p, 35, None, n,
            [CheckRecord(
                "trace bounds cover the proof region", False,
                f"need 9 <= scan bound <= built bound {gen.trace_bound}, got {n}",
            )],
            [], INSUFFICIENT,
        )

    checks: list[CheckRecord] = []
    witness: TIndex | None = None
    assumptions = [theta_landing_assumption(35, p)]

    # (a) theta pipeline: the theta image must vanish mod 23 up to trace 9 ...
    theta_image = gen.x35.reduce_mod(p).theta()
    region9 = list(iter_l2_indices(9))
    viol = _scan_region(theta_image, region9)
    checks.append(
        CheckRecord(
            "theta image of X35 vanishes mod 23 at every index of trace <= 9",
            viol is None,
            f"indices={len(region9)}" if viol is None else f"nonzero at {tuple(viol)}",
        )
    )
    if viol is not None:
        witness = viol
    # ... and that finite region certifies it is identically zero at weight 59
    sub = sturm_odd(
        theta_image, 59, name="theta(X35) mod 23", assumptions=assumptions
    )
    checks.append(
        CheckRecord(
            f"odd-weight criterion at weight 59 with bound matrix {tuple(sub.bound_matrix)}",
            sub.verdict == CERTIFIED,
            f"verdict={sub.verdict}",
        )
    )

    # (b) direct scan of the exact coefficients up to the working bound
    exempt = checked = 0
    scan_witness = None
    for T in iter_l2_indices(n):
        if T.fourdet % p == 0:
            exempt += 1
            continue
        checked += 1
        if gen.x35.coefficient(T) % p:
            if scan_witness is None:
                scan_witness = T
    checks.append(
        CheckRecord(
            f"direct scan to trace {n}: coefficients vanish mod 23 off the divisibility locus",
            scan_witness is None,
            f"checked={checked}, exempt={exempt}"
            + ("" if scan_witness is None else f", nonzero at {tuple(scan_witness)}"),
        )
    )
    if scan_witness is not None and witness is None:
        witness = scan_witness

    # the converse direction fails: a zero coefficient on the divisibility locus
    cw = TIndex(1, 6, 1)
    converse_ok = gen.x35.coefficient(cw) == 0 and cw.fourdet % p == 0
    checks.append(
        CheckRecord(
            "converse refuted: a((1,6,1)) = 0 although 4*det((1,6,1)) = 23",
            converse_ok,
            f"coefficient={gen.x35.coefficient(cw)}, fourdet={cw.fourdet}",
        )
    )

    verdict = CERTIFIED if all(c.passed for c in checks) else REFUTED
    return Certificate(
        claim, p, 35, sub.bound_matrix, n, checks, assumptions, verdict, witness
    )


def verify_theta_mod5(gen) -> Certificate:
    """Certify the congruence theta(X6) = 4 * X12 mod 5.

    Coefficient-wise comparison to trace 10, then the even-weight
    criterion at weight 12 certifies the difference is identically zero.
    """
    p = 5
    claim = "theta(X6) = 4*X12 mod 5"
    if gen.trace_bound < 10:
        return Certificate(
            claim, p, 12, None, None,
            [CheckRecord(
                "comparison region inside the trace bound", False,
                f"need trace 10, have {gen.trace_bound}",
            )],
            [], INSUFFICIENT,
        )
    assumptions = [theta_landing_assumption(6, p)]
    theta_image = gen.x6.reduce_mod(p).theta()
    target = gen.x12.reduce_mod(p).scale(4)
    witness = None
    count = 0
    for T in iter_l2_indices(10):
        count += 1
        if theta_image.coefficient(T) != target.coefficient(T):
            witness = T
            break
    checks = [
        CheckRecord(
            "theta(X6) and 4*X12 agree mod 5 at every index of trace <= 10",
            witness is None,
            f"indices={count}" if witness is None else f"disagree at {tuple(witness)}",
        )
    ]
    sub = sturm_even(
        theta_image - target, 12, method="region",
        name="theta(X6) - 4*X12 mod 5", assumptions=assumptions,
    )
    checks.append(
        CheckRecord(
            f"even-weight criterion at weight 12 with bound matrix {tuple(sub.bound_matrix)}",
            sub.verdict == CERTIFIED,
            f"verdict={sub.verdict}",
        )
    )
    verdict = CERTIFIED if all(c.passed for c in checks) else REFUTED
    return Certificate(
        claim, p, 12, sub.bound_matrix, 10, checks, assumptions, verdict, witness
    )


def minmat_additivity_test(F: Expansion, G: Expansion) -> bool:
    """Empirically confirm m_p(F*G) = m_p(F) + m_p(G) inside the truncation."""
    a, b = min_matrix(F), min_matrix(G)
    if a.value is None or b.value is None:
        raise ValueError("both factors must be nonzero mod p")
    total = a.value + b.value
    bound = min(F.trace_bound, G.trace_bound)
    if total.trace > bound:
        raise ValueError(
            f"insufficient trace bound: the sum index has trace {total.trace}, bound is {bound}"
        )
    return min_matrix(F * G).value == total
