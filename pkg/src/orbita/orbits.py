"""Orbit detection, certification, and the fixed-point normalization pipeline.

detect_orbit iterates a map with exact arithmetic until the orbit closes or a
budget runs out. A closed orbit becomes an OrbitCertificate whose invariants
are re-verified at every construction (including deserialization). The
pipeline collapse_to_fixed_point -> normalize_orbit -> verify_np_conditions /
check_tail_divisibility reduces a certificate to a fixed-point orbit at [0:1]
and checks the structural conditions that make tail lengths bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import bounds as _bounds
from .forms import Form
from .maps import (
    DEFAULT_COEFF_BITS,
    MoebiusTransform,
    RationalMap,
    bad_primes,
    conjugate,
    evaluate,
    iterate_map,
    make_map,
    make_moebius,
)
from .numtheory import S_UNIT, PlaceSet, factor, s_membership, vp
from .projective import (
    INFINITE_DISTANCE,
    ProjectivePoint,
    cross_term,
    log_distance,
    relevant_primes,
)

__all__ = [
    "OrbitCertificate",
    "UndecidedOrbit",
    "STEPS_EXHAUSTED",
    "BITS_EXHAUSTED",
    "DEFAULT_MAX_STEPS",
    "DEFAULT_MAX_BITS",
    "NpConditionError",
    "TailDivisibilityError",
    "CertificateCheckError",
    "NpReport",
    "DivisibilityReport",
    "detect_orbit",
    "collapse_to_fixed_point",
    "normalize_orbit",
    "verify_np_conditions",
    "check_tail_divisibility",
    "synthesize_map",
    "run_certificate_checks",
    "certificate_to_json",
    "certificate_from_json",
]

STEPS_EXHAUSTED = "steps-exhausted"
BITS_EXHAUSTED = "bit-budget-exhausted"

DEFAULT_MAX_STEPS = 10000
DEFAULT_MAX_BITS = 4096

SCHEMA_TAG = "orbita/1"


@dataclass(frozen=True)
class UndecidedOrbit:
    """Budget exhaustion report; never a claim that the orbit is infinite."""

    reason: str
    last_point: ProjectivePoint
    steps: int

    def __post_init__(self):
        if self.reason not in (STEPS_EXHAUSTED, BITS_EXHAUSTED):
            raise ValueError(f"unknown reason {self.reason!r}")


@dataclass(frozen=True)
class OrbitCertificate:
    """A verified finite orbit: tail of length m entering a cycle of period n."""

    map: RationalMap
    start: ProjectivePoint
    tail_length: int
    period: int
    points: tuple[ProjectivePoint, ...]
    bad_primes: tuple[int, ...]
    s: int

    def __post_init__(self):
        m, n = self.tail_length, self.period
        if m < 0 or n < 1:
            raise ValueError("need tail_length >= 0 and period >= 1")
        if len(self.points) != m + n:
            raise ValueError("points list must have length tail_length + period")
        if self.points[0] != self.start:
            raise ValueError("points[0] must be the start point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("orbit points must be pairwise distinct")
        for i in range(m + n - 1):
            if evaluate(self.map, self.points[i]) != self.points[i + 1]:
                raise ValueError(f"orbit breaks at step {i}")
        if evaluate(self.map, self.points[-1]) != self.points[m]:
            raise ValueError("orbit does not close into the cycle")
        # distinctness already forces minimality; assert the divisor check anyway
        for q in range(1, n):
            if n % q == 0 and self.points[m] == self.points[m + q]:
                raise ValueError(f"period {n} is not minimal (divisor {q} closes)")
        if list(self.bad_primes) != sorted(set(self.bad_primes)):
            raise ValueError("bad primes must be sorted and duplicate-free")
        if set(self.bad_primes) != set(factor(self.map.res).primes):
            raise ValueError("bad primes do not match the model resultant")
        if self.s != 1 + len(self.bad_primes):
            raise ValueError("s must be 1 + |bad_primes|")

    @property
    def length(self) -> int:
        return self.tail_length + self.period

    @property
    def place_set(self) -> PlaceSet:
        return PlaceSet(self.bad_primes)

    def point_at(self, i: int) -> ProjectivePoint:
        """Orbit point Q_i for -m <= i <= n-1 (Q_0 is the first cycle point)."""
        if not -self.tail_length <= i < self.period:
            raise IndexError(f"orbit index {i} out of range")
        return self.points[self.tail_length + i]


def _coord_bits(P: ProjectivePoint) -> int:
    return max(abs(P.x).bit_length(), abs(P.y).bit_length())


def detect_orbit(
    m: RationalMap,
    start: ProjectivePoint,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> OrbitCertificate | UndecidedOrbit:
    """Iterate from start until the orbit closes or a budget is exhausted.

    Cycle detection keys on canonical coordinates, so the first repeat pins
    both the exact tail length and the minimal period.
    """
    if max_steps < 1 or max_bits < 1:
        raise ValueError("budgets must be positive")
    seen: dict[tuple[int, int], int] = {}
    pts: list[ProjectivePoint] = []
    P = start
    while True:
        key = (P.x, P.y)
        if key in seen:
            j = seen[key]
            tail, period = j, len(pts) - j
            bad = tuple(bad_primes(m))
            return OrbitCertificate(
                map=m,
                start=start,
                tail_length=tail,
                period=period,
                points=tuple(pts),
                bad_primes=bad,
                s=1 + len(bad),
            )
        if _coord_bits(P) > max_bits:
            return UndecidedOrbit(BITS_EXHAUSTED, P, len(pts))
        if len(pts) >= max_steps:
            return UndecidedOrbit(STEPS_EXHAUSTED, P, len(pts))
        seen[key] = len(pts)
        pts.append(P)
        P = evaluate(m, P)


def collapse_to_fixed_point(
    cert: OrbitCertificate, max_bits: int = DEFAULT_COEFF_BITS
) -> tuple[RationalMap, list[ProjectivePoint]]:
    """The period-fold composite and the tail points it walks into its fixed point.

    Returns (composite, [Q_(-kn), ..., Q_(-n), Q_0]) with k = floor(m/n); the
    composite fixes Q_0 because Q_0 is periodic of period n for the base map.
    """
    n = cert.period
    composite = iterate_map(cert.map, n, max_bits)
    k = cert.tail_length // n
    tail = [cert.points[cert.tail_length - i * n] for i in range(k, -1, -1)]
    q0 = tail[-1]
    assert evaluate(composite, q0) == q0, "composite must fix Q_0"
    for i in range(len(tail) - 1):
        assert evaluate(composite, tail[i]) == tail[i + 1]
    return composite, tail


def normalize_orbit(
    m: RationalMap, tail: list[ProjectivePoint]
) -> tuple[RationalMap, list[ProjectivePoint], MoebiusTransform]:
    """Conjugate so the terminal fixed point becomes [0:1].

    The matrix is built from an extended-gcd relation on the fixed point's
    coprime coordinates, has determinant 1, and therefore preserves the
    bad-prime set of the model.
    """
    if not tail:
        raise ValueError("tail must be nonempty")
    q0 = tail[-1]
    if evaluate(m, q0) != q0:
        raise ValueError("last tail point must be fixed by the map")
    x0, y0 = q0.x, q0.y
    if y0 == 0:
        r, s = 1, 0
    else:
        r = pow(x0, -1, y0)  # 0 <= r < y0, exists since gcd(x0, y0) = 1
        s = (1 - r * x0) // y0
    A = make_moebius(y0, -x0, r, s)
    assert A.det == 1
    map2 = conjugate(m, A)
    tail2 = [A.apply(P) for P in tail]
    assert tail2[-1] == ProjectivePoint(0, 1)
    assert evaluate(map2, tail2[-1]) == tail2[-1]
    assert abs(map2.res) == abs(m.res), "determinant-1 conjugation preserves bad primes"
    return map2, tail2, A


class NpConditionError(Exception):
    """A structural condition failed; names the condition and the witnesses."""

    def __init__(self, condition: int, indices: tuple[int, ...], detail: str):
        self.condition = condition
        self.indices = indices
        super().__init__(f"condition ({condition}) failed at {indices}: {detail}")


class TailDivisibilityError(Exception):
    """Monotone-valuation violation along a tail; would falsify non-expansion."""

    def __init__(self, index: int, prime: int, v_here: int, v_next) -> None:
        self.index = index
        self.prime = prime
        self.v_here = v_here
        self.v_next = v_next
        super().__init__(
            f"v_{prime}(x_{index}) = {v_here} > v_{prime}(x_{index + 1}) = {v_next}"
        )


@dataclass(frozen=True)
class NpReport:
    """Outcome of the three structural conditions plus the tail-length bound."""

    m: int
    s: int
    condition1: bool
    condition2: bool
    condition3: bool
    tail_bound_ok: bool
    tail_bound_display: str

    @property
    def all_ok(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3 and self.tail_bound_ok


def verify_np_conditions(
    map2: RationalMap, tail2: list[ProjectivePoint], S: PlaceSet
) -> NpReport:
    """Check the normalized-orbit conditions and the log-space tail bound.

    (1) the terminal point is [0:1]; (2) each point's coordinate gcd is an
    S-unit (automatic in coprime canonical coordinates, asserted literally);
    (3) all pairwise coordinate cross terms are nonzero. The tail bound is
    ln(m+2) < 10^12 * s, checked with an upward-rounded left side.
    """
    if not tail2:
        raise ValueError("tail must be nonempty")
    missing = [p for p in bad_primes(map2) if p not in S]
    if missing:
        raise ValueError(f"S must contain the bad primes, missing {missing}")
    if tail2[-1] != ProjectivePoint(0, 1):
        raise NpConditionError(1, (len(tail2) - 1,), "terminal point is not [0:1]")
    for i, P in enumerate(tail2):
        g = gcd(abs(P.x), abs(P.y))
        if s_membership(Fraction(g), S) != S_UNIT:
            raise NpConditionError(2, (i,), f"coordinate gcd {g} is not an S-unit")
    for i in range(len(tail2)):
        for j in range(i + 1, len(tail2)):
            if cross_term(tail2[i], tail2[j]) == 0:
                raise NpConditionError(3, (i, j), "zero cross term (equal points)")
    m = len(tail2) - 1
    precision = _bounds.working_precision()
    _, ln_up = _bounds.ln_interval(m + 2, precision)
    threshold = _bounds.mp.mpf(10) ** 12 * S.s
    ok = ln_up < threshold
    display = f"ln({m + 2}) <= {_bounds.decimal_str(ln_up, 8, upward=True)} < 10^12 * {S.s}"
    return NpReport(
        m=m,
        s=S.s,
        condition1=True,
        condition2=True,
        condition3=True,
        tail_bound_ok=bool(ok),
        tail_bound_display=display,
    )


@dataclass(frozen=True)
class DivisibilityReport:
    """Monotone tail-valuation check summary."""

    steps: int
    comparisons: int
    passed: bool


def check_tail_divisibility(
    map2: RationalMap, tail2: list[ProjectivePoint], S: PlaceSet
) -> DivisibilityReport:
    """Along a normalized tail, v_p(x_i) is nondecreasing for every p outside S.

    Equivalently the distance to the fixed point [0:1] never shrinks, which
    is exactly non-expansion at good-reduction primes. A violation carries an
    (index, prime) witness and aborts the caller's run.
    """
    if not tail2 or tail2[-1] != ProjectivePoint(0, 1):
        raise ValueError("tail must end at [0:1]")
    missing = [p for p in bad_primes(map2) if p not in S]
    if missing:
        raise ValueError(f"S must contain the bad primes, missing {missing}")
    comparisons = 0
    for i in range(len(tail2) - 1):
        x_here = tail2[i].x
        x_next = tail2[i + 1].x
        if x_here == 0:
            # [0:1] is the terminal fixed point; it cannot be left again
            if x_next != 0:
                raise ValueError(f"tail passes through [0:1] at step {i} and leaves it")
            continue
        if abs(x_here) == 1:
            continue
        for p, e in factor(x_here).factors:
            if p in S:
                continue
            v_next = INFINITE_DISTANCE if x_next == 0 else vp(x_next, p)
            comparisons += 1
            if e > v_next:
                raise TailDivisibilityError(i, p, e, v_next)
    return DivisibilityReport(steps=len(tail2) - 1, comparisons=comparisons, passed=True)


def _rref_nullspace(rows: list[list[Fraction]], width: int) -> list[list[Fraction]]:
    """Basis of the nullspace of the row system, by exact Gauss-Jordan."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * width
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -mat[row_idx][fc]
        basis.append(v)
    return basis


def synthesize_map(
    pairs: list[tuple[ProjectivePoint, ProjectivePoint]], d: int
) -> RationalMap | None:
    """A degree-d map realizing the prescribed point images, or None.

    Solves the homogeneous linear system on the 2d+2 coefficients, then
    searches nullspace lines (basis vectors first, then small combinations,
    in a fixed order) for one with nonzero resultant.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if len(pairs) > 2 * d + 1:
        raise ValueError("too many constraints for the coefficient space")
    width = 2 * d + 2
    rows = []
    for P, Q in pairs:
        monomials = [P.x ** (d - i) * P.y**i for i in range(d + 1)]
        row = [Fraction(mono * Q.y) for mono in monomials]
        row += [Fraction(-mono * Q.x) for mono in monomials]
        rows.append(row)
    basis = _rref_nullspace(rows, width)
    candidates: list[list[Fraction]] = []
    candidates.extend(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append([a + b for a, b in zip(basis[i], basis[j])])
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j:
                candidates.append([a - b for a, b in zip(basis[i], basis[j])])
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j:
                candidates.append([a + 2 * b for a, b in zip(basis[i], basis[j])])
    for vec in candidates:
        if all(v == 0 for v in vec):
            continue
        scale = 1
        for v in vec:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        ints = [int(v * scale) for v in vec]
        F: Form = tuple(ints[: d + 1])
        G: Form = tuple(ints[d + 1 :])
        try:
            candidate = make_map(F, G)
        except ValueError:
            continue
        if all(evaluate(candidate, P) == Q for P, Q in pairs):
            return candidate
    return None


class CertificateCheckError(Exception):
    """A certificate-level structural check failed; means an arithmetic bug."""


def _check_triangle(points: tuple[ProjectivePoint, ...]) -> int:
    pts = list(dict.fromkeys(points))
    comparisons = 0
    for i, P1 in enumerate(pts):
        for j, P2 in enumerate(pts):
            for k, P3 in enumerate(pts):
                if len({i, j, k}) != 3:
                    continue
                primes = set()
                for a, b in ((P1, P2), (P2, P3), (P1, P3)):
                    primes.update(p for p, _ in relevant_primes(a, b))
                for p in primes:
                    lhs = log_distance(P1, P3, p)
                    rhs = min(log_distance(P1, P2, p), log_distance(P2, P3, p))
                    comparisons += 1
                    if lhs < rhs:
                        raise CertificateCheckError(
                            f"triangle inequality fails at p={p} for {P1},{P2},{P3}"
                        )
    return comparisons


def _check_non_expansion(cert: OrbitCertificate) -> int:
    bad = set(cert.bad_primes)
    pts = cert.points
    comparisons = 0
    for i, P in enumerate(pts):
        for j, Q in enumerate(pts):
            if i >= j:
                continue
            FP, FQ = evaluate(cert.map, P), evaluate(cert.map, Q)
            primes = {p for p, _ in relevant_primes(P, Q)}
            if FP != FQ:
                primes.update(p for p, _ in relevant_primes(FP, FQ))
            for p in primes:
                if p in bad:
                    continue
                comparisons += 1
                if log_distance(FP, FQ, p) < log_distance(P, Q, p):
                    raise CertificateCheckError(
                        f"non-expansion fails at p={p} for points {i},{j}"
                    )
    return comparisons


def _check_remark(cert: OrbitCertificate) -> int:
    m, n = cert.tail_length, cert.period
    bad = set(cert.bad_primes)
    comparisons = 0
    for a in range(-m, n):
        for b in range(1, m + n):
            for k in range(2, m + n):
                if not -m <= a + k * b < n:
                    continue
                qa = cert.point_at(a)
                qab = cert.point_at(a + b)
                qakb = cert.point_at(a + k * b)
                primes = {p for p, _ in relevant_primes(qa, qab)}
                if qa != qakb:
                    primes.update(p for p, _ in relevant_primes(qa, qakb))
                for p in primes:
                    if p in bad:
                        continue
                    comparisons += 1
                    if log_distance(qa, qakb, p) < log_distance(qa, qab, p):
                        raise CertificateCheckError(
                            f"remark fails at p={p}, a={a}, b={b}, k={k}"
                        )
    return comparisons


def _check_divisibility(cert: OrbitCertificate) -> int:
    composite, tail = collapse_to_fixed_point(cert)
    map2, tail2, _ = normalize_orbit(composite, tail)
    S = PlaceSet(tuple(sorted(set(cert.bad_primes) | set(bad_primes(map2)))))
    return check_tail_divisibility(map2, tail2, S).comparisons


def run_certificate_checks(cert: OrbitCertificate) -> dict[str, bool]:
    """Re-verify the structural propositions on the certificate's own points.

    Raises CertificateCheckError on any violation; with exact arithmetic a
    violation can only mean an implementation bug, never new mathematics.
    """
    _check_triangle(cert.points)
    _check_non_expansion(cert)
    _check_remark(cert)
    _check_divisibility(cert)
    return {"prop51": True, "prop52": True, "remark": True, "divisibility": True}


def _bounds_block(cert: OrbitCertificate, precision: int | None = None) -> dict:
    c = _bounds.evaluate_bound(_bounds.canci_c(cert.s), precision)
    ms = _bounds.evaluate_bound(
        _bounds.morton_silverman(len(cert.bad_primes), 1), precision
    )
    ok_total = _bounds.compare(cert.length, c) == _bounds.SATISFIED
    ok_period = _bounds.compare(cert.period, ms) == _bounds.SATISFIED
    return {
        "ln_c_s": c.ln_upper_str,
        "ln_ms": ms.ln_upper_str,
        "satisfied": bool(ok_total and ok_period),
    }


def certificate_to_json(cert: OrbitCertificate, precision: int | None = None) -> dict:
    """Schema "orbita/1" document; every integer is a decimal string."""
    checks = run_certificate_checks(cert)
    return {
        "schema": SCHEMA_TAG,
        "map": {
            "F": [str(c) for c in cert.map.F],
            "G": [str(c) for c in cert.map.G],
        },
        "start": [str(cert.start.x), str(cert.start.y)],
        "tail_length": str(cert.tail_length),
        "period": str(cert.period),
        "points": [[str(P.x), str(P.y)] for P in cert.points],
        "bad_primes": [str(p) for p in cert.bad_primes],
        "s": str(cert.s),
        "checks": checks,
        "bounds": _bounds_block(cert, precision),
    }


def certificate_from_json(doc: dict) -> OrbitCertificate:
    """Rebuild and fully re-verify a certificate from its JSON document."""
    if doc.get("schema") != SCHEMA_TAG:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    m = RationalMap(
        tuple(int(c) for c in doc["map"]["F"]),
        tuple(int(c) for c in doc["map"]["G"]),
    )
    points = tuple(ProjectivePoint(int(x), int(y)) for x, y in doc["points"])
    start = ProjectivePoint(int(doc["start"][0]), int(doc["start"][1]))
    return OrbitCertificate(
        map=m,
        start=start,
        tail_length=int(doc["tail_length"]),
        period=int(doc["period"]),
        points=points,
        bad_primes=tuple(int(p) for p in doc["bad_primes"]),
        s=int(doc["s"]),
    )
