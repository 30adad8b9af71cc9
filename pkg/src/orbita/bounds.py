"""Outward-rounded log-space evaluation of explicit orbit-length bounds.

The bounds handled here are astronomically large (think e^(10^12)), so every
formula is evaluated in log-space with interval arithmetic and directed
rounding. Reported upper values are certified upper roundings: recomputing at
higher precision can only tighten them downward. Comparisons of concrete
lengths against bounds are sound in the "length <= bound" direction and a
reported violation is a certified strict inequality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from decimal import Context, Decimal

import mpmath
from mpmath import libmp, mp

__all__ = [
    "BoundFormula",
    "BoundValue",
    "evaluate_bound",
    "compare",
    "ln_interval",
    "decimal_str",
    "working_precision",
    "SATISFIED",
    "VIOLATED",
    "INCONCLUSIVE",
    "FORMULAS",
    "canci_c",
    "morton_silverman",
    "pezda_br",
    "narkiewicz_pezda_orbit",
    "beukers_schlickewei",
    "ess",
    "np_tail",
    "k_run",
    "two_ways_ideals",
    "pgl2_order",
    "PRECISION_ENV",
]

SATISFIED = "satisfied"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

PRECISION_ENV = "ORBITA_PRECISION"
DEFAULT_PRECISION = 60

_CONTEXTS: dict[int, mpmath.ctx_iv.MPIntervalContext] = {}


def _ctx(dps: int) -> mpmath.ctx_iv.MPIntervalContext:
    ctx = _CONTEXTS.get(dps)
    if ctx is None:
        ctx = mpmath.ctx_iv.MPIntervalContext()
        ctx.dps = dps
        _CONTEXTS[dps] = ctx
    return ctx


def working_precision() -> int:
    """Decimal digits for bound evaluation; ORBITA_PRECISION overrides the default."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if value < 10:
        raise ValueError(f"{PRECISION_ENV} must be at least 10")
    return value


def _endpoints(x) -> tuple[mpmath.mpf, mpmath.mpf]:
    lo, hi = x._mpi_
    return mp.make_mpf(lo), mp.make_mpf(hi)


def ln_interval(n: int, precision: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Directed-rounded [lower, upper] enclosure of ln(n) for a positive integer."""
    if n < 1:
        raise ValueError("ln_interval needs a positive integer")
    ctx = _ctx(precision)
    return _endpoints(ctx.log(ctx.mpf(n)))


def decimal_str(value: mpmath.mpf, digits: int, upward: bool) -> str:
    """Decimal rendering certified >= value (upward) or <= value (downward)."""
    s = libmp.to_str(value._mpf_, digits)
    prec = digits * 4 + 64
    for _ in range(4):
        # bracket the decimal string's exact value and compare against the target
        lo = mp.make_mpf(libmp.from_str(s, prec, "d"))
        hi = mp.make_mpf(libmp.from_str(s, prec, "u"))
        if upward and lo >= value:
            return s
        if not upward and hi <= value:
            return s
        d = Decimal(s)
        ulp = Decimal((0, (1,), d.as_tuple().exponent))
        # a wide-enough context, or the bump rounds the string to 28 digits
        dctx = Context(prec=len(d.as_tuple().digits) + 4)
        d = dctx.add(d, ulp) if upward else dctx.subtract(d, ulp)
        s = str(d).lower()
    raise AssertionError("directed decimal rendering failed to converge")


@dataclass(frozen=True)
class BoundFormula:
    """One of the named bound formulas with integer parameters."""

    name: str
    params: tuple[tuple[str, int], ...]

    def __post_init__(self):
        spec = FORMULAS.get(self.name)
        if spec is None:
            raise ValueError(f"unknown bound formula {self.name!r}")
        got = tuple(k for k, _ in self.params)
        if got != spec.param_names:
            raise ValueError(f"{self.name} expects parameters {spec.param_names}, got {got}")
        for k, v in self.params:
            if not isinstance(v, int):
                raise ValueError(f"parameter {k} must be an integer")
            floor = 0 if k in ("t", "r") else 1
            if v < floor:
                raise ValueError(f"parameter {k}={v} below minimum {floor}")

    def param(self, key: str) -> int:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class BoundValue:
    """Log-space value of a bound with certified directed roundings."""

    formula: BoundFormula
    ln_lower: mpmath.mpf
    ln_upper: mpmath.mpf
    exact: int | None
    exact_form: str
    precision_digits: int

    @property
    def ln_upper_str(self) -> str:
        return decimal_str(self.ln_upper, self.precision_digits, upward=True)

    @property
    def ln_lower_str(self) -> str:
        return decimal_str(self.ln_lower, self.precision_digits, upward=False)

    def magnitude_str(self) -> str:
        """Power-of-10 display of the bound's size, rounded outward."""
        if self.exact is not None and self.exact < 10**12:
            return str(self.exact)
        ctx = _ctx(self.precision_digits)
        log10 = ctx.mpf(self.ln_upper) / ctx.log(ctx.mpf(10))
        _, hi = _endpoints(log10)
        return "10^" + decimal_str(hi, 15, upward=True)


class _FormulaSpec:
    def __init__(self, param_names, ln, exact, display):
        self.param_names = param_names
        self.ln = ln
        self.exact = exact
        self.display = display


def _ln_canci_c(ctx, s):
    e12 = ctx.mpf(10) ** 12
    return s * (e12 + 8 * ctx.log(ctx.mpf(s + 1)) + 8 * ctx.log(ctx.log(ctx.mpf(5 * (s + 1)))))


def _ln_morton_silverman(ctx, t, D):
    return 4 * D * ctx.log(12 * (t + 2) * ctx.log(ctx.mpf(5 * (t + 2))))


def _ln_pezda_br(ctx, s, D):
    return (2 * D + 1) * ctx.log(12 * s * ctx.log(ctx.mpf(5 * s)))


def _ln_narkiewicz_pezda(ctx, s, D):
    pezda = (12 * s * ctx.log(ctx.mpf(5 * s))) ** (2 * D + 1)
    value = pezda * (31 + ctx.mpf(2) ** (1031 * s)) / 3 - 1
    return ctx.log(value)


def _ln_np_tail(ctx, s):
    return ctx.log(ctx.exp(ctx.mpf(10) ** 12 * s) - 2)


FORMULAS: dict[str, _FormulaSpec] = {
    "CanciC": _FormulaSpec(
        ("s",),
        lambda ctx, s: _ln_canci_c(ctx, s),
        lambda s: None,
        lambda s: f"[e^(10^12) (s+1)^8 ln(5(s+1))^8]^s with s={s}",
    ),
    "MortonSilverman": _FormulaSpec(
        ("t", "D"),
        lambda ctx, t, D: _ln_morton_silverman(ctx, t, D),
        lambda t, D: None,
        lambda t, D: f"[12(t+2) ln(5(t+2))]^(4D) with t={t}, D={D}",
    ),
    "PezdaBR": _FormulaSpec(
        ("s", "D"),
        lambda ctx, s, D: _ln_pezda_br(ctx, s, D),
        lambda s, D: None,
        lambda s, D: f"[12 s ln(5 s)]^(2D+1) with s={s}, D={D}",
    ),
    "NarkiewiczPezdaOrbit": _FormulaSpec(
        ("s", "D"),
        lambda ctx, s, D: _ln_narkiewicz_pezda(ctx, s, D),
        lambda s, D: None,
        lambda s, D: f"(1/3) [12 s ln(5 s)]^(2D+1) (31 + 2^(1031 s)) - 1 with s={s}, D={D}",
    ),
    "BeukersSchlickewei": _FormulaSpec(
        ("r",),
        lambda ctx, r: 8 * (r + 1) * ctx.log(ctx.mpf(2)),
        lambda r: 2 ** (8 * (r + 1)),
        lambda r: f"2^(8(r+1)) with r={r}",
    ),
    "ESS": _FormulaSpec(
        ("n", "r"),
        lambda ctx, n, r: ctx.mpf((6 * n) ** (3 * n) * (r + 1)),
        lambda n, r: None,
        lambda n, r: f"e^((6n)^(3n) (r+1)) with n={n}, r={r}",
    ),
    "NpTail": _FormulaSpec(
        ("s",),
        lambda ctx, s: _ln_np_tail(ctx, s),
        lambda s: None,
        lambda s: f"e^(10^12 s) - 2 with s={s}",
    ),
    "KRun": _FormulaSpec(
        ("s",),
        lambda ctx, s: 16 * s * ctx.log(ctx.mpf(2)),
        lambda s: 2 ** (16 * s) if 16 * s <= 65536 else None,
        lambda s: f"2^(16 s) per the proof (statement says 2^(16^s)) with s={s}",
    ),
    "TwoWaysIdeals": _FormulaSpec(
        ("s",),
        lambda ctx, s: ctx.mpf(18**9 * (3 * s - 2)),
        lambda s: None,
        lambda s: f"e^(18^9 (3s-2)) with s={s}",
    ),
    "Pgl2Order": _FormulaSpec(
        ("D",),
        lambda ctx, D: ctx.log(ctx.mpf(2 + 4 * D * D)),
        lambda D: 2 + 4 * D * D,
        lambda D: f"2 + 4 D^2 with D={D}",
    ),
}


def canci_c(s: int) -> BoundFormula:
    return BoundFormula("CanciC", (("s", s),))


def morton_silverman(t: int, D: int = 1) -> BoundFormula:
    return BoundFormula("MortonSilverman", (("t", t), ("D", D)))


def pezda_br(s: int, D: int = 1) -> BoundFormula:
    return BoundFormula("PezdaBR", (("s", s), ("D", D)))


def narkiewicz_pezda_orbit(s: int, D: int = 1) -> BoundFormula:
    return BoundFormula("NarkiewiczPezdaOrbit", (("s", s), ("D", D)))


def beukers_schlickewei(r: int) -> BoundFormula:
    return BoundFormula("BeukersSchlickewei", (("r", r),))


def ess(n: int, r: int) -> BoundFormula:
    return BoundFormula("ESS", (("n", n), ("r", r)))


def np_tail(s: int) -> BoundFormula:
    return BoundFormula("NpTail", (("s", s),))


def k_run(s: int) -> BoundFormula:
    return BoundFormula("KRun", (("s", s),))


def two_ways_ideals(s: int) -> BoundFormula:
    return BoundFormula("TwoWaysIdeals", (("s", s),))


def pgl2_order(D: int = 1) -> BoundFormula:
    return BoundFormula("Pgl2Order", (("D", D),))


def evaluate_bound(f: BoundFormula, precision: int | None = None) -> BoundValue:
    """ln of the bound as a certified [lower, upper] pair, plus exact value if small."""
    if precision is None:
        precision = working_precision()
    spec = FORMULAS[f.name]
    ctx = _ctx(precision)
    kwargs = dict(f.params)
    ln_iv = spec.ln(ctx, **kwargs)
    lo, hi = _endpoints(ln_iv)
    return BoundValue(
        formula=f,
        ln_lower=lo,
        ln_upper=hi,
        exact=spec.exact(**kwargs),
        exact_form=spec.display(**kwargs),
        precision_digits=precision,
    )


def compare(length: int, b: BoundValue) -> str:
    """Compare an orbit-scale integer against a bound, soundly.

    Exact bounds use integer comparison. Otherwise: satisfied when the upward
    rounding of ln(length) is at most ln_upper; violated when the downward
    rounding exceeds ln_upper (certified strict, since ln_upper is itself an
    upper rounding of the true bound); inconclusive in the remaining sliver,
    where the caller may raise precision.
    """
    if length < 1:
        raise ValueError("length must be a positive integer")
    if b.exact is not None:
        return SATISFIED if length <= b.exact else VIOLATED
    lo, hi = ln_interval(length, b.precision_digits)
    if hi <= b.ln_upper:
        return SATISFIED
    if lo > b.ln_upper:
        return VIOLATED
    return INCONCLUSIVE
