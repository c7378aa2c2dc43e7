"""Scalar connection functions on (0, inf) with classification metadata.

A connection function generates a bivariate tensor mean through the spectral
calculus (see :mod:`tmlab.means`).  Instances carry class tags from
``{"TMI", "TMD", "TC"}`` (monotone increasing / decreasing / convex, each
positive), a normalized-at-1 flag, and analytic values where known.  Tags are
caller-asserted but validated against scalar probes on a logarithmic grid;
scalar probes cannot certify the tensor (operator) versions of these
properties, they only reject gross misuse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "ConnectionFunction",
    "PmiCertificate",
    "identity",
    "square",
    "geometric",
    "power",
    "harmonic_like",
    "psi",
    "from_id",
    "power_lift",
    "transpose_fn",
    "invert_fn",
    "ando_hiai_g",
    "derivative_at_one",
    "check_pmi",
    "check_pmd",
    "DEFAULT_Q_GRID",
    "DEFAULT_X_GRID",
]

# 64-point logarithmic probe grid spanning twelve decades.
PROBE_GRID = np.logspace(-6.0, 6.0, 64)
PROBE_TOL = 1e-9

DEFAULT_X_GRID = tuple(np.logspace(-3.0, 3.0, 41))
DEFAULT_Q_GRID = (1.0, 1.25, 1.5, 2.0, 3.0, 4.0)

VALID_TAGS = frozenset({"TMI", "TMD", "TC"})


@dataclass(frozen=True)
class ConnectionFunction:
    """Positive scalar function on (0, inf) generating a tensor mean.

    Parameters
    ----------
    fn : callable
        Scalar evaluation; must be reentrant.
    label : str
        Display / config id.
    tags : frozenset of {"TMI", "TMD", "TC"}
        Asserted function classes, validated by scalar probes.
    normalized : bool
        Whether ``fn(1) == 1`` (within 1e-12).
    positive : bool
        Whether positivity on (0, inf) is required and probed.  The
        convexity building block ``psi(s)`` changes sign near 1 and opts
        out; sign-changing functions cannot carry class tags.
    derivative_at_1, value_at_0plus : float, optional
        Analytic values when known.  ``value_at_0plus`` is otherwise probed
        at ``x = 1e-12`` and recorded as ``inf`` above 1e10.
    """

    fn: Callable[[float], float]
    label: str
    tags: frozenset = frozenset()
    normalized: bool = False
    positive: bool = True
    derivative_at_1: float | None = None
    value_at_0plus: float | None = field(default=None)

    def __post_init__(self):
        tags = frozenset(self.tags)
        if not tags <= VALID_TAGS:
            raise ValueError(f"unknown tags {tags - VALID_TAGS}")
        object.__setattr__(self, "tags", tags)
        if tags and not self.positive:
            raise ValueError("class tags require a positive function")
        self._run_probes()
        if self.value_at_0plus is None:
            probe = self.fn(1e-12)
            limit = math.inf if probe > 1e10 else float(probe)
            object.__setattr__(self, "value_at_0plus", limit)

    def _run_probes(self) -> None:
        values = np.array([self.fn(float(x)) for x in PROBE_GRID], dtype=float)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"{self.label}: non-finite values on probe grid")
        if self.positive and np.any(values <= 0.0):
            raise ValueError(f"{self.label}: not positive on probe grid")
        if self.normalized and abs(self.fn(1.0) - 1.0) > 1e-12:
            raise ValueError(f"{self.label}: normalized flag set but fn(1) = {self.fn(1.0)!r}")
        scale = max(1.0, float(np.max(np.abs(values))))
        diffs = np.diff(values)
        if "TMI" in self.tags and np.any(diffs < -PROBE_TOL * scale):
            raise ValueError(f"{self.label}: TMI tag fails monotonicity probe")
        if "TMD" in self.tags and np.any(diffs > PROBE_TOL * scale):
            raise ValueError(f"{self.label}: TMD tag fails monotonicity probe")
        if "TC" in self.tags and not _midpoint_convex(self.fn, values, scale):
            raise ValueError(f"{self.label}: TC tag fails midpoint convexity probe")

    def __call__(self, x: float) -> float:
        return float(self.fn(float(x)))

    @property
    def value_at_1(self) -> float:
        return float(self.fn(1.0))

    def eval_extended(self, x: float) -> float:
        """Evaluation extended to the boundary: ``x <= 0`` maps to the 0+ limit."""
        if x <= 0.0:
            return float(self.value_at_0plus)
        return float(self.fn(float(x)))

    def __repr__(self) -> str:
        return f"ConnectionFunction({self.label!r})"


def _midpoint_convex(fn, grid_values, scale) -> bool:
    for stride in (1, 4):
        for i in range(len(PROBE_GRID) - stride):
            a, b = float(PROBE_GRID[i]), float(PROBE_GRID[i + stride])
            mid = fn((a + b) / 2.0)
            chord = (grid_values[i] + grid_values[i + stride]) / 2.0
            if mid > chord + PROBE_TOL * max(scale, abs(chord)):
                return False
    return True


def _probe_tags(fn, candidates) -> frozenset:
    """Subset of candidate tags that survive the scalar probes."""
    kept = set()
    values = np.array([fn(float(x)) for x in PROBE_GRID], dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        return frozenset()
    scale = max(1.0, float(np.max(np.abs(values))))
    diffs = np.diff(values)
    if "TMI" in candidates and np.all(diffs >= -PROBE_TOL * scale):
        kept.add("TMI")
    if "TMD" in candidates and np.all(diffs <= PROBE_TOL * scale):
        kept.add("TMD")
    if "TC" in candidates and _midpoint_convex(fn, values, scale):
        kept.add("TC")
    return frozenset(kept)


# ---------------------------------------------------------------------------
# builtins
# ---------------------------------------------------------------------------


def power(alpha: float) -> ConnectionFunction:
    """``x**alpha``;  alpha in [0, 1] is the operator monotone range."""
    a = float(alpha)
    tags = set()
    if 0.0 <= a <= 1.0:
        tags.add("TMI")
    if -1.0 <= a <= 0.0:
        tags.add("TMD")
    if 1.0 <= a <= 2.0 or -1.0 <= a <= 0.0:
        tags.add("TC")
    return ConnectionFunction(
        fn=lambda x, a=a: x**a,
        label=f"power:{a:g}",
        tags=frozenset(tags),
        normalized=True,
        derivative_at_1=a,
        value_at_0plus=(1.0 if a == 0.0 else (0.0 if a > 0.0 else math.inf)),
    )


def identity() -> ConnectionFunction:
    return power(1.0)


def square() -> ConnectionFunction:
    cf = power(2.0)
    return ConnectionFunction(
        fn=cf.fn,
        label="square",
        tags=cf.tags,
        normalized=True,
        derivative_at_1=2.0,
        value_at_0plus=0.0,
    )


def geometric() -> ConnectionFunction:
    cf = power(0.5)
    return ConnectionFunction(
        fn=cf.fn,
        label="geometric",
        tags=cf.tags,
        normalized=True,
        derivative_at_1=0.5,
        value_at_0plus=0.0,
    )


def harmonic_like() -> ConnectionFunction:
    """``2x / (1 + x)``, the harmonic-mean generator."""
    return ConnectionFunction(
        fn=lambda x: 2.0 * x / (1.0 + x),
        label="harmonic_like",
        tags=frozenset({"TMI"}),
        normalized=True,
        derivative_at_1=0.5,
        value_at_0plus=0.0,
    )


def psi(s: float) -> ConnectionFunction:
    """``x/(1+s) - x/(x+s)``, the integral building block of convex functions.

    Sign-changing (negative on (0, 1), zero at 1), hence untagged.
    """
    s = float(s)
    if s <= 0.0:
        raise ValueError("psi needs s > 0")
    return ConnectionFunction(
        fn=lambda x, s=s: x / (1.0 + s) - x / (x + s),
        label=f"psi:{s:g}",
        tags=frozenset(),
        normalized=False,
        positive=False,
        derivative_at_1=1.0 / (1.0 + s) - s / (1.0 + s) ** 2,
        value_at_0plus=0.0,
    )


# ---------------------------------------------------------------------------
# lifts and transforms
# ---------------------------------------------------------------------------


def power_lift(f: ConnectionFunction, n: int) -> ConnectionFunction:
    """Lifted generator ``x**n * f(x)``; ``n = 0`` returns ``f`` itself."""
    n = int(n)
    if n < 0:
        raise ValueError("lift exponent must be >= 0")
    if n == 0:
        return f
    deriv = None
    if f.derivative_at_1 is not None:
        deriv = n * f.value_at_1 + f.derivative_at_1
    zero_limit = None
    if f.value_at_0plus is not None and math.isfinite(f.value_at_0plus):
        zero_limit = 0.0
    return ConnectionFunction(
        fn=lambda x, n=n, f=f.fn: x**n * f(x),
        label=f"liftn:{n}:{f.label}",
        tags=frozenset(),
        normalized=f.normalized,
        positive=f.positive,
        derivative_at_1=deriv,
        value_at_0plus=zero_limit,
    )


def transpose_fn(g: ConnectionFunction) -> ConnectionFunction:
    """Transpose ``x * g(1/x)``; an involution, swaps the two mean slots.

    Operator theory carries TMI to TMI and TC to TC (and TMD into TC); the
    carried tags are additionally re-probed and dropped if the scalar shadow
    fails, never raising.
    """
    candidates = set()
    if "TMI" in g.tags:
        candidates.add("TMI")
    if "TC" in g.tags or "TMD" in g.tags:
        candidates.add("TC")

    def h(x: float, g=g.fn) -> float:
        return x * g(1.0 / x)

    deriv = None
    if g.derivative_at_1 is not None:
        deriv = g.value_at_1 - g.derivative_at_1
    return ConnectionFunction(
        fn=h,
        label=f"transpose:{g.label}",
        tags=_probe_tags(h, candidates) if g.positive else frozenset(),
        normalized=g.normalized,
        positive=g.positive,
        derivative_at_1=deriv,
    )


def invert_fn(g: ConnectionFunction, y: float, max_exp: int = 64) -> float:
    """Solve ``g(x) = y`` for strictly monotone ``g`` on (0, inf).

    Exponential bracket expansion over ``2**(-max_exp) .. 2**max_exp``
    followed by bisection; ties resolve toward the lower root.  Raises
    ``ValueError`` when ``y`` cannot be bracketed.
    """
    y = float(y)
    if not math.isfinite(y):
        raise ValueError("target must be finite")
    increasing = g(2.0) > g(0.5)
    sign = 1.0 if increasing else -1.0

    def resid(x: float) -> float:
        return sign * (g(x) - y)

    lo, hi = 1.0, 1.0
    r_lo, r_hi = resid(lo), resid(hi)
    k = 0
    while r_lo > 0.0 and k < max_exp:
        k += 1
        lo = 2.0**-k
        r_lo = resid(lo)
    k = 0
    while r_hi < 0.0 and k < max_exp:
        k += 1
        hi = 2.0**k
        r_hi = resid(hi)
    if r_lo > 0.0 or r_hi < 0.0:
        raise ValueError(f"cannot bracket {y!r} within 2**(+-{max_exp}) for {g.label}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if resid(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return lo if resid(lo) == 0.0 else 0.5 * (lo + hi)


def ando_hiai_g(f: ConnectionFunction, m: int) -> ConnectionFunction:
    """Auxiliary increasing function ``x -> 1 / F_inv(1/x)`` with ``F = x**(m-1) f``.

    For ``f = power(alpha)`` this is ``x**(1 / (m - 1 + alpha))`` in closed
    form; generic ``f`` goes through numeric inversion of ``F``.
    """
    m = int(m)
    if m < 2:
        raise ValueError("need m >= 2")
    if not f.positive:
        raise ValueError("needs a positive generator")
    big_f = power_lift(f, m - 1)

    def g(x: float) -> float:
        return 1.0 / invert_fn(big_f, 1.0 / x)

    deriv = None
    if f.derivative_at_1 is not None and f.normalized:
        # F(1) = 1, F'(1) = m - 1 + f'(1); inverse-function calculus at 1.
        deriv = 1.0 / (m - 1 + f.derivative_at_1)
    return ConnectionFunction(
        fn=g,
        label=f"andohiai:{m}:{f.label}",
        tags=frozenset({"TMI"}) if "TMI" in f.tags else frozenset(),
        normalized=f.normalized,
        derivative_at_1=deriv,
    )


def derivative_at_one(g: ConnectionFunction) -> float:
    """``g'(1)``: analytic when registered, else Richardson-extrapolated
    5-point central differences at ``h = 1e-5`` (absolute error target 1e-8).
    """
    if g.derivative_at_1 is not None:
        return float(g.derivative_at_1)

    def central(h: float) -> float:
        pts = (g(1.0 - 2 * h), g(1.0 - h), g(1.0 + h), g(1.0 + 2 * h))
        if not all(math.isfinite(p) for p in pts):
            raise ValueError(f"{g.label}: non-finite probes near 1")
        return (pts[0] - 8.0 * pts[1] + 8.0 * pts[2] - pts[3]) / (12.0 * h)

    h = 1e-5
    d1, d2 = central(h), central(h / 2.0)
    return (16.0 * d2 - d1) / 15.0


# ---------------------------------------------------------------------------
# power-scaling certificates (pmi / pmd)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PmiCertificate:
    """Grid evidence for the power-scaling conditions.

    ``m1_estimate`` is the least grid constant M with
    ``f(x**q) <= M * f(x)**q`` (direction "pmi") or
    ``f(x)**q <= M * f(x**q)`` (direction "pmd"); always >= 1.
    """

    holds: bool
    m1_estimate: float
    direction: str
    probe_grid: str


def _power_ratio_extreme(f, q_grid, x_grid, direction: str) -> tuple[bool, float]:
    worst = 1.0
    holds = True
    for q in q_grid:
        for x in x_grid:
            num = f(float(x) ** float(q))
            den = f(float(x)) ** float(q)
            ratio = num / den if direction == "pmi" else den / num
            if not math.isfinite(ratio):
                holds = False
                continue
            worst = max(worst, ratio)
    return holds, worst


def check_pmi(
    f: ConnectionFunction,
    q_grid=DEFAULT_Q_GRID,
    x_grid=DEFAULT_X_GRID,
) -> PmiCertificate:
    """Least grid constant for ``f(x**q) <= M * f(x)**q`` (working definition)."""
    if not q_grid or not len(x_grid):
        raise ValueError("grids must be nonempty")
    holds, worst = _power_ratio_extreme(f, q_grid, x_grid, "pmi")
    desc = f"q in {tuple(float(q) for q in q_grid)}, x grid of {len(x_grid)} points"
    return PmiCertificate(holds, worst, "pmi", desc)


def check_pmd(
    f: ConnectionFunction,
    q_grid=DEFAULT_Q_GRID,
    x_grid=DEFAULT_X_GRID,
) -> PmiCertificate:
    """Dual certificate: least grid constant for ``f(x)**q <= M * f(x**q)``."""
    if not q_grid or not len(x_grid):
        raise ValueError("grids must be nonempty")
    holds, worst = _power_ratio_extreme(f, q_grid, x_grid, "pmd")
    desc = f"q in {tuple(float(q) for q in q_grid)}, x grid of {len(x_grid)} points"
    return PmiCertificate(holds, worst, "pmd", desc)


# ---------------------------------------------------------------------------
# string ids ("power:0.5", "liftn:2:power:0.5", ...)
# ---------------------------------------------------------------------------

_SIMPLE_BUILTINS = {
    "identity": identity,
    "square": square,
    "geometric": geometric,
    "harmonic_like": harmonic_like,
}


def from_id(fid: str) -> ConnectionFunction:
    """Build a connection function from a colon-separated constructor chain."""
    parts = fid.strip().split(":")
    return _from_parts(parts, fid)


def _from_parts(parts, full: str) -> ConnectionFunction:
    if not parts or not parts[0]:
        raise ValueError(f"malformed function id {full!r}")
    head = parts[0]
    if head in _SIMPLE_BUILTINS:
        if len(parts) != 1:
            raise ValueError(f"{head} takes no arguments in {full!r}")
        return _SIMPLE_BUILTINS[head]()
    if head == "power":
        if len(parts) != 2:
            raise ValueError(f"power needs one exponent in {full!r}")
        return power(float(parts[1]))
    if head == "psi":
        if len(parts) != 2:
            raise ValueError(f"psi needs one parameter in {full!r}")
        return psi(float(parts[1]))
    if head == "liftn":
        if len(parts) < 3:
            raise ValueError(f"liftn needs an exponent and an inner chain in {full!r}")
        return power_lift(_from_parts(parts[2:], full), int(parts[1]))
    if head == "transpose":
        if len(parts) < 2:
            raise ValueError(f"transpose needs an inner chain in {full!r}")
        return transpose_fn(_from_parts(parts[1:], full))
    raise ValueError(f"unknown function id {full!r}")
