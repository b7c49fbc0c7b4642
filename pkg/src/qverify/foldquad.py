"""Period-fold integration engine.

A real-line integral of a rapidly decaying f becomes the integral over one
unit cell of the two-sided fold sum(n) f(x+n); the half-line analogue keeps
only n >= 0.  Jackson's discrete q-integral lives here too since it is the
same two-tail summation pattern over the q-lattice.

The quadrature layer is domain-agnostic: substitutions such as t = q^x are
the caller's business, and evaluator errors (poles, non-convergent products)
propagate with the offending shift index attached rather than being skipped.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergence, QVerifyError
from .qcore import CNum, TruncationReceipt, as_qbase

DECAY_CLASSES = ("super-exponential", "exponential", "rational")

_FOLD_CAP = 2 ** 10
_DEPTH_CAP = 12
# Roundoff floor for panel refinement: a panel estimate carries an
# absolute error of a few ulps times the L1 mass its evaluations were
# assembled from, so once the coarse/refined difference is below that
# level the panel is converged even if it looks large against the
# global scale.  Without this floor a fold with heavy term cancellation
# refines forever against its own evaluation noise.
_PANEL_NOISE = 5e-15

_gl_cache = {}


def _gl(n):
    if n not in _gl_cache:
        x, w = np.polynomial.legendre.leggauss(n)
        _gl_cache[n] = (tuple(float(v) for v in x), tuple(float(v) for v in w))
    return _gl_cache[n]


@dataclass(frozen=True)
class QuadratureConfig:
    panel_count: int = 8
    nodes_per_panel: int = 16
    refine_tol: float = 5e-12
    fold_window: int = 8
    fold_tail_eps: float = 1e-16

    def __post_init__(self):
        if self.panel_count < 1:
            raise ValueError("panel_count must be >= 1")
        if self.nodes_per_panel < 4:
            raise ValueError("nodes_per_panel must be >= 4")
        if self.refine_tol <= 0:
            raise ValueError("refine_tol must be positive")
        if self.fold_window < 1:
            raise ValueError("fold_window must be >= 1")
        if self.fold_tail_eps <= 0:
            raise ValueError("fold_tail_eps must be positive")


@dataclass(frozen=True)
class IntegrandHandle:
    """A real-line integrand plus its caller-declared decay class."""

    evaluator: Callable[[float], CNum]
    decay_class: str = "exponential"

    def __post_init__(self):
        if self.decay_class not in DECAY_CLASSES:
            raise ValueError(
                "decay_class must be one of %s" % (DECAY_CLASSES,)
            )


@dataclass(frozen=True)
class FoldDiagnostics:
    panels: int
    max_depth: int
    evals: int
    fold_terms_max: int
    fold_tail_max: float


def _wrap_eval(f, arg, shift):
    """Evaluate f(arg), tagging any failure with the offending shift index."""
    try:
        return complex(f(arg))
    except QVerifyError as exc:
        raise type(exc)("at shift %+d: %s" % (shift, exc)) from None
    except (ArithmeticError, ValueError) as exc:
        raise NonConvergence(
            "evaluator failed at shift %+d: %s" % (shift, exc)
        ) from exc


def fold_sum(f: IntegrandHandle, x: float, cfg: QuadratureConfig):
    """Two-sided fold sum(n in Z) f(x + n) at a point of the unit cell.

    The first fold_window shifts on each side are summed unconditionally;
    past them a tail is cut only after three consecutive terms fall below
    fold_tail_eps * max(1, |partial|).  Window indices are capped at 2^10.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("fold point %g outside the unit cell" % x)
    ev = f.evaluator
    total = _wrap_eval(ev, x, 0)
    terms = 1
    tail_max = 0.0
    l1 = abs(total)
    for step in (1, -1):
        consec = 0
        n = step
        last = 0.0
        while True:
            t = _wrap_eval(ev, x + n, n)
            if not (math.isfinite(t.real) and math.isfinite(t.imag)):
                raise NonConvergence("non-finite fold term at shift %d" % n)
            total += t
            terms += 1
            last = abs(t)
            l1 += last
            if abs(n) >= cfg.fold_window:
                if last <= cfg.fold_tail_eps * max(1.0, abs(total)):
                    consec += 1
                    if consec >= 3:
                        break
                else:
                    consec = 0
            if abs(n) >= _FOLD_CAP:
                raise NonConvergence(
                    "fold sum still above tolerance at shift %d" % n
                )
            n += step
        if last > tail_max:
            tail_max = last
    return total, TruncationReceipt(terms, tail_max, True, l1)


def _halfline_fold(f: IntegrandHandle, x: float, cfg: QuadratureConfig):
    ev = f.evaluator
    total = 0j
    consec = 0
    n = 0
    terms = 0
    last = 0.0
    l1 = 0.0
    while True:
        t = _wrap_eval(ev, x + n, n)
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise NonConvergence("non-finite fold term at shift %d" % n)
        total += t
        terms += 1
        last = abs(t)
        l1 += last
        if n >= cfg.fold_window:
            if last <= cfg.fold_tail_eps * max(1.0, abs(total)):
                consec += 1
                if consec >= 3:
                    break
            else:
                consec = 0
        if n >= _FOLD_CAP:
            raise NonConvergence("fold sum still above tolerance at shift %d" % n)
        n += 1
    return total, TruncationReceipt(terms, last, True, l1)


class _FoldStats:
    __slots__ = ("terms_max", "tail_max")

    def __init__(self):
        self.terms_max = 0
        self.tail_max = 0.0

    def feed(self, receipt):
        if receipt.terms_used > self.terms_max:
            self.terms_max = receipt.terms_used
        if receipt.tail_bound > self.tail_max:
            self.tail_max = receipt.tail_bound


def _adaptive_cell(fe, lo, hi, cfg, stats):
    """Adaptive composite Gauss-Legendre over [lo, hi].

    fe(x) returns (value, noise_l1): the second slot is the L1 mass the
    evaluation was assembled from, which bounds its absolute roundoff.
    Fold sums concentrate this; a folded value of 1e-4 built from terms
    of size 1e+5 is only good to about 1e-11 no matter how the panels
    are refined, and the acceptance test must respect that floor.
    """
    nodes, weights = _gl(cfg.nodes_per_panel)

    def one(a, b):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        s = 0j
        m = 0.0
        for xi, wi in zip(nodes, weights):
            v, noise = fe(mid + half * xi)
            s += wi * v
            m += wi * noise
        return half * s, half * m

    width = (hi - lo) / cfg.panel_count
    coarse = []
    for i in range(cfg.panel_count):
        a = lo + i * width
        v, _m = one(a, a + width)
        coarse.append((a, a + width, 0, v))
    scale = sum(abs(v) for _a, _b, _d, v in coarse)
    if scale == 0.0:
        scale = 1.0
    total = 0j
    evals = cfg.panel_count
    panels = 0
    max_depth = 0
    stack = coarse
    while stack:
        a, b, depth, i1 = stack.pop()
        m = 0.5 * (a + b)
        left, lmass = one(a, m)
        right, rmass = one(m, b)
        evals += 2
        i2 = left + right
        floor = max(cfg.refine_tol * scale, _PANEL_NOISE * (lmass + rmass))
        if abs(i2 - i1) <= floor:
            total += i2
            panels += 1
            continue
        if depth >= _DEPTH_CAP:
            raise NonConvergence(
                "panel budget exhausted on [%g, %g] at depth %d" % (a, b, depth)
            )
        if depth + 1 > max_depth:
            max_depth = depth + 1
        stack.append((a, m, depth + 1, left))
        stack.append((m, b, depth + 1, right))
    return total, FoldDiagnostics(panels, max_depth, evals,
                                  stats.terms_max, stats.tail_max)


def integrate_cell(f, cfg: QuadratureConfig = None):
    """Adaptive quadrature of a plain complex-valued f over the unit cell."""
    cfg = cfg or QuadratureConfig()
    stats = _FoldStats()

    def direct(x):
        v = complex(f(x))
        return v, abs(v)

    return _adaptive_cell(direct, 0.0, 1.0, cfg, stats)


def integrate_line(f: IntegrandHandle, cfg: QuadratureConfig = None):
    """Real-line integral of f as the unit-cell integral of its fold sum."""
    cfg = cfg or QuadratureConfig()
    if f.decay_class == "rational":
        raise ValueError(
            "rational decay is not summable by the period fold; "
            "declare super-exponential or exponential decay"
        )
    stats = _FoldStats()

    def folded(x):
        v, receipt = fold_sum(f, x, cfg)
        stats.feed(receipt)
        return v, receipt.l1_mass

    return _adaptive_cell(folded, 0.0, 1.0, cfg, stats)


def integrate_halfline(f: IntegrandHandle, a: float, cfg: QuadratureConfig = None):
    """Integral of f over [a, infinity) via the one-sided fold."""
    cfg = cfg or QuadratureConfig()
    if f.decay_class == "rational":
        raise ValueError(
            "rational decay is not summable by the period fold; "
            "declare super-exponential or exponential decay"
        )
    stats = _FoldStats()

    def folded(u):
        v, receipt = _halfline_fold(f, u, cfg)
        stats.feed(receipt)
        return v, receipt.l1_mass

    return _adaptive_cell(folded, a, a + 1.0, cfg, stats)


def jackson_qintegral(g, q, cfg: QuadratureConfig = None):
    """Jackson's discrete integral (1-q) sum(n in Z) g(q^n) q^n."""
    cfg = cfg or QuadratureConfig()
    qb = as_qbase(q)
    qq = qb.q
    total = 0j
    terms = 0
    tail_max = 0.0
    for step in (1, -1):
        consec = 0
        n = 0 if step > 0 else -1
        while True:
            t_point = qq ** n
            val = _wrap_eval(g, t_point, n) * t_point
            if not (math.isfinite(val.real) and math.isfinite(val.imag)):
                raise NonConvergence("non-finite q-lattice term at index %d" % n)
            total += val
            terms += 1
            last = abs(val)
            if abs(n) >= cfg.fold_window:
                if last <= cfg.fold_tail_eps * max(1.0, abs(total)):
                    consec += 1
                    if consec >= 3:
                        break
                else:
                    consec = 0
            if abs(n) >= _FOLD_CAP:
                raise NonConvergence(
                    "q-lattice sum still above tolerance at index %d" % n
                )
            n += step
        if last > tail_max:
            tail_max = last
    return (1.0 - qq) * total, TruncationReceipt(terms, tail_max, True)
