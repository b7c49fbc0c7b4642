"""Verification framework: parameter points, identity records, reports.

A record bundles two independent evaluators for the same quantity with the
domain constraints under which both converge.  The engine here stays fully
generic; the concrete catalogue lives in registry.py.
"""

import cmath
import dataclasses
import hashlib
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

from .errors import QVerifyError, SamplerStarved
from .qcore import CNum, QBase, as_qbase

WEIGHT_KINDS = ("unit-periodic", "anti-periodic")
REPORT_STATUSES = ("pass", "fail", "rejected", "error")

# Fields a verification point may carry besides the base q.  Greek-letter
# slots keep ASCII names; lam_p/mu_p are order parameters of weighted
# Bessel-type integrands.
POINT_FIELDS = (
    "a", "b", "c", "d", "e", "f", "g",
    "alpha", "z", "beta", "gamma", "delta", "lam_p", "mu_p",
)

_TINY = 1e-300


@dataclass(frozen=True)
class ParameterPoint:
    q: QBase
    a: Optional[CNum] = None
    b: Optional[CNum] = None
    c: Optional[CNum] = None
    d: Optional[CNum] = None
    e: Optional[CNum] = None
    f: Optional[CNum] = None
    g: Optional[CNum] = None
    alpha: Optional[CNum] = None
    z: Optional[CNum] = None
    beta: Optional[CNum] = None
    gamma: Optional[CNum] = None
    delta: Optional[CNum] = None
    lam_p: Optional[CNum] = None
    mu_p: Optional[CNum] = None

    def __post_init__(self):
        object.__setattr__(self, "q", as_qbase(self.q))
        for name in POINT_FIELDS:
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, complex(v))

    def has(self, *names) -> bool:
        return all(getattr(self, n) is not None for n in names)

    def as_dict(self):
        """Set fields only, complex values split into re/im pairs."""
        out = {"q": self.q.q}
        for name in POINT_FIELDS:
            v = getattr(self, name)
            if v is not None:
                out[name] = {"re": v.real, "im": v.imag}
        return out


@dataclass(frozen=True)
class PeriodicWeight:
    """A free weight function with declared periodicity type."""

    name: str
    kind: str
    fn: Callable[[float], CNum]

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError("weight kind must be one of %s" % (WEIGHT_KINDS,))

    def check(self, tol: float = 1e-13):
        """Verify the declared periodicity on a few interior points."""
        sign = 1.0 if self.kind == "unit-periodic" else -1.0
        for x in (0.137, 0.382, 0.609, 0.844):
            base = complex(self.fn(x))
            shifted = complex(self.fn(x + 1.0))
            if abs(shifted - sign * base) > tol * max(1.0, abs(base)):
                raise ValueError(
                    "weight %r violates %s periodicity at x=%.3f"
                    % (self.name, self.kind, x)
                )

    def __call__(self, x):
        return self.fn(x)


WEIGHT_ONE = PeriodicWeight("one", "unit-periodic", lambda x: 1.0 + 0.0j)
WEIGHT_COS = PeriodicWeight(
    "one-plus-half-cos", "unit-periodic",
    lambda x: 1.0 + 0.5 * math.cos(2.0 * math.pi * x) + 0.0j,
)
WEIGHT_SIN = PeriodicWeight(
    "sin-pi", "anti-periodic", lambda x: math.sin(math.pi * x) + 0.0j,
)
# second anti-periodic weight, used by weight-independence property tests
WEIGHT_SIN_COS = PeriodicWeight(
    "sin-pi-times-cos", "anti-periodic",
    lambda x: math.sin(math.pi * x) * (1.0 + 0.5 * math.cos(2.0 * math.pi * x)),
)

for _w in (WEIGHT_ONE, WEIGHT_COS, WEIGHT_SIN, WEIGHT_SIN_COS):
    _w.check()


@dataclass(frozen=True)
class IdentityRecord:
    """One verifiable identity: two evaluators plus admissibility data.

    lhs/rhs take (point, weight) and return (value, receipt_dict).  The
    sampler draws a candidate point given an rng and the q window; the
    engine applies the constraints afterwards, so samplers only need to
    be right most of the time.
    """

    id: str
    reference: str
    constraints: Tuple[Tuple[str, Callable], ...]
    lhs: Callable
    rhs: Callable
    sampler: Callable
    tolerance: float
    weight_slot: Optional[str] = None
    limit_eval: Optional[Callable] = None
    limit_target: Optional[Callable] = None
    notes: str = ""

    def __post_init__(self):
        if self.weight_slot is not None and self.weight_slot not in WEIGHT_KINDS:
            raise ValueError("bad weight_slot %r" % (self.weight_slot,))
        if not self.constraints:
            raise ValueError("record %s declares no constraints" % self.id)

    def default_weight(self) -> Optional[PeriodicWeight]:
        if self.weight_slot is None:
            return None
        return WEIGHT_SIN if self.weight_slot == "anti-periodic" else WEIGHT_ONE


@dataclass
class VerificationReport:
    identity: str
    anchor: str
    point: dict
    lhs: Optional[CNum]
    rhs: Optional[CNum]
    abs_err: Optional[float]
    rel_err: Optional[float]
    tol: float
    status: str
    receipts: dict = field(default_factory=dict)
    message: str = ""

    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class LimitReport:
    identity: str
    anchor: str
    point: dict
    q_sequence: Tuple[float, ...]
    values: Tuple[CNum, ...]
    target: CNum
    errors: Tuple[float, ...]
    monotone_decreasing: Optional[bool]


def violations(rec: IdentityRecord, point: ParameterPoint):
    """Names of violated constraints; predicates that raise count as violated."""
    bad = []
    for name, pred in rec.constraints:
        try:
            ok = bool(pred(point))
        except Exception:
            ok = False
        if not ok:
            bad.append(name)
    return bad


def verify(rec: IdentityRecord, point: ParameterPoint,
           weight: Optional[PeriodicWeight] = None,
           tol: Optional[float] = None) -> VerificationReport:
    """Evaluate both sides at a point.  Never raises.

    pass/fail compares the relative error against the tolerance; points a
    constraint rejects come back as "rejected" and evaluator failures as
    "error" with the exception text in message.
    """
    use_tol = rec.tolerance if tol is None else float(tol)
    pdict = point.as_dict()

    def _report(status, lhs=None, rhs=None, abs_e=None, rel_e=None,
                receipts=None, message=""):
        return VerificationReport(
            identity=rec.id, anchor=rec.reference, point=pdict,
            lhs=lhs, rhs=rhs, abs_err=abs_e, rel_err=rel_e,
            tol=use_tol, status=status, receipts=receipts or {},
            message=message)

    try:
        if rec.weight_slot is not None:
            if weight is None:
                weight = rec.default_weight()
            if weight.kind != rec.weight_slot:
                return _report("error", message="weight kind %r does not fit slot %r"
                               % (weight.kind, rec.weight_slot))
            weight.check()
        elif weight is not None:
            return _report("error", message="record takes no weight")

        bad = violations(rec, point)
        if bad:
            return _report("rejected", message="constraints violated: %s"
                           % ", ".join(bad))

        lv, lrec = rec.lhs(point, weight)
        rv, rrec = rec.rhs(point, weight)
        lv = complex(lv)
        rv = complex(rv)
        abs_e = abs(lv - rv)
        scale = max(abs(lv), abs(rv))
        rel_e = abs_e / scale if scale > _TINY else abs_e
        receipts = {"lhs": lrec, "rhs": rrec}
        if weight is not None:
            receipts["weight"] = weight.name
        status = "pass" if rel_e < use_tol else "fail"
        return _report(status, lv, rv, abs_e, rel_e, receipts)
    except QVerifyError as exc:
        return _report("error", message="%s: %s" % (type(exc).__name__, exc))
    except Exception as exc:  # evaluator bugs must not kill a sweep
        return _report("error", message="%s: %s" % (type(exc).__name__, exc))


def _record_rng(rec_id: str, seed: int) -> random.Random:
    # hash-based so worker processes and reruns agree regardless of
    # PYTHONHASHSEED
    digest = hashlib.sha256(("%d:%s" % (seed, rec_id)).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_domain(rec: IdentityRecord, seed: int, count: int,
                  q_lo: float = 0.1, q_hi: float = 0.9):
    """Deterministic rejection sampler over the record's admissible set."""
    if count < 1:
        raise ValueError("count must be positive")
    if not 0.0 < q_lo <= q_hi < 1.0:
        raise ValueError("q window must satisfy 0 < lo <= hi < 1")
    rng = _record_rng(rec.id, seed)
    points = []
    attempts = 0
    budget = 200 * count + 1000
    while len(points) < count:
        if attempts >= budget:
            raise SamplerStarved(
                "sampler for %s produced %d/%d admissible points in %d draws"
                % (rec.id, len(points), count, attempts))
        attempts += 1
        try:
            cand = rec.sampler(rng, q_lo, q_hi)
        except QVerifyError:
            continue
        if not violations(rec, cand):
            points.append(cand)
    return points


def limit_check(rec: IdentityRecord, point: ParameterPoint,
                q_sequence) -> LimitReport:
    """Track a q-side quantity toward its classical target along q -> 1.

    The sequence must be strictly increasing inside (0,1).  With two or
    more entries the report records whether the error decreased at every
    step; a single entry is a degenerate probe with no trend to assert.
    """
    if rec.limit_eval is None or rec.limit_target is None:
        raise ValueError("record %s has no limit route" % rec.id)
    qs = tuple(float(q) for q in q_sequence)
    if not qs:
        raise ValueError("empty q sequence")
    for q in qs:
        if not 0.0 < q < 1.0:
            raise ValueError("limit q values must lie in (0, 1)")
    if any(q2 <= q1 for q1, q2 in zip(qs, qs[1:])):
        raise ValueError("q sequence must be strictly increasing")

    target = complex(rec.limit_target(point))
    values = tuple(complex(rec.limit_eval(point, q)) for q in qs)
    denom = max(abs(target), _TINY)
    errors = tuple(abs(v - target) / denom for v in values)
    monotone = None
    if len(qs) > 1:
        monotone = all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
    return LimitReport(
        identity=rec.id, anchor=rec.reference, point=point.as_dict(),
        q_sequence=qs, values=values, target=target, errors=errors,
        monotone_decreasing=monotone)


def receipt_dict(obj):
    """Flatten receipt dataclasses (and tuples of them) into plain dicts."""
    if obj is None:
        return None
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: receipt_dict(v)
                for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {k: receipt_dict(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [receipt_dict(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def report_json_dict(rep: VerificationReport) -> dict:
    """Schema used by the CLI JSON report."""

    def cplx(v):
        if v is None:
            return None
        return {"re": v.real, "im": v.imag}

    return {
        "identity": rep.identity,
        "anchor": rep.anchor,
        "point": rep.point,
        "lhs": cplx(rep.lhs),
        "rhs": cplx(rep.rhs),
        "abs_err": rep.abs_err,
        "rel_err": rep.rel_err,
        "tol": rep.tol,
        "status": rep.status,
        "receipts": receipt_dict(rep.receipts),
        "message": rep.message,
    }
