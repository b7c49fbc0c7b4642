"""Command-line front end.

Three subcommands:

``qverify list``
    Print the catalogue: every identity id, its anchor text, and the
    names of the admissibility constraints it enforces.

``qverify run``
    Sample admissible points for the selected identities, evaluate both
    sides at each point, and write a JSON report plus a flat CSV summary.
    Exit 0 when every non-rejected point passes, 1 when any point fails
    or errors, 2 on a configuration problem.

``qverify limits``
    Drive the q -> 1 limit routes against their classical targets over an
    increasing q sequence and report whether the error shrinks.

All sampling is seeded; a fixed (config, seed) pair reproduces every
point and every numeric column byte for byte under the same precision
profile.
"""

import argparse
import concurrent.futures
import dataclasses
import json
import math
import sys
from typing import Dict, Optional, Tuple

from . import kernels, precision
from .errors import QVerifyError, SamplerStarved
from .identities import (WEIGHT_COS, WEIGHT_ONE, WEIGHT_SIN, ParameterPoint,
                         limit_check, report_json_dict, sample_domain, verify)
from .qcore import QBase, qgamma
from .registry import registry


class ConfigError(Exception):
    """Invalid RunConfig contents; maps to exit code 2."""


@dataclasses.dataclass
class RunConfig:
    identities: Tuple[str, ...]
    seed: int = 7
    samples: int = 20
    tol_overrides: Dict[str, float] = dataclasses.field(default_factory=dict)
    q_lo: float = 0.1
    q_hi: float = 0.9
    precision: Optional[str] = None
    report_path: Optional[str] = None
    csv_path: Optional[str] = None
    workers: int = 1

    def validate(self, known_ids):
        if not self.identities:
            raise ConfigError("no identities selected")
        for rid in self.identities:
            if rid not in known_ids:
                raise ConfigError("unknown identity id %r" % rid)
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if not (0.05 <= self.q_lo < self.q_hi <= 0.95):
            raise ConfigError(
                "q range must satisfy 0.05 <= lo < hi <= 0.95, got [%g, %g]"
                % (self.q_lo, self.q_hi))
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        for rid, tol in self.tol_overrides.items():
            if rid not in known_ids:
                raise ConfigError("tolerance override for unknown id %r" % rid)
            if not (0.0 < tol < 1.0):
                raise ConfigError("tolerance override for %s must lie in "
                                  "(0, 1), got %g" % (rid, tol))


def _select_weight(weight_slot, index):
    """Deterministic weight choice for a sample index.

    Unit-periodic slots alternate between the constant weight and the
    cosine bump so every run exercises a non-trivial periodic function;
    anti-periodic slots always get sin(pi x).
    """
    if weight_slot is None:
        return None
    if weight_slot == "anti-periodic":
        return WEIGHT_SIN
    return WEIGHT_ONE if index % 2 == 0 else WEIGHT_COS


def _run_record(rec_id, seed, samples, q_lo, q_hi, tol, profile):
    """Verify one identity over freshly sampled points.

    Takes and returns only picklable values so it can run in a worker
    process; the registry is rebuilt (and cached) per process.
    """
    precision.set_profile(profile)
    rec = registry()[rec_id]
    block = {
        "identity": rec_id,
        "anchor": rec.reference,
        "tolerance": tol if tol is not None else rec.tolerance,
        "requested": samples,
        "counts": {"pass": 0, "fail": 0, "rejected": 0, "error": 0},
        "points": [],
        "message": "",
    }
    try:
        points = sample_domain(rec, seed, samples, q_lo=q_lo, q_hi=q_hi)
    except SamplerStarved as exc:
        block["counts"]["error"] += 1
        block["message"] = str(exc)
        return block
    for idx, pt in enumerate(points):
        rep = verify(rec, pt, weight=_select_weight(rec.weight_slot, idx),
                     tol=tol)
        block["counts"][rep.status] += 1
        block["points"].append(report_json_dict(rep))
    return block


def _block_ok(block):
    c = block["counts"]
    return c["fail"] == 0 and c["error"] == 0


def _worst_rel_err(block):
    worst = 0.0
    for p in block["points"]:
        if p["rel_err"] is not None and p["rel_err"] > worst:
            worst = p["rel_err"]
    return worst


_CSV_FIELDS = ("identity", "index", "status", "q", "lhs_re", "lhs_im",
               "rhs_re", "rhs_im", "abs_err", "rel_err", "tol")


def _fmt(x):
    if x is None:
        return ""
    return "%.17g" % x


def _csv_rows(blocks):
    yield ",".join(_CSV_FIELDS)
    for block in blocks:
        for idx, p in enumerate(block["points"]):
            q = p["point"].get("q")
            lhs, rhs = p["lhs"], p["rhs"]
            row = (
                block["identity"],
                str(idx),
                p["status"],
                _fmt(q),
                _fmt(lhs["re"] if lhs else None),
                _fmt(lhs["im"] if lhs else None),
                _fmt(rhs["re"] if rhs else None),
                _fmt(rhs["im"] if rhs else None),
                _fmt(p["abs_err"]),
                _fmt(p["rel_err"]),
                _fmt(p["tol"]),
            )
            yield ",".join(row)


def cmd_run(cfg: RunConfig) -> int:
    reg = registry()
    cfg.validate(set(reg))
    profile = precision.resolve_profile(cfg.precision)
    precision.set_profile(profile)

    ids = sorted(cfg.identities)
    jobs = [(rid, cfg.seed, cfg.samples, cfg.q_lo, cfg.q_hi,
             cfg.tol_overrides.get(rid), profile) for rid in ids]

    if cfg.workers > 1:
        with concurrent.futures.ProcessPoolExecutor(
                max_workers=cfg.workers) as pool:
            blocks = list(pool.map(_run_record_star, jobs))
    else:
        blocks = []
        for job in jobs:
            block = _run_record(*job)
            _print_block_line(block)
            blocks.append(block)
    if cfg.workers > 1:
        for block in blocks:
            _print_block_line(block)

    totals = {"pass": 0, "fail": 0, "rejected": 0, "error": 0}
    for block in blocks:
        for key in totals:
            totals[key] += block["counts"][key]
    ok = all(_block_ok(b) for b in blocks)
    exit_code = 0 if ok else 1

    report = {
        "schema": "qverify-run-v1",
        "backend": kernels.backend_name(),
        "precision": profile,
        "config": {
            "identities": list(ids),
            "seed": cfg.seed,
            "samples": cfg.samples,
            "q_lo": cfg.q_lo,
            "q_hi": cfg.q_hi,
            "tol_overrides": dict(sorted(cfg.tol_overrides.items())),
            "workers": cfg.workers,
        },
        "identities": blocks,
        "totals": totals,
        "exit": exit_code,
    }
    if cfg.report_path:
        with open(cfg.report_path, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            for line in _csv_rows(blocks):
                fh.write(line + "\n")

    print("total: %d pass, %d fail, %d rejected, %d error -> exit %d"
          % (totals["pass"], totals["fail"], totals["rejected"],
             totals["error"], exit_code))
    return exit_code


def _run_record_star(job):
    return _run_record(*job)


def _print_block_line(block):
    c = block["counts"]
    if block["message"]:
        line = "%-26s ERROR %s" % (block["identity"], block["message"])
    else:
        line = ("%-26s pass %d/%d  worst rel err %.3e"
                % (block["identity"], c["pass"], len(block["points"]),
                   _worst_rel_err(block)))
        if c["fail"] or c["error"]:
            line += "  [%d fail, %d error]" % (c["fail"], c["error"])
    print(line, flush=True)


def cmd_list() -> int:
    reg = registry()
    for rid in sorted(reg):
        rec = reg[rid]
        names = ", ".join(name for name, _ in rec.constraints)
        print("%-26s %s | constraints: %s" % (rid, rec.reference, names))
    return 0


# fixed probe points for the limit routes; chosen well inside each
# record's admissible region so the trend is clean
def _limit_items():
    reg = registry()
    items = []
    items.append((reg["euler-beta-limit"],
                  ParameterPoint(q=QBase(0.5), a=0.7 + 0j, b=1.4 + 0j)))
    items.append((reg["ramanujan-pair-2.13"],
                  ParameterPoint(q=QBase(0.5), alpha=1.0 + 0j,
                                 beta=1.0 + 0j)))
    items.append((reg["antiperiodic-qgamma-4.5"],
                  ParameterPoint(q=QBase(0.5), alpha=1.1 + 0j, beta=0.9 + 0j,
                                 gamma=1.4 + 0j, delta=1.2 + 0j)))
    return items


def cmd_limits(q_seq, report_path=None) -> int:
    qs = tuple(q_seq)
    if not qs:
        raise ConfigError("empty q sequence")
    for q in qs:
        if not 0.0 < q < 1.0:
            raise ConfigError("limit q values must lie in (0, 1)")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise ConfigError("q sequence must be strictly increasing")

    rows = []
    ok = True
    for rec, pt in _limit_items():
        rep = limit_check(rec, pt, qs)
        rows.append({
            "identity": rep.identity,
            "anchor": rep.anchor,
            "point": rep.point,
            "target": {"re": rep.target.real, "im": rep.target.imag},
            "values": [{"re": v.real, "im": v.imag} for v in rep.values],
            "errors": list(rep.errors),
            "monotone_decreasing": rep.monotone_decreasing,
        })
        if rep.monotone_decreasing is False:
            ok = False

    # direct probe: the q-gamma of one half should approach sqrt(pi)
    target = math.sqrt(math.pi)
    vals = [qgamma(0.5, QBase(q))[0] for q in qs]
    errs = [abs(v - target) / target for v in vals]
    mono = all(e2 < e1 for e1, e2 in zip(errs, errs[1:])) if len(qs) > 1 \
        else None
    rows.append({
        "identity": "qgamma-half",
        "anchor": "q-gamma at one half against the square root of pi",
        "point": {"x": 0.5},
        "target": {"re": target, "im": 0.0},
        "values": [{"re": v.real, "im": v.imag} for v in vals],
        "errors": errs,
        "monotone_decreasing": mono,
    })
    if mono is False:
        ok = False

    for row in rows:
        trend = {True: "decreasing", False: "NOT DECREASING",
                 None: "single point"}[row["monotone_decreasing"]]
        errtxt = ", ".join("%.3e" % e for e in row["errors"])
        print("%-26s errors [%s]  %s" % (row["identity"], errtxt, trend))

    if report_path:
        doc = {"schema": "qverify-limits-v1",
               "q_sequence": list(qs), "items": rows,
               "exit": 0 if ok else 1}
        with open(report_path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0 if ok else 1


def _parse_tol_overrides(pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise ConfigError("tolerance override must be id=value, got %r"
                              % item)
        rid, _, raw = item.partition("=")
        try:
            out[rid.strip()] = float(raw)
        except ValueError:
            raise ConfigError("bad tolerance value %r for %s" % (raw, rid))
    return out


def _load_config_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise ConfigError("config file is not valid JSON: %s" % exc)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {"identities", "seed", "samples", "tol_overrides", "q_lo",
             "q_hi", "precision", "report", "csv", "workers"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError("unknown config keys: %s"
                          % ", ".join(sorted(unknown)))
    return data


def _build_run_config(args) -> RunConfig:
    filed = _load_config_file(args.config) if args.config else {}

    def pick(flag, key, default):
        if flag is not None:
            return flag
        if key in filed:
            return filed[key]
        return default

    identities = args.identity if args.identity else filed.get("identities")
    if identities is None:
        identities = ["all"]
    if isinstance(identities, str):
        identities = [identities]
    if "all" in identities:
        identities = sorted(registry())

    overrides = dict(filed.get("tol_overrides") or {})
    overrides.update(_parse_tol_overrides(args.tol_override))
    try:
        overrides = {rid: float(tol) for rid, tol in overrides.items()}
    except (TypeError, ValueError):
        raise ConfigError("tolerance overrides must map ids to numbers")

    return RunConfig(
        identities=tuple(identities),
        seed=int(pick(args.seed, "seed", 7)),
        samples=int(pick(args.samples, "samples", 20)),
        tol_overrides=overrides,
        q_lo=float(pick(args.q_lo, "q_lo", 0.1)),
        q_hi=float(pick(args.q_hi, "q_hi", 0.9)),
        precision=pick(args.precision, "precision", None),
        report_path=pick(args.report, "report", None),
        csv_path=pick(args.csv, "csv", None),
        workers=int(pick(args.workers, "workers", 1)),
    )


def _parser():
    par = argparse.ArgumentParser(
        prog="qverify",
        description="numerically verify q-series identities")
    sub = par.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the identity catalogue")

    run = sub.add_parser("run", help="verify identities at sampled points")
    run.add_argument("--identity", action="append",
                     help="identity id, or 'all' (repeatable)")
    run.add_argument("--samples", type=int, default=None,
                     help="points per identity (default 20)")
    run.add_argument("--seed", type=int, default=None,
                     help="sampling seed (default 7)")
    run.add_argument("--q-lo", type=float, default=None, dest="q_lo")
    run.add_argument("--q-hi", type=float, default=None, dest="q_hi")
    run.add_argument("--tol-override", action="append", metavar="ID=EPS",
                     help="per-identity tolerance (repeatable)")
    run.add_argument("--report", default=None, help="JSON report path")
    run.add_argument("--csv", default=None, help="CSV summary path")
    run.add_argument("--workers", type=int, default=None,
                     help="worker processes (default 1)")
    run.add_argument("--precision", default=None,
                     choices=list(precision.PROFILES),
                     help="floating backend (env QVERIFY_PRECISION)")
    run.add_argument("--config", default=None,
                     help="JSON config file; flags override its values")

    lim = sub.add_parser("limits", help="check q -> 1 classical limits")
    lim.add_argument("--q-seq", default="0.9,0.99,0.999",
                     help="comma-separated increasing q values")
    lim.add_argument("--report", default=None, help="JSON report path")
    return par


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list()
        if args.command == "run":
            return cmd_run(_build_run_config(args))
        if args.command == "limits":
            try:
                qs = [float(tok) for tok in args.q_seq.split(",") if tok]
            except ValueError:
                raise ConfigError("q sequence must be numeric")
            return cmd_limits(qs, report_path=args.report)
        raise ConfigError("unknown command %r" % args.command)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except QVerifyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
