"""nazeta command line: one subcommand per module.

Exit status: 0 when every check passes, 2 when a check fails, 1 on usage or
I/O errors.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import acceptance
from .artin import InconsistentCountsError, weil_check, zeta_from_counts
from .assembly import InconsistencyError, assemble, nm_series, root_pairing, xi_symmetry
from .curves import CurveError, CurveModel, bad_primes, load_curve, point_counts
from .euler import GlobalZetaSpec, elliptic_identities, elliptic_partial_product, partial_product
from .genus2 import WEIGHTINGS, Genus2Inputs, build_zeta, rank2_table
from .invariants import BETA2_VARIANTS, InvariantError, clifford_check, frac_str, mass_bound_check, rank1_table

COMMANDS = ("count", "artin", "invariants", "local", "genus2", "euler", "elliptic", "selftest")

# which flags each command accepts beyond the common --out
ALLOWED = {
    "count": {"curve", "q", "order"},
    "artin": {"curve", "q", "order", "check_weil"},
    "invariants": {"curve", "q", "rank", "variant", "weights"},
    "local": {"curve", "q", "rank", "variant", "weights", "order"},
    "genus2": {"curve", "q", "variant", "weights"},
    "euler": {"curve", "rank", "s", "pmax", "variant", "weights"},
    "elliptic": {"pmax", "s"},
    "selftest": {"filter"},
}
REQUIRED = {
    "count": {"curve", "q"},
    "artin": {"curve", "q"},
    "invariants": {"curve", "q"},
    "local": {"curve", "q"},
    "genus2": {"curve", "q"},
    "euler": {"curve", "s", "pmax"},
    "elliptic": {"pmax"},
    "selftest": set(),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Path | None = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        given = {k for k, v in self.flags.items() if v not in (None, False)}
        if self.input_path is not None:
            given.add("curve")
        extra = given - ALLOWED[self.command]
        if extra:
            raise UsageError(f"{self.command}: unsupported option(s) " + ", ".join("--" + e.replace("_", "-") for e in sorted(extra)))
        missing = REQUIRED[self.command] - given
        if missing:
            raise UsageError(f"{self.command}: missing required option(s) " + ", ".join("--" + m for m in sorted(missing)))
        rank = self.flags.get("rank")
        if rank is not None and rank < 1:
            raise UsageError("--rank must be >= 1")
        order = self.flags.get("order")
        if order is not None and order < 1:
            raise UsageError("--order must be >= 1")

    def get(self, key, default=None):
        v = self.flags.get(key)
        return default if v is None else v


@dataclass
class Outcome:
    files: dict[str, str]  # name -> contents
    ok: bool = True
    messages: list[str] = field(default_factory=list)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _curve(cfg: RunConfig) -> tuple[CurveModel, dict]:
    return load_curve(cfg.input_path)


def _artin(cfg: RunConfig, curve: CurveModel):
    q = cfg.flags["q"]
    upto = cfg.get("order", 2 * curve.genus)
    if upto < curve.genus:
        raise UsageError(f"--order must be at least g = {curve.genus} to determine the numerator")
    return zeta_from_counts(point_counts(curve, q, min(upto, 4)))


# --- commands -------------------------------------------------------------------


def cmd_count(cfg: RunConfig) -> Outcome:
    curve, _ = _curve(cfg)
    upto = cfg.get("order", 2 * curve.genus)
    pc = point_counts(curve, cfg.flags["q"], min(upto, 4))
    rows = ["m,N_m"] + [f"{m},{n}" for m, n in enumerate(pc.counts, start=1)]
    return Outcome({"counts.csv": "\n".join(rows) + "\n"})


def cmd_artin(cfg: RunConfig) -> Outcome:
    curve, _ = _curve(cfg)
    z = _artin(cfg, curve)
    rows = ["i,a_i"] + [f"{i},{frac_str(c)}" for i, c in enumerate(z.numerator.coeffs)]
    out = Outcome({"artin.csv": "\n".join(rows) + "\n"})
    if cfg.get("check_weil"):
        rep = weil_check(z)
        out.files["weil.json"] = _json(rep.as_dict())
        if not rep.ok:
            out.ok = False
            out.messages.append(f"Weil bound |w| = sqrt(q) violated: {rep.as_dict()['offenders']}")
    return out


def _table(cfg: RunConfig, curve: CurveModel):
    z = _artin(cfg, curve)
    r = cfg.get("rank", 1)
    if r == 1:
        return z, rank1_table(z)
    if r == 2 and curve.genus == 2:
        return z, rank2_table(Genus2Inputs(z, cfg.get("variant", "hn"), cfg.get("weights", "paper")))
    raise UsageError(f"invariant tables are available for rank 1, or rank 2 on genus-2 curves (got rank {r}, g = {curve.genus})")


def cmd_invariants(cfg: RunConfig) -> Outcome:
    curve, _ = _curve(cfg)
    z, table = _table(cfg, curve)
    out = Outcome({"invariants.csv": table.to_csv()})
    report = {"clifford": clifford_check(table).as_dict(), "violations": table.violations()}
    if table.r == 2:
        report["mass_bound"] = mass_bound_check(z, cfg.get("variant", "hn"))
    out.files["invariants_report.json"] = _json(report)
    if table.violations():
        out.ok = False
        out.messages += table.violations()
    if not report["clifford"]["pass"]:
        out.ok = False
        out.messages.append("Clifford bound alpha(d) <= q^(ceil(d/2)+r) beta(d) violated")
    if "mass_bound" in report and not report["mass_bound"]["pass"]:
        out.ok = False
        out.messages.append("mass bound 0 < beta_2(L) <= q^3/(q-1) zeta_C(2) violated")
    return out


def cmd_local(cfg: RunConfig) -> Outcome:
    curve, _ = _curve(cfg)
    _, table = _table(cfg, curve)
    z = assemble(table)
    B = cfg.get("order", z.degree + 4)
    nm = nm_series(z, B)
    pairing, xi = root_pairing(z), xi_symmetry(z)
    out = Outcome({
        "local.csv": z.to_csv(),
        "nm.csv": "m,N_m\n" + "".join(f"{m},{frac_str(v)}\n" for m, v in enumerate(nm.values, start=1)),
        "local_report.json": _json({"root_pairing": pairing, "xi_symmetry": xi}),
    })
    for rep, rel in ((pairing, "root pairing w w' = q"), (xi, "xi(s) = xi(1-s)")):
        if not rep["pass"]:
            out.ok = False
            out.messages.append(f"{rel} violated")
    return out


def cmd_genus2(cfg: RunConfig) -> Outcome:
    curve, _ = _curve(cfg)
    if curve.genus != 2:
        raise UsageError(f"genus2 needs a genus-2 curve, got g = {curve.genus}")
    z = _artin(cfg, curve)
    L, report = build_zeta(Genus2Inputs(z, cfg.get("variant", "hn"), cfg.get("weights", "paper")))
    return Outcome({"genus2.csv": L.to_csv(), "arbitration.json": _json(report.as_dict())}, True, report.notes)


def cmd_euler(cfg: RunConfig) -> Outcome:
    curve, extra = _curve(cfg)
    r = cfg.get("rank", extra.get("rank", 1))
    spec = GlobalZetaSpec(curve, r, cfg.get("variant", "hn"), cfg.get("weights", "paper"))
    tr = partial_product(spec, cfg.flags["s"], cfg.flags["pmax"])
    msg = [f"excluded primes (p | 2 disc f lc f): {sorted(bad_primes(curve))}"]
    return Outcome({"euler_trace.csv": tr.to_csv()}, True, msg)


def cmd_elliptic(cfg: RunConfig) -> Outcome:
    rep = elliptic_identities(cfg.flags["pmax"])
    out = Outcome({"elliptic.json": _json(rep)}, rep["pass"])
    for f in rep["failures"][:5]:
        out.messages.append(f"identity {f['identity']} fails at p = {f['p']}, coefficient t^{f['coefficient']}")
    if cfg.get("s") is not None:
        out.files["elliptic_trace.csv"] = elliptic_partial_product(cfg.flags["s"], cfg.flags["pmax"]).to_csv()
    return out


def cmd_selftest(cfg: RunConfig) -> Outcome:
    results = acceptance.run_all(cfg.get("filter"))
    if not results:
        raise UsageError(f"--filter {cfg.get('filter')!r} matches no criterion")
    summary = {"pass": all(r.ok for r in results), "criteria": [r.as_dict() for r in results]}
    out = Outcome({"selftest.json": _json(summary)}, summary["pass"])
    out.messages = [r.line() for r in results]
    return out


HANDLERS = {
    "count": cmd_count,
    "artin": cmd_artin,
    "invariants": cmd_invariants,
    "local": cmd_local,
    "genus2": cmd_genus2,
    "euler": cmd_euler,
    "elliptic": cmd_elliptic,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nazeta", description="Non-abelian zeta functions of curves over finite fields.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--curve", type=Path, help="curve file (YAML: f, base, genus[, rank])")
    ap.add_argument("--q", type=int, help="odd prime of good reduction")
    ap.add_argument("--rank", type=int)
    ap.add_argument("--pmax", type=int, help="prime bound X")
    ap.add_argument("--s", type=float)
    ap.add_argument("--order", type=int, help="number of point counts / series order")
    ap.add_argument("--variant", choices=BETA2_VARIANTS)
    ap.add_argument("--weights", choices=WEIGHTINGS)
    ap.add_argument("--check-weil", action="store_true")
    ap.add_argument("--filter", help="selftest: module tag or criterion name substring")
    ap.add_argument("--out", type=Path, help="output directory (default: print to stdout)")
    return ap


def _write(out: Outcome, cfg: RunConfig, outdir: Path | None, argv) -> None:
    if outdir is None:
        for name, text in out.files.items():
            sys.stdout.write(f"# {name}\n{text}")
        return
    outdir.mkdir(parents=True, exist_ok=True)
    for name, text in out.files.items():
        (outdir / name).write_text(text)
    from importlib.metadata import PackageNotFoundError, version

    try:
        ver = version("artifact")
    except PackageNotFoundError:
        ver = "unknown"
    prov = {
        "argv": list(argv),
        "command": cfg.command,
        "files": sorted(out.files),
        "package_version": ver,
        "python": platform.python_version(),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    (outdir / f"{cfg.command}.provenance.json").write_text(_json(prov))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    flags = {k: v for k, v in vars(ns).items() if k not in ("command", "curve", "out")}
    try:
        cfg = RunConfig(ns.command, ns.curve, flags)
        out = HANDLERS[cfg.command](cfg)
        _write(out, cfg, ns.out, argv)
    except (UsageError, OSError) as exc:
        print(f"nazeta: error: {exc}", file=sys.stderr)
        return 1
    except CurveError as exc:
        # unparseable files and bad primes are input problems
        print(f"nazeta: error: {exc}", file=sys.stderr)
        return 1
    except (InconsistencyError, InconsistentCountsError, InvariantError) as exc:
        print(f"nazeta: check failed: {exc}", file=sys.stderr)
        return 2
    except (ValueError, NotImplementedError) as exc:
        print(f"nazeta: error: {exc}", file=sys.stderr)
        return 1
    for m in out.messages:
        print(m, file=sys.stderr)
    return 0 if out.ok else 2


if __name__ == "__main__":
    sys.exit(main())
