"""Command-line front end.

Exit codes: 0 success, 1 theorem-verification mismatch, 2 usage or
schema error, 3 validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import acceptance
from .betti import verify_main_theorem
from .complexes import build_V_alpha, build_V_bar, check_spaces_sequence
from .fields import field_from_descriptor
from .matroid import beta_invariant, matroid_of, minors_at
from .presentation import (
    NotGenericError,
    NotInLatticeError,
    SchemaError,
    ValidationError,
    strongly_generic_check,
    fiber_structure,
    lcm_lattice,
    load_presentation,
    non_generic_elements,
    uniform_rank_check,
)
from .report import degree_text, fiber_record, generic_summary, minimal_sets_text, set_text, values_text
from .scarf import verify_scarf_theorem

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3
ORDERING = "source order (omega = order of the sources in the input)"


class UsageError(Exception):
    pass


def _parse_alpha(text: str | None, m: int):
    if text is None:
        return None
    try:
        alpha = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--alpha must be comma-separated integers, got {text!r}") from None
    if len(alpha) != m:
        raise UsageError(f"--alpha has {len(alpha)} entries but the ring has {m} variables")
    return alpha


class Output:
    """Collects table lines or structured rows and emits them in one format."""

    def __init__(self, fmt: str, field_name: str, command: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {"command": command, "field": field_name, "ordering": ORDERING}
        self.rows: list[dict] = []
        if fmt == "table":
            self.lines.append(f"# field: {field_name}; ordering: {ORDERING}")

    def line(self, text: str = ""):
        self.lines.append(text)

    def emit(self, stream):
        if self.fmt == "table":
            stream.write("\n".join(self.lines) + "\n")
        elif self.fmt == "json":
            stream.write(json.dumps(self.data, indent=2, sort_keys=True) + "\n")
        else:
            buf = io.StringIO()
            keys = sorted({k for r in self.rows for k in r})
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for r in self.rows:
                w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
            stream.write(buf.getvalue())


def cmd_validate(P, args, out: Output) -> int:
    out.line(f"valid presentation: m={P.m}, targets={len(P.targets)}, sources={len(P.sources)}")
    out.data.update(valid=True, variables=P.m, targets=len(P.targets), sources=len(P.sources))
    out.rows.append({"valid": True, "variables": P.m, "targets": len(P.targets), "sources": len(P.sources)})
    return EXIT_OK


def _fiber_rows(P, alphas):
    rows = []
    for alpha in alphas:
        rows.append(fiber_record(P, fiber_structure(P, alpha)))
    return rows


def cmd_lattice(P, args, out: Output) -> int:
    alpha = _parse_alpha(args.alpha, P.m)
    alphas = [alpha] if alpha is not None else list(lcm_lattice(P))
    if alpha is not None and alpha not in lcm_lattice(P):
        out.line(f"{degree_text(alpha)} is not in the LCM lattice (generic relative to L)")
        out.data.update(alpha=list(alpha), in_lattice=False)
        out.rows.append({"alpha": list(alpha), "in_lattice": False})
        return EXIT_OK
    recs = _fiber_rows(P, alphas)
    out.line(f"LCM lattice: {len(lcm_lattice(P))} elements")
    for rec, a in zip(recs, alphas):
        fs = fiber_structure(P, a)
        lower = set_text(P, fs.i_lower) if fs.is_generic else "-"
        out.line(
            f"{degree_text(a)}  I^a={set_text(P, fs.i_upper)}  minimal={minimal_sets_text(P, fs)}  "
            f"generic={'yes' if fs.is_generic else 'no'}  I_a={lower}"
        )
    summary = generic_summary(P)
    out.line(summary)
    out.data.update(lattice=recs, summary=summary, generic_type=not non_generic_elements(P))
    out.rows.extend(recs)
    return EXIT_OK


def cmd_generic(P, args, out: Output) -> int:
    bad = non_generic_elements(P)
    summary = generic_summary(P)
    out.line(summary)
    for fs in bad:
        out.line(f"  not generic: {degree_text(fs.alpha)} minimal sets {minimal_sets_text(P, fs)}")
    uniform = uniform_rank_check(P)
    out.line(f"uniform rank: {'yes' if uniform else 'no'}")
    out.data.update(summary=summary, generic_type=not bad, uniform_rank=uniform,
                    non_generic=[fiber_record(P, fs) for fs in bad])
    if len(P.targets) == 1:
        strong = strongly_generic_check(P)
        out.line(f"strongly generic (no shared positive exponent): {'yes' if strong else 'no'}")
        out.data["strongly_generic"] = strong
    out.rows.extend(fiber_record(P, fs) for fs in bad)
    return EXIT_OK


def cmd_matroid(P, args, out: Output) -> int:
    alpha = _parse_alpha(args.alpha, P.m)
    if alpha is None:
        M = matroid_of(P)
        b = beta_invariant(M, args.max_ground)
        info = {
            "rank": M.rank(),
            "loops": [str(x) for x in M.ordered(M.loops())],
            "circuits": [[str(x) for x in M.ordered(C)] for C in M.circuits()],
            "hyperplanes": [[str(x) for x in M.ordered(H)] for H in M.hyperplanes()],
            "beta": b,
        }
        out.line(f"M(Phi,S): r={info['rank']}, beta={b}, loops={set_text(P, M.loops())}")
        out.line("circuits: " + ", ".join(set_text(P, C) for C in M.circuits()))
        out.line("hyperplanes: " + ", ".join(set_text(P, H) for H in M.hyperplanes()))
        out.data.update(info)
        out.rows.append(info)
        return EXIT_OK
    mp = minors_at(P, alpha)
    b = beta_invariant(mp.m_lower, args.max_ground)
    info = {
        "alpha": list(alpha),
        "I_upper": [str(x) for x in P.ordered(mp.i_upper)],
        "I_lower": [str(x) for x in P.ordered(mp.i_lower)],
        "I_of_alpha": [str(x) for x in P.ordered(mp.i_of_alpha)],
        "rank_upper": mp.m_upper.rank(),
        "rank_lower": mp.m_lower.rank(),
        "loops_lower": [str(x) for x in mp.m_lower.ordered(mp.m_lower.loops())],
        "beta_lower": b,
    }
    out.line(f"alpha={degree_text(alpha)}: I^a={set_text(P, mp.i_upper)}, I_a={set_text(P, mp.i_lower)}")
    out.line(f"r(M^α)={info['rank_upper']}")
    out.line(f"r(M_α)={info['rank_lower']}, β={b}, I(α)={set_text(P, mp.i_of_alpha)}")
    out.line(f"loops of M_α: {set_text(P, mp.m_lower.loops())}")
    out.data.update(info)
    out.rows.append(info)
    return EXIT_OK


def cmd_complex(P, args, out: Output) -> int:
    alpha = _parse_alpha(args.alpha, P.m)
    if alpha is None:
        raise UsageError("complex needs --alpha")
    V = build_V_alpha(P, alpha)
    Vb = build_V_bar(P, alpha)
    ses = check_spaces_sequence(P, alpha)
    H = V.homology_support()
    out.line(f"V(alpha,phi,omega) at {degree_text(alpha)}: dims {', '.join(map(str, V.dims))} (degrees 0..{len(V.dims) - 1})")
    out.line(f"homology: {H}")
    out.line(f"V(phi-bar,omega): dims {', '.join(map(str, Vb.dims))}, homology {Vb.homology_support()}")
    out.line(f"subcomplex V_I(a) (x) C': dims {', '.join(map(str, ses.sub_dims))}, exact={ses.sub_exact}, "
             f"chain map={ses.chain_map}, injective={ses.injective}, additive={ses.additive}")
    info = {
        "alpha": list(alpha),
        "dims": list(V.dims),
        "homology": {str(k): v for k, v in H.items()},
        "bar_dims": list(Vb.dims),
        "bar_homology": {str(k): v for k, v in Vb.homology_support().items()},
        "sequence_ok": ses.ok,
    }
    out.data.update(info)
    out.rows.append(info)
    return EXIT_OK


def cmd_betti(P, args, out: Output) -> int:
    alpha = _parse_alpha(args.alpha, P.m)
    rep = verify_main_theorem(P, None if alpha is None else [alpha])
    records = []
    for v in rep.verdicts:
        line = f"{degree_text(v.alpha)}: oracle: {values_text(v.oracle)}"
        if v.predicted is not None:
            line += f"; predicted: {values_text(v.predicted)}"
        line += f"; {v.status}"
        out.line(line)
        rec = {
            "alpha": list(v.alpha),
            "oracle": {str(i): x for i, x in v.oracle.items() if i >= 1},
            "predicted": None if v.predicted is None else {str(i): x for i, x in v.predicted.items()},
            "status": v.status,
        }
        records.append(rec)
        out.rows.append(rec)
    verdict = "pass" if rep.passed else "FAIL"
    out.line(f"main theorem: {verdict} ({len(rep.mismatches)} mismatches, {len(rep.silent)} silent)")
    out.data.update(degrees=records, passed=rep.passed)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_scarf(P, args, out: Output) -> int:
    if len(P.targets) != 1:
        raise UsageError("scarf is only defined here for monomial ideals (one target)")
    rep = verify_scarf_theorem(P)
    out.line(f"generic type: {'yes' if rep.generic_type else 'no'}")
    out.line(f"Scarf ranks: {rep.ranks}")
    out.line(f"resolution: {'yes' if rep.resolution else 'no'}")
    if rep.bad_strands:
        out.line("non-exact strands at: " + ", ".join(degree_text(a) for a in rep.bad_strands))
    out.line(f"minimal resolution: {'yes' if rep.resolution and rep.minimal else 'no'}")
    if rep.ranks_match_oracle is not None:
        out.line(f"ranks match oracle Betti numbers: {'yes' if rep.ranks_match_oracle else 'no'}")
    info = {
        "generic_type": rep.generic_type,
        "ranks": rep.ranks,
        "resolution": rep.resolution,
        "minimal": rep.minimal,
        "ranks_match_oracle": rep.ranks_match_oracle,
        "non_exact_strands": [list(a) for a in rep.bad_strands],
    }
    out.data.update(info)
    out.rows.append(info)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_selftest(args, out: Output) -> int:
    results = acceptance.run_all(args.seed)
    for r in results:
        out.line(r.line())
        out.rows.append({"criterion": r.number, "passed": r.passed, "detail": r.detail})
    ok = all(r.passed for r in results)
    out.line(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    out.data.update(seed=args.seed, criteria=out.rows, passed=ok)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "validate": cmd_validate,
    "lattice": cmd_lattice,
    "generic": cmd_generic,
    "matroid": cmd_matroid,
    "complex": cmd_complex,
    "betti": cmd_betti,
    "scarf": cmd_scarf,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="presentation JSON file")
    common.add_argument("--field", help="rational or pP (e.g. p7); overrides the file")
    common.add_argument("--alpha", help="multidegree as comma-separated integers")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    common.add_argument("--max-ground", type=int, default=20, dest="max_ground",
                        help="largest ground set for the exhaustive beta-invariant sum")
    parser = argparse.ArgumentParser(prog="matbetti", description="Multigraded Betti numbers via matroid minors.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["selftest"]:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        field = field_from_descriptor(args.field) if args.field else None
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "selftest":
        out = Output(args.format, "QQ", "selftest")
        code = cmd_selftest(args, out)
        out.emit(sys.stdout)
        return code

    if not args.input:
        print("error: --input is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        P = load_presentation(args.input, field=field)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_INVALID

    out = Output(args.format, P.field.name, args.command)
    try:
        code = COMMANDS[args.command](P, args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NotGenericError, NotInLatticeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out.emit(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
