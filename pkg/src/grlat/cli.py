"""Command line surface: monoid analysis, verification sweeps, spectrum
batches, and ingestion of externally computed class-group tables.

Exit codes are a contract: 0 all checks pass, 2 at least one check
failed, 64 usage error, 65 capacity exceeded, 66 malformed input data.
Reports contain integers and fixed strings only, so identical flags and
seed reproduce byte-identical output.
"""

import argparse
import csv
import json
import sys
from importlib import resources

from .abelian import enumerate_subgroups, make_group, prime_factors
from .cohomology import (
    closed_form_inertia_tate,
    module_equivalent,
    tate_cohomology,
    triviality_criterion,
)
from .errors import (
    CapacityError,
    GrlatError,
    InvalidFactorError,
    ScopeError,
    UnitNotFoundError,
)
from .grouprings import GroupRing, inertia_module
from .lattices import (
    verify_extension_sequence,
    verify_kernel_presentation,
    verify_unit_transport,
)
from .monoid import analyze_monoid, build_sets
from .spectrum import predicted_membership, sample_spectrum, verify_claims

EXIT_OK = 0
EXIT_CHECK = 2
EXIT_USAGE = 64
EXIT_CAPACITY = 65
EXIT_DATA = 66

VERIFY_CHECKS = ("tate", "kernel", "ext", "triviality", "unit")
CHECK_ALIASES = {"propfree": "triviality"}


class DataError(GrlatError):
    """Malformed input table (bad header, non-integer cell, bad prime)."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which collides with the
    # check-failure code; usage problems must exit 64
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_group_spec(spec: str):
    try:
        factors = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise InvalidFactorError(f"group spec {spec!r} is not a comma-separated integer list")
    return make_group(factors)


def fmt_elem(elem) -> str:
    return ":".join(str(c) for c in elem.coords)


def fmt_sub(sub) -> str:
    if sub.is_trivial:
        return "e"
    return ";".join(":".join(str(c) for c in row) for row in sub.basis)


def _flag(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# subcommands


def cmd_monoid(args) -> dict:
    group = parse_group_spec(args.group)
    report = analyze_monoid(group, args.bound)
    checks = [
        ["decomposition_law", _flag(report.decomposition_ok)],
        ["injective_on_irreducibles", _flag(report.injective_on_irreducibles)],
        ["irreducibility", _flag(report.irreducibility_ok)],
        ["counts_consistent", _flag(report.counts_consistent)],
    ]
    if report.bounded_injectivity_expected:
        checks.append(["bounded_injectivity", _flag(report.bounded_injectivity_ok)])
    return {
        "command": "monoid",
        "config": {"group": args.group, "bound": report.bound, "bound_reduced": int(report.bound_reduced)},
        "results": {
            "counts": report.family.counts,
            "verdict": report.verdict,
            "checks": checks,
        },
        "verdict": _flag(report.all_checks_pass),
    }


def _tate_rows(group):
    ring = GroupRing(group)
    fam = build_sets(group)
    subs = enumerate_subgroups(group)
    rows = []
    for pair in fam.stilde:
        mod = inertia_module(ring, pair.inertia, pair.frob)
        for h in subs:
            t = tate_cohomology(mod, h)
            pred = closed_form_inertia_tate(group, pair.inertia, pair.frob, h)
            statuses = []
            for m in (t.h0, t.hminus1):
                out = module_equivalent(m, pred)
                if not out.decided:
                    statuses.append("undecided")
                else:
                    statuses.append("pass" if out.isomorphic else "fail")
            status = "pass" if statuses == ["pass", "pass"] else ";".join(statuses)
            rows.append(
                ["tate", fmt_sub(pair.inertia), fmt_elem(pair.frob), fmt_sub(h), status]
            )
    return rows


def _kernel_rows(group):
    if not group.is_cyclic:
        raise ScopeError("kernel check requires a cyclic group")
    ring = GroupRing(group)
    fam = build_sets(group)
    rows = []
    for pair in fam.stilde:
        rep = verify_kernel_presentation(ring, pair.inertia, pair.frob)
        rows.append(["kernel", fmt_sub(pair.inertia), fmt_elem(pair.frob), "-", _flag(rep.ok)])
    return rows


def _ext_rows(group):
    ring = GroupRing(group)
    fam = build_sets(group)
    rows = []
    for pair in fam.stilde:
        rep = verify_extension_sequence(ring, pair.inertia, pair.frob)
        rows.append(["ext", fmt_sub(pair.inertia), fmt_elem(pair.frob), "-", _flag(rep.ok)])
    return rows


def _triviality_rows(group):
    fam = build_sets(group)
    rows = []
    for pair in fam.stilde:
        for p in sorted(prime_factors(group.order)):
            rep = triviality_criterion(group, pair.inertia, pair.frob, p)
            for row in rep.rows:
                chi = ":".join(str(b) for b in row.chi.values) or "1"
                rows.append(
                    [
                        "triviality",
                        fmt_sub(pair.inertia),
                        fmt_elem(pair.frob),
                        f"p={p} chi={chi}",
                        _flag(row.agree),
                    ]
                )
    return rows


def _unit_rows(group):
    if len(prime_factors(group.order)) != 1:
        raise ScopeError("unit transport requires a group of prime power order")
    ring = GroupRing(group)
    fam = build_sets(group)
    rows = []
    for i, a in enumerate(fam.stilde):
        for b in fam.stilde[i + 1 :]:
            if a.inertia != b.inertia or a.decomposition != b.decomposition:
                continue
            try:
                ok = verify_unit_transport(ring, a.inertia, a.frob, b.frob)
            except UnitNotFoundError:
                ok = False
            rows.append(
                ["unit", fmt_sub(a.inertia), f"{fmt_elem(a.frob)}~{fmt_elem(b.frob)}", "-", _flag(ok)]
            )
    return rows


def _parse_checks(group, spec):
    if spec is None:
        names = ["tate", "ext", "triviality"]
        if group.is_cyclic:
            names.insert(1, "kernel")
        if len(prime_factors(group.order)) == 1:
            names.append("unit")
        return names
    names = []
    for tok in spec.split(","):
        tok = tok.strip()
        tok = CHECK_ALIASES.get(tok, tok)
        if tok not in VERIFY_CHECKS:
            raise ScopeError(f"unknown check {tok!r}; choose from {','.join(VERIFY_CHECKS)}")
        if tok not in names:
            names.append(tok)
    return names


def cmd_verify(args) -> dict:
    group = parse_group_spec(args.group)
    names = _parse_checks(group, args.checks)
    sweeps = {
        "tate": _tate_rows,
        "kernel": _kernel_rows,
        "ext": _ext_rows,
        "triviality": _triviality_rows,
        "unit": _unit_rows,
    }
    rows = []
    for name in names:
        rows.extend(sweeps[name](group))
    passed = sum(r[-1] == "pass" for r in rows)
    checks = [[name, _flag(all(r[-1] == "pass" for r in rows if r[0] == name))] for name in names]
    return {
        "command": "verify",
        "config": {"group": args.group, "checks": ",".join(names)},
        "results": {
            "cases": {"total": len(rows), "passed": passed},
            "rows": rows,
            "checks": checks,
        },
        "verdict": _flag(passed == len(rows)),
    }


def cmd_spectrum(args) -> dict:
    samples = sample_spectrum(args.p, args.r, args.coeff_exp, args.samples, args.seed)
    histogram = {}
    oracle = membership = claims = rejections = 0
    for s in samples:
        histogram[s.total] = histogram.get(s.total, 0) + 1
        oracle += s.total == s.snf_total
        membership += predicted_membership(s.total, args.p, args.r, args.n)
        claims += verify_claims(s).ok
        rejections += s.attempts - 1
    count = len(samples)
    checks = [
        ["oracle_identity", _flag(oracle == count)],
        ["membership", _flag(membership == count)],
        ["claims", _flag(claims == count)],
    ]
    return {
        "command": "spectrum",
        "config": {
            "p": args.p,
            "r": args.r,
            "n": args.n,
            "samples": args.samples,
            "coeff_exp": args.coeff_exp,
            "seed": args.seed,
        },
        "results": {
            "histogram": [[total, histogram[total]] for total in sorted(histogram)],
            "attained": sorted(histogram),
            "passes": {
                "oracle_identity": oracle,
                "membership": membership,
                "claims": claims,
                "rejections": rejections,
            },
            "checks": checks,
        },
        "verdict": _flag(all(c[1] == "pass" for c in checks)),
    }


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _read_records(path, p, r):
    if path == "@bundled":
        src = resources.files("grlat.data").joinpath("classgroups_p3_r2.csv")
        fh = src.open("r", encoding="utf-8")
    else:
        try:
            fh = open(path, "r", encoding="utf-8")
        except OSError as e:
            raise DataError(f"cannot read {path}: {e.strerror}")
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("row 0: empty file")
        if [h.strip() for h in header] != ["q", "field_tag", "ord_value"]:
            raise DataError("row 0: header must be q,field_tag,ord_value")
        records = []
        for rownum, cells in enumerate(reader, start=1):
            if not cells:
                continue
            if len(cells) != 3:
                raise DataError(f"row {rownum}: expected 3 cells, got {len(cells)}")
            try:
                q = int(cells[0])
                ord_value = int(cells[2])
            except ValueError:
                raise DataError(f"row {rownum}: q and ord_value must be integers")
            if not _is_prime(q):
                raise DataError(f"row {rownum}: q={q} is not prime")
            if ord_value < 0:
                raise DataError(f"row {rownum}: ord_value must be nonnegative")
            records.append((rownum, q, cells[1].strip(), ord_value))
    return records


def cmd_ingest(args) -> dict:
    records = _read_records(args.table, args.p, args.r)
    modulus = args.p**args.r
    rows = []
    attained = set()
    congruence = membership = 0
    for rownum, q, tag, ord_value in records:
        cong_ok = q % modulus == 1
        memb_ok = predicted_membership(ord_value, args.p, args.r, 1)
        congruence += cong_ok
        membership += memb_ok
        attained.add(ord_value)
        status = "pass" if cong_ok and memb_ok else ("fail:congruence" if not cong_ok else "fail:membership")
        rows.append([rownum, q, tag, ord_value, status])
    count = len(records)
    checks = [
        ["congruence", _flag(congruence == count)],
        ["membership", _flag(membership == count)],
    ]
    return {
        "command": "ingest",
        "config": {"table": args.table, "p": args.p, "r": args.r},
        "results": {
            "rowcount": count,
            "attained": sorted(attained),
            "passes": {"congruence": congruence, "membership": membership},
            "rows": rows,
            "checks": checks,
        },
        "verdict": _flag(all(c[1] == "pass" for c in checks)),
    }


# ---------------------------------------------------------------------------
# report emission


def _tsv_value(key: str, value, out) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _tsv_value(f"{key}.{k}" if key else k, v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (list, tuple)):
        for row in value:
            out.write(key + "\t" + "\t".join(str(c) for c in row) + "\n")
    elif isinstance(value, list):
        out.write(key + "\t" + ",".join(str(c) for c in value) + "\n")
    else:
        out.write(f"{key}\t{value}\n")


def emit_tsv(report: dict, out) -> None:
    _tsv_value("", report, out)


def emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        emit_tsv(report, out)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    parser = _Parser(prog="grlat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_monoid = sub.add_parser("monoid", parents=[], help="freeness analysis of one group")
    p_monoid.add_argument("group", help="comma-separated invariant factors, e.g. 9 or 3,6")
    p_monoid.add_argument("--bound", type=int, default=None, help="injectivity sum bound (default 3, auto-shrunk)")
    p_monoid.add_argument("--json", action="store_true")
    p_monoid.set_defaults(func=cmd_monoid)

    p_verify = sub.add_parser("verify", help="identity sweeps over all inertia data of one group")
    p_verify.add_argument("group")
    p_verify.add_argument(
        "--checks",
        default=None,
        help="comma list from tate,kernel,ext,triviality,unit (default: all applicable)",
    )
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", help="sampled valuation totals vs the predicted set")
    p_spec.add_argument("--p", type=int, required=True)
    p_spec.add_argument("--r", type=int, required=True)
    p_spec.add_argument("--n", type=int, default=1, help="membership parameter (default 1)")
    p_spec.add_argument("--samples", type=int, default=100)
    p_spec.add_argument("--coeff-exp", type=int, default=5, dest="coeff_exp")
    p_spec.add_argument("--seed", type=int, default=0)
    p_spec.add_argument("--json", action="store_true")
    p_spec.set_defaults(func=cmd_spectrum)

    p_ingest = sub.add_parser("ingest", help="validate an ord-value table against the predicted set")
    p_ingest.add_argument("table", help="CSV path with header q,field_tag,ord_value, or @bundled")
    p_ingest.add_argument("--p", type=int, required=True)
    p_ingest.add_argument("--r", type=int, required=True)
    p_ingest.add_argument("--json", action="store_true")
    p_ingest.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except DataError as e:
        print(f"grlat: data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except CapacityError as e:
        print(f"grlat: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvalidFactorError, ScopeError) as e:
        print(f"grlat: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit(report, args.json, sys.stdout)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
