"""Command line front end for the quantum matrix basis library.

Compute verbs (basis, block, det, minor, mult, bar, sigma, sl-basis,
uq act) print a single element or a list of elements; verify verbs run a
named check suite over an exhaustive range and exit 0 only when every
check passes.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 internal inconsistency.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .laurent import LaurentPoly, ParseError, PreconditionViolation
from .qmatrix import (
    AlgebraElement,
    BadIndexSet,
    ExpMatrix,
    SizeMismatch,
    bar_element,
    corner_minor,
    multiply,
    quantum_determinant,
    quantum_minor,
    region_commutation_report,
    sigma_element,
)
from .canon import (
    BadRegion,
    DegreeBoundExceeded,
    InternalInconsistency,
    NotALadder,
    canonical_basis_block,
    canonical_basis_element,
    enumerate_block,
    margin_vectors,
    matrices_up_to_degree,
    oracle_unique_ic,
    staircase_regions,
    verify_broken_line,
    verify_det_multiplication,
    verify_ladder_factorization,
    verify_minor_multiplication,
    verify_q_commuting_pairs,
    verify_transpose_symmetry,
)
from .slquotient import sl_basis_element
from .uqaction import (
    BadGeneratorIndex,
    CONVENTIONS,
    act,
    check_relation_preservation,
    highest_weight_check,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_INTERNAL = 3

VERIFY_SUITES = (
    "det-mult",
    "minor-mult",
    "transpose",
    "broken-line",
    "ladder",
    "q-commute",
    "ic-oracle",
    "region-commute",
    "uq-relations",
    "uq-highest-weight",
)


class UsageError(ValueError):
    """Bad command line input."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; that code is reserved
    # for verification failures here, so route through UsageError.
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------


def parse_matrix(s: str) -> ExpMatrix:
    """Parse "1,0;0,1" into a square exponent matrix.

    Rows split on ";", entries on ","; entries must be nonnegative
    integers and rows must all have the same length, equal to the number
    of rows.
    """
    rows = []
    for r, chunk in enumerate(s.split(";"), start=1):
        row = []
        for c, tok in enumerate(chunk.split(","), start=1):
            tok = tok.strip()
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"row {r}, entry {c}: {tok!r} is not an integer") from None
            if v < 0:
                raise ParseError(f"row {r}, entry {c}: negative entry {v}")
            row.append(v)
        rows.append(row)
    width = len(rows[0])
    for r, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ParseError(f"row {r}: expected {width} entries, got {len(row)}")
    if len(rows) != width:
        raise ParseError(f"matrix must be square, got {len(rows)} rows of width {width}")
    return ExpMatrix(rows)


def matrix_to_str(A: ExpMatrix) -> str:
    return ";".join(",".join(str(v) for v in row) for row in A.rows)


def _parse_vector(s: str, what: str):
    try:
        vec = tuple(int(tok.strip()) for tok in s.split(","))
    except ValueError:
        raise UsageError(f"{what} must be a comma list of integers, got {s!r}") from None
    if any(v < 0 for v in vec):
        raise UsageError(f"{what} must be nonnegative, got {s!r}")
    return vec


def _check_n(args, size: int):
    if getattr(args, "n", None) is not None and args.n != size:
        raise UsageError(f"--n {args.n} does not match input of size {size}")


def _element_from_args(args) -> AlgebraElement:
    if getattr(args, "element", None):
        return AlgebraElement.from_json_dict(json.loads(args.element))
    if getattr(args, "matrix", None):
        A = parse_matrix(args.matrix)
        _check_n(args, A.n)
        return AlgebraElement.monomial(A)
    raise UsageError("provide --element or --matrix")


def _emit(args, payload, text: str):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


# ---------------------------------------------------------------------------
# compute verbs
# ---------------------------------------------------------------------------


def _cmd_basis(args):
    A = parse_matrix(args.matrix)
    _check_n(args, A.n)
    ce = canonical_basis_element(A)
    _emit(args, ce.to_json_dict(), str(ce.element))
    return EXIT_OK


def _cmd_block(args):
    R = _parse_vector(args.row_sums, "--row-sums")
    C = _parse_vector(args.col_sums, "--col-sums")
    _check_n(args, len(R))
    elements = canonical_basis_block(R, C)
    if args.format == "json":
        print(json.dumps([ce.to_json_dict() for ce in elements]))
    else:
        for ce in elements:
            print(f"b({matrix_to_str(ce.index)}) = {ce.element}")
    return EXIT_OK


def _cmd_det(args):
    if args.n is None:
        raise UsageError("det requires --n")
    d = quantum_determinant(args.n)
    _emit(args, d.to_json_dict(), str(d))
    return EXIT_OK


def _cmd_minor(args):
    if args.n is None:
        raise UsageError("minor requires --n")
    if args.t is not None:
        m = corner_minor(args.n, args.t)
    elif args.rows and args.cols:
        m = quantum_minor(
            args.n,
            _parse_vector(args.rows, "--rows"),
            _parse_vector(args.cols, "--cols"),
        )
    else:
        raise UsageError("minor requires --t or both --rows and --cols")
    _emit(args, m.to_json_dict(), str(m))
    return EXIT_OK


def _cmd_mult(args):
    if args.element and args.matrix:
        raise UsageError("mult takes repeated --matrix or repeated --element, not both")
    if args.matrix:
        if len(args.matrix) < 2:
            raise UsageError("mult needs at least two --matrix factors")
        factors = []
        for s in args.matrix:
            A = parse_matrix(s)
            _check_n(args, A.n)
            factors.append(AlgebraElement.monomial(A))
    elif args.element:
        if len(args.element) < 2:
            raise UsageError("mult needs at least two --element factors")
        factors = [AlgebraElement.from_json_dict(json.loads(s)) for s in args.element]
    else:
        raise UsageError("mult needs --matrix or --element factors")
    out = factors[0]
    for f in factors[1:]:
        out = multiply(out, f)
    _emit(args, out.to_json_dict(), str(out))
    return EXIT_OK


def _cmd_bar(args):
    x = bar_element(_element_from_args(args))
    _emit(args, x.to_json_dict(), str(x))
    return EXIT_OK


def _cmd_sigma(args):
    x = sigma_element(_element_from_args(args))
    _emit(args, x.to_json_dict(), str(x))
    return EXIT_OK


def _cmd_sl_basis(args):
    A = parse_matrix(args.matrix)
    _check_n(args, A.n)
    x = sl_basis_element(A)
    _emit(args, x.to_json_dict(), str(x))
    return EXIT_OK


def _cmd_uq_act(args):
    conv = CONVENTIONS[args.conv]
    x = _element_from_args(args)
    out = act(args.side, args.gen, x, conv)
    _emit(args, out.to_json_dict(), str(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _ladder_like(A: ExpMatrix) -> bool:
    if A.is_ladder():
        return True
    if A.is_diagonal():
        d = [A.entry(i, i) for i in range(1, A.n + 1)]
        return all(d[i] <= d[i + 1] for i in range(len(d) - 1))
    return False


def _region_lam(n: int, cells) -> tuple:
    return tuple(sum(1 for (i, j) in cells if i == r) for r in range(1, n + 1))


def _sample_matrices(n: int, total: int, count: int, seed):
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rows = [[0] * n for _ in range(n)]
        for _ in range(total):
            rows[rng.randrange(n)][rng.randrange(n)] += 1
        out.append(ExpMatrix(rows))
    return out


def _run_item(spec):
    """Execute one verification item; returns (pass, detail)."""
    suite = spec[0]
    if suite == "det-mult":
        return verify_det_multiplication(ExpMatrix(spec[1])), None
    if suite == "minor-mult":
        return verify_minor_multiplication(ExpMatrix(spec[1]), spec[2], spec[3]), None
    if suite == "transpose":
        return verify_transpose_symmetry(ExpMatrix(spec[1])), None
    if suite == "broken-line":
        rep = verify_broken_line(ExpMatrix(spec[1]), spec[2])
        return rep["pass"], rep
    if suite == "ladder":
        return verify_ladder_factorization(ExpMatrix(spec[1])), None
    if suite == "q-commute":
        rep = verify_q_commuting_pairs(
            enumerate_block(spec[1], spec[2]), enumerate_block(spec[3], spec[4])
        )
        return rep["pass"], rep
    if suite == "ic-oracle":
        block = enumerate_block(spec[1], spec[2])
        expected = canonical_basis_block(spec[1], spec[2])
        got = oracle_unique_ic(block)
        same = len(expected) == len(got) and all(
            a.index == b.index and a.element == b.element for a, b in zip(expected, got)
        )
        return same, None
    if suite == "region-commute":
        rep = region_commutation_report(spec[1])
        bad = [e for e in rep if not e["pass"]]
        return not bad, {"entries": len(rep), "failures": bad}
    if suite == "uq-relations":
        rep = check_relation_preservation(CONVENTIONS[spec[1]], spec[2])
        bad = [e for e in rep if not e["pass"]]
        return not bad, {"entries": len(rep), "failures": bad}
    if suite == "uq-highest-weight":
        return highest_weight_check(spec[2], CONVENTIONS[spec[1]], spec[3]), None
    raise InternalInconsistency(f"unknown suite item {suite!r}")


def _suite_items(args):
    """Labels and item specs for the requested suite, in output order."""
    suite = args.suite
    n = args.n
    cap = args.max_total
    items = []
    if suite in ("det-mult", "transpose"):
        pool = matrices_up_to_degree(n, cap)
        if args.samples:
            pool = pool + _sample_matrices(n, cap + 1, args.samples, args.seed)
        for A in pool:
            items.append((f"{suite} {matrix_to_str(A)}", (suite, A.rows)))
    elif suite == "minor-mult":
        ts = [args.t] if args.t is not None else list(range(1, n + 1))
        sides = ("row", "column") if args.side == "both" else (args.side,)
        pool = matrices_up_to_degree(n, cap)
        if args.samples:
            pool = pool + _sample_matrices(n, cap + 1, args.samples, args.seed)
        for A in pool:
            for t in ts:
                for side in sides:
                    items.append(
                        (
                            f"minor-mult {matrix_to_str(A)} t={t} side={side}",
                            (suite, A.rows, t, side),
                        )
                    )
    elif suite == "broken-line":
        regions = [tuple(sorted(cells)) for cells in staircase_regions(n)]
        for A in matrices_up_to_degree(n, cap):
            for cells in regions:
                lam = _region_lam(n, cells)
                items.append(
                    (
                        f"broken-line {matrix_to_str(A)} lam={','.join(map(str, lam))}",
                        (suite, A.rows, cells),
                    )
                )
    elif suite == "ladder":
        for A in matrices_up_to_degree(n, cap):
            if _ladder_like(A):
                items.append((f"ladder {matrix_to_str(A)}", (suite, A.rows)))
    elif suite == "q-commute":
        blocks = []
        for total in range(cap + 1):
            for R in margin_vectors(n, total):
                for C in margin_vectors(n, total):
                    blocks.append((R, C))
        for a in range(len(blocks)):
            for b in range(a, len(blocks)):
                R1, C1 = blocks[a]
                R2, C2 = blocks[b]
                items.append(
                    (
                        f"q-commute R1={R1} C1={C1} R2={R2} C2={C2}",
                        (suite, R1, C1, R2, C2),
                    )
                )
    elif suite == "ic-oracle":
        for total in range(cap + 1):
            for R in margin_vectors(n, total):
                for C in margin_vectors(n, total):
                    if len(enumerate_block(R, C).matrices) <= 16:
                        items.append((f"ic-oracle R={R} C={C}", (suite, R, C)))
    elif suite == "region-commute":
        items.append((f"region-commute n={n}", (suite, n)))
    elif suite == "uq-relations":
        items.append((f"uq-relations conv={args.conv} n={n}", (suite, args.conv, n)))
    elif suite == "uq-highest-weight":
        ts = [args.t] if args.t is not None else list(range(1, n + 1))
        for t in ts:
            items.append(
                (
                    f"uq-highest-weight conv={args.conv} t={t} n={n}",
                    (suite, args.conv, t, n),
                )
            )
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return items


def _cmd_verify(args):
    if args.n is None:
        raise UsageError("verify requires --n")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    items = _suite_items(args)
    specs = [spec for (_, spec) in items]
    if args.jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_run_item, specs, chunksize=16))
    else:
        outcomes = [_run_item(spec) for spec in specs]
    results = [
        {"label": label, "pass": ok, "detail": detail}
        for (label, _), (ok, detail) in zip(items, outcomes)
    ]
    passed = sum(1 for r in results if r["pass"])
    all_ok = passed == len(results)
    if args.format == "json":
        print(
            json.dumps(
                {"suite": args.suite, "n": args.n, "pass": all_ok, "results": results}
            )
        )
    else:
        for r in results:
            print(("ok   " if r["pass"] else "FAIL ") + r["label"])
            if not r["pass"] and r["detail"] is not None:
                failures = r["detail"].get("failures")
                if failures:
                    for f in failures[:20]:
                        print(f"      {f}")
        print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if all_ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_common(p, matrix=False, element=False):
    p.add_argument("--n", type=int, help="matrix size; checked against inputs")
    p.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    if matrix:
        p.add_argument("--matrix", help='exponent matrix, rows ";"-separated: "1,0;0,1"')
    if element:
        p.add_argument("--element", help="element as JSON (schema of the bar/mult output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcanon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("basis", help="canonical basis element b(A)")
    _add_common(p, matrix=True)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("block", help="all b(A) in one row/column-sum block")
    _add_common(p)
    p.add_argument("--row-sums", required=True, help='comma list, e.g. "1,1"')
    p.add_argument("--col-sums", required=True, help='comma list, e.g. "1,1"')
    p.set_defaults(func=_cmd_block)

    p = sub.add_parser("det", help="quantum determinant")
    _add_common(p)
    p.set_defaults(func=_cmd_det)

    p = sub.add_parser("minor", help="quantum minor (corner via --t, or --rows/--cols)")
    _add_common(p)
    p.add_argument("--t", type=int, help="corner minor size")
    p.add_argument("--rows", help="comma list of row indices")
    p.add_argument("--cols", help="comma list of column indices")
    p.set_defaults(func=_cmd_minor)

    p = sub.add_parser("mult", help="product of monomials or elements")
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--matrix", action="append", help="monomial factor (repeatable)")
    p.add_argument("--element", action="append", help="element factor as JSON (repeatable)")
    p.set_defaults(func=_cmd_mult)

    p = sub.add_parser("bar", help="bar involution image")
    _add_common(p, matrix=True, element=True)
    p.set_defaults(func=_cmd_bar)

    p = sub.add_parser("sigma", help="transpose automorphism image")
    _add_common(p, matrix=True, element=True)
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("sl-basis", help="unit-determinant quotient basis element")
    _add_common(p, matrix=True)
    p.set_defaults(func=_cmd_sl_basis)

    p = sub.add_parser("uq", help="enveloping algebra action")
    uq_sub = p.add_subparsers(dest="uq_cmd", required=True)
    pa = uq_sub.add_parser("act", help="apply one generator")
    _add_common(pa, matrix=True, element=True)
    pa.add_argument("--side", choices=("left", "right"), required=True)
    pa.add_argument("--gen", required=True, help="generator, e.g. E1, F2, K1, Kinv1")
    pa.add_argument("--conv", choices=tuple(CONVENTIONS), default="standard")
    pa.set_defaults(func=_cmd_uq_act)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=VERIFY_SUITES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-total", type=int, default=2, help="degree cap for sweeps")
    p.add_argument("--t", type=int, help="restrict to one minor size")
    p.add_argument("--side", choices=("row", "column", "both"), default="both")
    p.add_argument("--conv", choices=tuple(CONVENTIONS), default="standard")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for --samples")
    p.add_argument(
        "--samples",
        type=int,
        default=0,
        help="extra random matrices one degree past the cap (det-mult, transpose, minor-mult)",
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        ParseError,
        PreconditionViolation,
        SizeMismatch,
        BadIndexSet,
        BadRegion,
        NotALadder,
        BadGeneratorIndex,
        json.JSONDecodeError,
        ValueError,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalInconsistency, DegreeBoundExceeded) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
