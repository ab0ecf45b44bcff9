"""Command-line driver: verification suites, object emission, coordinates, reduction traces."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from math import comb

from . import combinat, construct, nullres, qchar, resolution
from .wedge import deg1, wedge_all

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2

BUDGET_ENV = "QKZRES_BUDGET"
DEFAULT_BUDGET = {"nvars": 10, "cutoff": 200, "n_max": 30}


class BudgetError(ValueError):
    pass


def budget() -> dict:
    """Limits, overridable as QKZRES_BUDGET="nvars=12,cutoff=400"."""
    out = dict(DEFAULT_BUDGET)
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if raw:
        for part in raw.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in out:
                raise BudgetError(f"unknown budget key {key!r} in {BUDGET_ENV}")
            out[key] = int(val)
    return out


def _check_budget(nvars: int | None = None, cutoff: int | None = None, n_max: int | None = None):
    lim = budget()
    if nvars is not None and nvars > lim["nvars"]:
        raise BudgetError(f"N={nvars} exceeds the budget of {lim['nvars']} (set {BUDGET_ENV})")
    if cutoff is not None and cutoff > lim["cutoff"]:
        raise BudgetError(f"cutoff {cutoff} exceeds the budget of {lim['cutoff']}")
    if n_max is not None and n_max > lim["n_max"]:
        raise BudgetError(f"n-max {n_max} exceeds the budget of {lim['n_max']}")


class Report:
    def __init__(self, suite: str, params: dict):
        self.suite = suite
        self.params = params
        self.checks: list = []
        self.started = time.perf_counter()

    def add(self, name: str, passed: bool, detail=None):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        data = {"suite": self.suite, "params": self.params, "passed": self.passed, "checks": self.checks}
        if timing:
            data["seconds"] = round(time.perf_counter() - self.started, 3)
        return data


def _nvars(args) -> int | None:
    if getattr(args, "even", None) is not None:
        if args.even % 2 or args.even < 2:
            raise BudgetError("--even takes an even variable count >= 2")
        return args.even
    if getattr(args, "odd", None) is not None:
        if args.odd % 2 == 0 or args.odd < 1:
            raise BudgetError("--odd takes an odd variable count")
        return args.odd
    return None


def _sizes(args, default: list) -> list:
    nv = _nvars(args)
    sizes = default if nv is None else [nv]
    for s in sizes:
        _check_budget(nvars=s)
    return sizes


def _ells(args, nvars: int, default_max: int) -> list:
    if args.ell is not None:
        if not 0 <= args.ell <= nvars:
            raise BudgetError(f"--ell must lie in 0..{nvars}")
        return [args.ell]
    return list(range(0, min(nvars, default_max) + 1))


# ---------------------------------------------------------------------------
# suites

def suite_basis(args, rep: Report):
    for nv in _sizes(args, [2, 3, 4, 5, 6]):
        for ell in _ells(args, nv, 4 if nv % 2 == 0 else 3):
            basis = construct.enumerate_basis(nv, ell)
            rep.add(f"count N={nv} ell={ell}", len(basis) == comb(nv, ell),
                    {"size": len(basis), "expected": comb(nv, ell)})
            if ell == 0:
                continue
            bad = [b.label() for b, el in basis if not nullres.in_U(el)]
            rep.add(f"in_U N={nv} ell={ell}", not bad, {"failures": bad})
            wrong = [b.label() for b, el in basis
                     if construct.index_deg1(nv, b) != deg1(el)]
            rep.add(f"deg1 N={nv} ell={ell}", not wrong, {"failures": wrong})


def _det_cases(args) -> list:
    nv = _nvars(args)
    if nv is not None:
        _check_budget(nvars=nv)
        ells = [args.ell] if args.ell is not None else list(range(1, nv + 1))
        return [(nv, ell, args.mode) for ell in ells]
    return [(2, 1, "symbolic"), (2, 2, "symbolic"), (4, 1, "symbolic"), (4, 2, "symbolic"),
            (4, 3, "randomized"), (6, 1, "randomized"), (6, 2, "randomized"),
            (3, 1, "symbolic"), (3, 2, "symbolic"), (5, 1, "symbolic")]


def suite_det(args, rep: Report):
    for nv, ell, mode in _det_cases(args):
        r = nullres.det_identity_check(nv, ell, mode=mode, trials=args.trials, seed=args.seed)
        rep.add(f"det N={nv} ell={ell} {mode}", r["matches"], r)
    if _nvars(args) is None:
        for n in (1, 2, 3):
            c = nullres.p_matrix_ratio(n)
            rep.add(f"P-matrix det = Delta+ (2n={2 * n})", c == 1, {"c": str(c)})
        for nv in range(2, 9):
            for ell in range(0, nv + 1):
                r = nullres.degree_sum_check(nv, ell)
                rep.add(f"degree sum N={nv} ell={ell}", r["matches"], r)


def suite_span(args, rep: Report):
    ns = [args.n] if args.n is not None else [1, 2, 3, 4, 5]
    for n in ns:
        _check_budget(nvars=2 * n)
        ells = [args.ell] if args.ell is not None else range(0, 2 * n + 1)
        for ell in ells:
            r = combinat.span_rank(n, ell)
            rep.add(f"span rank n={n} ell={ell}", r["full"], r)
    if args.n is None:
        for n in (1, 2, 3):
            r = combinat.out_of_range_span_check(n)
            rep.add(f"out-of-range monomials n={n}", r["solved"] == r["monomials"] and not r["failures"],
                    {"monomials": r["monomials"], "solved": r["solved"]})
            for l1 in range(1, min(n, 3) + 1):
                s = combinat.reduction_summary(n, l1)
                ok = s["acyclic"] and s["proportional_images_exact"] and "unclassified" not in s["cases"]
                rep.add(f"reduction n={n} l1={l1}", ok, s)


def suite_tetra(args, rep: Report):
    _check_budget(n_max=args.n_max)
    rep.add("q-binomial recursions agree (m <= 30)", qchar.qbinom_recursions_agree(30))
    for n in range(0, args.n_max + 1):
        r = qchar.verify_tetranomial(n, detail=True)
        rep.add(f"tetranomial n={n}", r["identity"] and r["recursion"], r)


def suite_char(args, rep: Report):
    cutoff = args.cutoff
    _check_budget(cutoff=cutoff)
    for lam in range(0, 4):
        i = lam % 2
        b = qchar.branching(i, lam, cutoff)
        v = qchar.virasoro_product(Fraction(lam, 2), cutoff)
        rep.add(f"branching = product lambda={lam}", b == v, {"branching": b.to_json()})
    for i in (0, 1):
        rep.add(f"fermionic identity i={i}", qchar.fermionic_identity(i, min(cutoff, 15), 6),
                {"cutoff": min(cutoff, 15), "z_range": 6})
        rep.add(f"ising i={i}", qchar.ising_identity(i, cutoff), {"cutoff": cutoff})
    for nv in range(1, 9):
        for ell in range(0, nv // 2 + 1):
            s = qchar.ch_M(nv, ell, cutoff)
            rep.add(f"ch_M non-negative N={nv} ell={ell}", min(s.coeffs) >= 0)
            rep.add(f"euler N={nv} ell={ell}", resolution.euler_check(nv, ell, min(cutoff, 15)))
        for ell in range(0, nv + 1):
            rep.add(f"basis character N={nv} ell={ell}",
                    qchar.basis_character(nv, ell) == qchar.qbinom(nv, ell))


def suite_resolution(args, rep: Report):
    sizes = _sizes(args, [2, 4, 6, 3, 5])
    for nv in sizes:
        top = min(resolution.cor_range(nv), 3)
        ells = [args.ell] if args.ell is not None else range(0, top + 1)
        for ell in ells:
            r = resolution.quotient_vs_character(nv, ell, 10)
            rep.add(f"quotient dims N={nv} ell={ell}", r["matches"], r)
        for ell in range(1, 4):
            r = resolution.complex_check(nv, ell)
            rep.add(f"phi phi = 0 N={nv} ell={ell}", r["vanishes"], r)
        # the split is asserted for ell <= n - 1 in the even case
        for ell in range(0, nv // 2 if nv % 2 == 0 else nv):
            r = resolution.bas_partition_check(nv, ell)
            rep.add(f"Bas split N={nv} ell={ell}", r["passed"], r)
    if _nvars(args) is None:
        for nv, m, d in ((2, 0, 6), (4, 0, 6), (4, 1, 6), (6, 1, 4)):
            r = resolution.xi1_injectivity(nv, m, d)
            rep.add(f"xi1 injective N={nv} m={m}", r["injective"], r)


def suite_special(args, rep: Report):
    for nv in _sizes(args, [2, 4, 6, 3, 5]):
        r = combinat.specialization_bridge(nv)
        detail = {"checks": r["checks"], "delta_plus": r["delta_plus"], "failures": r["failures"]}
        if r["literal_sign_formula"] is not None:
            detail["literal_sign_formula"] = {str(k): v for k, v in r["literal_sign_formula"].items()}
        rep.add(f"specialization N={nv}", r["passed"], detail)


SUITES = {
    "basis": suite_basis,
    "det": suite_det,
    "span": suite_span,
    "tetra": suite_tetra,
    "char": suite_char,
    "resolution": suite_resolution,
    "special": suite_special,
}


# ---------------------------------------------------------------------------
# rendering

def _render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=False)
    if isinstance(data, dict) and "checks" in data:
        lines = [f"suite {data['suite']}: {'PASS' if data['passed'] else 'FAIL'}"]
        for c in data["checks"]:
            lines.append(f"  {'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(_render(d, fmt) for d in data)
    if isinstance(data, dict) and {"offset", "coeffs", "cutoff"} <= set(data):
        s = qchar.QSeries.from_json(data)
        return str(s)
    return "\n".join(f"{k}: {v}" for k, v in data.items()) if isinstance(data, dict) else str(data)


def _emit(data, args) -> int:
    print(_render(data, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("func", "format", "timing", "suite", "command") and v is not None}
        rep = Report(name, params)
        SUITES[name](args, rep)
        reports.append(rep)
    payload = [r.to_json(args.timing) for r in reports]
    print(_render(payload[0] if len(payload) == 1 else payload, args.format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _parse_parity(text: str) -> int:
    t = str(text).lower()
    if t in ("0", "even"):
        return 0
    if t in ("1", "odd"):
        return 1
    raise BudgetError(f"parity must be even/odd/0/1, got {text!r}")


def _parse_token(nvars: int, token: str):
    """'v2', 'w1', 'v0', 'xi3', 'Xi1', 'Xi2' -> generator."""
    for kind in ("Xi1", "Xi2"):
        if token == kind:
            return construct.generator(nvars, kind)
    for kind in ("xi", "v", "w"):
        if token.startswith(kind) and token[len(kind):].isdigit():
            return construct.generator(nvars, kind, int(token[len(kind):]))
    raise BudgetError(f"cannot parse generator {token!r}")


def cmd_emit(args) -> int:
    what = args.what
    if what == "basis":
        nv = _require_nvars(args)
        ell = args.ell if args.ell is not None else 1
        data = [{"index": b.to_json(), "label": b.label(), "element": el.to_json()}
                for b, el in construct.enumerate_basis(nv, ell)]
    elif what == "gen":
        nv = _require_nvars(args)
        if args.kind is None:
            raise BudgetError("emit gen needs --kind")
        data = construct.generator(nv, args.kind, args.index).to_json()
    elif what == "char":
        nv = args.n
        if nv is None:
            raise BudgetError("emit char needs --n (variable count)")
        if args.parity is not None and _parse_parity(args.parity) != nv % 2:
            raise BudgetError("--parity disagrees with --n")
        _check_budget(nvars=nv, cutoff=args.cutoff)
        ell = args.ell if args.ell is not None else 0
        fn = qchar.ch_M if args.which == "M" else qchar.ch_U
        data = fn(nv, ell, args.cutoff).to_json()
    elif what == "branch":
        _check_budget(cutoff=args.cutoff)
        parity = _parse_parity(args.parity if args.parity is not None else 0)
        lam = args.lam if args.lam is not None else parity
        data = qchar.branching(parity, lam, args.cutoff).to_json()
    elif what == "series":
        _check_budget(cutoff=args.cutoff)
        kind = args.kind or "virasoro"
        if kind == "virasoro":
            data = qchar.virasoro_product(Fraction(args.spin or "0"), args.cutoff).to_json()
        elif kind == "ising":
            data = qchar.ising_char(_parse_parity(args.parity or 0), args.cutoff).to_json()
        elif kind == "fermion-product":
            data = qchar.fermion_product(args.cutoff).to_json()
        elif kind == "qbinom":
            data = qchar.qbinom(args.m, args.r).to_json()
        else:
            raise BudgetError(f"unknown series kind {kind!r}")
    else:
        raise BudgetError(f"unknown object {what!r}")
    return _emit(data, args)


def _require_nvars(args) -> int:
    nv = _nvars(args)
    if nv is None:
        raise BudgetError("pass --even N or --odd N")
    _check_budget(nvars=nv)
    return nv


def cmd_coords(args) -> int:
    nv = _require_nvars(args)
    form = wedge_all([_parse_token(nv, t) for t in args.form], nv)
    if form.widened:
        form = form.narrowed()
    try:
        coeffs = nullres.coordinates(form)
    except nullres.NotInU as exc:
        print(json.dumps({"error": str(exc)}))
        return EXIT_FAIL
    basis = construct.basis_indices(nv, form.ell)
    data = {b.label(): str(c) for b, c in zip(basis, coeffs) if c}
    return _emit(data, args)


def cmd_reduce(args) -> int:
    n = args.n
    _check_budget(nvars=2 * n)
    left, _, right = args.descriptor.strip("()").partition("|")
    alphas = tuple(sorted(int(a) for a in left.split(",") if a.strip()))
    betas = [int(b) for b in right.split(",") if b.strip()]
    rs = tuple(sorted(n - b for b in betas))
    d = combinat.Descriptor(n, alphas, rs)
    if not d.is_valid():
        raise BudgetError(f"descriptor {args.descriptor!r} is not of the required normal form")
    print(json.dumps(combinat.reduction_trace(d), indent=2))
    return EXIT_OK


def cmd_qid(args) -> int:
    rep = Report(f"qid {args.which}", {"cutoff": args.cutoff, "n_max": args.n_max})
    if args.which == "tetra":
        suite_tetra(args, rep)
    elif args.which == "fermionic":
        _check_budget(cutoff=args.cutoff)
        for i in (0, 1):
            rep.add(f"fermionic i={i}", qchar.fermionic_identity(i, args.cutoff, args.z_range))
    elif args.which == "ising":
        _check_budget(cutoff=args.cutoff)
        for i in (0, 1):
            rep.add(f"ising i={i}", qchar.ising_identity(i, args.cutoff))
    else:
        _check_budget(cutoff=args.cutoff)
        for lam in range(0, 4):
            rep.add(f"branching lambda={lam}", qchar.branching(lam % 2, lam, args.cutoff)
                    == qchar.virasoro_product(Fraction(lam, 2), args.cutoff))
    print(_render(rep.to_json(args.timing), args.format))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _add_size_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--even", type=int, metavar="N", help="even variable count N = 2n")
    g.add_argument("--odd", type=int, metavar="N", help="odd variable count N = 2n+1")
    p.add_argument("--ell", type=int)


def _add_common(p):
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qkzres", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("all",) + tuple(SUITES))
    _add_size_flags(v)
    v.add_argument("--n", type=int, help="half rank n for the span suite")
    v.add_argument("--n-max", type=int, default=12)
    v.add_argument("--cutoff", type=int, default=20)
    v.add_argument("--mode", choices=("symbolic", "randomized"), default="symbolic")
    v.add_argument("--trials", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="print a constructed object as JSON")
    e.add_argument("what", choices=("basis", "gen", "char", "branch", "series"))
    _add_size_flags(e)
    e.add_argument("--kind")
    e.add_argument("--index", type=int)
    e.add_argument("--n", type=int, help="variable count for char")
    e.add_argument("--parity")
    e.add_argument("--which", choices=("U", "M"), default="U")
    e.add_argument("--lambda", dest="lam", type=int)
    e.add_argument("--spin")
    e.add_argument("--m", type=int)
    e.add_argument("--r", type=int)
    e.add_argument("--cutoff", type=int, default=20)
    _add_common(e)
    e.set_defaults(func=cmd_emit)

    for name, what in (("char", "char"), ("branch", "branch")):
        a = sub.add_parser(name, help=f"shorthand for 'emit {what}'")
        a.add_argument("--n", type=int)
        a.add_argument("--ell", type=int)
        a.add_argument("--parity")
        a.add_argument("--which", choices=("U", "M"), default="U")
        a.add_argument("--lambda", dest="lam", type=int)
        a.add_argument("--cutoff", type=int, default=20)
        _add_common(a)
        a.set_defaults(func=cmd_emit, what=what, even=None, odd=None)

    c = sub.add_parser("coords", help="coordinates of a wedge of generators in the basis")
    _add_size_flags(c)
    c.add_argument("form", nargs="+", help="generator tokens such as v1 w2 xi1 Xi2")
    _add_common(c)
    c.set_defaults(func=cmd_coords)

    r = sub.add_parser("reduce", help="rewriting trace of an out-of-range monomial")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("descriptor", help="alpha indices | beta indices, e.g. '1,2,4|2,4'")
    r.set_defaults(func=cmd_reduce)

    q = sub.add_parser("qid", help="check a q-series identity")
    q.add_argument("which", choices=("tetra", "fermionic", "ising", "branching"))
    q.add_argument("--n-max", type=int, default=12)
    q.add_argument("--cutoff", type=int, default=20)
    q.add_argument("--z-range", type=int, default=6)
    _add_common(q)
    q.set_defaults(func=cmd_qid)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetError, construct.IndexError_) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
