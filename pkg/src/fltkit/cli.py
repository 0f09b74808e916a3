"""Command-line front end.

    fltkit curve analyze "(0,1,-8)"
    fltkit curve ap "[1,1]" --pmax 50
    fltkit frey 1 8 9 1
    fltkit qexp delta --prec 10
    fltkit hecke 2 --prec 8
    fltkit dim 11
    fltkit reduce 0 0.5
    fltkit lattice check --radius 40
    fltkit galois frob 2 3
    fltkit classical abc 1 8 9

Exit codes: 0 success, 1 usage error, 2 domain error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import apcount, classical, ecurve, galois, lattice, matrix2, qexp
from .emit import emit
from .errors import DomainError
from .exactnum import primes_up_to

log = logging.getLogger("fltkit")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


@dataclass
class CliConfig:
    precision: int = 64
    pmax: int = 1000
    radius: int = 40
    curve_tol: float = lattice.CURVE_TOL
    point_tol: float = lattice.POINT_TOL
    format: str = "json"

    def validate(self):
        for name in ("precision", "pmax", "radius"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")
        if self.curve_tol <= 0 or self.point_tol <= 0:
            raise UsageError("tolerances must be positive")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")


class UsageError(Exception):
    pass


_CONFIG_KEYS = {"prec": "precision", "precision": "precision", "pmax": "pmax", "radius": "radius",
                "curve_tol": "curve_tol", "point_tol": "point_tol", "format": "format"}


def read_config(path: str) -> dict:
    """Parse a ``key = value`` file; blank lines and ``#`` comments are skipped."""
    out = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    types = {f.name: f.type for f in fields(CliConfig)}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        name = _CONFIG_KEYS[key]
        conv = {"int": int, "float": float, "str": str}[types[name]]
        try:
            out[name] = conv(value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return out


def resolve_config(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig()
    if args.config:
        for k, v in read_config(args.config).items():
            setattr(cfg, k, v)
    for flag, name in (("prec", "precision"), ("pmax", "pmax"), ("radius", "radius"), ("format", "format")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.validate()
    return cfg


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--prec", type=int, default=None, help="q-series truncation order")
    p.add_argument("--pmax", type=int, default=None, help="prime scan bound")
    p.add_argument("--radius", type=int, default=None, help="lattice truncation radius")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--config", default=None, help="key = value file, overridden by flags")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="fltkit", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    curve = sub.add_parser("curve", parents=[common], help="elliptic curve tools")
    curve_sub = curve.add_subparsers(dest="curve_command", parser_class=_Parser)
    for name in ("analyze", "ap"):
        c = curve_sub.add_parser(name, parents=[common])
        c.add_argument("model", help='"a1,a2,a3,a4,a6", "[A,B]" or "(r1,r2,r3)"')

    frey = sub.add_parser("frey", parents=[common], help="Frey curve of a^P + b^P = c^P")
    for name in ("a", "b", "c", "P"):
        frey.add_argument(name, type=int)

    q = sub.add_parser("qexp", parents=[common], help="q-expansions")
    q.add_argument("series", choices=("E4", "E6", "delta", "j"))

    h = sub.add_parser("hecke", parents=[common], help="T_n on a level-1 form")
    h.add_argument("n", type=int)
    h.add_argument("--form", choices=("delta", "E4", "E6"), default="delta")

    d = sub.add_parser("dim", parents=[common], help="dim S_2(Gamma_0(N))")
    d.add_argument("N", type=int)

    r = sub.add_parser("reduce", parents=[common], help="reduce a point of H into the fundamental domain")
    r.add_argument("re", type=float)
    r.add_argument("im", type=float)

    lat = sub.add_parser("lattice", parents=[common], help="lattice / p-function checks")
    lat_sub = lat.add_subparsers(dest="lattice_command", parser_class=_Parser)
    chk = lat_sub.add_parser("check", parents=[common])
    chk.add_argument("--samples", type=int, default=20)
    chk.add_argument("--seed", type=int, default=0)
    tate = lat_sub.add_parser("tate", parents=[common])
    tate.add_argument("ell", type=int)
    tate.add_argument("depth", type=int)

    g = sub.add_parser("galois", parents=[common], help="finite-field Frobenius")
    g_sub = g.add_subparsers(dest="galois_command", parser_class=_Parser)
    fr = g_sub.add_parser("frob", parents=[common])
    fr.add_argument("p", type=int)
    fr.add_argument("k", type=int)
    cy = g_sub.add_parser("cyclo", parents=[common])
    cy.add_argument("p", type=int)
    cy.add_argument("k", type=int)
    cy.add_argument("a", type=int)

    cl = sub.add_parser("classical", parents=[common], help="classical exponent cases")
    cl_sub = cl.add_subparsers(dest="classical_command", parser_class=_Parser)
    py = cl_sub.add_parser("pythag", parents=[common])
    py.add_argument("a", type=int)
    py.add_argument("b", type=int)
    re_ = cl_sub.add_parser("reduce-exp", parents=[common])
    re_.add_argument("n", type=int)
    n4 = cl_sub.add_parser("n4", parents=[common])
    n4.add_argument("bound", type=int)
    ei = cl_sub.add_parser("eisenstein", parents=[common])
    ei.add_argument("range", type=int)
    ab = cl_sub.add_parser("abc", parents=[common])
    ab.add_argument("a", type=int)
    ab.add_argument("b", type=int)
    ab.add_argument("c", type=int)
    sc = cl_sub.add_parser("abc-scan", parents=[common])
    sc.add_argument("cmax", type=int)
    sc.add_argument("--threshold", type=float, default=1.4)
    return parser


# --- subcommand bodies: each returns (report, header-or-None) ---


def _curve_analyze(args, cfg):
    m = ecurve.parse_model(args.model)
    inv = ecurve.invariants(m)
    table = {}
    for p in primes_up_to(cfg.pmax):
        try:
            table[p] = ecurve.reduction_type(m, p).value
        except DomainError as exc:
            table[p] = f"unsupported: {exc}"
    report = {
        "model": str(m),
        "short_form": str(ecurve.to_short_form(m)),
        "disc": inv.disc,
        "disc_std": inv.disc_std,
        "c4": inv.c4,
        "c6": inv.c6,
        "j": inv.j,
        "two_torsion": {
            "points": [str(P) for P in ecurve.two_torsion(m).points],
            "structure": ecurve.two_torsion(m).structure,
        },
        "bad_reduction": {str(p): t for p, t in table.items() if t != "good"},
        "primes_scanned": len(table),
    }
    try:
        exps = ecurve.conductor_exponents(m)
        report["conductor"] = ecurve.conductor_from_exponents(exps)
        report["conductor_exponents"] = {str(p): e for p, e in sorted(exps.items())}
    except DomainError as exc:
        report["conductor"] = None
        report["conductor_error"] = str(exc)
    return report, None


def _curve_ap(args, cfg):
    m = ecurve.parse_model(args.model)
    table = apcount.build_ap_table(m, cfg.pmax)
    rows = [(n, table.values[n]) for n in sorted(table.values)]
    return rows, ["n", "a_n"]


def _frey(args, cfg):
    f = ecurve.frey_curve(args.a, args.b, args.c, args.P)
    checks = {}
    for p in primes_up_to(min(cfg.pmax, 199)):
        if p < 5 or f.disc % p == 0:
            continue
        formula = apcount.frey_ap_formula(f, p)
        counted = p + 1 - apcount.count_points(f.model, p)
        checks[str(p)] = {"formula": formula, "count": counted, "agree": formula == counted}
    report = f.as_dict()
    report["ap_cross_check"] = checks
    report["ap_all_agree"] = all(c["agree"] for c in checks.values())
    return report, None


def _qexp(args, cfg):
    prec = cfg.precision
    series = {
        "E4": lambda: qexp.eisenstein_series(4, prec),
        "E6": lambda: qexp.eisenstein_series(6, prec),
        "delta": lambda: qexp.delta_series(prec),
        "j": lambda: qexp.j_series(prec),
    }[args.series]()
    return series, None


def _hecke(args, cfg):
    base = {"delta": qexp.delta_series, "E4": lambda n: qexp.eisenstein_series(4, n),
            "E6": lambda n: qexp.eisenstein_series(6, n)}[args.form]
    f = base(args.n * cfg.precision)
    tf = qexp.hecke_Tn(f, args.n)
    lead = 1 if args.form == "delta" else 0
    eigen = tf.coeff(lead) / f.coeff(lead)
    is_eigen = tf == f.scale(eigen).truncate(tf.prec)
    return {"form": args.form, "n": args.n, "series": tf, "eigenvalue": eigen, "is_eigenform": is_eigen}, None


def _dim(args, cfg):
    return qexp.dim_S2_gamma0(args.N), None


def _reduce(args, cfg):
    z = matrix2.UpperHalfPoint(args.re, args.im)
    w, gamma, word = matrix2.reduce_with_word(z)
    return {"input": str(z), "reduced": str(w), "gamma": list(gamma.as_tuple()), "word": word}, None


def _lattice_check(args, cfg):
    rng = np.random.default_rng(args.seed)
    out = {}
    for name, L in (("square", lattice.square_lattice(cfg.radius)), ("hexagonal", lattice.hexagonal_lattice(cfg.radius))):
        samples = [L.point(*rng.uniform(0.05, 0.95, 2)) for _ in range(args.samples)]
        resid = max(lattice.ode_residual(L, z) for z in samples)
        even = max(abs(lattice.wp_eval(L, -z).wp - lattice.wp_eval(L, z).wp) for z in samples)
        per = max(abs(lattice.wp_eval(L, z + L.w1).wp - lattice.wp_eval(L, z).wp) for z in samples)
        pairs = [(lattice.TorusPoint(*rng.uniform(0.05, 0.95, 2)), lattice.TorusPoint(*rng.uniform(0.05, 0.95, 2))) for _ in range(args.samples)]
        hom = max(lattice.homomorphism_error(L, a, b) for a, b in pairs)
        out[name] = {
            "G4": lattice.eisenstein_Gk_numeric(L, 4).value,
            "G6": lattice.eisenstein_Gk_numeric(L, 6).value,
            "max_ode_residual": resid,
            "max_even_error": even,
            "max_period_error": per,
            "max_homomorphism_error": hom,
            "ok": resid < cfg.curve_tol and even < cfg.curve_tol and per < cfg.curve_tol and hom < cfg.curve_tol,
        }
    out["radius"] = cfg.radius
    return out, None


def _lattice_tate(args, cfg):
    return lattice.tate_truncation(args.ell, args.depth), None


def _galois_frob(args, cfg):
    t = galois.generator(args.p, args.k)
    report = {
        "p": args.p,
        "k": args.k,
        "modulus": list(galois.irreducible_modulus(args.p, args.k)),
        "frob_t": str(galois.frobenius(t)),
        "order": galois.frobenius_order(args.p, args.k),
    }
    if args.p**args.k <= galois.MAX_ENUM_SIZE and args.k <= galois.MAX_ENUM_DEGREE:
        report["subfields"] = {str(d): n for d, n in galois.subfield_lattice(args.p, args.k).items()}
    return report, None


def _galois_cyclo(args, cfg):
    sigma = galois.CycloAut(args.p, args.k, args.a)
    tower = galois.cyclotomic_tower(args.p, args.k, args.a)
    return {"chi": galois.cyclotomic_character(sigma).value, "modulus": sigma.modulus, "tower": list(tower.digits)}, None


def _classical(args, cfg):
    cmd = args.classical_command
    if cmd == "pythag":
        return classical.pythag_param(args.a, args.b), None
    if cmd == "reduce-exp":
        return classical.exponent_reduce(args.n), None
    if cmd == "n4":
        sols = classical.n4_search(args.bound)
        return {"bound": args.bound, "solutions": [list(s) for s in sols]}, None
    if cmd == "eisenstein":
        return classical.eisenstein_lemma_check(args.range), None
    if cmd == "abc":
        q = classical.abc_quality(args.a, args.b, args.c)
        return {
            "a": q.a, "b": q.b, "c": q.c, "rad": q.rad, "q": q.q,
            "flt_exponent_bound": classical.flt_exponent_bound(args.a, args.b, args.c),
            "flt_bound_note": "assumes K = 1; illustrative, not a theorem",
        }, None
    if cmd == "abc-scan":
        rows = classical.abc_scan(args.cmax, args.threshold)
        return [(t.a, t.b, t.c, t.rad, t.q) for t in rows], ["a", "b", "c", "rad", "q"]
    raise UsageError("classical needs a subcommand")


def dispatch(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        handler = _route(args)
        report, header = handler(args, cfg)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    stdout.write(emit(report, cfg.format, header))
    return EXIT_OK


def _route(args):
    cmd = args.command
    if cmd is None:
        raise UsageError(build_parser().format_usage())
    if cmd == "curve":
        if args.curve_command is None:
            raise UsageError("curve needs analyze or ap")
        return {"analyze": _curve_analyze, "ap": _curve_ap}[args.curve_command]
    if cmd == "lattice":
        if args.lattice_command is None:
            raise UsageError("lattice needs check or tate")
        return {"check": _lattice_check, "tate": _lattice_tate}[args.lattice_command]
    if cmd == "galois":
        if args.galois_command is None:
            raise UsageError("galois needs frob or cyclo")
        return {"frob": _galois_frob, "cyclo": _galois_cyclo}[args.galois_command]
    if cmd == "classical" and args.classical_command is None:
        raise UsageError("classical needs a subcommand")
    return {"frey": _frey, "qexp": _qexp, "hecke": _hecke, "dim": _dim, "reduce": _reduce, "classical": _classical}[cmd]


def main() -> None:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
