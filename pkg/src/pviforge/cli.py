"""Command line front end.

    pviforge orbit --group klein [--action b3]
    pviforge orbit --triple FILE
    pviforge solve --group klein [--verify PARAM.json]
    pviforge reconstruct --group klein --s 5/4 [--skip-monodromy]
    pviforge selfcheck --seed 7 --cases 200

Settings come from ./pviforge.toml (``key = value`` lines, ``#`` comments)
and are overridden by flags.  Exit codes: 0 success, 2 orbit overflow,
3 unparsable input, 4 singular point, 5 any other pipeline failure.
"""
import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from mpmath import fabs, mp, mpf, nint

from . import catalog
from .char_variety import (
    Sl2Triple,
    braid2_apply,
    enumerate_orbit,
    fricke_residual,
    phi,
    pvi_params_from_theta,
    theta_from_lambda_mu,
    traces_from_triple,
)
from .errors import OrbitOverflow, ParseError, PviForgeError, SingularPointError
from .fuchsian import (
    assemble_B,
    b_traces_from_B,
    b_traces_from_jm,
    jm_from_xy,
    numeric_monodromy,
    x_from_y,
    y_from_B,
)
from .jimbo import jimbo_input_from_traces, leading_term
from .numerics import Poly, RationalFunction, as_mpc
from .serialize import decode_matrix, decode_number, dumps, load, to_text
from .series_curve import (
    RationalParameterization,
    curve_from_branches,
    extend_branch,
    klein_parameterization,
    verify_parameterization,
)

CONFIG_FILE = "pviforge.toml"
GROUPS = ("klein",)


@dataclass
class RunConfig:
    precision: int = 256
    order: int = 30
    tol: object = None
    max_orbit: int = 10000
    out: object = None
    format: str = "json"
    seed: int = 0

    def validate(self):
        if self.precision < 64:
            raise ParseError("precision must be at least 64 bits")
        if self.order < 4:
            raise ParseError("series order must be at least 4")
        if self.max_orbit < 1:
            raise ParseError("max-orbit must be positive")
        if self.format not in ("json", "text"):
            raise ParseError("format must be json or text")
        return self


_CASTS = {"precision": int, "order": int, "max_orbit": int, "seed": int, "tol": mpf, "format": str, "out": str}


def read_config(path=CONFIG_FILE):
    """Parse ``key = value`` lines; missing file means defaults."""
    values = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return values
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{n}: expected key = value")
        key, val = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise ParseError(f"{path}:{n}: unknown key {key!r}")
        val = val.strip('"').strip("'")
        try:
            values[key] = _CASTS[key](val)
        except (ValueError, TypeError) as e:
            raise ParseError(f"{path}:{n}: bad value for {key}") from e
    return values


def make_config(args, path=CONFIG_FILE):
    cfg = RunConfig(**read_config(path))
    for key in _CASTS:
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, _CASTS[key](v) if key == "tol" else v)
    return cfg.validate()


# ------------------------------------------------------------------ orbits


def _binary_label(d, tol):
    bits = []
    for v in d.quadratics:
        v = as_mpc(v)
        r = nint(v.real)
        if r not in (0, 1) or fabs(v - r) > tol:
            return None
        bits.append(int(r))
    return 4 * bits[0] + 2 * bits[1] + bits[2]


def label_orbit(orbit, tol=None):
    """Relabel orbit elements by the binary number m12 m23 m13 when possible.

    Returns (order, perm1, perm2) where order[k] is the index of the element
    carrying label k.  Falls back to enumeration order.
    """
    tol = mpf(2) ** (-(mp.prec // 2)) if tol is None else tol
    n = len(orbit)
    labels = [_binary_label(d, tol) for d in orbit.elements]
    if None in labels or sorted(labels) != list(range(n)):
        labels = list(range(n))
    binary = labels != list(range(n)) or all(_binary_label(d, tol) == k for k, d in enumerate(orbit.elements))
    order = [0] * n
    for i, lab in enumerate(labels):
        order[lab] = i
    perms = []
    for p in (orbit.perm_b1sq, orbit.perm_b2sq):
        perms.append(tuple(labels[p[order[k]]] for k in range(n)))
    return order, perms[0], perms[1], binary


def klein_seed():
    return phi(catalog.klein_reflection_data())


def orbit_report(seed, action="P3", max_size=10000, tol=None):
    orbit = enumerate_orbit(seed, action=action, dedup_tol=tol, max_size=max_size)
    order, p1, p2, binary = label_orbit(orbit)
    n = len(orbit)
    rows = []
    for k in range(n):
        d = orbit.elements[order[k]]
        rows.append({"label": k, "values": d})
    rep = {
        "size": n,
        "action": action,
        "elements": rows,
        "table": [[(k >> 2) & 1, (k >> 1) & 1, k & 1] for k in range(n)] if binary else None,
        "beta1_squared": {"images": list(p1), "cycles": catalog.cycle_notation(p1), "type": list(catalog.cycle_type(p1))},
        "beta2_squared": {"images": list(p2), "cycles": catalog.cycle_notation(p2), "type": list(catalog.cycle_type(p2))},
    }
    prod = catalog.compose(p2, p1)
    rep["product"] = {"images": list(prod), "cycles": catalog.cycle_notation(prod), "type": list(catalog.cycle_type(prod))}
    if catalog.is_transitive((p1, p2), n):
        rep["genus"] = catalog.genus_from_permutations(p1, p2)
    else:
        rep["genus"] = None
    rep["group_order"] = catalog.group_order((p1, p2))
    return rep, orbit, order


def load_triple(path):
    """SL2 triple file: {"matrices": [M1, M2, M3]} with entries as JSON numbers,
    "p/q" strings or [re, im] pairs."""
    doc = load(path)
    mats = doc.get("matrices") if isinstance(doc, dict) else None
    if not isinstance(mats, list) or len(mats) != 3:
        raise ParseError("triple file needs a list of three matrices under 'matrices'")
    mats = [decode_matrix(M) for M in mats]
    if any(len(M) != 2 or len(M[0]) != 2 for M in mats):
        raise ParseError("triple matrices must be 2x2")
    return Sl2Triple(*mats)


def cmd_orbit(args, cfg):
    action = "B3" if (args.action or "p3").lower() == "b3" else "P3"
    if args.triple:
        seed = traces_from_triple(load_triple(args.triple)).numeric()
    else:
        seed = klein_seed()
    rep, _, _ = orbit_report(seed, action, cfg.max_orbit, cfg.tol)
    rep["input"] = args.triple or args.group
    return rep


# ------------------------------------------------------------------ solve


def klein_theta():
    return theta_from_lambda_mu(catalog.KLEIN_LAMBDA, catalog.KLEIN_MU)


def branch_leads(group="klein", max_size=10000):
    """Orbit elements in label order together with their Jimbo leading terms."""
    seed = klein_seed()
    orbit = enumerate_orbit(seed, action="P3", max_size=max_size)
    order = label_orbit(orbit)[0]
    theta = klein_theta()
    out = []
    for k in order:
        d = orbit.elements[k]
        inp = jimbo_input_from_traces(d, theta)
        out.append((d, inp, leading_term(inp)))
    return out


def parse_parameterization(doc):
    def poly(v):
        if not isinstance(v, list) or not v:
            raise ParseError("polynomial coefficients must be a non-empty list")
        try:
            return Poly([Fraction(str(c)) for c in v])
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("polynomial coefficients must be rational") from e

    try:
        y, t = doc["y"], doc["t"]
        return RationalParameterization(
            RationalFunction(poly(y["num"]), poly(y["den"])), RationalFunction(poly(t["num"]), poly(t["den"]))
        )
    except (KeyError, TypeError) as e:
        raise ParseError("parameterization needs y and t, each with num and den lists") from e


def cmd_solve(args, cfg):
    perturb = None if args.perturb_lead is None else decode_number(args.perturb_lead)
    check = parse_parameterization(load(args.verify)) if args.verify else None
    theta = klein_theta()
    params = pvi_params_from_theta(theta)
    leads = branch_leads(args.group, cfg.max_orbit)
    reports, series = [], []
    for k, (d, inp, L) in enumerate(leads):
        if perturb is not None and k == 0:
            L = type(L)(L.coefficient * (1 + perturb), L.exponent, L.prefactor, L.s, L.s_hat, L.sigma)
        br = extend_branch(L, params, cfg.order, tol=cfg.tol)
        series.append(br.series)
        reports.append(
            {
                "branch_index": k,
                "sigma": inp.sigma,
                "prefactor": L.prefactor,
                "s": L.s,
                "s_hat": L.s_hat,
                "coefficient": L.coefficient,
                "exponent": L.exponent,
                "conditions": "ok",
                "free_orders": list(br.free_orders),
            }
        )
    curve = curve_from_branches(series, tol=cfg.tol)
    rep = {"theta": list(theta), "params": list(params), "order": cfg.order, "branches": reports, "curve": curve}
    if check is not None:
        res = verify_parameterization(check, params)
        rep["verify"] = {"residual": str(res), "identically_zero": res.is_zero()}
    return rep


# ------------------------------------------------------------------ reconstruct


def reconstruct_at(s, param=None, lam=None, mu=None, monodromy=True, word=()):
    """Rank-three system at the parameter value s, with its monodromy report."""
    p = klein_parameterization() if param is None else param
    lam = catalog.KLEIN_LAMBDA if lam is None else lam
    mu = catalog.KLEIN_MU if mu is None else mu
    theta = theta_from_lambda_mu(lam, mu)
    try:
        t, y = p.at(s)
        yp = p.derivatives()[0](s)
    except ZeroDivisionError as e:
        raise SingularPointError(f"s = {s} is a pole of the parameterization") from e
    if t in (0, 1):
        raise SingularPointError(f"s = {s} maps to the critical value t = {t}")
    x = x_from_y(y, yp, t, theta)
    jm = jm_from_xy(x, y, t, theta)
    traces = b_traces_from_jm(jm)
    sysB = assemble_B(traces, lam, t, mu)
    rep = {
        "s": s,
        "t": t,
        "y": y,
        "x": x,
        "jm_constraints": list(jm.constraint_residuals()),
        "b_traces": {"12": traces[0], "23": traces[1], "13": traces[2], "321": traces[3]},
        "system": sysB,
        "y_from_system": y_from_B(sysB),
    }
    check = b_traces_from_B(sysB)
    rep["b_traces_roundtrip"] = all(a == b for a, b in zip(check, traces))
    if monodromy:
        rep["monodromy"] = numeric_monodromy(sysB, word=tuple(word))
    return rep, sysB


def parse_word(text):
    """Braid word like "1,-2" (generators 1, 2 and their inverses)."""
    if not text:
        return ()
    try:
        word = tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError as e:
        raise ParseError(f"bad braid word {text!r}") from e
    if any(g not in (1, -1, 2, -2) for g in word):
        raise ParseError("braid generators are 1, -1, 2, -2")
    return word


def cmd_reconstruct(args, cfg):
    try:
        s = Fraction(args.s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"cannot read s = {args.s!r} as a rational number") from e
    param = parse_parameterization(load(args.param)) if args.param else None
    rep, _ = reconstruct_at(s, param, monodromy=not args.skip_monodromy, word=parse_word(args.loop_word))
    return rep


# ------------------------------------------------------------------ selfcheck


def _random_sl2(rng):
    a = Fraction(rng.choice((-1, 1)) * rng.randint(1, 6), rng.randint(1, 4))
    b = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return [[a, b], [c, (1 + b * c) / a]]


def cmd_selfcheck(args, cfg):
    """Seeded randomized checks: Killing certificate and Fricke preservation."""
    from .killing import killing_factorize
    from .errors import DegenerateDiagonal

    rng = random.Random(cfg.seed)
    cases = args.cases
    cert = 0
    for _ in range(cases):
        n = rng.randint(2, 6)
        u = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]
        try:
            cert += killing_factorize(u).certified
        except DegenerateDiagonal:
            cert += 1
    worst = Fraction(0)
    for _ in range(cases):
        T = Sl2Triple(*(_random_sl2(rng) for _ in range(3)))
        d = traces_from_triple(T)
        word = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(1, 6))]
        try:
            r1 = fricke_residual(braid2_apply(d, word))
        except PviForgeError:
            continue
        worst = max(worst, abs(r1))
    return {"seed": cfg.seed, "cases": cases, "killing_certified": cert, "fricke_residual_max": worst}


# ------------------------------------------------------------------ main


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"error": "usage", "stage": "parse", "message": message}) + "\n")
        sys.exit(3)


def build_parser():
    ap = _Parser(prog="pviforge", description="Algebraic PVI solutions from reflection group data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int)
    common.add_argument("--order", type=int)
    common.add_argument("--tol", type=str)
    common.add_argument("--max-orbit", dest="max_orbit", type=int)
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--out")
    common.add_argument("--seed", type=int)
    common.add_argument("--config", default=CONFIG_FILE)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    o = sub.add_parser("orbit", parents=[common], help="braid group orbit of trace data")
    src = o.add_mutually_exclusive_group()
    src.add_argument("--group", choices=GROUPS)
    src.add_argument("--triple", help="JSON file with an SL2 triple")
    o.add_argument("--action", choices=("p3", "b3", "P3", "B3"))
    s = sub.add_parser("solve", parents=[common], help="branch series and the solution curve")
    s.add_argument("--group", choices=GROUPS, default="klein")
    s.add_argument("--verify", help="JSON parameterization to substitute into PVI")
    s.add_argument("--perturb-lead", help="scale branch 0's leading coefficient by 1 + EPS (negative control)")
    r = sub.add_parser("reconstruct", parents=[common], help="rank-three Fuchsian system at a parameter value")
    r.add_argument("--group", choices=GROUPS, default="klein")
    r.add_argument("--s", required=True)
    r.add_argument("--param", help="JSON parameterization (defaults to the group's own)")
    r.add_argument("--skip-monodromy", action="store_true")
    r.add_argument("--loop-word", help="braid word changing the loop system, e.g. 1,-2")
    c = sub.add_parser("selfcheck", parents=[common], help="seeded randomized invariant checks")
    c.add_argument("--cases", type=int, default=100)
    return ap


COMMANDS = {"orbit": cmd_orbit, "solve": cmd_solve, "reconstruct": cmd_reconstruct, "selfcheck": cmd_selfcheck}


def _fail(code, exc):
    stage = getattr(exc, "stage", "general")
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "stage": stage, "message": str(exc)}, sort_keys=True) + "\n")
    return code


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args, args.config)
    except ParseError as e:
        return _fail(3, e), None
    with mp.workprec(cfg.precision):
        try:
            rep = COMMANDS[args.command](args, cfg)
            rep["command"] = args.command
            rep["config"] = {k: v for k, v in asdict(cfg).items() if k not in ("out", "format")}
            text = dumps(rep) if cfg.format == "json" else to_text(rep) + "\n"
        except OrbitOverflow as e:
            return _fail(2, e), None
        except ParseError as e:
            return _fail(3, e), None
        except SingularPointError as e:
            return _fail(4, e), None
        except PviForgeError as e:
            return _fail(5, e), None
        except (ArithmeticError, ValueError) as e:
            return _fail(5, e), None
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0, rep


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
