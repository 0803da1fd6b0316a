"""Batch front end: job files in, deterministic JSON reports out.

A job file describes one chain of Eisenstein steps over a ground field:

    {
      "p": 2,
      "mode": "EQUAL",
      "precision": 64,
      "steps": [
        {"name": "L", "base": "K", "coeffs": [[[1, 1]], [[1, 1]]]},
        {"name": "M", "base": "L", "coeffs": [[[], [[1, 0]]], [[], [[1, 0]]]]}
      ]
    }

A ground-field element is a list of [digit, power] pairs meaning
sum digit * pi_base^power; an element of a higher floor is a list of
base elements indexed by pi-power (coordinate form, short lists are
zero-padded).  Exit codes: 0 success, 2 validation error, 3 precision
or index resolution failure, 4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .base import INFINITY, GroundField, vp
from .copolygon import VK, VL, fstar, truncated_psi, valuation_function
from .errors import (
    BadTameDegree,
    IndexUnresolved,
    NotAUnit,
    NotDivisible,
    NotEisenstein,
    NotOneUnit,
    NotSeparable,
    PrecisionExhausted,
    TheoremViolation,
)
from .extension import EisensteinPoly, attach_eisenstein, different_exponent
from .invariants import inseparability_profile, phi
from .oracle import FULL, REDUCED, capital_phi
from .series import evaluate, expand_digits
from .tower import (
    compose_tower,
    default_horizon,
    ge_report,
    lambda_l,
    tame_lift_tower,
)

VALIDATION_ERRORS = (
    KeyError,
    TypeError,
    ValueError,
    json.JSONDecodeError,
    NotEisenstein,
    NotAUnit,
    NotOneUnit,
    NotDivisible,
    BadTameDegree,
    NotSeparable,
)


def decode_element(floor, data):
    """Decode the JSON element encoding relative to a given floor."""
    if not isinstance(data, list):
        raise ValueError("element must be a JSON array")
    if isinstance(floor, GroundField):
        out = floor.zero()
        pi = floor.uniformizer()
        for pair in data:
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, int) for v in pair)):
                raise ValueError("ground element entries are [digit, power]")
            digit, power = pair
            if power < 0:
                raise ValueError("negative power in element encoding")
            out = out + floor.from_int(digit) * pi ** power
        return out
    if len(data) > floor.degree:
        raise ValueError("too many coordinates for degree %d" % floor.degree)
    out = floor.zero()
    pi = floor.uniformizer()
    for i, coord in enumerate(data):
        out = out + floor.embed(decode_element(floor.base, coord)) * pi ** i
    return out


def load_job(path):
    with open(path, "r", encoding="utf-8") as fh:
        job = json.load(fh)
    p = job["p"]
    mode = job["mode"]
    precision = job["precision"]
    if mode == "EQUAL":
        ground = GroundField.equal_char(p, precision)
    elif mode == "MIXED":
        ground = GroundField.mixed_char(p, precision)
    else:
        raise ValueError("mode must be EQUAL or MIXED")
    steps = job["steps"]
    if not isinstance(steps, list) or not steps:
        raise ValueError("steps must be a non-empty list")
    floors = {"K": ground}
    order = []
    prev = "K"
    for step in steps:
        name = step["name"]
        base_name = step["base"]
        if name in floors:
            raise ValueError("duplicate step name %r" % name)
        if base_name != prev:
            raise ValueError("steps must chain: %r has base %r, expected %r"
                             % (name, base_name, prev))
        base = floors[base_name]
        coeffs = [decode_element(base, c) for c in step["coeffs"]]
        floors[name] = attach_eisenstein(base, EisensteinPoly(coeffs))
        order.append(name)
        prev = name
    return {"ground": ground, "floors": floors, "order": order}


def pick_field(job, name):
    if name is None:
        return job["order"][-1]
    if name not in job["floors"] or name == "K":
        raise ValueError("unknown field %r" % name)
    return name


def base_horizon(floor):
    return default_horizon(
        different_exponent(floor), floor.degree, vp(floor.degree, floor.p),
        floor.p_valuation(), floor.ceiling - floor.degree - 4,
    )


def floor_series(floor, horizon=None):
    target = floor.embed(floor.base.uniformizer())
    return expand_digits(target, horizon or base_horizon(floor))


def sweep_horizon(floor, cmax):
    """Two-phase horizon: profile once, then size for the oracle probes."""
    return sweep_ready(floor, floor.embed(floor.base.uniformizer()),
                       base_horizon(floor), cmax)


def fraction_arg(text):
    return Fraction(text)


def ser(value):
    """JSON-safe scalar: infinity -> null, Fraction -> int or [num, den]."""
    if value is INFINITY:
        return None
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return [value.numerator, value.denominator]
    return value


def plot_samples(fun, xmax=None):
    verts = fun.vertices()
    top = max([x for x, _ in verts], default=Fraction(0))
    if xmax is None:
        xmax = max(Fraction(4), top + 1)
    xs, out = Fraction(0), []
    while xs <= xmax:
        y = fun(xs)
        out.append([xs.numerator, xs.denominator, y.numerator, y.denominator])
        xs += Fraction(1, 4)
    return out


def parse_u(floor, text):
    if text is None or text == "1":
        return 1
    if text == "1+pi":
        return floor.one() + floor.uniformizer()
    return decode_element(floor, json.loads(text))


def cmd_invariants(job, args):
    floor = job["floors"][pick_field(job, args.field)]
    series = floor_series(floor)
    profile = inseparability_profile(series, floor.p_valuation())
    return {
        "n": profile.n,
        "nu": profile.nu,
        "tilde": [ser(v) for v in profile.tilde],
        "i": [ser(v) for v in profile.i],
    }


def cmd_phi(job, args):
    floor = job["floors"][pick_field(job, args.field)]
    series = floor_series(floor)
    profile = inseparability_profile(series, floor.p_valuation())
    if not 0 <= args.j <= profile.nu:
        raise ValueError("j must lie in [0, %d]" % profile.nu)
    fun = phi(profile, args.j)
    out = fun.as_dict()
    out["j"] = args.j
    if args.at is not None:
        value = fun(args.at)
        out["at"] = [args.at.numerator, args.at.denominator]
        out["value"] = [value.numerator, value.denominator]
    if args.emit_plot_data:
        out["samples"] = plot_samples(fun)
    return out


def cmd_copolygon(job, args):
    floor = job["floors"][pick_field(job, args.field)]
    series = floor_series(floor)
    profile = inseparability_profile(series, floor.p_valuation())
    es = fstar(series, floor)
    norm = VK if args.norm == "vK" else VL
    if norm == VK:
        fun = valuation_function(es, VK)
    elif args.j is not None:
        if not 0 <= args.j <= profile.nu:
            raise ValueError("j must lie in [0, %d]" % profile.nu)
        fun = truncated_psi(es, args.j)
    else:
        fun = valuation_function(es, VL)
    out = {"function": fun.as_dict(), "norm": args.norm,
           "j": args.j if norm == VL else None}
    if args.emit_plot_data:
        out["samples"] = plot_samples(fun)
    return out


def cmd_oracle(job, args):
    floor = job["floors"][pick_field(job, args.field)]
    series, profile = sweep_horizon(floor, args.c)
    if not 0 <= args.j <= profile.nu:
        raise ValueError("j must lie in [0, %d]" % profile.nu)
    flavor = REDUCED if args.flavor == "reduced" else FULL
    u = parse_u(floor, args.u)
    cap = capital_phi(series, floor, args.c, args.j, flavor=flavor, u=u)
    expected = phi(profile, args.j)(args.c)
    return {
        "j": args.j,
        "c": args.c,
        "flavor": args.flavor,
        "Phi": ser(Fraction(cap)),
        "phi": ser(Fraction(expected)),
        "match": Fraction(cap) == expected,
    }


def cmd_tame(job, args):
    floor = job["floors"][pick_field(job, args.field)]
    lift = tame_lift_tower(floor, args.e)
    target = evaluate(lift.series, lift.floor.uniformizer())
    horizon = min(lift.series.horizon,
                  lift.floor.ceiling - lift.floor.degree - 4)
    expanded = expand_digits(target, horizon)
    profile = inseparability_profile(expanded, lift.floor.p_valuation())
    base = inseparability_profile(floor_series(floor), floor.p_valuation())
    scaled = [args.e * v if v is not INFINITY else None for v in base.i]
    return {
        "e": args.e,
        "i": [ser(v) for v in profile.i],
        "scaled": scaled,
        "match": [ser(v) for v in profile.i] == scaled,
    }


def cmd_tower(job, args):
    if len(job["order"]) != 2:
        raise ValueError("tower reports need a job with exactly two steps")
    lower = job["floors"][job["order"][0]]
    upper = job["floors"][job["order"][1]]
    T = compose_tower(lower.poly, upper.poly)
    if not 0 <= args.l <= T.lower.nu + T.upper.nu:
        raise ValueError("l must lie in [0, %d]" % (T.lower.nu + T.upper.nu))
    x = args.at if args.at is not None else Fraction(0)
    report = ge_report(T, args.l, x)
    out = report.as_dict()
    if args.emit_plot_data:
        lam = lambda_l(T, args.l)
        ph = phi(T.composed, args.l)
        out["lambda_function"] = lam.as_dict()
        out["phi_function"] = ph.as_dict()
        out["samples"] = {
            "lambda": plot_samples(lam),
            "phi": plot_samples(ph),
        }
    return out


def cmd_verify(job, args):
    if args.cmax < 0:
        raise ValueError("cmax must be nonnegative")
    fields, ok = {}, True
    for name in job["order"]:
        floor = job["floors"][name]
        series, profile = sweep_ready(
            floor, floor.embed(floor.base.uniformizer()), base_horizon(floor),
            args.cmax)
        rows, good = oracle_grid(floor, series, profile, args.cmax)
        fields[name] = {"ok": good, "rows": rows}
        ok = ok and good
    if len(job["order"]) >= 2:
        # composed chain: expand the ground uniformizer on the top floor
        top = job["floors"][job["order"][-1]]
        target = top.embed(job["ground"].uniformizer())
        series, profile = sweep_ready(
            top, target, composed_horizon(top), args.cmax)
        rows, good = oracle_grid(top, series, profile, args.cmax)
        fields["/".join([job["order"][-1], "K"])] = {"ok": good, "rows": rows}
        ok = ok and good
    return {"cmax": args.cmax, "fields": fields, "ok": ok}


def sweep_ready(floor, target, first_horizon, cmax):
    """Expand target deep enough that every probe in the sweep resolves."""
    series = expand_digits(target, first_horizon)
    profile = inseparability_profile(series, floor.p_valuation())
    need = profile.i[0] + floor.p ** profile.nu * cmax + 2
    room = floor.ceiling - series.offset - 4
    if need > room:
        raise PrecisionExhausted(
            "sweep to c=%d needs horizon %d, only %d available; raise the "
            "job precision" % (cmax, need, room), bound=room)
    if need > series.horizon:
        series = expand_digits(target, need)
        profile = inseparability_profile(series, floor.p_valuation())
    return series, profile


def oracle_grid(floor, series, profile, cmax):
    rows, ok = [], True
    for j in range(profile.nu + 1):
        fun = phi(profile, j)
        for c in range(cmax + 1):
            expected = fun(c)
            cap = Fraction(capital_phi(series, floor, c, j))
            match = cap == expected
            ok = ok and match
            rows.append([j, c, ser(expected), ser(cap), match])
    return rows, ok


def composed_horizon(top):
    d = different_exponent(top)
    walk, scale = top, 1
    while walk.base is not walk.ground:
        scale *= walk.degree
        walk = walk.base
        d += scale * different_exponent(walk)
    degree = top.absolute_degree
    nu = vp(degree, top.p)
    return default_horizon(d, degree, nu, top.p_valuation(),
                           top.ceiling - degree - 4)


def emit(payload, tsv=False):
    if tsv and isinstance(payload, dict) and "fields" in payload:
        lines = []
        for name in sorted(payload["fields"]):
            for row in payload["fields"][name]["rows"]:
                lines.append("\t".join([name] + [json.dumps(v) for v in row]))
        lines.append("ok\t%s" % json.dumps(payload["ok"]))
        sys.stdout.write("\n".join(lines) + "\n")
        return
    sys.stdout.write(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ramify",
        description="Ramification invariants of totally ramified extensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        sp.add_argument("job", help="path to the job JSON file")
        if field:
            sp.add_argument("--field", default=None,
                            help="step name (default: last step)")

    sp = sub.add_parser("invariants", help="break indices of one step")
    common(sp)

    sp = sub.add_parser("phi", help="generalized break function of one step")
    common(sp)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--at", type=fraction_arg, default=None,
                    help="evaluate at a rational, e.g. 7/2")
    sp.add_argument("--emit-plot-data", action="store_true")

    sp = sub.add_parser("copolygon", help="valuation function of the twisted "
                        "coefficient series")
    common(sp)
    sp.add_argument("--j", type=int, default=None)
    sp.add_argument("--norm", choices=["vK", "vL"], default="vL")
    sp.add_argument("--emit-plot-data", action="store_true")

    sp = sub.add_parser("oracle", help="dual-number congruence probe")
    common(sp)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--flavor", choices=["full", "reduced"], default="full")
    sp.add_argument("--u", default=None,
                    help='perturbation unit: "1", "1+pi", or JSON coords')

    sp = sub.add_parser("tame", help="adjoin an e-th root of the uniformizer")
    common(sp)
    sp.add_argument("--e", type=int, required=True)

    sp = sub.add_parser("tower", help="two-step composition report")
    common(sp, field=False)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--at", type=fraction_arg, default=None)
    sp.add_argument("--emit-plot-data", action="store_true")

    sp = sub.add_parser("verify", help="oracle vs formula sweep per step")
    common(sp, field=False)
    sp.add_argument("--cmax", type=int, default=6)
    sp.add_argument("--tsv", action="store_true")
    return parser


COMMANDS = {
    "invariants": cmd_invariants,
    "phi": cmd_phi,
    "copolygon": cmd_copolygon,
    "oracle": cmd_oracle,
    "tame": cmd_tame,
    "tower": cmd_tower,
    "verify": cmd_verify,
}


def run(command, job, args):
    return COMMANDS[command](job, args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = load_job(args.job)
        payload = run(args.command, job, args)
    except VALIDATION_ERRORS as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2
    except OSError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2
    except (PrecisionExhausted, IndexUnresolved) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 3
    except (TheoremViolation, AssertionError) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 4
    emit(payload, tsv=getattr(args, "tsv", False))
    if args.command == "verify" and not payload["ok"]:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
