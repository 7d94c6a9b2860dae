"""Command-line front end.

Every subcommand reads one ``.sft`` or ``.dsys`` file.  A ``.dsys`` input is
turned into its shift (with the Frobenius as twist) wherever a shift is needed.
Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bridge, decomp, ff, io, sft, spectral, zeta
from .errors import (
    DidNotConverge,
    ParseError,
    SemanticError,
    SymdynError,
)

COMMANDS = ("analyze", "decompose", "entropy", "limit-degree", "zeta", "twisted-zeta",
            "points", "strong-core", "from-sft")


@dataclass
class Report:
    command: str
    input_digest: str
    result: dict
    warnings: list = field(default_factory=list)
    text: str = ""

    def to_json(self) -> str:
        payload = {"command": self.command, "input_digest": self.input_digest,
                   "result": self.result, "warnings": self.warnings}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering helpers

def _q(v: Fraction) -> str:
    return str(Fraction(v))


def _decimal(v: Fraction, digits: int, up: bool) -> str:
    scaled = v * 10**digits
    n = math.ceil(scaled) if up else math.floor(scaled)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _bracket_digits(lo: Fraction, hi: Fraction) -> int:
    if hi == lo:
        return 6
    return max(6, 2 - math.floor(math.log10(hi - lo)))


def _entropy_payload(b: spectral.EntropyBracket) -> dict:
    digits = _bracket_digits(b.lambda_lo, b.lambda_hi)
    log_lo, log_hi = b.log_bounds()
    centre = (log_lo + log_hi) / 2
    # half-width plus slack for the float logs
    radius = (log_hi - log_lo) / 2 + 1e-12
    return {
        "lambda_lo": _q(b.lambda_lo),
        "lambda_hi": _q(b.lambda_hi),
        "lambda_lo_decimal": _decimal(b.lambda_lo, digits, up=False),
        "lambda_hi_decimal": _decimal(b.lambda_hi, digits, up=True),
        "entropy": f"{centre:.{digits}f} ± {radius:.1e}",
        "iterations": b.iterations,
    }


def _entropy_text(p: dict) -> str:
    return (f"lambda in [{p['lambda_lo_decimal']}, {p['lambda_hi_decimal']}]\n"
            f"  exact lo = {p['lambda_lo']}\n  exact hi = {p['lambda_hi']}\n"
            f"h = log(lambda) = {p['entropy']}\n")


def _labels(x: sft.Sft, idx) -> list:
    return [x.states[i] for i in idx]


def _rf_payload(rf: zeta.RationalFunction) -> dict:
    return {"rational": str(rf), "numerator": list(rf.numerator.coeffs),
            "denominator": list(rf.denominator.coeffs)}


def _series(s: zeta.PowerSeries) -> list:
    return [_q(c) for c in s.coeffs]


def _ld_payload(r) -> dict:
    if isinstance(r, spectral.Stabilized):
        return {"stabilized": True, "limit_degree": r.degree, "since_l": r.since_l,
                "ratios": [_q(v) for v in r.ratios]}
    return {"stabilized": False, "ratios": [_q(v) for v in r.ratios]}


def _ld_text(p: dict) -> str:
    ratios = ", ".join(p["ratios"])
    if p["stabilized"]:
        return (f"limit degree {p['limit_degree']} (stable from l = {p['since_l']})\n"
                f"ratios: {ratios}\n")
    return f"not stabilized\nratios: {ratios}\n"


# ---------------------------------------------------------------------------
# inputs

@dataclass
class Input:
    kind: str
    name: str
    digest: str
    x: sft.Sft
    perm: tuple | None = None
    system: bridge.DifferenceSystem | None = None
    built: bridge.SftWithFrobenius | None = None


def _read(path: str, args) -> Input:
    try:
        data = Path(path).read_bytes()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None
    digest = hashlib.sha256(data).hexdigest()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise io.InputSyntaxError(f"input is not UTF-8 (byte {err.start})") from None
    kind, value = io.load(text, args.scan_limit)
    name = Path(path).name
    if kind == "sft":
        x, perm = value
        return Input(kind, name, digest, x, perm)
    built = bridge.build_sft(value, None, args.scan_limit)
    return Input(kind, name, digest, built.sft, built.twist.perm, value, built)


def _twist(inp: Input) -> zeta.TwistData:
    if inp.perm is None:
        raise SemanticError("twisted-zeta needs a 'perm:' line in the .sft file")
    return zeta.make_twist(inp.x, inp.perm)


# ---------------------------------------------------------------------------
# commands

def _decompose(inp: Input, args, warnings):
    x = inp.x
    d = decomp.communicating_classes(x)
    ess, comps = decomp.sigma_component_indices(x)
    core = decomp.strong_core(x)
    result = {
        "classes": [{"states": _labels(x, c), "has_edge": e}
                    for c, e in zip(d.classes, d.has_edge)],
        "condensation_edges": [list(e) for e in d.condensation_edges],
        "irreducible": [list(c.states) for c in decomp.irreducible_components(x)],
        "sigma_components": [_labels(ess, c) for c in comps],
        "strong_core": _core_payload(core),
    }
    if ess.n != x.n:
        warnings.append(f"pruned {x.n - ess.n} states without infinite continuations")
    lines = ["communicating classes (block-triangular order):"]
    for k, c in enumerate(result["classes"]):
        lines.append(f"  C{k}: {' '.join(c['states'])}" + ("" if c["has_edge"] else "  (no edge)"))
    lines.append("condensation edges: " + (", ".join(f"C{j}->C{i}" for j, i in d.condensation_edges)
                                           or "none"))
    lines.append("irreducible components: " + ("; ".join(" ".join(c) for c in result["irreducible"])
                                               or "none"))
    lines.append("sigma-components: " + ("; ".join(" ".join(c) for c in result["sigma_components"])
                                         or "none"))
    lines.append(_core_text(result["strong_core"]))
    return result, "\n".join(lines) + "\n"


def _core_payload(core: decomp.PeriodicQuotient) -> list:
    return [{"states": list(c.states), "modulus": c.modulus, "labels": list(c.labels)}
            for c in core.components]


def _core_text(payload) -> str:
    lines = ["strong core moduli: " + (", ".join(str(c["modulus"]) for c in payload) or "none")]
    for c in payload:
        labels = " ".join(f"{s}:{l}" for s, l in zip(c["states"], c["labels"]))
        lines.append(f"  mod {c['modulus']}: {labels}")
    return "\n".join(lines)


def _entropy(inp: Input, args, warnings):
    try:
        if inp.system is not None:
            b = bridge.system_entropy(inp.system, args.tol, None, args.scan_limit, args.max_iter)
        else:
            b = spectral.entropy_bounds(inp.x, args.tol, args.max_iter)
    except DidNotConverge as err:
        warnings.append(str(err))
        b = err.bracket
    payload = _entropy_payload(b)
    return payload, _entropy_text(payload)


def _limit_degree(inp: Input, args, warnings):
    if inp.system is not None:
        r = bridge.limit_degree_system(inp.system, args.max_l, args.window, None, args.scan_limit)
    else:
        x = sft.prune(inp.x)
        if x.n != inp.x.n:
            warnings.append(f"pruned {inp.x.n - x.n} states without infinite continuations")
        r = spectral.limit_degree(x, args.max_l, args.window)
    payload = _ld_payload(r)
    return payload, _ld_text(payload)


def _zeta(inp: Input, args, warnings):
    rf = zeta.dynamical_zeta(inp.x)
    s = zeta.zeta_series(inp.x, args.order)
    payload = {"zeta": _rf_payload(rf), "series": _series(s), "order": args.order,
               "char_poly_reversed": list(zeta.char_poly_reversed(inp.x).coeffs)}
    text = (f"zeta = {rf}\nnumerator: {payload['zeta']['numerator']}\n"
            f"denominator: {payload['zeta']['denominator']}\n"
            f"series: {', '.join(payload['series'])}\n")
    return payload, text


def _twisted_zeta(inp: Input, args, warnings):
    tw = _twist(inp)
    counts = zeta.twisted_counts(tw, tw.order)
    rf = zeta.twisted_log_derivative(tw)
    s = zeta.twisted_zeta_series(tw, args.order)
    payload = {"order_of_twist": tw.order, "counts": counts, "log_derivative": _rf_payload(rf),
               "series": _series(s), "order": args.order}
    text = (f"d = {tw.order}\nN_1..N_d: {', '.join(map(str, counts))}\n"
            f"log-derivative = {rf}\nseries: {', '.join(payload['series'])}\n")
    return payload, text


def _points(inp: Input, args, warnings):
    if inp.system is None:
        raise UsageError("points needs a .dsys file")
    rows = []
    for n in range(1, args.max_n + 1):
        direct = bridge.point_count_direct(inp.system, n, None, args.scan_limit)
        matrix = bridge.point_count_matrix(inp.system, n, None, args.scan_limit)
        rows.append({"n": n, "direct": direct, "matrix": matrix, "match": direct == matrix})
    text = "n\tdirect\tmatrix\tmatch\n" + "".join(
        f"{r['n']}\t{r['direct']}\t{r['matrix']}\t{'ok' if r['match'] else 'MISMATCH'}\n"
        for r in rows)
    return {"rows": rows, "all_match": all(r["match"] for r in rows)}, text


def _strong_core(inp: Input, args, warnings):
    payload = _core_payload(decomp.strong_core(inp.x))
    return {"strong_core": payload}, _core_text(payload) + "\n"


def _from_sft(inp: Input, args, warnings):
    if inp.kind != "sft":
        raise UsageError("from-sft needs a .sft file")
    ctx = ff.build_field(args.p, args.e, args.scan_limit)
    system = bridge.sft_to_system(inp.x, ctx)
    text = f"# generated from {inp.name}\n" + system.to_text()
    return {"dsys": text}, text


def _analyze(inp: Input, args, warnings):
    result = {"kind": inp.kind}
    parts = []
    if inp.system is not None:
        built = inp.built
        result["field"] = {"p": inp.system.ctx.p, "e": inp.system.ctx.e,
                           "modulus": list(inp.system.ctx.modulus)}
        result["splitting_degree"] = built.m
        result["alphabet"] = list(built.sft.states)
        result["frobenius"] = list(built.twist.perm)
        parts.append(f"base field F_{inp.system.ctx.q}, alphabet in F_(q^{built.m}): "
                     + " ".join(built.sft.states))
        parts.append("frobenius: " + " ".join(
            f"{a}->{built.sft.states[j]}" for a, j in zip(built.sft.states, built.twist.perm)))
    result["matrix"] = [list(r) for r in inp.x.transition]
    parts.append("transition matrix:\n" + "\n".join(
        "  " + " ".join(map(str, r)) for r in inp.x.transition))
    pruned = sft.prune(inp.x)
    result["pruned_states"] = list(pruned.states)
    dres, dtext = _decompose(inp, args, warnings)
    result["decomposition"] = dres
    parts.append(dtext.rstrip())
    if pruned.is_empty:
        result["entropy"] = None
        parts.append("entropy: no infinite points")
    else:
        try:
            eres, etext = _entropy(inp, args, warnings)
            result["entropy"] = eres
            parts.append(etext.rstrip())
        except SymdynError as err:
            result["entropy"] = None
            parts.append(f"entropy: {type(err).__name__}")
        lres, ltext = _limit_degree(inp, args, warnings)
        result["limit_degree"] = lres
        parts.append(ltext.rstrip())
    if inp.x.n:
        zres, ztext = _zeta(inp, args, warnings)
        result["zeta"] = zres
        parts.append(ztext.rstrip())
        fixed = sft.enumerate_periodic(inp.x, 1, args.cap)
        result["fixed_states"] = [inp.x.states[w[0]] for w in fixed]
    if inp.perm is not None:
        tres, ttext = _twisted_zeta(inp, args, warnings)
        result["twisted_zeta"] = tres
        parts.append(ttext.rstrip())
    if inp.system is not None:
        ess, comps, orbits = bridge.frobenius_component_orbits(inp.system, None, args.scan_limit)
        result["spec_sigma_components"] = len(orbits)
        result["frobenius_orbits"] = [[_labels(ess, comps[k]) for k in o] for o in orbits]
        parts.append(f"sigma-components of the spectrum (Frobenius orbits): {len(orbits)}")
        pres, ptext = _points(inp, args, warnings)
        result["points"] = pres
        parts.append(ptext.rstrip())
    return result, "\n".join(parts) + "\n"


_HANDLERS = {
    "analyze": _analyze, "decompose": _decompose, "entropy": _entropy,
    "limit-degree": _limit_degree, "zeta": _zeta, "twisted-zeta": _twisted_zeta,
    "points": _points, "strong-core": _strong_core, "from-sft": _from_sft,
}


# ---------------------------------------------------------------------------
# argument parsing

def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer") from None


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _fraction(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("file")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--tol", type=_fraction, default=spectral.DEFAULT_TOL)
    common.add_argument("--max-iter", type=_positive_int, default=spectral.DEFAULT_MAX_ITER)
    common.add_argument("--order", type=_nonneg_int, default=10)
    common.add_argument("--max-n", type=_positive_int, default=12)
    common.add_argument("--max-l", type=_positive_int, default=12)
    common.add_argument("--window", type=_positive_int, default=3)
    common.add_argument("--scan-limit", type=_positive_int, default=None)
    common.add_argument("--cap", type=_positive_int, default=None)

    parser = _Parser(prog="symdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "from-sft":
            p.add_argument("--p", type=_positive_int, required=True)
            p.add_argument("--e", type=_positive_int, default=1)
    return parser


def dispatch(argv) -> tuple:
    """Run one command; returns (exit code, Report or None, diagnostic text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.scan_limit is None:
            args.scan_limit = _env_int("SYMDYN_SCAN_LIMIT", ff.DEFAULT_SCAN_LIMIT)
        if args.cap is None:
            args.cap = _env_int("SYMDYN_CAP", sft.DEFAULT_CAP)
        inp = _read(args.file, args)
        warnings = []
        result, text = _HANDLERS[args.command](inp, args, warnings)
        result["input"] = inp.name
        warnings = list(dict.fromkeys(warnings))
        report = Report(args.command, inp.digest, result, warnings, text)
        if args.command == "points" and not result["all_match"]:
            return 1, report, "PointCountMismatch: direct and matrix counts differ\n"
        return 0, report, ""
    except UsageError as err:
        return 2, None, f"usage error: {err}\n"
    except ParseError as err:
        return 2, None, f"{type(err).__name__}: {err}\n"
    except SymdynError as err:
        return 1, None, f"{type(err).__name__}: {err}\n"
    except (AssertionError, ArithmeticError, RecursionError, MemoryError) as err:
        return 1, None, f"InternalError: {type(err).__name__}: {err}\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report, diag = dispatch(argv)
    if report is not None:
        if "--json" in argv:
            sys.stdout.write(report.to_json())
        else:
            sys.stdout.write(report.text)
            for w in report.warnings:
                sys.stderr.write(f"warning: {w}\n")
    if diag:
        sys.stderr.write(diag)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
