"""Command-line interface: ``orbilines <command> ...``.

Every command builds a :class:`CommandResult`; ``--json`` prints its payload
with sorted keys, otherwise the human-readable text is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import exactalg
from . import fuchsian as fg
from . import orbiline as ob
from . import periods, qseries, roots, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    status: str  # "ok" or "fail"
    payload: object
    human_text: str
    exit_code: int = EXIT_OK
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "payload": self.payload}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so ``run`` stays pure."""

    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _entry(x) -> str:
    if isinstance(x, fg.ZPoly) and set(x.c) <= {0}:
        x = x.c.get(0, 0)
    if isinstance(x, exactalg.Cyclotomic):
        if x.is_rational():
            return str(x.rational())
        try:
            return f"e({fg.turn_of_root(x)})"
        except ValueError:
            return str(x)
    return str(x)


def _matrix(m) -> list[list[str]]:
    return [[_entry(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# commands


def cmd_picard(args) -> CommandResult:
    sig = ob.parse_signature(args.signature)
    group, pic0 = ob.picard_group(sig), ob.pic0_group(sig)
    torsion = ob.torsion_elements(sig)
    c, w = ob.c_elem(sig), ob.omega(sig)
    payload = {
        "signature": list(sig),
        "free_rank": group.free_rank,
        "invariant_factors": list(group.invariant_factors),
        "torsion": str(pic0),
        "torsion_elements": [str(t) for t in torsion],
        "c": {"element": str(c), "degree": str(c.degree)},
        "omega": {"element": str(w), "degree": str(w.degree)},
        "generator_degrees": [str(ob.degree(ob.x_elem(sig, i))) for i in range(len(sig))],
        "lcm": ob.lcm_order(sig),
    }
    text = "\n".join(
        [
            f"Pic{tuple(sig)} = {group}",
            f"torsion: {pic0} ({len(torsion)} elements)",
            f"deg c = {c.degree}, omega = {w} of degree {w.degree}",
            f"degree map onto (1/{payload['lcm']})Z",
        ]
    )
    return CommandResult("ok", payload, text)


def cmd_h0(args) -> CommandResult:
    sig = ob.parse_signature(args.signature)
    x = ob.parse_element(sig, args.element)
    payload = {
        "element": str(x),
        "degree": str(x.degree),
        "h0": ob.h0(x),
        "h1": ob.h1(x),
        "euler_char": ob.euler_char(x),
    }
    text = f"{x}: deg {x.degree}, h0 = {payload['h0']}, h1 = {payload['h1']}, chi = {payload['euler_char']}"
    return CommandResult("ok", payload, text)


def cmd_hp(args) -> CommandResult:
    phi = fg.parse_character(args.group, args.character)
    hp = fg.hp_series(phi)
    blocks = fg.decompose_induction(phi)
    payload = {
        "character": str(phi),
        "hp": hp.to_json(),
        "text": str(hp),
        "blocks": [
            {
                "dim": b.dim,
                "exponents": [str(e) for e in b.exponents],
                "minimal_weight": fg.minimal_weight(b),
                "certified": b.certified,
            }
            for b in blocks
        ],
    }
    return CommandResult("ok", payload, str(hp))


def cmd_roots(args) -> CommandResult:
    sig = ob.parse_signature(args.signature)
    g = roots.star_graph(sig)
    if not roots.is_finite_type(g):
        payload = {"signature": list(sig), "finite_type": False, "max_rank": str(roots.UNBOUNDED)}
        return CommandResult("ok", payload, f"{tuple(sig)}: not of finite type, ranks unbounded")
    pos = roots.positive_roots(g)
    label = roots.dynkin_type(sig)
    payload = {
        "signature": list(sig),
        "finite_type": True,
        "type": label,
        "positive_roots": len(pos),
        "roots": [str(r) for r in pos] if args.list else None,
        "max_rank": roots.max_indecomposable_rank(sig),
    }
    text = f"type {label}, {len(pos)} positive roots, max rank {payload['max_rank']}"
    if args.list:
        text += "\n" + "\n".join(str(r) for r in pos)
    return CommandResult("ok", payload, text)


def cmd_qexp(args) -> CommandResult:
    f = qseries.named_series(args.name, Fraction(args.terms))
    return CommandResult("ok", f.to_json(), qseries.format_series(f, limit=args.terms))


def cmd_check(args) -> CommandResult:
    names = sorted(qseries.IDENTITIES) if args.name == "all" else [args.name]
    reports = [qseries.check_identity(n, args.terms) for n in names]
    ok = all(r.holds for r in reports)
    lines = []
    for r in reports:
        bad = r.first_failing_exponent
        where = "" if r.holds else f" (first difference at q^{qseries.exponent_str(bad)})"
        lines.append(f"{r.name}: {'holds' if r.holds else 'FAILS'} to O(q^{qseries.exponent_str(r.truncation)}){where}")
    payload = [r.to_json() for r in reports] if len(reports) > 1 else reports[0].to_json()
    if ok:
        return CommandResult("ok", payload, "\n".join(lines))
    return CommandResult("fail", payload, "\n".join(lines), EXIT_FAIL, "identity does not hold")


def cmd_ext(args) -> CommandResult:
    psi = fg.parse_character(args.group, args.psi)
    phi = fg.parse_character(args.group, args.phi)
    d = fg.ext_h1_dim(psi, phi)
    payload = {"sub": str(psi), "quotient": str(phi), "h1": d}
    return CommandResult("ok", payload, f"dim Ext^1({phi}, {psi}) = {d}")


def cmd_family(args) -> CommandResult:
    fam = fg.rank2_family(args.group)
    payload = {
        "group": fam.group,
        "sub": str(fam.sub),
        "quotient": str(fam.quotient),
        "rho_z": {k: _matrix(m) for k, m in fam.matrices.items()},
        "rho_inf": {k: _matrix(m) for k, m in fam.at_infinity.items()},
        "orders_verified": fam.verify_orders(),
    }
    lines = [f"0 -> {fam.sub} -> rho_z -> {fam.quotient} -> 0 on {fam.group}"]
    for k, m in payload["rho_z"].items():
        lines.append(f"rho_z({k}) = {m}   rho_inf({k}) = {payload['rho_inf'][k]}")
    return CommandResult("ok", payload, "\n".join(lines))


def cmd_z0(args) -> CommandResult:
    cfg = periods.PeriodConfig(truncation=args.terms, dps=args.prec, tolerance=10.0 ** -max(6, min(args.prec - 5, 60)))
    v = periods.z0(args.group, cfg, args.variant)
    payload = v.to_json()
    return CommandResult("ok", payload, f"z0({args.group}) = {v.value.real:.12f} {v.value.imag:+.12f}i")


def cmd_verify_all(args) -> CommandResult:
    results = verify.run_all()
    ok = all(r.passed for r in results)
    lines = [r.line() for r in results]
    for r in results:
        if not r.passed:
            lines.extend(f"      {d}" for d in r.details)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    payload = [r.to_json() for r in results]
    if ok:
        return CommandResult("ok", payload, "\n".join(lines))
    return CommandResult("fail", payload, "\n".join(lines), EXIT_FAIL, "acceptance criteria failed")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="orbilines",
        description="Orbifold lines, modular forms and their Hilbert series.",
        epilog="--json may appear anywhere to print the JSON payload instead of text.",
    )
    p.add_argument("--cyclotomic-order", type=int, default=None, help="ambient cyclotomic field order")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("picard", help="Picard group of a signature")
    s.add_argument("signature", help="comma-separated orders, e.g. 2,3,7")
    s.set_defaults(func=cmd_picard)

    s = sub.add_parser("h0", help="cohomology of a line bundle")
    s.add_argument("signature")
    s.add_argument("element", help='e.g. "2*x0 - c" or omega')
    s.set_defaults(func=cmd_h0)

    s = sub.add_parser("hp", help="Hilbert-Poincare series of M(phi)")
    s.add_argument("group", choices=fg.GROUP_NAMES)
    s.add_argument("character", help="e.g. chi^5 or a0*a1^2")
    s.set_defaults(func=cmd_hp)

    s = sub.add_parser("roots", help="root system of the star graph")
    s.add_argument("signature")
    s.add_argument("--list", action="store_true", help="list the positive roots")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("qexp", help="q-expansion of a named series")
    s.add_argument("name", choices=qseries.NAMED_SERIES)
    s.add_argument("--terms", type=int, default=10, help="truncation order in q")
    s.set_defaults(func=cmd_qexp)

    s = sub.add_parser("check", help="check a q-series identity")
    s.add_argument("name", choices=sorted(qseries.IDENTITIES) + ["all"])
    s.add_argument("--terms", type=int, default=30)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("ext", help="dimension of Ext^1(phi, psi)")
    s.add_argument("group", choices=fg.GROUP_NAMES)
    s.add_argument("psi", help="sub character")
    s.add_argument("phi", help="quotient character")
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("family", help="rank-two family rho_z")
    s.add_argument("group", choices=["gamma3", "index4G"])
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("z0", help="split value of the rank-two family")
    s.add_argument("group", choices=["gamma3", "index4G"])
    s.add_argument("--prec", type=int, default=30, help="working decimal digits")
    s.add_argument("--terms", type=int, default=200, help="q-series truncation")
    s.add_argument("--variant", choices=sorted(periods.INDEX4_FORMS), default="modular")
    s.set_defaults(func=cmd_z0)

    s = sub.add_parser("verify-all", help="run the acceptance suite")
    s.set_defaults(func=cmd_verify_all)
    return p


def run(argv: list[str] | None = None) -> CommandResult:
    parser = build_parser()
    argv = [a for a in (sys.argv[1:] if argv is None else argv) if a != "--json"]
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return CommandResult("fail", None, str(exc), EXIT_USAGE, "usage")
    if args.cyclotomic_order is not None:
        try:
            exactalg.set_cyclotomic_order(args.cyclotomic_order)
        except ValueError as exc:
            return CommandResult("fail", None, str(exc), EXIT_USAGE, "usage")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return CommandResult("fail", None, f"error: {msg}", EXIT_USAGE, str(msg))
    except ArithmeticError as exc:
        return CommandResult("fail", None, f"error: {exc}", EXIT_FAIL, str(exc))


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    stream = sys.stdout if result.payload is not None else sys.stderr
    if "--json" in argv and result.exit_code != EXIT_USAGE:
        print(json.dumps(result.to_json(), sort_keys=True, indent=2))
    else:
        print(result.human_text, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
