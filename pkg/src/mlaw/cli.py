"""``mlaw`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
limit, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .catalog import describe
from .cosets import DEFAULT_MAX_COSETS, CosetLimitError, EnumerationLimits, group_from_cosets, todd_coxeter
from .families import DEFAULT_MAX_ORDER, builtin_family, group_from_permutations, parse_cycles
from .group import FiniteGroup, GroupError, OrderLimitError, abelian_invariants, derived_subgroup
from .mla import AXIOMS, EnumerationMismatch, MlaStructure, StructureError, enumerate_structures, verify_axioms
from .presentation import PresentationError, parse_presentation
from .wedge import DEFAULT_WEDGE_ORDER, WedgeInvariantError, WedgeSquare, commutator_hom, exterior_square, tensor_square

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_INVARIANT = 4

_FAMILY_TAGS = {"D": "dihedral", "Q": "quaternion", "S": "symmetric", "A": "alternating"}


class InputError(ValueError):
    """Malformed command-line input."""


@dataclass(frozen=True)
class RunConfig:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_order: int = DEFAULT_WEDGE_ORDER
    method: str = "both"
    output_format: str = "text"
    threads: int = 1

    def __post_init__(self) -> None:
        for name in ("max_cosets", "max_order", "threads"):
            if getattr(self, name) < 1:
                raise InputError(f"{name.replace('_', '-')} must be positive")
        if self.method not in ("wedge", "direct", "both"):
            raise InputError(f"unknown method {self.method!r}")

    @property
    def limits(self) -> EnumerationLimits:
        return EnumerationLimits(max_cosets=self.max_cosets)


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Flags override ``MLAW_MAX_COSETS`` / ``MLAW_MAX_ORDER``, which override defaults."""

    def pick(flag, env):
        return flag if flag is not None else _env_int(env)

    max_cosets = pick(getattr(args, "max_cosets", None), "MLAW_MAX_COSETS")
    max_order = pick(getattr(args, "max_order", None), "MLAW_MAX_ORDER")
    return RunConfig(
        max_cosets=DEFAULT_MAX_COSETS if max_cosets is None else max_cosets,
        max_order=DEFAULT_WEDGE_ORDER if max_order is None else max_order,
        method=getattr(args, "method", None) or "both",
        output_format="json" if getattr(args, "json", False) else "text",
        threads=getattr(args, "threads", None) or 1,
    )


def parse_group_spec(spec: str, cfg: RunConfig | None = None) -> FiniteGroup:
    """Build a group from ``D:n``, ``Q:n``, ``S:n``, ``A:n``, ``Z:mxn``, ``Z:n``,
    ``SL23``, ``V4``, ``perm:<file>`` or ``pres:<presentation>``."""
    cfg = cfg or RunConfig()
    text = spec.strip()
    if text.upper() == "SL23":
        return builtin_family("sl23")
    if text.upper() == "V4":
        return builtin_family("klein")
    head, sep, body = text.partition(":")
    if not sep:
        raise InputError(f"unrecognized group spec {spec!r}")
    if head == "perm":
        return _group_from_perm_file(body)
    if head == "pres":
        p = parse_presentation(body)
        G, _ = group_from_cosets(todd_coxeter(p, cfg.limits), p)
        return G
    if head in _FAMILY_TAGS:
        if not re.fullmatch(r"\d+", body):
            raise InputError(f"{head}:n needs a positive integer, got {body!r}")
        return builtin_family(_FAMILY_TAGS[head], int(body), max_order=DEFAULT_MAX_ORDER)
    if head == "Z":
        m = re.fullmatch(r"(\d+)(?:x(\d+))?", body)
        if not m:
            raise InputError(f"Z:mxn needs positive integers, got {body!r}")
        if m.group(2) is None:
            return builtin_family("cyclic", int(m.group(1)))
        return builtin_family("cyclic-product", int(m.group(1)), int(m.group(2)))
    raise InputError(f"unknown group family {head!r}")


def _group_from_perm_file(path: str) -> FiniteGroup:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read permutation file: {exc}") from None
    gens = [parse_cycles(ln) for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not gens:
        raise InputError(f"no generators in {path}")
    return group_from_permutations(gens, DEFAULT_MAX_ORDER)


def _group_info(spec: str, G: FiniteGroup) -> dict:
    D = derived_subgroup(G)
    orders = G.element_orders
    return {
        "spec": spec,
        "order": G.order,
        "abelian": G.is_abelian,
        "generators": [{"name": G.names[g], "order": int(orders[g])} for g in G.generators],
        "derived_order": D.order,
        "abelianization_invariants": list(abelian_invariants(G).divisors),
        "center_order": len(G.center),
    }


def _wedge_info(ws: WedgeSquare) -> dict:
    W = ws.W
    return {
        "kind": ws.kind,
        "order": W.order,
        "abelian": W.is_abelian,
        "invariants": list(abelian_invariants(W).divisors) if W.is_abelian else None,
        "name": describe(W),
    }


def _schur_info(ws: WedgeSquare) -> dict:
    data = commutator_hom(ws)
    return {"order": data.multiplier.order, "invariants": list(data.invariants.divisors), "name": str(data.invariants)}


def _report(**parts) -> dict:
    out = {"group": None, "wedge": None, "schur_multiplier": None, "structures": None}
    out.update(parts)
    return out


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_group(info: dict) -> None:
    gens = ", ".join(f"{g['name']} (order {g['order']})" for g in info["generators"]) or "none"
    inv = " x ".join(f"Z_{d}" for d in info["abelianization_invariants"]) or "1"
    print(f"group: {info['spec']}")
    print(f"order: {info['order']}")
    print(f"abelian: {_yes(info['abelian'])}")
    print(f"generators: {gens}")
    print(f"derived subgroup order: {info['derived_order']}")
    print(f"abelianization: {inv}")
    print(f"center order: {info['center_order']}")


def _print_wedge(info: dict, schur: dict | None) -> None:
    sym = "^" if info["kind"] == "exterior" else "(x)"
    print(f"{info['kind']} square G {sym} G: order {info['order']}, {info['name']}")
    if schur is not None:
        print(f"Schur multiplier M(G): {schur['name']} (order {schur['order']})")


def _emit(cfg: RunConfig, report: dict, text) -> None:
    if cfg.output_format == "json":
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        text()


def cmd_group(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    G = parse_group_spec(args.spec, cfg)
    info = _group_info(args.spec, G)
    _emit(cfg, _report(group=info), lambda: _print_group(info))
    return EXIT_OK


def _check_wedge_bound(G: FiniteGroup, cfg: RunConfig) -> None:
    if G.order > cfg.max_order:
        raise OrderLimitError(f"group order {G.order} exceeds max-order {cfg.max_order}")


def cmd_wedge(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    G = parse_group_spec(args.spec, cfg)
    _check_wedge_bound(G, cfg)
    build = tensor_square if args.kind == "tensor" else exterior_square
    ws = build(G, cfg.limits, cfg.max_order)
    winfo = _wedge_info(ws)
    schur = _schur_info(ws) if ws.kind == "exterior" else None
    report = _report(group=_group_info(args.spec, G), wedge=winfo, schur_multiplier=schur)
    _emit(cfg, report, lambda: _print_wedge(winfo, schur))
    return EXIT_OK


def _class_info(c) -> dict:
    out = {"ideal_order": c.ideal_order}
    if c.ideal_invariants is not None:
        out["ideal_invariants"] = list(c.ideal_invariants.divisors)
    else:
        out["ideal_name"] = describe(c.ideal.as_group())
    out["representative_count"] = len(c.representatives)
    out["trivial"] = c.is_trivial_class
    out["commutator"] = c.is_commutator_class
    return out


def cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    G = parse_group_spec(args.spec, cfg)
    _check_wedge_bound(G, cfg)
    rep = enumerate_structures(G, cfg.method, cfg.limits, cfg.max_order, cfg.threads)
    winfo = schur = None
    if rep.wedge is not None:
        winfo = _wedge_info(rep.wedge)
        schur = _schur_info(rep.wedge)
    classes = [_class_info(c) for c in rep.classes]
    structures = {
        "method": rep.method,
        "raw_count": len(rep.structures),
        "agreement": rep.agreement,
        "classes": classes,
        "lie_simple": rep.lie_simple,
    }
    if rep.stats is not None:
        s = rep.stats
        structures["filter"] = {
            "homs": s.homs,
            "failed_jacobi": s.failed_jacobi,
            "failed_equivariance": s.failed_equivariance,
            "accepted": s.accepted,
        }
    report = _report(group=_group_info(args.spec, G), wedge=winfo, schur_multiplier=schur, structures=structures)

    def text() -> None:
        print(f"group: {args.spec} (order {G.order})")
        if winfo is not None:
            _print_wedge(winfo, schur)
        if "filter" in structures:
            f = structures["filter"]
            print(
                f"homomorphisms G ^ G -> G: {f['homs']}, failed Jacobi kernel: {f['failed_jacobi']}, "
                f"failed equivariance: {f['failed_equivariance']}"
            )
        print(f"method: {rep.method}")
        if rep.agreement is not None:
            print(f"enumerators agree: {_yes(rep.agreement)}")
        print(f"valid star tables: {len(rep.structures)}")
        print(f"classes: {len(classes)}")
        for i, c in enumerate(classes, 1):
            ideal = " x ".join(f"Z_{d}" for d in c.get("ideal_invariants", [])) or "1"
            ideal = c.get("ideal_name", ideal)
            tags = [t for t in ("trivial", "commutator") if c[t]]
            suffix = f" [{', '.join(tags)}]" if tags else ""
            print(f"  {i}. ideal {ideal}, order {c['ideal_order']}, {c['representative_count']} table(s){suffix}")
        print(f"Lie simple: {'true' if rep.lie_simple else 'false'}")

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    G = parse_group_spec(args.spec, cfg)
    try:
        obj = json.loads(Path(args.table).read_text())
    except OSError as exc:
        raise InputError(f"cannot read table file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"table file is not JSON: {exc}") from None
    s = MlaStructure.from_json(G, obj)
    rep = verify_axioms(G, s.star)
    axioms = [
        {"axiom": i + 1, "law": law, "pass": ok, "witness": list(rep.violations.get(i + 1, ())) or None}
        for i, (law, ok) in enumerate(zip(AXIOMS, rep.per_axiom))
    ]
    report = _report(group=_group_info(args.spec, G))
    report["verification"] = {"valid": rep.valid, "axioms": axioms}

    def text() -> None:
        for a in axioms:
            line = f"axiom {a['axiom']} ({a['law']}): {'pass' if a['pass'] else 'FAIL'}"
            if a["witness"]:
                names = ", ".join(G.names[x] for x in a["witness"])
                line += f" witness ({names}) = {tuple(a['witness'])}"
            print(line)
        if rep.first_violation is not None:
            k, w = rep.first_violation
            print(f"first violation: axiom {k} at {tuple(w)}")
        print(f"valid: {'true' if rep.valid else 'false'}")

    _emit(cfg, report, text)
    return EXIT_OK if rep.valid else EXIT_INVALID


def _add_limits(p: argparse.ArgumentParser, threads: bool = False) -> None:
    p.add_argument("--max-cosets", type=int, default=None, help="cap on live cosets (env MLAW_MAX_COSETS)")
    p.add_argument(
        "--max-order", type=int, default=None, help=f"largest group order for squares (env MLAW_MAX_ORDER, default {DEFAULT_WEDGE_ORDER})"
    )
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    if threads:
        p.add_argument("--threads", type=int, default=None, help="worker threads (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlaw",
        description="Tensor and exterior squares, Schur multipliers and multiplicative Lie algebra structures of finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="basic invariants of a group")
    p.add_argument("spec", help="D:n, Q:n, S:n, A:n, Z:mxn, SL23, V4, perm:<file>, pres:<presentation>")
    _add_limits(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("wedge", help="tensor or exterior square and Schur multiplier")
    p.add_argument("spec")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--tensor", dest="kind", action="store_const", const="tensor")
    kind.add_argument("--exterior", dest="kind", action="store_const", const="exterior")
    p.set_defaults(kind="exterior", func=cmd_wedge)
    _add_limits(p)

    mla = sub.add_parser("mla", help="multiplicative Lie algebra structures")
    msub = mla.add_subparsers(dest="mla_command", required=True)
    p = msub.add_parser("enumerate", help="enumerate and classify all structures")
    p.add_argument("spec")
    p.add_argument("--method", choices=("wedge", "direct", "both"), default="both")
    _add_limits(p, threads=True)
    p.set_defaults(func=cmd_enumerate)

    p = msub.add_parser("verify", help="check a star table against the five axioms")
    p.add_argument("spec")
    p.add_argument("--table", required=True, help='JSON file {"order": n, "star": [[...]]}')
    _add_limits(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (OrderLimitError, CosetLimitError) as exc:
        print(f"mlaw: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, PresentationError, GroupError, StructureError) as exc:
        print(f"mlaw: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EnumerationMismatch, WedgeInvariantError) as exc:
        print(f"mlaw: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
