"""
Command-line interface.

Exit status: 0 on success, 2 when ``classify`` finds no applicable rule,
1 on invalid input or a failed computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .classify import all_ones_family, counterexample_scan
from .degree_data import DegreeSpec, SpecError, hypothesis_flags, validate
from .exactfield import DEFAULT_PRIME
from .homology import AUX_FIELDS, EXT_FIELDS, CutoffError, IdentityError, PairHomology
from .instances import NoSchemeError, hf_certify, random_instance
from .report import build_report, formulas_section, hilbert_section, spec_hash

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def load_spec_file(path: str) -> tuple[DegreeSpec, dict[str, Any]]:
    """Spec plus the optional run settings (prime, seed, cutoff) stored beside it."""
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a JSON object with fields t, c, n, a, b")
    extras = {k: raw[k] for k in ("prime", "seed", "cutoff") if k in raw}
    return validate(raw), extras


def _settings(args, extras: dict[str, Any]) -> tuple[int, int, int | None]:
    prime = args.prime if args.prime is not None else extras.get("prime", DEFAULT_PRIME)
    seed = args.seed if args.seed is not None else extras.get("seed", 0)
    cutoff = args.cutoff if args.cutoff is not None else extras.get("cutoff")
    return prime, seed, cutoff


def _header(spec: DegreeSpec, **kw) -> dict[str, Any]:
    return {"version": __version__, "spec": spec.to_dict(), "spec_hash": spec_hash(spec), **kw}


def _emit(doc: dict[str, Any], args) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.json:
        Path(args.json).write_text(text + "\n")
    print(text)


def cmd_formulas(args) -> int:
    spec, _ = load_spec_file(args.spec)
    doc = _header(spec, flags=hypothesis_flags(spec).to_dict(), formulas=formulas_section(spec))
    _emit(doc, args)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    spec, extras = load_spec_file(args.spec)
    prime, seed, cutoff = _settings(args, extras)
    hil = hilbert_section(spec, args.upto)
    if hil is None:
        raise InputError("no Hilbert data: n < c or the stratum is empty")
    doc = _header(spec, hilbert=hil)
    if args.certify:
        cert = hf_certify(random_instance(spec, prime, seed), cutoff)
        doc["certificate"] = cert.to_dict()
        doc["prime"], doc["seeds"] = prime, [seed]
    _emit(doc, args)
    return EXIT_OK if not args.certify or doc["certificate"]["passed"] else EXIT_ERROR


def cmd_instance(args) -> int:
    spec, extras = load_spec_file(args.spec)
    prime, seed, cutoff = _settings(args, extras)
    inst = random_instance(spec, prime, seed)
    cert = hf_certify(inst, cutoff)
    doc = _header(spec, prime=prime, seeds=[seed], good=inst.is_good(),
                  certificate=cert.to_dict(), instance=inst.to_dict())
    _emit(doc, args)
    return EXIT_OK if cert.passed else EXIT_ERROR


def cmd_ext(args) -> int:
    spec, extras = load_spec_file(args.spec)
    prime, seed, cutoff = _settings(args, extras)
    if spec.c < 3:
        raise InputError("Ext groups need c >= 3: there is no pair X_c ⊂ X_{c-1}")
    targets = None
    if args.targets:
        targets = [x.strip() for x in args.targets.split(",") if x.strip()]
        bad = [x for x in targets if x not in EXT_FIELDS + AUX_FIELDS + ("ker_rho2",)]
        if bad:
            raise InputError(f"unknown Ext names {bad}; choose from {', '.join(EXT_FIELDS)}")
    inst = random_instance(spec, prime, seed)
    pair = args.pair if args.pair is not None else spec.c
    rep = PairHomology(inst, pair, cutoff).report(targets, rho2=args.rho2)
    doc = _header(spec, prime=prime, seeds=[seed], cutoff=cutoff, ext={str(pair): rep.to_dict()})
    _emit(doc, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    spec, extras = load_spec_file(args.spec)
    prime, seed, cutoff = _settings(args, extras)
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else [seed]
    rep = build_report(spec, prime, seeds, cutoff, args.upto)
    _emit(rep.to_dict(), args)
    return EXIT_OK if rep.known else EXIT_UNKNOWN


def _scan_specs(args) -> list[DegreeSpec]:
    if args.spec:
        raw = _load_json(args.spec)
        items = raw if isinstance(raw, list) else [raw]
        return [validate(x) for x in items]
    lo, _, hi = args.c_range.partition("-")
    try:
        cs = range(int(lo), int(hi or lo) + 1)
    except ValueError as exc:
        raise InputError(f"bad --c-range {args.c_range!r}, expected e.g. 3-5") from exc
    return all_ones_family(cs)


def cmd_scan(args) -> int:
    specs = _scan_specs(args)
    prime = args.prime if args.prime is not None else DEFAULT_PRIME
    seed = args.seed if args.seed is not None else 0
    found = counterexample_scan(specs, prime, seed, args.cutoff)
    doc = {"version": __version__, "prime": prime, "seeds": [seed],
           "findings": [f.to_dict() for f in found],
           "flagged": sum(f.flagged for f in found)}
    _emit(doc, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detstrata",
        description="Strata of standard determinantal schemes: formulas, Hilbert data, Ext groups, verdicts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_required=True):
        p.add_argument("--spec", required=spec_required, help="JSON file with t, c, n, a, b")
        p.add_argument("--prime", type=int, default=None, help=f"field characteristic (default {DEFAULT_PRIME})")
        p.add_argument("--seed", type=int, default=None, help="random instance seed (default 0)")
        p.add_argument("--cutoff", type=int, default=None, help="degree cutoff (default automatic)")
        p.add_argument("--json", default=None, help="also write the report to this path")
        return p

    common(sub.add_parser("formulas", help="conjectured dimension and hypothesis flags"))
    p = common(sub.add_parser("hilbert", help="Hilbert function, polynomial, degree and genus"))
    p.add_argument("--upto", type=int, default=None, help="last degree of the HF table")
    p.add_argument("--certify", action="store_true", help="check the HF on a random instance")
    common(sub.add_parser("instance", help="random instance with HF certificate"))
    p = common(sub.add_parser("ext", help="degree-zero Hom/Ext groups of the last pair"))
    p.add_argument("--targets", default=None, help="comma-separated subset of Ext names")
    p.add_argument("--pair", type=int, default=None, help="flag index i of X_i ⊂ X_{i-1} (default c)")
    p.add_argument("--rho2", action="store_true", help="also compute ker ρ²")
    p = common(sub.add_parser("classify", help="full pipeline and verdict"))
    p.add_argument("--upto", type=int, default=None, help="last degree of the HF table")
    p.add_argument("--seeds", default=None, help="comma-separated seeds for a two-seed majority, e.g. 0,1,2")
    p = common(sub.add_parser("scan", help="flag specs whose conjectured dimension exceeds the tangent space"),
               spec_required=False)
    p.add_argument("--c-range", default="3-5", help="all-linear t=2 family n=c over this c range (default 3-5)")
    return parser


_COMMANDS = {"formulas": cmd_formulas, "hilbert": cmd_hilbert, "instance": cmd_instance,
             "ext": cmd_ext, "classify": cmd_classify, "scan": cmd_scan}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SpecError as exc:
        print("invalid spec: " + "; ".join(exc.reasons), file=sys.stderr)
    except (InputError, NoSchemeError, CutoffError, IdentityError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
