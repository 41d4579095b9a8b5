"""Command-line interface.

    pgca bracket [--kind central|centerless] A B
    pgca act --config run.json [WORD ...]
    pgca vectors --config run.json [--bound B] [--out report.json]
    pgca probe --config run.json [--bound B] [--out report.json]
    pgca verify --suite axioms|lemmas|bounds|closure|all [--out report.json]

A run config is one JSON document::

    {"module": {"kind": "generic", "phi": {"L1": "1", ...}, "xi": ["1", "0", "2"], "c": "5"},
     "bound": 4, "word": ["I[2]", "L[-1]"], "psi": {"I1": "4", ...}}
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from . import verify as verify_mod
from .algebra import AlgebraKind, WhittakerHom, bracket_gen, parse_generator
from .errors import PGCAError
from .modules import ModuleCtx, make_module
from .pbw import act_word
from .solver import reducibility_probe, whittaker_solve

SCHEMA = 1
CONFIG_KEYS = {"module", "bound", "word", "psi"}
MODULE_KEYS = {"kind", "phi", "xi", "c"}


class ConfigError(PGCAError, ValueError):
    """Malformed run configuration."""


def load_config(path: str) -> Dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return check_config(data)


def check_config(data: Any) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "module" not in data or not isinstance(data["module"], dict):
        raise ConfigError("config needs a 'module' object")
    unknown = set(data["module"]) - MODULE_KEYS
    if unknown:
        raise ConfigError(f"unknown module keys: {sorted(unknown)}")
    if "kind" not in data["module"]:
        raise ConfigError("module needs a 'kind'")
    if "bound" in data and (not isinstance(data["bound"], int) or data["bound"] < 0):
        raise ConfigError("bound must be a nonnegative integer")
    return data


def _rational_field(value, where: str):
    if isinstance(value, float):
        raise ConfigError(f"{where}: write rationals as strings 'p/q', not floats")
    return value


def context_from_config(cfg: Dict[str, Any]) -> ModuleCtx:
    mod = cfg["module"]
    phi_data = {k: _rational_field(v, f"phi.{k}") for k, v in (mod.get("phi") or {}).items()}
    try:
        phi = WhittakerHom.from_dict(phi_data)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    xi = mod.get("xi")
    if xi is not None:
        if not isinstance(xi, list) or len(xi) != 3:
            raise ConfigError("xi must be a list of three rationals")
        xi = [_rational_field(x, "xi") for x in xi]
    c = mod.get("c")
    if c is not None:
        c = _rational_field(c, "c")
    return make_module(mod["kind"], phi, xi=xi, c=c)


def _psi_from_config(cfg: Dict[str, Any], ctx: ModuleCtx) -> WhittakerHom:
    if "psi" not in cfg:
        return ctx.phi
    values = ctx.phi.to_values()
    for k, v in cfg["psi"].items():
        if k not in values:
            raise ConfigError(f"unknown psi key {k!r}")
        values[k] = _rational_field(v, f"psi.{k}")
    return WhittakerHom(**values)


def _bound(args, cfg: Dict[str, Any]) -> int:
    if args.bound is not None:
        return args.bound
    if "bound" not in cfg:
        raise ConfigError("no window bound: pass --bound or set 'bound' in the config")
    return cfg["bound"]


def make_report(command: str, config: Optional[Dict[str, Any]], result: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "header": {"command": command,
                   "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")},
        "config": config,
        "result": result,
    }


def _emit(report: Dict[str, Any], out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")


# --- subcommands ----------------------------------------------------------------

def cmd_bracket(args) -> int:
    kind = AlgebraKind(args.kind)
    a, b = parse_generator(args.a), parse_generator(args.b)
    print(bracket_gen(kind, a, b))
    return 0


def cmd_act(args) -> int:
    cfg = load_config(args.config)
    ctx = context_from_config(cfg)
    texts = args.word if args.word else cfg.get("word", [])
    word = [parse_generator(t) for t in texts]
    print(act_word(ctx, word))
    return 0


def cmd_vectors(args) -> int:
    cfg = load_config(args.config)
    ctx = context_from_config(cfg)
    bound = _bound(args, cfg)
    rep = whittaker_solve(ctx, bound, _psi_from_config(cfg, ctx))
    result = rep.to_json()
    _emit(make_report("vectors", cfg, result), args.out)
    print(f"kind       {ctx.kind.value}")
    print(f"bound      {bound}")
    print(f"window     {rep.window_size}")
    print(f"dimension  {rep.dimension}")
    print(f"verified   {rep.verified}")
    for v in rep.basis:
        print(f"  {v}")
    return 0


def cmd_probe(args) -> int:
    cfg = load_config(args.config)
    ctx = context_from_config(cfg)
    bound = _bound(args, cfg)
    res = reducibility_probe(ctx, bound)
    _emit(make_report("probe", cfg, res.to_json()), args.out)
    print(f"verdict    {res.verdict}")
    if res.witness is not None:
        print(f"witness    {res.witness}")
        print(f"verified   {res.witness_verified}")
    return 0


def cmd_verify(args) -> int:
    checks = verify_mod.run_suite(args.suite)
    failed = [c for c in checks if not c.passed]
    result = {"suite": args.suite, "checks": [c.to_json() for c in checks], "failed": len(failed)}
    _emit(make_report("verify", {"suite": args.suite}, result), args.out)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.name:<24} {c.cases:>8} cases"
        if c.counterexample:
            line += f"  counterexample: {c.counterexample}"
        print(line)
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pgca", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", help="bracket of two generators")
    b.add_argument("--kind", choices=[k.value for k in AlgebraKind], default="central")
    b.add_argument("a")
    b.add_argument("b")
    b.set_defaults(func=cmd_bracket)

    a = sub.add_parser("act", help="apply a word to the Whittaker vector")
    a.add_argument("--config", required=True)
    a.add_argument("word", nargs="*", help="generators, leftmost acts last")
    a.set_defaults(func=cmd_act)

    for name, fn, text in (("vectors", cmd_vectors, "Whittaker vectors on a window"),
                           ("probe", cmd_probe, "search for a reducibility witness")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--config", required=True)
        s.add_argument("--bound", type=int)
        s.add_argument("--out")
        s.set_defaults(func=fn)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("--suite", choices=list(verify_mod.SUITES) + ["all"], default="all")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PGCAError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
