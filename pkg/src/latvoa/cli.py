"""Command-line front end: config loading, element parsing and JSON reports."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import bilform, modvoa, suites, zhu
from .errors import VOAError
from .fock import FockSpace, FockVector, LambdaSpec
from .lattice import Cocycle, Generated, Lattice, Split, SubMonoid, Union, cocycle_validate
from .vertex import LatticeVOA

PRESETS = {"a2": "a2.json", "rank1-N1": "rank1_N1.json", "rank1-N2": "rank1_N2.json", "rank1-N3": "rank1_N3.json"}


# ------------------------------------------------------------------ config


@dataclass
class Config:
    lattice: Lattice
    cocycle: Cocycle
    lam: LambdaSpec | None
    monoids: dict = field(default_factory=dict)
    digest: str = ""
    raw: dict = field(default_factory=dict)

    def space(self, shift: Sequence | None = None) -> FockSpace:
        return FockSpace(self.lattice, self.cocycle, lam=self.lam, shift=shift)

    @property
    def rank(self) -> int:
        return self.lattice.rank


def _monoid(doc: dict, rank: int) -> SubMonoid:
    kind = doc.get("kind")
    if kind == "split":
        return Split(free=tuple(map(tuple, doc.get("free", []))), nonneg=tuple(map(tuple, doc.get("nonneg", []))),
                     positive=tuple(map(tuple, doc.get("positive", []))))
    if kind == "generated":
        return Generated(tuple(map(tuple, doc["generators"])), int(doc.get("search_bound", 20)))
    if kind == "union":
        return Union(tuple(_monoid(p, rank) for p in doc["parts"]))
    raise VOAError("CONFIG_ERROR", f"unknown monoid kind {kind!r}")


def config_from_dict(doc: dict) -> Config:
    try:
        rank = int(doc["rank"])
        lattice = Lattice(tuple(map(tuple, doc["gram"])), tuple(doc.get("basis_names", ())))
        if lattice.rank != rank:
            raise VOAError("CONFIG_ERROR", "rank does not match the gram matrix")
        cocycle = Cocycle(tuple(map(tuple, doc.get("cocycle", [[1] * rank for _ in range(rank)]))))
        if len(cocycle.signs) != rank or not cocycle_validate(cocycle, lattice):
            raise VOAError("CONFIG_ERROR", "cocycle fails ε(a,b)ε(b,a) = (-1)^(a|b)")
        lam = None
        if doc.get("lambda") is not None:
            lam = LambdaSpec(tuple(Fraction(str(x)) for x in doc["lambda"]["pairings"]),
                             Fraction(str(doc["lambda"].get("norm", 0))))
        monoids = {name: _monoid(m, rank) for name, m in doc.get("monoids", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise VOAError("CONFIG_ERROR", f"malformed config: {exc}") from None
    digest = hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]
    return Config(lattice, cocycle, lam, monoids, digest, doc)


def load_config(path: str) -> Config:
    if path in PRESETS:
        text = resources.files("latvoa").joinpath("configs", PRESETS[path]).read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise VOAError("CONFIG_ERROR", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise VOAError("CONFIG_ERROR", f"invalid JSON: {exc}") from None
    return config_from_dict(doc)


# ------------------------------------------------------------------ parsing


class _Parser:
    def __init__(self, text: str, space: FockSpace):
        self.text = text
        self.pos = 0
        self.space = space
        self.names = {n: i for i, n in enumerate(space.lattice.basis_names)}

    def error(self, msg: str, code: str = "PARSE_ERROR"):
        raise VOAError(code, f"{msg} at position {self.pos}", position=self.pos)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str) -> None:
        self.ws()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def uint(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        num = self.uint()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den = self.uint()
            if den == 0:
                self.error("zero denominator")
        return sign * Fraction(num, den)

    def name(self) -> str | None:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos] or None

    def charge(self):
        self.ws()
        if self.text.startswith("vac", self.pos):
            self.pos += 3
            return self.space.zero_charge()
        self.expect("E[")
        coords = [self.rational()]
        while self.peek() == ",":
            self.pos += 1
            coords.append(self.rational())
        lam = False
        if self.peek() == ";":
            self.pos += 1
            self.expect("L")
            lam = True
        self.expect("]")
        if len(coords) != self.space.rank:
            self.error(f"charge needs {self.space.rank} coordinates", "DIMENSION_MISMATCH")
        return self.space.charge(*coords, lam=lam)

    def term(self, sign: int):
        coeff = Fraction(sign)
        self.ws()
        if self.peek() == "-" or self.peek().isdigit():
            coeff *= self.rational()
            self.expect("*")
        factors = []
        while True:
            self.ws()
            if self.text.startswith("E[", self.pos) or self.text.startswith("vac", self.pos):
                return coeff, factors, self.charge()
            start = self.pos
            nm = self.name()
            if nm is None:
                self.error("expected a generator or a charge")
            if nm not in self.names:
                self.pos = start
                self.error(f"unknown name {nm!r}", "UNKNOWN_NAME")
            self.expect("(")
            if self.peek() != "-":
                self.error("modes must be negative", "NONNEGATIVE_MODE")
            self.pos += 1
            mode = self.uint()
            if mode == 0:
                self.error("modes must be negative", "NONNEGATIVE_MODE")
            self.expect(")")
            vec = [0] * self.space.rank
            vec[self.names[nm]] = 1
            factors.append((tuple(vec), -mode))

    def element(self) -> FockVector:
        if self.text.strip() == "0":
            return FockVector()
        sign = 1
        if self.peek() == "-" and not self.text[self.pos + 1:].lstrip()[:1].isdigit():
            self.pos += 1
            sign = -1
        raw = [self.term(sign)]
        while True:
            c = self.peek()
            if c == "":
                break
            if c not in "+-":
                self.error("expected '+', '-' or end of input")
            self.pos += 1
            raw.append(self.term(1 if c == "+" else -1))
        return self.space.normalize(raw)


def parse_element(text: str, space_or_cfg) -> FockVector:
    """Parse the element grammar into a canonical FockVector."""
    space = space_or_cfg.space() if isinstance(space_or_cfg, Config) else space_or_cfg
    return _Parser(text, space).element()


# ------------------------------------------------------------------ commands


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise VOAError("PARSE_ERROR", f"bad rational {text!r}") from None


def _cmd_mode(cfg: Config, args) -> dict:
    space = cfg.space()
    a, b = parse_element(args.A, space), parse_element(args.B, space)
    return {"result": space.format(LatticeVOA(space).state_mode(a, args.N, b))}


def _cmd_residue(cfg: Config, args) -> dict:
    space = cfg.space()
    a, b = parse_element(args.A, space), parse_element(args.B, space)
    return {"result": space.format(LatticeVOA(space).weighted_residue(a, b, args.P, args.Q))}


def _cmd_circle(cfg: Config, args) -> dict:
    space = cfg.space()
    a, b = parse_element(args.A, space), parse_element(args.B, space)
    return {"result": space.format(zhu.circle(LatticeVOA(space), a, b))}


def _cmd_star(cfg: Config, args) -> dict:
    space = cfg.space()
    a, b = parse_element(args.A, space), parse_element(args.B, space)
    return {"result": space.format(zhu.star(LatticeVOA(space), a, b))}


def _cmd_reduce(cfg: Config, args) -> dict:
    target = args.target.upper()
    if target == "VP":
        if not suites.is_a2(cfg.space()):
            raise VOAError("CONTEXT_MISMATCH", "vp needs the A2 config")
        N = 1
    else:
        N = suites.rank_one_N(cfg.space())
    red = zhu.Reducer(target, N, cfg.space())
    return {"result": str(red.reduce(parse_element(args.A, red.space)))}


def _cmd_character(cfg: Config, args) -> dict:
    space = cfg.space()
    if args.monoid in ("L", "lattice"):
        M = None
    elif args.monoid in cfg.monoids:
        M = cfg.monoids[args.monoid]
    else:
        raise VOAError("UNKNOWN_NAME", f"no monoid named {args.monoid!r}")
    upto = _parse_rational(args.upto)
    weights = sorted({Fraction(space.weight(t)) for t in space.basis(M, upto)} | {Fraction(0)})
    return {"result": {str(w): space.graded_dim(M, w) for w in weights}}


def _cmd_form(cfg: Config, args) -> dict:
    space = cfg.space()
    u, v = parse_element(args.U, space), parse_element(args.V, space)
    voa = LatticeVOA(space)
    top = max((space.weight(t) for t in list(u.terms) + list(v.terms)), default=0)
    ctx = bilform.context_for(voa, top)
    return {"result": str(bilform.form(ctx, u, v))}


def _cmd_module_act(cfg: Config, args) -> dict:
    space = cfg.space()
    suites.require_a2(space)
    if cfg.lam is None:
        raise VOAError("CONFIG_ERROR", "module-act needs a lambda block")
    if cfg.lam.pairings[0] != 0:
        raise VOAError("CONFIG_ERROR", "module-act needs (lambda|alpha) = 0")
    spec = modvoa.PModuleSpec(args.epsilon, cfg.lam.pairings[1], cfg.lam.norm)
    mod = modvoa.get_module(spec)
    a = parse_element(args.A, mod.vp_space)
    w = parse_element(args.W, mod.space)
    return {"result": mod.space.format(mod.mode(a, args.N, w))}


def _cmd_verify(cfg: Config, args) -> dict:
    cutoff = _parse_rational(args.cutoff) if args.cutoff is not None else None
    if cutoff is not None and cutoff.denominator == 1:
        cutoff = int(cutoff)
    checks = suites.run_suite(args.suite, cfg.space(), cutoff, args.seed)
    return {"checks": checks, "seed": args.seed}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latvoa", description="Exact lattice VOA computations and checks.")
    p.add_argument("--config", required=True,
                   help="config JSON path, or a preset: " + ", ".join(PRESETS))
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; runs single-threaded")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mode", help="a_N b")
    s.add_argument("A"); s.add_argument("N", type=int); s.add_argument("B")
    s.set_defaults(func=_cmd_mode)

    s = sub.add_parser("residue", help="Res_z Y(A,z)B (1+z)^P / z^Q")
    s.add_argument("A"); s.add_argument("B"); s.add_argument("P", type=int); s.add_argument("Q", type=int)
    s.set_defaults(func=_cmd_residue)

    for name, func in (("circle", _cmd_circle), ("star", _cmd_star)):
        s = sub.add_parser(name, help=f"Zhu {name} product")
        s.add_argument("A"); s.add_argument("B")
        s.set_defaults(func=func)

    s = sub.add_parser("reduce", help="normal form in a presented Zhu algebra")
    s.add_argument("--target", required=True, choices=["vb", "va1", "vp"])
    s.add_argument("A")
    s.set_defaults(func=_cmd_reduce)

    s = sub.add_parser("character", help="graded dimensions of V_M")
    s.add_argument("--monoid", required=True)
    s.add_argument("--upto", required=True)
    s.set_defaults(func=_cmd_character)

    s = sub.add_parser("form", help="invariant bilinear form (U|V)")
    s.add_argument("U"); s.add_argument("V")
    s.set_defaults(func=_cmd_form)

    s = sub.add_parser("module-act", help="module mode A_N W over V_P")
    s.add_argument("--epsilon", required=True, choices=["0", "half"])
    s.add_argument("A"); s.add_argument("N", type=int); s.add_argument("W")
    s.set_defaults(func=_cmd_module_act)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=sorted(suites.SUITES))
    s.add_argument("--cutoff")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_verify)
    return p


def _inputs(args) -> dict:
    skip = {"func", "config", "command", "jobs"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Run one command; writes a JSON report and returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    report = {"command": args.command, "config_digest": None, "inputs": _inputs(args)}
    try:
        cfg = load_config(args.config)
        report["config_digest"] = cfg.digest
        body = args.func(cfg, args)
    except VOAError as exc:
        report["error"] = exc.to_dict()
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        json.dump(report, out, indent=2, default=str)
        out.write("\n")
        return 2
    report.update(body)
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    json.dump(report, out, indent=2, default=str)
    out.write("\n")
    if "checks" in report:
        return 0 if all(c["pass"] for c in report["checks"]) else 1
    return 0


def main() -> None:
    sys.exit(run())
