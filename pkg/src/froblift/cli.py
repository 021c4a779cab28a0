"""Command-line front end for the lifting workbench.

One subcommand per library operation.  Machine mode (the default) prints a
single JSON envelope {"command", "ok", "result" | "error"} with sorted keys
and no timestamps, so identical invocations produce identical bytes; --human
switches to short text lines.  Charts and splittings are read from JSON or
TOML files, polynomials from a small expression grammar with the usual
precedence: ^ binds tightest, then unary minus, then *, then binary + and -.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import fanoscreen, liftlab, splitlab, wittcore
from .idealcalc import IdealPresentation
from .polycore import MultiPoly
from .sampling import random_mod_p2_poly
from .splitlab import GroupAction, TraceSplitting
from .wittcore import WittScalar, ghost_map

COMMANDS = (
    "witt",
    "lift-validate",
    "delta",
    "xi-det",
    "log-xi-det",
    "split-from-lift",
    "compat",
    "blowup",
    "product",
    "restrict",
    "psi",
    "point-lift",
    "roundtrip",
    "fedder",
    "compat-split",
    "divisor",
    "average",
    "canonical-lift-check",
    "p1-scan",
    "fano-screen",
    "bounds",
)

DEFAULT_SCAN_PRIMES = (3, 5, 7, 11, 13)
PRIMES_ENV_VAR = "FROBLIFT_PRIMES"


# -- polynomial expressions ----------------------------------------------------


class PolySyntaxError(ValueError):
    """Malformed polynomial text; the offset points at the first bad character."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__("%s at offset %d" % (message, offset))


class UnknownVariableError(ValueError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__("unknown variable %r at offset %d" % (name, offset))


@dataclass(frozen=True)
class PolyExpr:
    """One node of a parsed polynomial expression."""

    kind: str  # int | var | neg | add | sub | mul | pow
    value: object = None  # int literal, variable name, or pow exponent
    children: tuple["PolyExpr", ...] = ()
    offset: int = 0


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise PolySyntaxError("unexpected character %r" % ch, i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> PolyExpr:
        node = self.expr()
        kind, _, offset = self.peek()
        if kind != "end":
            raise PolySyntaxError("unexpected %r" % kind, offset)
        return node

    def expr(self) -> PolyExpr:
        node = self.term()
        while self.peek()[0] in "+-":
            op, _, offset = self.take()
            rhs = self.term()
            node = PolyExpr("add" if op == "+" else "sub", None, (node, rhs), offset)
        return node

    def term(self) -> PolyExpr:
        node = self.unary()
        while self.peek()[0] == "*":
            _, _, offset = self.take()
            rhs = self.unary()
            node = PolyExpr("mul", None, (node, rhs), offset)
        return node

    def unary(self) -> PolyExpr:
        if self.peek()[0] == "-":
            _, _, offset = self.take()
            return PolyExpr("neg", None, (self.unary(),), offset)
        return self.power()

    def power(self) -> PolyExpr:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, value, offset = self.take()
            if kind != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", offset)
            return PolyExpr("pow", value, (base,), offset)
        return base

    def atom(self) -> PolyExpr:
        kind, value, offset = self.take()
        if kind == "int":
            return PolyExpr("int", value, (), offset)
        if kind == "name":
            return PolyExpr("var", value, (), offset)
        if kind == "(":
            node = self.expr()
            close, _, close_offset = self.take()
            if close != ")":
                raise PolySyntaxError("expected ')'", close_offset)
            return node
        raise PolySyntaxError("expected a value", offset)


def parse_expression(text: str) -> PolyExpr:
    return _Parser(text).parse()


def _evaluate(node: PolyExpr, index: dict[str, int], arity: int, modulus: int) -> MultiPoly:
    if node.kind == "int":
        return MultiPoly.constant(arity, modulus, node.value)
    if node.kind == "var":
        i = index.get(node.value)
        if i is None:
            raise UnknownVariableError(node.value, node.offset)
        return MultiPoly.variable(arity, modulus, i)
    if node.kind == "neg":
        return -_evaluate(node.children[0], index, arity, modulus)
    if node.kind == "pow":
        return _evaluate(node.children[0], index, arity, modulus) ** node.value
    lhs = _evaluate(node.children[0], index, arity, modulus)
    rhs = _evaluate(node.children[1], index, arity, modulus)
    if node.kind == "add":
        return lhs + rhs
    if node.kind == "sub":
        return lhs - rhs
    return lhs * rhs


def parse_poly(text: str, var_names: list[str] | tuple[str, ...], modulus: int) -> MultiPoly:
    """Parse an expression into a sparse polynomial over the given modulus."""
    names = list(var_names)
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    index = {name: i for i, name in enumerate(names)}
    return _evaluate(parse_expression(text), index, len(names), modulus)


# -- structured input files ------------------------------------------------------


def load_structured(path: str) -> dict:
    raw = Path(path).read_bytes()
    if path.endswith(".toml"):
        return tomllib.loads(raw.decode("utf-8"))
    try:
        return json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError:
        try:
            return tomllib.loads(raw.decode("utf-8"))
        except tomllib.TOMLDecodeError:
            raise ValueError("%s is neither valid JSON nor valid TOML" % path)


def _require_names(data: dict, path: str) -> tuple[str, ...]:
    names = data.get("vars")
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names) or not names:
        raise ValueError("%s needs 'vars', a nonempty list of names" % path)
    if len(set(names)) != len(names):
        raise ValueError("%s lists a variable name twice" % path)
    return tuple(names)


@dataclass(frozen=True)
class ChartFile:
    lifting: liftlab.ChartLifting
    names: tuple[str, ...]
    log_rank: int | None
    center: tuple[str, ...] | None


def load_chart(path: str) -> ChartFile:
    """Read {p, vars, images, log_rank?, center?} and validate the lifting."""
    data = load_structured(path)
    if "p" not in data or "images" not in data:
        raise ValueError("%s needs keys 'p', 'vars' and 'images'" % path)
    p = int(data["p"])
    names = _require_names(data, path)
    images_text = data["images"]
    if not isinstance(images_text, list) or len(images_text) != len(names):
        raise ValueError("%s needs one image per variable" % path)
    images = tuple(parse_poly(text, names, p * p) for text in images_text)
    log_rank = data.get("log_rank")
    if log_rank is not None:
        log_rank = int(log_rank)
    center = data.get("center")
    if center is not None:
        center = tuple(center)
        for name in center:
            if name not in names:
                raise ValueError("center names unknown variable %r" % name)
    return ChartFile(liftlab.ChartLifting(p, images), names, log_rank, center)


def load_splitting(path: str) -> tuple[TraceSplitting, tuple[str, ...]]:
    """Read {p, vars, u} into a trace-form splitting."""
    data = load_structured(path)
    if "p" not in data or "u" not in data:
        raise ValueError("%s needs keys 'p', 'vars' and 'u'" % path)
    p = int(data["p"])
    names = _require_names(data, path)
    u = parse_poly(data["u"], names, p)
    return TraceSplitting(p, len(names), u), names


def load_group(path: str, p: int, names: tuple[str, ...]) -> GroupAction:
    """Read a list of substitution maps, each mapping every variable to text."""
    data = load_structured(path)
    if isinstance(data, dict):
        data = data.get("maps")
    if not isinstance(data, list):
        raise ValueError("%s must hold a list of substitution maps" % path)
    maps = []
    for entry in data:
        if not isinstance(entry, dict) or set(entry) != set(names):
            raise ValueError("each map must substitute exactly the variables %s" % (names,))
        maps.append(tuple(parse_poly(entry[name], names, p) for name in names))
    return GroupAction(p, tuple(maps))


# -- run configuration -----------------------------------------------------------


@dataclass
class RunConfig:
    """Everything one invocation needs: the subcommand and its parameters."""

    command: str
    human: bool = False
    out: str | None = None
    seed: int = 0
    jobs: int = 1
    prime: int | None = None
    variables: tuple[str, ...] | None = None
    params: dict = field(default_factory=dict)


def _check_prime_flag(config: RunConfig, p: int) -> None:
    if config.prime is not None and config.prime != p:
        raise ValueError("--p %d disagrees with the file's prime %d" % (config.prime, p))


def _chart(config: RunConfig) -> ChartFile:
    chart = load_chart(config.params["chart"])
    _check_prime_flag(config, chart.lifting.p)
    return chart


def _texts(polys, names) -> list[str]:
    return [f.to_text(list(names)) for f in polys]


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _resolve_names(config: RunConfig, count_hint: int | None = None) -> tuple[str, ...]:
    """Variable names from --vars, or x1..xn from --arity."""
    if config.variables:
        return config.variables
    arity = config.params.get("arity")
    if arity:
        return tuple("x%d" % (i + 1) for i in range(arity))
    if count_hint:
        return tuple("x%d" % (i + 1) for i in range(count_hint))
    raise ValueError("provide --vars or --arity")


# -- subcommand handlers -----------------------------------------------------------


def _cmd_witt(config: RunConfig):
    p = config.prime
    if p is None:
        raise ValueError("witt needs --p")
    a_text, b_text = config.params.get("a"), config.params.get("b")
    if a_text is None and b_text is None:
        mod = p * p
        pairs = 0
        add_ok = True
        mul_ok = True
        scalars = [WittScalar(p, a0, a1) for a0 in range(p) for a1 in range(p)]
        for a in scalars:
            for b in scalars:
                pairs += 1
                ga, gb = ghost_map(a), ghost_map(b)
                if ghost_map(wittcore.witt_add(a, b)) != (ga + gb) % mod:
                    add_ok = False
                if ghost_map(wittcore.witt_mul(a, b)) != (ga * gb) % mod:
                    mul_ok = False
        result = {
            "p": p,
            "pairs_checked": pairs,
            "add_agrees_with_ghost": add_ok,
            "mul_agrees_with_ghost": mul_ok,
        }
        human = [
            "p = %d" % p,
            "pairs checked: %d" % pairs,
            "addition agrees with ghost map: %s" % _yesno(add_ok),
            "multiplication agrees with ghost map: %s" % _yesno(mul_ok),
        ]
        return result, human
    if a_text is None or b_text is None:
        raise ValueError("provide both --a and --b, or neither")
    a = WittScalar(p, *_int_pair(a_text))
    b = WittScalar(p, *_int_pair(b_text))
    mod = p * p
    total = wittcore.witt_add(a, b)
    prod = wittcore.witt_mul(a, b)
    diff = wittcore.witt_sub(a, b)
    ghost_ok = (
        ghost_map(total) == (ghost_map(a) + ghost_map(b)) % mod
        and ghost_map(prod) == (ghost_map(a) * ghost_map(b)) % mod
    )
    result = {
        "p": p,
        "a": [a.a0, a.a1],
        "b": [b.a0, b.a1],
        "sum": _pair(total),
        "product": _pair(prod),
        "difference": _pair(diff),
        "a_frobenius": _pair(wittcore.witt_frobenius(a)),
        "a_verschiebung": _pair(wittcore.witt_verschiebung(a)),
        "ghost_consistent": ghost_ok,
    }
    human = [
        "a = (%d, %d), b = (%d, %d) over p = %d" % (a.a0, a.a1, b.a0, b.a1, p),
        "a + b = (%d, %d)" % tuple(_pair(total)),
        "a * b = (%d, %d)" % tuple(_pair(prod)),
        "a - b = (%d, %d)" % tuple(_pair(diff)),
        "ghost map consistent: %s" % _yesno(ghost_ok),
    ]
    return result, human


def _int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("expected two comma-separated components, got %r" % text)
    return int(parts[0]), int(parts[1])


def _pair(w: WittScalar) -> list[int]:
    return [w.a0, w.a1]


def _cmd_lift_validate(config: RunConfig):
    chart = _chart(config)
    names = list(chart.names)
    result = {
        "p": chart.lifting.p,
        "vars": names,
        "images": _texts(chart.lifting.images, names),
        "deltas": _texts(chart.lifting.deltas, names),
        "valid": True,
    }
    human = ["valid lifting on %d variables over p = %d" % (chart.lifting.n, chart.lifting.p)]
    human += [
        "delta(%s) = %s" % (name, text)
        for name, text in zip(names, result["deltas"])
    ]
    return result, human


def _cmd_delta(config: RunConfig):
    chart = _chart(config)
    p = chart.lifting.p
    f = parse_poly(config.params["poly"], chart.names, p * p)
    d = liftlab.delta(chart.lifting, f)
    text = d.to_text(list(chart.names))
    return {"poly": f.to_text(list(chart.names)), "delta": text}, ["delta = %s" % text]


def _cmd_xi_det(config: RunConfig):
    chart = _chart(config)
    det = liftlab.xi_det(chart.lifting)
    text = det.to_text(list(chart.names))
    result = {"p": chart.lifting.p, "vars": list(chart.names), "det": text}
    return result, [text]


def _cmd_log_xi_det(config: RunConfig):
    chart = _chart(config)
    log_rank = config.params.get("log_rank") or chart.log_rank
    if not log_rank:
        raise ValueError("provide --log-rank or a log_rank entry in the chart file")
    matrix = liftlab.log_xi_matrix(chart.lifting, log_rank)
    names = list(chart.names)
    det_log = matrix.det
    det = liftlab.xi_det(chart.lifting)
    identity_ok = liftlab.log_det_identity_holds(chart.lifting, log_rank)
    result = {
        "log_rank": log_rank,
        "det_log": det_log.to_text(names),
        "det": det.to_text(names),
        "identity_ok": identity_ok,
    }
    human = [
        "det log-xi = %s" % result["det_log"],
        "det xi = %s" % result["det"],
        "boundary factorization identity: %s" % _yesno(identity_ok),
    ]
    return result, human


def _cmd_split_from_lift(config: RunConfig):
    chart = _chart(config)
    splitting = liftlab.associated_splitting(chart.lifting)
    text = splitting.u.to_text(list(chart.names))
    result = {"p": splitting.p, "u": text, "unital": splitting.is_unital()}
    return result, ["u = %s" % text, "unital: %s" % _yesno(result["unital"])]


def _parse_ideal(text: str, names, modulus: int) -> IdealPresentation:
    gens = [parse_poly(part, names, modulus) for part in text.split(",")]
    return IdealPresentation(gens)


def _cmd_compat(config: RunConfig):
    chart = _chart(config)
    p = chart.lifting.p
    ideal = _parse_ideal(config.params["ideal"], chart.names, p * p)
    per_gen = liftlab.compatibility_report(chart.lifting, ideal)
    names = list(chart.names)
    result = {
        "generators": _texts(ideal.generators, names),
        "frobenius_images_in_power": per_gen,
        "compatible": all(per_gen),
    }
    human = [
        "F*(%s) in I^p: %s" % (g, _yesno(ok))
        for g, ok in zip(result["generators"], per_gen)
    ]
    human.append("compatible: %s" % _yesno(result["compatible"]))
    return result, human


def _center_indices(chart: ChartFile, config: RunConfig) -> tuple[int, ...]:
    text = config.params.get("center")
    if text:
        names = tuple(part.strip() for part in text.split(","))
    elif chart.center:
        names = chart.center
    else:
        raise ValueError("provide --center or a center entry in the chart file")
    indices = []
    for name in names:
        if name not in chart.names:
            raise ValueError("center names unknown variable %r" % name)
        indices.append(chart.names.index(name))
    return tuple(indices)


def _cmd_blowup(config: RunConfig):
    chart = _chart(config)
    center = _center_indices(chart, config)
    report = liftlab.blowup_extends(chart.lifting, center)
    center_names = [chart.names[i] for i in report.center]
    result = {
        "center": center_names,
        "deltas_in_power": list(report.deltas_ok),
        "cross_terms_in_double_power": list(report.cross_terms_ok),
        "extends": report.extends,
    }
    human = [
        "center: %s" % ", ".join(center_names),
        "delta memberships: %s" % ", ".join(_yesno(b) for b in report.deltas_ok),
        "cross terms: %s" % ", ".join(_yesno(b) for b in report.cross_terms_ok),
        "extends over the blow-up: %s" % _yesno(report.extends),
    ]
    return result, human


def _cmd_product(config: RunConfig):
    left = load_chart(config.params["chart"])
    right = load_chart(config.params["other"])
    lifting = liftlab.product_lifting(left.lifting, right.lifting)
    names = left.names + right.names
    if len(set(names)) != len(names):
        names = tuple("x%d" % (i + 1) for i in range(lifting.n))
    names = list(names)
    det = liftlab.xi_det(lifting)
    det_left = liftlab.xi_det(left.lifting).embed(lifting.n, 0)
    det_right = liftlab.xi_det(right.lifting).embed(lifting.n, left.lifting.n)
    multiplicative = det == det_left * det_right
    result = {
        "p": lifting.p,
        "vars": names,
        "images": _texts(lifting.images, names),
        "det": det.to_text(names),
        "det_factors": [det_left.to_text(names), det_right.to_text(names)],
        "det_multiplicative": multiplicative,
    }
    human = [
        "vars: %s" % ", ".join(names),
        "det = %s" % result["det"],
        "det is the product of the factors: %s" % _yesno(multiplicative),
    ]
    return result, human


def _cmd_restrict(config: RunConfig):
    chart = _chart(config)
    name = config.params["var"]
    if name not in chart.names:
        raise ValueError("unknown variable %r" % name)
    index = chart.names.index(name)
    restricted = liftlab.restrict_to_coordinate_divisor(chart.lifting, index)
    names = [v for v in chart.names if v != name]
    result = {
        "removed": name,
        "vars": names,
        "images": _texts(restricted.images, names),
    }
    human = ["restricted to %s = 0" % name]
    human += ["%s -> %s" % (v, img) for v, img in zip(names, result["images"])]
    return result, human


def _cmd_psi(config: RunConfig):
    chart = _chart(config)
    p = chart.lifting.p
    map_texts = [part for part in config.params["map"].split(",")]
    if len(map_texts) != chart.lifting.n:
        raise ValueError(
            "the map needs %d polynomials, one per chart variable" % chart.lifting.n
        )
    source_names = config.params.get("map_vars")
    if source_names:
        source_names = tuple(part.strip() for part in source_names.split(","))
        if len(set(source_names)) != len(source_names):
            raise ValueError("variable names must be distinct")
    else:
        source_names = tuple("x%d" % (i + 1) for i in range(len(map_texts)))
    phi = [parse_poly(text, source_names, p) for text in map_texts]
    images = liftlab.base_change_psi(chart.lifting, phi)
    names = list(source_names)
    result = {
        "target_vars": list(chart.names),
        "source_vars": names,
        "images": _texts(images, names),
    }
    human = [
        "psi*(%s) = %s" % (target, text)
        for target, text in zip(chart.names, result["images"])
    ]
    return result, human


def _cmd_point_lift(config: RunConfig):
    chart = _chart(config)
    parts = config.params["point"].split(",")
    if len(parts) != chart.lifting.n:
        raise ValueError("the point needs %d coordinates" % chart.lifting.n)
    point = tuple(int(part) for part in parts)
    lifted = liftlab.canonical_point_lift(chart.lifting, point)
    p = chart.lifting.p
    result = {
        "point": [a % p for a in point],
        "lift": list(lifted),
        "modulus": p * p,
    }
    human = [
        "(%s) -> (%s) mod %d"
        % (", ".join(str(a) for a in result["point"]), ", ".join(str(a) for a in lifted), p * p)
    ]
    return result, human


def _cmd_roundtrip(config: RunConfig):
    chart = _chart(config)
    p = chart.lifting.p
    poly_text = config.params.get("poly")
    if poly_text is not None:
        f = parse_poly(poly_text, chart.names, p * p)
        liftlab.nu_theta_roundtrip(chart.lifting, f)
        pullback = liftlab.frobenius_pullback(chart.lifting, f).to_text(list(chart.names))
        result = {"poly": f.to_text(list(chart.names)), "pullback": pullback, "ok": True}
        return result, ["roundtrip holds; F*(f) = %s" % pullback]
    import random

    count = config.params.get("count") or 100
    rng = random.Random(config.seed)
    for _ in range(count):
        f = random_mod_p2_poly(rng, chart.lifting.n, p)
        liftlab.nu_theta_roundtrip(chart.lifting, f)
    result = {"count": count, "seed": config.seed, "ok": True}
    return result, ["roundtrip holds on %d random polynomials (seed %d)" % (count, config.seed)]


def _cmd_fedder(config: RunConfig):
    p = config.prime
    if p is None:
        raise ValueError("fedder needs --p")
    names = _resolve_names(config)
    f = parse_poly(config.params["poly"], names, p)
    if not f.terms:
        raise ValueError("the hypersurface polynomial must be nonzero")
    split = splitlab.fedder_is_fsplit(f)
    result = {"p": p, "poly": f.to_text(list(names)), "fsplit": split}
    return result, ["F-split: %s" % _yesno(split)]


def _cmd_compat_split(config: RunConfig):
    splitting, names = load_splitting(config.params["split"])
    _check_prime_flag(config, splitting.p)
    ideal = _parse_ideal(config.params["ideal"], names, splitting.p)
    compatible = splitlab.compatible_ideal_splitting(splitting, ideal)
    result = {
        "u": splitting.u.to_text(list(names)),
        "generators": _texts(ideal.generators, names),
        "compatible": compatible,
    }
    return result, ["compatible: %s" % _yesno(compatible)]


def _cmd_divisor(config: RunConfig):
    splitting, names = load_splitting(config.params["split"])
    _check_prime_flag(config, splitting.p)
    factors = [parse_poly(part, names, splitting.p) for part in config.params["factors"].split(",")]
    report = splitlab.divisor_of_splitting(splitting, factors)
    names_list = list(names)
    components = [
        {
            "factor": factor.to_text(names_list),
            "multiplicity": mult,
            "coefficient": str(coeff),
        }
        for factor, mult, coeff in report.entries
    ]
    result = {
        "u": splitting.u.to_text(names_list),
        "components": components,
        "residual": report.residual.to_text(names_list),
    }
    human = ["u = %s" % result["u"]]
    human += [
        "%s: multiplicity %d, coefficient %s"
        % (c["factor"], c["multiplicity"], c["coefficient"])
        for c in components
    ]
    human.append("residual: %s" % result["residual"])
    return result, human


def _cmd_average(config: RunConfig):
    splitting, names = load_splitting(config.params["split"])
    _check_prime_flag(config, splitting.p)
    action = load_group(config.params["group"], splitting.p, names)
    averaged = splitlab.group_average(splitting, action)
    text = averaged.u.to_text(list(names))
    result = {"order": len(action.maps), "u": text, "unital": averaged.is_unital()}
    human = [
        "group order %d" % len(action.maps),
        "averaged u = %s" % text,
        "unital: %s" % _yesno(result["unital"]),
    ]
    return result, human


def _cmd_canonical_lift_check(config: RunConfig):
    chart = _chart(config)
    probes = config.params.get("probes") or 20
    report = splitlab.theorem_iso_check(chart.lifting, probes=probes, seed=config.seed)
    result = {
        "section_ok": report.section_ok,
        "additive_ok": report.additive_ok,
        "multiplicative_ok": report.multiplicative_ok,
        "ok": report.ok,
    }
    human = [
        "splitting retracts p-th powers: %s" % _yesno(report.section_ok),
        "pair map additive: %s" % _yesno(report.additive_ok),
        "pair map multiplicative: %s" % _yesno(report.multiplicative_ok),
    ]
    human.append("all identities hold" if report.ok else "failed: %s" % ", ".join(report.failures()))
    return result, human


def _scan_primes(config: RunConfig) -> list[int]:
    text = config.params.get("p")
    if not text:
        text = os.environ.get(PRIMES_ENV_VAR, "")
    if text:
        return [int(part) for part in text.split(",") if part.strip()]
    return list(DEFAULT_SCAN_PRIMES)


def _cmd_p1_scan(config: RunConfig):
    primes = _scan_primes(config)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            coefficients = list(pool.map(splitlab.p1_invariant_scan, primes))
    else:
        coefficients = [splitlab.p1_invariant_scan(p) for p in primes]
    rows = [[p, c] for p, c in zip(primes, coefficients)]
    all_zero = all(c == 0 for c in coefficients)
    result = {"coefficients": rows, "all_zero": all_zero}
    human = ["p=%d: %d" % (p, c) for p, c in rows]
    human.append("all zero: %s" % _yesno(all_zero))
    return result, human


def _screen_rows(lines: list[str], jobs: int) -> fanoscreen.TableReport:
    if jobs <= 1 or len(lines) < 2:
        return fanoscreen.ingest_table(lines)
    header, rows = lines[0], lines[1:]

    # one record per physical line in the parallel path
    def one(row: str) -> fanoscreen.TableReport:
        return fanoscreen.ingest_table([header, row])

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        partials = list(pool.map(one, rows))
    results = []
    errors = []
    for i, part in enumerate(partials):
        results.extend(part.results)
        errors.extend((i + 2, message) for _, message in part.errors)
    return fanoscreen.TableReport(tuple(results), tuple(errors))


def _cmd_fano_screen(config: RunConfig):
    path = config.params["table"]
    with open(path, newline="", encoding="utf-8") as handle:
        lines = handle.readlines()
    report = _screen_rows(lines, config.jobs)
    rows = [
        {
            "id": r.record.identifier,
            "degree": r.record.degree,
            "rho": r.record.rho,
            "b3": r.record.b3,
            "chi_tangent": r.chi_tangent,
            "c3": r.c3,
            "chi_o": r.chi_o,
            "verdict": r.verdict,
        }
        for r in report.results
    ]
    not_rigid = sum(1 for r in report.results if r.verdict == fanoscreen.NOT_RIGID)
    possibly = report.accepted - not_rigid
    result = {
        "rows": rows,
        "errors": [[line, message] for line, message in report.errors],
        "accepted": report.accepted,
        "rejected": report.rejected,
        "not_rigid": not_rigid,
        "possibly_rigid": possibly,
    }
    human = [
        "%s: %s (chi(T) = %d)" % (row["id"], row["verdict"], row["chi_tangent"])
        for row in rows
    ]
    human += ["line %d: %s" % (line, message) for line, message in report.errors]
    human.append("%d NotRigid / %d PossiblyRigid" % (not_rigid, possibly))
    return result, human


def _cmd_bounds(config: RunConfig):
    report = fanoscreen.boundedness_bounds(config.params["big_m"], config.params["m"])
    result = {
        "big_m": report.big_m,
        "m": report.m,
        "cap": report.cap,
        "partial_sums": list(report.partial_sums),
        "strict": report.strict,
        "equality": report.equality,
    }
    human = [
        "cap 4*M*m^3 = %d" % report.cap,
        "partial sums: %s" % ", ".join(str(s) for s in report.partial_sums),
        "strictly below the cap: %s" % _yesno(report.strict),
    ]
    if report.equality:
        human.append("degenerate m = 1 case: chain meets the cap exactly")
    return result, human


_HANDLERS = {
    "witt": _cmd_witt,
    "lift-validate": _cmd_lift_validate,
    "delta": _cmd_delta,
    "xi-det": _cmd_xi_det,
    "log-xi-det": _cmd_log_xi_det,
    "split-from-lift": _cmd_split_from_lift,
    "compat": _cmd_compat,
    "blowup": _cmd_blowup,
    "product": _cmd_product,
    "restrict": _cmd_restrict,
    "psi": _cmd_psi,
    "point-lift": _cmd_point_lift,
    "roundtrip": _cmd_roundtrip,
    "fedder": _cmd_fedder,
    "compat-split": _cmd_compat_split,
    "divisor": _cmd_divisor,
    "average": _cmd_average,
    "canonical-lift-check": _cmd_canonical_lift_check,
    "p1-scan": _cmd_p1_scan,
    "fano-screen": _cmd_fano_screen,
    "bounds": _cmd_bounds,
}


def _write_report(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run_command(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit status."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        print("unknown command %r" % config.command, file=sys.stderr)
        return 2
    try:
        result, human = handler(config)
    except (ValueError, ArithmeticError, AssertionError, OSError) as exc:
        envelope = {
            "command": config.command,
            "ok": False,
            "error": {"kind": type(exc).__name__, "message": str(exc)},
        }
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        if not config.human:
            _write_report(config, json.dumps(envelope, indent=2, sort_keys=True) + "\n")
        return 1
    if config.human:
        _write_report(config, "\n".join(human) + "\n")
    else:
        envelope = {"command": config.command, "ok": True, "result": result}
        _write_report(config, json.dumps(envelope, indent=2, sort_keys=True) + "\n")
    return 0


# -- argument wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="froblift",
        description="Exact mod-p^2 Frobenius lifting and splitting workbench.",
    )
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="text lines instead of JSON")
    common.add_argument("--out", metavar="FILE", help="write the report to a file")

    def add(name, help_text, *, chart=False, prime=False, seed=False, jobs=False):
        parser = sub.add_parser(name, parents=[common], help=help_text)
        if chart:
            parser.add_argument("--chart", required=True, metavar="FILE",
                                help="chart file (JSON or TOML)")
        if prime:
            parser.add_argument("--p", type=int, metavar="P", help="prime, checked against files")
        if seed:
            parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        if jobs:
            parser.add_argument("--jobs", type=int, default=1,
                                help="parallel workers across independent inputs")
        return parser

    p = add("witt", "length-2 Witt scalar arithmetic, checked against the ghost map",
            prime=True)
    p.add_argument("--a", metavar="A0,A1", help="first scalar")
    p.add_argument("--b", metavar="B0,B1", help="second scalar")

    add("lift-validate", "validate a chart file and print the deltas", chart=True, prime=True)

    p = add("delta", "divided Frobenius defect of a polynomial", chart=True, prime=True)
    p.add_argument("--poly", required=True, help="polynomial expression mod p^2")

    add("xi-det", "determinant of the divided-Frobenius matrix", chart=True, prime=True)

    p = add("log-xi-det", "determinant in the mixed basis along coordinate divisors",
            chart=True, prime=True)
    p.add_argument("--log-rank", type=int, dest="log_rank",
                   help="how many leading coordinates cut the divisor")

    add("split-from-lift", "trace-form splitting with key polynomial det(xi)",
        chart=True, prime=True)

    p = add("compat", "is the lifting compatible with an ideal", chart=True, prime=True)
    p.add_argument("--ideal", required=True, help="comma-separated generators mod p^2")

    p = add("blowup", "does the lifting extend over a coordinate blow-up", chart=True, prime=True)
    p.add_argument("--center", help="comma-separated coordinate names")

    p = add("product", "block product of two chart liftings", prime=True)
    p.add_argument("--chart", required=True, metavar="FILE", help="left factor")
    p.add_argument("--other", required=True, metavar="FILE", help="right factor")

    p = add("restrict", "induced lifting on a coordinate divisor", chart=True, prime=True)
    p.add_argument("--var", required=True, help="coordinate to set to zero")

    p = add("psi", "canonical mod-p^2 base change along a polynomial map",
            chart=True, prime=True)
    p.add_argument("--map", required=True, help="comma-separated images, one per chart variable")
    p.add_argument("--map-vars", dest="map_vars", help="source variable names (default x1,x2,...)")

    p = add("point-lift", "canonical lift of a rational point", chart=True, prime=True)
    p.add_argument("--point", required=True, help="comma-separated coordinates")

    p = add("roundtrip", "verify both recover-Frobenius identities", chart=True, prime=True,
            seed=True)
    p.add_argument("--poly", help="single polynomial expression mod p^2")
    p.add_argument("--count", type=int, help="random polynomials to test (default 100)")

    p = add("fedder", "hypersurface F-splitting test", prime=True)
    p.add_argument("--poly", required=True, help="hypersurface polynomial mod p")
    p.add_argument("--vars", help="comma-separated variable names")
    p.add_argument("--arity", type=int, help="use x1..xn instead of --vars")

    p = add("compat-split", "is an ideal compatibly split", prime=True)
    p.add_argument("--split", required=True, metavar="FILE", help="splitting file")
    p.add_argument("--ideal", required=True, help="comma-separated generators mod p")

    p = add("divisor", "divisor data of a splitting against candidate factors", prime=True)
    p.add_argument("--split", required=True, metavar="FILE", help="splitting file")
    p.add_argument("--factors", required=True, help="comma-separated candidate factors")

    p = add("average", "average a splitting over a finite substitution group", prime=True)
    p.add_argument("--split", required=True, metavar="FILE", help="splitting file")
    p.add_argument("--group", required=True, metavar="FILE", help="substitution maps file")

    p = add("canonical-lift-check", "ring-map identities into the canonical lift",
            chart=True, prime=True, seed=True)
    p.add_argument("--probes", type=int, help="random probes per identity (default 20)")

    p = add("p1-scan", "middle coefficient of the line scan polynomial", jobs=True)
    p.add_argument("--p", metavar="P1,P2,...",
                   help="primes to scan (default: $%s or %s)"
                   % (PRIMES_ENV_VAR, ",".join(str(q) for q in DEFAULT_SCAN_PRIMES)))

    p = add("fano-screen", "rigidity screen over a CSV of numeric invariants", jobs=True)
    p.add_argument("table", metavar="CSV", help="rows id,degree,rho,b3[,c1c2]")

    p = add("bounds", "degree bound chain against the 4*M*m^3 cap")
    p.add_argument("--big-m", dest="big_m", type=int, required=True, help="degree bound M")
    p.add_argument("--m", type=int, required=True, help="multiplier m")

    return top


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = dict(vars(ns))
    command = params.pop("command")
    human = params.pop("human", False)
    out = params.pop("out", None)
    seed = params.pop("seed", 0)
    jobs = params.pop("jobs", 1)
    prime = None
    if command != "p1-scan":
        prime = params.pop("p", None)
    variables = params.pop("vars", None)
    if variables:
        variables = tuple(part.strip() for part in variables.split(","))
    return RunConfig(
        command=command,
        human=human,
        out=out,
        seed=seed,
        jobs=jobs,
        prime=prime,
        variables=variables,
        params=params,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run_command(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
