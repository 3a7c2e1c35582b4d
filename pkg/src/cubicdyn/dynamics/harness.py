"""Sampling-based identity checks, orbit iteration and the generator-word grammar."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from ..errors import CubicError, NotOnSurface, ParseError
from ..numeric import SeededSampler, as_q, qstr
from ..surfaces import V, VI, SurfacePoint, random_params_v, random_params_vi, sample_surface
from . import maps

EQUAL, UNEQUAL, INCONCLUSIVE = "Equal", "Unequal", "Inconclusive"

# evaluation failures that mean "this sample sits on a polar locus"
_POLAR = (CubicError, ZeroDivisionError)


@dataclass
class Verdict:
    kind: str
    trials: int
    skipped: int = 0
    witness: dict | None = None
    name: str = ""

    @property
    def ok(self) -> bool:
        return self.kind == EQUAL

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.kind, "trials": self.trials, "skipped": self.skipped}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _draw(family: str, sampler: SeededSampler, params=None, params_fn=None) -> SurfacePoint:
    if params is None:
        params = params_fn(sampler) if params_fn else (
            random_params_v(sampler) if family == V else random_params_vi(sampler))
    return sample_surface(family, params, sampler)


def _images(fmap, p: SurfacePoint):
    return tuple(fmap.raw(p.x, p.params)), fmap.transport(p.params)


def compare_maps(f, h, sampler: SeededSampler, trials: int = 50, params=None,
                 params_fn: Callable | None = None, name: str = "",
                 max_skips: int | None = None) -> Verdict:
    """Evaluate f and h at ``trials`` admissible random points and compare exactly.

    Samples where either map hits a polar locus are redrawn; they count toward
    ``skipped``. Parameters are redrawn per trial unless ``params`` is fixed.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if f.source != h.source:
        raise ValueError("maps must share a source family")
    max_skips = 20 * trials if max_skips is None else max_skips
    done = skipped = index = 0
    while done < trials:
        if skipped > max_skips:
            return Verdict(INCONCLUSIVE, done, skipped, name=name or f"{f.name} vs {h.name}")
        sub = sampler.split(index)
        index += 1
        try:
            p = _draw(f.source, sub, params, params_fn)
        except _POLAR:
            skipped += 1
            continue
        try:
            a, pa = _images(f, p)
            b, pb = _images(h, p)
        except NotOnSurface as exc:
            # an image off the surface is a wrong map, not an unlucky draw
            return Verdict(UNEQUAL, done + 1, skipped, {"point": p.to_json(), "error": str(exc)},
                           name or f"{f.name} vs {h.name}")
        except _POLAR:
            skipped += 1
            continue
        done += 1
        if a != b or pa != pb:
            witness = {"point": p.to_json(), "left": [qstr(t) for t in a], "right": [qstr(t) for t in b]}
            return Verdict(UNEQUAL, done, skipped, witness, name or f"{f.name} vs {h.name}")
    return Verdict(EQUAL, done, skipped, name=name or f"{f.name} vs {h.name}")


# -- generator words --

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_]*)(-?\d+)?\s*(?:\(([^)]*)\))?\s*(?:\^\s*(-?\d+))?\s*$")


def _registry() -> dict:
    """name -> (arity, needs index, forward factory, inverse factory)."""
    R = {}
    R["id"] = (0, False, lambda: maps.identity(V), lambda: maps.identity(V))
    R["g"] = (0, False, lambda: maps.tame_g, lambda: maps.tame_g_inv)
    R["sigma"] = (0, True, lambda i: maps.sigma(i), lambda i: maps.sigma(i))
    R["b34"] = (0, False, lambda: maps.half_braid_b34, lambda: maps.half_braid_b34_inv)
    R["s"] = (0, True, maps.stokes_s, maps.stokes_s_inv)
    R["t"] = (1, True, lambda k, lam: maps.torus_t(k, lam), lambda k, lam: maps.torus_t(k, 1 / lam))
    R["mhat"] = (0, False, lambda: maps.formal_monodromy, lambda: maps.formal_monodromy_inv)
    R["mhat_half"] = (0, False, lambda: maps.formal_monodromy_sqrt, maps.formal_monodromy_sqrt_inv_map)
    for ij, ji in (("23", "32"), ("31", "13")):
        fwd = getattr(maps, "g" + ij)
        inv = getattr(maps, "g" + ji)
        R["g" + ij] = (1, False, fwd, inv)
        R["g" + ji] = (1, False, inv, fwd)
    for ij in ((1, 2), (2, 3), (3, 1)):
        R["h%d%d" % ij] = (0, False, (lambda ij=ij: maps.braid_h(ij)), (lambda ij=ij: maps.braid_h_inv(ij)))
    return R


REGISTRY = _registry()

@dataclass(frozen=True)
class Generator:
    name: str
    index: int | None = None
    args: tuple = ()
    power: int = 1

    def label(self) -> str:
        out = self.name + ("" if self.index is None else str(self.index))
        if self.args:
            out += "(" + ", ".join(qstr(a) for a in self.args) + ")"
        if self.power != 1:
            out += f"^{self.power}"
        return out

    def to_map(self):
        arity, indexed, fwd, inv = REGISTRY[self.name]
        pre = (self.index,) if indexed else ()
        step = (fwd if self.power > 0 else inv)(*pre, *self.args)
        if self.power == 0:
            return maps.identity(step.source)
        return maps.compose_all([step] * abs(self.power))


def _parse_generator(text: str) -> Generator:
    m = _TOKEN.match(text)
    if not m:
        raise ParseError(f"cannot parse generator {text!r}")
    name, idx, args, power = m.groups()
    if name + (idx or "") in REGISTRY:
        name, idx = name + (idx or ""), None
    if name not in REGISTRY:
        raise ParseError(f"unknown generator {text.strip()!r}")
    arity, indexed, _, _ = REGISTRY[name]
    if indexed and idx is None:
        raise ParseError(f"{name} needs an index, e.g. {name}1")
    if not indexed and idx is not None:
        raise ParseError(f"{name} takes no index")
    try:
        vals = tuple(as_q(a) for a in args.split(",")) if args and args.strip() else ()
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad argument in {text!r}: {exc}") from exc
    if len(vals) != arity:
        raise ParseError(f"{name} takes {arity} argument(s), got {len(vals)}")
    if any(v == 0 for v in vals):
        raise ParseError(f"{name}: parameters must be nonzero")
    return Generator(name, int(idx) if idx is not None else None, vals, int(power) if power else 1)


@dataclass(frozen=True)
class GeneratorWord:
    """Generators read left to right; the rightmost one acts first."""

    items: tuple = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> "GeneratorWord":
        parts = [t for t in re.split(r"\s*[.∘]\s*(?![^()]*\))", text.strip())]
        if not parts or any(not t for t in parts):
            raise ParseError(f"empty generator in word {text!r}")
        return cls(tuple(_parse_generator(t) for t in parts))

    def to_map(self):
        return maps.compose_all([g.to_map() for g in self.items])

    def __str__(self):
        return " . ".join(g.label() for g in self.items)


# -- orbits --

@dataclass
class Orbit:
    points: list
    period: int | None = None
    preperiod: int | None = None
    truncated_at: int | None = None
    reason: str | None = None

    def summary(self) -> dict:
        out = {"period": self.period, "truncated_at": self.truncated_at}
        if self.preperiod:
            out["preperiod"] = self.preperiod
        if self.reason:
            out["reason"] = self.reason
        return out


def _state_key(p: SurfacePoint) -> str:
    return p.family + ":" + p.key() + "|" + repr(p.params)


def orbit(word, start: SurfacePoint, steps: int) -> Orbit:
    """Iterate ``word`` from ``start``; stop at the first exact revisit or polar hit."""
    fmap = word.to_map() if isinstance(word, GeneratorWord) else word
    seen = {_state_key(start): 0}
    pts = [start]
    p = start
    for n in range(1, steps + 1):
        try:
            p = fmap(p)
        except _POLAR as exc:
            return Orbit(pts, truncated_at=n, reason=str(exc))
        pts.append(p)
        key = _state_key(p)
        if key in seen:
            m = seen[key]
            return Orbit(pts, period=n - m, preperiod=m)
        seen[key] = n
    return Orbit(pts)
