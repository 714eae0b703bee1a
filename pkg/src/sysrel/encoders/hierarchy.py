"""Programs over a hierarchy of fixed-width variables, compiled to machines.

The inner word is split into consecutive regions ``x1, x2, ...`` of fixed
widths followed by an untouched tail.  Each region has an ordered list of
guarded rules; a guard tests letters of *earlier* regions only, so the
machine knows which rule applies by the time it reaches the region.  The
first rule whose guards hold rewrites the region letter by letter; regions
with no applicable rule are copied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..transducer import SysTransducer
from ..words import Alphabet


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    guards: tuple = ()  # ((region, offset, letter), ...) all must hold
    mapping: Mapping = field(default_factory=dict)  # letter -> letter, identity elsewhere

    def apply(self, letter: str) -> str:
        return self.mapping.get(letter, letter)


@dataclass(frozen=True)
class HierarchySpec:
    alphabet: Alphabet
    widths: tuple
    rules: tuple  # one tuple of Rule per region

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(self.widths))
        object.__setattr__(self, "rules", tuple(tuple(r) for r in self.rules))


def _check(spec: HierarchySpec) -> None:
    A = spec.alphabet
    if len(spec.rules) != len(spec.widths):
        raise LayoutError("need one rule list per region")
    if any(w < 1 for w in spec.widths):
        raise LayoutError("region widths must be positive")
    for i, rules in enumerate(spec.rules):
        for rule in rules:
            for region, offset, letter in rule.guards:
                if not 0 <= region < i:
                    raise LayoutError(
                        f"a guard of region {i} reads region {region}; only earlier ones are known")
                if not 0 <= offset < spec.widths[region]:
                    raise LayoutError(f"offset {offset} outside region {region}")
                A.check([letter])
            A.check(rule.mapping)
            A.check(rule.mapping.values())
            if rule.mapping.get(A.pad, A.pad) != A.pad:
                raise LayoutError("rules must leave uninstantiated (pad) positions alone")


def evaluate(spec: HierarchySpec, word: Sequence[str]) -> tuple:
    """Direct evaluation on a padded word covering at least the whole layout."""
    _check(spec)
    A = spec.alphabet
    total = sum(spec.widths)
    w = tuple(word) + (A.pad,) * max(0, total - len(word))
    starts = [sum(spec.widths[:i]) for i in range(len(spec.widths))]
    out = list(w)
    for i, rules in enumerate(spec.rules):
        rule = next((r for r in rules
                     if all(w[starts[g] + o] == c for g, o, c in r.guards)), None)
        if rule is not None:
            for k in range(starts[i], starts[i] + spec.widths[i]):
                out[k] = rule.apply(w[k])
    return tuple(out)


def build_hierarchy_machine(spec: HierarchySpec) -> SysTransducer:
    """Deterministic machine remembering the letters read inside the layout."""
    _check(spec)
    A = spec.alphabet
    total = sum(spec.widths)
    region_of = [i for i, w in enumerate(spec.widths) for _ in range(w)]
    starts = [sum(spec.widths[:i]) for i in range(len(spec.widths))]

    def name(prefix):
        return "h:" + ".".join(str(A.index(t)) for t in prefix) if prefix else "h"

    def rule_for(i, prefix):
        for r in spec.rules[i]:
            if all(prefix[starts[g] + o] == c for g, o, c in r.guards):
                return r
        return None

    trans = []
    layer = [()]
    for pos in range(total):
        nxt = []
        for prefix in layer:
            rule = rule_for(region_of[pos], prefix)
            for a in A:
                b = rule.apply(a) if rule else a
                target = prefix + (a,)
                trans.append((name(prefix), a, b, name(target) if pos + 1 < total else "tail"))
                if pos + 1 < total:
                    nxt.append(target)
        layer = nxt
    trans += [("tail", a, a, "tail") for a in A]
    return SysTransducer.build(A, "h", trans)
