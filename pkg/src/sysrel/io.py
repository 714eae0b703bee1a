"""Line-oriented text formats for machines, SCAs, PDAs and alphabets.

All formats are UTF-8, one directive per line, ``#`` starts a comment only
at the beginning of a line (``#`` is also a popular absorbing letter).
Words inside SCA files are double-quoted token sequences; ``""`` is the
empty word.
"""

from __future__ import annotations

import json
import shlex
from pathlib import Path
from typing import Iterable

from .encoders.distance import NormalDistance
from .encoders.pda import Pda
from .sca import Sca, SemiSca
from .transducer import SysTransducer
from .words import Alphabet, AlphabetError

TRANSDUCER_HEADER = "sys-transducer v1"
SCA_HEADER = "sys-sca v1"
PDA_HEADER = "pda v1"
ALPHABET_HEADER = "alphabet v1"
EPS = "-"


class ParseError(ValueError):
    pass


def _lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield num, line


def _header(text: str, expected: str):
    lines = list(_lines(text))
    if not lines or lines[0][1] != expected:
        raise ParseError(f"expected header {expected!r}")
    return lines[1:]


def detect(text: str) -> str | None:
    for _, line in _lines(text):
        for kind, head in (("transducer", TRANSDUCER_HEADER), ("sca", SCA_HEADER),
                           ("pda", PDA_HEADER), ("alphabet", ALPHABET_HEADER)):
            if line == head:
                return kind
        return None
    return None


# -- transducers -----------------------------------------------------------------------


def parse_transducer(text: str) -> SysTransducer:
    fields: dict = {}
    trans = set()
    for num, line in _header(text, TRANSDUCER_HEADER):
        key, *rest = line.split()
        if key == "trans":
            if len(rest) != 4:
                raise ParseError(f"line {num}: trans needs 4 fields")
            trans.add(tuple(rest))
        elif key in ("alphabet", "states", "junk"):
            fields[key] = rest
        elif key in ("pad", "absorb", "initial"):
            if len(rest) != 1:
                raise ParseError(f"line {num}: {key} takes one token")
            fields[key] = rest[0]
        else:
            raise ParseError(f"line {num}: unknown directive {key!r}")
    for key in ("alphabet", "pad", "initial"):
        if key not in fields:
            raise ParseError(f"missing {key!r} line")
    try:
        A = Alphabet(tuple(fields["alphabet"]), fields["pad"], fields.get("absorb"),
                     tuple(fields.get("junk", ())))
        return SysTransducer.build(A, fields["initial"], trans, fields.get("states", ()))
    except (AlphabetError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def serialize_transducer(T: SysTransducer) -> str:
    A = T.alphabet
    lines = [TRANSDUCER_HEADER, "alphabet " + " ".join(A.letters), f"pad {A.pad}"]
    if A.absorb is not None:
        lines.append(f"absorb {A.absorb}")
    if A.extra_junk:
        lines.append("junk " + " ".join(A.extra_junk))
    lines += ["states " + " ".join(sorted(T.states)), f"initial {T.initial}"]
    lines += [f"trans {q} {a} {b} {r}" for q, a, b, r in sorted(T.transitions)]
    return "\n".join(lines) + "\n"


def load_transducer(path) -> SysTransducer:
    return parse_transducer(Path(path).read_text(encoding="utf-8"))


def save_transducer(T: SysTransducer, path) -> None:
    Path(path).write_text(serialize_transducer(T), encoding="utf-8")


# -- SCAs --------------------------------------------------------------------------------


def parse_word(text: str) -> tuple:
    return tuple(text.split())


def quote(w: Iterable[str]) -> str:
    return '"' + " ".join(w) + '"'


def parse_sca(text: str, base_dir=".", loader=load_transducer) -> Sca:
    outer, maps, accept = None, {}, set()
    for num, line in _header(text, SCA_HEADER):
        key, _, rest = line.partition(" ")
        if key == "outer":
            outer = tuple(rest.split())
        elif key == "map":
            letter, eq, path = rest.partition("=")
            if not eq or not letter.strip() or not path.strip():
                raise ParseError(f"line {num}: expected 'map <letter> = <path>'")
            maps[letter.strip()] = path.strip()
        elif key == "accept":
            try:
                parts = shlex.split(rest)
            except ValueError as exc:
                raise ParseError(f"line {num}: {exc}") from exc
            if len(parts) != 2:
                raise ParseError(f"line {num}: accept needs two quoted words")
            accept.add((parse_word(parts[0]), parse_word(parts[1])))
        else:
            raise ParseError(f"line {num}: unknown directive {key!r}")
    if outer is None:
        raise ParseError("missing 'outer' line")
    if set(maps) != set(outer):
        raise ParseError("every outer letter needs exactly one map line")
    phi = {a: loader(Path(base_dir) / maps[a]) for a in outer}
    return Sca(SemiSca(outer, phi), frozenset(accept))


def serialize_sca(A: Sca, paths: dict) -> str:
    lines = [SCA_HEADER, "outer " + " ".join(A.outer)]
    lines += [f"map {a} = {paths[a]}" for a in A.outer]
    lines += [f"accept {quote(x)} {quote(y)}" for x, y in sorted(A.accepting)]
    return "\n".join(lines) + "\n"


def load_sca(path) -> Sca:
    path = Path(path)
    return parse_sca(path.read_text(encoding="utf-8"), path.parent)


def save_sca(A: Sca, directory, stem: str) -> Path:
    """Write ``stem.sca`` plus one machine file per outer letter."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {}
    for i, a in enumerate(A.outer):
        name = f"{stem}.{i}.syst"
        save_transducer(A.phi[a], directory / name)
        paths[a] = name
    target = directory / f"{stem}.sca"
    target.write_text(serialize_sca(A, paths), encoding="utf-8")
    return target


# -- PDAs ----------------------------------------------------------------------------------


def parse_pda(text: str) -> Pda:
    fields: dict = {}
    moves = set()
    for num, line in _header(text, PDA_HEADER):
        key, *rest = line.split()
        if key == "move":
            if len(rest) < 4:
                raise ParseError(f"line {num}: move needs state, input, top, target")
            p, a, X, q, *beta = rest
            moves.add((p, None if a == EPS else a, X, q, tuple(beta)))
        elif key in ("states", "inputs", "stack"):
            fields[key] = tuple(rest)
        elif key in ("initial", "start"):
            if len(rest) != 1:
                raise ParseError(f"line {num}: {key} takes one token")
            fields[key] = rest[0]
        else:
            raise ParseError(f"line {num}: unknown directive {key!r}")
    for key in ("states", "inputs", "stack", "initial", "start"):
        if key not in fields:
            raise ParseError(f"missing {key!r} line")
    return Pda(fields["states"], fields["inputs"], fields["stack"], fields["initial"],
               fields["start"], frozenset(moves))


def serialize_pda(P: Pda) -> str:
    lines = [PDA_HEADER, "states " + " ".join(P.states), "inputs " + " ".join(P.inputs),
             "stack " + " ".join(P.stack), f"initial {P.initial}", f"start {P.start_symbol}"]
    for p, a, X, q, beta in sorted(P.transitions, key=lambda t: (t[0], t[1] or "", t[2:])):
        lines.append(" ".join(["move", p, EPS if a is None else a, X, q, *beta]))
    return "\n".join(lines) + "\n"


# -- alphabets for the distance layer ------------------------------------------------------


def parse_distance(text: str) -> NormalDistance:
    fields: dict = {}
    for num, line in _header(text, ALPHABET_HEADER):
        key, *rest = line.split()
        if key not in ("letters", "pad", "order", "mode"):
            raise ParseError(f"line {num}: unknown directive {key!r}")
        fields[key] = rest
    if "letters" not in fields or "pad" not in fields:
        raise ParseError("need 'letters' and 'pad' lines")
    try:
        A = Alphabet(tuple(fields["letters"]), fields["pad"][0])
        order = tuple(fields["order"]) if "order" in fields else None
        mode = fields.get("mode", ["separated"])[0]
        return NormalDistance(A, order, mode)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_distance(d: NormalDistance) -> str:
    A = d.alphabet
    return "\n".join([ALPHABET_HEADER, "letters " + " ".join(A.letters), f"pad {A.pad}",
                      "order " + " ".join(d.order), f"mode {d.mode}"]) + "\n"


# -- reports ---------------------------------------------------------------------------------


def write_jsonl(records: Iterable[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, default=str) + "\n")


def read_jsonl(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
