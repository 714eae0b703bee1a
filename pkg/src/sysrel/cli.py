"""Command-line entry point ``sysrel``.

Exit codes: 0 positive verdict or success, 1 negative verdict, 2 budget
exhausted, 3 usage or parse error, 4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import approx, io, projection, regular, transducer
from .encoders.pda import PdaError, check_pda, encode_pda
from .sca import ScaError, validate_sca
from .words import AlphabetError, fmt, pad_to

OK, NEGATIVE, EXHAUSTED, USAGE, INVALID = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _word(text: str) -> tuple:
    return tuple(text.split())


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise io.ParseError(str(exc)) from exc


def cmd_validate(args) -> int:
    text = _read(args.file)
    kind = io.detect(text)
    if kind == "transducer":
        report = io.parse_transducer(text).report
        print(report.describe())
        return OK if report.is_valid else INVALID
    if kind == "sca":
        try:
            A = io.load_sca(args.file)
        except ValueError as exc:
            print(f"INVALID\n  {exc}")
            return INVALID
        problems = validate_sca(A)
        print("valid" if not problems else "INVALID\n  " + "\n  ".join(problems))
        return OK if not problems else INVALID
    if kind == "pda":
        try:
            check_pda(io.parse_pda(text))
        except PdaError as exc:
            print(f"INVALID\n  {exc}")
            return INVALID
        print("valid")
        return OK
    raise io.ParseError("unrecognized file header")


def _load_valid(path):
    T = io.load_transducer(path)
    if not T.report.is_valid:
        print(T.report.describe(), file=sys.stderr)
        raise transducer.TransducerError("invalid transducer")
    return T


def cmd_apply(args) -> int:
    T = _load_valid(args.file)
    nfa = transducer.image_nfa(T, _word(args.input))
    if args.strip_absorb:
        for tok in T.alphabet.junk:
            nfa = regular.right_strip_filter(nfa, tok)
    if regular.is_finite(nfa):
        words = regular.enumerate_words(nfa, nfa.size)
        print(f"finite image, {len(words)} word(s)")
        for w in words:
            print(f"  {fmt(w)}")
    else:
        print(f"infinite image; automaton with {nfa.size} states:")
        print(regular.to_dot(nfa, "image"), end="")
    return OK


def cmd_compose(args) -> int:
    C = transducer.compose(_load_valid(args.first), _load_valid(args.second))
    io.save_transducer(C, args.output)
    print(f"wrote {args.output} ({len(C.states)} states)")
    return OK


def cmd_project(args) -> int:
    S = projection.sigma_n(_load_valid(args.file), args.n)
    print(f"# level {S.n}, {len(S)} pairs")
    print(S.dump(), end="")
    return OK


def cmd_chi(args) -> int:
    A = io.load_sca(args.sca)
    x, y = _word(args.pair[0]), _word(args.pair[1])
    u, v = (tuple(A.alphabet.word(w)) for w in (x, y))
    nfa = projection.chi_nfa(A.phi, pad_to(A.alphabet, u, args.n), pad_to(A.alphabet, v, args.n),
                             alphabet=A.alphabet)
    empty = regular.is_empty(nfa)
    print(f"chi at level {args.n}: {nfa.size} states, {'empty' if empty else 'nonempty'}")
    if args.dot:
        Path(args.dot).write_text(regular.to_dot(nfa, "chi"), encoding="utf-8")
    return NEGATIVE if empty else OK


def cmd_approx(args) -> int:
    A = io.load_sca(args.sca)
    decide = approx.decide_empty_n if args.problem == "empty" else approx.decide_universal_n
    d = decide(A, args.n)
    print(json.dumps(d.record(), sort_keys=True))
    if args.report:
        io.write_jsonl([d.record()], args.report)
    return OK if d.verdict else NEGATIVE


def cmd_include(args) -> int:
    d = approx.decide_inclusion_n(io.load_sca(args.left), io.load_sca(args.right), args.n)
    print(json.dumps(d.record(), sort_keys=True))
    return OK if d.verdict else NEGATIVE


def cmd_lim(args) -> int:
    A, B = io.load_sca(args.left), io.load_sca(args.right)
    decisions = [approx.decide_inclusion_n(A, B, n) for n in range(1, args.upto + 1)]
    lims = approx.lim_from_verdicts([d.verdict for d in decisions])
    records = []
    for d, lim in zip(decisions, lims):
        rec = d.record()
        rec["lim"] = str(lim)
        records.append(rec)
        print(f"n={d.n} verdict={int(d.verdict)} lim={lim}")
    if args.report:
        io.write_jsonl(records, args.report)
    return OK


def cmd_reach(args) -> int:
    A = io.load_sca(args.sca)
    x, y = _word(args.pair[0]), _word(args.pair[1])
    budget = approx.Budget(args.max_len, args.max_level, args.max_states)
    out = approx.reach_semidecide(A.base, x, y, budget)
    if isinstance(out, approx.Reached):
        note = " (the empty word acts as the identity)" if not out.word else ""
        print(f"reached by {fmt(out.word)}{note}")
        return OK
    if isinstance(out, approx.EmptyCertificate):
        print(f"unreachable: level {out.n} approximation is empty")
        return NEGATIVE
    print(f"exhausted: {out.words_tried} words, {out.levels_tried} levels ({out.reason})")
    return EXHAUSTED


def cmd_encode_pda(args) -> int:
    P = io.parse_pda(_read(args.file))
    try:
        enc = encode_pda(P)
    except PdaError as exc:
        print(f"INVALID\n  {exc}", file=sys.stderr)
        return INVALID
    out = Path(args.output)
    stem = Path(args.file).stem
    target = io.save_sca(enc.sca, out, stem)
    legend = {tok: list(v) for tok, v in enc.legend.items()}
    (out / f"{stem}.legend.json").write_text(json.dumps(legend, indent=2, sort_keys=True) + "\n",
                                             encoding="utf-8")
    print(f"wrote {target}")
    return OK


def cmd_dist(args) -> int:
    d = io.parse_distance(_read(args.alphabet))
    x, y = _word(args.x), _word(args.y)
    print(f"val({fmt(x)}) = {d.val(x)}")
    print(f"val({fmt(y)}) = {d.val(y)}")
    print(f"dist = {d.dist(x, y)}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sysrel", description="synchronous subsequential relations and SCAs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a machine, SCA or PDA file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("apply", help="image of one input word")
    s.add_argument("file")
    s.add_argument("--input", required=True)
    s.add_argument("--strip-absorb", action="store_true")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("compose", help="compose two machines")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("project", help="length-n prefix relation of a machine")
    s.add_argument("file")
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("chi", help="outer words relating two level-n prefixes")
    s.add_argument("sca")
    s.add_argument("--pair", nargs=2, required=True, metavar=("X", "Y"))
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("approx", help="decide a level-n approximation")
    s.add_argument("sca")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--problem", choices=("empty", "universal"), required=True)
    s.add_argument("--report")
    s.set_defaults(func=cmd_approx)

    s = sub.add_parser("include", help="level-n inclusion of two SCAs")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_include)

    s = sub.add_parser("lim", help="Lim estimator prefix for an inclusion")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--upto", type=int, required=True)
    s.add_argument("--report")
    s.set_defaults(func=cmd_lim)

    s = sub.add_parser("reach", help="semi-decide reachability of a pair")
    s.add_argument("sca")
    s.add_argument("--pair", nargs=2, required=True, metavar=("X", "Y"))
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--max-level", type=int, default=3)
    s.add_argument("--max-states", type=int, default=5000)
    s.set_defaults(func=cmd_reach)

    s = sub.add_parser("encode-pda", help="encode a PDA file as an SCA")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_encode_pda)

    s = sub.add_parser("dist", help="valuation distance between two words")
    s.add_argument("alphabet")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(func=cmd_dist)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for attr in ("n", "upto"):
        if getattr(args, attr, 1) is not None and getattr(args, attr, 1) < 1:
            print(f"sysrel: error: -{attr} must be >= 1", file=sys.stderr)
            return USAGE
    try:
        return args.func(args)
    except (transducer.TransducerError, ScaError) as exc:
        print(f"sysrel: {exc}", file=sys.stderr)
        return INVALID
    except (io.ParseError, AlphabetError, projection.LevelMismatch) as exc:
        print(f"sysrel: error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"sysrel: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
