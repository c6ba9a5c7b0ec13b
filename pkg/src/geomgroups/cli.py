"""Command-line front end.

Exit codes: 0 success, 1 a verification or equality check failed,
2 usage or parse error, 3 undefined action or exhausted budget.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import bv as bvmod
from .constructions import block_word, c_word, s_word, wt, wt_star, wt_via_polish
from .errors import (
    BudgetExhausted,
    CapExceeded,
    DomainNeverIntersects,
    GeomError,
    ProbeUnstable,
    UndefinedAction,
)
from .ld import check_involutory, check_ld, check_left_cancellative, get_system
from .operators import apply_word, expand_word, format_word, orbit, parse_word
from .presentations import relations, sweep, translate_A_to_a, translate_rtl
from .realization import PLMap, pl_of_word, vmap_of_word
from .seeds import IDENTITY, word_seed
from .trees import parse_address, parse_tree, print_tree

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_UNDEFINED = 0, 1, 2, 3

REGIME_LETTERS = {
    "F": set("Aa"),
    "V": set("ACSacs"),
    "S": set("ASas"),
    "BV": set("ab"),
}


class UsageError(Exception):
    pass


def _tree(text: str, max_size: int):
    t = parse_tree(text)
    if t.size > max_size:
        raise UsageError(f"tree has {t.size} leaves, above the cap of {max_size}")
    return t


def _word(text: str, regime: str | None = None):
    w = parse_word(text)
    if regime is not None:
        bad = [str(g) for g in w if g.kind not in REGIME_LETTERS[regime]]
        if bad:
            raise UsageError(f"letters {' '.join(bad)} are not allowed in regime {regime}")
    return w


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.replace(",", " ").split()]


def _say(args, human: str, porcelain: str | None = None):
    print(porcelain if args.porcelain and porcelain is not None else human)


# -- subcommands -----------------------------------------------------------------

def cmd_apply(args) -> int:
    t = _tree(args.tree, args.max_size)
    w = _word(args.word)
    ld = get_system(args.ld) if args.ld else None
    print(print_tree(apply_word(t, expand_word(w), ld)))
    return EXIT_OK


def cmd_seed(args) -> int:
    w = _word(args.word, args.regime)
    s = word_seed(expand_word(w), reduce=not args.raw)
    _say(args, str(s), f"{print_tree(s.source, False)}\t{print_tree(s.target, False)}")
    return EXIT_OK


def _equal(regime: str, w1, w2) -> bool:
    if regime == "BV":
        return bvmod.bv_equal(w1, w2)
    return word_seed(expand_word(w1)) == word_seed(expand_word(w2))


def cmd_eq(args) -> int:
    w1, w2 = _word(args.w1, args.regime), _word(args.w2, args.regime)
    same = _equal(args.regime, w1, w2)
    _say(args, "equal" if same else "not equal", f"eq;{args.regime};{int(same)}")
    return EXIT_OK if same else EXIT_FAILED


def cmd_id(args) -> int:
    w = _word(args.word, args.regime)
    if args.regime == "BV":
        same = bvmod.bv_equal(w, ())
    else:
        same = word_seed(expand_word(w)) == IDENTITY
    _say(args, "identity" if same else "not the identity", f"id;{args.regime};{int(same)}")
    return EXIT_OK if same else EXIT_FAILED


def _gens(text: str) -> list:
    out: list = []
    for tok in text.replace(",", " ").split():
        if tok in ("A", "C", "S"):
            out.append(tok)
        else:
            out.extend(parse_word(tok))
    return out


def cmd_orbit(args) -> int:
    t = _tree(args.tree, args.max_size)
    ld = get_system(args.ld) if args.ld else None
    orb = orbit(t, _gens(args.gens), cap=args.cap, ld=ld)
    if args.count:
        print(len(orb))
    else:
        for state in orb.states:
            print(print_tree(state))
    return EXIT_OK


def render_dot(t, gens, cap: int = 10_000, ld=None) -> str:
    orb = orbit(t, gens, cap=cap, ld=ld, with_edges=True)
    lines = ["digraph orbit {"]
    for i, state in enumerate(orb.states):
        lines.append(f'  n{i} [label="{print_tree(state)}"];')
    for i, g, j in sorted(orb.edges, key=lambda e: (e[0], e[2], str(e[1]))):
        lines.append(f'  n{i} -> n{j} [label="{g}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_render(args) -> int:
    t = _tree(args.tree, args.max_size)
    ld = get_system(args.ld) if args.ld else None
    print(render_dot(t, _gens(args.gens), args.cap, ld))
    return EXIT_OK


def cmd_wt(args) -> int:
    t = _tree(args.tree, args.max_size)
    if args.polish:
        plain, star = wt_via_polish(t)
    else:
        plain, star = wt(t, args.colored), wt_star(t, args.colored)
    if args.porcelain:
        print(f"wt;{format_word(plain)}")
        print(f"wt*;{format_word(star)}")
    else:
        print(f"w_t  = {format_word(plain)}")
        print(f"w_t* = {format_word(star)}")
    return EXIT_OK


def cmd_cword(args) -> int:
    if args.block:
        p, q = args.block
        w = block_word(p, q, args.kind)
    else:
        maker = c_word if args.kind == "c" else s_word
        w = maker(_ints(args.I), _ints(args.J))
    print(format_word(w))
    return EXIT_OK


def cmd_translate(args) -> int:
    alpha = parse_address(args.address)
    w = translate_rtl(alpha) if args.rtl else translate_A_to_a(alpha)
    print(format_word(w))
    if args.check:
        from .operators import A

        ok = word_seed(expand_word(w)) == word_seed((A(alpha),))
        _say(args, "seed-equal to A[%s]" % (alpha or "e") if ok else "NOT seed-equal",
             f"translate;{alpha or 'e'};{int(ok)}")
        return EXIT_OK if ok else EXIT_FAILED
    return EXIT_OK


def cmd_verify(args) -> int:
    rels = relations(args.family, args.addr_len, args.index)
    if args.ld:
        report = sweep(rels, "sampled", ld=get_system(args.ld), samples=args.samples,
                       rng=random.Random(args.rng))
    else:
        report = sweep(rels)
    for v in report.verdicts:
        if args.porcelain:
            print(v.line())
        elif not v.ok or args.verbose:
            print(v.describe())
    if not args.porcelain:
        counts = ", ".join(f"{k}: {n}" for k, n in sorted(report.counts().items()))
        print(f"{args.family}: {len(report.verdicts)} relations ({counts})")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_ld(args) -> int:
    L = get_system(args.system)
    rng = random.Random(args.rng)
    check = {"ld": check_ld, "cancel": check_left_cancellative, "involutory": check_involutory}[args.law]
    verdict = check(L, args.samples, rng)
    _say(args, str(verdict), f"ld;{args.system};{args.law};{'holds' if verdict.holds else 'FAILED'}")
    return EXIT_OK if verdict.holds else EXIT_FAILED


def cmd_bv(args) -> int:
    op = args.bv_command
    if op == "eq":
        same = bvmod.bv_equal(bvmod.BvWord.parse(args.w1), bvmod.BvWord.parse(args.w2))
        _say(args, "equal" if same else "not equal", f"bv-eq;{int(same)}")
        return EXIT_OK if same else EXIT_FAILED
    if op == "psi":
        image = bvmod.psi(bvmod.BvWord.parse(args.word), parse_address(args.gen))
        _say(args, image.pretty(), image.to_label_text())
        return EXIT_OK
    if op in ("bracket", "circle"):
        x, y = bvmod.BvWord.parse(args.x), bvmod.BvWord.parse(args.y)
        fn = bvmod.bv_bracket if op == "bracket" else bvmod.bv_circle
        print(fn(x, y))
        return EXIT_OK
    if op in ("f", "e"):
        t = _tree(args.tree, args.max_size)
        print(bvmod.f_eval(t) if op == "f" else bvmod.e_eval(t))
        return EXIT_OK
    raise UsageError(f"unknown bv command {op!r}")


def cmd_plmap(args) -> int:
    w = expand_word(_word(args.word))
    if args.interval:
        for line in vmap_of_word(w).lines():
            print(line)
        return EXIT_OK
    f: PLMap = pl_of_word(w)
    if args.tsv:
        print("x\ty")
        for line in f.lines():
            print(line)
    else:
        print(" ".join("(%s,%s)" % tuple(line.split("\t")) for line in f.lines()))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="line-oriented machine output")
    common.add_argument("--rng", type=int, default=0, help="seed for sampling")
    common.add_argument("--max-size", type=int, default=1 << 16, help="cap on tree size")

    p = argparse.ArgumentParser(prog="geomgroups", description="Geometry groups of tree operators.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("apply", cmd_apply, "act on a tree with a word")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--ld", choices=["trivial", "conj", "bv", "negctrl"])

    sp = add("seed", cmd_seed, "canonical seed of a word")
    sp.add_argument("word")
    sp.add_argument("--regime", choices=["F", "V", "S"], default="V")
    sp.add_argument("--raw", action="store_true", help="do not collapse common cherries")

    sp = add("eq", cmd_eq, "decide equality of two words")
    sp.add_argument("w1")
    sp.add_argument("w2")
    sp.add_argument("--regime", choices=list(REGIME_LETTERS), default="V")

    sp = add("id", cmd_id, "decide whether a word is trivial")
    sp.add_argument("word")
    sp.add_argument("--regime", choices=list(REGIME_LETTERS), default="V")

    for name, fn, text in (("orbit", cmd_orbit, "enumerate an orbit"),
                           ("render", cmd_render, "orbit graph as DOT")):
        sp = add(name, fn, text)
        sp.add_argument("--tree", required=True)
        sp.add_argument("--gens", default="A", help="families A,C,S and/or explicit letters")
        sp.add_argument("--cap", type=int, default=100_000)
        sp.add_argument("--ld", choices=["trivial", "conj", "negctrl"])
        if name == "orbit":
            sp.add_argument("--count", action="store_true")

    sp = add("wt", cmd_wt, "construction words of a tree")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--colored", action="store_true")
    sp.add_argument("--polish", action="store_true", help="use the defect algorithm")

    sp = add("cword", cmd_cword, "sorting words c_{I,J}, s_{I,J}, c_{p,q}, s_{p,q}")
    sp.add_argument("--I", default="")
    sp.add_argument("--J", default="")
    sp.add_argument("--block", type=int, nargs=2, metavar=("P", "Q"))
    sp.add_argument("--kind", choices=["c", "s"], default="c")

    sp = add("translate", cmd_translate, "A_α as a word in a_i letters")
    sp.add_argument("address")
    sp.add_argument("--rtl", action="store_true", help="conjugation formula in right-to-left order")
    sp.add_argument("--check", action="store_true", help="compare seeds with A_α")

    sp = add("verify", cmd_verify, "verify a relation family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--addr-len", type=int, default=2)
    sp.add_argument("--index", type=int, default=4)
    sp.add_argument("--ld", choices=["trivial", "conj", "bv", "negctrl"])
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--verbose", action="store_true")

    sp = add("ld", cmd_ld, "check LD-system laws")
    ld_sub = sp.add_subparsers(dest="ld_command", required=True)
    chk = ld_sub.add_parser("check", parents=[common])
    chk.add_argument("--system", choices=["trivial", "conj", "bv", "negctrl"], required=True)
    chk.add_argument("--law", choices=["ld", "cancel", "involutory"], default="ld")
    chk.add_argument("--samples", type=int, default=200)

    sp = add("bv", cmd_bv, "the group B_•")
    bv_sub = sp.add_subparsers(dest="bv_command", required=True)
    e = bv_sub.add_parser("eq", parents=[common])
    e.add_argument("w1")
    e.add_argument("w2")
    ps = bv_sub.add_parser("psi", parents=[common])
    ps.add_argument("word")
    ps.add_argument("--gen", default="e")
    for op in ("bracket", "circle"):
        b = bv_sub.add_parser(op, parents=[common])
        b.add_argument("x")
        b.add_argument("y")
    for op in ("f", "e"):
        b = bv_sub.add_parser(op, parents=[common])
        b.add_argument("tree")

    sp = add("plmap", cmd_plmap, "dyadic realization of a word")
    sp.add_argument("word")
    sp.add_argument("--tsv", action="store_true")
    sp.add_argument("--interval", action="store_true", help="interval bijection (V)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UndefinedAction, BudgetExhausted, CapExceeded, ProbeUnstable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except DomainNeverIntersects as exc:
        print(f"FAILED: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, GeomError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
