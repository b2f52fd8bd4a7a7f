"""Command-line entry point.

Exit codes: 0 success, 1 property violated, 2 parse/usage error,
3 fuel or size limit exhausted.  Output is ``key: value`` lines, or one JSON
object with ``--json``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import adfamily, completion, ordinal, poset, wellorder
from .errors import (FuelExhausted, LoadError, PropertyViolation, SizeLimitError,
                     UnknownElement)
from .loader import load_poset, load_relation, read_document, relation_from_document

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_FUEL = 0, 1, 2, 3


class Violation(Exception):
    """Raised by a command after printing its report when a property fails."""


def _fmt_set(xs, order=None) -> str:
    xs = list(xs)
    if order is not None:
        rank = {x: k for k, x in enumerate(order)}
        xs.sort(key=lambda x: rank.get(x, len(rank)))
    else:
        xs.sort(key=str)
    return "{" + ",".join(map(str, xs)) + "}"


def _fmt_witness(w, order=None) -> str:
    if isinstance(w, (set, frozenset)):
        return _fmt_set(w, order)
    if isinstance(w, tuple):
        return "(" + ",".join(map(str, w)) + ")"
    return str(w)


def _emit(args, record: dict, out=None):
    out = out or sys.stdout
    if args.json:
        print(json.dumps(record), file=out)
        return
    for key, value in record.items():
        if isinstance(value, list):
            value = ", ".join(map(str, value))
        elif isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, dict):
            value = ", ".join(f"{k}->{v}" for k, v in value.items())
        print(f"{key}: {value}", file=out)


# --- ord ------------------------------------------------------------------

def cmd_ord_eval(args):
    val = ordinal.parse(args.expr)
    if args.json:
        _emit(args, {"value": str(val), "kind": ordinal.classify(val).value})
    else:
        print(val)


def cmd_ord_compare(args):
    a, b = ordinal.parse(args.a), ordinal.parse(args.b)
    _emit(args, {"a": str(a), "b": str(b), "result": ordinal.compare(a, b).name})


def cmd_ord_classify(args):
    val = ordinal.parse(args.expr)
    _emit(args, {"value": str(val), "kind": ordinal.classify(val).value})


# --- wo -------------------------------------------------------------------

def cmd_wo_check(args):
    r = load_relation(args.file)
    rep = wellorder.check_order_properties(r)
    record = {"elements": len(r), "partial": rep.is_partial, "total": rep.is_total, "well": rep.is_well}
    for k, w in rep.witnesses.items():
        record[f"witness_{k}"] = _fmt_witness(w, r.elements)
    _emit(args, record)
    if not rep.is_well:
        raise Violation


def cmd_wo_trichotomy(args):
    a, b = load_relation(args.file_a), load_relation(args.file_b)
    res = wellorder.trichotomy(a, b)
    _emit(args, {"case": res.case.value, "cut_point": res.cut_point, "iso": res.iso})


def cmd_wo_cantor(args):
    ok = wellorder.cantor_no_surjection(args.n)
    _emit(args, {"n": args.n, "maps_checked": (1 << args.n) ** args.n, "no_surjection": ok})
    if not ok:
        raise Violation


# --- poset ----------------------------------------------------------------

def cmd_poset_check(args):
    doc = read_document(args.file)
    r = relation_from_document({**doc, "close": False}) if not doc["close"] else None
    if r is None:
        P = poset.FinitePoset.from_relation(doc["elements"], doc["pairs"])
        r = wellorder.FiniteRelation(P.elements, P.leq)
    rep = wellorder.check_order_properties(r)
    record = {"elements": len(r), "pairs": len(r.pairs), "preorder": rep.is_partial}
    if "partial" in rep.witnesses:
        record["witness"] = _fmt_witness(rep.witnesses["partial"], r.elements)
    if rep.is_partial:
        P = poset.FinitePoset(r.elements, r.pairs)
        for name, members in sorted(doc["sets"].items()):
            record[f"set {name}"] = ", ".join(
                label for label, test in (("dense", poset.is_dense), ("filter", poset.is_filter),
                                          ("antichain", poset.is_antichain))
                if test(P, members)) or "-"
    _emit(args, record)
    if not rep.is_partial:
        raise Violation


def cmd_poset_dense(args):
    P, sets = load_poset(args.file)
    if args.set not in sets:
        raise LoadError(f"no set named {args.set!r}")
    D = sets[args.set]
    missing = [p for p in P.elements if not P.below(p) & D]
    record = {"set": args.set, "dense": not missing}
    if missing:
        record["witness"] = missing[0]
    _emit(args, record)
    if missing:
        raise Violation


def _k_dense(token: str):
    if token.startswith("e:"):
        bits = token[2:]
        if not bits or set(bits) - {"0", "1"}:
            raise LoadError(f"bad pattern in {token!r}")
        return poset.DisagreesWith(tuple(bits))
    if token.startswith("d") and token[1:].isdigit():
        return poset.DefinedAt(int(token[1:]))
    raise LoadError(f"unknown dense set {token!r}; use d<n> or e:<bits>")


def cmd_poset_generic(args):
    tokens = [t for t in args.dense.split(",") if t]
    if args.poset == "k":
        P, start = poset.k_poset(), poset.BinaryCondition()
        dense = [(t, _k_dense(t)) for t in tokens]
    else:
        fin, sets = load_poset(args.poset)
        unknown = [t for t in tokens if t not in sets]
        if unknown:
            raise LoadError(f"unknown sets {unknown}")
        P = poset.LazyPoset.from_finite(fin)
        start = args.start if args.start is not None else fin.elements[0]
        fin.i(start)
        dense = [(t, sets[t].__contains__) for t in tokens]
    res = poset.generic_filter(P, dense, start, args.fuel)
    record = {"chain": [str(x) for x in res.chain],
              "met": [f"{name}@{x}" for name, x in res.met],
              "filter_size": len(res.filter)}
    if args.poset == "k":
        record["f_G"] = str(poset.union_of_filter(res.chain))
    else:
        record["filter"] = [str(x) for x in sorted(res.filter, key=fin.i)]
    _emit(args, record)


def cmd_poset_ro(args):
    P, _ = load_poset(args.file)
    A = completion.ro_algebra(P)
    if args.dot:
        print(completion.hasse_dot(A))
        return
    rep = completion.verify_embedding(P, A)
    record = {"carrier": len(A), "atoms": [_fmt_set(a, P.elements) for a in A.atoms()]}
    for p in P.elements:
        record[f"i({p})"] = _fmt_set(A.i(p), P.elements)
    for name, c in rep.checks.items():
        record[f"check {name}"] = ("vacuous" if c.vacuous else "pass") if c.passed else f"FAIL {c.witness}"
    _emit(args, record)
    if not rep.ok:
        raise Violation


def cmd_poset_stone(args):
    P, _ = load_poset(args.file)
    A = completion.ro_algebra(P)
    if args.dot:
        print(completion.hasse_dot(A, "stone"))
        return
    S = completion.stone_space(A)
    record = {"points": len(S.points)}
    for k, G in enumerate(S.points):
        least = min(G, key=len)
        record[f"G{k}"] = "generated by " + _fmt_set(least, P.elements)
    for b in A.carrier:
        record[f"N{_fmt_set(b, P.elements)}"] = _fmt_set((f"G{k}" for k in sorted(S.N(b))))
    rep = completion.stone_ccc_check(S)
    record["check"] = "pass" if rep.ok else f"FAIL {rep.failures()}"
    _emit(args, record)
    if not rep.ok:
        raise Violation


# --- ad -------------------------------------------------------------------

def _gen(name: str, i: int | None = None):
    if name == "triangular":
        return adfamily.triangular_family(0 if i is None else i)
    return adfamily.builtin(name)


def cmd_ad_family(args):
    g = _gen(args.name, args.i)
    _emit(args, {"id": g.id, "below": args.below, "members": list(g.enumerate_below(args.below))})


def cmd_ad_check(args):
    x, y = adfamily.builtin(args.x), adfamily.builtin(args.y)
    size, flag = adfamily.ad_check(x, y, args.below)
    common = [k for k in range(args.below) if x.member(k) and y.member(k)]
    _emit(args, {"x": x.id, "y": y.id, "below": args.below, "intersection_size": size,
                 "ad_at_bound": flag, "common": common[:50]})


def cmd_ad_diagonalize(args):
    if args.family != "triangular":
        raise LoadError("only the triangular family is built in")
    A = [adfamily.triangular_family(i) for i in range(args.count)]
    betas = adfamily.diagonalize(A, args.count, args.below)
    _emit(args, {"family": [g.id for g in A], "beta": betas})


def cmd_ad_generic(args):
    kinds = []
    for token in (t for t in args.dense.split(",") if t):
        parts = token.split(":")
        if parts[0] == "dx" and len(parts) == 2:
            kinds.append(("dx", parts[1], None))
        elif parts[0] == "eyn" and len(parts) == 3 and parts[2].isdigit():
            kinds.append(("eyn", parts[1], int(parts[2])))
        else:
            raise LoadError(f"bad dense token {token!r}; use dx:NAME or eyn:NAME:N")
    family = ([x for x in args.family.split(",") if x] if args.family
              else list(dict.fromkeys(name for kind, name, _ in kinds if kind == "dx")))
    reg = adfamily.registry(family + [name for _, name, _ in kinds])
    dense = [(f"{k}:{name}" + (f":{n}" if n is not None else ""),
              adfamily.Dx(name) if k == "dx" else adfamily.Eyn(name, n, reg))
             for k, name, n in kinds]
    for k, name, _ in kinds:
        if k == "dx" and name not in family:
            raise LoadError(f"{name} is not in the family")
    P = adfamily.pa_poset(reg, family)
    res = poset.generic_filter(P, dense, adfamily.Condition(), args.fuel)
    d = adfamily.extract_d(res.filter, reg)
    _emit(args, {"family": family, "chain": [str(c) for c in res.chain],
                 "met": [f"{name}@{c}" for name, c in res.met],
                 "filter_size": len(res.filter), "d_G": sorted(d)})


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON object")
    parser = argparse.ArgumentParser(prog="setforce", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("ord", help="ordinal arithmetic below epsilon_0").add_subparsers(dest="verb", required=True)
    leaf(g, "eval", cmd_ord_eval, "evaluate an expression in w, +, *, ^").add_argument("expr")
    p = leaf(g, "compare", cmd_ord_compare, "compare two expressions")
    p.add_argument("a")
    p.add_argument("b")
    leaf(g, "classify", cmd_ord_classify, "zero, successor or limit").add_argument("expr")

    g = groups.add_parser("wo", help="finite well-orders").add_subparsers(dest="verb", required=True)
    leaf(g, "check", cmd_wo_check, "partial/total/well properties of a relation file").add_argument("file")
    p = leaf(g, "trichotomy", cmd_wo_trichotomy, "compare two finite well-orders")
    p.add_argument("file_a")
    p.add_argument("file_b")
    leaf(g, "cantor", cmd_wo_cantor, "exhaustive no-surjection check").add_argument(
        "n", type=int, choices=range(5), metavar="N")

    g = groups.add_parser("poset", help="forcing posets").add_subparsers(dest="verb", required=True)
    leaf(g, "check", cmd_poset_check, "preorder check and named-set properties").add_argument("file")
    p = leaf(g, "dense", cmd_poset_dense, "is a named set dense")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p = leaf(g, "generic", cmd_poset_generic, "build a filter meeting dense sets")
    p.add_argument("--poset", required=True, help="'k' or a poset file")
    p.add_argument("--dense", required=True, help="comma list: d<n>, e:<bits> for k; set names for files")
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("--start", help="start element (file posets; default first element)")
    for name, func, help in (("ro", cmd_poset_ro, "regular open algebra"),
                             ("stone", cmd_poset_stone, "Stone space of ro(P)")):
        p = leaf(g, name, func, help)
        p.add_argument("file")
        p.add_argument("--dot", action="store_true", help="print the Hasse diagram as graphviz")

    g = groups.add_parser("ad", help="almost-disjoint families").add_subparsers(dest="verb", required=True)
    p = leaf(g, "family", cmd_ad_family, "list members of a built-in set below a bound")
    p.add_argument("--name", required=True, choices=["triangular", "evens", "odds", "omega"])
    p.add_argument("--i", type=int)
    p.add_argument("--below", type=int, default=100)
    p = leaf(g, "check", cmd_ad_check, "intersection count below a bound")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--below", type=int, default=1000)
    p = leaf(g, "diagonalize", cmd_ad_diagonalize, "pick a new element from each member")
    p.add_argument("--family", default="triangular")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--below", type=int, default=10_000)
    p = leaf(g, "generic", cmd_ad_generic, "generic filter over the almost-disjoint-sets poset")
    p.add_argument("--dense", required=True, help="comma list of dx:NAME and eyn:NAME:N")
    p.add_argument("--family", help="comma list of ids allowed in F (default: the dx names)")
    p.add_argument("--fuel", type=int, default=2000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Violation:
        return EXIT_VIOLATION
    except (LoadError, UnknownElement) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PropertyViolation as e:
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (FuelExhausted, SizeLimitError) as e:
        print(f"exhausted: {e}", file=sys.stderr)
        return EXIT_FUEL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
