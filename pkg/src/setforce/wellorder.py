"""Explicit finite relations, order-property checks and order types.

The constructions here (tagged sums, lexicographic products) are the
brute-force oracle against which :mod:`setforce.ordinal` is tested, so they
work on materialised pairs and deliberately share no code with it beyond
``from_nat``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotAWellOrder, SizeLimitError, UnknownElement
from .ordinal import Ordinal, from_nat

# explicit relations above this many elements are refused; the pair set of
# a total order grows quadratically
MAX_ELEMENTS = 1024


@dataclass(frozen=True)
class FiniteRelation:
    elements: tuple
    pairs: frozenset = frozenset()

    def __post_init__(self):
        elements = tuple(self.elements)
        pairs = frozenset(tuple(p) for p in self.pairs)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "pairs", pairs)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate labels")
        known = set(elements)
        for x, y in pairs:
            if x not in known or y not in known:
                raise UnknownElement(x if x not in known else y)

    def __len__(self):
        return len(self.elements)

    def related(self, x, y) -> bool:
        return (x, y) in self.pairs


def chain(labels: int | Sequence[str]) -> FiniteRelation:
    """Strict order ``l0 < l1 < ...``; an int n means labels ``"0".."n-1"``."""
    if isinstance(labels, int):
        labels = [str(i) for i in range(labels)]
    labels = list(labels)
    if len(labels) > MAX_ELEMENTS:
        raise SizeLimitError(f"{len(labels)} elements exceeds {MAX_ELEMENTS}")
    return FiniteRelation(labels, {(labels[i], labels[j])
                                   for i in range(len(labels))
                                   for j in range(i + 1, len(labels))})


@dataclass(frozen=True)
class OrderReport:
    is_partial: bool
    is_total: bool
    is_well: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def witness(self):
        for key in ("partial", "total", "well"):
            if key in self.witnesses:
                return self.witnesses[key]
        return None


def _successor_masks(r: FiniteRelation):
    idx = {x: i for i, x in enumerate(r.elements)}
    succ = [0] * len(r.elements)
    for x, y in r.pairs:
        succ[idx[x]] |= 1 << idx[y]
    return succ


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transitivity_failure(succ):
    for i, si in enumerate(succ):
        for j in _bits(si):
            extra = succ[j] & ~si
            if extra:
                return i, j, next(_bits(extra))
    return None


def _has_least(succ, subset) -> bool:
    for i in subset:
        if all(succ[i] >> j & 1 for j in subset if j != i):
            return True
    return False


def check_order_properties(r: FiniteRelation) -> OrderReport:
    """Partial (reflexive, transitive), total (strict, trichotomous) and well.

    "Partial" is the preorder notion: antisymmetry is not required.  For a
    finite relation every nonempty subset of a total order has a least
    element, so ``is_well == is_total``; when the order is not total the
    well-order witness is a small subset with no least element if one is
    found among subsets of size <= 3.
    """
    els = r.elements
    n = len(els)
    succ = _successor_masks(r)
    witnesses = {}

    trans = _transitivity_failure(succ)
    trans_w = None if trans is None else tuple(els[k] for k in trans)
    nonrefl = next((i for i in range(n) if not succ[i] >> i & 1), None)
    if trans_w is not None:
        witnesses["partial"] = trans_w
    elif nonrefl is not None:
        witnesses["partial"] = (els[nonrefl],)

    refl = next((i for i in range(n) if succ[i] >> i & 1), None)
    incomparable = next(((i, j) for i in range(n) for j in range(i + 1, n)
                         if not (succ[i] >> j & 1 or succ[j] >> i & 1)), None)
    if trans_w is not None:
        witnesses["total"] = trans_w
    elif incomparable is not None:
        witnesses["total"] = tuple(els[k] for k in incomparable)
    elif refl is not None:
        witnesses["total"] = (els[refl], els[refl])

    if "total" in witnesses:
        bad = None
        for size in (1, 2, 3):
            bad = next((s for s in itertools.combinations(range(n), size)
                        if not _has_least(succ, s)), None)
            if bad is not None:
                break
        witnesses["well"] = (frozenset(els[k] for k in bad) if bad is not None
                             else witnesses["total"])

    return OrderReport(
        is_partial="partial" not in witnesses,
        is_total="total" not in witnesses,
        is_well="well" not in witnesses,
        witnesses=witnesses,
    )


def _require_well(*rels: FiniteRelation):
    for r in rels:
        rep = check_order_properties(r)
        if not rep.is_well:
            raise NotAWellOrder(f"not a well-order; witness {rep.witness!r}")


def pred(r: FiniteRelation, x) -> frozenset:
    if x not in r.elements:
        raise UnknownElement(x)
    return frozenset(a for a in r.elements if (a, x) in r.pairs)


def restrict(r: FiniteRelation, keep: Iterable) -> FiniteRelation:
    keep = set(keep)
    return FiniteRelation([x for x in r.elements if x in keep],
                          {(x, y) for x, y in r.pairs if x in keep and y in keep})


def _sorted_by_rank(r: FiniteRelation) -> list:
    # in a finite well-order the rank of x is |pred(x)|
    below = {x: 0 for x in r.elements}
    for _, y in r.pairs:
        below[y] += 1
    return sorted(r.elements, key=below.__getitem__)


def order_type_small(w: FiniteRelation) -> Ordinal:
    _require_well(w)
    return from_nat(len(w.elements))


def sum_order(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    """Tagged disjoint union with every element of ``a`` below every element of ``b``."""
    _require_well(a, b)
    if len(a) + len(b) > MAX_ELEMENTS:
        raise SizeLimitError(f"{len(a) + len(b)} elements exceeds {MAX_ELEMENTS}")
    left = [f"{x}#0" for x in a.elements]
    right = [f"{y}#1" for y in b.elements]
    pairs = {(f"{x}#0", f"{y}#0") for x, y in a.pairs}
    pairs |= {(f"{x}#1", f"{y}#1") for x, y in b.pairs}
    pairs |= {(x, y) for x in left for y in right}
    return FiniteRelation(left + right, pairs)


def product_order(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    """Carrier ``b x a`` ordered lexicographically, ``b``-coordinate first.

    Its type is ``type(a) * type(b)``: ``b`` many consecutive copies of ``a``.
    """
    _require_well(a, b)
    if len(a) * len(b) > MAX_ELEMENTS:
        raise SizeLimitError(f"{len(a) * len(b)} elements exceeds {MAX_ELEMENTS}")
    carrier = [(u, v) for u in b.elements for v in a.elements]
    label = {c: f"<{c[0]},{c[1]}>" for c in carrier}
    # <u,v> < <u',v'>  iff  u < u'  or  (u = u' and v < v')
    pairs = {(label[u, v], label[u2, v2])
             for u, u2 in b.pairs for v in a.elements for v2 in a.elements}
    pairs |= {(label[u, v], label[u, v2]) for u in b.elements for v, v2 in a.pairs}
    return FiniteRelation([label[c] for c in carrier], pairs)


class Case(enum.Enum):
    ISO = "Iso"
    PRED_OF_SECOND = "PredOfSecond"
    PRED_OF_FIRST = "PredOfFirst"


@dataclass(frozen=True)
class TrichotomyResult:
    case: Case
    cut_point: object
    iso: dict


def trichotomy(a: FiniteRelation, b: FiniteRelation) -> TrichotomyResult:
    """Which of ``a ~ b``, ``a ~ pred(b, x)``, ``pred(a, y) ~ b`` holds.

    The isomorphism is built by pairing least elements in turn, which is the
    only possible order-isomorphism between well-orders.
    """
    _require_well(a, b)
    sa, sb = _sorted_by_rank(a), _sorted_by_rank(b)
    if len(sa) == len(sb):
        return TrichotomyResult(Case.ISO, None, dict(zip(sa, sb)))
    if len(sa) < len(sb):
        return TrichotomyResult(Case.PRED_OF_SECOND, sb[len(sa)], dict(zip(sa, sb)))
    return TrichotomyResult(Case.PRED_OF_FIRST, sa[len(sb)], dict(zip(sa, sb)))


def cantor_no_surjection(n: int) -> bool:
    """Exhaustively confirm no map from an n-set onto its power set, n in 0..4.

    Every map is also checked against the diagonal set {a : a not in f(a)},
    which must be missing from its range.
    """
    if not 0 <= n <= 4:
        raise ValueError("n must be in 0..4")
    points = range(n)
    # subsets as bitmasks over the n points
    powerset = range(1 << n)
    full = (1 << (1 << n)) - 1
    for f in itertools.product(powerset, repeat=n):
        diagonal = sum(1 << a for a in points if not f[a] >> a & 1)
        if diagonal in f:
            raise AssertionError(f"diagonal set hit by map {f}")
        hit = 0
        for s in f:
            hit |= 1 << s
        if hit == full:
            return False
    return True
