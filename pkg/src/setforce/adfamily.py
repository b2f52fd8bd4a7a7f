"""Almost-disjoint families of subsets of omega, seen through finite windows.

Infinite sets are given by membership predicates (:class:`SetGen`) and
registered by id, so conditions ``<s, F>`` of the almost-disjoint-sets poset
carry only a finite set of naturals and a finite set of ids.  Nothing here
claims an infinite property: intersections are counted below a bound.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import FuelExhausted, IncompatibleError, PropertyViolation, UnknownElement
from .poset import LazyPoset, _CachedStream

Registry = Mapping[str, "SetGen"]


@dataclass(frozen=True)
class SetGen:
    id: str
    member: Callable[[int], bool]
    doc: str = ""

    def enumerate_below(self, bound: int) -> tuple:
        return tuple(k for k in range(bound) if self.member(k))

    def __contains__(self, k: int) -> bool:
        return self.member(k)


def is_triangular(t: int) -> bool:
    if t < 0:
        return False
    r = math.isqrt(8 * t + 1)
    return r * r == 8 * t + 1


def triangular_family(i: int) -> SetGen:
    """``N^i = {t + i : t triangular}``; ``N^0 = {0, 1, 3, 6, 10, ...}``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return SetGen(f"N{i}", lambda k: is_triangular(k - i), f"triangular numbers shifted by {i}")


def finite_set(name: str, members: Iterable[int]) -> SetGen:
    members = frozenset(members)
    return SetGen(name, members.__contains__, f"finite set {sorted(members)}")


EVENS = SetGen("evens", lambda k: k % 2 == 0, "even numbers")
ODDS = SetGen("odds", lambda k: k % 2 == 1, "odd numbers")
OMEGA = SetGen("omega", lambda k: k >= 0, "all naturals")

_TRIANGULAR_ID = re.compile(r"N(\d+)$")


def builtin(name: str) -> SetGen:
    """Look up ``evens``, ``odds``, ``omega`` or ``N<i>``."""
    for g in (EVENS, ODDS, OMEGA):
        if g.id == name:
            return g
    m = _TRIANGULAR_ID.match(name)
    if m:
        return triangular_family(int(m.group(1)))
    raise UnknownElement(name)


def registry(gens: Iterable[SetGen | str]) -> dict:
    out = {}
    for g in gens:
        g = builtin(g) if isinstance(g, str) else g
        out[g.id] = g
    return out


def demo_registries() -> dict:
    """Registries illustrating why maximality needs infinite, full-size members.

    ``finite_subsets`` is a finite sample of the family of all finite subsets
    of omega together with omega; ``omega_only`` is ``{omega}``.  Both are
    maximal a.d. families in the infinite setting; that is not checkable
    here, so they are shipped as demos only.
    """
    sample = [finite_set("f" + "_".join(map(str, s)) if s else "f_empty", s)
              for r in range(3) for s in itertools.combinations(range(3), r)]
    return {
        "finite_subsets": registry(sample + [OMEGA]),
        "omega_only": registry([OMEGA]),
    }


def ad_check(x: SetGen, y: SetGen, bound: int, tail: int | None = None) -> tuple:
    """Count ``|x & y & [0, bound)|`` and flag whether the intersection looks finite.

    The flag is bounded-window evidence only: it is True when no common
    element lies in the last ``tail`` numbers of the window (default: the
    upper half).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    tail = bound // 2 if tail is None else tail
    common = [k for k in range(bound) if x.member(k) and y.member(k)]
    return len(common), not any(k >= bound - tail for k in common)


@dataclass(frozen=True)
class Condition:
    """``<s, F>``: finite set of naturals and finite set of generator ids."""

    s: frozenset = frozenset()
    F: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        object.__setattr__(self, "F", frozenset(self.F))
        if any(not isinstance(k, int) or k < 0 for k in self.s):
            raise ValueError("s must hold naturals")

    def __str__(self):
        return ("<{" + ",".join(map(str, sorted(self.s))) + "},{"
                + ",".join(sorted(self.F)) + "}>")


def _resolve(reg: Registry, ids: Iterable[str]) -> list:
    try:
        return [reg[i] for i in ids]
    except KeyError as e:
        raise UnknownElement(e.args[0]) from None


def pa_leq(c1: Condition, c2: Condition, reg: Registry) -> bool:
    """``c1 <= c2``: s2 <= s1, F2 <= F1 and every x in F2 meets s1 only inside s2."""
    gens = _resolve(reg, c2.F)
    _resolve(reg, c1.F)
    if not (c2.s <= c1.s and c2.F <= c1.F):
        return False
    new = c1.s - c2.s
    return not any(x.member(m) for x in gens for m in new)


def pa_compatible(c1: Condition, c2: Condition, reg: Registry) -> bool:
    g1, g2 = _resolve(reg, c1.F), _resolve(reg, c2.F)
    return (all(not x.member(m) for x in g1 for m in c2.s - c1.s)
            and all(not x.member(m) for x in g2 for m in c1.s - c2.s))


@dataclass(frozen=True)
class Dx:
    """``D_x``: conditions whose F contains x."""

    x: str

    @property
    def name(self):
        return f"dx:{self.x}"

    def __call__(self, c: Condition) -> bool:
        return self.x in c.F


@dataclass(frozen=True)
class Eyn:
    """``E^y_n``: conditions whose s meets y at some m >= n."""

    y: str
    n: int
    reg: Registry = field(default=None, compare=False, repr=False)

    @property
    def name(self):
        return f"eyn:{self.y}:{self.n}"

    def __call__(self, c: Condition) -> bool:
        y = _resolve(self.reg, [self.y])[0]
        return any(m >= self.n and y.member(m) for m in c.s)


DEFAULT_SEARCH_BOUND = 10_000


def dense_witness(kind: Dx | Eyn, c: Condition, reg: Registry,
                  bound: int = DEFAULT_SEARCH_BOUND) -> Condition:
    """An extension of ``c`` lying in the dense set ``kind``.

    ``D_x`` adds x to F.  ``E^y_n`` adds the least m > n in y outside every
    member of F, searched below ``bound``.
    """
    if isinstance(kind, Dx):
        _resolve(reg, [kind.x])
        return Condition(c.s, c.F | {kind.x})
    y = _resolve(reg, [kind.y])[0]
    gens = _resolve(reg, c.F)
    for m in range(kind.n + 1, bound):
        if y.member(m) and not any(x.member(m) for x in gens):
            return Condition(c.s | {m}, c.F)
    raise FuelExhausted(f"no m in ({kind.n}, {bound}) in {kind.y} outside the union of F")


def extract_d(G: Iterable[Condition], reg: Registry) -> frozenset:
    """Union of the first coordinates of a pairwise compatible family."""
    G = list(G)
    for a, b in itertools.combinations(G, 2):
        if not pa_compatible(a, b, reg):
            raise IncompatibleError(f"{a} and {b} are incompatible")
    return frozenset().union(*(c.s for c in G))


def diagonalize(A: Sequence[SetGen], steps: int, bound: int) -> list:
    """Least ``beta_xi`` of ``A_xi`` minus the earlier members, for xi < steps."""
    if steps > len(A):
        raise ValueError("more steps than family members")
    for x, y in itertools.combinations(A[:steps], 2):
        size, flag = ad_check(x, y, bound)
        if not flag:
            raise PropertyViolation(f"{x.id} and {y.id} not almost disjoint below {bound}")
    betas = []
    for xi in range(steps):
        earlier = A[:xi]
        beta = next((k for k in range(bound)
                     if A[xi].member(k) and not any(a.member(k) for a in earlier)), None)
        if beta is None:
            raise FuelExhausted(f"B_{xi} has no element below {bound}")
        betas.append(beta)
    return betas


# --- the almost-disjoint-sets poset as a lazily enumerated poset -----------

def _deposit(t: int, positions: Sequence[int]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if t >> j & 1:
            out |= 1 << pos
    return out


def pa_stream(reg: Registry, family: Sequence[str], below: Condition | None = None,
              gap: int = DEFAULT_SEARCH_BOUND) -> Iterator[Condition]:
    """Conditions of P_A (F drawn from ``family``) in enumeration order.

    Order: by max of s (empty first), then s as bitmask, then F as bitmask
    over ``family``.  With ``below`` given, only its extensions are produced,
    still in that order.  The stream ends if ``gap`` consecutive naturals are
    all forbidden by F (e.g. F covers omega), so callers see exhaustion
    rather than an endless scan.
    """
    family = list(family)
    base = below or Condition()
    gens = _resolve(reg, base.F)
    need_s = sum(1 << m for m in base.s)
    fpos = [j for j, x in enumerate(family) if x not in base.F]
    fneed = sum(1 << j for j, x in enumerate(family) if x in base.F)
    if not base.F <= set(family):
        return

    def fsets():
        for t in range(1 << len(fpos)):
            fm = fneed | _deposit(t, fpos)
            yield frozenset(family[j] for j in range(len(family)) if fm >> j & 1)

    def allowed(m):
        return m in base.s or not any(x.member(m) for x in gens)

    if not base.s:
        for F in fsets():
            yield Condition(frozenset(), F)
    skipped = 0
    for top in itertools.count(max(base.s, default=0)):
        if not allowed(top):
            skipped += 1
            if skipped >= gap:
                return
            continue
        skipped = 0
        free = [m for m in range(top) if not need_s >> m & 1 and allowed(m)]
        for t in range(1 << len(free)):
            smask = need_s | _deposit(t, free) | (1 << top)
            s = frozenset(m for m in range(top + 1) if smask >> m & 1)
            for F in fsets():
                yield Condition(s, F)


def pa_poset(reg: Registry, family: Sequence[str]) -> LazyPoset:
    return LazyPoset(_CachedStream(pa_stream(reg, family)),
                     lambda a, b: pa_leq(a, b, reg), str,
                     below=lambda c: pa_stream(reg, family, c))
