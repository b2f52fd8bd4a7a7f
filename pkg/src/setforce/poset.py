"""Forcing posets: compatibility, dense sets, filters and generic filters.

Orders follow the forcing convention: ``p <= q`` reads "p extends q", and
"partial order" means a reflexive transitive relation (no antisymmetry).

Finite posets are held as bitmasks of down-sets and up-sets indexed by the
element order, so most checks are a handful of integer operations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import FuelExhausted, IncompatibleError, PosetError, SizeLimitError, UnknownElement

ULTRAFILTER_ENUM_LIMIT = 15
FIP_LIMIT = 20


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def closure(elements: Sequence, pairs: Iterable[tuple]) -> frozenset:
    """Reflexive-transitive closure of ``pairs`` over ``elements``."""
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    up = [1 << i for i in range(n)]
    for x, y in pairs:
        try:
            up[idx[x]] |= 1 << idx[y]
        except KeyError as e:
            raise UnknownElement(e.args[0]) from None
    # Warshall on bitsets
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    return frozenset((elements[i], elements[j]) for i in range(n) for j in _bits(up[i]))


class FinitePoset:
    """Finite preorder; ``leq`` holds pairs ``(p, q)`` meaning ``p <= q``."""

    def __init__(self, elements: Sequence[Hashable], leq: Iterable[tuple]):
        self.elements = tuple(elements)
        self.leq = frozenset(tuple(pair) for pair in leq)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate elements")
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        self.up = [0] * n
        self.down = [0] * n
        for p, q in self.leq:
            try:
                i, j = self.index[p], self.index[q]
            except KeyError as e:
                raise UnknownElement(e.args[0]) from None
            self.up[i] |= 1 << j
            self.down[j] |= 1 << i
        for i in range(n):
            if not self.up[i] >> i & 1:
                raise PosetError(f"not reflexive at {self.elements[i]!r}")
        for i in range(n):
            for j in _bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    k = next(_bits(self.up[j] & ~self.up[i]))
                    raise PosetError("not transitive: "
                                     f"{self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[k]!r}")
        self.full = (1 << n) - 1

    @classmethod
    def from_relation(cls, elements: Sequence, pairs: Iterable[tuple], close: bool = True):
        elements = tuple(elements)
        return cls(elements, closure(elements, pairs) if close else pairs)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (isinstance(other, FinitePoset)
                and self.elements == other.elements and self.leq == other.leq)

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        return f"FinitePoset({len(self)} elements, {len(self.leq)} pairs)"

    def i(self, p) -> int:
        try:
            return self.index[p]
        except (KeyError, TypeError):
            raise UnknownElement(p) from None

    def mask(self, subset: Iterable) -> int:
        m = 0
        for p in subset:
            m |= 1 << self.i(p)
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self.elements[k] for k in _bits(mask))

    def le(self, p, q) -> bool:
        return bool(self.up[self.i(p)] >> self.i(q) & 1)

    def below(self, p) -> frozenset:
        return self.subset(self.down[self.i(p)])

    def above(self, p) -> frozenset:
        return self.subset(self.up[self.i(p)])

    def up_closure_mask(self, mask: int) -> int:
        out = 0
        for k in _bits(mask):
            out |= self.up[k]
        return out

    def restrict(self, keep: Iterable) -> "FinitePoset":
        keep = set(keep)
        els = [x for x in self.elements if x in keep]
        return FinitePoset(els, {(p, q) for p, q in self.leq if p in keep and q in keep})


def compatible(P: FinitePoset, p, q) -> bool:
    return bool(P.down[P.i(p)] & P.down[P.i(q)])


def is_antichain(P: FinitePoset, S: Iterable) -> bool:
    ids = sorted({P.i(s) for s in S})
    return all(not P.down[a] & P.down[b] for a, b in itertools.combinations(ids, 2))


def _dense_mask(P: FinitePoset, mask: int) -> bool:
    return all(P.down[k] & mask for k in range(len(P)))


def is_dense(P: FinitePoset, D: Iterable) -> bool:
    return _dense_mask(P, P.mask(D))


def dpq_dense(P: FinitePoset, p, q) -> frozenset:
    """``{r : (r <= p and r <= q) or r incompatible with p or with q}``."""
    ip, iq = P.i(p), P.i(q)
    both = P.down[ip] & P.down[iq]
    mask = 0
    for k in range(len(P)):
        if both >> k & 1 or not P.down[k] & P.down[ip] or not P.down[k] & P.down[iq]:
            mask |= 1 << k
    assert _dense_mask(P, mask), "D_pq must be dense"
    return P.subset(mask)


def _filter_mask(P: FinitePoset, mask: int) -> bool:
    for k in _bits(mask):
        if P.up[k] & ~mask:
            return False
    ids = list(_bits(mask))
    return all(P.down[a] & P.down[b] & mask for a, b in itertools.combinations(ids, 2))


def is_filter(P: FinitePoset, G: Iterable) -> bool:
    """Upward closed and downward directed inside G; the empty set qualifies."""
    return _filter_mask(P, P.mask(G))


def is_ultrafilter(P: FinitePoset, G: Iterable, fuel: int | None = None) -> bool:
    """Whether the filter G has no proper filter extension.

    Up to ``ULTRAFILTER_ENUM_LIMIT`` elements every superset of G is tried.
    Larger posets use an extension search over principal filters ``up(q)``:
    in a finite preorder every nonempty filter is directed and so has a
    least element, which makes the principal filters the only candidates.
    The search examines at most ``fuel`` candidates (default: all of P).
    """
    g = P.mask(G)
    if not _filter_mask(P, g):
        raise PosetError("not a filter")
    n = len(P)
    if n <= ULTRAFILTER_ENUM_LIMIT:
        rest = list(_bits(P.full & ~g))
        for r in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                h = g
                for k in extra:
                    h |= 1 << k
                if _filter_mask(P, h):
                    return False
        return True
    budget = n if fuel is None else fuel
    for examined, k in enumerate(range(n)):
        if examined >= budget:
            raise FuelExhausted(f"extension search stopped after {budget} candidates")
        h = P.up[k]
        if h & g == g and h != g:
            return False
    return True


def fip_check(family: Iterable[Iterable]) -> bool:
    """Every nonempty subfamily has nonempty intersection (exhaustive)."""
    sets = [frozenset(s) for s in family]
    if not sets:
        raise ValueError("family must be nonempty")
    if len(sets) > FIP_LIMIT:
        raise SizeLimitError(f"{len(sets)} sets exceeds {FIP_LIMIT}")

    # depth-first over subfamilies carrying the running intersection
    def extend(start: int, acc: frozenset) -> bool:
        for k in range(start, len(sets)):
            inter = acc & sets[k]
            if not inter or not extend(k + 1, inter):
                return False
        return True

    return all(sets[k] and extend(k + 1, sets[k]) for k in range(len(sets)))


# --- lazily enumerated posets and the generic filter -----------------------

@dataclass
class LazyPoset:
    """A countable poset seen through a deterministic enumeration.

    ``enumerate(i)`` returns the i-th element or ``None`` past the end.
    ``below(p)``, when given, must yield exactly the elements ``<= p`` in
    enumeration order; it lets witness searches skip ahead in posets whose
    relevant elements sit far down the enumeration.
    """

    enumerate: Callable[[int], Any]
    leq: Callable[[Any, Any], bool]
    describe: Callable[[Any], str] = str
    below: Callable[[Any], Iterable] | None = None

    @classmethod
    def from_finite(cls, P: FinitePoset) -> "LazyPoset":
        els = P.elements
        return cls(lambda i: els[i] if i < len(els) else None, P.le)

    def window(self, size: int) -> list:
        out = []
        for i in range(size):
            x = self.enumerate(i)
            if x is None:
                break
            out.append(x)
        return out


@dataclass(frozen=True)
class FilterResult:
    chain: tuple
    filter: tuple
    met: tuple
    window: tuple = field(repr=False, default=())


def _named_dense(dense) -> list:
    if isinstance(dense, Mapping):
        return list(dense.items())
    out = []
    for k, d in enumerate(dense):
        out.append(d if isinstance(d, tuple) else (getattr(d, "name", k), d))
    return out


def generic_filter(P: LazyPoset, dense, start, fuel: int) -> FilterResult:
    """Build a filter meeting each dense set, one descending step per set.

    ``p_0 = start`` and ``p_n`` is the first enumerated element lying in the
    n-th dense set and extending ``p_{n-1}``.  ``dense`` is a sequence of
    predicates (or ``(id, predicate)`` pairs, or a mapping id -> predicate).
    ``fuel`` bounds both the candidates examined per step and the enumerated
    window over which the filter ``{q : some p_n <= q}`` is materialised.
    """
    window = P.window(fuel)
    named = _named_dense(dense)
    chain = [start]
    met = []
    for name, member in named:
        prev = chain[-1]
        candidates = P.below(prev) if P.below is not None else (x for x in window if P.leq(x, prev))
        found = None
        for examined, x in enumerate(candidates):
            if examined >= fuel:
                break
            if member(x):
                found = x
                break
        if found is None:
            raise FuelExhausted(f"no witness for dense set {name!r} below "
                                f"{P.describe(prev)} within fuel {fuel}")
        chain.append(found)
        met.append((name, found))
    members = list(dict.fromkeys(window + chain))
    filt = tuple(q for q in members if any(P.leq(p, q) for p in chain))
    return FilterResult(tuple(chain), filt, tuple(met), tuple(window))


def window_poset(P: LazyPoset, elements: Sequence) -> FinitePoset:
    els = list(dict.fromkeys(elements))
    return FinitePoset(els, {(p, q) for p in els for q in els if P.leq(p, q)})


def lazy_is_dense(P: LazyPoset, member: Callable[[Any], bool], probe: int, fuel: int) -> bool:
    """Bounded density check on a countable poset.

    Each of the first ``probe`` elements must have an extension satisfying
    ``member`` among its first ``fuel`` extensions (in enumeration order).
    A ``False`` answer only means no witness was found within fuel.
    """
    for p in P.window(probe):
        cands = P.below(p) if P.below is not None else (x for x in P.window(fuel) if P.leq(x, p))
        if not any(member(x) for x in itertools.islice(cands, fuel)):
            return False
    return True


# --- the poset K of finite partial functions omega -> 2 --------------------

@dataclass(frozen=True, order=True)
class BinaryCondition:
    """Finite partial function from naturals to {0, 1}."""

    items: tuple = ()

    def __post_init__(self):
        items = tuple(sorted(dict(self.items).items()))
        if len(items) != len(tuple(self.items)):
            raise ValueError("condition is not single-valued")
        for k, v in items:
            if isinstance(k, bool) or not isinstance(k, int) or k < 0 or v not in (0, 1):
                raise ValueError(f"bad assignment {k!r} -> {v!r}")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, mapping: Mapping[int, int] | None = None, **_) -> "BinaryCondition":
        return cls(tuple((mapping or {}).items()))

    def as_dict(self) -> dict:
        return dict(self.items)

    @property
    def domain(self) -> frozenset:
        return frozenset(k for k, _ in self.items)

    def __getitem__(self, k):
        return dict(self.items)[k]

    def extends(self, other: "BinaryCondition") -> bool:
        mine = dict(self.items)
        return all(mine.get(k) == v for k, v in other.items)

    def __str__(self):
        return "{" + ",".join(f"{k}:{v}" for k, v in self.items) + "}"


def k_leq(p: BinaryCondition, q: BinaryCondition) -> bool:
    return p.extends(q)


def k_compatible(p: BinaryCondition, q: BinaryCondition) -> bool:
    a, b = dict(p.items), dict(q.items)
    return all(b[k] == v for k, v in a.items() if k in b)


def union_of_filter(chain: Iterable[BinaryCondition]) -> BinaryCondition:
    out: dict = {}
    for c in chain:
        for k, v in c.items:
            if out.setdefault(k, v) != v:
                raise IncompatibleError(f"conditions disagree at {k}")
    return BinaryCondition(tuple(out.items()))


def _deposit(t: int, positions: Sequence[int]) -> int:
    """Scatter the low bits of t onto ``positions`` (ascending)."""
    out = 0
    for j, pos in enumerate(positions):
        if t >> j & 1:
            out |= 1 << pos
    return out


def _conditions_with_domain(dom: Sequence[int], fixed: Mapping[int, int] | None = None):
    # values bitmask: bit j is the value at the j-th smallest domain point
    fixed = fixed or {}
    base = sum(1 << j for j, x in enumerate(dom) if fixed.get(x) == 1)
    free = [j for j, x in enumerate(dom) if x not in fixed]
    for t in range(1 << len(free)):
        vals = base | _deposit(t, free)
        yield BinaryCondition(tuple((x, vals >> j & 1) for j, x in enumerate(dom)))


def k_stream(required: BinaryCondition = BinaryCondition()) -> Iterator[BinaryCondition]:
    """Conditions extending ``required``, in K's enumeration order.

    Order: by max of domain, then domain bitmask, then values bitmask.  With
    the default this is all of K, and its first 3**n entries are exactly the
    conditions with domain inside ``[0, n)``.
    """
    fixed = required.as_dict()
    need = sum(1 << x for x in fixed)
    if not fixed:
        yield BinaryCondition()
    for top in itertools.count(max(fixed, default=0)):
        free = [x for x in range(top) if not need >> x & 1]
        for t in range(1 << len(free)):
            dmask = need | _deposit(t, free) | (1 << top)
            dom = [x for x in range(top + 1) if dmask >> x & 1]
            yield from _conditions_with_domain(dom, fixed)


class _CachedStream:
    def __init__(self, it: Iterator):
        self.it = it
        self.seen: list = []

    def __call__(self, i: int):
        while len(self.seen) <= i:
            try:
                self.seen.append(next(self.it))
            except StopIteration:
                return None
        return self.seen[i]


def k_poset() -> LazyPoset:
    """K: finite partial functions omega -> 2, ``p <= q`` iff p extends q."""
    return LazyPoset(_CachedStream(k_stream()), k_leq, str,
                     below=lambda p: k_stream(required=p))


def k_window(n: int) -> FinitePoset:
    """All conditions with domain inside ``[0, n)`` (3**n of them)."""
    els = list(itertools.islice(k_stream(), 3 ** n))
    return FinitePoset(els, {(p, q) for p in els for q in els if p.extends(q)})


@dataclass(frozen=True)
class DefinedAt:
    """``D_n``: conditions whose domain contains n."""

    n: int

    @property
    def name(self):
        return f"d{self.n}"

    def __call__(self, p: BinaryCondition) -> bool:
        return self.n in p.domain


@dataclass(frozen=True)
class DisagreesWith:
    """``E_h``: conditions differing from the 0/1 sequence h somewhere.

    h is given by a finite bit pattern repeated forever.
    """

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise ValueError("pattern must be a nonempty 0/1 sequence")
        object.__setattr__(self, "bits", bits)

    @property
    def name(self):
        return "e:" + "".join(map(str, self.bits))

    def h(self, x: int) -> int:
        return self.bits[x % len(self.bits)]

    def __call__(self, p: BinaryCondition) -> bool:
        return any(v != self.h(k) for k, v in p.items)


# --- random finite posets for experiments and tests ------------------------

def random_poset(rng: random.Random, n: int, density: float = 0.3) -> FinitePoset:
    """Closure of a random relation on labels ``"p0".."p{n-1}"``."""
    els = [f"p{i}" for i in range(n)]
    pairs = [(a, b) for a in els for b in els if a != b and rng.random() < density]
    return FinitePoset.from_relation(els, pairs)


def random_dense_set(rng: random.Random, P: FinitePoset, extra: float = 0.2) -> frozenset:
    """A dense subset: one random extension of each element plus noise."""
    mask = 0
    for k in range(len(P)):
        below = list(_bits(P.down[k]))
        mask |= 1 << rng.choice(below)
        if rng.random() < extra:
            mask |= 1 << k
    return P.subset(mask)
