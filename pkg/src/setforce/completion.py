"""Regular open algebras of finite posets and their Stone spaces.

A finite preorder carries the topology whose basic opens are the down-sets
``N_p = {q : q <= p}``; its opens are exactly the down-closed subsets.  The
regular opens (``b == int(cl(b))``) form a complete Boolean algebra into
which ``p -> int(cl(N_p))`` maps the poset densely.

Subsets are frozensets of poset elements at the API, bitmasks inside.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable

from .errors import SizeLimitError
from .poset import FinitePoset, _bits, compatible, is_ultrafilter

POSET_LIMIT = 12
CARRIER_LIMIT = 2 ** 12
EXHAUSTIVE_SUBSETS_LIMIT = 16
EXHAUSTIVE_TRIPLES_LIMIT = 16
SAMPLE_SIZE = 4096
SUBSET_SAMPLE_SIZE = 256


@dataclass
class Check:
    passed: bool
    vacuous: bool = False
    witness: object = None


@dataclass
class Report:
    checks: dict = field(default_factory=dict)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict:
        return {k: c for k, c in self.checks.items() if not c.passed}


class DownSetTopology:
    def __init__(self, poset: FinitePoset):
        self.poset = poset
        self.full = poset.full
        self._interior = {}
        self._regular = {}

    def base(self, p) -> frozenset:
        return self.poset.below(p)

    def interior_mask(self, b: int) -> int:
        """Points whose whole down-set lies in b (memoised; carriers are small)."""
        out = self._interior.get(b)
        if out is None:
            down = self.poset.down
            out = 0
            for k in _bits(b):
                if not down[k] & ~b:
                    out |= 1 << k
            self._interior[b] = out
        return out

    def closure_mask(self, b: int) -> int:
        return self.full & ~self.interior_mask(self.full & ~b)

    def regularize_mask(self, b: int) -> int:
        out = self._regular.get(b)
        if out is None:
            out = self._regular[b] = self.interior_mask(self.closure_mask(b))
        return out

    def is_open_mask(self, b: int) -> bool:
        return self.interior_mask(b) == b

    def interior(self, b: Iterable) -> frozenset:
        return self.poset.subset(self.interior_mask(self.poset.mask(b)))

    def closure(self, b: Iterable) -> frozenset:
        return self.poset.subset(self.closure_mask(self.poset.mask(b)))

    def open_masks(self) -> list:
        return [b for b in range(self.full + 1) if self.is_open_mask(b)]


def regularize(T: DownSetTopology, b: Iterable) -> frozenset:
    return T.poset.subset(T.regularize_mask(T.poset.mask(b)))


class RegularOpenAlgebra:
    """ro(P) with meet ``b & c``, join ``int(cl(b | c))``, complement ``int(P - b)``."""

    def __init__(self, poset: FinitePoset, masks: list):
        self.poset = poset
        self.topology = DownSetTopology(poset)
        self.masks = sorted(masks, key=lambda m: (bin(m).count("1"), m))
        self.position = {m: k for k, m in enumerate(self.masks)}
        self.zero_mask = 0
        self.one_mask = poset.full
        self.embedding_masks = {p: self.topology.regularize_mask(poset.down[poset.i(p)])
                                for p in poset.elements}

    def __len__(self):
        return len(self.masks)

    # mask-level operations
    def meet_mask(self, b: int, c: int) -> int:
        return b & c

    def join_mask(self, b: int, c: int) -> int:
        return self.topology.regularize_mask(b | c)

    def complement_mask(self, b: int) -> int:
        return self.topology.interior_mask(self.one_mask & ~b)

    # set-level API
    def _m(self, b) -> int:
        m = self.poset.mask(b)
        if m not in self.position:
            raise ValueError(f"{set(b)} is not a regular open set")
        return m

    @property
    def carrier(self) -> tuple:
        return tuple(self.poset.subset(m) for m in self.masks)

    @property
    def zero(self) -> frozenset:
        return frozenset()

    @property
    def one(self) -> frozenset:
        return frozenset(self.poset.elements)

    @property
    def embedding(self) -> dict:
        return {p: self.poset.subset(m) for p, m in self.embedding_masks.items()}

    def i(self, p) -> frozenset:
        return self.poset.subset(self.embedding_masks[p])

    def meet(self, b, c) -> frozenset:
        return self.poset.subset(self._m(b) & self._m(c))

    def join(self, b, c) -> frozenset:
        return self.poset.subset(self.join_mask(self._m(b), self._m(c)))

    def complement(self, b) -> frozenset:
        return self.poset.subset(self.complement_mask(self._m(b)))

    def leq(self, b, c) -> bool:
        return not self._m(b) & ~self._m(c)

    def atom_masks(self) -> list:
        nonzero = [m for m in self.masks if m]
        return [a for a in nonzero if not any(b != a and not b & ~a for b in nonzero)]

    def atoms(self) -> list:
        return [self.poset.subset(a) for a in self.atom_masks()]

    def table(self, op: str) -> dict:
        """Full operation table keyed by carrier members (frozensets)."""
        sub = self.poset.subset
        if op == "complement":
            return {sub(b): sub(self.complement_mask(b)) for b in self.masks}
        f = {"meet": self.meet_mask, "join": self.join_mask}[op]
        return {(sub(b), sub(c)): sub(f(b, c)) for b in self.masks for c in self.masks}

    def as_poset(self, drop_zero: bool = True) -> FinitePoset:
        """The algebra under inclusion, elements as frozensets."""
        ms = [m for m in self.masks if m or not drop_zero]
        els = [self.poset.subset(m) for m in ms]
        return FinitePoset(els, {(els[a], els[b]) for a in range(len(ms)) for b in range(len(ms))
                                 if not ms[a] & ~ms[b]})


def ro_algebra(P: FinitePoset, limit: int = POSET_LIMIT) -> RegularOpenAlgebra:
    if len(P) > limit:
        raise SizeLimitError(f"poset has {len(P)} elements, limit {limit}")
    T = DownSetTopology(P)
    masks = [b for b in T.open_masks() if T.regularize_mask(b) == b]
    return RegularOpenAlgebra(P, masks)


def verify_embedding(P: FinitePoset, A: RegularOpenAlgebra) -> Report:
    """Density of the image, monotonicity, and incompatibility <-> disjointness."""
    emb = A.embedding_masks
    report = Report()

    zero_image = next((p for p in P.elements if not emb[p]), None)
    undominated = next((b for b in A.masks if b and not any(not emb[p] & ~b for p in P.elements)), None)
    if zero_image is not None:
        report.checks["dense"] = Check(False, witness=("i(p) = 0", zero_image))
    elif undominated is not None:
        report.checks["dense"] = Check(False, witness=P.subset(undominated))
    else:
        report.checks["dense"] = Check(True)

    bad = next(((p, q) for p, q in P.leq if emb[p] & ~emb[q]), None)
    report.checks["monotone"] = Check(bad is None, witness=bad)

    incompatible_pairs = 0
    bad = None
    for p, q in itertools.combinations_with_replacement(P.elements, 2):
        inc = not compatible(P, p, q)
        incompatible_pairs += inc
        if inc != (not emb[p] & emb[q]):
            bad = (p, q)
            break
    report.checks["incompatibility"] = Check(bad is None, vacuous=bad is None and incompatible_pairs == 0,
                                             witness=bad)
    return report


LAWS = ("meet_assoc", "join_assoc", "meet_comm", "join_comm", "absorb_meet", "absorb_join",
        "distrib_meet", "distrib_join", "complement", "closed")


def _law_failures(A: RegularOpenAlgebra, triples) -> dict:
    """First failing triple per law, or None.  Joins go through the memoised
    regularisation, so each law costs a few dictionary lookups."""
    reg, comp = A.topology.regularize_mask, A.complement_mask
    zero, one, position = A.zero_mask, A.one_mask, A.position
    failures = {}
    for a, b, c in triples:
        ab, bc, ac = a & b, b & c, a & c
        j_ab, j_bc, j_ac = reg(a | b), reg(b | c), reg(a | c)
        ca = comp(a)
        holds = (
            ab & c == a & bc,
            reg(j_ab | c) == reg(a | j_bc),
            ab == b & a,
            j_ab == reg(b | a),
            a & j_ab == a,
            reg(a | ab) == a,
            a & j_bc == reg(ab | ac),
            reg(a | bc) == j_ab & j_ac,
            a & ca == zero and reg(a | ca) == one,
            ab in position and j_ab in position and ca in position,
        )
        if not all(holds):
            for name, ok in zip(LAWS, holds):
                if not ok and name not in failures:
                    failures[name] = tuple(A.poset.subset(x) for x in (a, b, c))
    return {name: failures.get(name) for name in LAWS}


def _bounds_exist(A: RegularOpenAlgebra, subsets) -> tuple:
    """First subset lacking a least upper bound, and first lacking a greatest lower bound."""
    ms = A.masks
    n = len(ms)
    # ups[k]: carrier indices above ms[k]; downs[k]: below
    ups = [sum(1 << j for j in range(n) if not ms[k] & ~ms[j]) for k in range(n)]
    downs = [sum(1 << j for j in range(n) if not ms[j] & ~ms[k]) for k in range(n)]
    all_idx = (1 << n) - 1
    memo_sup, memo_inf = {}, {}

    def has_extreme(bounds: int, rel, memo) -> bool:
        if bounds not in memo:
            memo[bounds] = any(not bounds & ~rel[k] for k in _bits(bounds))
        return memo[bounds]

    no_sup = no_inf = None
    for sub in subsets:
        ub, lb = all_idx, all_idx
        for k in _bits(sub):
            ub &= ups[k]
            lb &= downs[k]
        if no_sup is None and not has_extreme(ub, ups, memo_sup):
            no_sup = sub
        if no_inf is None and not has_extreme(lb, downs, memo_inf):
            no_inf = sub
    return no_sup, no_inf


def ba_laws_check(A: RegularOpenAlgebra, seed: int = 0) -> Report:
    """Boolean-algebra axioms and completeness, checked on the carrier.

    Triples are exhaustive up to ``EXHAUSTIVE_TRIPLES_LIMIT`` elements and
    sup/inf existence over all subsets up to ``EXHAUSTIVE_SUBSETS_LIMIT``;
    beyond that a seeded sample is used and ``report.exhaustive`` is False.
    """
    n = len(A)
    if n > CARRIER_LIMIT:
        raise SizeLimitError(f"carrier of {n} elements exceeds {CARRIER_LIMIT}")
    rng = random.Random(seed)
    ms = A.masks
    report = Report()
    if n <= EXHAUSTIVE_TRIPLES_LIMIT:
        triples = itertools.product(ms, repeat=3)
    else:
        triples = [tuple(rng.choice(ms) for _ in range(3)) for _ in range(SAMPLE_SIZE)]
        report.exhaustive = False
    for name, witness in _law_failures(A, triples).items():
        report.checks[name] = Check(witness is None, witness=witness)

    if n <= EXHAUSTIVE_SUBSETS_LIMIT:
        subsets = range(1 << n)
    else:
        singles_pairs = [(1 << a) | (1 << b) for a in range(n) for b in range(a, n)]
        subsets = [0, (1 << n) - 1] + singles_pairs[:SAMPLE_SIZE] + [
            rng.getrandbits(n) for _ in range(SUBSET_SAMPLE_SIZE)]
        report.exhaustive = False
    no_sup, no_inf = _bounds_exist(A, subsets)
    decode = lambda sub: None if sub is None else [A.poset.subset(ms[k]) for k in _bits(sub)]
    report.checks["sup_exists"] = Check(no_sup is None, witness=decode(no_sup))
    report.checks["inf_exists"] = Check(no_inf is None, witness=decode(no_inf))
    return report


@dataclass
class StoneSpace:
    algebra: RegularOpenAlgebra
    points: tuple
    basic_open: dict

    def N(self, b) -> frozenset:
        return self.basic_open[frozenset(b)]


def stone_space(A: RegularOpenAlgebra) -> StoneSpace:
    """Ultrafilters of ``A - {0}`` under inclusion, with ``N_b = {G : b in G}``.

    Candidates are the principal filters ``up(b)`` (in a finite poset every
    nonempty filter has a least element); each is kept only if
    :func:`is_ultrafilter` confirms it.
    """
    if len(A) > CARRIER_LIMIT:
        raise SizeLimitError(f"carrier of {len(A)} elements exceeds {CARRIER_LIMIT}")
    Q = A.as_poset()
    seen = set()
    points = []
    for b in Q.elements:
        G = Q.above(b)
        if G in seen:
            continue
        seen.add(G)
        if is_ultrafilter(Q, G):
            points.append(G)
    points.sort(key=lambda G: sorted(A.position[A.poset.mask(b)] for b in G))
    basic = {}
    for m in A.masks:
        b = A.poset.subset(m)
        basic[b] = frozenset(k for k, G in enumerate(points) if b in G)
    return StoneSpace(A, tuple(points), basic)


def stone_ccc_check(S: StoneSpace) -> Report:
    """``N_b & N_c`` empty iff ``b & c == 0``, and ``N_(b & c) == N_b & N_c``."""
    A = S.algebra
    sub = A.poset.subset
    disjoint_bad = meet_bad = None
    for b, c in itertools.product(A.masks, repeat=2):
        Nb, Nc = S.basic_open[sub(b)], S.basic_open[sub(c)]
        if disjoint_bad is None and (not Nb & Nc) != (not b & c):
            disjoint_bad = (sub(b), sub(c))
        if meet_bad is None and S.basic_open[sub(b & c)] != Nb & Nc:
            meet_bad = (sub(b), sub(c))
    report = Report()
    report.checks["disjoint_iff_meet_zero"] = Check(disjoint_bad is None, witness=disjoint_bad)
    report.checks["meet_preserved"] = Check(meet_bad is None, witness=meet_bad)
    return report


def hasse_dot(A: RegularOpenAlgebra, name: str = "ro") -> str:
    """Graphviz description of the algebra's covering relation."""
    ms = A.masks

    def label(m):
        return "{" + ",".join(str(x) for x in A.poset.elements if A.poset.mask([x]) & m) + "}"

    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for m in ms:
        lines.append(f'  "{label(m)}";')
    for a, b in itertools.permutations(ms, 2):
        if a != b and not a & ~b and not any(c not in (a, b) and not a & ~c and not c & ~b for c in ms):
            lines.append(f'  "{label(a)}" -> "{label(b)}";')
    lines.append("}")
    return "\n".join(lines)
