import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from setforce import completion, poset
from setforce.errors import FuelExhausted, IncompatibleError, PosetError, SizeLimitError, UnknownElement
from setforce.poset import (BinaryCondition, DefinedAt, DisagreesWith, FinitePoset, LazyPoset,
                            compatible, dpq_dense, fip_check, generic_filter, is_antichain, is_dense,
                            is_filter, is_ultrafilter, k_compatible, k_leq, k_poset, k_stream, k_window,
                            lazy_is_dense, union_of_filter)

B = BinaryCondition.of


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    els = [f"p{k}" for k in range(n)]
    off = [(a, b) for a in els for b in els if a != b]
    chosen = draw(st.lists(st.sampled_from(off), max_size=2 * n)) if off else []
    return FinitePoset.from_relation(els, chosen)


@st.composite
def poset_and_subset(draw, max_size=6):
    P = draw(posets(max_size))
    S = draw(st.sets(st.sampled_from(P.elements)))
    return P, frozenset(S)


def vee():
    return FinitePoset.from_relation(["top", "l", "r"], [("l", "top"), ("r", "top")])


class TestFinitePoset:
    def test_rejects_non_preorders(self):
        with pytest.raises(PosetError):
            FinitePoset(["a", "b"], [("a", "b"), ("a", "a")])
        with pytest.raises(PosetError):
            FinitePoset(["a", "b", "c"], [(x, x) for x in "abc"] + [("a", "b"), ("b", "c")])
        with pytest.raises(UnknownElement):
            FinitePoset(["a"], [("a", "a"), ("a", "z")])

    def test_closure_and_queries(self):
        P = FinitePoset.from_relation("abc", [("a", "b"), ("b", "c")])
        assert P.le("a", "c") and not P.le("c", "a")
        assert P.below("b") == {"a", "b"} and P.above("b") == {"b", "c"}
        with pytest.raises(UnknownElement):
            P.le("a", "zz")

    def test_preorders_with_equivalent_points(self):
        P = FinitePoset.from_relation("ab", [("a", "b"), ("b", "a")])
        assert P.le("a", "b") and P.le("b", "a")


class TestCompatibility:
    def test_reflexive(self):
        P = vee()
        assert all(compatible(P, p, p) for p in P.elements)

    def test_k_examples(self):
        K = k_window(2)
        assert compatible(K, B({0: 1}), B({1: 0}))
        assert not compatible(K, B({0: 1}), B({0: 0}))
        assert k_compatible(B({0: 1}), B({1: 0})) and not k_compatible(B({0: 1}), B({0: 0}))

    @given(posets())
    def test_matches_definition_and_is_symmetric(self, P):
        for p, q in itertools.product(P.elements, repeat=2):
            c = compatible(P, p, q)
            assert c == oracles.compatible_by_definition(P, p, q) == compatible(P, q, p)


class TestAntichainDense:
    def test_antichains(self):
        K = k_window(1)
        assert is_antichain(K, {B({0: 0}), B({0: 1})})
        assert is_antichain(K, {B({0: 0})})
        assert is_antichain(K, [B({0: 0}), B({0: 0})])
        assert not is_antichain(vee(), {"l", "top"})

    @given(poset_and_subset())
    def test_antichain_matches_definition(self, case):
        P, S = case
        expected = all(not oracles.compatible_by_definition(P, p, q)
                       for p, q in itertools.combinations(S, 2))
        assert is_antichain(P, S) == expected

    def test_dense_examples(self):
        P = vee()
        assert is_dense(P, P.elements)
        assert is_dense(P, {"l", "r"}) and not is_dense(P, {"top"})

    @given(poset_and_subset())
    def test_dense_matches_definition(self, case):
        P, S = case
        assert is_dense(P, S) == oracles.dense_by_definition(P, S)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_defined_at_is_dense_in_k_windows(self, n):
        K = k_window(n + 1)
        assert is_dense(K, {p for p in K.elements if DefinedAt(n)(p)})

    def test_disagreement_sets_are_dense_in_k(self):
        for bits in ("0", "1", "01", "110"):
            E = DisagreesWith(tuple(bits))
            assert lazy_is_dense(k_poset(), E, probe=81, fuel=50)

    def test_disagreement_sets_are_not_dense_in_a_window(self):
        # total conditions on [0, n) agreeing with h have no extension inside the window
        K = k_window(3)
        E = DisagreesWith((0,))
        assert not is_dense(K, {p for p in K.elements if E(p)})


class TestDpq:
    def test_antichain(self):
        P = FinitePoset.from_relation("pq", [])
        assert dpq_dense(P, "p", "q") == {"p", "q"}

    def test_chain(self):
        P = FinitePoset.from_relation("pq", [("p", "q")])
        assert dpq_dense(P, "p", "q") == {"p"}
        P3 = FinitePoset.from_relation("abc", [("a", "b"), ("b", "c")])
        assert dpq_dense(P3, "c", "c") == {"a", "b", "c"}

    @settings(max_examples=60)
    @given(posets(7))
    def test_always_dense_and_matches_definition(self, P):
        for p, q in itertools.product(P.elements, repeat=2):
            D = dpq_dense(P, p, q)
            expected = {r for r in P.elements
                        if (P.le(r, p) and P.le(r, q))
                        or not oracles.compatible_by_definition(P, r, p)
                        or not oracles.compatible_by_definition(P, r, q)}
            assert D == expected and oracles.dense_by_definition(P, D)


class TestFilters:
    def test_examples(self):
        P = vee()
        assert is_filter(P, P.above("l"))
        assert not is_filter(P, {"l", "r"})
        assert is_filter(P, set())

    @settings(max_examples=60)
    @given(posets(5))
    def test_filter_matches_definition(self, P):
        for G in oracles.all_subsets(P.elements):
            assert is_filter(P, G) == oracles.filter_by_definition(P, G)

    def test_ultrafilter_examples(self):
        chain2 = FinitePoset.from_relation(["bot", "top"], [("bot", "top")])
        assert not is_ultrafilter(chain2, {"top"})
        assert is_ultrafilter(chain2, {"bot", "top"})
        with pytest.raises(PosetError):
            is_ultrafilter(vee(), {"l", "r"})

    def test_atoms_of_a_boolean_algebra(self):
        A = completion.ro_algebra(FinitePoset.from_relation("xyz", []))
        Q = A.as_poset()
        for atom in A.atoms():
            assert is_ultrafilter(Q, Q.above(atom))

    @settings(max_examples=60)
    @given(posets(5))
    def test_ultrafilter_matches_maximal_filters(self, P):
        maximal = set(oracles.maximal_filters(P))
        for G in oracles.all_filters(P):
            if G:
                assert is_ultrafilter(P, G) == (G in maximal)

    @settings(max_examples=40)
    @given(posets(5))
    def test_extension_search_agrees_with_enumeration(self, P):
        maximal = set(oracles.maximal_filters(P))
        saved = poset.ULTRAFILTER_ENUM_LIMIT
        poset.ULTRAFILTER_ENUM_LIMIT = 0
        try:
            for G in oracles.all_filters(P):
                if G:
                    assert is_ultrafilter(P, G) == (G in maximal)
        finally:
            poset.ULTRAFILTER_ENUM_LIMIT = saved

    def test_extension_search_fuel(self):
        P = FinitePoset.from_relation([f"a{k}" for k in range(20)], [])
        assert is_ultrafilter(P, {"a3"})
        with pytest.raises(FuelExhausted):
            is_ultrafilter(P, {"a3"}, fuel=5)

    @settings(max_examples=40)
    @given(posets(6))
    def test_all_compatible_means_one_maximal_filter(self, P):
        if all(compatible(P, p, q) for p in P.elements for q in P.elements):
            assert oracles.maximal_filters(P) == [frozenset(P.elements)]
            assert len(completion.ro_algebra(P)) == 2


class TestFip:
    def test_examples(self):
        assert fip_check([{1, 2, 3}, {1, 2}, {1}])
        assert not fip_check([{1}, {2}])
        with pytest.raises(ValueError):
            fip_check([])
        with pytest.raises(SizeLimitError):
            fip_check([{1}] * 21)

    def test_filter_members_have_fip(self):
        P = FinitePoset.from_relation("abcd", [("a", "b"), ("b", "c"), ("a", "d")])
        G = P.above("a")
        assert is_filter(P, G)
        assert fip_check([P.below(g) for g in G])

    @given(st.lists(st.frozensets(st.integers(0, 5), max_size=4), min_size=1, max_size=6))
    def test_matches_brute_force(self, family):
        expected = all(frozenset.intersection(*sub)
                       for r in range(1, len(family) + 1)
                       for sub in itertools.combinations(family, r))
        assert fip_check(family) == expected


class TestGenericFilter:
    def test_whole_poset_as_dense_set(self):
        P = LazyPoset.from_finite(vee())
        res = generic_filter(P, [lambda x: True], "top", fuel=10)
        assert res.chain == ("top", "top") and "top" in res.filter

    @settings(max_examples=80)
    @given(posets(8), st.integers(0, 2**32 - 1))
    def test_invariants(self, P, seed):
        rng = random.Random(seed)
        dense = [poset.random_dense_set(rng, P) for _ in range(rng.randint(0, 6))]
        start = rng.choice(P.elements)
        res = generic_filter(LazyPoset.from_finite(P), {f"D{k}": D.__contains__ for k, D in enumerate(dense)},
                             start, fuel=len(P))
        G = frozenset(res.filter)
        assert oracles.filter_by_definition(P, G)
        for a, b in zip(res.chain, res.chain[1:]):
            assert P.le(b, a)
        assert [name for name, _ in res.met] == [f"D{k}" for k in range(len(dense))]
        for (name, w), D in zip(res.met, dense):
            assert w in D and w in G
        assert all(any(P.le(p, q) for p in res.chain) for q in G)

    def test_first_hit_in_enumeration_order(self):
        P = FinitePoset.from_relation(["top", "a", "b"], [("a", "top"), ("b", "top")])
        res = generic_filter(LazyPoset.from_finite(P), [{"a", "b"}.__contains__], "top", fuel=3)
        assert res.chain[1] == "a"

    def test_fuel_exhaustion(self):
        with pytest.raises(FuelExhausted):
            generic_filter(k_poset(), [DefinedAt(5)], BinaryCondition(), fuel=3)

    def test_k_first_five_points(self):
        res = generic_filter(k_poset(), [DefinedAt(n) for n in range(5)], BinaryCondition(), fuel=1000)
        assert set(range(5)) <= union_of_filter(res.chain).domain

    def test_k_hundred_points(self):
        res = generic_filter(k_poset(), [DefinedAt(n) for n in range(100)], BinaryCondition(), fuel=1000)
        assert set(range(100)) <= union_of_filter(res.chain).domain

    def test_k_differs_from_each_h(self):
        hs = [DisagreesWith(tuple(b)) for b in ("0", "1", "10")]
        res = generic_filter(k_poset(), hs, BinaryCondition(), fuel=1000)
        f = union_of_filter(res.chain)
        for h in hs:
            assert any(f[x] != h.h(x) for x in f.domain)

    def test_k_filter_is_a_filter_on_its_window(self):
        K = k_poset()
        res = generic_filter(K, [DefinedAt(0), DefinedAt(1)], BinaryCondition(), fuel=27)
        W = poset.window_poset(K, res.window)
        assert is_filter(W, set(res.filter) & set(res.window))


class TestK:
    def test_union_of_filter(self):
        assert union_of_filter([B({0: 1}), B({0: 1, 1: 0})]) == B({0: 1, 1: 0})
        assert union_of_filter([]) == BinaryCondition()
        with pytest.raises(IncompatibleError):
            union_of_filter([B({0: 1}), B({0: 0})])

    def test_condition_validation(self):
        with pytest.raises(ValueError):
            BinaryCondition(((0, 1), (0, 0)))
        with pytest.raises(ValueError):
            B({0: 2})
        assert str(B({1: 0, 0: 1})) == "{0:1,1:0}"

    def test_enumeration_order(self):
        first = list(itertools.islice(k_stream(), 81))

        def key(p):
            dom = sum(1 << x for x in p.domain)
            vals = sum(v << j for j, (_, v) in enumerate(p.items))
            return (max(p.domain, default=-1), dom, vals)

        assert first == sorted(first, key=key)
        assert len(set(first)) == 81
        assert all(p.domain <= set(range(4)) for p in first)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_windows(self, n):
        K = k_window(n)
        assert len(K) == 3 ** n
        assert set(K.elements) == {BinaryCondition(tuple(zip(dom, vals)))
                                   for r in range(n + 1) for dom in itertools.combinations(range(n), r)
                                   for vals in itertools.product((0, 1), repeat=r)}

    def test_below_matches_filtered_enumeration(self):
        window = list(itertools.islice(k_stream(), 3 ** 4))
        for p in window[:27]:
            expected = [q for q in window if k_leq(q, p)]
            got = list(itertools.islice(k_stream(required=p), len(expected)))
            assert got == expected
