import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from setforce.errors import NotAWellOrder, SizeLimitError, UnknownElement
from setforce.ordinal import add, from_nat, mul
from setforce.wellorder import (MAX_ELEMENTS, Case, FiniteRelation, cantor_no_surjection, chain,
                                check_order_properties, order_type_small, pred, product_order,
                                restrict, sum_order, trichotomy)

sizes = st.integers(0, 6)


@st.composite
def shuffled_chains(draw, max_size=6, tag="x"):
    n = draw(st.integers(0, max_size))
    labels = draw(st.permutations([f"{tag}{k}" for k in range(n)]))
    return chain(labels)


def brute_properties(r):
    els, rel = r.elements, r.pairs
    trans = all((x, z) in rel for x, y in rel for y2, z in rel if y == y2)
    refl = all((x, x) in rel for x in els)
    irrefl = not any((x, x) in rel for x in els)
    trich = all(((x, y) in rel) + ((y, x) in rel) + (x == y) == 1 for x in els for y in els)
    total = trans and trich and irrefl
    least = all(any(all((m, y) in rel for y in S if y != m) for m in S)
                for S in oracles.all_subsets(els) if S)
    return trans and refl, total, total and least


class TestCheckOrderProperties:
    def test_strict_chain(self):
        rep = check_order_properties(chain(3))
        assert rep.is_total and rep.is_well and not rep.is_partial
        assert rep.witnesses["partial"] == ("0",)

    def test_three_cycle(self):
        r = FiniteRelation("abc", {("a", "b"), ("b", "c"), ("c", "a")})
        rep = check_order_properties(r)
        assert not rep.is_total and not rep.is_well
        assert set(rep.witnesses["total"]) == {"a", "b", "c"}

    def test_descendant_preorder(self):
        # reflexive-transitive "descendant of": two children of one root
        els = ["root", "kid1", "kid2"]
        pairs = {(x, x) for x in els} | {("kid1", "root"), ("kid2", "root")}
        rep = check_order_properties(FiniteRelation(els, pairs))
        assert rep.is_partial and not rep.is_total
        assert set(rep.witnesses["total"]) <= set(els)

    def test_every_false_flag_has_a_witness(self):
        rep = check_order_properties(FiniteRelation("ab", {("a", "b"), ("b", "a")}))
        for key, flag in (("partial", rep.is_partial), ("total", rep.is_total), ("well", rep.is_well)):
            assert flag == (key not in rep.witnesses)

    def test_all_relations_on_three_points_match_brute_force(self):
        els = "abc"
        all_pairs = list(itertools.product(els, repeat=2))
        for mask in range(1 << len(all_pairs)):
            r = FiniteRelation(els, {all_pairs[k] for k in range(9) if mask >> k & 1})
            rep = check_order_properties(r)
            assert (rep.is_partial, rep.is_total, rep.is_well) == brute_properties(r), sorted(r.pairs)
            assert not rep.is_well or rep.is_total

    def test_relation_validation(self):
        with pytest.raises(ValueError):
            FiniteRelation(["a", "a"])
        with pytest.raises(UnknownElement):
            FiniteRelation(["a"], {("a", "b")})


class TestConstructions:
    def test_pred(self):
        r = chain(3)
        assert pred(r, "2") == {"0", "1"}
        assert pred(r, "0") == frozenset()
        with pytest.raises(UnknownElement):
            pred(r, "9")

    def test_pred_in_a_sum(self):
        s = sum_order(chain(1), chain(2))
        assert pred(s, "0#1") == {"0#0"}

    def test_order_type_small(self):
        assert order_type_small(chain(0)) == from_nat(0)
        assert order_type_small(chain(["a", "b", "c"])) == from_nat(3)
        assert order_type_small(sum_order(chain(1), chain(2))) == from_nat(3)
        with pytest.raises(NotAWellOrder):
            order_type_small(FiniteRelation("ab", {("a", "b"), ("b", "a")}))

    def test_sum_labels_and_identity(self):
        s = sum_order(chain(["a", "b"]), chain(0))
        assert s.elements == ("a#0", "b#0") and s.pairs == {("a#0", "b#0")}
        assert order_type_small(sum_order(chain(4), chain(5))) == add(from_nat(4), from_nat(5))

    def test_product(self):
        assert order_type_small(product_order(chain(2), chain(3))) == mul(from_nat(2), from_nat(3))
        a = chain(["p", "q", "r"])
        # (a, singleton) and (singleton, b) collapse onto the other factor
        for r in (product_order(a, chain(1)), product_order(chain(1), a)):
            assert len(r) == 3 and check_order_properties(r).is_well

    def test_product_is_b_copies_of_a(self):
        r = product_order(chain(["x", "y"]), chain(["0", "1", "2"]))
        ordered = sorted(r.elements, key=lambda e: len(pred(r, e)))
        assert ordered == ["<0,x>", "<0,y>", "<1,x>", "<1,y>", "<2,x>", "<2,y>"]

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            product_order(chain(40), chain(40))
        with pytest.raises(SizeLimitError):
            chain(MAX_ELEMENTS + 1)

    def test_restrict(self):
        r = restrict(chain(4), {"1", "3"})
        assert r.elements == ("1", "3") and r.pairs == {("1", "3")}

    @given(sizes, sizes)
    def test_oracle_laws(self, m, n):
        assert order_type_small(sum_order(chain(m), chain(n))) == add(from_nat(m), from_nat(n))
        assert order_type_small(product_order(chain(m), chain(n))) == mul(from_nat(m), from_nat(n))


class TestTrichotomy:
    def test_equal_sizes(self):
        a, b = chain(["a", "b", "c"]), chain(["x", "y", "z"])
        res = trichotomy(a, b)
        assert res.case is Case.ISO and res.cut_point is None
        assert res.iso == {"a": "x", "b": "y", "c": "z"}

    def test_three_into_five(self):
        res = trichotomy(chain(3), chain(["a", "b", "c", "d", "e"]))
        assert res.case is Case.PRED_OF_SECOND and res.cut_point == "d"

    def test_identity_on_self(self):
        a = chain(["q", "r", "s"])
        res = trichotomy(a, a)
        assert res.case is Case.ISO and res.iso == {x: x for x in a.elements}

    def test_never_iso_to_an_initial_segment(self):
        a = chain(5)
        for x in a.elements:
            seg = restrict(a, pred(a, x))
            assert trichotomy(a, seg).case is Case.PRED_OF_FIRST

    def test_rejects_non_well_orders(self):
        with pytest.raises(NotAWellOrder):
            trichotomy(chain(2), FiniteRelation("ab", {("a", "b"), ("b", "a")}))

    @given(shuffled_chains(tag="a"), shuffled_chains(tag="b"))
    def test_against_exhaustive_search(self, a, b):
        res = trichotomy(a, b)
        isos, cuts_b, cuts_a = oracles.trichotomy_census(a, b)
        assert sum(map(bool, (isos, cuts_b, cuts_a))) == 1
        if res.case is Case.ISO:
            assert isos == [res.iso]
        elif res.case is Case.PRED_OF_SECOND:
            assert cuts_b == {res.cut_point: 1}
        else:
            assert cuts_a == {res.cut_point: 1}

    @given(shuffled_chains(tag="a"), shuffled_chains(tag="b"))
    def test_cases_mirror(self, a, b):
        forward, backward = trichotomy(a, b).case, trichotomy(b, a).case
        assert (forward is Case.PRED_OF_SECOND) == (backward is Case.PRED_OF_FIRST)
        assert (forward is Case.ISO) == (backward is Case.ISO)


class TestCantor:
    @pytest.mark.parametrize("n", range(5))
    def test_no_surjection(self, n):
        assert cantor_no_surjection(n) is True

    @pytest.mark.parametrize("n", [-1, 5])
    def test_range(self, n):
        with pytest.raises(ValueError):
            cantor_no_surjection(n)

    def test_two_point_count_by_hand(self):
        # 4**2 maps into a 4-element power set; none hits all four subsets
        subsets = [frozenset(s) for s in oracles.all_subsets(range(2))]
        assert len(subsets) == 4
        assert not any(set(f) == set(subsets) for f in itertools.product(subsets, repeat=2))
