from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from haros.farey import (GOLDEN, CFSpec, apply_F, canonical_cf, cf_to_path, cf_to_rational,
                         convergents, decimal_to_cfspec, descend, evaluate, farey_length,
                         farey_sequence, fibonacci, iter_path_symbols, level_of, mediant,
                         path_to_cf, path_to_rational, rational_to_cf, rational_to_path,
                         tree_level, validate_path)

from edge_oracle import farey_brute


def interior(n):
    return [x for x in farey_sequence(n) if 0 < x < 1]


fractions_in_unit = st.integers(2, 400).flatmap(
    lambda q: st.integers(1, q - 1).map(lambda p: F(p, q)))


class TestMediant:
    def test_examples(self):
        assert mediant(F(0), F(1)) == F(1, 2)
        assert mediant(F(1, 3), F(1, 2)) == F(2, 5)
        assert mediant(F(0), F(0)) == F(0)

    def test_between_neighbours(self):
        seq = farey_sequence(30)
        for a, b in zip(seq, seq[1:]):
            assert a < mediant(a, b) < b


class TestFareySequence:
    def test_examples(self):
        assert farey_sequence(3) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]
        assert farey_sequence(4) == [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1)]
        assert farey_sequence(1) == [F(0), F(1)]

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            farey_sequence(0)

    @pytest.mark.parametrize("n", [1, 2, 5, 17, 60])
    def test_matches_exhaustive_enumeration(self, n):
        assert farey_sequence(n) == farey_brute(n)

    def test_lengths(self):
        assert farey_length(200) == 12233
        assert farey_length(1000) == 304193
        assert len(farey_sequence(200)) == farey_length(200)


class TestTreeLevels:
    def test_examples(self):
        assert tree_level(4) == [F(1, 4), F(2, 5), F(3, 5), F(3, 4)]
        assert tree_level(2) == [F(1, 2)]
        assert tree_level(1) == [F(0), F(1)]
        lv5 = tree_level(5)
        assert len(lv5) == 8 and F(2, 7) in lv5 and F(3, 8) in lv5

    def test_cap(self):
        with pytest.raises(ValueError):
            tree_level(31)
        assert len(tree_level(12, cap=12)) == 2 ** 10

    def test_levels_match_cf_sums(self):
        for n in range(2, 12):
            assert all(level_of(x) == n for x in tree_level(n))

    def test_farey_contained_in_levels(self):
        for n in range(1, 13):
            union = set()
            for i in range(1, n + 1):
                union.update(tree_level(i))
            assert set(farey_sequence(n)) <= union


class TestPaths:
    def test_examples(self):
        assert path_to_rational("LRLRL") == F(8, 13)
        assert path_to_rational("L") == F(1, 2)
        assert path_to_rational("LLR") == F(2, 5)
        assert path_to_rational("") == F(1)
        assert rational_to_path(F(8, 13)) == "LRLRL"
        assert rational_to_path(F(1, 3)) == "LL"
        assert rational_to_path(F(2, 7)) == "LLLR"

    def test_endpoints_have_no_path(self):
        for x in (F(0), F(1)):
            with pytest.raises(ValueError):
                rational_to_path(x)

    @pytest.mark.parametrize("bad", ["R", "LX", "RL", "l"])
    def test_invalid_paths(self, bad):
        with pytest.raises(ValueError):
            validate_path(bad)

    def test_descend_brackets(self):
        left, node, right = descend("LLR")
        assert (left, node, right) == (F(1, 3), F(2, 5), F(1, 2))

    def test_round_trip_all_q_up_to_200(self):
        for x in interior(200):
            assert path_to_rational(rational_to_path(x)) == x

    def test_cf_path_consistency(self):
        for x in interior(150):
            assert cf_to_path(rational_to_cf(x)) == rational_to_path(x)

    @given(fractions_in_unit)
    def test_lazy_symbols_match(self, x):
        assert "".join(iter_path_symbols(x)) == rational_to_path(x)

    @given(fractions_in_unit)
    def test_path_length_is_level_minus_one(self, x):
        assert len(rational_to_path(x)) == level_of(x) - 1


class TestContinuedFractions:
    def test_examples(self):
        assert rational_to_cf(F(8, 13)) == (1, 1, 1, 1, 2)
        assert rational_to_cf(F(1, 3)) == (3,)
        assert rational_to_cf(F(2, 5)) == (2, 2)
        assert cf_to_path([3]) == "LL"
        assert cf_to_path([1, 1, 1, 1, 2]) == "LRLRL"
        assert cf_to_path([3, 2]) == "LLLR"

    def test_canonical(self):
        assert canonical_cf([2, 1]) == (3,)
        assert canonical_cf([1, 1, 1, 1, 1, 1]) == (1, 1, 1, 1, 2)
        with pytest.raises(ValueError):
            canonical_cf([1])
        with pytest.raises(ValueError):
            canonical_cf([])
        with pytest.raises(ValueError):
            canonical_cf([2, 0])

    @given(fractions_in_unit)
    def test_round_trip(self, x):
        cf = rational_to_cf(x)
        assert cf[-1] >= 2
        assert cf_to_rational(cf) == x
        assert path_to_cf(rational_to_path(x)) == cf

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=8).filter(lambda t: t != [1]))
    def test_noncanonical_input_normalizes(self, terms):
        assert cf_to_rational(canonical_cf(terms)) == cf_to_rational(terms)
        assert path_to_rational(cf_to_path(terms)) == cf_to_rational(terms)


class TestApplyF:
    def test_examples(self):
        assert apply_F(F(2, 5)) == F(2, 7)
        assert apply_F(F(3, 5)) == F(3, 8)
        assert apply_F(F(0), 4) == F(0)

    def test_shifts_first_term(self):
        for x in interior(50):
            if x <= F(1, 2):
                for m in (1, 2, 3):
                    assert rational_to_cf(apply_F(x, m))[0] == rational_to_cf(x)[0] + m

    def test_bad_m(self):
        with pytest.raises(ValueError):
            apply_F(F(1, 2), 0)


class TestFibonacci:
    def test_values(self):
        assert fibonacci(4) == 5
        assert fibonacci(0) == 1
        assert fibonacci(10) == 89
        for n in range(2, 40):
            assert fibonacci(n) == fibonacci(n - 1) + fibonacci(n - 2)

    def test_big(self):
        assert fibonacci(93) > 2 ** 64 > fibonacci(92)
        assert fibonacci(300) == fibonacci(299) + fibonacci(298)


class TestCFSpec:
    def test_parse_and_format(self):
        for text in ["[(1)]", "[3,(1)]", "[2,4,1,1,2,2,(1)]", "[(1,2)]", "[2,2]"]:
            assert str(CFSpec.parse(text)) == text
        assert CFSpec.parse("[0; 2, (1)]") == CFSpec((2,), (1,))

    def test_classification(self):
        assert GOLDEN.is_noble and GOLDEN.metallic_index == 1
        assert CFSpec((), (2,)).metallic_index == 2
        assert CFSpec((3,), (1,)).metallic_index is None
        assert CFSpec((2, 2)).is_rational

    @pytest.mark.parametrize("bad", ["[", "[a]", "[0]", "[(0)]", "[1]"])
    def test_bad_specs(self, bad):
        with pytest.raises(ValueError):
            CFSpec.parse(bad)

    def test_convergents(self):
        assert convergents(GOLDEN, 4) == [F(1), F(1, 2), F(2, 3), F(3, 5)]
        assert convergents(CFSpec((3,), (1,)), 6) == [F(1, 3), F(1, 4), F(2, 7), F(3, 11),
                                                       F(5, 18), F(8, 29)]
        assert convergents(CFSpec((2, 2)), 2) == [F(1, 2), F(2, 5)]

    def test_evaluate(self):
        assert evaluate(GOLDEN) == pytest.approx(0.6180339887498949, abs=1e-15)
        assert evaluate(CFSpec((2,), (1,))) == pytest.approx(0.3819660112501051, abs=1e-15)
        assert evaluate(CFSpec((), (2,))) == pytest.approx(2 ** 0.5 - 1, abs=1e-15)
        assert evaluate(CFSpec((), (1, 2))) == pytest.approx(3 ** 0.5 - 1, abs=1e-15)

    @pytest.mark.parametrize("spec", [GOLDEN, CFSpec((), (2,)), CFSpec((3,), (1,)),
                                      CFSpec((2, 4, 1, 1, 2, 2), (1,)), CFSpec((1,), (3, 1, 2))])
    def test_convergent_limit(self, spec):
        assert abs(evaluate(spec) - float(convergents(spec, 40)[-1])) < 1e-12

    def test_decimal(self):
        spec = decimal_to_cfspec("0.25")
        assert spec.rational() == F(1, 4)
        assert len(decimal_to_cfspec("0.7182818284590452", max_terms=5).transient) == 5
        with pytest.raises(ValueError):
            decimal_to_cfspec("1.5")
