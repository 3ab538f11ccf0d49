import random

import pytest

from qdilog.rootsys import (CASE_IDS, WeylWord, action_of, affine_A, affine_D4,
                            apply_word, exchange_index, finite_A, get_case,
                            has_translation_property, is_reduced, order_prefix,
                            reflect, root_label, row_roots, row_word,
                            translation_word, window_convex)

A1, A2, A3, D4 = affine_A(1), affine_A(2), affine_A(3), affine_D4()


def test_cartan_data():
    assert A1.delta == (1, 1)
    assert D4.delta == (1, 1, 2, 1, 1)
    assert A2.is_simply_laced() and not A1.is_simply_laced()
    with pytest.raises(ValueError):
        type(A1)("bad", [[2, -1], [-2, 2]], [1, 1], [1, 1])


def test_reflection_s0_on_alpha1():
    assert reflect(A1, 0, (0, 1)) == (2, 1)


def test_identity_word():
    r = (1, 2, 0)
    assert apply_word(A2, WeylWord(), r) == r


def test_rho_rotates():
    rho = WeylWord.parse(A2, "rho")
    assert apply_word(A2, rho, (1, 0, 0)) == (0, 1, 0)
    assert apply_word(A2, rho, (0, 0, 1)) == (1, 0, 0)


def test_out_of_range_letter():
    with pytest.raises(IndexError):
        apply_word(A2, WeylWord([5]), (1, 0, 0))


def test_is_reduced_examples():
    assert is_reduced(A1, WeylWord([0, 1, 0, 1]))
    assert not is_reduced(A1, WeylWord([0, 0]))
    assert is_reduced(A2, WeylWord.parse(A2, "rho s2 s1"))


def _random_reduced(cartan, rng, length):
    letters = []
    for _ in range(20 * length):
        if len(letters) == length:
            break
        i = rng.randrange(cartan.rank)
        if is_reduced(cartan, WeylWord(letters + [i])):
            letters.append(i)
    return letters


def _deletion_oracle(cartan, prefix, p):
    target = action_of(cartan, prefix + [p])
    return [l + 1 for l in range(len(prefix))
            if action_of(cartan, prefix[:l] + prefix[l + 1:]) == target]


def test_exchange_index_trivial():
    assert exchange_index(A2, [1], 1) == 1


@pytest.mark.parametrize("cartan", [A1, A2, A3, D4, finite_A(3)], ids=lambda c: c.name)
def test_exchange_index_matches_deletion(cartan):
    rng = random.Random(cartan.rank)
    fired = 0
    for _ in range(40):
        prefix = _random_reduced(cartan, rng, rng.randint(1, 7))
        for p in range(cartan.rank):
            img = apply_word(cartan, WeylWord(prefix), cartan.simple(p))
            if all(x <= 0 for x in img):
                fired += 1
                assert exchange_index(cartan, prefix, p) in _deletion_oracle(cartan, prefix, p)
    assert fired > 10


def test_exchange_index_needs_negative_image():
    with pytest.raises(ValueError):
        exchange_index(A2, [1], 2)


def test_translation_words():
    assert str(translation_word(D4, 2)) == "s0 s2 s3 s4 s2 s1 s2 s3 s4 s2"
    assert [x if isinstance(x, int) else x.name for x in translation_word(A3, 1).letters] == \
        ["rho^-1", 1] * 3
    # the A2 word rho s2 s1 is the same element as (rho^-1 s1)^2
    assert action_of(A2, WeylWord.parse(A2, "rho s2 s1")) == action_of(A2, translation_word(A2, 1))


@pytest.mark.parametrize("cartan", [A1, A2, A3, D4], ids=lambda c: c.name)
def test_translation_property(cartan):
    for i in range(1, cartan.rank):
        w = translation_word(cartan, i)
        assert is_reduced(cartan, w)
        assert has_translation_property(cartan, w, i)
        others = [j for j in range(1, cartan.rank) if j != i]
        assert all(not has_translation_property(cartan, w, j) for j in others)


def test_order_prefix_examples():
    A1case, A2case = get_case("A1"), get_case("A2")
    assert [root_label(A1, r) for r, _ in order_prefix(A1case, 3)] == ["d-a1", "2d-a1", "3d-a1"]
    assert [root_label(A2, r) for r, _ in order_prefix(A2case, 2)] == ["d-a1-a2", "d-a2"]
    assert order_prefix(A1case, 0) == []
    r, where = order_prefix(A2case, 3)[2]
    assert where == (0, 3)


def test_root_label():
    assert root_label(D4, (1, 0, 1, 1, 1)) == "d-a1-a2"
    assert root_label(A2, (0, 1, 0)) == "a1"
    assert root_label(A2, (1, 1, 1)) == "d"


def test_window_convex_detects_violation():
    assert window_convex([(1, 0), (1, 1), (0, 1)])
    assert not window_convex([(1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_rows_are_convex_and_reduced(case_id):
    case = get_case(case_id)
    for side, params in (("-", case.minus), ("+", case.plus)):
        for r in range(params.n):
            assert window_convex([tuple(x) for x in row_roots(case, side, r, 30)])
            w = row_word(case, side, r, 20)
            assert len(w.reflections()) == 20
            assert is_reduced(case.cartan, w)


def test_unknown_case():
    with pytest.raises(ValueError):
        get_case("E8")
