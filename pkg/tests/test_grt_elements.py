from fractions import Fraction

import pytest

from jdalg.grt_elements import AB, c_generator, derivation, ihara_bracket, sigma_element
from jdalg.lie import LieElt, lie_bracket, lie_normalize, multidegree_project
from jdalg.scalars import rat


def tree(s):
    # tiny helper: "A" / ("B",) letters; nested lists as brackets
    if isinstance(s, str):
        return ("letter", s)
    a, b = s
    return ("bracket", tree(a), tree(b))


def test_c11_is_AB():
    assert c_generator(1, 1) == lie_normalize(tree(["A", "B"]), AB)


def test_c21_is_B_AB():
    assert c_generator(2, 1) == lie_normalize(tree(["B", ["A", "B"]]), AB)


def test_c_generator_rejects_bad_args():
    with pytest.raises(ValueError):
        c_generator(0, 1)
    with pytest.raises(ValueError):
        c_generator(1, -2)


def test_c_kl_multidegree():
    # A-degree l, B-degree k
    for k, l in [(1, 4), (3, 2), (2, 2), (4, 1)]:
        x = c_generator(k, l)
        assert multidegree_project(x, {"A": l, "B": k}) == x
        assert x.max_degree() == k + l


def test_sigma3_equals_AplusB_bracket_AB():
    s3 = sigma_element(3)
    want = lie_normalize(
        ("bracket", ("sum", [("letter", "A"), ("letter", "B")]),
         ("bracket", ("letter", "A"), ("letter", "B"))), AB)
    assert s3 == want


def test_sigma_degrees():
    assert sigma_element(3).degrees() == [3]
    assert sigma_element(5).degrees() == [5]
    assert sigma_element(7).degrees() == [7]
    assert sigma_element("bracket35").degrees() == [8]


def test_sigma_unsupported():
    with pytest.raises(ValueError):
        sigma_element(9)


def test_ihara_antisymmetry():
    s3, s5 = sigma_element(3), sigma_element(5)
    assert ihara_bracket(s3, s3).is_zero()
    assert (ihara_bracket(s3, s5) + ihara_bracket(s5, s3)).is_zero()


def test_ihara_degenerate_letters():
    # {A, B} = D_A(B) - D_B(A) - [A,B] = [A,B] - 0 - [A,B] = 0
    a = LieElt.letter(AB, "A")
    b = LieElt.letter(AB, "B")
    assert derivation(a, b) == lie_bracket(a, b)
    assert derivation(b, a).is_zero()
    assert ihara_bracket(a, b).is_zero()


def test_grt1_antisymmetry_residual_for_letter():
    # psi = A: psi(B,A) + psi(A,B) = B + A, nonzero
    from jdalg.lie import lie_substitute
    a = LieElt.letter(AB, "A")
    b = LieElt.letter(AB, "B")
    res = lie_substitute(a, {"A": b, "B": a}) + a
    assert res == a + b
    assert not res.is_zero()


def test_bracket35_display_matches_ihara():
    # the printed degree-8 combination equals the computed Ihara bracket
    assert sigma_element("bracket35") == ihara_bracket(sigma_element(3), sigma_element(5))
