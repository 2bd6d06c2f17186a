import pytest

from tricoalg.coalgebra import (
    LEFT,
    RIGHT,
    Comodule,
    FiniteCoalgebra,
    coradical,
    dual_algebra,
    embed_in_power,
    grouplikes,
    hom_comodules,
    injectives,
    is_injective,
    is_pointed,
    is_serial,
    isomorphic_by_names,
    loewy,
    primitive_idempotents,
    socle,
    verify_coalgebra,
)
from tricoalg.errors import StructureError, UnsupportedConfiguration
from tricoalg.examples import divided_power, example_4_2, example_sec2
from tricoalg.exactla import GF


def broken() -> FiniteCoalgebra:
    # delta(x) = x (x) x + g (x) x is not coassociative: x (x) g (x) x is missing
    return FiniteCoalgebra.from_names(
        ["g", "x"], {"g": [("g", "g", 1)], "x": [("x", "x", 1), ("g", "x", 1)]}, {"g": 1}
    )


@pytest.mark.parametrize("N", [0, 1, 4, 7])
def test_divided_power_axioms(N):
    C = divided_power(N)
    assert verify_coalgebra(C).ok
    assert C.dim == N + 1


def test_broken_coalgebra_has_witness():
    rep = verify_coalgebra(broken())
    assert not rep.coassociative
    assert rep.witness == "x"


def test_bad_counit_detected():
    C = FiniteCoalgebra.from_names(["g"], {"g": [("g", "g", 1)]}, {"g": 2})
    rep = verify_coalgebra(C)
    assert rep.coassociative and not rep.counital


def test_from_names_rejects_unknown_name():
    with pytest.raises((StructureError, KeyError, ValueError)):
        FiniteCoalgebra.from_names(["g"], {"g": [("g", "h", 1)]}, {"g": 1})


def test_divided_power_filtration():
    C = divided_power(5)
    assert coradical(C).dim == 1
    assert grouplikes(C) == [C.vector("c0")]
    layers = loewy(C.regular(LEFT))
    assert [L.dim for L in layers] == [1, 2, 3, 4, 5, 6]
    assert socle(C.regular(RIGHT)).dim == 1


def test_dual_of_divided_power_is_truncated_polynomials():
    C = divided_power(3)
    A = dual_algebra(C)
    assert A.verify()
    z = {1: 1}
    z2 = A.product(z, z)
    assert z2 == {2: 1}
    assert A.product(z2, A.product(z, z)) == {}


def test_divided_power_serial_and_injective():
    C = divided_power(4)
    ok, cert = is_serial(C, LEFT)
    assert ok and cert == {"c0": [1] * 5}
    dec = injectives(C, RIGHT)
    assert len(dec.summands) == 1 and dec.reconstitutes(C)
    assert is_injective(C.regular(LEFT))


def test_star_is_pointed_and_not_left_serial():
    C = example_sec2(3)
    assert is_pointed(C)
    assert len(primitive_idempotents(C)) == 4
    assert not is_serial(C, LEFT)[0]
    assert is_serial(C, RIGHT)[0]


def test_example_injectives_both_sides():
    C = example_4_2(3).coalgebra
    right = injectives(C, RIGHT)
    left = injectives(C, LEFT)
    assert right.reconstitutes(C) and left.reconstitutes(C)
    assert sorted(s.dim for s in right.summands) == [1, 5]
    assert sorted(s.dim for s in left.summands) == [2, 4]


def test_regular_comodule_embeds_once():
    C = example_4_2(2).coalgebra
    emb = embed_in_power(C.regular(RIGHT))
    assert emb.is_injective()
    assert emb.n == 1


def test_hom_from_simple():
    C = divided_power(3)
    S = Comodule(C, [{(0, 0): 1}], LEFT)
    assert S.verify().ok
    homs = hom_comodules(S, C.regular(LEFT))
    assert len(homs) == 1


def test_isomorphic_by_names_detects_relabelling():
    C = divided_power(2)
    D = FiniteCoalgebra.from_names(
        ["d0", "d1", "d2"],
        {"d0": [("d0", "d0", 1)], "d1": [("d0", "d1", 1), ("d1", "d0", 1)],
         "d2": [("d0", "d2", 1), ("d1", "d1", 1), ("d2", "d0", 1)]},
        {"d0": 1},
    )
    assert isomorphic_by_names(C, D, {"c0": "d0", "c1": "d1", "c2": "d2"})
    assert not isomorphic_by_names(C, D, {"c0": "d0", "c1": "d2", "c2": "d1"})


def _primitive_over_gf3(grading=None):
    return FiniteCoalgebra.from_names(
        ["g", "x"], {"g": [("g", "g", 1)], "x": [("g", "x", 1), ("x", "g", 1)]}, {"g": 1}, GF(3), grading
    )


def test_finite_field_coalgebra():
    C = _primitive_over_gf3([0, 1])
    assert C.field == GF(3)
    assert verify_coalgebra(C).ok
    assert coradical(C).dim == 1


def test_ungraded_finite_field_coradical_refused():
    with pytest.raises(UnsupportedConfiguration):
        coradical(_primitive_over_gf3())
