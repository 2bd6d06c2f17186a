import pytest

from tricoalg.coalgebra import LEFT, RIGHT
from tricoalg.errors import StructureError
from tricoalg.examples import cyclic_monomial, example_4_2_spec, example_4_6_instance, loop_spec
from tricoalg.quiver import MonomialSpec, Quiver
from tricoalg.series import CompleteCycleAlgebra, FgPresentation, PowerSeries, SeriesPresentation
from tricoalg.splitting import (
    NO,
    UNDECIDABLE,
    YES,
    FiniteP,
    RegularP,
    TriangularModule,
    Undecided,
    condition_ab,
    decide_left_splitting,
    decide_right_splitting,
    decide_splitting,
    default_bound,
    nilpotency_bound,
    pieces,
    rat_oracle,
    rat_P,
    rat_triangular,
    split_presentation,
    verify_witness,
)

z = PowerSeries.z


def two_loops() -> MonomialSpec:
    return MonomialSpec(Quiver(["u"], [("s", "u", "u"), ("t", "u", "u")]), [("s",), ("t",)])


def test_example_left_yes_with_certificate():
    d = decide_left_splitting(example_4_2_spec())
    assert d.verdict == YES and bool(d)
    cert = d.as_dict()["certificate"]
    assert cert["D_vertices"] == ["u"] and cert["E_vertices"] == ["w"] and cert["M_paths"] == ["x"]
    assert all(cert["checks"].values())


def test_example_right_no_with_witness():
    d = decide_right_splitting(example_4_2_spec())
    assert d.verdict == NO and not d
    assert d.ab.witnesses == ["x"]
    assert d.witness["vertex"] == "u"
    assert d.witness["paths"][:3] == ["u", "t", "t.t"]
    assert d.witness["dims"] == {4: 5, 6: 7, 8: 9}


def test_witness_dimensions_grow():
    dims = verify_witness(example_4_2_spec(), "u", RIGHT, truncations=(2, 3, 10))
    assert dims == {2: 3, 3: 4, 10: 11}


def test_bogus_witness_rejected():
    # the left hull at u is uniserial, so walks ending at u fill it
    with pytest.raises(StructureError):
        verify_witness(example_4_2_spec(), "u", LEFT)


def test_pieces():
    D, E, M = pieces(example_4_6_instance())
    assert D.quiver.vertices == ["v1", "v2"] and E.quiver.vertices == ["w"]
    assert [p.label for p in M] == ["c"]


def test_certificate_reassembles():
    s = example_4_6_instance()
    cert = decide_left_splitting(s).certificate
    assert all(cert.reassemble(s, d) for d in (1, 2, 5))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_cycles_split_both_sides(n):
    s = cyclic_monomial(n)
    assert decide_splitting(s, LEFT).verdict == YES
    assert decide_splitting(s, RIGHT).verdict == YES


def test_shared_vertex_is_no():
    d = decide_left_splitting(two_loops())
    assert d.verdict == NO
    assert d.ab.witnesses == ["t"]


def test_invalid_spec_is_undecidable():
    Q = Quiver(["u", "w", "y"], [("x", "u", "w"), ("y1", "w", "y")])
    d = decide_left_splitting(MonomialSpec(Q, [], [("x", "y1")]))
    assert d.verdict == UNDECIDABLE
    assert "subpath" in d.reason


def test_condition_ab_on_examples():
    assert condition_ab(example_4_6_instance()).holds
    assert condition_ab(loop_spec()).holds
    assert not condition_ab(two_loops()).b


def test_finite_spec_splits():
    Q = Quiver(["u", "w"], [("x", "u", "w")])
    assert decide_left_splitting(MonomialSpec(Q, [], ["x"])).verdict == YES


# -- rational parts ---------------------------------------------------------


def test_rat_p_finite_m_is_everything():
    H = TriangularModule(SeriesPresentation(1, []), 2, FiniteP([[[z(0)], [z(1)]]]))
    assert rat_P(H).dim == 2


def test_rat_p_of_free_action_is_zero():
    # P = A acting on Y = K by p . y = y p inside X = A
    H = TriangularModule(SeriesPresentation(1, []), 1, RegularP([[PowerSeries([1])]]))
    assert rat_P(H).dim == 0
    assert rat_oracle(H).y_part.dim == 0


def test_rat_of_torsion_module():
    H = TriangularModule(SeriesPresentation(1, [[z(3)]]), 1, RegularP([[PowerSeries([1])]]))
    f = rat_triangular(H)
    assert f.torsion == [3] and f.window == 4
    assert f.y_part.dim == 1
    o = rat_oracle(H, window=4)
    assert f.x_part == o.x_part and f.y_part == o.y_part


def test_rat_mixed_y():
    # X = K[[z]]/(z^2) (+) K[[z]]; y0 maps to the torsion part, y1 to the free part
    X = SeriesPresentation(2, [[z(2), PowerSeries([])]])
    phi = [[PowerSeries([1]), PowerSeries([])], [PowerSeries([]), PowerSeries([1])]]
    H = TriangularModule(X, 2, RegularP(phi))
    f, o = rat_triangular(H), rat_oracle(H, window=3)
    assert f.y_part.dim == 1 and {0: 1} in f.y_part
    assert f.x_part == o.x_part and f.y_part == o.y_part


def test_nilpotency_bound():
    assert nilpotency_bound(SeriesPresentation(1, [[z(3)]]), 20) == 4
    assert nilpotency_bound(SeriesPresentation(2, [[z(2), 0]]), 20) == 3
    res = nilpotency_bound(SeriesPresentation(1, [[z(30)]]), 5)
    assert isinstance(res, Undecided) and not res


def test_oracle_undecided_with_small_bound():
    H = TriangularModule(SeriesPresentation(1, [[z(9)]]), 0)
    assert isinstance(rat_oracle(H, bound=3), Undecided)
    assert default_bound(H) == 4 * (0 + 1 + 1)


def test_rat_over_cycle_algebra():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    X = FgPresentation(A, ["v0", "v1"], [{0: {"a0.a1": 1}}])
    H = TriangularModule(X, 0)
    f = rat_triangular(H)
    assert f.torsion == [1, 1] and f.free_rank == 2
    o = rat_oracle(H, window=f.window)
    assert f.x_part == o.x_part


def test_split_presentation_series():
    w = split_presentation(SeriesPresentation(2, [[z(2), z(1)]]))
    assert w.verified
    assert w.as_dict()["torsion_by_vertex"] == {"o": [1]}


def test_split_presentation_cycle():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    w = split_presentation(FgPresentation(A, ["v0", "v1"], [{0: {"a0.a1": 1}}]))
    d = w.as_dict()
    assert d["verified"] and d["complement_generators"] == ["v1"]
    assert d["torsion_by_vertex"] == {"v0": [1], "v1": [1]}
