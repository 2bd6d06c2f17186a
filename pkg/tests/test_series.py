import pytest

from tricoalg.errors import InsufficientPrecision, StructureError
from tricoalg.examples import cyclic_monomial
from tricoalg.series import (
    INF,
    CompleteCycleAlgebra,
    FgPresentation,
    PowerSeries,
    SeriesPresentation,
    arrow_action,
    determinantal_valuations,
    invariant_factors_by_minors,
    rat_part_fg,
    restrict_scalars,
    s_matmul,
    snf_dvr,
)

z = PowerSeries.z


def mat(rows):
    return [[PowerSeries.coerce(x) for x in r] for r in rows]


def test_arithmetic_and_valuation():
    a = PowerSeries([0, 0, 3, 1])
    assert a.valuation() == 2
    assert (a * z(1)).valuation() == 3
    assert (a - a).coeffs == ()
    assert PowerSeries([1, 2]) * PowerSeries([1, -2]) == PowerSeries([1, 0, -4])


def test_truncated_precision_propagates():
    a = PowerSeries([1, 1], prec=3)
    b = a * PowerSeries([1, 1, 1, 1, 1])
    assert b.prec == 3
    assert b.coeffs == (1, 2, 2)


def test_invert_unit():
    inv = PowerSeries([1, -1]).invert_unit(5)
    assert inv.coeffs == (1, 1, 1, 1, 1) and inv.prec == 5
    with pytest.raises((ValueError, ZeroDivisionError, StructureError)):
        z(1).invert_unit(4)


@pytest.mark.parametrize(
    "rows, torsion, free",
    [
        ([[z(2), 0], [0, z(3)]], [2, 3], 0),
        ([[z(1), z(1)]], [1], 1),
        ([[PowerSeries([1, 1])]], [], 0),
        ([[z(1), z(2)], [z(2), z(1)]], [1, 1], 0),
    ],
)
def test_rat_part_small_cases(rows, torsion, free):
    A = mat(rows)
    r = rat_part_fg(SeriesPresentation(len(A[0]), A))
    assert r.verified
    assert r.torsion == torsion and r.free_rank == free
    assert [v for v in invariant_factors_by_minors(A) if v is not INF and v > 0] == torsion


def test_determinantal_valuations():
    A = mat([[z(1), z(2)], [z(2), z(1)]])
    # gcd of entries z, determinant z^2 (1 - z^2)
    assert determinantal_valuations(A) == [1, 2]


def test_snf_diagonalises():
    A = mat([[z(1), PowerSeries([0, 1, 1])], [z(2), z(3)]])
    res = snf_dvr(A, 16)
    D = s_matmul(s_matmul(res.U, A), res.V)
    for i in range(2):
        for j in range(2):
            if i != j:
                assert D[i][j].is_zero_to_watermark()
    assert res.valuations == [1, 2]


def test_precision_refusal():
    with pytest.raises(InsufficientPrecision):
        rat_part_fg(SeriesPresentation(1, [[z(14)]]), 16)
    assert rat_part_fg(SeriesPresentation(1, [[z(14)]]), 24).torsion == [14]


def test_cycle_algebra_walks():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    assert A.vertices == ["v0", "v1"]
    assert A.walk("v0", 3).label == "a0.a1.a0"
    assert A.walk_ending("v0", 2).label == "a0.a1"
    assert A.cycle_length("v1") == 2


def test_cycle_algebra_needs_cycles_only():
    from tricoalg.examples import example_4_2_spec

    with pytest.raises(StructureError):
        CompleteCycleAlgebra(example_4_2_spec())


@pytest.mark.parametrize("length, torsion", [(1, [1]), (2, [1, 1]), (3, [1, 2]), (4, [2, 2])])
def test_cyclic_quotient_over_two_cycle(length, torsion):
    # A e_v0 / A p with p of the given length: dimension = length
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    p = FgPresentation(A, ["v0"], [{0: {A.walk_ending("v0", length).label: 1}}])
    r = rat_part_fg(p)
    assert r.verified and sorted(r.torsion) == torsion and r.free_rank == 0
    assert sum(r.torsion) == length


def test_restriction_records_vertices():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    sp = restrict_scalars(FgPresentation(A, ["v0"], [{0: {"a0.a1": 1}}]))
    assert sp.ngens == 2
    assert sp.col_vertices == ["v0", "v1"] and sp.row_vertices == ["v0", "v1"]


def test_arrow_actions_compose_to_z():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    p = FgPresentation(A, ["v0"], [])
    a, b = arrow_action(p, "a0"), arrow_action(p, "a1")
    assert s_matmul(a, b) == mat([[z(1), 0], [0, 0]])
    assert s_matmul(b, a) == mat([[0, 0], [0, z(1)]])


def test_relation_path_must_end_at_generator():
    A = CompleteCycleAlgebra(cyclic_monomial(2))
    with pytest.raises(StructureError):
        FgPresentation(A, ["v0"], [{0: {"a0": 1}}])


def test_as_dict_is_plain():
    r = rat_part_fg(SeriesPresentation(2, mat([[z(2), 0]])))
    d = r.as_dict()
    assert d["torsion"] == [2] and d["free_rank"] == 1 and d["rat_dimension"] == 2
    assert all(isinstance(k, str) for k in d)
