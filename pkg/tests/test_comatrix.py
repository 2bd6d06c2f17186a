import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import matrix_coalgebra, perturb_context  # noqa: E402

from tricoalg.coalgebra import FiniteCoalgebra, dual_algebra, isomorphic_by_names, verify_coalgebra  # noqa: E402
from tricoalg.comatrix import (  # noqa: E402
    Bicomodule,
    MoritaTakeuchiContext,
    Refusal,
    RegularCopies,
    TriangularData,
    block_matrix_ring,
    check_context,
    generalized_comatrix,
    idempotent_decompose,
    is_left_artinian_triangular,
    same_structure_constants,
    semitrivial_extension,
    triangular_comatrix,
    triangular_decompose,
)
from tricoalg.errors import StructureError  # noqa: E402
from tricoalg.examples import artinian_asymmetry, divided_power, example_4_2, loop_spec  # noqa: E402
from tricoalg.exactla import QQ  # noqa: E402


def point(name: str) -> FiniteCoalgebra:
    return FiniteCoalgebra.from_names([name], {name: [(name, name, 1)]}, {name: 1}, QQ, [0])


def matrix_context() -> MoritaTakeuchiContext:
    """``M_2^c`` split as ``D = E = K``, ``X = K{x}``, ``Y = K{y}``."""
    D, E = point("a"), point("b")
    X = Bicomodule.from_names(D, E, ["x"], left={"x": [("a", "x", 1)]}, right={"x": [("x", "b", 1)]})
    Y = Bicomodule.from_names(E, D, ["y"], left={"y": [("b", "y", 1)]}, right={"y": [("y", "a", 1)]})
    return MoritaTakeuchiContext(D, E, X, Y, [{(0, 0): 1}], [{(0, 0): 1}])


def test_matrix_context_gives_matrix_coalgebra():
    ctx = matrix_context()
    assert check_context(ctx).ok
    C = generalized_comatrix(ctx)
    assert verify_coalgebra(C).ok
    M2 = matrix_coalgebra(2)
    assert isomorphic_by_names(C, M2, {"a": "e00", "x": "e01", "y": "e10", "b": "e11"})


def test_bad_phi_is_named():
    ctx = matrix_context()
    bad = MoritaTakeuchiContext(ctx.D, ctx.E, ctx.X, ctx.Y, [{(0, 0): 2}], ctx.psi)
    rep = check_context(bad)
    assert not rep.ok and rep.identity
    assert not verify_coalgebra(generalized_comatrix(bad, check=False)).ok
    with pytest.raises(StructureError):
        generalized_comatrix(bad)


def test_bicomodule_verify_catches_noncommuting_coactions():
    D = divided_power(1)
    E = point("b")
    bad = Bicomodule.from_names(D, E, ["x"], left={"x": [("c1", "x", 1)]}, right={"x": [("x", "b", 1)]})
    assert not bad.verify().ok


def test_triangular_example_is_a_coalgebra():
    ex = example_4_2(3)
    C = ex.coalgebra
    assert verify_coalgebra(C).ok
    assert C.dim == 6


@pytest.mark.parametrize("seed", range(5))
def test_dual_matches_block_ring_on_perturbed_valid_context(seed):
    rng = random.Random(seed)
    ctx = matrix_context()
    assert same_structure_constants(dual_algebra(generalized_comatrix(ctx)), block_matrix_ring(ctx))
    # the equivalence with coassociativity survives random edits
    p = perturb_context(rng, ctx)
    assert check_context(p).ok == verify_coalgebra(generalized_comatrix(p, check=False)).ok


def test_idempotent_decompose_matrix():
    C = matrix_coalgebra(2)
    blocks = idempotent_decompose(C, {C.index("e00"): 1})
    assert blocks.verified
    ctx = blocks.context
    assert (ctx.D.dim, ctx.X.dim, ctx.Y.dim, ctx.E.dim) == (1, 1, 1, 1)


def test_non_idempotent_rejected():
    C = matrix_coalgebra(2)
    with pytest.raises(StructureError):
        idempotent_decompose(C, {C.index("e00"): 2})


def test_triangular_decompose_example():
    C = example_4_2(2).coalgebra
    # left summands: the divided powers, and x together with d
    X = [C.vector(n) for n in ("c0", "c1", "c2")]
    Y = [C.vector("x"), C.vector("d")]
    dec = triangular_decompose(C, X, Y)
    assert not isinstance(dec, Refusal)
    assert dec.data.D.dim == 3 and dec.data.E.dim == 1 and dec.data.M.dim == 1
    assert verify_coalgebra(triangular_comatrix(dec.data)).ok


def test_triangular_decompose_refuses_when_hom_nonzero():
    C = divided_power(1)
    # X = span{c0} and Y = span{c1} is not even a decomposition into subcomodules
    with pytest.raises(StructureError):
        triangular_decompose(C, [C.vector("c0")], [C.vector("c1")])
    M2 = matrix_coalgebra(2)
    # the two columns of M_2^c are isomorphic simple comodules
    res = triangular_decompose(M2, [M2.vector("e00"), M2.vector("e10")], [M2.vector("e01"), M2.vector("e11")])
    assert isinstance(res, Refusal)


def test_semitrivial_extension():
    D = divided_power(1)
    M = Bicomodule.from_names(D, D, ["m"], left={"m": [("c0", "m", 1)]}, right={"m": [("m", "c0", 1)]})
    S, pi, ker = semitrivial_extension(D, M)
    assert verify_coalgebra(S).ok
    assert S.dim == 3 and ker.dim == 2


def test_artinian_verdicts():
    v = is_left_artinian_triangular(artinian_asymmetry())
    assert (v.left, v.right) == (True, False)
    v = is_left_artinian_triangular(artinian_asymmetry(finite_m=True))
    assert (v.left, v.right) == (True, True)
    # regular M over an infinite E: right side is out of reach
    v = is_left_artinian_triangular(TriangularData(loop_spec(), loop_spec("w", "s"), RegularCopies(1)))
    assert v.left is True and v.right is None and not v.decided
