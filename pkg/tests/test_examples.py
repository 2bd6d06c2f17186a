import pytest

from tricoalg.coalgebra import isomorphic_by_names, verify_coalgebra
from tricoalg.examples import (
    EXAMPLE_LABELS,
    divided_power,
    example_4_2,
    example_sec2,
    ledger,
    loop_bijection,
    loop_spec,
    sec2_hom_growth,
    sec2_quotient_embeddings,
    sec2_subcomodules,
)
from tricoalg.quiver import instantiate

LEDGER = ledger()


@pytest.mark.parametrize("label", sorted(LEDGER))
def test_ledger_claims(label):
    results = LEDGER[label].run()
    assert results
    failed = [desc for desc, ok in results if not ok]
    assert not failed, failed


def test_every_label_has_a_ledger_entry():
    for label in EXAMPLE_LABELS:
        assert any(k == label or k.startswith(label) for k in LEDGER)


@pytest.mark.parametrize("N", [0, 1, 3, 8])
def test_divided_power_is_loop_truncation(N):
    assert isomorphic_by_names(divided_power(N), instantiate(loop_spec(), N), loop_bijection(N))


def test_example_bijection_matches_spec():
    ex = example_4_2(5)
    assert isomorphic_by_names(ex.coalgebra, instantiate(ex.spec, 5), ex.bijection)


def test_star_counts():
    C = example_sec2(4)
    assert C.dim == 9 and verify_coalgebra(C).ok
    with pytest.raises(ValueError):
        example_sec2(0)


def test_star_subcomodules_are_deterministic():
    a = sec2_subcomodules(5, seed=3)
    b = sec2_subcomodules(5, seed=3)
    assert len(a) >= 10 and a == b


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_star_hom_growth(N):
    assert sec2_hom_growth(N, kill="socle") == N
    # killing only the b_n leaves a in the quotient: one more map
    assert sec2_hom_growth(N, kill="b") == N + 1
    assert max(sec2_quotient_embeddings(N)) <= 2
