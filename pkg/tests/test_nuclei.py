import pytest
from hypothesis import given, strategies as st

from models.frame_model import BaseSet, chain_frame, default_base, powerset_frame
from models.nucleus_model import (ClosureMap, assembly, closed_nucleus, constant_top,
                                  enumerate_nuclei, identity_map, is_nucleus, nucleus_join,
                                  nucleus_violation, open_nucleus, prenucleus_closure,
                                  quotient, verify_quot)
from models.tree_model import cantor, der_map
from utils.bitset import mask_of
from utils.errors import NotInflationary, NotNonArch, NotPrenucleus, TooLarge

FRAMES = [powerset_frame(n) for n in range(4)] + [chain_frame(n) for n in range(1, 6)]


@pytest.mark.parametrize('n', range(4))
def test_boolean_frame_has_one_nucleus_per_element(n):
    assert len(enumerate_nuclei(powerset_frame(n))) == 2 ** n


@pytest.mark.parametrize('n', range(1, 6))
def test_chain_has_power_of_two_nuclei(n):
    assert len(enumerate_nuclei(chain_frame(n))) == 2 ** (n - 1)


def test_nuclei_on_three_chain(chain3):
    tables = [j.table for j in enumerate_nuclei(chain3)]
    assert tables == sorted(tables)
    assert (0, 1, 2) in tables and (2, 2, 2) in tables and (1, 1, 2) in tables
    assert (1, 2, 2) not in tables


def test_enumeration_respects_bound(boolean3):
    with pytest.raises(TooLarge):
        enumerate_nuclei(boolean3, bound=4)


@given(st.sampled_from(FRAMES), st.data())
def test_closed_and_open_maps_are_nuclei(f, data):
    u = data.draw(st.integers(min_value=0, max_value=f.size - 1))
    assert is_nucleus(closed_nucleus(f, u)) == (True, None)
    assert is_nucleus(open_nucleus(f, u)) == (True, None)


@given(st.sampled_from(FRAMES), st.data())
def test_join_of_nuclei_is_a_nucleus(f, data):
    nuclei = enumerate_nuclei(f)
    j = data.draw(st.sampled_from(nuclei))
    k = data.draw(st.sampled_from(nuclei))
    joined = nucleus_join(f, j, k)
    assert nucleus_violation(f, joined) is None
    assert all(f.leq(j(a), joined[a]) and f.leq(k(a), joined[a]) for a in range(f.size))


@given(st.sampled_from(FRAMES), st.data())
def test_closing_a_nucleus_changes_nothing(f, data):
    j = data.draw(st.sampled_from(enumerate_nuclei(f)))
    closed, iterations = prenucleus_closure(j)
    assert closed.table == j.table
    assert iterations <= 1


def test_closure_map_rejects_deflation(chain3):
    with pytest.raises(NotInflationary):
        ClosureMap(chain3, (0, 0, 2))


def test_derivative_is_a_prenucleus_but_not_a_nucleus():
    der = der_map(cantor(2))
    holds, broken = is_nucleus(der)
    assert not holds
    assert broken[0] == 'idempotent'
    closed, iterations = prenucleus_closure(der)
    assert iterations == 3
    assert closed.table == constant_top(der.frame).table


def test_identity_closes_immediately(chain3):
    closed, iterations = prenucleus_closure(identity_map(chain3))
    assert iterations == 0
    assert closed.table == (0, 1, 2)


def test_meet_breaking_map_is_not_a_prenucleus():
    f = powerset_frame(2)
    c = ClosureMap(f, (0, 3, 3, 3))
    with pytest.raises(NotPrenucleus):
        prenucleus_closure(c)


def test_quotient_by_closed_nucleus(chain3):
    c1 = chain3.index('c1')
    q = quotient(chain3, closed_nucleus(chain3, c1))
    assert chain3.label_set(q.fixed) == ['c1', '1']
    assert q.frame.size == 2
    assert q.frame.label(q.star[chain3.bottom]) == 'c1'


def test_assembly_is_a_frame_of_nuclei(chain3):
    frame_of_nuclei = assembly(chain3)
    assert frame_of_nuclei.frame.size == 4
    identity = frame_of_nuclei.nuclei.index(identity_map(chain3))
    top = frame_of_nuclei.nuclei.index(constant_top(chain3))
    assert frame_of_nuclei.frame.bottom == identity
    assert frame_of_nuclei.frame.top == top


def test_quotients_keep_non_archimedean_base(chain3, boolean3):
    assert verify_quot(chain3, default_base(chain3))['passed']
    base = BaseSet(boolean3, mask_of([1, 2, 4, 3]))
    result = verify_quot(boolean3, base)
    assert result['passed']
    assert len(result['nuclei']) == 8


def test_quotient_verifier_requires_non_archimedean_base(boolean3):
    base = BaseSet(boolean3, mask_of([1, 2, 4, 3, 6]))
    with pytest.raises(NotNonArch):
        verify_quot(boolean3, base)
