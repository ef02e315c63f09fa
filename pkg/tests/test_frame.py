import pytest
from hypothesis import given, strategies as st

from models.frame_model import (BaseSet, FiniteFrame, alexandroff_frame, chain_frame,
                                check_point_tree, completely_below, frame_morphism_violation,
                                heyting, is_completely_regular, is_complemented, is_fit,
                                is_regular, is_zero_dimensional, negation, points,
                                points_by_meet_irreducibles, points_by_morphisms,
                                points_by_prime_filters, powerset_frame, rather_below,
                                right_adjoint, separation_report, spatial_reflection)
from models.nonarch_model import build_tree_base
from models.tree_model import branch_space, cantor, rooted_tree_shapes
from utils.bitset import mask_of
from utils.corpus import singleton_base
from utils.errors import NotALattice, NotDistributive
from utils.loaders import frame_from_json, poset_from_json

FRAMES = ([powerset_frame(n) for n in range(4)]
          + [chain_frame(n) for n in range(1, 6)]
          + [alexandroff_frame(t.as_poset()) for n in range(1, 5) for t in rooted_tree_shapes(n)])

frames = st.sampled_from(FRAMES)


def elements(f):
    return st.integers(min_value=0, max_value=f.size - 1)


@given(st.data())
def test_meet_and_join_are_lattice_operations(data):
    f = data.draw(frames)
    a, b, c = (data.draw(elements(f)) for _ in range(3))
    assert f.meet(a, b) == f.meet(b, a)
    assert f.join(a, f.join(b, c)) == f.join(f.join(a, b), c)
    assert f.meet(a, f.join(a, b)) == a
    assert f.leq(f.meet(a, b), a) and f.leq(a, f.join(a, b))


@given(st.data())
def test_meets_distribute_over_joins(data):
    f = data.draw(frames)
    a, b, c = (data.draw(elements(f)) for _ in range(3))
    assert f.meet(a, f.join(b, c)) == f.join(f.meet(a, b), f.meet(a, c))


@given(st.data())
def test_heyting_adjunction(data):
    f = data.draw(frames)
    x, a, b = (data.draw(elements(f)) for _ in range(3))
    assert f.leq(f.meet(x, a), b) == f.leq(x, heyting(f, a, b))


@given(st.data())
def test_negation_laws(data):
    f = data.draw(frames)
    a = data.draw(elements(f))
    assert f.meet(a, negation(f, a)) == f.bottom
    assert f.leq(a, negation(f, negation(f, a)))
    assert negation(f, negation(f, negation(f, a))) == negation(f, a)


@given(st.data())
def test_rather_below_implies_order(data):
    f = data.draw(frames)
    a, b = data.draw(elements(f)), data.draw(elements(f))
    if rather_below(f, a, b):
        assert f.leq(a, b)
    if completely_below(f, a, b):
        assert rather_below(f, a, b)


def test_heyting_examples(boolean3, chain3):
    assert heyting(boolean3, boolean3.top, 5) == 5
    assert heyting(chain3, chain3.index('c1'), chain3.bottom) == chain3.bottom
    assert boolean3.label(heyting(boolean3, boolean3.index('{1,2}'),
                                  boolean3.index('{2,3}'))) == '{2,3}'


def test_negation_examples(boolean3, chain3):
    assert negation(boolean3, boolean3.bottom) == boolean3.top
    assert negation(boolean3, boolean3.top) == boolean3.bottom
    assert boolean3.label(negation(boolean3, boolean3.index('{1}'))) == '{2,3}'
    assert negation(chain3, chain3.index('c1')) == chain3.bottom


def test_complemented_elements(boolean3, chain3):
    assert all(is_complemented(boolean3, a)[0] for a in range(boolean3.size))
    assert is_complemented(chain3, chain3.bottom) == (True, chain3.top)
    assert is_complemented(chain3, chain3.index('c1')) == (False, None)


def test_zero_dimensional(boolean3, chain3):
    assert is_zero_dimensional(boolean3)[0]
    holds, witness = is_zero_dimensional(chain3)
    assert not holds
    assert chain3.label_set(witness) == ['0', '1']
    for tree in rooted_tree_shapes(5):
        assert is_zero_dimensional(branch_space(tree).opens_frame)[0]


def test_separation_examples(boolean3, chain3):
    assert is_regular(boolean3) and is_completely_regular(boolean3) and is_fit(boolean3)
    assert all(completely_below(boolean3, a, b) == boolean3.leq(a, b)
               for a in range(boolean3.size) for b in range(boolean3.size))
    c1 = chain3.index('c1')
    assert not rather_below(chain3, c1, c1)
    assert not is_regular(chain3)


def test_separation_report_implications(chain3):
    report = separation_report(chain3)
    assert report['zero_dimensional'] is False
    assert report['regular_failure'] == 'c1'
    assert all(report['implications'].values())


@pytest.mark.parametrize('f, expected', [(powerset_frame(3), 3), (chain_frame(3), 2),
                                         (powerset_frame(0), 0)])
def test_point_counts(f, expected):
    assert len(points(f)) == expected


def test_three_point_descriptions_agree():
    for f in FRAMES:
        assert points_by_morphisms(f) == points_by_prime_filters(f) == points_by_meet_irreducibles(f)


def test_alexandroff_frame_has_one_point_per_element():
    poset = cantor(1).as_poset()
    assert len(points(alexandroff_frame(poset))) == poset.size


@pytest.mark.parametrize('f', [powerset_frame(2), chain_frame(3), powerset_frame(0)])
def test_spatial_reflection_is_injective(f):
    assert spatial_reflection(f).injective


def test_point_tree_on_two_points():
    f = powerset_frame(2)
    tb = build_tree_base(f, singleton_base(f, 2))
    assert check_point_tree(f, tb).passed


def test_point_tree_on_binary_branch_frame():
    tree = cantor(2)
    bs = branch_space(tree)
    f = bs.opens_frame
    base = BaseSet(f, mask_of(f.element_of(bs.basic_open[n]) for n in range(tree.size)))
    tb = build_tree_base(f, base)
    assert tb.tree.size == 7
    report = check_point_tree(f, tb)
    assert report.isomorphic and report.passed


def test_identity_is_a_morphism_with_identity_adjoint(chain3):
    table = tuple(range(chain3.size))
    assert frame_morphism_violation(chain3, chain3, table) is None
    assert right_adjoint(chain3, chain3, table) == table


def test_constant_map_breaks_bottom(chain3):
    table = (chain3.top,) * chain3.size
    assert frame_morphism_violation(chain3, chain3, table)[0] == 'bottom'


def test_non_distributive_lattices_are_rejected():
    n5 = poset_from_json({'elements': ['0', 'a', 'c', 'b', '1'],
                          'leq': [['0', 'a'], ['a', 'c'], ['c', '1'], ['0', 'b'], ['b', '1']]})
    with pytest.raises(NotDistributive):
        FiniteFrame.from_poset(n5)
    m3 = poset_from_json({'elements': ['0', 'x', 'y', 'z', '1'],
                          'leq': [['0', 'x'], ['0', 'y'], ['0', 'z'],
                                  ['x', '1'], ['y', '1'], ['z', '1']]})
    with pytest.raises(NotDistributive):
        FiniteFrame.from_poset(m3)


def test_antichain_is_not_a_lattice():
    with pytest.raises(NotALattice):
        FiniteFrame.from_poset(poset_from_json({'elements': ['a', 'b'], 'leq': []}))


def test_explicit_frame_matches_generated_chain():
    explicit = frame_from_json({'elements': ['0', 'm', '1'], 'leq': [['0', 'm'], ['m', '1']]})
    generated = frame_from_json({'generate': 'chain', 'n': 3})
    assert explicit.size == generated.size == 3
    assert len(points(explicit)) == len(points(generated))
