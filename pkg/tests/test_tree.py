import random

import pytest

from models.frame_model import BaseSet, powerset_frame, spatial_reflection
from models.nonarch_model import build_tree_base
from models.nucleus_model import (closed_nucleus, constant_top, enumerate_nuclei, identity_map,
                                  prenucleus_closure, quotient)
from models.tree_model import (adjunction_violation, baire, bar_induction_masks, branch_der_map,
                               branch_point, branch_point_map, branch_space, canonical_form,
                               cantor, cb_rank, coverage_check, coverage_from, der_map, der_step,
                               gbi_check, ker_nucleus, koenig, ler_nucleus, meet_spatial,
                               operator_chain, quotient_presentation, random_tree,
                               rooted_tree_shapes, subtree, surviving_nodes, tree_from_parents,
                               tree_from_poset)
from utils.bitset import mask_of
from utils.corpus import singleton_base
from utils.errors import InvalidTree, NotMaximalChain, NotOpen, TooLarge


@pytest.mark.parametrize('n, expected', [(1, 1), (2, 1), (3, 2), (4, 4), (5, 9), (6, 20), (7, 48),
                                         (10, 719), (12, 4766)])
def test_rooted_tree_shapes(n, expected):
    assert len(rooted_tree_shapes(n)) == expected


def test_shapes_are_pairwise_non_isomorphic():
    forms = [canonical_form(t) for t in rooted_tree_shapes(6)]
    assert len(set(forms)) == len(forms)


def test_canonical_form_ignores_child_order():
    left = tree_from_parents([None, 0, 0, 1])
    right = tree_from_parents([None, 0, 0, 2])
    assert canonical_form(left) == canonical_form(right)


@pytest.mark.parametrize('parent', [[], [None, None], [None, 2, 1]])
def test_invalid_parent_lists(parent):
    with pytest.raises(InvalidTree):
        tree_from_parents(parent)


def test_tree_round_trips_through_its_poset():
    tree = koenig(2, 3)
    again = tree_from_poset(tree.as_poset())
    assert again.parent == tree.parent


def test_generators():
    assert cantor(3).size == 15
    assert bin(cantor(3).leaves).count('1') == 8
    assert baire(3, 2).size == 13
    assert koenig(2, 3).size == 1 + 1 + 3 + 7


@pytest.mark.parametrize('depth', range(7))
def test_rank_of_complete_binary_trees(depth):
    assert cb_rank(cantor(depth)) == depth + 1


def test_ranks_grow_with_depth():
    for make in (lambda d: baire(3, d), lambda d: koenig(2, d)):
        ranks = [cb_rank(make(d)) for d in range(5)]
        assert ranks == sorted(set(ranks))


def test_rank_agrees_with_upset_table():
    tree = cantor(2)
    der = der_map(tree).table
    bs = branch_space(tree)
    current, steps = bs.upsets.index(0), 0
    while der[current] != current:
        current, steps = der[current], steps + 1
    assert steps == cb_rank(tree) == 3


def test_random_tree_is_seeded():
    assert random_tree(10, random.Random(1)).parent == random_tree(10, random.Random(1)).parent


def test_branch_space_of_binary_depth_one(binary1):
    bs = branch_space(binary1)
    assert bs.width == 2
    assert bs.opens_frame.size == 4
    assert bs.opens_frame.is_powerset
    assert binary1.label_set(bs.k_lower(0b01)) == ['0']
    assert bs.k_lower(0b11) == 0b111
    with pytest.raises(NotOpen):
        bs.k_lower(0b100)


def test_k_star_is_left_adjoint_to_k_lower():
    for tree in rooted_tree_shapes(5):
        assert adjunction_violation(branch_space(tree)) is None


def test_ker_sends_leaves_to_whole_tree(binary1):
    bs = branch_space(binary1)
    ker = ker_nucleus(bs)
    leaves = bs.upsets.index(binary1.leaves)
    assert bs.upsets.members[ker.table[leaves]] == 0b111
    assert bin(ker.fixed).count('1') == len(bs.opens)


def test_ler_with_identity_is_ker():
    bs = branch_space(cantor(2))
    assert ler_nucleus(bs, identity_map(bs.opens_frame)).table == ker_nucleus(bs).table


def test_der_ker_ler_chain():
    for tree in rooted_tree_shapes(5):
        bs = branch_space(tree)
        for j in enumerate_nuclei(bs.opens_frame):
            chain = operator_chain(bs, j)
            assert chain['der_le_ker'] and chain['ker_le_ler']


CONDITIONS = ('bar_induction', 'tables_agree', 'fixed_family', 'spatial_quotient')


def test_bar_induction_on_single_node():
    bs = branch_space(tree_from_parents([None]))
    nuclei = enumerate_nuclei(bs.opens_frame)
    assert [j.table for j in nuclei] == [(0, 1), (1, 1)]
    for j in nuclei:
        result = gbi_check(bs, j)
        assert all(result[c] for c in CONDITIONS), result
        assert result['equivalent'] and result['presentation']
    collapsed = gbi_check(bs, constant_top(bs.opens_frame))
    assert collapsed['nodes'] == 0 and collapsed['pruned'] == 1


def test_bar_induction_on_binary_depth_one():
    bs = branch_space(cantor(1))
    results = {j.table: gbi_check(bs, j) for j in enumerate_nuclei(bs.opens_frame)}
    assert list(results) == [(0, 1, 2, 3), (1, 1, 3, 3), (2, 3, 2, 3), (3, 3, 3, 3)]
    for result in results.values():
        assert all(result[c] for c in CONDITIONS), result
        assert result['equivalent'] and result['presentation']
    assert [r['nodes'] for r in results.values()] == [3, 2, 2, 0]


def test_bar_induction_conditions_agree_for_every_nucleus():
    for tree in (cantor(2), koenig(2, 2), tree_from_parents([None, 0, 1, 1])):
        bs = branch_space(tree)
        for j in enumerate_nuclei(bs.opens_frame):
            result = gbi_check(bs, j)
            assert result['equivalent'] and result['spatial_quotient']


def test_closed_nucleus_prunes_the_killed_branch():
    tree = cantor(2)
    bs = branch_space(tree)
    j = closed_nucleus(bs.opens_frame, bs.opens_frame.element_of(0b0011))
    result = gbi_check(bs, j)
    assert result['nodes'] == 4 and result['pruned'] == 3
    assert result['tables_agree']
    assert subtree(tree, surviving_nodes(bs.basic_open, lambda v: v | 0b0011))[0].size == 4


def test_mask_tables_match_frame_evaluation():
    for n in range(1, 6):
        for tree in rooted_tree_shapes(n):
            bs = branch_space(tree)
            full_check = gbi_check(bs, identity_map(bs.opens_frame))
            lean = bar_induction_masks(tree)
            assert {c: lean[c] for c in CONDITIONS} == {c: full_check[c] for c in CONDITIONS}
            assert lean['der_le_ker'] and lean['der_fixed'] == full_check['der_fixed']


def test_meet_spatial_agrees_with_spatial_reflection():
    for tree in (cantor(2), koenig(2, 3)):
        bs = branch_space(tree)
        closure, _ = prenucleus_closure(branch_der_map(bs))
        family = [bs.upsets.members[i] for i in sorted(set(closure.table))]
        reflection = spatial_reflection(quotient(bs.upset_frame, closure).frame)
        assert meet_spatial(family) == reflection.injective
        assert len(reflection.points) == bs.width


def test_subtree_requires_parents():
    tree = cantor(2)
    kept, nodes = subtree(tree, 0b1000101)
    assert kept.labels == ('ε', '1', '11') and nodes == [0, 2, 6]
    with pytest.raises(InvalidTree):
        subtree(tree, 0b1000001)


def test_plain_derivative_breaks_der_below_ker():
    tree = cantor(2)
    bs = branch_space(tree)
    empty = bs.upsets.index(0)
    assert bs.upsets.members[der_map(tree, bs).table[empty]] == tree.leaves
    assert bs.upsets.members[ker_nucleus(bs).table[empty]] == 0
    assert branch_der_map(bs).table[empty] == empty


def test_branch_derivative_fixes_identity_for_bar_induction():
    bs = branch_space(cantor(2))
    result = gbi_check(bs, identity_map(bs.opens_frame))
    assert result['tables_agree']
    assert branch_der_map(bs).table != der_map(cantor(2), bs).table


def test_ker_coverage_rules():
    bs = branch_space(cantor(2))
    coverage = coverage_from(bs, lambda u: bs.k_lower(bs.k_star(u)))
    result = coverage_check(coverage)
    assert result['passed'], result['violations']


def test_derivative_coverage_is_not_idempotent():
    tree = cantor(2)
    bs = branch_space(tree)
    result = coverage_check(coverage_from(bs, lambda u: der_step(tree, u)))
    assert result['violations']['idem']
    assert not result['violations']['infl']


def test_coverage_respects_bound():
    bs = branch_space(cantor(2))
    with pytest.raises(TooLarge):
        coverage_from(bs, lambda u: u, bound=10)


def _singleton_tree_base(n):
    f = powerset_frame(n)
    return f, build_tree_base(f, singleton_base(f, n))


def test_quotient_presentation_of_a_tree_base():
    f, tb = _singleton_tree_base(3)
    result = quotient_presentation(f, tb)
    assert result['passed'] and result['injective']
    assert result['non_is_nucleus']


def test_presentation_of_nested_base():
    f = powerset_frame(3)
    tb = build_tree_base(f, BaseSet(f, mask_of([1, 2, 4, 3, 7])))
    result = quotient_presentation(f, tb)
    assert result['surjective'] and result['recovers_basics'] and result['injective']


def test_branch_points():
    f, tb = _singleton_tree_base(2)
    bs = branch_space(tb.tree)
    kernels = {branch_point(f, tb, chain).kernel for chain in bs.branches}
    assert len(kernels) == 2
    with pytest.raises(NotMaximalChain):
        branch_point(f, tb, 1 << tb.tree.root)
    varpi = branch_point_map(f, tb)
    assert varpi['injective'] and varpi['surjective'] and varpi['continuous']
