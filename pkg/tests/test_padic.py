from fractions import Fraction

import networkx
import pytest
from hypothesis import given, strategies as st

from models.frame_model import BaseSet
from models.nonarch_model import build_tree_base
from models.padic_model import (DISJOINT, EQUAL, LEFT_INSIDE, RIGHT_INSIDE, ResidueWindow,
                                ball, membership_oracle, norm, open_ball, parse_ball,
                                qp_ball_tree, relation_of, require_prime, residue_relation,
                                trichotomy, valuation, verify_coset_tree, verify_relations,
                                zp_tree)
from models.tree_model import branch_space, cb_rank
from utils.bitset import mask_of
from utils.errors import (NotRepresentable, ParseError, PreconditionError,
                          PrimeMismatch, TooLarge)

primes = st.sampled_from([2, 3, 5])


@st.composite
def balls(draw, p):
    exponent = draw(st.integers(min_value=-4, max_value=4))
    numerator = draw(st.integers(min_value=-700, max_value=700))
    coset_exp = draw(st.integers(min_value=-4, max_value=4))
    return ball(p, Fraction(numerator) * Fraction(p) ** exponent, coset_exp)


@given(primes, st.integers(), st.integers(), st.integers())
def test_ultrametric_inequality(p, x, y, z):
    assert valuation(p, x - z) >= min(valuation(p, x - y), valuation(p, y - z))
    assert norm(p, x - z) <= max(norm(p, x - y), norm(p, y - z))


@given(st.data())
def test_trichotomy_agrees_with_residue_oracle(data):
    p = data.draw(primes)
    b1, b2 = data.draw(balls(p)), data.draw(balls(p))
    assert trichotomy(b1, b2) == residue_relation(b1, b2)


@given(st.data())
def test_trichotomy_is_antisymmetric(data):
    p = data.draw(primes)
    b1, b2 = data.draw(balls(p)), data.draw(balls(p))
    flipped = {DISJOINT: DISJOINT, EQUAL: EQUAL,
               LEFT_INSIDE: RIGHT_INSIDE, RIGHT_INSIDE: LEFT_INSIDE}
    assert trichotomy(b2, b1) == flipped[trichotomy(b1, b2)]


@given(st.data())
def test_membership_matches_canonical_ball(data):
    p = data.draw(primes)
    b = data.draw(balls(p))
    x = Fraction(data.draw(st.integers(min_value=-100, max_value=100))) / p ** 4
    assert membership_oracle(b, x) == (ball(p, x, b.coset_exp) == b)


def test_disjoint_open_balls():
    assert trichotomy(open_ball(3, 0, 1), open_ball(3, 1, 1)) == DISJOINT


def test_small_ball_inside_large_one():
    assert trichotomy(open_ball(3, 0, 0), open_ball(3, 3, 1)) == RIGHT_INSIDE
    assert trichotomy(open_ball(3, 3, 1), open_ball(3, 0, 0)) == LEFT_INSIDE


def test_membership_examples():
    b = open_ball(3, 0, 1)
    assert membership_oracle(b, 9)
    assert not membership_oracle(b, 1)
    assert b.radius == Fraction(1, 3)


def test_canonical_centers():
    assert ball(3, 10, 2) == ball(3, 1, 2)
    assert ball(2, Fraction(1, 2), 0).center == Fraction(1, 2)
    assert ball(2, 8, 2) == ball(2, 0, 2)


def test_children_split_the_ball():
    b = ball(5, 2, 1)
    kids = b.children()
    assert len(kids) == 5
    assert all(trichotomy(c, b) == LEFT_INSIDE for c in kids)
    assert all(trichotomy(x, y) == DISJOINT for i, x in enumerate(kids) for y in kids[i + 1:])


def test_parse_ball():
    assert parse_ball('3^2*Zp+1') == ball(3, 1, 2)
    assert parse_ball(' 2^-1 * Zp + 1/4 ') == ball(2, Fraction(1, 4), -1)
    assert parse_ball('5^0*Zp') == ball(5, 0, 0)


@pytest.mark.parametrize('text, error', [('3^2*Qp+1', ParseError), ('2^1*Zp+1/3', NotRepresentable),
                                         ('4^1*Zp', PreconditionError)])
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_ball(text)


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        parse_ball('3^1*Zp', p=2)
    with pytest.raises(PrimeMismatch):
        trichotomy(ball(2, 0, 1), ball(3, 0, 1))


def test_require_prime():
    with pytest.raises(PreconditionError):
        require_prime(1)


SMALL_WINDOWS = [(2, d) for d in range(5)] + [(p, d) for p in (3, 5) for d in range(3)]


@pytest.mark.parametrize('p, depth', SMALL_WINDOWS)
def test_verify_relations(p, depth):
    result = verify_relations(p, depth)
    assert result['passed'], result['defects'][:3]
    assert result['balls'] == sum(p ** (m + depth) for m in range(-depth, depth + 1))


@pytest.mark.parametrize('p', [2, 3, 5])
@pytest.mark.parametrize('depth', range(5))
def test_coset_tree_relations_match_residues(p, depth):
    result = verify_coset_tree(p, depth)
    assert result['passed'], result['defects'][:3]
    assert result['balls'] == sum(p ** k for k in range(depth + 1))
    assert result['pairs'] == result['balls'] * (result['balls'] + 1) // 2


def test_coset_tree_depth_is_bounded():
    with pytest.raises(TooLarge):
        verify_coset_tree(2, 3, bound=2)


def test_residue_window_marks_one_class():
    window = ResidueWindow(3, 0, 2)
    assert window.residues(ball(3, 1, 1)) == (1 << 1) | (1 << 4) | (1 << 7)
    assert window.residues(ball(3, 5, 2)) == 1 << 5
    assert window.residues(ball(3, 0, 0)) == (1 << 9) - 1
    assert relation_of(window.residues(ball(3, 4, 2)), window.residues(ball(3, 1, 1))) == LEFT_INSIDE


def test_verify_relations_bound():
    with pytest.raises(TooLarge):
        verify_relations(2, 3, bound=2)


def test_zp_tree_shape():
    tree, balls_by_node = zp_tree(2, 3)
    assert tree.size == 15
    assert bin(tree.leaves).count('1') == 8
    assert balls_by_node[tree.root] == ball(2, 0, 0)
    assert cb_rank(tree) == 4


def test_zp_tree_round_trips_through_a_tree_base():
    tree, _ = zp_tree(3, 2)
    bs = branch_space(tree)
    f = bs.opens_frame
    assert f.size == 2 ** 9
    base = BaseSet(f, mask_of(f.element_of(bs.basic_open[n]) for n in range(tree.size)))
    rebuilt = build_tree_base(f, base).tree
    assert networkx.is_isomorphic(rebuilt.to_graph(), tree.to_graph())


def test_qp_forest():
    forest = qp_ball_tree(2, -1, 1)
    assert len(forest) == 2
    for tree, balls_by_node in forest:
        assert len(tree.children[tree.root]) == 2
        assert balls_by_node[tree.root].coset_exp == 0
    assert trichotomy(forest[0][1][0], forest[1][1][0]) == DISJOINT


def test_qp_forest_rejects_positive_vmin():
    with pytest.raises(PreconditionError):
        qp_ball_tree(2, 1, 1)
