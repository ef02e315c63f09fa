import logging
from dataclasses import dataclass, field

from models.frame_model import BaseSet, is_complemented, is_zero_dimensional
from models.poset_model import maximal_chains
from models.tree_model import tree_from_parents
from utils.bitset import bits, contains, mask_of
from utils.errors import (NoNontrivialDecomposition, NotChainClosed, NotNonArch,
                          VerificationError)

LOGGER = logging.getLogger(__name__)

EQUAL, DISJOINT, LEFT_BELOW, RIGHT_BELOW = 'Equal', 'Disjoint', 'LeftBelow', 'RightBelow'


def classify(f, x, y):
    if x == y:
        return EQUAL
    if f.meet(x, y) == f.bottom:
        return DISJOINT
    if f.leq(x, y):
        return LEFT_BELOW
    if f.leq(y, x):
        return RIGHT_BELOW
    return None


def nonarch_violation(f, members):
    """First pair of members that is neither disjoint nor comparable."""
    items = list(bits(members))
    for i, x in enumerate(items):
        for y in items[i + 1:]:
            if classify(f, x, y) is None:
                return x, y
    return None


@dataclass
class TrichotomyReport:
    holds: bool
    violating_pair: tuple = None
    table: dict = field(default_factory=dict)
    zero_dimensional: bool = True
    zero_counterexample: bool = False

    def to_dict(self):
        return {
            'holds': self.holds,
            'violating_pair': self.violating_pair,
            'classification': [[x, y, kind] for (x, y), kind in self.table.items()],
            'zero_dimensional': self.zero_dimensional,
            'zero_dimension_counterexample': self.zero_counterexample,
        }


def check_nonarch_base(f, base):
    table = {}
    violating = None
    items = list(base)
    for i, x in enumerate(items):
        for y in items[i:]:
            kind = classify(f, x, y)
            table[(f.label(x), f.label(y))] = kind
            if kind is None and violating is None:
                violating = (f.label(x), f.label(y))
    holds = violating is None
    zero_dim, _ = is_zero_dimensional(f)
    if holds and not zero_dim:
        LOGGER.info('non-archimedean base on a frame that is not zero-dimensional')
    return TrichotomyReport(holds, violating, table, zero_dim, holds and not zero_dim)


def _require_nonarch(f, members):
    clash = nonarch_violation(f, members)
    if clash is not None:
        raise NotNonArch([f.label(x) for x in clash])


def _chain_joins(f, members):
    """Joins of all nonempty chains of ``members`` (prefix joins of maximal chains)."""
    sub = f.carrier.restrict(list(bits(members)))
    originals = list(bits(members))
    joins = 0
    for chain in maximal_chains(sub):
        acc = []
        for k in sorted(bits(chain), key=lambda k: bin(sub.down[k]).count('1')):
            acc.append(originals[k])
            joins |= 1 << f.join_all(acc)
    return joins


def chain_closure(f, base):
    _require_nonarch(f, base.members)
    closed = _chain_joins(f, base.members) | base.members
    closure = BaseSet(f, closed)
    _require_nonarch(f, closed)
    _require_chain_closed(f, closed)
    return closure


def _require_chain_closed(f, members):
    missing = _chain_joins(f, members) & ~members
    if missing:
        raise NotChainClosed(f.label(next(bits(missing))))


def _maximal(f, candidates):
    return mask_of(x for x in bits(candidates)
                   if not any(y != x and f.leq(x, y) for y in bits(candidates)))


def canonical_decomposition(f, base, a):
    """Maximal nonzero basics below ``a``: pairwise disjoint, joining to ``a``."""
    _require_nonarch(f, base.members)
    _require_chain_closed(f, base.members)
    below = mask_of(x for x in base if x != f.bottom and f.leq(x, a))
    pieces = _maximal(f, below)
    if f.join_all(bits(pieces)) != a:
        raise VerificationError('Decomposição canônica não recupera o elemento',
                                element=f.label(a))
    return pieces


@dataclass(frozen=True)
class OrthoOutcome:
    kind: str
    meet: int
    witness: int = None
    in_closure: bool = None

    def to_dict(self, f):
        data = {'kind': self.kind, 'meet': f.label(self.meet)}
        if self.witness is not None:
            data.update(witness=f.label(self.witness), in_closure=self.in_closure)
        return data


def ortho_classify(f, base, subset):
    """Which alternative holds for ⋀subset: zero, an atom, or complemented."""
    if subset & ~base.members:
        raise VerificationError('Subconjunto não está contido na base')
    meet = f.meet_all(bits(subset))
    if meet == f.bottom:
        return OrthoOutcome('MeetZero', meet)
    if f.is_atom(meet):
        return OrthoOutcome('IntervalSimple', meet)
    complemented, witness = is_complemented(f, meet)
    if complemented:
        closure = _chain_joins(f, base.members) | base.members
        return OrthoOutcome('Complemented', meet, witness, contains(closure, witness))
    return OrthoOutcome('None', meet)


def local_base_atoms(f, base):
    """Nonzero a whose basics below have nonzero meet but no atom lies under a."""
    failures = []
    for a in range(f.size):
        if a == f.bottom:
            continue
        if f.meet_all(base.below(a)) != f.bottom and not any(
                f.is_atom(x) for x in bits(f.below(a))):
            failures.append(f.label(a))
    return failures


def complemented_lemma(f, base):
    """(b, c) with c ≠ 0 complemented, c ≤ b basic and b not complemented."""
    failures = []
    for b in base:
        for c in bits(f.below(b)):
            if c == f.bottom or not is_complemented(f, c)[0]:
                continue
            if not is_complemented(f, b)[0]:
                failures.append((f.label(b), f.label(c)))
    return failures


@dataclass
class TreeBase:
    frame: object
    tree: object
    node_to_element: tuple
    levels: list  # levels[k]: node mask of depth k + 1

    def to_dict(self):
        data = self.tree.to_dict()
        data['levels'] = [self.tree.label_set(level) for level in self.levels]
        return data


def build_tree_base(f, base):
    """Root = 1; each non-atomic node gets the maximal proper basics below it."""
    _require_nonarch(f, base.members)
    _require_chain_closed(f, base.members)
    proper = mask_of(x for x in base if x not in (f.bottom, f.top))

    def decomposition(n):
        below = mask_of(x for x in bits(proper) if x != n and f.leq(x, n))
        if not below:
            return []
        pieces = list(bits(_maximal(f, below)))
        if f.join_all(pieces) != n:
            raise NoNontrivialDecomposition(f.label(n))
        return pieces

    elements, parent = [f.top], [None]
    frontier = [0]
    while frontier:
        grown = []
        for node in frontier:
            for piece in decomposition(elements[node]):
                elements.append(piece)
                parent.append(node)
                grown.append(len(elements) - 1)
        frontier = grown
    tree = tree_from_parents(parent, [f.label(e) for e in elements])
    levels = [tree.level(k) for k in range(1, tree.height + 1)]
    LOGGER.debug('tree base with %d nodes and %d levels', tree.size, len(levels))
    tb = TreeBase(f, tree, tuple(elements), levels)
    report = tree_base_report(f, base, tb)
    if not report['passed']:
        raise VerificationError('Base em árvore viola seus invariantes', **report)
    return tb


def tree_base_report(f, base, tb):
    tree, element = tb.tree, tb.node_to_element
    siblings_disjoint = all(
        f.meet(element[x], element[y]) == f.bottom
        for n in range(tree.size) for i, x in enumerate(tree.children[n])
        for y in tree.children[n][i + 1:])
    joins_children = all(
        f.join_all(element[c] for c in tree.children[n]) == element[n]
        for n in range(tree.size) if tree.children[n])
    reversed_order = all(
        contains(tree.descendants[x], y) == f.leq(element[y], element[x])
        for x in range(tree.size) for y in range(tree.size))

    # δ(b): first level where b is no longer strictly below a node
    delta_ok = True
    for b in base:
        if b in (f.bottom, f.top):
            continue
        for level in tb.levels:
            if any(b != element[n] and f.leq(b, element[n]) for n in bits(level)):
                continue
            pieces = [element[n] for n in bits(level) if f.leq(element[n], b)]
            delta_ok = delta_ok and f.join_all(pieces) == b
            break
    return {
        'passed': siblings_disjoint and joins_children and reversed_order and delta_ok,
        'siblings_disjoint': siblings_disjoint,
        'joins_children': joins_children,
        'reversed_order': reversed_order,
        'levels_decompose': delta_ok,
    }
