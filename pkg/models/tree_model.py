"""Finite trees, their branch spaces and the operators between upsets and opens.

Tree order puts the root at the bottom: an upset of the tree poset is a set
of nodes closed towards the leaves. Branches are root-to-leaf paths, so a
branch meets an upset iff its leaf lies in it.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import networkx

from config import Config
from models.frame_model import (FiniteFrame, Point, frame_morphism_violation,
                                is_two_valued, points, right_adjoint,
                                spatial_reflection)
from models.nucleus_model import ClosureMap, nucleus_violation, prenucleus_closure, quotient
from models.poset_model import enumerate_upsets, maximal_chains, poset_from_up_masks
from utils.bitset import bits, contains, full, is_subset, mask_of
from utils.errors import (InvalidTree, NotAFrameMorphism, NotMaximalChain,
                          NotNucleus, NotOpen, NotTreeBase, TooLarge,
                          VerificationError)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tree:
    parent: tuple  # node ↦ parent index, None for the root
    labels: tuple

    @property
    def size(self):
        return len(self.parent)

    @cached_property
    def root(self):
        return self.parent.index(None)

    @cached_property
    def children(self):
        rows = [[] for _ in range(self.size)]
        for node, up in enumerate(self.parent):
            if up is not None:
                rows[up].append(node)
        return tuple(tuple(r) for r in rows)

    @cached_property
    def depth(self):
        levels = [0] * self.size
        stack = [self.root]
        while stack:
            node = stack.pop()
            for child in self.children[node]:
                levels[child] = levels[node] + 1
                stack.append(child)
        return tuple(levels)

    @property
    def height(self):
        return max(self.depth)

    @cached_property
    def leaves(self):
        return mask_of(n for n in range(self.size) if not self.children[n])

    @cached_property
    def descendants(self):
        """``descendants[n]``: n and everything above it in the tree order."""
        rows = [0] * self.size
        for node in sorted(range(self.size), key=lambda n: -self.depth[n]):
            rows[node] = 1 << node
            for child in self.children[node]:
                rows[node] |= rows[child]
        return tuple(rows)

    def level(self, k):
        return mask_of(n for n in range(self.size) if self.depth[n] == k)

    def label(self, node):
        return self.labels[node]

    def label_set(self, mask):
        return [self.labels[n] for n in bits(mask)]

    def as_poset(self):
        return poset_from_up_masks(self.descendants, self.labels)

    def to_graph(self):
        graph = networkx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from((up, node) for node, up in enumerate(self.parent) if up is not None)
        return graph

    def to_dict(self):
        return {
            'nodes': list(self.labels),
            'parent': {self.labels[n]: (None if up is None else self.labels[up])
                       for n, up in enumerate(self.parent)},
        }


def tree_from_parents(parent, labels=None):
    parent = tuple(parent)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(parent)))
    if not parent:
        raise InvalidTree('Árvore vazia')
    roots = [n for n, up in enumerate(parent) if up is None]
    if len(roots) != 1:
        raise InvalidTree(f'Árvore precisa de exatamente uma raiz (encontradas {len(roots)})')
    if len(set(labels)) != len(labels):
        raise InvalidTree('Rótulos repetidos')
    graph = networkx.DiGraph()
    graph.add_nodes_from(range(len(parent)))
    graph.add_edges_from((up, n) for n, up in enumerate(parent) if up is not None)
    if not networkx.is_arborescence(graph):
        raise InvalidTree('Ligações de pai formam um ciclo')
    return Tree(parent, labels)


def tree_from_poset(p):
    if not p.is_tree():
        raise InvalidTree('A ordem não é uma árvore')
    lower = [None] * p.size
    for i, j in p.hasse_edges():
        lower[j] = i
    return tree_from_parents(lower, p.labels)


def _complete(width, depth, prefix='', sep=''):
    """Complete ``width``-ary tree of height ``depth``, labels are digit paths."""
    parent, labels = [None], [prefix or 'ε']
    frontier = [(0, prefix)]
    for _ in range(depth):
        grown = []
        for node, path in frontier:
            for digit in range(width):
                child = path + (sep if path else '') + str(digit)
                parent.append(node)
                labels.append(child)
                grown.append((len(parent) - 1, child))
        frontier = grown
    return parent, labels


def baire(width, depth):
    sep = '.' if width > 10 else ''
    return tree_from_parents(*_complete(width, depth, sep=sep))


def cantor(depth):
    return baire(2, depth)


def koenig(width, depth):
    """Root with ``depth`` children; child k heads a complete tree of height k-1."""
    parent, labels = [None], ['ε']
    for k in range(1, depth + 1):
        sub_parent, sub_labels = _complete(width, k - 1, prefix=str(k), sep='.')
        offset = len(parent)
        for up, name in zip(sub_parent, sub_labels):
            parent.append(0 if up is None else up + offset)
            labels.append(name)
    return tree_from_parents(parent, labels)


def canonical_form(tree, node=None):
    node = tree.root if node is None else node
    return tuple(sorted(canonical_form(tree, c) for c in tree.children[node]))


def tree_from_shape(shape):
    parent, labels = [None], ['0']
    frontier = [(0, shape)]
    while frontier:
        grown = []
        for node, sub in frontier:
            for child in sub:
                parent.append(node)
                labels.append(str(len(parent) - 1))
                grown.append((len(parent) - 1, child))
        frontier = grown
    return tree_from_parents(parent, labels)


@lru_cache(maxsize=None)
def _shapes(n):
    if n == 1:
        return frozenset({()})
    grown = set()
    for shape in _shapes(n - 1):
        tree = tree_from_shape(shape)
        for node in range(tree.size):
            parent = tree.parent + (node,)
            grown.add(canonical_form(Tree(parent, tree.labels + (str(tree.size),))))
    return frozenset(grown)


def rooted_tree_shapes(n):
    """All rooted trees with ``n`` nodes up to isomorphism, canonically ordered."""
    if n < 1:
        return []
    return [tree_from_shape(s) for s in sorted(_shapes(n))]


def random_tree(n, rng):
    return tree_from_parents([None] + [rng.randrange(i) for i in range(1, n)])


def subtree(tree, keep):
    """The nodes of ``keep``, closed towards the root, as a tree of their own.

    Returns the tree and the original index of each of its nodes.
    """
    nodes = list(bits(keep))
    position = {n: i for i, n in enumerate(nodes)}
    try:
        parent = [None if tree.parent[n] is None else position[tree.parent[n]] for n in nodes]
    except KeyError as e:
        raise InvalidTree(f'Nó {tree.label(e.args[0])} sem o pai no subconjunto')
    return tree_from_parents(parent, [tree.label(n) for n in nodes]), nodes


# -- derivatives and rank --------------------------------------------------

def der_step(tree, mask):
    """der(U) = {a | every immediate successor of a is in U}."""
    return mask | mask_of(n for n in range(tree.size)
                          if all(contains(mask, c) for c in tree.children[n]))


def branch_der_step(tree, mask):
    """Like der, but a leaf survives only when it is already in U."""
    return mask | mask_of(n for n in range(tree.size) if tree.children[n]
                          and all(contains(mask, c) for c in tree.children[n]))


def cb_rank(tree):
    """Least n with der^n(∅) = der^(n+1)(∅)."""
    current, rank = 0, 0
    while True:
        step = der_step(tree, current)
        if step == current:
            LOGGER.debug('cb rank %d on %d nodes', rank, tree.size)
            return rank
        current, rank = step, rank + 1


# -- branch space ------------------------------------------------------------

@dataclass
class BranchSet:
    tree: Tree
    branches: tuple  # node masks, one root-to-leaf path per leaf
    basic_open: tuple  # node ↦ mask over branches
    upsets: object  # UpsetFamily of the tree poset
    opens: tuple  # sorted masks over branches

    @property
    def width(self):
        return len(self.branches)

    def k_star(self, upset):
        return mask_of(i for i, branch in enumerate(self.branches) if branch & upset)

    def k_lower(self, v):
        """⋂{T − ξ | ξ ∉ V}."""
        if v & ~full(self.width):
            raise NotOpen(v)
        result = full(self.tree.size)
        for i, branch in enumerate(self.branches):
            if not contains(v, i):
                result &= ~branch
        return result

    @cached_property
    def upset_frame(self):
        return FiniteFrame.from_family(self.upsets.members, names=list(self.tree.labels))

    @cached_property
    def opens_frame(self):
        names = [self.tree.label(self._leaf(i)) for i in range(self.width)]
        return FiniteFrame.from_family(self.opens, names=names)

    def _leaf(self, i):
        return next(n for n in bits(self.branches[i]) if contains(self.tree.leaves, n))

    def table(self, fn):
        """Upset operator ``fn`` on masks as an index table over ``upsets``."""
        return tuple(self.upsets.index(fn(u)) for u in self.upsets)

    def to_dict(self):
        return {
            'branches': [self.tree.label_set(b) for b in self.branches],
            'basic_open': {self.tree.label(n): list(bits(self.basic_open[n]))
                           for n in range(self.tree.size)},
            'upsets': len(self.upsets),
            'opens': len(self.opens),
        }


def branch_space(tree, bound=None):
    poset = tree.as_poset()
    branches = tuple(maximal_chains(poset))
    branches = tuple(sorted(branches, key=lambda b: next(bits(b & tree.leaves))))
    basic_open = tuple(mask_of(i for i, b in enumerate(branches) if contains(b, n))
                       for n in range(tree.size))
    upsets = enumerate_upsets(poset, bound)
    bs = BranchSet(tree, branches, basic_open, upsets, ())
    images = [bs.k_star(u) for u in upsets]
    for u, image in zip(upsets, images):
        generated = 0
        for x in bits(u):
            generated |= basic_open[x]
        if generated != image:
            raise VerificationError('k*(U) difere da união dos abertos básicos',
                                    upset=tree.label_set(u))
    bs.opens = tuple(sorted(set(images)))
    LOGGER.debug('branch space: %d branches, %d upsets, %d opens',
                 len(branches), len(upsets), len(bs.opens))
    return bs


def adjunction_violation(bs):
    """First (U, V) with k*(U) ⊆ V but not U ⊆ k_*(V), or the converse."""
    lowers = {v: bs.k_lower(v) for v in bs.opens}
    for u in bs.upsets:
        image = bs.k_star(u)
        for v, lower in lowers.items():
            if is_subset(image, v) != is_subset(u, lower):
                return u, v
    return None


def _upset_map(bs, fn):
    return ClosureMap(bs.upset_frame, bs.table(fn))


def ker_nucleus(bs):
    j = _upset_map(bs, lambda u: bs.k_lower(bs.k_star(u)))
    broken = nucleus_violation(bs.upset_frame, j.table)
    if broken is not None:
        raise NotNucleus(*broken)
    if bin(j.fixed).count('1') != len(bs.opens):
        raise VerificationError('Pontos fixos de ker não correspondem aos abertos')
    return j


def der_map(tree, bs=None):
    bs = bs or branch_space(tree)
    return _upset_map(bs, lambda u: der_step(tree, u))


def branch_der_map(bs):
    return _upset_map(bs, lambda u: branch_der_step(bs.tree, u))


def ler_nucleus(bs, j):
    """ler = k_* β η k*, with η the quotient of the opens by ``j``."""
    opens = bs.opens_frame
    broken = nucleus_violation(opens, j.table)
    if broken is not None:
        raise NotNucleus(*broken)

    def ler(u):
        v = opens.rep(j(opens.element_of(bs.k_star(u))))
        return bs.k_lower(v)

    result = _upset_map(bs, ler)
    broken = nucleus_violation(bs.upset_frame, result.table)
    if broken is not None:
        raise NotNucleus(*broken)
    return result


def below_pointwise(bs, lower, upper):
    """First upset where ``lower`` is not contained in ``upper``."""
    for i, u in enumerate(bs.upsets):
        if not is_subset(bs.upsets.members[lower[i]], bs.upsets.members[upper[i]]):
            return u
    return None


def operator_chain(bs, j):
    """Pointwise der ≤ ker ≤ ler, with der the branch derivative."""
    der = branch_der_map(bs).table
    ker = ker_nucleus(bs).table
    ler = ler_nucleus(bs, j).table
    first = below_pointwise(bs, der, ker)
    second = below_pointwise(bs, ker, ler)
    return {
        'der_le_ker': first is None,
        'ker_le_ler': second is None,
        'witness': [bs.tree.label_set(u) for u in (first, second) if u is not None],
    }


def surviving_nodes(basic_open, j):
    """Nodes whose basic open ``j`` keeps above j(∅); ``j`` acts on branch masks."""
    floor = j(0)
    return mask_of(n for n, basic in enumerate(basic_open) if j(basic) != floor)


def _vacuous_gbi(tree_size):
    return {'bar_induction': True, 'tables_agree': True, 'fixed_family': True,
            'spatial_quotient': True, 'equivalent': True, 'presentation': True,
            'der_fixed': 0, 'nodes': 0, 'pruned': tree_size}


def gbi_check(bs, j):
    """Evaluate the four bar-induction conditions for the tree base ``j`` induces.

    The opens modulo ``j`` form the frame A. Its tree base is the subtree of
    nodes whose basic open stays above the bottom of A, and ler is computed
    through η from the branch opens of that subtree onto A. An empty subtree
    means A is the one-element frame and every condition holds vacuously.
    """
    opens = bs.opens_frame
    q = quotient(opens, j)
    keep = surviving_nodes(bs.basic_open, lambda v: opens.rep(j(opens.element_of(v))))
    if not keep:
        return _vacuous_gbi(bs.tree.size)
    sub, nodes = subtree(bs.tree, keep)
    sbs = branch_space(sub)
    sub_opens = sbs.opens_frame
    basic = [q.star[opens.element_of(bs.basic_open[n])] for n in nodes]
    eta = tuple(q.frame.join_all(basic[x] for x in range(sub.size)
                                 if is_subset(sbs.basic_open[x], sub_opens.rep(v)))
                for v in range(sub_opens.size))
    presentation = (frame_morphism_violation(sub_opens, q.frame, eta) is None
                    and set(eta) == set(range(q.frame.size)))
    eta_star = right_adjoint(sub_opens, q.frame, eta)

    def through_quotient(u):
        v = sub_opens.element_of(sbs.k_star(u))
        return sbs.k_lower(sub_opens.rep(eta_star[eta[v]]))

    ler = _upset_map(sbs, through_quotient)
    broken = nucleus_violation(sbs.upset_frame, ler.table)
    if broken is not None:
        raise NotNucleus(*broken)
    der = branch_der_map(sbs)
    closure, _ = prenucleus_closure(der)
    ker = ker_nucleus(sbs)

    der_fixed = [i for i in range(len(sbs.upsets)) if der.table[i] == i]
    bar_induction = all(ler.table[i] == i for i in der_fixed)
    tables_agree = closure.table == ker.table == ler.table
    restated = all(ler.table[i] == i for i in sorted(set(closure.table)))
    spatial = spatial_reflection(quotient(sbs.upset_frame, closure).frame).injective

    values = {'bar_induction': bar_induction, 'tables_agree': tables_agree,
              'fixed_family': restated, 'spatial_quotient': spatial}
    return {
        **values,
        'equivalent': len(set(values.values())) == 1,
        'presentation': presentation,
        'der_fixed': len(der_fixed),
        'nodes': sub.size,
        'pruned': bs.tree.size - sub.size,
    }


def meet_spatial(family):
    """True when every member of an ∩-closed family is an intersection of
    meet-irreducible members, i.e. the points of the lattice separate it."""
    top = 0
    for x in family:
        top |= x
    irreducible = []
    for x in family:
        if x == top:
            continue
        cover = top
        for y in family:
            if y != x and x & y == x:
                cover &= y
        if cover != x:
            irreducible.append(x)
    for x in family:
        acc = top
        for m in irreducible:
            if x & m == x:
                acc &= m
        if acc != x:
            return False
    return True


def bar_induction_masks(tree):
    """The four conditions for j = identity, on mask tables only.

    Same answers as ``gbi_check`` with the identity, without building the
    upset frame; spatiality is read off the meet-irreducible fixed sets.
    """
    bs = branch_space(tree)
    members = bs.upsets.members
    der = [bs.upsets.index(branch_der_step(tree, u)) for u in members]
    ker = [bs.upsets.index(bs.k_lower(bs.k_star(u))) for u in members]
    ler = [bs.upsets.index(bs.k_lower(v)) for v in (bs.k_star(u) for u in members)]
    closure = list(range(len(members)))
    while True:
        step = [der[x] for x in closure]
        if step == closure:
            break
        closure = step

    der_fixed = [i for i in range(len(members)) if der[i] == i]
    values = {
        'bar_induction': all(ler[i] == i for i in der_fixed),
        'tables_agree': closure == ker == ler,
        'fixed_family': all(ler[i] == i for i in set(closure)),
        'spatial_quotient': meet_spatial([members[i] for i in sorted(set(closure))]),
    }
    return {
        **values,
        'equivalent': len(set(values.values())) == 1,
        'der_le_ker': all(is_subset(members[der[i]], members[ker[i]])
                          for i in range(len(members))),
        'der_fixed': len(der_fixed),
        'nodes': tree.size,
    }


# -- coverages ---------------------------------------------------------------

@dataclass
class CoverageRelation:
    """U ⊢ a, stored as the inflator d(U) = {a | U ⊢ a} per upset."""

    branch_set: BranchSet
    inflator: tuple  # upset index ↦ node mask

    def covers(self, upset_index, node):
        return contains(self.inflator[upset_index], node)


def coverage_from(bs, fn, bound=None):
    bound = Config.MAX_COVERAGE_UPSETS if bound is None else bound
    if len(bs.upsets) > bound:
        raise TooLarge('Upsets', len(bs.upsets), bound)
    return CoverageRelation(bs, tuple(fn(u) for u in bs.upsets))


def coverage_check(c, limit=10):
    """Violations of the upset, infl, mono, stability and idem rules."""
    bs = c.branch_set
    tree, members = bs.tree, bs.upsets.members
    poset = tree.as_poset()
    d = c.inflator
    violations = {rule: [] for rule in ('upset', 'infl', 'mono', 'stability', 'idem')}

    def record(rule, *upsets):
        if len(violations[rule]) < limit:
            violations[rule].append([tree.label_set(u) for u in upsets])

    for i, u in enumerate(members):
        if not poset.is_upset(d[i]):
            record('upset', u)
        if not is_subset(u, d[i]):
            record('infl', u)
        for x in range(tree.size):
            if contains(u, x) or not is_subset(tree.descendants[x] & ~(1 << x), u):
                continue
            k = bs.upsets.index(u | 1 << x)
            if not is_subset(d[i], d[k]):
                record('mono', u, members[k])
    for i, u in enumerate(members):
        for k in range(i, len(members)):
            v = members[k]
            meet = bs.upsets.index(u & v)
            if not is_subset(d[i] & d[k], d[meet]):
                record('stability', u, v)
            if is_subset(u, d[k]) and not is_subset(d[i], d[k]):
                record('idem', u, v)
            if is_subset(v, d[i]) and not is_subset(d[k], d[i]):
                record('idem', v, u)
    return {'passed': not any(violations.values()), 'violations': violations}


# -- tree bases ----------------------------------------------------------------

def _check_tree_base(f, tb):
    if len(tb.node_to_element) != tb.tree.size or tb.node_to_element[tb.tree.root] != f.top:
        raise NotTreeBase('A base em árvore não pertence a este frame')


def quotient_presentation(f, tb):
    """η(V) = ⋁{x | U_x ⊆ V} from the branch opens onto ``f``, with non = η_* η."""
    _check_tree_base(f, tb)
    tree, element = tb.tree, tb.node_to_element
    bs = branch_space(tree)
    opens = bs.opens_frame
    eta = tuple(f.join_all(element[x] for x in range(tree.size)
                           if is_subset(bs.basic_open[x], opens.rep(v)))
                for v in range(opens.size))
    broken = frame_morphism_violation(opens, f, eta)
    surjective = set(eta) == set(range(f.size))
    recovers = all(eta[opens.element_of(bs.basic_open[x])] == element[x]
                   for x in range(tree.size))
    injective = len(set(eta)) == opens.size

    def lower(a):
        acc = 0
        for x in range(tree.size):
            if f.leq(element[x], a):
                acc |= bs.basic_open[x]
        return opens.element_of(acc)

    frame_of_basics = tuple(lower(a) for a in range(f.size))
    non = ClosureMap(opens, tuple(frame_of_basics[eta[v]] for v in range(opens.size)))
    non_is_nucleus = nucleus_violation(opens, non.table) is None
    return {
        'passed': broken is None and surjective and recovers and non_is_nucleus,
        'morphism': broken is None,
        'morphism_violation': None if broken is None else list(broken),
        'surjective': surjective,
        'recovers_basics': recovers,
        'injective': injective,
        'non_is_nucleus': non_is_nucleus,
        'non_fixed': bin(non.fixed).count('1'),
        'eta': {opens.label(v): f.label(eta[v]) for v in range(opens.size)},
        'spatial_inverse': {f.label(a): opens.label(frame_of_basics[a]) for a in range(f.size)},
    }


def level_decomposition(f, tb, a):
    """(level, node mask) pairs; level α keeps the basics ≤ a not below earlier picks."""
    element = tb.node_to_element
    chosen, result = [], []
    for depth, level in enumerate(tb.levels):
        picked = mask_of(n for n in bits(level)
                         if f.leq(element[n], a)
                         and not any(f.leq(element[n], element[c]) for c in chosen))
        chosen.extend(bits(picked))
        if picked:
            result.append((depth, picked))
    if tb.levels and f.join_all(element[c] for c in chosen) != a:
        raise VerificationError('Decomposição em níveis não recupera o elemento',
                                element=f.label(a))
    return result


def branch_point(f, tb, chain):
    """p_C(a) = 1 iff some node of the branch C lies below a."""
    if chain not in maximal_chains(tb.tree.as_poset()):
        raise NotMaximalChain(chain)
    element = tb.node_to_element
    kernel = mask_of(a for a in range(f.size) if any(f.leq(element[c], a) for c in bits(chain)))
    if not is_two_valued(f, kernel):
        raise NotAFrameMorphism('p_C', f.label_set(kernel))
    return Point(kernel)


def branch_point_map(f, tb):
    """ϖ: branches → pt(f), with injectivity, surjectivity and continuity."""
    bs = branch_space(tb.tree)
    image = [branch_point(f, tb, branch) for branch in bs.branches]
    pts = points(f)
    opens = set(bs.opens)
    continuous = all(
        mask_of(i for i, p in enumerate(image) if contains(p.kernel, tb.node_to_element[n])) in opens
        for n in range(tb.tree.size))
    return {
        'branches': len(image),
        'points': len(pts),
        'injective': len(set(image)) == len(image),
        'surjective': set(image) == set(pts),
        'continuous': continuous,
    }
