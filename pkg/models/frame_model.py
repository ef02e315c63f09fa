"""Finite frames, their Heyting structure, separation properties and points.

A finite frame is stored through its Birkhoff representation: every element
is the set of join-irreducibles below it (or, for frames given as a family of
sets, the set itself). Meets and joins are then intersections and unions of
masks, and ``_index`` maps a mask back to the element.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

import networkx

from models.poset_model import Poset, enumerate_upsets, poset_from_up_masks
from utils.bitset import bits, contains, full, is_subset, mask_of
from utils.errors import (CrossCheckMismatch, NotABase, NotALattice,
                          NotDistributive, PreconditionError, VerificationError)

LOGGER = logging.getLogger(__name__)


def set_label(mask, names):
    return '{' + ','.join(names[i] for i in bits(mask)) + '}'


class FiniteFrame:

    def __init__(self, reps, labels, width, powerset=False):
        self.size = len(reps)
        if self.size == 0:
            raise PreconditionError('Um frame precisa de pelo menos um elemento')
        self._rep = tuple(reps)
        self._index = {r: i for i, r in enumerate(self._rep)}
        if len(self._index) != self.size:
            raise PreconditionError('Representações repetidas no frame')
        self.labels = tuple(labels)
        self.width = width
        self.is_powerset = powerset
        low, high = full(width), 0
        for r in self._rep:
            low &= r
            high |= r
        if low not in self._index or high not in self._index:
            raise NotALattice(self.labels[0], self.labels[-1], 'bottom/top')
        self.bottom = self._index[low]
        self.top = self._index[high]
        self._heyting = {}

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_family(cls, masks, labels=None, names=None):
        """Frame of a family of sets closed under union and intersection."""
        masks = list(masks)
        width = max((m.bit_length() for m in masks), default=0)
        names = names or [str(i + 1) for i in range(width)]
        labels = labels or [set_label(m, names) for m in masks]
        powerset = len(masks) == 1 << width and len(set(masks)) == len(masks)
        frame = cls(masks, labels, width, powerset=powerset)
        if not powerset:
            for i, a in enumerate(masks):
                for j in range(i + 1, len(masks)):
                    b = masks[j]
                    if a & b not in frame._index:
                        raise NotALattice(frame.labels[i], frame.labels[j], 'meet')
                    if a | b not in frame._index:
                        raise NotALattice(frame.labels[i], frame.labels[j], 'join')
        return frame

    @classmethod
    def from_poset(cls, poset):
        """Validate that ``poset`` is a distributive lattice and represent it."""
        n = poset.size
        if n == 0:
            raise PreconditionError('Um frame precisa de pelo menos um elemento')
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                m = _extremum(poset.down, poset.down[a] & poset.down[b])
                if m is None:
                    raise NotALattice(poset.label(a), poset.label(b), 'meet')
                j = _extremum(poset.up, poset.up[a] & poset.up[b])
                if j is None:
                    raise NotALattice(poset.label(a), poset.label(b), 'join')
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        if _extremum(poset.down, full(n)) is None and n > 1:
            raise NotALattice(poset.label(0), poset.label(n - 1), 'top')

        # join-irreducible <=> exactly one lower cover
        lower_covers = [0] * n
        for i, j in poset.hasse_edges():
            lower_covers[j] |= 1 << i
        irreducibles = [x for x in range(n) if bin(lower_covers[x]).count('1') == 1]
        position = {x: k for k, x in enumerate(irreducibles)}
        reps = [mask_of(position[x] for x in bits(poset.down[a]) if x in position)
                for a in range(n)]

        for a in range(n):
            for b in range(a + 1, n):
                if reps[join[a][b]] != reps[a] | reps[b]:
                    raise NotDistributive(*_distributivity_witness(poset, meet, join))
        frame = cls(reps, poset.labels, len(irreducibles))
        frame.__dict__['carrier'] = poset
        return frame

    # -- order and operations ---------------------------------------------

    def rep(self, a):
        return self._rep[a]

    def element_of(self, rep):
        return self._index.get(rep)

    def leq(self, a, b):
        return is_subset(self._rep[a], self._rep[b])

    def meet(self, a, b):
        return self._index[self._rep[a] & self._rep[b]]

    def join(self, a, b):
        return self._index[self._rep[a] | self._rep[b]]

    def join_all(self, items):
        acc = self._rep[self.bottom]
        for x in items:
            acc |= self._rep[x]
        return self._index[acc]

    def meet_all(self, items):
        acc = self._rep[self.top]
        for x in items:
            acc &= self._rep[x]
        return self._index[acc]

    def heyting(self, a, b):
        key = (a, b)
        if key not in self._heyting:
            ra, rb = self._rep[a], self._rep[b]
            if self.is_powerset:
                value = self._index[(~ra | rb) & full(self.width)]
            else:
                acc = self._rep[self.bottom]
                for r in self._rep:
                    if is_subset(r & ra, rb):
                        acc |= r
                value = self._index[acc]
            self._heyting[key] = value
        return self._heyting[key]

    def label(self, a):
        return self.labels[a]

    @cached_property
    def _label_index(self):
        return {name: i for i, name in enumerate(self.labels)}

    def index(self, label):
        try:
            return self._label_index[label]
        except KeyError:
            raise PreconditionError(f'Elemento desconhecido: {label}', element=label)

    @cached_property
    def carrier(self):
        up = [mask_of(b for b in range(self.size) if self.leq(a, b)) for a in range(self.size)]
        return poset_from_up_masks(up, self.labels)

    def below(self, a):
        return self.carrier.down[a]

    def is_atom(self, a):
        return a != self.bottom and self.carrier.down[a] == (1 << a) | (1 << self.bottom)

    def label_set(self, mask):
        return [self.labels[i] for i in bits(mask)]

    def to_dict(self):
        data = self.carrier.to_dict()
        data.update(bottom=self.labels[self.bottom], top=self.labels[self.top], size=self.size)
        return data


def _extremum(rows, bounds):
    """Element x in ``bounds`` with rows[x] == bounds (the max of a downset)."""
    for x in bits(bounds):
        if rows[x] == bounds:
            return x
    return None


def _distributivity_witness(poset, meet, join):
    n = poset.size
    for a in range(n):
        for x in range(n):
            for y in range(n):
                if meet[a][join[x][y]] != join[meet[a][x]][meet[a][y]]:
                    return poset.label(a), poset.label(x), poset.label(y)
    return poset.label(0), poset.label(0), poset.label(0)


# -- generators ------------------------------------------------------------

def powerset_frame(n):
    return FiniteFrame.from_family(range(1 << n), names=[str(i + 1) for i in range(n)])


def chain_frame(n):
    if n < 1:
        raise PreconditionError('Cadeia precisa de pelo menos um elemento')
    labels = ['0'] + [f'c{i}' for i in range(1, n - 1)] + (['1'] if n > 1 else [])
    up = [full(n) & ~full(i) for i in range(n)]
    return FiniteFrame.from_poset(poset_from_up_masks(up, labels))


def alexandroff_frame(poset, bound=None):
    family = enumerate_upsets(poset, bound)
    return FiniteFrame.from_family(family.members, names=list(poset.labels))


# -- Heyting structure -----------------------------------------------------

def heyting(f, a, b):
    return f.heyting(a, b)


def negation(f, a):
    return f.heyting(a, f.bottom)


def is_complemented(f, a):
    """(True, ¬a) when a ∨ ¬a = 1, else (False, None)."""
    witness = negation(f, a)
    if f.join(a, witness) == f.top:
        return True, witness
    return False, None


def complemented_elements(f):
    return mask_of(a for a in range(f.size) if is_complemented(f, a)[0])


# -- bases -----------------------------------------------------------------

def base_violation(f, members):
    """First element that is not the join of the members below it."""
    for a in range(f.size):
        if f.join_all(b for b in bits(members) if f.leq(b, a)) != a:
            return a
    return None


@dataclass(frozen=True)
class BaseSet:
    frame: FiniteFrame
    members: int

    def __post_init__(self):
        bad = base_violation(self.frame, self.members)
        if bad is not None:
            raise NotABase(self.frame.label(bad))

    def __iter__(self):
        return bits(self.members)

    def __contains__(self, element):
        return contains(self.members, element)

    def below(self, a):
        return [b for b in bits(self.members) if self.frame.leq(b, a)]

    def to_dict(self):
        return {'members': self.frame.label_set(self.members)}


def base_from_labels(f, labels):
    return BaseSet(f, mask_of(f.index(name) for name in labels))


def default_base(f):
    """Join-irreducibles together with the top (a base of every finite frame)."""
    members = 1 << f.top if f.top != f.bottom else 0
    for a in range(f.size):
        if a == f.bottom:
            continue
        strictly_below = f.below(a) & ~(1 << a)
        if f.join_all(bits(strictly_below)) != a:
            members |= 1 << a
    return BaseSet(f, members)


def is_zero_dimensional(f):
    """(True, mask of complemented elements) iff that set is a base."""
    witness = complemented_elements(f)
    return base_violation(f, witness) is None, witness


# -- separation ------------------------------------------------------------

def rather_below(f, a, b):
    return f.join(negation(f, a), b) == f.top


def completely_below_relation(f):
    """Greatest interpolative subrelation of ≺ as rows, plus the step count."""
    cached = f.__dict__.get('_completely_below')
    if cached is not None:
        return cached
    rows = [mask_of(b for b in range(f.size) if rather_below(f, a, b)) for a in range(f.size)]
    steps = 0
    while True:
        refined = []
        for a in range(f.size):
            reachable = 0
            for c in bits(rows[a]):
                reachable |= rows[c]
            refined.append(rows[a] & reachable)
        if refined == rows:
            break
        rows = refined
        steps += 1
    f.__dict__['_completely_below'] = (tuple(rows), steps)
    LOGGER.debug('completely-below fixpoint after %d refinement steps', steps)
    return f.__dict__['_completely_below']


def completely_below(f, a, b):
    rows, _ = completely_below_relation(f)
    return contains(rows[a], b)


def _regular_failure(f, related):
    for a in range(f.size):
        if f.join_all(x for x in range(f.size) if related(x, a)) != a:
            return a
    return None


def is_regular(f):
    return _regular_failure(f, lambda x, a: rather_below(f, x, a)) is None


def is_completely_regular(f):
    return _regular_failure(f, lambda x, a: completely_below(f, x, a)) is None


def fit_failure(f):
    """First pair a ≰ b with no x, y: a∨x = 1, y ≰ b, x∧y ≤ b.

    For a fixed x the best y is x ≻ b, so only x needs searching.
    """
    for a in range(f.size):
        for b in range(f.size):
            if f.leq(a, b):
                continue
            if not any(f.join(a, x) == f.top and not f.leq(f.heyting(x, b), b)
                       for x in range(f.size)):
                return a, b
    return None


def is_fit(f):
    return fit_failure(f) is None


def separation_report(f):
    zero_dim, complemented = is_zero_dimensional(f)
    regular_fail = _regular_failure(f, lambda x, a: rather_below(f, x, a))
    complete_fail = _regular_failure(f, lambda x, a: completely_below(f, x, a))
    fit_fail = fit_failure(f)
    regular, fit = regular_fail is None, fit_fail is None
    return {
        'zero_dimensional': zero_dim,
        'complemented': f.label_set(complemented),
        'regular': regular,
        'regular_failure': None if regular else f.label(regular_fail),
        'completely_regular': complete_fail is None,
        'completely_below_steps': completely_below_relation(f)[1],
        'fit': fit,
        'fit_failure': None if fit else [f.label(x) for x in fit_fail],
        'implications': {
            'zero_dimensional_implies_regular': (not zero_dim) or regular,
            'regular_implies_fit': (not regular) or fit,
        },
    }


# -- frame morphisms -------------------------------------------------------

def frame_morphism_violation(src, dst, table):
    """First law of a frame morphism broken by ``table`` (None if it is one)."""
    if table[src.bottom] != dst.bottom:
        return 'bottom', [src.label(src.bottom)]
    if table[src.top] != dst.top:
        return 'top', [src.label(src.top)]
    for a in range(src.size):
        for b in range(a + 1, src.size):
            if table[src.meet(a, b)] != dst.meet(table[a], table[b]):
                return 'meet', [src.label(a), src.label(b)]
            if table[src.join(a, b)] != dst.join(table[a], table[b]):
                return 'join', [src.label(a), src.label(b)]
    return None


def right_adjoint(src, dst, table):
    """g(y) = ⋁{x | table[x] ≤ y} for a join-preserving ``table``."""
    return tuple(src.join_all(x for x in range(src.size) if dst.leq(table[x], y))
                 for y in range(dst.size))


# -- points ----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Point:
    """A morphism A → 2, stored by its kernel (elements sent to 1)."""

    kernel: int

    def value(self, a):
        return 1 if contains(self.kernel, a) else 0

    def to_dict(self, frame):
        return {'kernel': frame.label_set(self.kernel)}


def is_two_valued(f, kernel):
    if not contains(kernel, f.top) or contains(kernel, f.bottom):
        return False
    for a in range(f.size):
        ha = contains(kernel, a)
        for b in range(a + 1, f.size):
            hb = contains(kernel, b)
            if contains(kernel, f.meet(a, b)) != (ha and hb):
                return False
            if contains(kernel, f.join(a, b)) != (ha or hb):
                return False
    return True


def points_by_morphisms(f):
    # a kernel is closed under all meets, so it is ↑c for its least element c
    return sorted(f.carrier.up[c] for c in range(f.size)
                  if c != f.bottom and is_two_valued(f, f.carrier.up[c]))


def _generated_filter(f, c):
    members = 1 << c
    while True:
        grown = members
        for a in bits(members):
            grown |= f.carrier.up[a]
            for b in bits(members):
                grown |= 1 << f.meet(a, b)
        if grown == members:
            return members
        members = grown


def points_by_prime_filters(f):
    kernels = set()
    for c in range(f.size):
        candidate = _generated_filter(f, c)
        if not contains(candidate, f.top) or contains(candidate, f.bottom):
            continue
        prime = all(contains(candidate, a) or contains(candidate, b)
                    for a in range(f.size) for b in range(a, f.size)
                    if contains(candidate, f.join(a, b)))
        if prime:
            kernels.add(candidate)
    return sorted(kernels)


def points_by_meet_irreducibles(f):
    kernels = []
    for p in range(f.size):
        if p == f.top:
            continue
        if all(f.leq(a, p) or f.leq(b, p)
               for a in range(f.size) for b in range(a, f.size)
               if f.leq(f.meet(a, b), p)):
            kernels.append(mask_of(x for x in range(f.size) if not f.leq(x, p)))
    return sorted(kernels)


def points(f):
    """pt(A), computed three ways and required to agree kernel for kernel."""
    cached = f.__dict__.get('_points')
    if cached is not None:
        return cached
    by_morphism = points_by_morphisms(f)
    by_filter = points_by_prime_filters(f)
    by_irreducible = points_by_meet_irreducibles(f)
    if not by_morphism == by_filter == by_irreducible:
        raise CrossCheckMismatch({'morphisms': len(by_morphism),
                                  'filters': len(by_filter),
                                  'irreducibles': len(by_irreducible)})
    result = [Point(k) for k in by_morphism]
    f.__dict__['_points'] = result
    return result


@dataclass
class SpatialReflection:
    frame: FiniteFrame
    points: list
    opens: tuple  # a ↦ mask over point indices
    image: FiniteFrame
    table: tuple  # a ↦ element of image
    injective: bool

    def to_dict(self):
        return {
            'points': [p.to_dict(self.frame) for p in self.points],
            'table': {self.frame.label(a): list(bits(self.opens[a])) for a in range(self.frame.size)},
            'image_size': self.image.size,
            'injective': self.injective,
        }


def spatial_reflection(f):
    pts = points(f)
    opens = tuple(mask_of(i for i, p in enumerate(pts) if contains(p.kernel, a))
                  for a in range(f.size))
    family = sorted(set(opens))
    image = FiniteFrame.from_family(family, names=[f'p{i}' for i in range(len(pts))])
    table = tuple(image.element_of(m) for m in opens)
    broken = frame_morphism_violation(f, image, table)
    if broken is not None:
        raise VerificationError(f'U: A → O pt(A) não é morfismo ({broken[0]})',
                                law=broken[0], witness=broken[1])
    return SpatialReflection(f, pts, opens, image, table, len(set(opens)) == f.size)


@dataclass
class PointTreeReport:
    levels_ok: bool
    order_ok: bool
    basis_ok: bool
    isomorphic: bool
    violations: list

    @property
    def passed(self):
        return self.levels_ok and self.order_ok and self.basis_ok and self.isomorphic

    def to_dict(self):
        return {'passed': self.passed, 'levels_ok': self.levels_ok,
                'order_ok': self.order_ok, 'basis_ok': self.basis_ok,
                'isomorphic': self.isomorphic, 'violations': self.violations}


def check_point_tree(f, tree_base):
    """Points of A seen through a tree base.

    (a) a point sends at most one node per level to 1; (b) b ≤ b' iff
    U(b) ⊆ U(b'); (c) the U(b) form a basis of the opens of pt(A); and the
    family {U(b)} under reverse inclusion is isomorphic to the tree.
    """
    reflection = spatial_reflection(f)
    opens = reflection.opens
    tree = tree_base.tree
    element = tree_base.node_to_element
    violations = []

    levels_ok = True
    for index, point in enumerate(reflection.points):
        for depth, level in enumerate(tree_base.levels):
            hit = [n for n in bits(level) if contains(point.kernel, element[n])]
            if len(hit) > 1:
                levels_ok = False
                violations.append({'check': 'levels', 'point': index, 'level': depth,
                                   'nodes': [tree.label(n) for n in hit]})

    order_ok = True
    for x in range(tree.size):
        for y in range(tree.size):
            if f.leq(element[x], element[y]) != is_subset(opens[element[x]], opens[element[y]]):
                order_ok = False
                violations.append({'check': 'order', 'pair': [tree.label(x), tree.label(y)]})

    basis_ok = True
    for a in range(f.size):
        union = 0
        for n in range(tree.size):
            if f.leq(element[n], a):
                union |= opens[element[n]]
        if union != opens[a]:
            basis_ok = False
            violations.append({'check': 'basis', 'element': f.label(a)})

    node_opens = [opens[element[n]] for n in range(tree.size)]
    family = sorted(set(node_opens))
    family_graph = networkx.DiGraph()
    family_graph.add_nodes_from(range(len(family)))
    for i, big in enumerate(family):
        for j, small in enumerate(family):
            if i == j or not is_subset(small, big):
                continue
            between = any(k not in (i, j) and is_subset(small, mid) and is_subset(mid, big)
                          for k, mid in enumerate(family))
            if not between:
                family_graph.add_edge(i, j)
    isomorphic = networkx.is_isomorphic(tree.to_graph(), family_graph)
    if not isomorphic:
        violations.append({'check': 'isomorphism'})
    return PointTreeReport(levels_ok, order_ok, basis_ok, isomorphic, violations)
